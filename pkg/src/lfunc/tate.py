"""Local characters of completions k_v and the abelian L/epsilon/gamma factors.

Local integers O_v/p_v^a are modeled as F_q[t] mod P^a at a finite place P
(uniformizer P itself) and as F_q[u] mod u^a at the infinite place (u = 1/t).
Residues are FqPoly values of degree < a*deg(P), addressed by integer codes.

The standard additive character at a finite place P is built from residues of
the differential dt:  psi_P(y) = e(Tr_{k_P/F_p}(res_P(y dt))/p), which is the
level-0 character  psi_P(x P^{-k}) = e(Tr(digit_{k-1}(x / P'(t)))/p).  At the
infinite place the standard character reads off the u^{-1} digit directly.
With these choices the family {psi_v} twisted by -1/t^2 at infinity is a
character of A_k/k (residue theorem), which is what the global functional
equation of the globalfield module relies on.

Epsilon-factors are normalized self-dually:

    eps(s, chi, psi) = c * (q_v^(1/2) T^deg(v))^(a(chi) + n(psi)),
    c = alpha^(a+n) * G(chi, psi)/q_v^(a/2)   (ramified),  alpha^n (unramified)

where G is the Gauss sum below and alpha = chi(uniformizer).  For unitary chi
this gives |eps(1/2)| = 1, and eps = 1 for unramified chi with level-0 psi.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import (PlaceMismatch, PreconditionFailed, RamifiedInput,
                     SizeLimitExceeded)
from .ffbase import FiniteField, FqPoly, Place, prime_factors
from .qseries import QRat

MAX_RING = 10 ** 6


# ---------------------------------------------------------------------------
# the local residue rings O_v / p_v^a


class LocalRing:
    """F_q[t] mod P^a (finite place) or F_q[u] mod u^a (infinite place).

    Residues are encoded as integers: the base-q digit vector of a code lists
    the coefficients of the residue polynomial (degree < a*deg P).
    """

    def __init__(self, place: Place, a: int):
        if a < 1:
            raise ValueError("ring level must be >= 1")
        F = place.field
        self.place = place
        self.a = a
        self.field = F
        self.d = place.deg
        self.width = a * self.d
        if F.q ** self.width > MAX_RING:
            raise SizeLimitExceeded(
                f"residue ring of size q^{self.width} exceeds the bound {MAX_RING}")
        self.size = F.q ** self.width
        self.pi = place.poly if place.poly is not None else FqPoly(F, (0, 1))
        self.modulus = self.pi ** a
        # inverse derivative of the uniformizer for the dt-residue character;
        # at infinity dt contributes through the twist, so J = 1 there
        if place.is_infinite:
            self.jacobian = FqPoly(F, (1,))
        else:
            self.jacobian = self.pi.derivative().inverse_mod(self.modulus)
        self._units: Optional[np.ndarray] = None
        self._gens: Optional[list[tuple[FqPoly, int]]] = None
        self._expmat: Optional[np.ndarray] = None
        self._psi_cache: dict = {}
        self._encode_memo: dict = {}

    # -- encoding ------------------------------------------------------------

    def decode(self, code: int) -> FqPoly:
        return FqPoly.from_code(self.field, code, self.width)

    def encode(self, poly: FqPoly) -> int:
        got = self._encode_memo.get(poly.coeffs)
        if got is None:
            got = (poly % self.modulus).code()
            if len(self._encode_memo) < 1 << 16:
                self._encode_memo[poly.coeffs] = got
        return got

    def mulmod(self, x: FqPoly, y: FqPoly) -> FqPoly:
        return (x * y) % self.modulus

    def is_unit(self, poly: FqPoly) -> bool:
        return not (poly % self.pi).is_zero

    def padic_digits(self, poly: FqPoly, count: int) -> list[FqPoly]:
        """First `count` P-adic digits (residues of degree < deg P)."""
        out = []
        rem = poly
        for _ in range(count):
            rem, digit = divmod(rem, self.pi)
            out.append(digit)
        return out

    def residue_trace_to_prime(self, c: FqPoly) -> int:
        """Tr_{k_P/F_p} of a residue-field element (poly of degree < deg P)."""
        F = self.field
        if self.d == 1:
            val = c.coeffs[0] if c.coeffs else 0
            return F.trace_to_prime(val)
        acc = FqPoly(F, ())
        x = c % self.pi
        for _ in range(self.d):
            acc = (acc + x) % self.pi
            x = x.powmod(F.q, self.pi)
        if acc.degree > 0:
            raise ArithmeticError("trace did not land in the constants")
        return F.trace_to_prime(acc.coeffs[0] if acc.coeffs else 0)

    # -- unit group ------------------------------------------------------------

    @property
    def unit_codes(self) -> np.ndarray:
        if self._units is None:
            codes = np.arange(self.size, dtype=np.int64)
            if self.d == self.width:  # a == 1: units are the nonzero residues
                mask = codes != 0
            else:
                mask = np.array([self.is_unit(self.decode(int(c))) for c in codes])
            self._units = codes[mask]
        return self._units

    @property
    def unit_count(self) -> int:
        qd = self.field.q ** self.d
        return qd ** self.a - qd ** (self.a - 1) if self.a > 1 else qd - 1

    def _residue_field_generator(self) -> FqPoly:
        """A generator of (F_q[t]/P)^*, least code first."""
        F = self.field
        n = F.q ** self.d - 1
        factors = prime_factors(n) if n > 1 else []
        for code in range(1, F.q ** self.d):
            x = FqPoly.from_code(F, code, self.d)
            if all(x.powmod(n // r, self.pi) != FqPoly(F, (1,)) for r in factors):
                return x
        raise ArithmeticError("no residue-field generator found")

    def teichmuller(self, x: FqPoly) -> FqPoly:
        """The Teichmuller lift: the unique lift fixed by y -> y^(q^d)."""
        qd = self.field.q ** self.d
        y = x % self.modulus
        for _ in range(64):
            y2 = y.powmod(qd, self.modulus)
            if y2 == y:
                return y
            y = y2
        raise ArithmeticError("Teichmuller iteration did not stabilize")

    @property
    def unit_generators(self) -> list[tuple[FqPoly, int]]:
        """Independent generators (g, order) of the unit group.

        The Teichmuller lift of a residue-field generator gives the prime-to-p
        part; 1 + c*P^i for p (not |) i and c running over an F_p-basis of the
        residue field generate the principal units independently.
        """
        if self._gens is not None:
            return self._gens
        F = self.field
        gens: list[tuple[FqPoly, int]] = []
        n = F.q ** self.d - 1
        if n > 1:
            gens.append((self.teichmuller(self._residue_field_generator()), n))
        p = F.p
        for i in range(1, self.a):
            if i % p == 0:
                continue
            # order of 1 + c*pi^i: smallest p-power with i * p^e >= a
            e = 0
            while i * p ** e < self.a:
                e += 1
            order = p ** e
            for l in range(F.f):
                for j in range(self.d):
                    c = FqPoly(F, [0] * j + [p ** l if l else 1])
                    g = (FqPoly(F, (1,)) + c * self.pi ** i) % self.modulus
                    gens.append((g, order))
        for g, o in gens:
            if g.powmod(o, self.modulus) != FqPoly(F, (1,)):
                raise ArithmeticError("generator order verification failed")
        total = 1
        for _, o in gens:
            total *= o
        if total != self.unit_count:
            raise ArithmeticError("unit generators do not span the unit group")
        self._gens = gens
        return gens

    @property
    def exponent_matrix(self) -> np.ndarray:
        """Row i: exponent vector of unit_codes[i] in terms of unit_generators."""
        if self._expmat is not None:
            return self._expmat
        gens = self.unit_generators
        one = FqPoly(self.field, (1,))
        table: dict[int, tuple[int, ...]] = {self.encode(one): ()}
        for g, o in gens:
            new: dict[int, tuple[int, ...]] = {}
            for code, vec in table.items():
                x = self.decode(code)
                for e in range(o):
                    new[self.encode(x)] = vec + (e,)
                    if e < o - 1:
                        x = self.mulmod(x, g)
            table = new
        if len(table) != self.unit_count:
            raise ArithmeticError("discrete log table incomplete")
        units = self.unit_codes
        mat = np.zeros((units.size, len(gens)), dtype=np.int64)
        index = {int(c): i for i, c in enumerate(units)}
        for code, vec in table.items():
            mat[index[code]] = vec
        self._expmat = mat
        return mat

    @property
    def unit_index(self) -> dict[int, int]:
        return {int(c): i for i, c in enumerate(self.unit_codes)}


@functools.lru_cache(maxsize=None)
def local_ring(place: Place, a: int) -> LocalRing:
    return LocalRing(place, a)


# ---------------------------------------------------------------------------
# additive characters


@dataclass(frozen=True)
class AddChar:
    """psi^b where psi is the standard character of the place and b = b0 * pi^level.

    level is the conductor exponent n(psi): the standard character has level 0
    and twisting by a shifts the level by val(a).
    """

    place: Place
    level: int
    twist_unit: FqPoly  # unit part b0 of the twist (a polynomial, reduced lazily)

    def twisted(self, unit: FqPoly, val: int) -> "AddChar":
        pi = (self.place.poly if self.place.poly is not None
              else FqPoly(self.place.field, (0, 1)))
        if (unit % pi).is_zero:
            raise PreconditionFailed("twist unit part must be a unit at the place")
        return AddChar(self.place, self.level + val, self.twist_unit * unit)

    def conjugate(self) -> "AddChar":
        minus_one = FqPoly(self.place.field, (self.place.field.neg(1),))
        return AddChar(self.place, self.level, self.twist_unit * minus_one)

    def key(self) -> tuple:
        # raw twist data: congruent twists may miss the cache, never collide
        return (self.place.key(), self.level, self.twist_unit.coeffs)

    def to_json(self) -> dict:
        return {"level": self.level, "twist_unit": self.twist_unit.to_json()}


def std_psi(place: Place) -> AddChar:
    """The level-0 standard character (see module docstring)."""
    return AddChar(place, 0, FqPoly(place.field, (1,)))


def psi_on_pi_power(psi: AddChar, ring: LocalRing, x: FqPoly, k: int) -> complex:
    """psi(x * pi^(-k)) for x an integral residue known modulo pi^ring.a."""
    j = k - psi.level
    if j <= 0:
        return 1.0 + 0j
    if j > ring.a:
        raise PreconditionFailed("psi evaluation needs more residue precision")
    F = ring.field
    y = (psi.twist_unit * x * ring.jacobian) % (ring.pi ** j)
    digit = ring.padic_digits(y, j)[j - 1]
    tr = ring.residue_trace_to_prime(digit)
    return cmath.exp(2j * math.pi * tr / F.p)


def _psi_phase_vector(psi: AddChar, ring: LocalRing, k: int) -> np.ndarray:
    """psi(x * pi^(-k)) for every unit x of the ring, cached."""
    cache_key = (psi.key(), k)
    cached = ring._psi_cache.get(cache_key)
    if cached is not None:
        return cached
    out = np.array([psi_on_pi_power(psi, ring, ring.decode(int(c)), k)
                    for c in ring.unit_codes])
    ring._psi_cache[cache_key] = out
    return out


# ---------------------------------------------------------------------------
# multiplicative characters


class MultChar:
    """A character of k_v^*: unramified value alpha = chi(pi) plus a character
    of the unit group of conductor exponent cond (primitive at that level).

    The unit character is stored as a dense value table over the residue codes
    of O_v/p_v^cond (zeros at non-units); values are roots of unity.
    """

    __slots__ = ("place", "alpha", "cond", "ring", "table")

    def __init__(self, place: Place, alpha: complex, cond: int = 0,
                 table: Optional[np.ndarray] = None):
        self.place = place
        self.alpha = complex(alpha)
        if self.alpha == 0:
            raise ValueError("chi(pi) must be nonzero")
        self.cond = int(cond)
        if self.cond == 0:
            self.ring = None
            self.table = None
        else:
            self.ring = local_ring(place, self.cond)
            if table is None:
                raise ValueError("ramified character needs a unit value table")
            self.table = np.asarray(table, dtype=np.complex128)
            if self.table.size != self.ring.size:
                raise ValueError("table size does not match the residue ring")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def unramified(place: Place, alpha: complex) -> "MultChar":
        return MultChar(place, alpha)

    @staticmethod
    def trivial(place: Place) -> "MultChar":
        return MultChar(place, 1.0)

    @staticmethod
    def from_gen_phases(place: Place, cond: int, phases: Sequence[float],
                        alpha: complex = 1.0) -> "MultChar":
        """Character with value exp(2 pi i phase_k) at the k-th unit generator.

        phase_k must be a multiple of 1/order_k (verified).  The table is then
        filled in via the discrete logs of the unit group; multiplicativity
        holds by construction.
        """
        ring = local_ring(place, cond)
        gens = ring.unit_generators
        if len(phases) != len(gens):
            raise ValueError(f"expected {len(gens)} generator phases")
        for ph, (_, o) in zip(phases, gens):
            if abs((ph * o) - round(ph * o)) > 1e-9:
                raise ValueError("generator image is not a root of unity of dividing order")
        expmat = ring.exponent_matrix
        total = expmat.astype(np.float64) @ np.asarray(phases, dtype=np.float64)
        vals = np.exp(2j * np.pi * np.mod(total, 1.0))
        table = np.zeros(ring.size, dtype=np.complex128)
        table[ring.unit_codes] = vals
        chi = MultChar(place, alpha, cond, table)
        return chi.primitive()

    @staticmethod
    def from_unit_table(place: Place, cond: int, table: np.ndarray,
                        alpha: complex = 1.0) -> "MultChar":
        return MultChar(place, alpha, cond, table).primitive()

    # -- structure --------------------------------------------------------------

    @property
    def field(self) -> FiniteField:
        return self.place.field

    @property
    def is_unramified(self) -> bool:
        return self.cond == 0

    def unit_value(self, x: FqPoly) -> complex:
        if self.cond == 0:
            return 1.0 + 0j
        return complex(self.table[self.ring.encode(x)])

    def value(self, unit_part: FqPoly, val: int) -> complex:
        """chi(u * pi^val) for a unit u."""
        return self.alpha ** val * self.unit_value(unit_part)

    def inverse(self) -> "MultChar":
        if self.cond == 0:
            return MultChar(self.place, 1.0 / self.alpha)
        return MultChar(self.place, 1.0 / self.alpha, self.cond, np.conj(self.table))

    def __mul__(self, other: "MultChar") -> "MultChar":
        if self.place != other.place:
            raise PlaceMismatch("character product across different places")
        alpha = self.alpha * other.alpha
        a = max(self.cond, other.cond)
        if a == 0:
            return MultChar(self.place, alpha)
        ring = local_ring(self.place, a)
        table = np.ones(ring.size, dtype=np.complex128)
        for chi in (self, other):
            if chi.cond == 0:
                continue
            if chi.cond == a:
                table = table * chi.table
            else:
                sub = chi.ring
                red = _reduction_codes(ring, sub)
                table = table * chi.table[red]
        # zero out non-units
        mask = np.zeros(ring.size, dtype=bool)
        mask[ring.unit_codes] = True
        table[~mask] = 0
        return MultChar(self.place, alpha, a, table).primitive()

    def primitive(self) -> "MultChar":
        """Drop trivial top layers so that cond is the true conductor exponent."""
        chi = self
        while chi.cond >= 1:
            ring = chi.ring
            if chi.cond == 1:
                units = ring.unit_codes
                if np.max(np.abs(chi.table[units] - 1.0)) < 1e-9:
                    return MultChar(chi.place, chi.alpha)
                return chi
            # values on 1 + c * pi^(cond-1)
            one = FqPoly(chi.field, (1,))
            top = chi.cond - 1
            trivial = True
            for code in range(chi.field.q ** ring.d):
                c = FqPoly.from_code(chi.field, code, ring.d)
                x = (one + c * ring.pi ** top) % ring.modulus
                if abs(chi.table[ring.encode(x)] - 1.0) > 1e-9:
                    trivial = False
                    break
            if not trivial:
                return chi
            # a unit mod pi^(cond-1) lifts to a unit mod pi^cond with the same value
            sub = local_ring(chi.place, chi.cond - 1)
            new_table = chi.table[_lift_codes(sub, ring)]
            chi = MultChar(chi.place, chi.alpha, chi.cond - 1, new_table)
        return chi

    def is_trivial_on_units(self) -> bool:
        return self.cond == 0

    def canonical_key(self) -> tuple:
        if self.cond == 0:
            return ("char", self.place.key(), _round_c(self.alpha), 0)
        units = self.ring.unit_codes
        vals = tuple(_round_c(v) for v in self.table[units[: min(16, units.size)]])
        return ("char", self.place.key(), _round_c(self.alpha), self.cond, vals)

    def to_json(self) -> dict:
        out = {"place": self.place.to_json(),
               "alpha": [self.alpha.real, self.alpha.imag],
               "cond": self.cond}
        if self.cond:
            gens = self.ring.unit_generators
            out["unit_char"] = {
                "gen_orders": [o for _, o in gens],
                "gen_values": [[complex(self.table[self.ring.encode(g)]).real,
                                complex(self.table[self.ring.encode(g)]).imag]
                               for g, _ in gens],
            }
        return out


def _round_c(z: complex, nd: int = 9) -> tuple[float, float]:
    return (round(z.real, nd) + 0.0, round(z.imag, nd) + 0.0)


_red_cache: dict = {}


def _reduction_codes(big: LocalRing, small: LocalRing) -> np.ndarray:
    """Array mapping each residue code of `big` to its code modulo pi^small.a."""
    key = (id(big), id(small))
    got = _red_cache.get(key)
    if got is None:
        got = np.array([small.encode(big.decode(int(c)) % small.modulus)
                        for c in range(big.size)], dtype=np.int64)
        _red_cache[key] = got
    return got


def _lift_codes(small: LocalRing, big: LocalRing) -> np.ndarray:
    """Each residue of `small`, viewed as a residue of `big` (plain poly lift)."""
    key = (id(small), id(big), "lift")
    got = _red_cache.get(key)
    if got is None:
        got = np.array([big.encode(small.decode(int(c))) for c in range(small.size)],
                       dtype=np.int64)
        _red_cache[key] = got
    return got


def enumerate_unit_chars(place: Place, cond: int,
                         alpha: complex = 1.0) -> Iterator[MultChar]:
    """All characters with conductor exponent <= cond (each exactly once)."""
    ring = local_ring(place, cond)
    gens = ring.unit_generators
    orders = [o for _, o in gens]

    def rec(k: int, phases: list[float]) -> Iterator[MultChar]:
        if k == len(orders):
            yield MultChar.from_gen_phases(place, cond, phases, alpha)
            return
        for j in range(orders[k]):
            yield from rec(k + 1, phases + [j / orders[k]])

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# Tate factors


def tate_L(chi: MultChar) -> QRat:
    """1/(1 - alpha T^deg v) for unramified chi, else 1."""
    q = float(chi.field.q)
    if chi.cond == 0:
        return QRat.inv_euler(q, chi.alpha, chi.place.deg)
    return QRat.one(q)


def gauss_sum(chi: MultChar, psi: AddChar) -> complex:
    """sum over units x mod pi^a of chi^(-1)(x) psi(x pi^(-a-n(psi)))."""
    if chi.cond < 1:
        raise PreconditionFailed("gauss_sum requires a ramified character")
    if chi.place != psi.place:
        raise PlaceMismatch("character and additive character at different places")
    ring = chi.ring
    phases = _psi_phase_vector(psi, ring, chi.cond + psi.level)
    vals = np.conj(chi.table[ring.unit_codes])
    return complex(np.sum(vals * phases))


def tate_eps(chi: MultChar, psi: AddChar) -> QRat:
    """The epsilon monomial; see the module docstring for the normalization."""
    if chi.place != psi.place:
        raise PlaceMismatch("character and additive character at different places")
    q = float(chi.field.q)
    q_v = float(chi.place.q_v)
    a, n = chi.cond, psi.level
    if a == 0:
        c = chi.alpha ** n
    else:
        c = chi.alpha ** (a + n) * gauss_sum(chi, psi) / q_v ** (a / 2.0)
    coeff = c * q_v ** ((a + n) / 2.0)
    return QRat.monomial(q, coeff, (a + n) * chi.place.deg)


def tate_gamma(chi: MultChar, psi: AddChar) -> QRat:
    """eps(s,chi,psi) * L(1-s, chi^(-1)) / L(s, chi)."""
    return tate_eps(chi, psi) * tate_L(chi.inverse()).dual() / tate_L(chi)


@dataclass(frozen=True)
class AbelianTriple:
    """The rank-one factor bundle (L, eps, gamma) of a character."""

    L: QRat
    eps: QRat
    gamma: QRat


def abelian_triple(chi: MultChar, psi: AddChar) -> AbelianTriple:
    return AbelianTriple(tate_L(chi), tate_eps(chi, psi), tate_gamma(chi, psi))
