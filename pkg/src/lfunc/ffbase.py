"""Finite fields F_q, polynomials over them, and the places of k = F_q(t).

Field elements are integer codes in [0, q): the base-p digit vector of a code
gives the coordinates of the element in the fixed polynomial basis
{1, x, ..., x^(f-1)} of F_q = F_p[x]/(modulus).  The defining modulus is the
lexicographically least monic irreducible of degree f over F_p, so codes mean
the same thing across runs and platforms.

Places of F_q(t) are the monic irreducible polynomials (finite places) plus
one infinite place with uniformizer 1/t.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import NoIrreducibleFound, NotPrime, SizeLimitExceeded

MAX_Q = 1 << 16
MAX_DMAX = 12
# enumeration of monic polynomials of degree d touches q^d codes
MAX_ENUM = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def moebius(n: int) -> int:
    mu, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    if n > 1:
        mu = -mu
    return mu


# ---------------------------------------------------------------------------
# base field arithmetic on F_p-coefficient vectors (used only at construction)

def _pv_trim(v: list[int]) -> tuple[int, ...]:
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _pv_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> tuple[int, ...]:
    """(a*b) mod `mod` over F_p; all vectors low-to-high, mod monic."""
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    d = len(mod) - 1
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(d):
                prod[k - d + j] = (prod[k - d + j] - c * mod[j]) % p
    return _pv_trim(prod[:d] if len(prod) > d else prod)


def _pv_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = tuple(a)
    while e:
        if e & 1:
            result = _pv_mulmod(result, base, mod, p)
        base = _pv_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _pv_is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Monic poly over F_p irreducible?  x^(p^d) == x test plus gcd conditions."""
    d = len(poly) - 1
    if d == 1:
        return True
    x = (0, 1)
    xp = _pv_powmod(x, p ** d, poly, p)
    if xp != x:
        return False
    for r in prime_factors(d):
        xe = _pv_powmod(x, p ** (d // r), poly, p)
        n = max(len(xe), len(x))
        a = list(xe) + [0] * (n - len(xe))
        b = list(x) + [0] * (n - len(x))
        diff = _pv_trim([(u - v) % p for u, v in zip(a, b)])
        # gcd(x^(p^(d/r)) - x, poly) must be 1
        if _pv_gcd_is_nontrivial(diff, poly, p):
            return False
    return True


def _pv_gcd_is_nontrivial(a: Sequence[int], b: Sequence[int], p: int) -> bool:
    a, b = list(a), list(b)
    while a:
        # b mod a
        a_lead_inv = pow(a[-1], p - 2, p)
        while len(b) >= len(a):
            c = (b[-1] * a_lead_inv) % p
            if c:
                off = len(b) - len(a)
                for j in range(len(a)):
                    b[off + j] = (b[off + j] - c * a[j]) % p
            b.pop()
            while b and b[-1] == 0:
                b.pop()
        a, b = b, a
    return len(b) > 1


class FiniteField:
    """The field F_q with q = p^f elements.

    Multiplication runs through exp/log tables for a verified generator of the
    cyclic group F_q^*; addition is digitwise mod p on the base-p codes.
    Instances are immutable and safe to share across threads.
    """

    def __init__(self, p: int, f: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if f < 1:
            raise SizeLimitExceeded("extension degree must be >= 1")
        q = p ** f
        if q > MAX_Q:
            raise SizeLimitExceeded(f"q = {q} exceeds the supported bound {MAX_Q}")
        self.p = p
        self.f = f
        self.q = q
        self.modulus = self._find_modulus(p, f)
        self._exp, self._log, self.generator = self._build_tables()
        self._irred_cache: dict[int, list["FqPoly"]] = {}

    @staticmethod
    def _find_modulus(p: int, f: int) -> tuple[int, ...]:
        if f == 1:
            return (0, 1)  # x
        # lexicographically least monic irreducible: scan codes ascending
        for code in range(p ** f):
            poly = _decode_base(code, p, f) + (1,)
            if _pv_is_irreducible(poly, p):
                return poly
        raise NoIrreducibleFound(f"no irreducible of degree {f} over F_{p}")

    def _raw_mul(self, a: int, b: int) -> int:
        va = _decode_base(a, self.p, self.f)
        vb = _decode_base(b, self.p, self.f)
        return _encode_base(_pv_mulmod(va, vb, self.modulus, self.p), self.p)

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray, int]:
        q = self.q
        if q == 2:
            return np.array([1], dtype=np.int64), np.array([0, 0], dtype=np.int64), 1
        factors = prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            ok = True
            for r in factors:
                if self._raw_pow(g, (q - 1) // r) == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        if gen is None:
            raise NoIrreducibleFound("no generator found (internal error)")
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, gen)
        if x != 1:
            raise NoIrreducibleFound("generator order check failed (internal error)")
        return exp, log, gen

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    # -- element operations (codes in [0, q)) --

    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        p, r, out, mult = self.p, 0, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        p, out, mult = self.p, 0, 1
        while a:
            out += ((-a) % p if (a % p) else 0) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def trace_to_prime(self, a: int) -> int:
        """Tr_{F_q/F_p}(a) as an integer in [0, p)."""
        t, x = 0, a
        for _ in range(self.f):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t  # lies in the prime subfield: code < p

    def elements(self) -> range:
        return range(self.q)

    def log(self, a: int) -> int:
        """Discrete log base the fixed generator; a must be nonzero."""
        if a == 0:
            raise ZeroDivisionError("log of 0")
        return int(self._log[a])

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((self.p, self.f))

    def __repr__(self):
        return f"FiniteField(p={self.p}, f={self.f})"


def _decode_base(code: int, base: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        out.append(code % base)
        code //= base
    return tuple(out)


def _encode_base(digits: Sequence[int], base: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * base + d
    return out


@functools.lru_cache(maxsize=None)
def make_field(p: int, f: int) -> FiniteField:
    """The field of order p^f; raises NotPrime / SizeLimitExceeded."""
    return FiniteField(p, f)


# ---------------------------------------------------------------------------
# polynomials over F_q


class FqPoly:
    """Immutable polynomial over F_q; coefficients low-to-high, no leading zeros.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Supports +, -, *, divmod, %, ==, hashing, and pointwise evaluation.
    """

    __slots__ = ("field", "coeffs", "_irr")

    def __init__(self, field: FiniteField, coeffs: Sequence[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._irr: Optional[bool] = None  # memoized irreducibility

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "FqPoly":
        if self.is_zero or self.is_monic:
            return self
        inv = self.field.inv(self.coeffs[-1])
        return FqPoly(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def __add__(self, other: "FqPoly") -> "FqPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return FqPoly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "FqPoly":
        F = self.field
        return FqPoly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        return self + (-other)

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        F = self.field
        if self.is_zero or other.is_zero:
            return FqPoly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return FqPoly(F, out)

    def scale(self, c: int) -> "FqPoly":
        F = self.field
        return FqPoly(F, [F.mul(c, x) for x in self.coeffs])

    def __divmod__(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly"]:
        F = self.field
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = F.inv(other.coeffs[-1])
        quot = [0] * max(0, len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = F.mul(rem[k], lead_inv)
            if c:
                quot[k - d] = c
                for j in range(d + 1):
                    rem[k - d + j] = F.sub(rem[k - d + j], F.mul(c, other.coeffs[j]))
        return FqPoly(F, quot), FqPoly(F, rem[:d])

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FqPoly") -> "FqPoly":
        return divmod(self, other)[0]

    def __pow__(self, e: int) -> "FqPoly":
        result = FqPoly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, mod: "FqPoly") -> "FqPoly":
        result = FqPoly(self.field, [1]) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def gcd(self, other: "FqPoly") -> "FqPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def xgcd(self, other: "FqPoly") -> tuple["FqPoly", "FqPoly", "FqPoly"]:
        """(g, u, v) with u*self + v*other = g, g monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = FqPoly(F, [1]), FqPoly(F, [])
        t0, t1 = FqPoly(F, []), FqPoly(F, [1])
        while not r1.is_zero:
            qq, rr = divmod(r0, r1)
            r0, r1 = r1, rr
            s0, s1 = s1, s0 - qq * s1
            t0, t1 = t1, t0 - qq * t1
        if r0.is_zero:
            return r0, s0, t0
        lead_inv = F.inv(r0.coeffs[-1])
        return r0.monic(), s0.scale(lead_inv), t0.scale(lead_inv)

    def inverse_mod(self, mod: "FqPoly") -> "FqPoly":
        g, u, _ = self.xgcd(mod)
        if g.degree != 0:
            raise ZeroDivisionError("element not invertible modulo the given polynomial")
        return u % mod

    def derivative(self) -> "FqPoly":
        F = self.field
        # i*c means c added to itself i times: multiply by the image of i in F_p
        return FqPoly(F, [F.mul(c, i % F.p) for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def code(self) -> int:
        """Integer encoding: sum coeffs[i] * q^i (includes the leading coefficient)."""
        return _encode_base(self.coeffs, self.field.q)

    @staticmethod
    def from_code(field: FiniteField, code: int, width: Optional[int] = None) -> "FqPoly":
        q = field.q
        out = []
        while code:
            out.append(code % q)
            code //= q
        if width is not None:
            out += [0] * (width - len(out))
        return FqPoly(field, out)

    def is_irreducible(self) -> bool:
        if self._irr is not None:
            return self._irr
        self._irr = self._irreducible_test()
        return self._irr

    def _irreducible_test(self) -> bool:
        F = self.field
        d = self.degree
        if d <= 0:
            return False
        if d == 1:
            return True
        if self.coeffs[0] == 0:  # divisible by t
            return False
        x = FqPoly(F, [0, 1])
        if x.powmod(F.q ** d, self) != x:
            return False
        for r in prime_factors(d):
            h = x.powmod(F.q ** (d // r), self) - x
            if not h.gcd(self).degree == 0:
                return False
        return True

    def factor(self) -> list[tuple["FqPoly", int]]:
        """Monic irreducible factors with multiplicities, by trial division.

        Desk-scale only: the search enumerates irreducibles of degree <= deg/2.
        The leading coefficient is dropped (factors are monic).
        """
        F = self.field
        if self.is_zero:
            raise ZeroDivisionError("factor of the zero polynomial")
        rem = self.monic()
        out: list[tuple[FqPoly, int]] = []
        d = 1
        while rem.degree > 0 and d <= rem.degree // 2:
            for g in irreducibles_of_degree(F, d):
                if rem.degree < 2 * d:
                    break
                e = 0
                while True:
                    qq, rr = divmod(rem, g)
                    if rr.is_zero:
                        rem = qq
                        e += 1
                    else:
                        break
                if e:
                    out.append((g, e))
            d += 1
        if rem.degree > 0:
            out.append((rem, 1))
        out.sort(key=lambda t: (t[0].degree, t[0].code()))
        return out

    def __eq__(self, other):
        return (isinstance(other, FqPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "FqPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(f"{c}")
                elif i == 1:
                    terms.append("t" if c == 1 else f"{c}*t")
                else:
                    terms.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return " + ".join(reversed(terms))

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def _int_to_field_const(F: FiniteField, m: int) -> int:
    """The image of the integer m in F_q (i.e. m mod p as a constant)."""
    return m % F.p


# ---------------------------------------------------------------------------
# irreducible enumeration (composite sieve over integer codes)


def irreducibles_of_degree(field: FiniteField, d: int) -> list[FqPoly]:
    """All monic irreducibles of degree d over F_q, sorted by code."""
    cache = field._irred_cache
    if d in cache:
        return cache[d]
    q = field.q
    if q ** d > MAX_ENUM:
        raise SizeLimitExceeded(f"enumeration of degree {d} over F_{q} is beyond desk scale")
    if d == 1:
        out = [FqPoly(field, (a, 1)) for a in range(q)]
        for p in out:
            p._irr = True
        cache[1] = out
        return out
    mark = np.zeros(q ** d, dtype=bool)
    for a in range(1, d // 2 + 1):
        b = d - a
        H = _monic_coeff_matrix(field, b)        # (q^b, b+1) with leading 1
        for g in irreducibles_of_degree(field, a):
            prod = _vec_poly_mul(field, tuple(g.coeffs), H)
            codes = _codes_from_coeff_matrix(field, prod[:, :d])  # drop leading 1
            mark[codes] = True
    out = [FqPoly.from_code(field, int(c), d) + FqPoly(field, [0] * d + [1])
           for c in np.nonzero(~mark)[0]]
    for p in out:
        p._irr = True  # the sieve is exhaustive: survivors are irreducible
    cache[d] = out
    return out


def _monic_coeff_matrix(field: FiniteField, b: int) -> np.ndarray:
    """Coefficient matrix of all monic degree-b polys: rows (c_0..c_{b-1}, 1)."""
    q = field.q
    codes = np.arange(q ** b, dtype=np.int64)
    M = np.empty((q ** b, b + 1), dtype=np.int64)
    rest = codes
    for i in range(b):
        M[:, i] = rest % q
        rest = rest // q
    M[:, b] = 1
    return M


def _codes_from_coeff_matrix(field: FiniteField, M: np.ndarray) -> np.ndarray:
    q = field.q
    out = np.zeros(M.shape[0], dtype=np.int64)
    for i in range(M.shape[1] - 1, -1, -1):
        out = out * q + M[:, i]
    return out


@functools.lru_cache(maxsize=None)
def _mul_by_table(field: FiniteField, c: int) -> np.ndarray:
    return np.array([field.mul(c, x) for x in range(field.q)], dtype=np.int64)


@functools.lru_cache(maxsize=None)
def _add_table(field: FiniteField) -> np.ndarray:
    if field.q > 1024:
        raise SizeLimitExceeded("vector addition table too large")
    q = field.q
    T = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            T[a, b] = field.add(a, b)
    return T


def _vec_poly_mul(field: FiniteField, g: tuple[int, ...], H: np.ndarray) -> np.ndarray:
    """Products g*h for all rows h of the coefficient matrix H."""
    rows, hc = H.shape
    out = np.zeros((rows, len(g) + hc - 1), dtype=np.int64)
    prime = field.f == 1
    add_tab = None if prime else _add_table(field)
    for i, gi in enumerate(g):
        if not gi:
            continue
        if prime:
            seg = (gi * H) % field.p
            out[:, i:i + hc] = (out[:, i:i + hc] + seg) % field.p
        else:
            seg = _mul_by_table(field, gi)[H]
            out[:, i:i + hc] = add_tab[out[:, i:i + hc], seg]
    return out


def monic_irreducibles(field: FiniteField, d_max: int) -> list[FqPoly]:
    """All monic irreducibles of degree <= d_max, sorted by (degree, code)."""
    if d_max < 1:
        raise SizeLimitExceeded("d_max must be >= 1")
    if d_max > MAX_DMAX:
        raise SizeLimitExceeded(f"d_max = {d_max} exceeds the supported bound {MAX_DMAX}")
    out: list[FqPoly] = []
    for d in range(1, d_max + 1):
        out.extend(irreducibles_of_degree(field, d))
    return out


def irreducible_count(field: FiniteField, d: int) -> int:
    """Necklace formula: N_d = (1/d) sum_{e|d} mu(d/e) q^e."""
    q = field.q
    total = sum(moebius(d // e) * q ** e for e in range(1, d + 1) if d % e == 0)
    return total // d


# ---------------------------------------------------------------------------
# places


@dataclass(frozen=True)
class Place:
    """A place of F_q(t): a monic irreducible polynomial, or the place at infinity.

    The infinite place has uniformizer 1/t and residue degree 1.
    """

    field: FiniteField
    poly: Optional[FqPoly]  # None for the infinite place
    deg: int = dc_field(init=False, default=0)

    def __post_init__(self):
        if self.poly is None:
            object.__setattr__(self, "deg", 1)
        else:
            if not (self.poly.is_monic and self.poly.is_irreducible()):
                raise ValueError("finite place requires a monic irreducible polynomial")
            object.__setattr__(self, "deg", self.poly.degree)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def q_v(self) -> int:
        return self.field.q ** self.deg

    def key(self) -> tuple:
        return (self.field.p, self.field.f, -1 if self.poly is None else self.poly.code())

    def __repr__(self):
        return "Place(inf)" if self.is_infinite else f"Place({self.poly!r})"

    def to_json(self):
        return {"inf": True} if self.is_infinite else {"poly": self.poly.to_json()}


def infinite_place(field: FiniteField) -> Place:
    return Place(field, None)


def places(field: FiniteField, d_max: int) -> list[Place]:
    """The infinite place followed by all finite places of degree <= d_max."""
    out = [infinite_place(field)]
    out.extend(Place(field, P) for P in monic_irreducibles(field, d_max))
    return out


def monic_polys(field: FiniteField, d: int) -> Iterator[FqPoly]:
    """All monic polynomials of degree d, ascending by code."""
    q = field.q
    for code in range(q ** d):
        yield FqPoly.from_code(field, code, d) + FqPoly(field, [0] * d + [1])
