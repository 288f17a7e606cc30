"""Global objects over k = F_q(t): grossencharacters, global pairs, completed
and partial L-functions, the global functional equation, isobaric sums, and
the Riemann-Hypothesis verifier.

A grossencharacter is stored through its Dirichlet data: one unit-character
table per prime power P^a dividing the modulus.  The Hecke local component at
a ramified P inverts that table (so that the Euler-product values at
unramified places equal the Dirichlet table values); its value at the
uniformizer P, and the infinite component, are forced by the product formula:

    chi_P(P)  = prod_{P' != P} table_{P'}(P),
    chi_inf   = unramified with value 1 for even characters (trivial on the
                constants), tamely ramified with chi_inf(c) = chi(c) otherwise.

The global additive character is the residue family of dt: level 0 at finite
places, level -2 with twist -1 at infinity.  With these conventions the
completed L-function of every character satisfies the exact functional
equation L(T) = eps * L_dual(1/(qT)), which criterion tests verify against
Weil theory.

The completed L-function of a primitive nontrivial character is the finite
sum  sum_{deg f < deg cond} chi(f) T^(deg f), times 1/(1 - inf_twist*T) when
the character is even (the trivial zero of the finite part cancels); the
trivial character gives the zeta function 1/((1-T)(1-qT)).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import (DuplicateConstituent, NotClosedForm, NotSelfDual,
                     PlaceMismatch, SizeLimitExceeded, SizeMismatch,
                     TypeMismatch)
from .ffbase import (FiniteField, FqPoly, Place, infinite_place,
                     irreducibles_of_degree, monic_irreducibles)
from .qseries import QRat, qr_dual, qr_prod, qr_roots
from .repsys import (CharLeaf, FormalLeaf, Induced, RepTree, gamma)
from .satake import GroupTag, SatakeClass
from .tate import AddChar, MultChar, local_ring, std_psi, tate_L, tate_eps

MAX_COEFF_DEG = 10  # conductor degree bound for coefficient sums (q^deg terms)


def global_psi(place: Place) -> AddChar:
    """The component at `place` of the standard character of A_k/k (residues
    of dt): level 0 at finite places, level -2 with unit twist -1 at infinity."""
    psi = std_psi(place)
    if place.is_infinite:
        F = place.field
        return psi.twisted(FqPoly(F, (F.neg(1),)), -2)
    return psi


# ---------------------------------------------------------------------------
# grossencharacters


class GrossenChar:
    """A character of the ray class group of F_q[t], trivial-at-infinity
    convention (inf_twist is the declared unramified value at infinity; the
    functional-equation machinery assumes the default 1)."""

    def __init__(self, field: FiniteField,
                 components: dict[Place, tuple[int, np.ndarray]],
                 inf_twist: complex = 1.0):
        self.field = field
        # primitivize componentwise: drop trivial unit characters
        comps: dict[Place, tuple[int, np.ndarray]] = {}
        for place, (a, table) in components.items():
            chi = MultChar(place, 1.0, a, table).primitive()
            if chi.cond > 0:
                comps[place] = (chi.cond, chi.table)
        self.components = dict(sorted(comps.items(), key=lambda kv: kv[0].key()))
        self.inf_twist = complex(inf_twist)
        self._even: Optional[bool] = None
        self._local_cache: dict = {}
        self._key_cache: Optional[tuple] = None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def trivial(field: FiniteField) -> "GrossenChar":
        return GrossenChar(field, {})

    @staticmethod
    def quadratic(field: FiniteField, modulus: FqPoly) -> "GrossenChar":
        """The quadratic character modulo a squarefree monic modulus (odd q)."""
        if field.q % 2 == 0:
            raise NotSelfDual("quadratic characters need odd q")
        comps = {}
        for P, e in modulus.monic().factor():
            if e > 1:
                raise ValueError("quadratic conductor must be squarefree")
            place = Place(field, P)
            ring = local_ring(place, 1)
            tab = np.zeros(ring.size, dtype=np.complex128)
            half = (field.q ** P.degree - 1) // 2
            one = FqPoly(field, (1,))
            for c in ring.unit_codes:
                x = ring.decode(int(c))
                tab[c] = 1.0 if x.powmod(half, P) == one else -1.0
            comps[place] = (1, tab)
        return GrossenChar(field, comps)

    @staticmethod
    def from_gen_phases(field: FiniteField, modulus: FqPoly,
                        phases_by_prime: dict[FqPoly, Sequence[float]]) -> "GrossenChar":
        """Generator-image construction, one phase list per prime power factor."""
        comps = {}
        for P, a in modulus.monic().factor():
            place = Place(field, P)
            phases = phases_by_prime.get(P)
            if phases is None:
                continue
            chi = MultChar.from_gen_phases(place, a, phases)
            if chi.cond:
                comps[place] = (chi.cond, chi.table)
        return GrossenChar(field, comps)

    # -- structure -------------------------------------------------------------

    @property
    def conductor(self) -> FqPoly:
        out = FqPoly(self.field, (1,))
        for place, (a, _) in self.components.items():
            out = out * place.poly ** a
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.components

    def dirichlet_value(self, f: FqPoly) -> complex:
        """The Dirichlet-table value at f (0 when f shares a factor with the
        conductor); multiplicative on monic polynomials."""
        out = 1.0 + 0j
        for place, (a, table) in self.components.items():
            ring = local_ring(place, a)
            out *= table[ring.encode(f)]
            if out == 0:
                return 0j
        return out

    def value_on_constants(self, c: int) -> complex:
        return self.dirichlet_value(FqPoly(self.field, (c,)))

    @property
    def is_even(self) -> bool:
        """Trivial on the constant field F_q^* (hence unramified at infinity)."""
        if self._even is None:
            self._even = all(abs(self.value_on_constants(c) - 1.0) < 1e-9
                             for c in range(1, self.field.q))
        return self._even

    def __mul__(self, other: "GrossenChar") -> "GrossenChar":
        if self.field != other.field:
            raise PlaceMismatch("characters over different constant fields")
        places = set(self.components) | set(other.components)
        comps = {}
        for place in places:
            a1, t1 = self.components.get(place, (0, None))
            a2, t2 = other.components.get(place, (0, None))
            a = max(a1, a2)
            chi = MultChar.unramified(place, 1.0)
            if a1:
                chi = chi * MultChar(place, 1.0, a1, t1)
            if a2:
                chi = chi * MultChar(place, 1.0, a2, t2)
            if chi.cond:
                comps[place] = (chi.cond, chi.table)
        return GrossenChar(self.field, comps, self.inf_twist * other.inf_twist)

    def inverse(self) -> "GrossenChar":
        comps = {place: (a, np.conj(table))
                 for place, (a, table) in self.components.items()}
        return GrossenChar(self.field, comps, 1.0 / self.inf_twist)

    def key(self) -> tuple:
        """Canonical identity of the (primitive) character."""
        if self._key_cache is not None:
            return self._key_cache
        parts = []
        for place, (a, table) in self.components.items():
            ring = local_ring(place, a)
            gens = ring.unit_generators
            vals = tuple((round(complex(table[ring.encode(g)]).real, 9),
                          round(complex(table[ring.encode(g)]).imag, 9))
                         for g, _ in gens)
            parts.append((place.key(), a, vals))
        self._key_cache = ((self.field.p, self.field.f), tuple(parts),
                           (round(self.inf_twist.real, 9),
                            round(self.inf_twist.imag, 9)))
        return self._key_cache

    def __eq__(self, other):
        return isinstance(other, GrossenChar) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # -- Hecke local components -----------------------------------------------

    def euler_value(self, P: FqPoly) -> complex:
        """chi(P) entering the Euler product at an unramified prime."""
        return self.dirichlet_value(P)

    def local_component(self, place: Place) -> MultChar:
        """The local component of the associated idele-class character."""
        got = self._local_cache.get(place)
        if got is not None:
            return got
        if place.is_infinite:
            out = self._infinite_component()
        elif place not in self.components:
            out = MultChar.unramified(place, self.euler_value(place.poly))
        else:
            a, table = self.components[place]
            alpha = 1.0 + 0j
            for other, (a2, t2) in self.components.items():
                if other != place:
                    ring2 = local_ring(other, a2)
                    alpha *= t2[ring2.encode(place.poly)]
            out = MultChar(place, alpha, a, np.conj(table))
        self._local_cache[place] = out
        return out

    def _infinite_component(self) -> MultChar:
        inf = infinite_place(self.field)
        if self.is_even:
            return MultChar.unramified(inf, self.inf_twist)
        ring = local_ring(inf, 1)
        tab = np.zeros(ring.size, dtype=np.complex128)
        for c in range(1, self.field.q):
            tab[c] = self.value_on_constants(c)
        return MultChar(inf, self.inf_twist, 1, tab)

    # -- JSON -------------------------------------------------------------------

    def to_json(self) -> dict:
        comps = []
        for place, (a, table) in self.components.items():
            ring = local_ring(place, a)
            phases = []
            for g, o in ring.unit_generators:
                z = complex(table[ring.encode(g)])
                ph = float(np.angle(z)) / (2 * np.pi) % 1.0
                phases.append(round(ph * o) / o)
            comps.append({"poly": place.poly.to_json(), "cond": a,
                          "gen_phases": phases})
        return {"field": {"p": self.field.p, "f": self.field.f},
                "inf_twist": [self.inf_twist.real, self.inf_twist.imag],
                "components": comps}

    @staticmethod
    def from_json(obj: dict) -> "GrossenChar":
        from .ffbase import make_field
        field = make_field(int(obj["field"]["p"]), int(obj["field"]["f"]))
        comps = {}
        for c in obj.get("components", []):
            place = Place(field, FqPoly(field, c["poly"]))
            chi = MultChar.from_gen_phases(place, int(c["cond"]),
                                           [float(x) for x in c["gen_phases"]])
            if chi.cond:
                comps[place] = (chi.cond, chi.table)
        tw = obj.get("inf_twist", [1.0, 0.0])
        return GrossenChar(field, comps, complex(tw[0], tw[1]))


# ---------------------------------------------------------------------------
# coefficient sums (vectorized over monic polynomials of fixed degree)


@functools.lru_cache(maxsize=None)
def _pow_digits(field: FiniteField, width: int) -> np.ndarray:
    p = field.p
    return p ** np.arange(width, dtype=np.int64)


def _add_codes(field: FiniteField, arr: np.ndarray, const: int, width_q: int) -> np.ndarray:
    """Vectorized field addition of residue codes (digitwise base p)."""
    p = field.p
    wp = width_q * field.f
    pows = _pow_digits(field, wp)
    da = (arr[:, None] // pows[None, :]) % p
    dc = (const // pows) % p
    s = (da + dc[None, :]) % p
    return (s * pows[None, :]).sum(axis=1)


@functools.lru_cache(maxsize=None)
def _monic_reduction(field: FiniteField, place: Place, a: int, n: int) -> np.ndarray:
    """Codes of (t^n + g) mod P^a for all q^n polynomials g of degree < n."""
    ring = local_ring(place, a)
    lead = ring.encode(FqPoly(field, [0] * n + [1]) % ring.modulus)
    red = _reduction_all(field, place, a, n)
    return _add_codes(field, red, lead, ring.width)


@functools.lru_cache(maxsize=None)
def _reduction_all(field: FiniteField, place: Place, a: int, n: int) -> np.ndarray:
    """Codes of g mod P^a for all q^n polynomials g of degree < n."""
    if n > MAX_COEFF_DEG:
        raise SizeLimitExceeded(f"coefficient sums of degree {n} beyond desk scale")
    ring = local_ring(place, a)
    q = field.q
    if n <= ring.width:
        # degree < width of the ring: reduction is the identity on codes
        return np.arange(q ** n, dtype=np.int64)
    prev = _reduction_all(field, place, a, n - 1)
    blocks = []
    for c in range(q):
        mono = ring.encode(FqPoly(field, [0] * (n - 1) + [c]) % ring.modulus)
        blocks.append(_add_codes(field, prev, mono, ring.width))
    return np.concatenate(blocks)


def char_coefficients(chi: GrossenChar, n_max: int) -> np.ndarray:
    """c_n = sum over monic f of degree n of chi(f), for n = 0..n_max."""
    field = chi.field
    out = np.zeros(n_max + 1, dtype=np.complex128)
    for n in range(n_max + 1):
        vals = np.ones(field.q ** n, dtype=np.complex128)
        for place, (a, table) in chi.components.items():
            vals = vals * table[_monic_reduction(field, place, a, n)]
        out[n] = vals.sum()
    return out


# ---------------------------------------------------------------------------
# completed L, global epsilon


def zeta_qrat(field: FiniteField) -> QRat:
    q = float(field.q)
    return QRat.inv_euler(q, 1.0, 1) * QRat.inv_euler(q, q, 1)


def zeta_euler_coeffs_int(field: FiniteField, D: int) -> list[int]:
    """Exact integer coefficients up to T^D of the Euler product over the
    finite places of degree <= D (one factor 1/(1 - T^deg) per place)."""
    out = [0] * (D + 1)
    out[0] = 1
    for d in range(1, D + 1):
        for _ in irreducibles_of_degree(field, d):
            for k in range(d, D + 1):
                out[k] += out[k - d]
    return out


def zeta_closed_coeffs_int(field: FiniteField, D: int,
                           include_infinite: bool = False) -> list[int]:
    """Taylor coefficients of the closed form: 1/(1-qT) for the finite part
    (all monic polynomials), times 1/(1-T) when the infinite place is included."""
    q = field.q
    fin = [q ** k for k in range(D + 1)]
    if not include_infinite:
        return fin
    out, acc = [], 0
    for c in fin:
        acc += c
        out.append(acc)
    return out


_char_L_cache: dict = {}
_char_eps_cache: dict = {}
_char_intern: dict = {}


def intern_char(chi: GrossenChar) -> GrossenChar:
    """Canonical instance per character key, so that repeated products (and
    self-inverse duals) share their local-component caches."""
    return _char_intern.setdefault(chi.key(), chi)


def char_L_complete(chi: GrossenChar) -> QRat:
    """The completed L-function of the primitive character underlying chi."""
    key = chi.key()
    got = _char_L_cache.get(key)
    if got is not None:
        return got
    q = float(chi.field.q)
    if chi.is_trivial:
        L = QRat.inv_euler(q, chi.inf_twist, 1) * QRat.inv_euler(q, q, 1)
    else:
        M = chi.conductor.degree
        coeffs = char_coefficients(chi, M - 1)
        L = QRat.from_coeffs(q, coeffs)
        if chi.is_even:
            # the finite part carries the trivial zero at T = 1/inf_twist,
            # cancelled by the unramified Euler factor at infinity
            L = L * QRat.inv_euler(q, chi.inf_twist, 1)
    _char_L_cache[key] = L
    return L


def char_global_eps(chi: GrossenChar) -> QRat:
    """Product of the local epsilon-factors over all ramified places and
    infinity (where the standard global psi has level -2)."""
    key = chi.key()
    got = _char_eps_cache.get(key)
    if got is not None:
        return got
    q = float(chi.field.q)
    factors = []
    for place in chi.components:
        factors.append(tate_eps(chi.local_component(place), global_psi(place)))
    inf = infinite_place(chi.field)
    factors.append(tate_eps(chi.local_component(inf), global_psi(inf)))
    out = qr_prod(factors, q=q)
    _char_eps_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# isobaric sums


def selfdual_type(chi: GrossenChar, degree_bound: int = 6) -> str:
    """'Orthogonal' or 'Symplectic' for a self-dual GL_1 constituent.

    GL_1: Sym^2 is the square character; chi^2 = 1 makes its partial L the
    partial zeta function, whose coefficients grow by the exact factor q
    (pole at s = 1), so the type is orthogonal.  The exterior square of GL_1
    is zero-dimensional and never has a pole.  The check compares partial-L
    coefficients exactly rather than doing analytic continuation.
    """
    sq = chi * chi
    if not sq.is_trivial:
        raise NotSelfDual("character is not self-dual (chi^2 != 1)")
    field = chi.field
    omit = set(chi.components)
    sym2 = _partial_coeffs_omitting(field, omit, degree_bound)  # chi^2 = trivial
    zeta = _partial_coeffs_omitting(field, omit, degree_bound)
    if not np.allclose(sym2, zeta, rtol=0, atol=1e-9):
        raise NotSelfDual("Sym^2 partial coefficients do not match zeta (internal)")
    ratio = sym2[degree_bound].real / sym2[degree_bound - 1].real
    if abs(ratio - field.q) > 0.5:
        raise NotSelfDual("Sym^2 coefficient growth does not show the pole at s=1")
    return "Orthogonal"


def _partial_coeffs_omitting(field: FiniteField, omit: set, D: int) -> np.ndarray:
    omit_polys = {v.poly for v in omit}
    out = np.zeros(D + 1, dtype=np.complex128)
    out[0] = 1.0
    for d in range(1, D + 1):
        for P in irreducibles_of_degree(field, d):
            if P in omit_polys:
                continue
            for k in range(d, D + 1):
                out[k] += out[k - d]
    return out


@dataclass(frozen=True)
class IsobaricLift:
    """An isobaric sum of pairwise distinct self-dual GL_1 constituents,
    declared as the functorial image of a classical group."""

    constituents: tuple[GrossenChar, ...]
    declared_group: GroupTag

    @property
    def field(self) -> FiniteField:
        return self.constituents[0].field


def isobaric_sum(constituents: Sequence[GrossenChar],
                 declared_group: GroupTag) -> IsobaricLift:
    constituents = tuple(constituents)
    N = declared_group.gl_size
    if len(constituents) != N:
        raise SizeMismatch(
            f"{len(constituents)} GL_1 constituents cannot fill GL_{N} "
            f"(lift of {declared_group.family} rank {declared_group.rank})")
    keys = [c.key() for c in constituents]
    if len(set(keys)) != len(keys):
        raise DuplicateConstituent("isobaric constituents must be pairwise distinct")
    for c in constituents:
        t = selfdual_type(c)  # raises NotSelfDual when chi^2 != 1
        if declared_group.family == "SO_odd" and t == "Orthogonal":
            raise TypeMismatch(
                "SO_odd lifts need symplectic-type constituents; GL_1 characters "
                "are orthogonal (their Sym^2 L-function has the pole at s=1)")
    return IsobaricLift(constituents, declared_group)


PairSide = Union[GrossenChar, IsobaricLift]


def _constituents(side: PairSide) -> tuple[GrossenChar, ...]:
    if isinstance(side, GrossenChar):
        return (side,)
    return side.constituents


# ---------------------------------------------------------------------------
# global pairs


@dataclass
class GlobalPair:
    """A pair of automorphic objects over F_q(t) with the standard global psi.

    local_overrides may replace the derived local representation of the pi
    side at finitely many places (e.g. by a FormalLeaf standing in for a
    supercuspidal with the declared lift); pairs with formal overrides only
    support the partial functional-equation check.
    """

    field: FiniteField
    tau: PairSide
    pi: PairSide
    local_overrides: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for side in (self.tau, self.pi):
            if _constituents(side)[0].field != self.field:
                raise PlaceMismatch("pair sides over a different constant field")

    @property
    def ramified_set(self) -> list[Place]:
        """Finite ramified places plus infinity (where psi has level -2)."""
        places = set()
        for side in (self.tau, self.pi):
            for chi in _constituents(side):
                places.update(chi.components.keys())
        places.update(self.local_overrides.keys())
        places.discard(infinite_place(self.field))
        out = sorted(places, key=lambda v: v.key())
        out.append(infinite_place(self.field))
        return out

    def psi_at(self, place: Place) -> AddChar:
        return global_psi(place)

    def local_tree(self, side: PairSide, place: Place) -> RepTree:
        override = self.local_overrides.get(place)
        if override is not None and side is self.pi:
            return override
        chis = _constituents(side)
        if len(chis) == 1:
            return CharLeaf(chis[0].local_component(place))
        comps = [c.local_component(place) for c in chis]
        if all(c.is_unramified for c in comps):
            cls = SatakeClass(GroupTag("GL", len(comps)),
                              tuple(c.alpha for c in comps))
            from .repsys import SatakeLeaf
            return SatakeLeaf(cls, place)
        return Induced(GroupTag("GL", len(comps)),
                       tuple((CharLeaf(c), 0.0) for c in comps), None)

    def contragredient(self) -> "GlobalPair":
        def dual_side(side: PairSide) -> PairSide:
            if isinstance(side, GrossenChar):
                return side.inverse()
            return IsobaricLift(tuple(c.inverse() for c in side.constituents),
                                side.declared_group)
        # overrides of the dual pair: contragredients of the stored trees
        dual_over = {v: t.contragredient() for v, t in self.local_overrides.items()}
        return GlobalPair(self.field, dual_side(self.tau), dual_side(self.pi), dual_over)

    def product_chars(self) -> list[GrossenChar]:
        if not hasattr(self, "_products"):
            self._products = [intern_char(a * b) for a in _constituents(self.tau)
                              for b in _constituents(self.pi)]
        return self._products

    def _require_closed_form(self):
        for v, t in self.local_overrides.items():
            if isinstance(t, FormalLeaf) and t.lift_tree is None:
                raise NotClosedForm(
                    f"formal data at {v!r} carries no lift description")


def global_L(pair: GlobalPair) -> QRat:
    """prod over constituent pairs of the completed character L-functions."""
    pair._require_closed_form()
    return qr_prod([char_L_complete(c) for c in pair.product_chars()],
                   q=float(pair.field.q))


def global_eps(pair: GlobalPair) -> QRat:
    pair._require_closed_form()
    return qr_prod([char_global_eps(c) for c in pair.product_chars()],
                   q=float(pair.field.q))


def local_pair_L(pair: GlobalPair, place: Place) -> QRat:
    """The local L-factor of the pair at one place (from the lift data)."""
    return qr_prod([tate_L(c.local_component(place)) for c in pair.product_chars()],
                   q=float(pair.field.q))


def partial_L(pair: GlobalPair, D: int) -> np.ndarray:
    """Coefficients up to T^D of the Euler product over the places outside the
    ramified set, in (degree, code) order."""
    if D < 1:
        raise SizeLimitExceeded("degree bound must be >= 1")
    field = pair.field
    S_polys = {v.poly for v in pair.ramified_set}
    out = np.zeros(D + 1, dtype=np.complex128)
    out[0] = 1.0
    for d in range(1, D + 1):
        for P in irreducibles_of_degree(field, d):
            if P in S_polys:
                continue
            for chi in pair.product_chars():
                alpha = chi.euler_value(P)
                if alpha == 0:
                    continue
                # multiply the series by 1/(1 - alpha T^d)
                for k in range(d, D + 1):
                    out[k] += alpha * out[k - d]
    return out


def verify_fe(pair: GlobalPair, tol: float = 1e-9) -> dict:
    """Check the completed functional equation L = eps * L~(1-s) and the
    partial form with gamma-factors at the ramified set."""
    q = float(pair.field.q)
    dual = pair.contragredient()
    report: dict = {"check": "fe", "tol": tol}
    has_formal = any(isinstance(t, FormalLeaf) for t in pair.local_overrides.values())
    residuals = []
    if not has_formal:
        Lg = global_L(pair)
        Eg = global_eps(pair)
        Ld = global_L(dual)
        res_c = Lg.residual_vs(Eg * qr_dual(Ld))
        report["completed_residual"] = res_c
        residuals.append(res_c)
        report["form"] = "completed+partial"
    else:
        report["form"] = "partial"
    # partial form: L^S(s) = prod_{v in S} gamma_v L^S(1-s, duals)
    S = pair.ramified_set
    LS = global_L(pair)
    LSd = global_L(dual)
    gammas = []
    for v in S:
        LS = LS / local_pair_L(pair, v)
        LSd = LSd / local_pair_L(dual, v)
        gammas.append(gamma(pair.local_tree(pair.tau, v),
                            pair.local_tree(pair.pi, v), pair.psi_at(v)))
    rhs = qr_prod(gammas, q=q) * qr_dual(LSd)
    res_p = LS.residual_vs(rhs)
    report["partial_residual"] = res_p
    residuals.append(res_p)
    report["ramified_places"] = [v.to_json() for v in S]
    report["max_residual"] = max(residuals)
    report["pass"] = bool(report["max_residual"] < tol)
    return report


def verify_rh(L: QRat, tol: float = 1e-8) -> dict:
    """All zeros of L on the circle |T| = q^(-1/2)?  Reports each zero with
    its deviation; computed from the expanded numerator via qr_roots."""
    q = L.q
    target = q ** -0.5
    roots = qr_roots(L.num, tol=1e-7)
    rows = []
    for r in roots:
        dev = abs(abs(r) - target)
        s = -np.log(complex(r)) / np.log(q)
        rows.append({"re_s": float(s.real), "im_s": float(s.imag),
                     "abs_T": abs(r), "deviation": dev})
    rows.sort(key=lambda row: (row["im_s"], row["re_s"]))
    max_dev = max((row["deviation"] for row in rows), default=0.0)
    return {"check": "rh", "tol": tol, "n_zeros": len(rows), "zeros": rows,
            "max_deviation": max_dev, "pass": bool(max_dev < tol)}
