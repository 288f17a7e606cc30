"""Deterministic desk-scale test corpora: quadratic-character pairs, the
isobaric instance, and seeded random local data for the axiom suite."""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

import numpy as np

from .errors import PreconditionFailed
from .ffbase import FiniteField, FqPoly, Place, monic_irreducibles, monic_polys
from .globalfield import (GlobalPair, GrossenChar, IsobaricLift, char_L_complete,
                          global_L, isobaric_sum, verify_fe, verify_rh)
from .qseries import QRat
from .repsys import (CharLeaf, FormalLeaf, Induced, RepTree, SatakeLeaf,
                     trivial_char_leaf)
from .satake import GroupTag, SatakeClass
from .tate import MultChar


def squarefree_monics(field: FiniteField, max_deg: int) -> list[FqPoly]:
    """Squarefree monic polynomials of degree 1..max_deg, in (degree, code) order."""
    out = []
    for d in range(1, max_deg + 1):
        for f in monic_polys(field, d):
            if all(e == 1 for _, e in f.factor()):
                out.append(f)
    return out


def quadratic_characters(field: FiniteField, max_deg: int) -> list[GrossenChar]:
    """All quadratic (order exactly 2) grossencharacters with conductor of
    degree <= max_deg: one per squarefree monic modulus."""
    return [GrossenChar.quadratic(field, m) for m in squarefree_monics(field, max_deg)]


def quadratic_pairs(field: FiniteField,
                    max_deg: int) -> Iterator[tuple[GrossenChar, GrossenChar]]:
    chars = quadratic_characters(field, max_deg)
    for c1, c2 in itertools.product(chars, chars):
        yield c1, c2


def run_fe_rh_corpus(field: FiniteField, max_deg: int, fe_tol: float = 1e-9,
                     rh_tol: float = 1e-8) -> dict:
    """Functional equation and RH over all quadratic-character pairs.

    Both checks depend only on the product character chi_1 * chi_2, whose
    identity for quadratic characters is the symmetric difference of the
    prime supports, so each distinct product is verified exactly once.
    """
    chars = quadratic_characters(field, max_deg)
    supports = [frozenset(c.components.keys()) for c in chars]
    seen: dict = {}
    n_pairs = 0
    max_fe = 0.0
    max_rh = 0.0
    n_zeros = 0
    for (i, c1), (j, c2) in itertools.product(enumerate(chars), enumerate(chars)):
        n_pairs += 1
        key = supports[i] ^ supports[j]
        if key in seen:
            continue
        pair = GlobalPair(field, c1, c2)
        fe = verify_fe(pair, tol=fe_tol)
        rh = verify_rh(global_L(pair), tol=rh_tol)
        seen[key] = (fe["max_residual"], rh["max_deviation"])
        max_fe = max(max_fe, fe["max_residual"])
        max_rh = max(max_rh, rh["max_deviation"])
        n_zeros += rh["n_zeros"]
    return {"check": "fe+rh corpus", "q": field.q, "max_modulus_degree": max_deg,
            "n_pairs": n_pairs, "n_distinct_products": len(seen),
            "n_zeros": n_zeros, "max_fe_residual": max_fe,
            "max_rh_deviation": max_rh,
            "pass": bool(max_fe < fe_tol and max_rh < rh_tol)}


def isobaric_instance(field: FiniteField) -> GlobalPair:
    """tau = quadratic character on GL_1; pi formal on Sp_2 with the declared
    lift chi_1 + chi_2 + chi_1*chi_2 (an isobaric sum with trivial product,
    so the placewise classes genuinely land in SO_3(C))."""
    irr1 = monic_irreducibles(field, 1)
    chi = GrossenChar.quadratic(field, irr1[2])          # tau, mod t + c
    chi1 = GrossenChar.quadratic(field, irr1[0])         # mod t
    chi2 = GrossenChar.quadratic(field, irr1[1])         # mod t + 1
    chi3 = chi1 * chi2
    lift = isobaric_sum([chi1, chi2, chi3], GroupTag("Sp", 1))
    pair = GlobalPair(field, chi, lift)
    # stand in a formal supercuspidal at the first ramified place of the lift,
    # with the induced-from-characters tree as its declared local lift
    v0 = Place(field, irr1[0])
    local = Induced(GroupTag("GL", 3),
                    tuple((CharLeaf(c.local_component(v0)), 0.0)
                          for c in lift.constituents), None)
    formal = FormalLeaf("sp2_formal", GroupTag("Sp", 1), v0,
                        MultChar.trivial(v0), {}, lift_tree=local)
    pair.local_overrides[v0] = formal
    return pair


# ---------------------------------------------------------------------------
# seeded random local data for the axiom suite


def run_axiom_suite(field: FiniteField, seed: int, n_cases: int = 200,
                    tol: float = 1e-9, stability_threshold: int = 3) -> dict:
    """Seeded property suite for the local axioms: class-field-theory
    compatibility, psi-dependence, unramified twists, the local functional
    equation, commutativity, stability on principal series, and monomiality
    of tempered epsilon-factors."""
    from .repsys import (check_cft, check_commutativity, check_local_fe,
                         check_psi_dependence, check_stability_ps,
                         check_unram_twist, eps_tempered)
    from .tate import std_psi

    gen = LocalCaseGen(field, seed)
    results = {}

    def record(name, residuals):
        worst = max(residuals)
        results[name] = {"n_cases": len(residuals), "max_residual": worst,
                         "pass": bool(worst < tol)}

    # (iii) class field theory: gamma on GL_1 x GL_1 is the abelian gamma
    res = []
    for _ in range(n_cases):
        v = gen.place()
        psi = gen.psi(v)
        c1 = gen.ram_char(v, 1) if gen.rng.random() < 0.3 else gen.unram_char(v)
        c2 = gen.unram_char(v)
        res.append(check_cft(c1, c2, psi))
    record("iii_class_field_theory", res)

    # (v) psi-dependence with the dual-size exponent table
    res = []
    for _ in range(n_cases):
        v = gen.place()
        tau, pi = gen.random_pair(v)
        a_unit = gen.unit_poly(v)
        a_val = int(gen.rng.integers(-1, 3))
        res.append(check_psi_dependence(tau, pi, std_psi(v), a_unit, a_val))
    record("v_psi_dependence", res)

    # (xi)/(xiv) unramified twists
    res = []
    for _ in range(n_cases):
        v = gen.place()
        tau = gen.random_tree(v, max_rank=2, gl_only=True)
        pi = gen.random_tree(v, max_rank=2)
        s0 = complex(round(gen.rng.uniform(-0.8, 0.8), 3),
                     round(gen.rng.uniform(-0.5, 0.5), 3))
        res.append(check_unram_twist(tau, pi, gen.psi(v), s0))
    record("xi_xiv_unramified_twists", res)

    # (xiii) local functional equation
    res = []
    for _ in range(n_cases):
        v = gen.place()
        tau, pi = gen.random_pair(v, allow_ramified=True)
        res.append(check_local_fe(tau, pi, gen.psi(v)))
    record("xiii_local_fe", res)

    # (xv) commutativity
    res = []
    for _ in range(n_cases):
        v = gen.place()
        tau, pi = gen.random_pair(v)
        res.append(check_commutativity(tau, pi, gen.psi(v)))
    record("xv_commutativity", res)

    # (vi) stability on principal series
    res = []
    for _ in range(n_cases):
        v = gen.places[0]
        eta = gen.ram_char(v, stability_threshold)
        tag = gen.random_tag(max_rank=2, classical_only=True)
        pi1 = gen.principal_series(v, tag)
        pi2 = gen.principal_series(v, tag)
        res.append(check_stability_ps(eta, pi1, pi2, std_psi(v),
                                      threshold=stability_threshold))
    record("vi_stability_ps", res)

    # (x) epsilon-factors of tempered pairs are monomials
    res = []
    for _ in range(n_cases):
        v = gen.place()
        tau = gen.random_tree(v, max_rank=2, tempered=True)
        pi = gen.random_tree(v, max_rank=2, tempered=True)
        eps = eps_tempered(tau, pi, gen.psi(v))  # raises if not a monomial
        ok, c, _ = eps.is_monomial()
        res.append(0.0 if ok else 1.0)
    record("x_eps_monomial", res)

    worst = max(r["max_residual"] for r in results.values())
    return {"check": "axioms", "q": field.q, "seed": seed, "n_cases": n_cases,
            "tol": tol, "properties": results, "max_residual": worst,
            "pass": bool(all(r["pass"] for r in results.values()))}


class LocalCaseGen:
    """Deterministic generator of random local representation data.

    Eigenvalues are sampled on the unit circle (tempered) or in a modulus
    band [0.8, 1.25] chosen so that products of eigenvalue pairs never fall
    within cancellation distance of q times another product.
    """

    def __init__(self, field: FiniteField, seed: int, d_max: int = 2):
        self.field = field
        self.rng = np.random.default_rng(seed)
        self.places = [Place(field, P) for P in monic_irreducibles(field, d_max)]

    def place(self) -> Place:
        return self.places[self.rng.integers(len(self.places))]

    def unit(self) -> complex:
        th = self.rng.uniform(0.0, 2 * np.pi)
        return complex(np.cos(th), np.sin(th))

    def near_unit(self) -> complex:
        r = self.rng.uniform(0.8, 1.25)
        return r * self.unit()

    def unram_char(self, place: Place, tempered: bool = True) -> MultChar:
        return MultChar.unramified(place, self.unit() if tempered else self.near_unit())

    def ram_char(self, place: Place, cond: int) -> MultChar:
        """A random character with conductor exponent exactly `cond`."""
        from .tate import local_ring
        ring = local_ring(place, cond)
        gens = ring.unit_generators
        for _ in range(64):
            phases = [int(self.rng.integers(0, o)) / o for _, o in gens]
            chi = MultChar.from_gen_phases(place, cond, phases, alpha=self.unit())
            if chi.cond == cond:
                return chi
        raise PreconditionFailed(f"could not sample a conductor-{cond} character")

    def unit_poly(self, place: Place) -> FqPoly:
        """A random unit of O_v (nonzero modulo the uniformizer)."""
        F = self.field
        pi = place.poly if place.poly is not None else FqPoly(F, (0, 1))
        while True:
            f = FqPoly(F, (int(self.rng.integers(0, F.q)),
                           int(self.rng.integers(0, F.q))))
            if not (f % pi).is_zero:
                return f

    def psi(self, place: Place) -> "AddChar":
        """std psi, sometimes twisted (level in -1..1, random unit)."""
        from .tate import std_psi
        psi = std_psi(place)
        if self.rng.random() < 0.4:
            psi = psi.twisted(self.unit_poly(place), int(self.rng.integers(-1, 2)))
        return psi

    def principal_series(self, place: Place, tag: GroupTag,
                         tempered: bool = True) -> Induced:
        parts = tuple((CharLeaf(self.unram_char(place, tempered)), 0.0)
                      for _ in range(tag.rank))
        return Induced(tag, parts, None)

    def random_pair(self, place: Place,
                    allow_ramified: bool = False) -> tuple[RepTree, RepTree]:
        """A pair of trees at one place, total rank <= 6."""
        tau = self.random_tree(place, max_rank=3)
        if allow_ramified and self.rng.random() < 0.3:
            tau = CharLeaf(self.ram_char(place, 1))
        pi = self.random_tree(place, max_rank=3)
        return tau, pi

    def satake_class(self, tag: GroupTag, tempered: bool = True) -> list[complex]:
        vals = [self.unit() if tempered else self.near_unit()
                for _ in range(tag.rank)]
        if tag.family == "GL":
            return vals
        eigs: list[complex] = []
        for v in vals:
            eigs.extend((v, 1.0 / v))
        if tag.family == "Sp":
            eigs.append(1.0 + 0j)
        return eigs

    def satake_leaf(self, place: Place, tag: GroupTag, tempered: bool = True) -> SatakeLeaf:
        return SatakeLeaf(SatakeClass(tag, tuple(self.satake_class(tag, tempered))),
                          place)

    def random_tag(self, max_rank: int = 2, classical_only: bool = False) -> GroupTag:
        fams = ["SO_odd", "SO_even", "Sp"] if classical_only else \
            ["SO_odd", "SO_even", "Sp", "GL"]
        fam = fams[self.rng.integers(len(fams))]
        rank = int(self.rng.integers(1, max_rank + 1))
        return GroupTag(fam, rank)

    def gl_block(self, place: Place, rank: int, tempered: bool = True) -> RepTree:
        if rank == 1 and self.rng.random() < 0.7:
            return CharLeaf(self.unram_char(place, tempered))
        return self.satake_leaf(place, GroupTag("GL", rank), tempered)

    def random_tree(self, place: Place, max_rank: int = 3,
                    tempered: bool = False,
                    classical_only: bool = False,
                    gl_only: bool = False) -> RepTree:
        """A leaf or a one-level induced tree, rank <= max_rank."""
        if gl_only:
            tag = GroupTag("GL", int(self.rng.integers(1, max_rank + 1)))
        else:
            tag = self.random_tag(max_rank=max_rank, classical_only=classical_only)
        shape = self.rng.random()
        if shape < 0.4:
            return self.satake_leaf(place, tag, tempered=True)
        # induced: split the rank into GL blocks (+ optional satake anchor)
        rank = tag.rank
        blocks: list[int] = []
        while rank > 0:
            b = int(self.rng.integers(1, rank + 1))
            blocks.append(b)
            rank -= b
        anchor = None
        if tag.is_classical and len(blocks) > 1 and self.rng.random() < 0.5:
            anchor_rank = blocks.pop()
            anchor = self.satake_leaf(place, GroupTag(tag.family, anchor_rank), True)
        if tempered:
            exps = [0.0] * len(blocks)
        else:
            exps = sorted((round(float(x), 3) for x in
                           self.rng.uniform(0.05, 0.9, len(blocks))), reverse=True)
            while len(set(exps)) < len(exps):  # strict ordering
                exps = [e + i * 1e-3 for i, e in enumerate(exps)]
                exps.sort(reverse=True)
        parts = tuple((self.gl_block(place, b, tempered=True), e)
                      for b, e in zip(blocks, exps))
        return Induced(tag, parts, anchor)
