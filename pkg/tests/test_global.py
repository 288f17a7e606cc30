"""Grossencharacters, completed/partial L-functions, the global functional
equation, isobaric sums, and the RH verifier."""

import numpy as np
import pytest

from lfunc.corpus import isobaric_instance, quadratic_characters
from lfunc.errors import (DuplicateConstituent, NotClosedForm, NotSelfDual,
                          SizeMismatch, TypeMismatch)
from lfunc.ffbase import (FqPoly, Place, infinite_place, irreducibles_of_degree,
                          make_field, monic_polys)
from lfunc.globalfield import (GlobalPair, GrossenChar, char_L_complete,
                               char_coefficients, char_global_eps, global_L,
                               global_eps, global_psi, isobaric_sum,
                               local_pair_L, partial_L, selfdual_type,
                               verify_fe, verify_rh, zeta_closed_coeffs_int,
                               zeta_euler_coeffs_int, zeta_qrat)
from lfunc.qseries import QRat, qr_dual
from lfunc.repsys import FormalLeaf, gamma
from lfunc.satake import GroupTag

F3 = make_field(3, 1)
F5 = make_field(5, 1)
T_POLY = FqPoly(F3, (0, 1))


def brute_char_coeff(chi, n):
    """Oracle: plain sum of chi(f) over the monic polynomials of degree n."""
    return sum(chi.dirichlet_value(f) for f in monic_polys(chi.field, n))


# -- characters ---------------------------------------------------------------


def test_quadratic_char_multiplicative():
    chi = GrossenChar.quadratic(F3, FqPoly(F3, (1, 0, 1)))
    f = FqPoly(F3, (2, 1))
    g = FqPoly(F3, (1, 1, 1))
    assert abs(chi.dirichlet_value(f * g)
               - chi.dirichlet_value(f) * chi.dirichlet_value(g)) < 1e-12


def test_parity():
    assert not GrossenChar.quadratic(F3, T_POLY).is_even       # degree 1
    assert GrossenChar.quadratic(F3, FqPoly(F3, (1, 0, 1))).is_even  # degree 2
    cubic = irreducibles_of_degree(F3, 3)[0]
    assert not GrossenChar.quadratic(F3, cubic).is_even        # degree 3


def test_char_product_xor_of_supports():
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, T_POLY * FqPoly(F3, (1, 1)))
    prod = chi1 * chi2
    assert prod.conductor == FqPoly(F3, (1, 1))  # the t components cancel
    assert (chi1 * chi1).is_trivial


def test_char_coefficients_against_brute_force():
    for m in [T_POLY, FqPoly(F3, (1, 0, 1)), irreducibles_of_degree(F3, 3)[1]]:
        chi = GrossenChar.quadratic(F3, m)
        M = chi.conductor.degree
        got = char_coefficients(chi, M - 1)
        want = [brute_char_coeff(chi, n) for n in range(M)]
        assert np.allclose(got, want, atol=1e-10)
        # the sums vanish from deg(conductor) on
        assert abs(brute_char_coeff(chi, M)) < 1e-10


# -- completed L ---------------------------------------------------------------


def test_trivial_char_L_is_zeta():
    # oracle: sum of (number of monic f of degree d) T^d = sum q^d T^d,
    # times the infinite factor 1/(1-T)
    L = char_L_complete(GrossenChar.trivial(F3))
    assert L.residual_vs(zeta_qrat(F3)) == 0
    taylor = L.taylor(6).real
    assert np.allclose(taylor, [sum(3 ** j for j in range(k + 1)) for k in range(6)])


def test_euler_product_matches_taylor():
    # truncated Euler product oracle vs the closed form, exact integers
    for field in (F3, F5):
        D = 6
        assert zeta_euler_coeffs_int(field, D) == zeta_closed_coeffs_int(field, D)


def test_quadratic_mod_irreducible_quadratic_summed_directly():
    # direct sum over the 1 + 3 monic polynomials of degree < 2: the finite
    # part is 1 - T (the trivial zero at T = 1); the even-character completed
    # L-function cancels it against the infinite Euler factor, leaving 1
    chi = GrossenChar.quadratic(F3, FqPoly(F3, (1, 0, 1)))
    coeffs = char_coefficients(chi, 1)
    assert np.allclose(coeffs, [1.0, -1.0])
    L = char_L_complete(chi)
    assert L.residual_vs(QRat.one(3.0)) < 1e-12


def test_quadratic_mod_cubic_rh_zeros():
    # odd character of conductor degree 3: two zeros, both on |T| = q^(-1/2)
    chi = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 3)[0])
    L = char_L_complete(chi)
    assert len(L.zeros) == 2
    for z in L.zeros:
        assert abs(abs(z) - 3 ** -0.5) < 1e-10


def test_completed_degree_bookkeeping():
    # number of zeros: deg(conductor) - 2 for even characters (trivial zero
    # cancelled by the infinite factor), deg(conductor) - 1 for odd ones
    squarefree = [f for d in (1, 2, 3) for f in monic_polys(F3, d)
                  if all(e == 1 for _, e in f.factor())]
    for m in squarefree:
        chi = GrossenChar.quadratic(F3, m)
        L = char_L_complete(chi)
        M = chi.conductor.degree
        want = (M - 2) if chi.is_even else (M - 1)
        assert len(L.zeros) == max(want, 0)


def test_char_fe_exact():
    for m in [T_POLY, FqPoly(F3, (1, 0, 1)), irreducibles_of_degree(F3, 3)[2]]:
        chi = GrossenChar.quadratic(F3, m)
        L = char_L_complete(chi)
        eps = char_global_eps(chi)
        Ld = char_L_complete(chi.inverse())
        assert L.residual_vs(eps * qr_dual(Ld)) < 1e-12


def test_local_components_consistency():
    chi = GrossenChar.quadratic(F3, T_POLY * FqPoly(F3, (1, 1)))
    # at an unramified prime the local component value equals the table value
    P = FqPoly(F3, (2, 1))
    comp = chi.local_component(Place(F3, P))
    assert comp.is_unramified
    assert abs(comp.alpha - chi.dirichlet_value(P)) < 1e-12
    # the ramified component inverts the Dirichlet table
    ram = chi.local_component(Place(F3, T_POLY))
    assert ram.cond == 1


def test_grossenchar_json_roundtrip():
    chi = GrossenChar.quadratic(F3, T_POLY * FqPoly(F3, (1, 1)))
    chi2 = GrossenChar.from_json(chi.to_json())
    assert chi2 == chi


# -- global pairs ----------------------------------------------------------------


def test_partial_L_trivial_pair():
    pair = GlobalPair(F3, GrossenChar.trivial(F3), GrossenChar.trivial(F3))
    coeffs = partial_L(pair, 6)
    # S = {infinity}: the finite-places product counts monic polynomials
    assert np.allclose(coeffs.real, [3 ** k for k in range(7)])
    assert abs(coeffs[0] - 1) < 1e-14


def test_partial_L_multiplicativity():
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, FqPoly(F3, (1, 0, 1)))
    pair = GlobalPair(F3, chi1, chi2)
    single = GlobalPair(F3, chi1 * chi2, GrossenChar.trivial(F3))
    # same unramified places outside the union of supports
    single.local_overrides = {}
    D = 5
    a = partial_L(pair, D)
    # recompute the single-char partial over the pair's (larger) ramified set
    b = np.zeros(D + 1, dtype=np.complex128)
    b[0] = 1
    S = set(pair.ramified_set)
    prod = (chi1 * chi2)
    for d in range(1, D + 1):
        for P in irreducibles_of_degree(F3, d):
            if Place(F3, P) in S:
                continue
            alpha = prod.euler_value(P)
            for k in range(d, D + 1):
                b[k] += alpha * b[k - d]
    assert np.allclose(a, b, atol=1e-10)


def test_rationality_partial_vs_closed_form():
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 3)[0])
    pair = GlobalPair(F3, chi1, chi2)
    D = 6
    series = partial_L(pair, D)
    LS = global_L(pair)
    for v in pair.ramified_set:
        LS = LS / local_pair_L(pair, v)
    assert np.max(np.abs(series - LS.taylor(D + 1))) < 1e-9


def test_verify_fe_completed_and_partial():
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, FqPoly(F3, (1, 0, 1)))
    rep = verify_fe(GlobalPair(F3, chi1, chi2))
    assert rep["pass"] and rep["form"] == "completed+partial"
    assert rep["completed_residual"] < 1e-9 and rep["partial_residual"] < 1e-9


def test_verify_fe_negative_control():
    # corrupt epsilon by an extra power of T: the residual must blow up
    chi = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 3)[0])
    L = char_L_complete(chi)
    eps_bad = char_global_eps(chi) * QRat.monomial(3.0, 1.0, 1)
    residual = L.residual_vs(eps_bad * qr_dual(char_L_complete(chi.inverse())))
    assert residual > 1e-2


def test_global_eps_is_monomial():
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 2)[0])
    eps = global_eps(GlobalPair(F3, chi1, chi2))
    ok, _, _ = eps.is_monomial()
    assert ok


def test_zeta_fe():
    pair = GlobalPair(F3, GrossenChar.trivial(F3), GrossenChar.trivial(F3))
    L = global_L(pair)
    eps = global_eps(pair)
    assert L.residual_vs(zeta_qrat(F3)) == 0
    ok, c, k = eps.is_monomial()
    assert ok and k == -2 and abs(c - 1 / 3) < 1e-12
    assert verify_fe(pair)["pass"]


# -- RH ---------------------------------------------------------------------------


def test_verify_rh_zeta_vacuous():
    rep = verify_rh(zeta_qrat(F3))
    assert rep["pass"] and rep["n_zeros"] == 0


def test_verify_rh_quadratic():
    chi = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 3)[0])
    rep = verify_rh(char_L_complete(chi))
    assert rep["pass"] and rep["n_zeros"] == 2
    for row in rep["zeros"]:
        assert abs(row["re_s"] - 0.5) < 1e-8


def test_verify_rh_product_is_union():
    chi1 = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 3)[0])
    chi2 = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 3)[1])
    L = char_L_complete(chi1) * char_L_complete(chi2)
    rep = verify_rh(L)
    assert rep["pass"] and rep["n_zeros"] == 4


def test_verify_rh_negative_control():
    bad = QRat.euler(3.0, 2.0, 1)  # zero at T = 1/2, off the circle
    rep = verify_rh(bad)
    assert not rep["pass"]


# -- self-dual types and isobaric sums ----------------------------------------------


def test_selfdual_type():
    assert selfdual_type(GrossenChar.trivial(F3)) == "Orthogonal"
    assert selfdual_type(GrossenChar.quadratic(F3, T_POLY)) == "Orthogonal"
    cubic = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 3)[0])
    assert selfdual_type(cubic) == "Orthogonal"
    non_sd = GrossenChar.from_gen_phases(
        F3, FqPoly(F3, (1, 0, 1)), {FqPoly(F3, (1, 0, 1)): [1 / 8]})
    with pytest.raises(NotSelfDual):
        selfdual_type(non_sd)


def test_isobaric_sum_validation():
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, FqPoly(F3, (1, 1)))
    chi3 = chi1 * chi2
    lift = isobaric_sum([chi1, chi2, chi3], GroupTag("Sp", 1))
    assert len(lift.constituents) == 3
    with pytest.raises(SizeMismatch):
        isobaric_sum([chi1, chi2, chi3], GroupTag("SO_odd", 2))  # N = 4
    with pytest.raises(DuplicateConstituent):
        isobaric_sum([chi1, chi1, chi2], GroupTag("Sp", 1))
    with pytest.raises(TypeMismatch):
        isobaric_sum([chi1, chi2], GroupTag("SO_odd", 1))  # needs symplectic type


def test_isobaric_pair_completed_fe():
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, FqPoly(F3, (1, 1)))
    chi3 = chi1 * chi2
    lift = isobaric_sum([chi1, chi2, chi3], GroupTag("Sp", 1))
    tau = GrossenChar.quadratic(F3, FqPoly(F3, (2, 1)))
    pair = GlobalPair(F3, tau, lift)
    L = global_L(pair)
    # product over constituents
    want = (char_L_complete(tau * chi1) * char_L_complete(tau * chi2)
            * char_L_complete(tau * chi3))
    assert L.residual_vs(want) < 1e-10
    rep = verify_fe(pair)
    assert rep["pass"] and rep["form"] == "completed+partial"
    assert verify_rh(L)["pass"]


def test_isobaric_instance_with_formal_override():
    pair = isobaric_instance(F3)
    rep = verify_fe(pair)
    assert rep["form"] == "partial"       # formal data: partial form only
    assert rep["pass"]
    assert rep["partial_residual"] < 1e-9


def test_not_closed_form():
    pair = isobaric_instance(F3)
    v0 = next(iter(pair.local_overrides))
    formal = pair.local_overrides[v0]
    pair.local_overrides[v0] = FormalLeaf(
        formal.name, formal.tag, formal.place, formal.central_char, {}, None)
    with pytest.raises(NotClosedForm):
        global_L(pair)


def test_local_tree_gamma_matches_product_char():
    # the repsys gamma of the local pair trees equals the abelian gamma of the
    # product character at every ramified place
    from lfunc.tate import tate_gamma
    chi1 = GrossenChar.quadratic(F3, T_POLY)
    chi2 = GrossenChar.quadratic(F3, irreducibles_of_degree(F3, 2)[0])
    pair = GlobalPair(F3, chi1, chi2)
    prod = chi1 * chi2
    for v in pair.ramified_set:
        g1 = gamma(pair.local_tree(pair.tau, v), pair.local_tree(pair.pi, v),
                   pair.psi_at(v))
        g2 = tate_gamma(prod.local_component(v), global_psi(v))
        assert g1.residual_vs(g2) < 1e-10
