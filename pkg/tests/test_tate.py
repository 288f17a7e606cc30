"""Local characters, Gauss sums, and the abelian L/eps/gamma factors."""

import math

import numpy as np
import pytest

from lfunc.errors import PlaceMismatch, PreconditionFailed
from lfunc.ffbase import FqPoly, Place, infinite_place, make_field
from lfunc.qseries import QRat, qr_dual
from lfunc.tate import (AddChar, MultChar, abelian_triple, enumerate_unit_chars,
                        gauss_sum, local_ring, std_psi, tate_L, tate_eps,
                        tate_gamma)

F3 = make_field(3, 1)
PT = Place(F3, FqPoly(F3, (0, 1)))
PSI = std_psi(PT)


def quadratic_char(place, alpha=1.0):
    field = place.field
    ring = local_ring(place, 1)
    tab = np.zeros(ring.size, dtype=np.complex128)
    half = (field.q ** place.deg - 1) // 2
    one = FqPoly(field, (1,))
    for c in ring.unit_codes:
        tab[int(c)] = 1.0 if ring.decode(int(c)).powmod(half, ring.pi) == one else -1.0
    return MultChar(place, alpha, 1, tab)


def test_std_psi_level_zero():
    assert PSI.level == 0
    # twisting by a unit keeps the level
    assert PSI.twisted(FqPoly(F3, (2,)), 0).level == 0
    assert PSI.twisted(FqPoly(F3, (1, 1)), 2).level == 2


def test_tate_L_shapes():
    assert tate_L(MultChar.unramified(PT, 1.0)).residual_vs(
        QRat.inv_euler(3.0, 1.0, 1)) == 0
    assert tate_L(quadratic_char(PT)).residual_vs(QRat.one(3.0)) == 0
    # unramified alpha=-1 at a degree-2 place: 1/(1+T^2)
    P2 = Place(F3, FqPoly(F3, (1, 0, 1)))
    L = tate_L(MultChar.unramified(P2, -1.0))
    assert np.allclose(L.den.coeffs, [1, 0, 1])


def test_gauss_sum_spec_value():
    # oracle: chi(1) w + chi(2) w^2 with w = e^(2 pi i/3) equals i sqrt(3)
    w = np.exp(2j * np.pi / 3)
    brute = 1.0 * w + (-1.0) * w ** 2
    assert abs(brute - 1j * math.sqrt(3)) < 1e-14
    assert abs(gauss_sum(quadratic_char(PT), PSI) - brute) < 1e-12


def test_gauss_sum_preconditions():
    with pytest.raises(PreconditionFailed):
        gauss_sum(MultChar.unramified(PT, 1.0), PSI)
    P2 = Place(F3, FqPoly(F3, (1, 0, 1)))
    with pytest.raises(PlaceMismatch):
        gauss_sum(quadratic_char(PT), std_psi(P2))


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (7, 1)])
def test_gauss_magnitude_exhaustive(p, f):
    # |G(chi, psi)| = q_v^(a/2) for every primitive chi, a <= 2
    field = make_field(p, f)
    place = Place(field, FqPoly(field, (0, 1)))
    psi = std_psi(place)
    q_v = place.q_v
    for a in (1, 2):
        if q_v ** (2 * a) > 10 ** 6:
            continue
        for chi in enumerate_unit_chars(place, a):
            if chi.cond != a:
                continue
            g = gauss_sum(chi, psi)
            assert abs(abs(g) - q_v ** (a / 2)) < 1e-10


def test_eps_unramified_conventions():
    chi = MultChar.unramified(PT, 0.6 + 0.8j)
    assert tate_eps(chi, PSI).residual_vs(QRat.one(3.0)) < 1e-14
    # psi of level n: eps = alpha^n (q_v^(1/2) T)^n
    psi1 = PSI.twisted(FqPoly(F3, (1,)), 1)
    e = tate_eps(chi, psi1)
    ok, c, k = e.is_monomial()
    assert ok and k == 1
    assert abs(c - chi.alpha * 3 ** 0.5) < 1e-12


def test_eps_unitary_modulus_at_center():
    # |eps(1/2)| = 1 for unitary chi (from |G| = q_v^(a/2))
    t_half = 3 ** -0.5
    for chi in enumerate_unit_chars(PT, 2, alpha=np.exp(0.7j)):
        if chi.cond == 0:
            continue
        e = tate_eps(chi, PSI)
        assert abs(abs(e(t_half)) - 1) < 1e-10


def test_eps_psi_twist_scaling():
    # psi -> psi^a with val(a) = 1, unramified unitary chi:
    # eps gains chi(pi) |a|^(s - 1/2) = chi(pi) * q^(1/2) T  (property (v) at h=l=1)
    chi = MultChar.unramified(PT, np.exp(1.3j))
    e0 = tate_eps(chi, PSI)
    e1 = tate_eps(chi, PSI.twisted(FqPoly(F3, (1,)), 1))
    gain = e1 / e0
    ok, c, k = gain.is_monomial()
    assert ok and k == 1
    assert abs(c - chi.alpha * 3 ** 0.5) < 1e-12


def test_gamma_ramified_is_eps():
    chi = quadratic_char(PT)
    assert tate_gamma(chi, PSI).residual_vs(tate_eps(chi, PSI)) == 0


def test_gamma_of_product_of_unramified():
    rng = np.random.default_rng(2)
    for _ in range(20):
        a = np.exp(2j * np.pi * rng.random())
        b = np.exp(2j * np.pi * rng.random())
        c1, c2 = MultChar.unramified(PT, a), MultChar.unramified(PT, b)
        g = tate_gamma(c1 * c2, PSI)
        want = tate_eps(c1 * c2, PSI) * qr_dual(tate_L((c1 * c2).inverse())) / tate_L(c1 * c2)
        assert g.residual_vs(want) < 1e-12


@pytest.mark.parametrize("p,f", [(3, 1), (5, 1), (2, 2)])
def test_local_functional_equation_many(p, f):
    # gamma(s,chi,psi) gamma(1-s,chi^(-1),conj psi) = 1 (ramified and not)
    field = make_field(p, f)
    place = Place(field, FqPoly(field, (0, 1)))
    psi = std_psi(place)
    rng = np.random.default_rng(7)
    chars = list(enumerate_unit_chars(place, 2 if field.q ** 4 <= 10 ** 6 else 1))
    for chi in chars:
        chi = MultChar(chi.place, np.exp(2j * np.pi * rng.random()), chi.cond,
                       chi.table)
        g1 = tate_gamma(chi, psi)
        g2 = tate_gamma(chi.inverse(), psi.conjugate())
        prod = g1 * qr_dual(g2)
        assert prod.residual_vs(QRat.one(float(field.q))) < 1e-10


def test_psi_dependence_rank_one():
    # gamma(s, chi, psi^a) = chi(a) |a|^(s-1/2) gamma(s, chi, psi)
    rng = np.random.default_rng(3)
    q = 3.0
    for chi in [MultChar.unramified(PT, np.exp(0.9j)), quadratic_char(PT)]:
        for val in (-1, 0, 1, 2):
            unit = FqPoly(F3, (2,))
            psi_a = PSI.twisted(unit, val)
            lhs = tate_gamma(chi, psi_a)
            scale = QRat.monomial(q, chi.value(unit, val) * 3.0 ** (val / 2), val)
            rhs = tate_gamma(chi, PSI) * scale
            assert lhs.residual_vs(rhs) < 1e-10


def test_infinite_place_characters():
    inf = infinite_place(F3)
    chi = quadratic_char(inf)
    psi_inf = std_psi(inf).twisted(FqPoly(F3, (2,)), -2)
    g1 = tate_gamma(chi, psi_inf)
    g2 = tate_gamma(chi.inverse(), psi_inf.conjugate())
    assert (g1 * qr_dual(g2)).residual_vs(QRat.one(3.0)) < 1e-10


def test_abelian_triple_invariant():
    for chi in (MultChar.unramified(PT, np.exp(0.4j)), quadratic_char(PT)):
        t = abelian_triple(chi, PSI)
        want = t.eps * qr_dual(tate_L(chi.inverse())) / t.L
        assert t.gamma.residual_vs(want) < 1e-12


def test_char_product_and_primitivize():
    eta = quadratic_char(PT)
    prod = eta * eta
    assert prod.cond == 0 and abs(prod.alpha - 1) < 1e-12
    u = MultChar.unramified(PT, 2.0)
    mixed = eta * u
    assert mixed.cond == 1 and abs(mixed.alpha - 2.0) < 1e-12


def test_char_enumeration_counts():
    # characters of (O/P^a)^* for P = (t) over F_3: group orders 2 and 18
    assert sum(1 for _ in enumerate_unit_chars(PT, 1)) == 2
    assert sum(1 for _ in enumerate_unit_chars(PT, 3)) == 18
    conds = [c.cond for c in enumerate_unit_chars(PT, 3)]
    assert sorted(set(conds)) == [0, 1, 2, 3]


def test_higher_conductor_size_guard():
    from lfunc.errors import SizeLimitExceeded
    F = make_field(7, 1)
    P = Place(F, FqPoly(F, (0, 1)))
    with pytest.raises(SizeLimitExceeded):
        local_ring(P, 8)  # 7^8 > 10^6
