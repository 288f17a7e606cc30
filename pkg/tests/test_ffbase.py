"""Finite fields, polynomials, irreducible enumeration, places."""

import numpy as np
import pytest

from lfunc.errors import NotPrime, SizeLimitExceeded
from lfunc.ffbase import (FqPoly, Place, infinite_place, irreducible_count,
                          irreducibles_of_degree, make_field,
                          monic_irreducibles, monic_polys, places)


def brute_force_irreducible(field, poly):
    """Oracle: no monic divisor of degree 1..deg-1 (full enumeration)."""
    for d in range(1, poly.degree):
        for g in monic_polys(field, d):
            if (poly % g).is_zero:
                return False
    return poly.degree >= 1


def test_make_field_prime():
    F3 = make_field(3, 1)
    assert F3.q == 3
    assert F3.generator == 2  # spec example: F_3 has generator 2


def test_make_field_f4_modulus_by_enumeration():
    # oracle: of the 4 monic quadratics over F_2, only x^2+x+1 is irreducible
    F2 = make_field(2, 1)
    irr = [p for p in monic_polys(F2, 2) if brute_force_irreducible(F2, p)]
    assert [p.coeffs for p in irr] == [(1, 1, 1)]
    F4 = make_field(2, 2)
    assert F4.modulus == (1, 1, 1)


def test_make_field_not_prime():
    with pytest.raises(NotPrime):
        make_field(4, 1)


def test_field_arithmetic_exhaustive_small():
    # a^(q-1) = 1 for all nonzero a, exhaustively for q <= 81
    for p, f in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 4),
                 (2, 6), (3, 4), (9 and 3, 3)]:
        F = make_field(p, f)
        if F.q > 81:
            continue
        for a in range(1, F.q):
            assert F.pow(a, F.q - 1) == 1
        # distributivity spot checks
        for a in range(min(F.q, 8)):
            for b in range(min(F.q, 8)):
                assert F.mul(a, F.add(b, 1)) == F.add(F.mul(a, b), F.mul(a, 1))


def test_monic_irreducibles_f2():
    F2 = make_field(2, 1)
    irr = monic_irreducibles(F2, 2)
    assert [repr(p) for p in irr] == ["t", "t + 1", "t^2 + t + 1"]


def test_monic_irreducibles_f3_degree2_count():
    # oracle: enumerate the 9 monic quadratics, discard those with a root
    F3 = make_field(3, 1)
    by_roots = [p for p in monic_polys(F3, 2)
                if all(p.evaluate(a) != 0 for a in range(3))]
    assert len(by_roots) == 3
    assert len(irreducibles_of_degree(F3, 2)) == 3


def test_degree_one_count_is_q():
    for p, f in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        F = make_field(p, f)
        assert len(irreducibles_of_degree(F, 1)) == F.q


@pytest.mark.parametrize("p,f,dmax", [(2, 1, 8), (3, 1, 6), (2, 2, 5), (5, 1, 5)])
def test_necklace_identity(p, f, dmax):
    # sum over d | n of d * N_d = q^n, with N_d from actual enumeration
    F = make_field(p, f)
    counts = {d: len(irreducibles_of_degree(F, d)) for d in range(1, dmax + 1)}
    for n in range(1, dmax + 1):
        total = sum(d * counts[d] for d in range(1, n + 1) if n % d == 0)
        assert total == F.q ** n
        assert counts[n] == irreducible_count(F, n)


def test_enumeration_agrees_with_oracle():
    F3 = make_field(3, 1)
    got = set(p.coeffs for p in irreducibles_of_degree(F3, 3))
    want = set(p.coeffs for p in monic_polys(F3, 3) if brute_force_irreducible(F3, p))
    assert got == want


def test_factorization_oracle():
    rng = np.random.default_rng(5)
    F = make_field(3, 1)
    for _ in range(25):
        deg = int(rng.integers(1, 7))
        coeffs = [int(rng.integers(0, 3)) for _ in range(deg)] + [1]
        f = FqPoly(F, coeffs)
        prod = FqPoly(F, (1,))
        for g, e in f.factor():
            assert g.is_irreducible()
            prod = prod * g ** e
        assert prod == f.monic()


def test_places():
    F2 = make_field(2, 1)
    ps = places(F2, 1)
    assert ps[0].is_infinite and ps[0].deg == 1
    assert [repr(p.poly) for p in ps[1:]] == ["t", "t + 1"]
    F3 = make_field(3, 1)
    assert len(places(F3, 2)) == 1 + 3 + 3
    for v in places(F3, 2):
        assert v.q_v == F3.q ** v.deg


def test_infinite_place_properties():
    F = make_field(5, 1)
    inf = infinite_place(F)
    assert inf.deg == 1 and inf.q_v == 5 and inf.poly is None


def test_size_guards():
    with pytest.raises(SizeLimitExceeded):
        make_field(2, 17)  # q > 2^16
    F2 = make_field(2, 1)
    with pytest.raises(SizeLimitExceeded):
        monic_irreducibles(F2, 13)  # d_max > 12


def test_poly_arithmetic_roundtrip():
    F = make_field(2, 2)
    a = FqPoly(F, (1, 2, 3))
    b = FqPoly(F, (2, 1))
    q, r = divmod(a, b)
    assert q * b + r == a
    g, u, v = a.xgcd(b)
    assert u * a + v * b == g


def test_inverse_mod():
    F = make_field(3, 1)
    m = FqPoly(F, (1, 0, 1)) ** 2  # (t^2+1)^2
    x = FqPoly(F, (2, 1))
    xi = x.inverse_mod(m)
    assert (x * xi) % m == FqPoly(F, (1,))
