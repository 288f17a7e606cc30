"""Rational functions in T = q^(-s): the carrier of every L-, gamma- and
epsilon-factor.

A QRat is kept in the factored normal form

    c * T^tpow * prod_i (1 - T/zero_i) / prod_j (1 - T/pole_j)

with all zeros/poles nonzero.  Products and quotients then cancel matching
zero/pole pairs by nearest-distance greedy pairing (tolerance CANCEL_TOL), so
epsilon-factors come out as exact monomials and functional-equation products
collapse to constants up to rounding.  Monomial T-powers are integers, never
floats.  Coefficient arrays (numerator/denominator polynomials, normalized to
denominator(0) = 1) are expanded on demand.

The substitutions are:
  qr_shift(f, s0): T -> q^(-s0) * T        (realizes s -> s + s0)
  qr_dual(f):      T -> 1/(q*T)            (realizes s -> 1 - s)
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import BaseMismatch, DidNotConverge, DivByZeroFunction

CANCEL_TOL = 1e-8
TRIM_TOL = 1e-12


class QPoly:
    """Polynomial in T with complex coefficients, trailing zeros trimmed."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: float, coeffs: Sequence[complex]):
        arr = np.asarray(coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            arr = np.array([0j])
        n = arr.size
        scale = float(np.max(np.abs(arr))) or 1.0
        while n > 1 and abs(arr[n - 1]) <= TRIM_TOL * scale:
            n -= 1
        self.q = float(q)
        self.coeffs = np.array(arr[:n])

    @property
    def degree(self) -> int:
        if self.coeffs.size == 1 and self.coeffs[0] == 0:
            return -1
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == -1

    def __call__(self, t: complex) -> complex:
        acc = 0j
        for c in self.coeffs[::-1]:
            acc = acc * t + c
        return acc

    def __mul__(self, other: "QPoly") -> "QPoly":
        _check_base(self.q, other.q)
        return QPoly(self.q, np.convolve(self.coeffs, other.coeffs))

    def __add__(self, other: "QPoly") -> "QPoly":
        _check_base(self.q, other.q)
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=np.complex128)
        a[: self.coeffs.size] = self.coeffs
        a[: other.coeffs.size] += other.coeffs
        return QPoly(self.q, a)

    def norm(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def to_json(self) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    def __repr__(self):
        return f"QPoly(q={self.q}, {np.round(self.coeffs, 6)})"


def _check_base(q1: float, q2: float) -> None:
    if abs(q1 - q2) > 1e-9:
        raise BaseMismatch(f"base mismatch: {q1} vs {q2}")


def qr_roots(p: QPoly, tol: float = 1e-8) -> list[complex]:
    """All complex roots of p with multiplicity.

    Companion-matrix eigenvalues, then per-cluster refinement: an isolated
    root gets a guarded Newton polish; a cluster of m nearby roots is a
    multiple-root candidate whose centroid is polished as a simple zero of
    the (m-1)-th derivative (accepted only if its residual beats the raw
    members', so genuinely distinct close roots are left alone).  The refined
    set is kept only when it reconstructs the coefficients at least as well
    as the raw eigenvalues, which preserves backward stability.  Raises
    DidNotConverge if any residual exceeds tol * max|coeff|.
    """
    if p.degree < 1:
        return []
    coeffs = p.coeffs
    raw = [complex(r) for r in np.roots(coeffs[::-1])]
    refined: list[complex] = []
    for cluster in _transitive_clusters(raw):
        m = len(cluster)
        if m == 1:
            refined.append(_newton_monotone(coeffs, cluster[0]))
            continue
        centroid = sum(cluster) / m
        dk = coeffs
        for _ in range(m - 1):
            dk = _poly_deriv(dk)
        centroid = _newton_monotone(dk, centroid, iters=8)
        res_members = max(abs(_poly_eval(coeffs, r)) for r in cluster)
        if abs(_poly_eval(coeffs, centroid)) <= max(4.0 * res_members,
                                                    1e-13 * p.norm()):
            refined.extend([centroid] * m)
        else:
            refined.extend(cluster)
    out = refined if (_recon_error(coeffs, refined)
                      <= 4.0 * _recon_error(coeffs, raw)) else raw
    scale = p.norm()
    bad = [(r, abs(p(r))) for r in out if abs(p(r)) > tol * scale]
    if bad:
        raise DidNotConverge(f"root residuals too large: {bad}")
    return out


def _transitive_clusters(roots: list[complex],
                         ctol: float = 1e-3) -> list[list[complex]]:
    """Group roots transitively: r joins a cluster if it lies within the
    (relative) tolerance of any member."""
    clusters: list[list[complex]] = []
    for r in roots:
        home = None
        for cl in clusters:
            if any(abs(r - x) <= ctol * max(1.0, abs(x)) for x in cl):
                home = cl
                break
        if home is None:
            clusters.append([r])
        else:
            home.append(r)
    return clusters


def _recon_error(coeffs: np.ndarray, roots: list[complex]) -> float:
    recon = np.array([coeffs[-1]], dtype=np.complex128)
    for r in roots:
        recon = np.convolve(recon, np.array([-r, 1.0]))  # low-to-high
    n = max(recon.size, coeffs.size)
    a = np.zeros(n, dtype=np.complex128)
    b = np.zeros(n, dtype=np.complex128)
    a[: recon.size] = recon
    b[: coeffs.size] = coeffs
    return float(np.max(np.abs(a - b)))


def _poly_eval(coeffs: np.ndarray, t: complex) -> complex:
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * t + c
    return acc


def _poly_deriv(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.size <= 1:
        return np.array([0j])
    return coeffs[1:] * np.arange(1, coeffs.size)


def _newton_monotone(coeffs: np.ndarray, r: complex, iters: int = 3) -> complex:
    """Newton steps accepted only while |p| decreases (noise-safe near
    multiple roots, where the raw step divides rounding noise by ~0)."""
    dcoeffs = _poly_deriv(coeffs)
    val = abs(_poly_eval(coeffs, r))
    for _ in range(iters):
        d = _poly_eval(dcoeffs, r)
        if d == 0:
            break
        r_new = r - _poly_eval(coeffs, r) / d
        val_new = abs(_poly_eval(coeffs, r_new))
        if val_new >= val:
            break
        r, val = r_new, val_new
    return r


def _nth_roots(w: complex, n: int) -> list[complex]:
    """The n solutions of z^n = w, analytically (deterministic order)."""
    r = abs(w) ** (1.0 / n)
    theta = cmath.phase(w) / n
    return [r * cmath.exp(1j * (theta + 2 * math.pi * k / n)) for k in range(n)]


class QRat:
    """Rational function in T = q^(-s), factored normal form (see module doc)."""

    __slots__ = ("q", "c", "tpow", "zeros", "poles")

    def __init__(self, q: float, c: complex = 1.0, tpow: int = 0,
                 zeros: Iterable[complex] = (), poles: Iterable[complex] = ()):
        self.q = float(q)
        self.c = complex(c)
        self.tpow = int(tpow)
        self.zeros = tuple(complex(z) for z in zeros)
        self.poles = tuple(complex(z) for z in poles)
        if self.c == 0:
            self.tpow = 0
            self.zeros = ()
            self.poles = ()

    # -- constructors ------------------------------------------------------

    @staticmethod
    def one(q: float) -> "QRat":
        return QRat(q)

    @staticmethod
    def zero(q: float) -> "QRat":
        return QRat(q, 0.0)

    @staticmethod
    def const(q: float, c: complex) -> "QRat":
        return QRat(q, c)

    @staticmethod
    def monomial(q: float, c: complex, k: int) -> "QRat":
        return QRat(q, c, k)

    @staticmethod
    def inv_euler(q: float, alpha: complex, d: int) -> "QRat":
        """1/(1 - alpha * T^d): the local L-factor building block."""
        if alpha == 0:
            return QRat.one(q)
        return QRat(q, 1.0, 0, (), _nth_roots(1.0 / alpha, d))

    @staticmethod
    def euler(q: float, alpha: complex, d: int) -> "QRat":
        """(1 - alpha * T^d)."""
        if alpha == 0:
            return QRat.one(q)
        return QRat(q, 1.0, 0, _nth_roots(1.0 / alpha, d), ())

    @staticmethod
    def from_coeffs(q: float, num: Sequence[complex], den: Sequence[complex] = (1,),
                    tpow: int = 0) -> "QRat":
        """Build from coefficient arrays; factors both polynomials."""
        np_, dp_ = QPoly(q, num), QPoly(q, den)
        if dp_.is_zero:
            raise DivByZeroFunction("denominator is the zero polynomial")
        if np_.is_zero:
            return QRat.zero(q)
        nshift, nroots, nc = _factor_poly(np_)
        dshift, droots, dc = _factor_poly(dp_)
        out = QRat(q, nc / dc, tpow + nshift - dshift, nroots, droots)
        return out._cancelled()

    # -- views -------------------------------------------------------------

    @property
    def num(self) -> QPoly:
        """Numerator polynomial c * prod (1 - T/z); num(0) = c.  Excludes T^tpow."""
        return QPoly(self.q, self.c * _poly_from_inv_roots(self.zeros))

    @property
    def den(self) -> QPoly:
        """Denominator polynomial prod (1 - T/p), normalized so den(0) = 1."""
        return QPoly(self.q, _poly_from_inv_roots(self.poles))

    @property
    def is_zero(self) -> bool:
        return self.c == 0

    def __call__(self, t: complex) -> complex:
        val = self.c * t ** self.tpow
        for z in self.zeros:
            val *= 1 - t / z
        for p in self.poles:
            val /= 1 - t / p
        return val

    # -- arithmetic ---------------------------------------------------------

    def _cancelled(self) -> "QRat":
        if not self.zeros or not self.poles:
            return self
        zs, ps = _cancel_pairs(self.zeros, self.poles)
        if len(zs) == len(self.zeros):
            return self
        return QRat(self.q, self.c, self.tpow, zs, ps)

    def __mul__(self, other: "QRat") -> "QRat":
        _check_base(self.q, other.q)
        out = QRat(self.q, self.c * other.c, self.tpow + other.tpow,
                   self.zeros + other.zeros, self.poles + other.poles)
        return out._cancelled()

    def inverse(self) -> "QRat":
        if self.is_zero:
            raise DivByZeroFunction("inverse of the zero function")
        return QRat(self.q, 1.0 / self.c, -self.tpow, self.poles, self.zeros)

    def __truediv__(self, other: "QRat") -> "QRat":
        return self * other.inverse()

    def __add__(self, other: "QRat") -> "QRat":
        _check_base(self.q, other.q)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        t0 = min(self.tpow, other.tpow)
        a = np.convolve(self.num.coeffs, other.den.coeffs)
        b = np.convolve(other.num.coeffs, self.den.coeffs)
        a = _tshift(a, self.tpow - t0)
        b = _tshift(b, other.tpow - t0)
        n = max(a.size, b.size)
        num = np.zeros(n, dtype=np.complex128)
        num[: a.size] = a
        num[: b.size] += b
        scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
        if float(np.max(np.abs(num))) <= 1e-12 * scale:
            return QRat.zero(self.q)
        den = np.convolve(self.den.coeffs, other.den.coeffs)
        return QRat.from_coeffs(self.q, num, den, t0)

    def __neg__(self) -> "QRat":
        return QRat(self.q, -self.c, self.tpow, self.zeros, self.poles)

    def __sub__(self, other: "QRat") -> "QRat":
        return self + (-other)

    def shift(self, s0: complex) -> "QRat":
        """T -> q^(-s0) T, i.e. the factor for s -> s + s0."""
        if s0 == 0:
            return self
        w = complex(self.q) ** (-s0)
        return QRat(self.q, self.c * w ** self.tpow, self.tpow,
                    (z / w for z in self.zeros), (p / w for p in self.poles))

    def dual(self) -> "QRat":
        """T -> 1/(qT), i.e. s -> 1 - s; exact involution on the normal form."""
        if self.is_zero:
            return self
        q = self.q
        c = self.c * q ** float(-self.tpow)
        for z in self.zeros:
            c *= -1.0 / (q * z)
        for p in self.poles:
            c *= -(q * p)
        tpow = -self.tpow - len(self.zeros) + len(self.poles)
        return QRat(q, c, tpow,
                    (1.0 / (q * z) for z in self.zeros),
                    (1.0 / (q * p) for p in self.poles))

    # -- predicates / reports -------------------------------------------------

    def is_monomial(self, tol: float = 1e-9) -> tuple[bool, complex, int]:
        """(True, coefficient, exponent) iff the function is c * T^k."""
        if not self.zeros and not self.poles:
            return True, self.c, self.tpow
        return False, 0j, 0

    def residual_vs(self, other: "QRat") -> float:
        """Max coefficientwise deviation between the two normal forms, relative
        to the largest coefficient magnitude (floored at 1).

        Both sides are in lowest terms with den(0) = 1, so equality of the
        functions means equality of (tpow, num, den) up to rounding.
        """
        _check_base(self.q, other.q)
        if self.tpow != other.tpow:
            # fold the T-power difference into the numerator before comparing
            k = self.tpow - other.tpow
            if k > 0:
                a_num = _tshift(self.num.coeffs, k)
                b_num = other.num.coeffs
            else:
                a_num = self.num.coeffs
                b_num = _tshift(other.num.coeffs, -k)
        else:
            a_num, b_num = self.num.coeffs, other.num.coeffs
        scale = max(1.0, float(np.max(np.abs(a_num))), float(np.max(np.abs(b_num))))
        r = _coeff_dev(a_num, b_num) / scale
        a_den, b_den = self.den.coeffs, other.den.coeffs
        dscale = max(1.0, float(np.max(np.abs(a_den))), float(np.max(np.abs(b_den))))
        r = max(r, _coeff_dev(a_den, b_den) / dscale)
        return r

    def taylor(self, n_terms: int) -> np.ndarray:
        """Coefficients of the power-series expansion at T = 0 (tpow must be >= 0)."""
        if self.is_zero:
            return np.zeros(n_terms, dtype=np.complex128)
        if self.tpow < 0:
            raise DivByZeroFunction("Taylor expansion of a function with a pole at T = 0")
        num = self.num.coeffs
        den = self.den.coeffs
        out = np.zeros(n_terms, dtype=np.complex128)
        for k in range(n_terms):
            acc = num[k] if k < num.size else 0j
            for j in range(1, min(k, den.size - 1) + 1):
                acc -= den[j] * out[k - j]
            out[k] = acc  # den[0] == 1
        return _tshift(out, self.tpow)[:n_terms]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "tpow": self.tpow,
            "num": self.num.to_json(),
            "den": self.den.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> "QRat":
        num = [complex(re, im) for re, im in obj["num"]]
        den = [complex(re, im) for re, im in obj["den"]]
        return QRat.from_coeffs(obj["q"], num, den, int(obj.get("tpow", 0)))

    def __repr__(self):
        return (f"QRat(q={self.q}, c={self.c:.6g}, tpow={self.tpow}, "
                f"zeros={len(self.zeros)}, poles={len(self.poles)})")


def _tshift(arr: np.ndarray, k: int) -> np.ndarray:
    if k == 0:
        return arr
    out = np.zeros(arr.size + k, dtype=np.complex128)
    out[k:] = arr
    return out


def _coeff_dev(a: np.ndarray, b: np.ndarray) -> float:
    n = max(a.size, b.size)
    x = np.zeros(n, dtype=np.complex128)
    y = np.zeros(n, dtype=np.complex128)
    x[: a.size] = a
    y[: b.size] = b
    return float(np.max(np.abs(x - y)))


def _poly_from_inv_roots(roots: Sequence[complex]) -> np.ndarray:
    """Coefficients of prod (1 - T/r)."""
    acc = np.array([1.0 + 0j])
    for r in roots:
        acc = np.convolve(acc, np.array([1.0, -1.0 / r]))
    return acc


def _factor_poly(p: QPoly) -> tuple[int, list[complex], complex]:
    """p = c * T^shift * prod(1 - T/r): returns (shift, roots, c)."""
    coeffs = p.coeffs
    scale = p.norm()
    shift = 0
    while shift < coeffs.size - 1 and abs(coeffs[shift]) <= 1e-10 * scale:
        shift += 1
    coeffs = coeffs[shift:]
    c = coeffs[0]
    if coeffs.size == 1:
        return shift, [], c
    roots = qr_roots(QPoly(p.q, coeffs), tol=1e-6)
    return shift, roots, c


def _cancel_pairs(zeros: Sequence[complex],
                  poles: Sequence[complex]) -> tuple[tuple, tuple]:
    """Greedy nearest-distance matching of zeros against poles within CANCEL_TOL."""
    zs = list(zeros)
    ps = list(poles)
    pairs = []
    for i, z in enumerate(zs):
        best, best_d = -1, math.inf
        for j, p in enumerate(ps):
            if p is None:
                continue
            d = abs(z - p)
            if d < best_d:
                best, best_d = j, d
        if best >= 0 and best_d <= CANCEL_TOL * max(1.0, abs(z)):
            pairs.append(i)
            ps[best] = None
    if not pairs:
        return tuple(zeros), tuple(poles)
    keep_z = tuple(z for i, z in enumerate(zs) if i not in set(pairs))
    keep_p = tuple(p for p in ps if p is not None)
    return keep_z, keep_p


# -- functional wrappers matching the operation names ------------------------

def qr_mul(a: QRat, b: QRat) -> QRat:
    return a * b


def qr_div(a: QRat, b: QRat) -> QRat:
    return a / b


def qr_add(a: QRat, b: QRat) -> QRat:
    return a + b


def qr_shift(f: QRat, s0: complex) -> QRat:
    return f.shift(s0)


def qr_dual(f: QRat) -> QRat:
    return f.dual()


def qr_prod(factors: Iterable[QRat], q: Optional[float] = None) -> QRat:
    """Product of many factors: one concatenation, one cancellation pass."""
    factors = list(factors)
    if not factors:
        if q is None:
            raise ValueError("empty product needs an explicit base q")
        return QRat.one(q)
    q0 = factors[0].q
    c = 1.0 + 0j
    tpow = 0
    zeros: list[complex] = []
    poles: list[complex] = []
    for f in factors:
        _check_base(q0, f.q)
        if f.is_zero:
            return QRat.zero(q0)
        c *= f.c
        tpow += f.tpow
        zeros.extend(f.zeros)
        poles.extend(f.poles)
    return QRat(q0, c, tpow, zeros, poles)._cancelled()


def is_monomial(f: QRat, tol: float = 1e-9) -> tuple[bool, complex, int]:
    return f.is_monomial(tol)
