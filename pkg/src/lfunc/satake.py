"""Satake classes of unramified representations and their L/gamma factors.

The dual-group dictionary for the split classical groups:

    group        dual (acting on)    GL size N
    SO_{2n+1}    Sp_{2n}(C)          2n
    SO_{2n}      SO_{2n}(C)          2n
    Sp_{2n}      SO_{2n+1}(C)        2n+1
    GL_n         GL_n(C)             n

A Satake class is stored as the eigenvalue multiset of the semisimple
conjugacy class inside GL_N(C); the embedding acts as the identity on
eigenvalue multisets, which is all the determinant formula

    L(s, tau x pi) = 1 / det(I - A ⊗ B q_v^{-s})

consumes.  Classical classes are closed under inversion; a symplectic-group
class carries the forced eigenvalue 1 with odd multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PlaceMismatch, RamifiedInput, RankMismatch, WrongTag
from .ffbase import Place
from .qseries import QRat, qr_prod
from .tate import AddChar, MultChar, tate_gamma

FAMILIES = ("SO_odd", "SO_even", "Sp", "GL")
STRUCT_TOL = 1e-8


@dataclass(frozen=True)
class GroupTag:
    """A split classical group or general linear group of given rank."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise WrongTag(f"unknown family {self.family!r}")
        if self.family == "GL":
            if self.rank < 1:
                raise WrongTag("GL rank must be >= 1")
        elif self.rank < 0:
            raise WrongTag("classical rank must be >= 0")

    @property
    def is_classical(self) -> bool:
        return self.family != "GL"

    @property
    def gl_size(self) -> int:
        """N from the dual-group table."""
        if self.family == "GL":
            return self.rank
        if self.family == "Sp":
            return 2 * self.rank + 1
        return 2 * self.rank

    def to_json(self) -> dict:
        return {"family": self.family, "rank": self.rank}

    @staticmethod
    def from_json(obj: dict) -> "GroupTag":
        return GroupTag(obj["family"], int(obj["rank"]))


@dataclass(frozen=True)
class SatakeClass:
    """Group-tagged eigenvalue multiset of an unramified Satake parameter."""

    tag: GroupTag
    eigs: tuple[complex, ...]

    def __post_init__(self):
        eigs = tuple(complex(e) for e in self.eigs)
        object.__setattr__(self, "eigs", eigs)
        if any(e == 0 for e in eigs):
            raise ValueError("Satake eigenvalues must be nonzero")
        if len(eigs) != self.tag.gl_size:
            raise RankMismatch(
                f"{self.tag.family} rank {self.tag.rank} needs {self.tag.gl_size} "
                f"eigenvalues, got {len(eigs)}")
        if self.tag.is_classical:
            if not _closed_under_inversion(eigs):
                raise ValueError("classical Satake class must be closed under inversion")
            if self.tag.family == "Sp":
                ones = sum(1 for e in eigs if abs(e - 1) <= STRUCT_TOL)
                if ones % 2 == 0:
                    raise ValueError("symplectic class needs eigenvalue 1 with odd multiplicity")

    def inverted(self) -> "SatakeClass":
        return SatakeClass(self.tag, tuple(1.0 / e for e in self.eigs))

    def to_json(self) -> dict:
        return {"family": self.tag.family, "rank": self.tag.rank,
                "eigs": [[e.real, e.imag] for e in self.eigs]}

    @staticmethod
    def from_json(obj: dict) -> "SatakeClass":
        return SatakeClass(GroupTag(obj["family"], int(obj["rank"])),
                           tuple(complex(re, im) for re, im in obj["eigs"]))


def _closed_under_inversion(eigs: Sequence[complex]) -> bool:
    pool = list(eigs)
    for e in eigs:
        target = 1.0 / e
        best, best_d = -1, float("inf")
        for i, x in enumerate(pool):
            if x is None:
                continue
            d = abs(x - target)
            if d < best_d:
                best, best_d = i, d
        if best < 0 or best_d > STRUCT_TOL * max(1.0, abs(target)):
            return False
        pool[best] = None
    return True


def satake_from_principal_series(tag: GroupTag,
                                 chars: Sequence[MultChar]) -> SatakeClass:
    """Satake class of the unramified principal series with the given torus
    characters: {mu_i(pi)^(+-1)} for classical tags (plus the forced 1 for Sp),
    {mu_i(pi)} for GL."""
    if len(chars) != tag.rank:
        raise RankMismatch(f"need {tag.rank} characters, got {len(chars)}")
    places = {c.place for c in chars}
    if len(places) > 1:
        raise PlaceMismatch("principal-series characters at different places")
    if any(not c.is_unramified for c in chars):
        raise RamifiedInput("principal-series constructor needs unramified characters")
    vals = [c.alpha for c in chars]
    if tag.family == "GL":
        return SatakeClass(tag, tuple(vals))
    eigs: list[complex] = []
    for v in vals:
        eigs.extend((v, 1.0 / v))
    if tag.family == "Sp":
        eigs.append(1.0 + 0j)
    return SatakeClass(tag, tuple(eigs))


def unramified_L(A: SatakeClass, B: SatakeClass, place: Place) -> QRat:
    """The tensor determinant formula: 1/prod_{a,b} (1 - a b T^deg v)."""
    q = float(place.field.q)
    d = place.deg
    poles: list[complex] = []
    for a in A.eigs:
        for b in B.eigs:
            poles.extend(QRat.inv_euler(q, a * b, d).poles)
    return QRat(q, 1.0, 0, (), poles)


def unramified_gamma(A: SatakeClass, B: SatakeClass, place: Place,
                     psi: AddChar) -> QRat:
    """Product of abelian gamma-factors over the eigenvalue pairs.

    This is the unramified reduction: it must (and does, see the property
    tests) agree with dual-L-over-L from the determinant formula.
    """
    if psi.place != place:
        raise PlaceMismatch("psi lives at a different place")
    if psi.level != 0:
        raise RamifiedInput("unramified gamma expects a level-0 psi")
    factors = []
    for a in A.eigs:
        for b in B.eigs:
            factors.append(tate_gamma(MultChar.unramified(place, a * b), psi))
    return qr_prod(factors, q=float(place.field.q))


def unramified_r_L(A: SatakeClass, r: str, place: Place) -> QRat:
    """Exterior-square (r='Ext2') or symmetric-square (r='Sym2') L-factor."""
    if A.tag.family != "GL":
        raise WrongTag("twisted-square factors are defined for GL classes")
    if r not in ("Sym2", "Ext2"):
        raise WrongTag(f"unknown twist {r!r}")
    q = float(place.field.q)
    d = place.deg
    n = len(A.eigs)
    poles: list[complex] = []
    for i in range(n):
        jstart = i if r == "Sym2" else i + 1
        for j in range(jstart, n):
            poles.extend(QRat.inv_euler(q, A.eigs[i] * A.eigs[j], d).poles)
    return QRat(q, 1.0, 0, (), poles)


def local_lift_unramified(A: SatakeClass) -> SatakeClass:
    """The unramified local functorial lift: same eigenvalues, GL tag."""
    if not A.tag.is_classical:
        raise WrongTag("lift applies to classical-group classes")
    return SatakeClass(GroupTag("GL", A.tag.gl_size), A.eigs)


def kronecker_det_L(A: SatakeClass, B: SatakeClass, place: Place,
                    t_values: Sequence[complex]) -> list[complex]:
    """det(I - (A ⊗ B) t)^(-1) at sample points, via an explicit Kronecker
    product matrix.  Independent oracle for unramified_L (diagonal classes
    suffice since only eigenvalues enter)."""
    M = np.diag(np.array(A.eigs, dtype=np.complex128))
    N = np.diag(np.array(B.eigs, dtype=np.complex128))
    K = np.kron(M, N)
    eye = np.eye(K.shape[0], dtype=np.complex128)
    d = place.deg
    return [1.0 / complex(np.linalg.det(eye - K * (t ** d))) for t in t_values]
