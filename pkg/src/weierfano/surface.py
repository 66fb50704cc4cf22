"""Picard lattices of the base surfaces: the plane, the quadric, and blowups of the plane.

Every surface is represented only by its lattice data in a fixed basis:

* ``P2``: ``[H]`` with ``H^2 = 1``.
* ``P1xP1``: ``[h1, h2]`` with ``h1^2 = h2^2 = 0`` and ``h1.h2 = 1``.
* ``F1`` and ``S7`` .. ``S1``: the plane blown up in ``r = 9 - d`` points in general
  position, basis ``[H, E1, ..., Er]`` with ``H^2 = 1``, ``Ei^2 = -1``.

Positivity predicates use the fixed Mori-cone generators of these del Pezzo
surfaces, so no cone computations are needed.
"""

from __future__ import annotations

import enum
import functools
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterator, Optional, Sequence

from .errors import DomainError, IntegrityError

__all__ = [
    "SurfaceKind",
    "SurfaceModel",
    "DivisorClass",
    "surface",
    "SURFACE_NAMES",
    "intersect",
    "canonical",
    "minus_one_curves",
    "is_nef",
    "is_ample",
    "is_globally_generated_line",
    "rr_line",
    "h0_line",
    "rr_rank2",
]

# search box for (-1)-curves d*H - sum m_i E_i
CURVE_MAX_DEGREE = 6
CURVE_MAX_MULT = 6


class SurfaceKind(enum.Enum):
    PROJECTIVE_PLANE = "ProjectivePlane"
    QUADRIC_PRODUCT = "QuadricProduct"
    BLOWUP_OF_PLANE = "BlowupOfPlane"


@dataclass(frozen=True, eq=False)
class SurfaceModel:
    """A rational surface given by its Picard lattice.

    Use :func:`surface` rather than calling the constructor directly; it caches
    instances so that the (-1)-curve search runs once per surface.
    """

    kind: SurfaceKind
    blowups: int = 0

    def __post_init__(self):
        if self.kind is SurfaceKind.BLOWUP_OF_PLANE:
            if not 1 <= self.blowups <= 8:
                raise DomainError(f"blowups must be in 1..8, got {self.blowups}")
        elif self.blowups != 0:
            raise DomainError(f"{self.kind.value} takes no blowup count")

    @property
    def name(self) -> str:
        if self.kind is SurfaceKind.PROJECTIVE_PLANE:
            return "P2"
        if self.kind is SurfaceKind.QUADRIC_PRODUCT:
            return "P1xP1"
        if self.blowups == 1:
            return "F1"
        return f"S{9 - self.blowups}"

    def __repr__(self):
        return f"SurfaceModel({self.name})"

    def __eq__(self, other):
        if not isinstance(other, SurfaceModel):
            return NotImplemented
        return (self.kind, self.blowups) == (other.kind, other.blowups)

    def __hash__(self):
        return hash((self.kind, self.blowups))

    @property
    def picard_rank(self) -> int:
        if self.kind is SurfaceKind.PROJECTIVE_PLANE:
            return 1
        if self.kind is SurfaceKind.QUADRIC_PRODUCT:
            return 2
        return self.blowups + 1

    @property
    def basis_labels(self) -> tuple[str, ...]:
        if self.kind is SurfaceKind.PROJECTIVE_PLANE:
            return ("H",)
        if self.kind is SurfaceKind.QUADRIC_PRODUCT:
            return ("h1", "h2")
        return ("H",) + tuple(f"E{i}" for i in range(1, self.blowups + 1))

    @cached_property
    def intersection_matrix(self) -> tuple[tuple[int, ...], ...]:
        if self.kind is SurfaceKind.QUADRIC_PRODUCT:
            return ((0, 1), (1, 0))
        n = self.picard_rank
        return tuple(
            tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n))
            for i in range(n)
        )

    @cached_property
    def canonical(self) -> DivisorClass:
        if self.kind is SurfaceKind.PROJECTIVE_PLANE:
            return self.divisor(-3)
        if self.kind is SurfaceKind.QUADRIC_PRODUCT:
            return self.divisor(-2, -2)
        return self.divisor(-3, *([1] * self.blowups))

    @property
    def degree(self) -> int:
        """Anticanonical degree ``K^2``."""
        return self.canonical.dot(self.canonical)

    @cached_property
    def mori_generators(self) -> tuple[DivisorClass, ...]:
        if self.kind is SurfaceKind.PROJECTIVE_PLANE:
            return (self.divisor(1),)
        if self.kind is SurfaceKind.QUADRIC_PRODUCT:
            return (self.divisor(1, 0), self.divisor(0, 1))
        if self.blowups == 1:
            return (self.divisor(0, 1), self.divisor(1, -1))
        return minus_one_curves(self)

    @cached_property
    def fiber_classes(self) -> tuple[DivisorClass, ...]:
        """Classes of conic-bundle fibers: nef, ``F^2 = 0`` and ``K.F = -2``.

        These are the rulings of ``P1xP1`` and the fiber of ``F1``; on higher
        blowups the pencils of conics through points are included as well.
        """
        if self.kind is SurfaceKind.PROJECTIVE_PLANE:
            return ()
        if self.kind is SurfaceKind.QUADRIC_PRODUCT:
            return (self.divisor(1, 0), self.divisor(0, 1))
        out = []
        for d, mults in _blowup_vectors(self.blowups, 0, -2):
            f = self.divisor(d, *(-m for m in mults))
            if is_nef(self, f):
                out.append(f)
        return tuple(out)

    def divisor(self, *coeffs: int) -> DivisorClass:
        return DivisorClass(self, tuple(int(c) for c in coeffs))

    def zero(self) -> DivisorClass:
        return DivisorClass(self, (0,) * self.picard_rank)

    def basis(self) -> tuple[DivisorClass, ...]:
        n = self.picard_rank
        return tuple(
            self.divisor(*(1 if j == i else 0 for j in range(n))) for i in range(n)
        )

    def some_ample(self) -> DivisorClass:
        return -self.canonical


@dataclass(frozen=True)
class DivisorClass:
    """An integral divisor class, stored as coefficients in the surface basis."""

    surface: SurfaceModel
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.surface.picard_rank:
            raise DomainError(
                f"{self.surface.name} has Picard rank {self.surface.picard_rank}, "
                f"got {len(self.coeffs)} coefficients"
            )

    def _check(self, other: DivisorClass) -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.surface != self.surface:
            raise DomainError(
                f"classes live on different surfaces ({self.surface.name}, {other.surface.name})"
            )

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> DivisorClass:
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.surface, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: DivisorClass) -> int:
        self._check(other)
        m = self.surface.intersection_matrix
        a, b = self.coeffs, other.coeffs
        return sum(a[i] * m[i][j] * b[j] for i in range(len(a)) for j in range(len(b)) if m[i][j])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        terms = []
        for c, label in zip(self.coeffs, self.surface.basis_labels):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{mag}{label}"))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


SURFACE_NAMES = ("P2", "P1xP1", "F1", "S7", "S6", "S5", "S4", "S3", "S2", "S1")


@functools.lru_cache(maxsize=None)
def surface(spec: str) -> SurfaceModel:
    """Parse a surface specifier: ``P2``, ``P1xP1``, ``F1`` or ``S7`` .. ``S1``."""
    s = spec.strip()
    if s == "P2":
        return SurfaceModel(SurfaceKind.PROJECTIVE_PLANE)
    if s.replace("×", "x") == "P1xP1":
        return SurfaceModel(SurfaceKind.QUADRIC_PRODUCT)
    if s == "F1":
        return SurfaceModel(SurfaceKind.BLOWUP_OF_PLANE, 1)
    m = re.fullmatch(r"S([1-7])", s)
    if m:
        return SurfaceModel(SurfaceKind.BLOWUP_OF_PLANE, 9 - int(m.group(1)))
    raise DomainError(f"unknown surface specifier {spec!r}; expected one of {', '.join(SURFACE_NAMES)}")


def intersect(S: SurfaceModel, D1: DivisorClass, D2: DivisorClass) -> int:
    if D1.surface != S or D2.surface != S:
        raise DomainError(f"classes do not live on {S.name}")
    return D1.dot(D2)


def canonical(S: SurfaceModel) -> DivisorClass:
    return S.canonical


def _blowup_vectors(r: int, self_int: int, k_dot: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(d, m)`` in the search box with ``C = dH - sum m_i E_i`` satisfying
    ``C^2 = self_int`` and ``K.C = k_dot``.

    Exhaustive over ``0 <= d <= 6``, ``|m_i| <= 6``; branches are cut only when
    the remaining sum of squares or the remaining linear sum can no longer be met.
    """
    for d in range(CURVE_MAX_DEGREE + 1):
        # C^2 = d^2 - sum m^2, K.C = -3d + sum m
        target_sq = d * d - self_int
        target_sum = k_dot + 3 * d
        if target_sq < 0:
            continue
        m: list[int] = []

        def rec(i: int, sq_left: int, sum_left: int):
            slots = r - i
            if slots == 0:
                if sq_left == 0 and sum_left == 0:
                    yield tuple(m)
                return
            # |sum_left| <= sum |m_j| <= sqrt(slots * sq_left)
            if sum_left * sum_left > slots * sq_left:
                return
            if abs(sum_left) > slots * CURVE_MAX_MULT:
                return
            for v in range(-CURVE_MAX_MULT, CURVE_MAX_MULT + 1):
                if v * v > sq_left:
                    continue
                m.append(v)
                yield from rec(i + 1, sq_left - v * v, sum_left - v)
                m.pop()

        for mults in rec(0, target_sq, target_sum):
            yield d, mults


def minus_one_curves(S: SurfaceModel) -> tuple[DivisorClass, ...]:
    """All classes with ``C^2 = -1`` and ``K.C = -1`` in the search box, sorted."""
    if S.kind is not SurfaceKind.BLOWUP_OF_PLANE:
        return ()
    found = set()
    for d, mults in _blowup_vectors(S.blowups, -1, -1):
        found.add((d,) + tuple(-v for v in mults))
    curves = tuple(S.divisor(*c) for c in sorted(found))
    K = S.canonical
    for c in curves:
        if c.dot(c) != -1 or K.dot(c) != -1:
            raise IntegrityError(f"lattice search returned a non-(-1) class {c}")
    return curves


def is_nef(S: SurfaceModel, D: DivisorClass) -> bool:
    return all(intersect(S, D, C) >= 0 for C in S.mori_generators)


def is_ample(S: SurfaceModel, D: DivisorClass) -> bool:
    return all(intersect(S, D, C) > 0 for C in S.mori_generators) and intersect(S, D, D) > 0


def is_globally_generated_line(S: SurfaceModel, D: DivisorClass) -> Optional[bool]:
    """Three-valued global generation: ``True``, ``False`` or ``None`` for unknown.

    Only the rule table below is trusted; ``None`` must never be read as ``True``.
    """
    if D.surface != S:
        raise DomainError(f"class does not live on {S.name}")
    if S.kind is SurfaceKind.PROJECTIVE_PLANE:
        return D.coeffs[0] >= 0
    if S.kind is SurfaceKind.QUADRIC_PRODUCT:
        return all(c >= 0 for c in D.coeffs)
    if S.blowups <= 7:
        return is_nef(S, D)
    # degree one: |-K| has a base point
    if D == -S.canonical:
        return False
    return None


def _half(n: int) -> int:
    if n % 2:
        raise IntegrityError(f"expected an even intersection number, got {n}")
    return n // 2


def rr_line(S: SurfaceModel, D: DivisorClass) -> int:
    """Riemann-Roch ``chi(O(D)) = D.(D - K)/2 + 1`` on a smooth rational surface."""
    return _half(intersect(S, D, D - S.canonical)) + 1


def h0_line(S: SurfaceModel, D: DivisorClass) -> int:
    """``h^0(O(D))`` on a supported del Pezzo-type surface.

    Nef classes have ``D - K`` ample, so higher cohomology vanishes and
    ``h^0 = chi``. Otherwise (-1)-curves on which ``D`` is negative are fixed
    components and are peeled off; a class negative on a nef class is not effective.
    """
    if D.surface != S:
        raise DomainError(f"class does not live on {S.name}")
    if S.kind is SurfaceKind.PROJECTIVE_PLANE:
        d = D.coeffs[0]
        return comb(d + 2, 2) if d >= 0 else 0
    if S.kind is SurfaceKind.QUADRIC_PRODUCT:
        a, b = D.coeffs
        return (a + 1) * (b + 1) if a >= 0 and b >= 0 else 0

    ample = S.some_ample()
    negative_curves = minus_one_curves(S)
    limit = S.picard_rank * 64
    for _ in range(limit):
        if D.dot(ample) < 0:
            return 0
        if is_nef(S, D):
            return rr_line(S, D)
        for C in negative_curves:
            if D.dot(C) < 0:
                D = D - C
                break
        else:
            # negative only on a moving (nef) generator, e.g. the fiber of F1
            return 0
    raise IntegrityError(f"h0_line did not terminate after {limit} reduction steps")


def rr_rank2(S: SurfaceModel, c1: DivisorClass, c2: int) -> int:
    """Riemann-Roch for a rank-2 bundle: ``2 + c1.(c1 - K)/2 - c2``."""
    return 2 + _half(intersect(S, c1, c1 - S.canonical)) - c2


def coefficients_box(S: SurfaceModel, box: int) -> Iterator[DivisorClass]:
    """Every class with all coefficients in ``[-box, box]``."""
    for coeffs in itertools.product(range(-box, box + 1), repeat=S.picard_rank):
        yield DivisorClass(S, coeffs)


def proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when the two integer vectors are linearly dependent over the rationals."""
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))
