"""Rank-2 bundles on the base surfaces, described by presentations.

A bundle is one of

* a split sum ``O(L1) + O(L2)``;
* ``T_P2(-1)``, the twisted tangent bundle of the plane;
* a quotient ``0 -> sub -> middle -> F -> 0`` where ``sub`` is a sum of line
  bundles and ``middle`` a sum of line bundles and rank-2 bundles;
* the pullback ``g^* F`` along the blowdown ``g: F1 -> P2``.

Only Chern data and dimensions of section spaces are modelled. The number
``h^0(F^* (x) O(-K))`` is computed along every route that applies to a
presentation, and the routes are required to agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DomainError, IntegrityError, MalformedPresentationError
from .surface import (
    DivisorClass,
    SurfaceKind,
    SurfaceModel,
    h0_line,
    is_globally_generated_line,
    is_nef,
    rr_rank2,
    surface,
)

__all__ = [
    "SplitSum",
    "TangentTwist",
    "QuotientOf",
    "Pullback",
    "BundleSpec",
    "chern",
    "dual_twist_by_minus_K",
    "dual_twist",
    "h0_routes",
    "h0_twisted_dual",
    "is_globally_generated",
    "is_nef_bundle",
    "restriction_type_on_ruling",
    "bundle_from_json",
    "bundle_to_json",
    "blowdown_pullback",
]


@dataclass(frozen=True)
class SplitSum:
    first: DivisorClass
    second: DivisorClass


@dataclass(frozen=True)
class TangentTwist:
    """``T_P2(-1)``, the quotient in the Euler sequence ``0 -> O(-1) -> O^3 -> T(-1) -> 0``."""


@dataclass(frozen=True)
class QuotientOf:
    sub: tuple[DivisorClass, ...]
    middle: tuple[Union[DivisorClass, "BundleSpec"], ...]


@dataclass(frozen=True)
class Pullback:
    """Pullback along the blowdown ``F1 -> P2`` of a bundle on ``P2``."""

    inner: "BundleSpec"


Presentation = Union[SplitSum, TangentTwist, QuotientOf, Pullback]


# Total Chern classes on a surface are pairs (c1, c2); c0 = 1 is implicit.

def _cmul(a: tuple[DivisorClass, int], b: tuple[DivisorClass, int]) -> tuple[DivisorClass, int]:
    return a[0] + b[0], a[1] + b[1] + a[0].dot(b[0])


def _cinv(a: tuple[DivisorClass, int]) -> tuple[DivisorClass, int]:
    # (1 + x + y)^-1 = 1 - x + (x^2 - y) up to degree 2
    return -a[0], a[0].dot(a[0]) - a[1]


def blowdown_pullback(D: DivisorClass) -> DivisorClass:
    """Pull a class on ``P2`` back to ``F1`` (basis ``[H, E1]``)."""
    if D.surface != surface("P2"):
        raise MalformedPresentationError("pullback is only defined from P2 to F1")
    return surface("F1").divisor(D.coeffs[0], 0)


@dataclass(frozen=True)
class BundleSpec:
    """A rank-2 bundle; ``c1`` and ``c2`` are derived from the presentation."""

    surface: SurfaceModel
    presentation: Presentation
    c1: DivisorClass = field(init=False)
    c2: int = field(init=False)

    def __post_init__(self):
        c1, c2 = _chern_of(self.surface, self.presentation)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @property
    def rank(self) -> int:
        return 2

    @classmethod
    def split(cls, first: DivisorClass, second: DivisorClass) -> BundleSpec:
        return cls(first.surface, SplitSum(first, second))

    @classmethod
    def trivial(cls, S: SurfaceModel) -> BundleSpec:
        return cls(S, SplitSum(S.zero(), S.zero()))

    @classmethod
    def tangent_twist(cls, S: Optional[SurfaceModel] = None) -> BundleSpec:
        return cls(S if S is not None else surface("P2"), TangentTwist())

    @classmethod
    def quotient(cls, sub, middle) -> BundleSpec:
        parts = list(sub) + list(middle)
        if not parts:
            raise MalformedPresentationError("empty quotient presentation")
        return cls(parts[0].surface, QuotientOf(tuple(sub), tuple(middle)))

    @classmethod
    def pullback(cls, inner: BundleSpec) -> BundleSpec:
        return cls(surface("F1"), Pullback(inner))

    def chern_total(self) -> tuple[DivisorClass, int]:
        return self.c1, self.c2

    def whitney_consistent(self) -> bool:
        """For a quotient, ``c(middle) = c(sub) c(F)``; trivially true otherwise."""
        p = self.presentation
        if not isinstance(p, QuotientOf):
            return True
        S = self.surface
        return _chern_of_sum(S, p.middle) == _cmul(_chern_of_sum(S, p.sub), (self.c1, self.c2))

    def label(self) -> str:
        return _label(self)


def _component_rank(x) -> int:
    return 1 if isinstance(x, DivisorClass) else x.rank


def _component_chern(x) -> tuple[DivisorClass, int]:
    if isinstance(x, DivisorClass):
        return x, 0
    return x.c1, x.c2


def _chern_of_sum(S: SurfaceModel, parts) -> tuple[DivisorClass, int]:
    total = (S.zero(), 0)
    for x in parts:
        if x.surface != S:
            raise MalformedPresentationError(
                f"component on {x.surface.name} in a presentation over {S.name}"
            )
        total = _cmul(total, _component_chern(x))
    return total


def _chern_of(S: SurfaceModel, p: Presentation) -> tuple[DivisorClass, int]:
    if isinstance(p, SplitSum):
        return _chern_of_sum(S, (p.first, p.second))
    if isinstance(p, TangentTwist):
        if S.kind is not SurfaceKind.PROJECTIVE_PLANE:
            raise MalformedPresentationError("T(-1) is only defined on P2")
        # c(O^3) = c(O(-1)) c(T(-1))
        return _cmul(_cinv((S.divisor(-1), 0)), (S.zero(), 0))
    if isinstance(p, QuotientOf):
        rank = sum(_component_rank(x) for x in p.middle) - len(p.sub)
        if rank != 2:
            raise MalformedPresentationError(f"quotient has rank {rank}, expected 2")
        return _cmul(_chern_of_sum(S, p.middle), _cinv(_chern_of_sum(S, p.sub)))
    if isinstance(p, Pullback):
        if S != surface("F1") or p.inner.surface != surface("P2"):
            raise MalformedPresentationError("pullback is only supported along F1 -> P2")
        return blowdown_pullback(p.inner.c1), p.inner.c2
    raise MalformedPresentationError(f"unknown presentation {p!r}")


def chern(B: BundleSpec) -> tuple[DivisorClass, int]:
    return B.c1, B.c2


def dual_twist(B: BundleSpec, T: DivisorClass) -> tuple[DivisorClass, int]:
    """Chern classes of ``B^* (x) O(T)``."""
    return -B.c1 + 2 * T, B.c2 - B.c1.dot(T) + T.dot(T)


def dual_twist_by_minus_K(B: BundleSpec) -> tuple[DivisorClass, int]:
    return dual_twist(B, -B.surface.canonical)


def _resolve(B: BundleSpec) -> Presentation:
    """Rewrite a pullback as a presentation living on ``F1`` itself."""
    p = B.presentation
    if not isinstance(p, Pullback):
        return p
    inner = p.inner.presentation
    if isinstance(inner, SplitSum):
        return SplitSum(blowdown_pullback(inner.first), blowdown_pullback(inner.second))
    if isinstance(inner, TangentTwist):
        F1 = B.surface
        return QuotientOf((F1.divisor(-1, 0),), (F1.zero(),) * 3)
    if isinstance(inner, QuotientOf):
        return QuotientOf(
            tuple(blowdown_pullback(s) for s in inner.sub),
            tuple(
                blowdown_pullback(m) if isinstance(m, DivisorClass) else BundleSpec.pullback(m)
                for m in inner.middle
            ),
        )
    raise MalformedPresentationError("iterated pullbacks are not supported")


def _h0_component(x, T: DivisorClass) -> int:
    if isinstance(x, DivisorClass):
        return h0_line(T.surface, T - x)
    return _h0_dual_twist(x, T)


def _routes(B: BundleSpec, T: DivisorClass) -> dict[str, int]:
    S = B.surface
    c1, c2 = dual_twist(B, T)
    routes = {"chi": rr_rank2(S, c1, c2)}
    p = _resolve(B)
    if isinstance(p, SplitSum):
        routes["split"] = h0_line(S, T - p.first) + h0_line(S, T - p.second)
    elif isinstance(p, TangentTwist):
        # dual Euler sequence twisted by T: 0 -> F^*(T) -> O(T)^3 -> O(T+H) -> 0
        routes["sequence"] = 3 * h0_line(S, T) - h0_line(S, T + S.divisor(1))
    elif isinstance(p, QuotientOf):
        routes["sequence"] = sum(_h0_component(m, T) for m in p.middle) - sum(
            h0_line(S, T - s) for s in p.sub
        )
    if isinstance(B.presentation, Pullback):
        value = _pullback_route(B.presentation.inner, T)
        if value is not None:
            routes["pullback"] = value
    return routes


def _pullback_route(inner: BundleSpec, T: DivisorClass) -> Optional[int]:
    """Sections on ``P2`` of ``inner^*(a)`` vanishing at the blown-up point.

    Applies when ``T = g^*(aH) - E1`` and ``inner^*(a)`` is globally generated,
    so that vanishing at a point imposes exactly two conditions.
    """
    a, e = T.coeffs
    if e != -1:
        return None
    P2 = inner.surface
    p = inner.presentation
    if isinstance(p, SplitSum):
        if a - p.first.coeffs[0] < 0 or a - p.second.coeffs[0] < 0:
            return None
    elif isinstance(p, TangentTwist):
        # T(-1)^*(a) = Omega(a + 1) is globally generated for a >= 1
        if a < 1:
            return None
    else:
        return None
    return _h0_dual_twist(inner, P2.divisor(a)) - 2


def _h0_dual_twist(B: BundleSpec, T: DivisorClass) -> int:
    routes = _routes(B, T)
    values = set(routes.values())
    if len(values) != 1:
        raise IntegrityError(
            f"h0 routes disagree for {B.label()} twisted by {T}: {routes}"
        )
    return values.pop()


def h0_routes(B: BundleSpec) -> dict[str, int]:
    """Every applicable computation of ``h^0(F^* (x) O(-K))``, keyed by route name.

    ``chi`` assumes the higher cohomology vanishes; ``split`` sums line bundle
    sections; ``sequence`` takes the alternating sum along the dualized defining
    sequence, assuming surjectivity on sections; ``pullback`` counts sections on
    ``P2`` vanishing at the blown-up point.
    """
    return _routes(B, -B.surface.canonical)


def h0_twisted_dual(B: BundleSpec) -> int:
    return _h0_dual_twist(B, -B.surface.canonical)


def _and3(values) -> Optional[bool]:
    values = list(values)
    if any(v is False for v in values):
        return False
    if any(v is None for v in values):
        return None
    return True


def _component_gg(x) -> Optional[bool]:
    if isinstance(x, DivisorClass):
        return is_globally_generated_line(x.surface, x)
    return is_globally_generated(x)


def is_globally_generated(B: BundleSpec) -> Optional[bool]:
    """Three-valued: ``True``, ``False`` or ``None`` (unknown)."""
    p = B.presentation
    if isinstance(p, SplitSum):
        return _and3(_component_gg(x) for x in (p.first, p.second))
    if isinstance(p, TangentTwist):
        return True
    if isinstance(p, QuotientOf):
        return True if _and3(_component_gg(m) for m in p.middle) is True else None
    if isinstance(p, Pullback):
        return True if is_globally_generated(p.inner) is True else None
    return None


def is_nef_bundle(B: BundleSpec) -> Optional[bool]:
    """Nefness: split sums are checked summand-wise, globally generated bundles are nef."""
    p = _resolve(B)
    if isinstance(p, SplitSum):
        return is_nef(B.surface, p.first) and is_nef(B.surface, p.second)
    if is_globally_generated(B) is True:
        return True
    return None


def restriction_type_on_ruling(B: BundleSpec, ruling: DivisorClass) -> Optional[tuple[int, int]]:
    """Splitting degrees of ``B`` on a fiber of class ``ruling``, sorted; ``None`` if unknown."""
    S = B.surface
    if ruling.surface != S or ruling not in S.fiber_classes:
        raise DomainError(f"{ruling} is not a fiber class on {S.name}")
    p = _resolve(B)
    if not isinstance(p, SplitSum):
        return None
    return tuple(sorted((p.first.dot(ruling), p.second.dot(ruling))))


# JSON specifiers

def _parse_class(S: SurfaceModel, coeffs) -> DivisorClass:
    if isinstance(coeffs, int):
        coeffs = [coeffs]
    if not isinstance(coeffs, list) or not all(isinstance(c, int) for c in coeffs):
        raise MalformedPresentationError(f"expected an integer array, got {coeffs!r}")
    try:
        return S.divisor(*coeffs)
    except DomainError as exc:
        raise MalformedPresentationError(str(exc)) from exc


def bundle_from_json(S: SurfaceModel, obj) -> BundleSpec:
    """Build a bundle from its JSON specifier.

    Accepted forms::

        {"split": [[a...], [b...]]}          (alias "split2")
        {"tangent_twist": true}
        {"quotient": {"sub": [[...], ...], "middle": [[...], "tangent_twist", ...]}}
        {"pullback": <specifier of a bundle on P2>}
    """
    if not isinstance(obj, dict) or len(obj) != 1:
        raise MalformedPresentationError(f"bundle specifier must be a one-key object, got {obj!r}")
    (key, value), = obj.items()
    if key in ("split", "split2"):
        if not isinstance(value, list) or len(value) != 2:
            raise MalformedPresentationError("split needs exactly two summands")
        return BundleSpec.split(_parse_class(S, value[0]), _parse_class(S, value[1]))
    if key == "tangent_twist":
        if value is not True:
            raise MalformedPresentationError("tangent_twist must be true")
        return BundleSpec.tangent_twist(S)
    if key == "quotient":
        if not isinstance(value, dict) or set(value) != {"sub", "middle"}:
            raise MalformedPresentationError("quotient needs 'sub' and 'middle'")
        sub = tuple(_parse_class(S, c) for c in value["sub"])
        middle = []
        for m in value["middle"]:
            if m == "tangent_twist" or m == {"tangent_twist": True}:
                middle.append(BundleSpec.tangent_twist(S))
            elif isinstance(m, dict):
                middle.append(bundle_from_json(S, m))
            else:
                middle.append(_parse_class(S, m))
        return BundleSpec(S, QuotientOf(sub, tuple(middle)))
    if key == "pullback":
        if S != surface("F1"):
            raise MalformedPresentationError("pullback bundles live on F1")
        return BundleSpec.pullback(bundle_from_json(surface("P2"), value))
    raise MalformedPresentationError(f"unknown bundle specifier key {key!r}")


def bundle_to_json(B: BundleSpec) -> dict:
    p = B.presentation
    if isinstance(p, SplitSum):
        return {"split": [p.first.to_list(), p.second.to_list()]}
    if isinstance(p, TangentTwist):
        return {"tangent_twist": True}
    if isinstance(p, QuotientOf):
        return {
            "quotient": {
                "sub": [s.to_list() for s in p.sub],
                "middle": [
                    m.to_list() if isinstance(m, DivisorClass) else bundle_to_json(m)
                    for m in p.middle
                ],
            }
        }
    return {"pullback": bundle_to_json(p.inner)}


def _line_label(D: DivisorClass) -> str:
    if D.is_zero():
        return "O"
    if D.surface.kind is SurfaceKind.BLOWUP_OF_PLANE:
        return f"O({D})"
    return "O(" + ",".join(str(c) for c in D.coeffs) + ")"


def _sum_label(parts) -> str:
    labels = [_line_label(x) if isinstance(x, DivisorClass) else x.label() for x in parts]
    out = []
    i = 0
    while i < len(labels):
        j = i
        while j < len(labels) and labels[j] == labels[i]:
            j += 1
        out.append(labels[i] if j - i == 1 else f"{labels[i]}^{j - i}")
        i = j
    return "+".join(out) if out else "0"


def _label(B: BundleSpec) -> str:
    p = B.presentation
    if isinstance(p, SplitSum):
        return _sum_label(sorted((p.first, p.second), key=lambda d: d.coeffs))
    if isinstance(p, TangentTwist):
        return "T(-1)"
    if isinstance(p, QuotientOf):
        return f"coker({_sum_label(p.sub)} -> {_sum_label(p.middle)})"
    return f"g*({p.inner.label()})"
