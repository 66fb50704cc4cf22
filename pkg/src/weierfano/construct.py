"""Invariants of the Fano fourfold built from a pair (surface V, rank-2 bundle F).

The fourfold ``X`` is the blow-down of the Weierstrass hypersurface
``X' in |3 zeta_W + 6 zeta_T|`` inside ``P(W) -> T = P(F) -> V`` with
``W = O + O(-2 zeta_T) + O(-3 zeta_T)``. Along the section ``E ~ T`` one has
``mu^*(-K_X) = -K_X' + E`` and ``-K_X' = zeta_T + (-K_V - c1(F))``.

Every number is computed twice where possible: by closed formulas in the Chern
classes of ``F`` and by integration in the Chow ring of the tower.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bundle import BundleSpec, bundle_to_json, h0_routes, h0_twisted_dual, is_globally_generated
from .chowtower import (
    CycleClass,
    TowerRing,
    exceptional_divisor,
    integrate,
    integrate_on_xprime,
    weierstrass_tower,
)
from .errors import DomainError, IntegrityError
from .surface import DivisorClass, SurfaceModel, is_ample, is_globally_generated_line

__all__ = [
    "FamilyInput",
    "ValidationFlags",
    "InvariantReport",
    "validate",
    "tower",
    "anticanonical_xprime",
    "k4_closed",
    "k4_oracle",
    "h0",
    "k2c2",
    "zeta_cubed",
    "nd_zeta",
    "abar4",
    "full_report",
    "normal_bundle_identity",
    "pullback_fourth_powers",
]


@dataclass(frozen=True)
class FamilyInput:
    surface: SurfaceModel
    bundle: BundleSpec

    def __post_init__(self):
        if self.bundle.surface != self.surface:
            raise DomainError(
                f"bundle lives on {self.bundle.surface.name}, input surface is {self.surface.name}"
            )

    @property
    def adjoint(self) -> DivisorClass:
        """``-K_V - c1(F)``."""
        return -self.surface.canonical - self.bundle.c1


@dataclass(frozen=True)
class ValidationFlags:
    gg_ok: Optional[bool]
    adjoint_ample_ok: bool
    adjoint_gg_ok: Optional[bool]
    notes: tuple[str, ...] = ()

    @property
    def all_ok(self) -> bool:
        return self.gg_ok is True and self.adjoint_ample_ok and self.adjoint_gg_ok is True


def validate(inp: FamilyInput) -> ValidationFlags:
    S = inp.surface
    A = inp.adjoint
    gg = is_globally_generated(inp.bundle)
    ample = is_ample(S, A)
    adj_gg = is_globally_generated_line(S, A)
    notes = []
    if S.degree == 1 and A == -S.canonical:
        notes.append("-K_V has a base point on a degree-1 del Pezzo surface; Bs|-K_X| is a reducible surface")
    if gg is None:
        notes.append("global generation of F undetermined")
    if adj_gg is None:
        notes.append("global generation of -K_V - c1(F) undetermined")
    return ValidationFlags(gg, ample, adj_gg, tuple(notes))


@functools.lru_cache(maxsize=128)
def tower(bundle: BundleSpec) -> TowerRing:
    """The ring of ``P(W)``; its parent is the ring of ``T = P(F)``."""
    return weierstrass_tower(bundle)


def anticanonical_xprime(inp: FamilyInput) -> CycleClass:
    """``-K_X' = zeta_T + (-K_V - c1)``, pulled back to ``P(W)``."""
    R = tower(inp.bundle)
    return R.taut(0) + R.divisor(inp.adjoint)


def k4_closed(inp: FamilyInput) -> int:
    K = inp.surface.canonical
    c1, c2 = inp.bundle.c1, inp.bundle.c2
    return 6 * K.dot(K) + 8 * K.dot(c1) + 3 * c1.dot(c1) - c2


def k4_oracle(inp: FamilyInput) -> Fraction:
    """``(-K_X)^4 = int_X' (-K_X' + E)^4`` with ``E = zeta_W / 3``."""
    R = tower(inp.bundle)
    value = integrate_on_xprime(R, (anticanonical_xprime(inp) + exceptional_divisor(R)) ** 4)
    closed = k4_closed(inp)
    if value != closed or value.denominator != 1:
        raise IntegrityError(f"tower gives K^4 = {value}, closed formula gives {closed}")
    return value


def h0(inp: FamilyInput) -> int:
    return h0_twisted_dual(inp.bundle)


def k2c2(inp: FamilyInput) -> int:
    # h0 = 1 + (2 K^4 + K^2.c2) / 12
    return 12 * (h0(inp) - 1) - 2 * k4_closed(inp)


def zeta_cubed(inp: FamilyInput) -> Fraction:
    """``int_T zeta_T^3`` by Segre pushforward in the tower."""
    T = tower(inp.bundle).parent
    return integrate(T, T.taut(0) ** 3)


def nd_zeta(inp: FamilyInput) -> int:
    """Numerical dimension of ``zeta_T`` (which is nef on the inputs we accept)."""
    z3 = zeta_cubed(inp)
    if z3 < 0:
        raise DomainError(f"zeta_T^3 = {z3} < 0: zeta_T is not nef")
    if z3 > 0:
        return 3
    # pi_* zeta^2 = c1
    return 2 if not inp.bundle.c1.is_zero() else 1


def abar4(inp: FamilyInput) -> int:
    if nd_zeta(inp) != 3:
        raise DomainError("psi is not birational; the image has dimension < 4")
    c1, c2 = inp.bundle.c1, inp.bundle.c2
    return c1.dot(c1) - c2


@dataclass(frozen=True)
class InvariantReport:
    gg_ok: Optional[bool]
    adjoint_ample_ok: bool
    adjoint_gg_ok: Optional[bool]
    c1: DivisorClass
    c2: int
    k4: int
    h0: int
    k2c2: int
    zeta_cubed: int
    nd_zeta: int
    psi_birational: bool
    abar4: Optional[int]
    k4_oracle: Fraction
    h0_routes: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def check(self) -> None:
        if self.k2c2 + 2 * self.k4 != 12 * (self.h0 - 1):
            raise IntegrityError("K^2.c2 + 2 K^4 != 12 (h0 - 1)")
        if self.k4_oracle != self.k4:
            raise IntegrityError(f"K^4 oracle {self.k4_oracle} != closed {self.k4}")
        if self.psi_birational != (self.nd_zeta == 3) or self.psi_birational != (self.zeta_cubed > 0):
            raise IntegrityError("birationality flags disagree")
        if (self.abar4 is not None) != self.psi_birational:
            raise IntegrityError("abar4 must be present exactly when psi is birational")
        if self.abar4 is not None and self.abar4 != self.zeta_cubed:
            raise IntegrityError("abar4 != zeta^3")

    @property
    def h0_label(self) -> str:
        return "chi-assumed" if set(self.h0_routes) == {"chi"} else "cross-checked"

    def to_json(self) -> dict:
        return {
            "gg_ok": self.gg_ok,
            "adjoint_ample_ok": self.adjoint_ample_ok,
            "adjoint_gg_ok": self.adjoint_gg_ok,
            "c1": self.c1.to_list(),
            "c2": self.c2,
            "k4": self.k4,
            "h0": self.h0,
            "k2c2": self.k2c2,
            "zeta_cubed": self.zeta_cubed,
            "nd_zeta": self.nd_zeta,
            "psi_birational": self.psi_birational,
            "abar4": self.abar4,
            "k4_oracle": str(self.k4_oracle),
            "h0_routes": dict(sorted(self.h0_routes.items())),
            "h0_label": self.h0_label,
            "notes": list(self.notes),
        }


def full_report(inp: FamilyInput) -> InvariantReport:
    flags = validate(inp)
    c1, c2 = inp.bundle.c1, inp.bundle.c2
    z3 = zeta_cubed(inp)
    if z3 != c1.dot(c1) - c2:
        raise IntegrityError(f"int zeta_T^3 = {z3} but c1^2 - c2 = {c1.dot(c1) - c2}")
    nd = nd_zeta(inp)
    k4 = k4_closed(inp)
    routes = h0_routes(inp.bundle)
    h = h0(inp)
    report = InvariantReport(
        gg_ok=flags.gg_ok,
        adjoint_ample_ok=flags.adjoint_ample_ok,
        adjoint_gg_ok=flags.adjoint_gg_ok,
        c1=c1,
        c2=c2,
        k4=k4,
        h0=h,
        k2c2=12 * (h - 1) - 2 * k4,
        zeta_cubed=int(z3),
        nd_zeta=nd,
        psi_birational=nd == 3,
        abar4=abar4(inp) if nd == 3 else None,
        k4_oracle=k4_oracle(inp),
        h0_routes=routes,
        notes=flags.notes,
    )
    report.check()
    return report


def normal_bundle_identity(inp: FamilyInput) -> list[tuple[DivisorClass, Fraction, Fraction]]:
    """For each basis divisor ``b``: ``(b, int_X' E^2 zeta_T b, -int_T zeta_T^2 b)``.

    The two numbers agree because ``E ~ T`` has normal bundle ``O_T(-zeta_T)``.
    """
    R = tower(inp.bundle)
    T = R.parent
    E = exceptional_divisor(R)
    out = []
    for b in inp.surface.basis():
        lhs = integrate_on_xprime(R, E * E * R.taut(0) * R.divisor(b))
        rhs = -integrate(T, T.taut(0) ** 2 * T.divisor(b))
        out.append((b, lhs, rhs))
    return out


def pullback_fourth_powers(inp: FamilyInput) -> list[tuple[str, Fraction]]:
    """``int_X' D^4`` for divisors ``D`` pulled back from ``T``; all must vanish."""
    R = tower(inp.bundle)
    zt = R.taut(0)
    divisors = [("-K_X'", anticanonical_xprime(inp)), ("zeta_T", zt)]
    for b in inp.surface.basis():
        divisors.append((f"{b}", R.divisor(b)))
        divisors.append((f"zeta_T + {b}", zt + R.divisor(b)))
    return [(name, integrate_on_xprime(R, D ** 4)) for name, D in divisors]


def input_to_json(inp: FamilyInput) -> dict:
    return {"surface": inp.surface.name, "bundle": bundle_to_json(inp.bundle)}
