"""Chow rings of towers of projective bundles over a base surface.

A class is a polynomial with rational coefficients in

* the base divisor symbols (one per basis vector of the Picard lattice) and a
  point symbol ``pt``;
* one tautological symbol per level of the tower.

The base part of a monomial is always one of ``1``, a single divisor symbol or
``pt``: products of two divisors are collapsed through the intersection form
as soon as they occur, and anything of base degree three or more is zero.

Level conventions: ``zeta`` is the first Chern class of the tautological
quotient line bundle on ``P(E)``, so that

    zeta^r - c1 zeta^(r-1) + c2 zeta^(r-2) - ... = 0
    pi_*(zeta^(r-1+k)) = s_k,   sum_k s_k t^k = 1 / (1 - c1 t + c2 t^2 - ...)

and in rank two ``pi_* zeta^3 = c1^2 - c2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DomainError
from .surface import DivisorClass, SurfaceModel

__all__ = [
    "Level",
    "TowerRing",
    "CycleClass",
    "build_tower",
    "weierstrass_tower",
    "normalize",
    "integrate",
    "pushforward",
    "xprime_class",
    "integrate_on_xprime",
]

Scalar = Union[int, Fraction]
# (base, exps): base 0 is the unit, 1..rho a divisor symbol, rho+1 the point
Monomial = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class Level:
    rank: int
    chern: tuple["CycleClass", ...]  # c_1 .. c_rank, in the ring below this level
    symbol: str


class TowerRing:
    """Chow ring of ``P(E_k) -> ... -> P(E_1) -> V``; immutable once built."""

    def __init__(self, base: SurfaceModel, levels: Sequence[Level] = (), parent: Optional[TowerRing] = None):
        self.base = base
        self.levels = tuple(levels)
        self.parent = parent
        self.dimension = 2 + sum(lv.rank - 1 for lv in self.levels)
        rho = base.picard_rank
        self._point = rho + 1
        self._matrix = base.intersection_matrix
        self._segre_cache: dict[int, CycleClass] = {}

    def __repr__(self):
        shape = ", ".join(f"{lv.symbol}:rank {lv.rank}" for lv in self.levels)
        return f"TowerRing({self.base.name}; {shape}; dim {self.dimension})"

    @property
    def depth(self) -> int:
        return len(self.levels)

    # element constructors

    def element(self, terms) -> CycleClass:
        return CycleClass(self, terms)

    def scalar(self, c: Scalar) -> CycleClass:
        return self.element({(0, (0,) * self.depth): Fraction(c)})

    @property
    def one(self) -> CycleClass:
        return self.scalar(1)

    @property
    def zero(self) -> CycleClass:
        return self.element({})

    @property
    def point(self) -> CycleClass:
        """Pullback of the point class of the base surface."""
        return self.element({(self._point, (0,) * self.depth): Fraction(1)})

    def divisor(self, D: DivisorClass) -> CycleClass:
        """Pullback of a base divisor class."""
        if D.surface != self.base:
            raise DomainError(f"divisor on {D.surface.name}, tower over {self.base.name}")
        z = (0,) * self.depth
        return self.element({(i + 1, z): Fraction(c) for i, c in enumerate(D.coeffs) if c})

    def taut(self, level: int) -> CycleClass:
        """The tautological class of the given level (0-based)."""
        if not 0 <= level < self.depth:
            raise DomainError(f"no level {level} in a tower of depth {self.depth}")
        exps = tuple(1 if j == level else 0 for j in range(self.depth))
        return self.element({(0, exps): Fraction(1)})

    def symbols(self) -> tuple[str, ...]:
        return tuple(lv.symbol for lv in self.levels)

    def lift(self, cls: CycleClass) -> CycleClass:
        """Pull back a class from any ring lower in this tower (symbol injection)."""
        if cls.ring is self:
            return cls
        k = cls.ring.depth
        ring = self
        while ring is not None and ring is not cls.ring:
            ring = ring.parent
        if ring is None:
            raise DomainError("class does not belong to this tower")
        pad = (0,) * (self.depth - k)
        return self.element({(b, e + pad): c for (b, e), c in cls.terms.items()})

    def add_level(self, rank: int, chern: Sequence[CycleClass], symbol: Optional[str] = None) -> TowerRing:
        """Projectivize a rank-``rank`` bundle with Chern classes ``c_1..c_rank`` from this ring."""
        if rank < 1:
            raise DomainError(f"bundle rank must be positive, got {rank}")
        chern = list(chern) + [self.zero] * (rank - len(chern))
        if len(chern) != rank:
            raise DomainError(f"{len(chern)} Chern classes for a rank-{rank} bundle")
        for i, c in enumerate(chern, start=1):
            if c.ring is not self:
                c = self.lift(c)
                chern[i - 1] = c
            deg = c.degree()
            if deg is not None and deg != i:
                raise DomainError(f"c_{i} has degree {deg}")
        return TowerRing(self.base, self.levels + (Level(rank, tuple(chern), symbol or f"z{self.depth + 1}"),), self)

    # arithmetic on term dictionaries

    def _base_degree(self, b: int) -> int:
        return 0 if b == 0 else (2 if b == self._point else 1)

    def _mono_degree(self, m: Monomial) -> int:
        return self._base_degree(m[0]) + sum(m[1])

    def _mul_base(self, a: int, b: int) -> tuple[int, int]:
        """Product of base parts as (coefficient, base); coefficient 0 means zero."""
        if a == 0:
            return 1, b
        if b == 0:
            return 1, a
        if a == self._point or b == self._point:
            return 0, 0
        return self._matrix[a - 1][b - 1], self._point

    def _mul_terms(self, x: dict, y: dict) -> dict:
        out: dict = {}
        top = self.dimension
        for (ba, ea), ca in x.items():
            for (bb, eb), cb in y.items():
                k, b = self._mul_base(ba, bb)
                if not k:
                    continue
                e = tuple(i + j for i, j in zip(ea, eb))
                key = (b, e)
                if self._mono_degree(key) > top:
                    continue
                out[key] = out.get(key, 0) + k * ca * cb
        return {m: c for m, c in out.items() if c}

    def _normal_form(self, terms: dict) -> dict:
        work = dict(terms)
        done: dict = {}
        while work:
            m, c = work.popitem()
            b, e = m
            level = next((j for j in reversed(range(self.depth)) if e[j] >= self.levels[j].rank), None)
            if level is None:
                done[m] = done.get(m, 0) + c
                continue
            lv = self.levels[level]
            rest = {(b, e[:level] + (e[level] - lv.rank,) + e[level + 1:]): c}
            # zeta^r = sum_i (-1)^(i+1) c_i zeta^(r-i)
            repl: dict = {}
            for i, ci in enumerate(lv.chern, start=1):
                sign = 1 if i % 2 else -1
                lifted = self.lift(ci).terms if ci.ring is not self else ci.terms
                zpow = tuple((lv.rank - i) if j == level else 0 for j in range(self.depth))
                for (bb, ee), cc in self._mul_terms(lifted, {(0, zpow): Fraction(1)}).items():
                    repl[(bb, ee)] = repl.get((bb, ee), 0) + sign * cc
            for mm, cc in self._mul_terms(rest, repl).items():
                work[mm] = work.get(mm, 0) + cc
                if not work[mm]:
                    del work[mm]
        return {m: c for m, c in done.items() if c}

    def segre(self, k: int) -> CycleClass:
        """Segre class ``s_k`` of the top level's bundle, as a class of the parent ring."""
        if self.depth == 0:
            raise DomainError("the base has no tautological level")
        cache = self._segre_cache
        if k not in cache:
            parent = self.parent
            if k < 0:
                cache[k] = parent.zero
            elif k == 0:
                cache[k] = parent.one
            else:
                chern = self.levels[-1].chern
                acc = parent.zero
                for i in range(1, min(k, len(chern)) + 1):
                    sign = 1 if i % 2 else -1
                    acc = acc + sign * (chern[i - 1] * self.segre(k - i))
                cache[k] = acc
        return cache[k]


class CycleClass:
    """An element of a :class:`TowerRing`; immutable.

    Arithmetic collapses base products but does not apply the tautological
    relations; call :func:`normalize` for the canonical form. Equality
    compares normal forms.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: TowerRing, terms: dict):
        self.ring = ring
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    def _align(self, other) -> Optional[tuple[CycleClass, CycleClass]]:
        """Both operands in the higher of the two rings, or ``None`` if ``other`` is foreign."""
        if isinstance(other, CycleClass):
            if other.ring is self.ring:
                return self, other
            if _is_below(other.ring, self.ring):
                return self, self.ring.lift(other)
            if _is_below(self.ring, other.ring):
                return other.ring.lift(self), other
            raise DomainError("classes live in unrelated rings")
        if isinstance(other, (int, Fraction)):
            return self, self.ring.scalar(other)
        if isinstance(other, DivisorClass):
            return self, self.ring.divisor(other)
        return None

    def __add__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a.terms)
        for m, c in b.terms.items():
            terms[m] = terms.get(m, 0) + c
        return CycleClass(a.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return CycleClass(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycleClass(self.ring, {m: c * other for m, c in self.terms.items()})
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycleClass(a.ring, a.ring._mul_terms(a.terms, b.terms))

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return CycleClass(self.ring, {m: c / Fraction(k) for m, c in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return normalize(a.ring, a - b).terms == {}

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Degree of a homogeneous class, ``None`` for zero; mixed degree raises."""
        degs = {self.ring._mono_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise DomainError(f"class is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def homogeneous_part(self, d: int) -> CycleClass:
        return CycleClass(self.ring, {m: c for m, c in self.terms.items() if self.ring._mono_degree(m) == d})

    def __repr__(self):
        return f"CycleClass({self})"

    def __str__(self):
        ring = self.ring
        labels = ("",) + ring.base.basis_labels + ("pt",)
        syms = ring.symbols()

        def mono_str(m: Monomial) -> str:
            b, e = m
            parts = [labels[b]] if b else []
            for s, k in zip(syms, e):
                if k == 1:
                    parts.append(s)
                elif k > 1:
                    parts.append(f"{s}^{k}")
            return "*".join(parts)

        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda m: (-ring._mono_degree(m), tuple(-x for x in m[1]), m[0]))
        out = ""
        for i, m in enumerate(keys):
            c = self.terms[m]
            ms = mono_str(m)
            mag = abs(c)
            if ms and mag == 1:
                body = ms
            elif ms:
                body = f"{mag}*{ms}"
            else:
                body = str(mag)
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def _is_below(lower: TowerRing, upper: TowerRing) -> bool:
    ring = upper.parent
    while ring is not None:
        if ring is lower:
            return True
        ring = ring.parent
    return False


def build_tower(V: SurfaceModel, bundles: Iterable) -> TowerRing:
    """Build the tower over ``V`` level by level.

    Each entry is either an object with ``rank``, ``c1`` (a divisor class on
    ``V``) and ``c2`` (an integer), such as a bundle spec, or a callable taking
    the ring built so far and returning ``(rank, chern_classes)``.
    """
    ring = TowerRing(V)
    for item in bundles:
        if callable(item):
            rank, chern = item(ring)
        else:
            if item.c1.surface != V:
                raise DomainError(f"bundle on {item.c1.surface.name}, tower over {V.name}")
            if ring.depth:
                raise DomainError("surface bundles can only form the first level")
            rank = item.rank
            chern = [ring.divisor(item.c1), item.c2 * ring.point]
        ring = ring.add_level(rank, chern)
    return ring


def weierstrass_chern(ring: TowerRing) -> tuple[int, list[CycleClass]]:
    """Chern data of ``W = O + O(-2 zeta) + O(-3 zeta)`` for the top level of ``ring``."""
    z = ring.taut(ring.depth - 1)
    return 3, [-5 * z, 6 * z * z, ring.zero]


def weierstrass_tower(bundle) -> TowerRing:
    """The two-level ring ``P(W) -> T = P(F) -> V`` for a rank-2 bundle ``F``."""
    base = TowerRing(bundle.c1.surface)
    T = base.add_level(2, [base.divisor(bundle.c1), bundle.c2 * base.point], "zT")
    rank, chern = weierstrass_chern(T)
    return T.add_level(rank, chern, "zW")


def normalize(ring: TowerRing, cls: CycleClass) -> CycleClass:
    if cls.ring is not ring:
        cls = ring.lift(cls)
    return CycleClass(ring, ring._normal_form(cls.terms))


def pushforward(ring: TowerRing, cls: CycleClass) -> CycleClass:
    """Push a class down one level: ``zeta^(r-1+k) * beta -> s_k * beta``."""
    if ring.depth == 0:
        raise DomainError("cannot push forward from the base")
    if cls.ring is not ring:
        cls = ring.lift(cls)
    parent = ring.parent
    r = ring.levels[-1].rank
    out = parent.zero
    for (b, e), c in cls.terms.items():
        k = e[-1] - (r - 1)
        if k < 0:
            continue
        rest = CycleClass(parent, {(b, e[:-1]): c})
        out = out + rest * ring.segre(k)
    return out


def integrate(ring: TowerRing, cls: CycleClass) -> Fraction:
    """Degree of a top-dimensional class, via iterated Segre pushforward."""
    if cls.ring is not ring:
        cls = ring.lift(cls)
    deg = cls.degree()
    if deg is None:
        return Fraction(0)
    if deg != ring.dimension:
        raise DomainError(f"integrand has degree {deg}, ring has dimension {ring.dimension}")
    while ring.depth:
        cls = pushforward(ring, cls)
        ring = ring.parent
    return sum((c for (b, _), c in cls.terms.items() if b == ring._point), Fraction(0))


def _check_weierstrass(ring: TowerRing) -> None:
    if ring.depth != 2 or [lv.rank for lv in ring.levels] != [2, 3]:
        raise DomainError(f"expected the two-level Weierstrass tower, got {ring!r}")


def xprime_class(ring: TowerRing) -> CycleClass:
    """Class ``3 zeta_W + 6 zeta_T`` of the Weierstrass hypersurface in ``P(W)``."""
    _check_weierstrass(ring)
    return 3 * ring.taut(1) + 6 * ring.taut(0)


def integrate_on_xprime(ring: TowerRing, cls: CycleClass) -> Fraction:
    _check_weierstrass(ring)
    if cls.ring is not ring:
        cls = ring.lift(cls)
    deg = cls.degree()
    if deg is not None and deg != ring.dimension - 1:
        raise DomainError(f"integrand has degree {deg}, the hypersurface has dimension {ring.dimension - 1}")
    return integrate(ring, cls * xprime_class(ring))


def exceptional_divisor(ring: TowerRing) -> CycleClass:
    """The section ``E`` as the rational class ``zeta_W / 3`` (valid on the hypersurface only)."""
    _check_weierstrass(ring)
    return ring.taut(1) / 3
