"""Independent oracles used by the tests; nothing here imports the package's algorithms."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import comb

PRIME = 1_000_003


def brute_force_minus_one_curves(r: int, max_degree: int = 6, max_mult: int = 6) -> set[tuple[int, ...]]:
    """Plain enumeration of ``dH - sum m_i E_i`` with ``C^2 = K.C = -1`` (small ``r`` only)."""
    out = set()
    rng = range(-max_mult, max_mult + 1)
    for d in range(max_degree + 1):
        for m in itertools.product(rng, repeat=r):
            if d * d - sum(x * x for x in m) == -1 and -3 * d + sum(m) == -1:
                out.add((d,) + tuple(-x for x in m))
    return out


def _rank_mod_p(rows: list[list[int]]) -> int:
    rows = [[x % PRIME for x in row] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], PRIME - 2, PRIME)
        rows[rank] = [x * inv % PRIME for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % PRIME for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def plane_curve_sections(d: int, mults: list[int], seed: int = 7) -> int:
    """``h^0`` of ``dH - sum m_i E_i`` on the plane blown up at random points.

    Counts degree-``d`` forms vanishing to order ``max(m_i, 0)`` at the points by
    exact linear algebra over a large prime field (affine chart ``z = 1``).
    """
    if d < 0:
        return 0
    monos = [(a, b, d - a - b) for a in range(d + 1) for b in range(d + 1 - a)]
    rnd = random.Random(seed)
    conditions = []
    for m in mults:
        m = max(m, 0)
        x0, y0 = rnd.randrange(1, PRIME), rnd.randrange(1, PRIME)
        # derivatives d^i/dx^i d^j/dy^j of x^a y^b at (x0, y0), i + j < m
        for i in range(m):
            for j in range(m - i):
                row = []
                for a, b, _ in monos:
                    if a < i or b < j:
                        row.append(0)
                        continue
                    coef = comb(a, i) * comb(b, j)
                    row.append(coef * pow(x0, a - i, PRIME) * pow(y0, b - j, PRIME))
                conditions.append(row)
    if not conditions:
        return len(monos)
    return len(monos) - _rank_mod_p(conditions)


def sympy_tower_integral(base: str, c1: tuple[int, ...], c2: int, integrand) -> Fraction:
    """Integrate over ``P(W) -> P(F) -> V`` by Groebner reduction in sympy.

    ``V`` is ``P2`` (generator ``h``) or ``P1xP1`` (``a``, ``b``). ``integrand``
    maps the symbol dict ``{"zT", "zW", "h" | "a", "b"}`` to a sympy expression of
    degree 5. The top class ``zW^2 zT pt`` has degree one.
    """
    import sympy as sp

    zW, zT = sp.symbols("zW zT")
    if base == "P2":
        h = sp.Symbol("h")
        gens = [zW, zT, h]
        base_rel = [h**3]
        C1 = c1[0] * h
        pt = h**2
        syms = {"h": h}
    else:
        a, b = sp.symbols("a b")
        gens = [zW, zT, a, b]
        base_rel = [a**2, b**2]
        C1 = c1[0] * a + c1[1] * b
        pt = a * b
        syms = {"a": a, "b": b}
    # zeta^2 - c1 zeta + c2 = 0 and c(W) = 1 - 5 zT + 6 zT^2
    rels = base_rel + [sp.expand(zT**2 - C1 * zT + c2 * pt), sp.expand(zW**3 + 5 * zT * zW**2 + 6 * zT**2 * zW)]
    G = sp.groebner(rels, *gens, order="lex", domain="QQ")
    syms.update(zT=zT, zW=zW)
    top = G.reduce(sp.expand(zW**2 * zT * pt))[1]
    value = G.reduce(sp.expand(integrand(syms)))[1]
    ratio = sp.nsimplify(sp.cancel(value / top)) if value != 0 else sp.Integer(0)
    if not ratio.is_Rational:
        raise ValueError(f"integrand is not top-degree: {value}")
    return Fraction(int(ratio.p), int(ratio.q))
