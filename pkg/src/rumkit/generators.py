"""Built-in crystal frameworks."""

from __future__ import annotations

from fractions import Fraction

from .framework import CrystalFramework, EdgeSpec, Motif, TranslationGroup, new_framework
from .scalar import ExactScalar

__all__ = ["GENERATORS", "generator"]

HALF = Fraction(1, 2)


def strip() -> CrystalFramework:
    """Triangles hung from a line of bars, period (4, 0)."""
    motif = Motif(
        2,
        ((0, 0), (0, 4), (1, 3)),
        (
            EdgeSpec(0, 1, (0,)),
            EdgeSpec(1, 2, (0,)),
            EdgeSpec(0, 2, (0,)),
            EdgeSpec(0, 0, (1,)),
            EdgeSpec(2, 1, (1,)),
        ),
    )
    return new_framework(motif, TranslationGroup(((4, 0),)), "strip")


def grid2d() -> CrystalFramework:
    motif = Motif(2, ((0, 0),), (EdgeSpec(0, 0, (1, 0)), EdgeSpec(0, 0, (0, 1))))
    return new_framework(motif, TranslationGroup(((1, 0), (0, 1))), "grid2d")


def kagome() -> CrystalFramework:
    """Corner-sharing unit equilateral triangles; periods (2,0), (1,sqrt3)."""
    r3 = ExactScalar(0, 1, 3)
    motif = Motif(
        2,
        ((0, 0), (1, 0), (HALF, r3 * HALF)),
        (
            EdgeSpec(0, 1, (0, 0)),
            EdgeSpec(1, 2, (0, 0)),
            EdgeSpec(0, 2, (0, 0)),
            EdgeSpec(1, 0, (1, 0)),
            EdgeSpec(2, 0, (0, 1)),
            EdgeSpec(2, 1, (-1, 1)),
        ),
    )
    return new_framework(motif, TranslationGroup(((2, 0), (1, r3))), "kagome")


def _canonical(a: tuple[int, tuple[int, ...]], b: tuple[int, tuple[int, ...]]) -> EdgeSpec:
    (ka, ca), (kb, cb) = a, b
    return EdgeSpec(ka, kb, tuple(y - x for x, y in zip(ca, cb)))


def kagome_net() -> CrystalFramework:
    """Corner-sharing tetrahedra on the fcc lattice (3D kagome)."""
    a1 = (0, HALF, HALF)
    a2 = (HALF, 0, HALF)
    a3 = (HALF, HALF, 0)
    verts = ((0, 0, 0),) + tuple(tuple(x * HALF for x in a) for a in (a1, a2, a3))
    up = [(i, (0, 0, 0)) for i in range(4)]
    down = [(1, (0, 0, 0)), (2, (1, -1, 0)), (3, (1, 0, -1)), (0, (1, 0, 0))]
    edges = []
    for tet in (up, down):
        for i in range(4):
            for j in range(i + 1, 4):
                edges.append(_canonical(tet[i], tet[j]))
    return new_framework(Motif(3, verts, tuple(edges)), TranslationGroup((a1, a2, a3)), "kagome_net")


def subdivided_grid_diag() -> CrystalFramework:
    """Square grid with diagonals whose horizontal bars carry a midpoint.

    The midpoint is a collinear degree-2 vertex, so it has a local flex.
    """
    motif = Motif(
        2,
        ((0, 0), (HALF, 0)),
        (
            EdgeSpec(0, 1, (0, 0)),
            EdgeSpec(1, 0, (1, 0)),
            EdgeSpec(0, 0, (0, 1)),
            EdgeSpec(0, 0, (1, 1)),
        ),
    )
    return new_framework(motif, TranslationGroup(((1, 0), (0, 1))), "subdivided_grid_diag")


GENERATORS = {
    "strip": strip,
    "grid2d": grid2d,
    "kagome": kagome,
    "kagome_net": kagome_net,
    "subdivided_grid_diag": subdivided_grid_diag,
}


def generator(name: str, **params) -> CrystalFramework:
    """Build a named framework.  No generator currently takes parameters."""
    try:
        make = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}") from None
    if params:
        raise ValueError(f"generator {name!r} takes no parameters")
    return make()
