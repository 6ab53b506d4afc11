"""Crystal frameworks: a motif of vertices and edges plus a translation group.

Indices are 0-based in the Python API.  An edge ``EdgeSpec(kappa, tau, delta)``
joins the vertex ``p[kappa]`` in cell 0 to ``p[tau]`` in cell ``delta``.

The translation group may have fewer generators than the ambient dimension
(the strip lives in the plane but is periodic in one direction only); the
number of period vectors is the number of torus variables of the symbol.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .scalar import ExactScalar, as_scalar

__all__ = [
    "CrystalFramework",
    "EdgeSpec",
    "FrameworkError",
    "Motif",
    "TranslationGroup",
    "edge_vector",
    "maxwell_equilibrium",
    "new_framework",
    "place_vertex",
    "supercell",
]

Vector = tuple[ExactScalar, ...]

DISCRETENESS_BOX = 2


class FrameworkError(ValueError):
    """Invalid framework data; ``kind`` names the failed check and ``index``
    the offending vertex/edge/period (0-based) when there is one."""

    def __init__(self, message: str, kind: str, index=None):
        super().__init__(message)
        self.kind = kind
        self.index = index


def _vec(xs) -> Vector:
    out = []
    for x in xs:
        s = as_scalar(x)
        if s is NotImplemented:
            raise TypeError(f"cannot use {x!r} as an exact coordinate")
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class EdgeSpec:
    kappa: int
    tau: int
    delta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(x) for x in self.delta))

    @property
    def reflexive(self) -> bool:
        return self.kappa == self.tau


@dataclass(frozen=True)
class Motif:
    dimension: int
    vertices: tuple[Vector, ...]
    edges: tuple[EdgeSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(_vec(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))


@dataclass(frozen=True)
class TranslationGroup:
    """Rows of ``periods`` are the period vectors a_1..a_r in R^d."""

    periods: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(_vec(a) for a in self.periods))

    @property
    def rank(self) -> int:
        return len(self.periods)

    def translate(self, k) -> Vector:
        """The translation vector k . A."""
        d = len(self.periods[0])
        out = [ExactScalar(0)] * d
        for ki, a in zip(k, self.periods):
            if ki:
                out = [o + ki * x for o, x in zip(out, a)]
        return tuple(out)


@dataclass(frozen=True, eq=True)
class CrystalFramework:
    motif: Motif
    translations: TranslationGroup
    name: str = field(default="", compare=False)

    @property
    def dim(self) -> int:
        return self.motif.dimension

    @property
    def rank(self) -> int:
        """Number of independent periods (torus variables)."""
        return self.translations.rank

    @property
    def n_vertices(self) -> int:
        return len(self.motif.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.motif.edges)

    @property
    def edges(self) -> tuple[EdgeSpec, ...]:
        return self.motif.edges

    @cached_property
    def radicand(self) -> int:
        return _shared_radicand(self.motif, self.translations)

    @cached_property
    def positions(self) -> np.ndarray:
        """Float motif positions, shape (|F_v|, d)."""
        return np.array([[float(x) for x in p] for p in self.motif.vertices], dtype=float)

    @cached_property
    def period_matrix(self) -> np.ndarray:
        """Float period vectors as rows, shape (r, d)."""
        return np.array([[float(x) for x in a] for a in self.translations.periods], dtype=float)

    @cached_property
    def edge_vectors(self) -> tuple[Vector, ...]:
        return tuple(_edge_vector(self, e) for e in self.motif.edges)

    @cached_property
    def edge_vectors_float(self) -> np.ndarray:
        return np.array([[float(x) for x in v] for v in self.edge_vectors], dtype=float).reshape(
            self.n_edges, self.dim
        )

    @property
    def max_offset(self) -> int:
        """Largest |delta_i| over all edges (sup norm)."""
        return max((max((abs(x) for x in e.delta), default=0) for e in self.edges), default=0)


def _shared_radicand(motif: Motif, tg: TranslationGroup) -> int:
    found = 0
    for vec in itertools.chain(motif.vertices, tg.periods):
        for x in vec:
            if x.b:
                if found and x.d != found:
                    raise FrameworkError(
                        f"mixed radicands {found} and {x.d}", kind="radicand"
                    )
                found = x.d
    return found


def _exact_rank(rows: list[list[ExactScalar]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][c].inverse()
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _edge_vector(fw: CrystalFramework, e: EdgeSpec) -> Vector:
    p = fw.motif.vertices
    return _sub(p[e.kappa], _add(p[e.tau], fw.translations.translate(e.delta)))


def new_framework(motif: Motif, translations: TranslationGroup, name: str = "") -> CrystalFramework:
    """Validate and assemble a crystal framework."""
    d = motif.dimension
    if d < 1:
        raise FrameworkError("dimension must be positive", kind="dimension")
    if not motif.vertices:
        raise FrameworkError("motif has no vertices", kind="vertices")
    if not motif.edges:
        raise FrameworkError("motif has no edges", kind="edges")
    for i, p in enumerate(motif.vertices):
        if len(p) != d:
            raise FrameworkError(f"vertex {i} has {len(p)} coordinates, expected {d}", "dimension", i)
    periods = translations.periods
    r = len(periods)
    if not 1 <= r <= d:
        raise FrameworkError(f"need between 1 and {d} period vectors, got {r}", kind="periods")
    for i, a in enumerate(periods):
        if len(a) != d:
            raise FrameworkError(f"period {i} has {len(a)} coordinates, expected {d}", "dimension", i)
    if _exact_rank([list(a) for a in periods]) < r:
        raise FrameworkError("period vectors are linearly dependent (rank-deficient)", "rank")
    nv = len(motif.vertices)
    for i, e in enumerate(motif.edges):
        if not (0 <= e.kappa < nv and 0 <= e.tau < nv):
            raise FrameworkError(f"edge {i} has vertex index out of range", "edge-index", i)
        if len(e.delta) != r:
            raise FrameworkError(f"edge {i} offset has length {len(e.delta)}, expected {r}", "edge-offset", i)
    fw = CrystalFramework(motif, translations, name)
    fw.radicand  # mixed radicands raise here
    for i, v in enumerate(fw.edge_vectors):
        if not any(v):
            raise FrameworkError(f"edge {i} has zero edge vector", "zero-edge", i)
    seen: dict[Vector, tuple[int, tuple[int, ...]]] = {}
    box = range(-DISCRETENESS_BOX, DISCRETENESS_BOX + 1)
    for k in itertools.product(box, repeat=r):
        shift = translations.translate(k)
        for kappa, p in enumerate(motif.vertices):
            q = _add(p, shift)
            if q in seen:
                raise FrameworkError(
                    f"placed vertices {seen[q]} and {(kappa, k)} coincide", "coincident", kappa
                )
            seen[q] = (kappa, k)
    return fw


def place_vertex(fw: CrystalFramework, kappa: int, k) -> Vector:
    """Exact position p_{kappa,k} = p_{kappa,0} + k . A."""
    if not 0 <= kappa < fw.n_vertices:
        raise IndexError(f"vertex index {kappa} out of range")
    k = tuple(k)
    if len(k) != fw.rank:
        raise ValueError(f"cell index must have {fw.rank} components")
    return _add(fw.motif.vertices[kappa], fw.translations.translate(k))


def edge_vector(fw: CrystalFramework, e: int) -> Vector:
    """v_e = p_{kappa,0} - p_{tau,delta}."""
    if not 0 <= e < fw.n_edges:
        raise IndexError(f"edge index {e} out of range")
    return fw.edge_vectors[e]


def maxwell_equilibrium(fw: CrystalFramework) -> bool:
    return fw.n_edges == fw.dim * fw.n_vertices


def supercell(fw: CrystalFramework, m) -> CrystalFramework:
    """Re-describe ``fw`` with periods multiplied by ``m``.

    Vertex ``(kappa, r)`` of the old description becomes new vertex
    ``r_index * |F_v| + kappa`` where ``r_index`` enumerates the box
    prod [0, m_i) lexicographically.
    """
    m = tuple(int(x) for x in m)
    if len(m) != fw.rank or any(x < 1 for x in m):
        raise ValueError(f"supercell multipliers must be {fw.rank} positive integers")
    nv = fw.n_vertices
    cells = list(itertools.product(*(range(x) for x in m)))
    cell_index = {c: i for i, c in enumerate(cells)}
    vertices = []
    for c in cells:
        shift = fw.translations.translate(c)
        for p in fw.motif.vertices:
            vertices.append(_add(p, shift))
    edges = []
    for c in cells:
        for e in fw.edges:
            target = [ci + di for ci, di in zip(c, e.delta)]
            q = tuple(t // mi for t, mi in zip(target, m))
            rem = tuple(t % mi for t, mi in zip(target, m))
            edges.append(EdgeSpec(cell_index[c] * nv + e.kappa, cell_index[rem] * nv + e.tau, q))
    periods = tuple(tuple(mi * x for x in a) for mi, a in zip(m, fw.translations.periods))
    name = f"{fw.name}x{'x'.join(map(str, m))}" if fw.name else ""
    return new_framework(Motif(fw.dim, tuple(vertices), tuple(edges)), TranslationGroup(periods), name)
