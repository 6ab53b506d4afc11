"""Finite-patch and periodic rigidity matrices, flexes and wave motion.

Vertices of the infinite framework are labelled ``(kappa, k)`` with ``k`` a
cell index in Z^r.  Rigidity-matrix columns are ``(kappa, k, sigma)``, cell
major, then vertex, then coordinate.  The row of edge ``e`` placed in cell
``k`` carries ``v_e`` on the columns of ``(kappa, k)`` and ``-v_e`` on those
of ``(tau, k + delta)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np
import scipy.linalg

from .framework import CrystalFramework
from .symbol import build_symbol

__all__ = [
    "Box",
    "FixedBoundary",
    "FlexCheck",
    "Free",
    "PatchRigidityMatrix",
    "Periodic",
    "PhasePeriodic",
    "fourier_block_check",
    "flex_space",
    "flex_to_csv",
    "is_infinitesimal_flex",
    "local_flex_search",
    "make_box",
    "patch_rigidity_matrix",
    "phase_residuals",
    "wave_motion_defect",
]

KERNEL_TOL = 1e-10

Cell = tuple[int, ...]
Box = tuple[tuple[int, int], ...]
VelocityField = dict  # (kappa, cell) -> velocity vector


@dataclass(frozen=True)
class Free:
    """Edges leaving the patch are dropped."""


@dataclass(frozen=True)
class FixedBoundary:
    """Vertices in the outer ring of ``width`` cells are pinned."""

    width: int


@dataclass(frozen=True)
class Periodic:
    n: Union[int, tuple[int, ...]]


@dataclass(frozen=True)
class PhasePeriodic:
    """Velocities satisfy u_{kappa, k + N q} = omega^q u_{kappa, k}."""

    omega: tuple[complex, ...]
    n: Union[int, tuple[int, ...]] = 1


BoundaryCondition = Union[Free, FixedBoundary, Periodic, PhasePeriodic]


@dataclass(frozen=True, eq=False)
class PatchRigidityMatrix:
    matrix: np.ndarray
    row_labels: list[tuple[int, Cell]]
    col_labels: list[tuple[int, Cell, int]]

    @property
    def shape(self):
        return self.matrix.shape


def make_box(box, r: int) -> Box:
    """Normalize ``n`` / ``(n1, .., nr)`` / ``((lo, hi), ..)`` to a box."""
    if isinstance(box, (int, np.integer)):
        out = tuple((0, int(box)) for _ in range(r))
    else:
        box = tuple(box)
        if len(box) != r:
            raise ValueError(f"box must have {r} sides")
        out = tuple((0, int(b)) if isinstance(b, (int, np.integer)) else (int(b[0]), int(b[1])) for b in box)
    if any(hi <= lo for lo, hi in out):
        raise ValueError(f"empty box {out}")
    return out


def _cells(box: Box) -> list[Cell]:
    return list(itertools.product(*(range(lo, hi) for lo, hi in box)))


def _inside(k: Sequence[int], box: Box) -> bool:
    return all(lo <= x < hi for x, (lo, hi) in zip(k, box))


def _sizes(n, r: int) -> tuple[int, ...]:
    if isinstance(n, (int, np.integer)):
        return (int(n),) * r
    n = tuple(int(x) for x in n)
    if len(n) != r:
        raise ValueError(f"supercell size needs {r} components")
    return n


def _phase(omega: Sequence[complex], q: Sequence[int]) -> complex:
    out = 1 + 0j
    for w, k in zip(omega, q):
        if k:
            out *= complex(w) ** k
    return out


def patch_rigidity_matrix(fw: CrystalFramework, box, bc: BoundaryCondition = Free()) -> PatchRigidityMatrix:
    r, d = fw.rank, fw.dim
    box = make_box(box, r)
    V = fw.edge_vectors_float
    cells = _cells(box)
    complex_entries = isinstance(bc, PhasePeriodic)

    if isinstance(bc, (Periodic, PhasePeriodic)):
        sizes = _sizes(bc.n, r)
        if box != tuple((0, n) for n in sizes):
            raise ValueError(f"periodic boundary needs box [0,N)^r with N={sizes}, got {box}")
    if isinstance(bc, FixedBoundary):
        if bc.width < fw.max_offset:
            raise ValueError(f"ring width {bc.width} does not cover edge offset {fw.max_offset}")
        w = bc.width
        live = [k for k in cells if all(lo + w <= x < hi - w for x, (lo, hi) in zip(k, box))]
    else:
        live = cells
    live_set = set(live)
    col_labels = [(kappa, k, s) for k in live for kappa in range(fw.n_vertices) for s in range(d)]
    col_base = {(kappa, k): (i * fw.n_vertices + kappa) * d for i, k in enumerate(live) for kappa in range(fw.n_vertices)}

    entries: list[tuple[int, int, complex]] = []
    row_labels = []
    for k in cells:
        for ei, e in enumerate(fw.edges):
            far = tuple(a + b for a, b in zip(k, e.delta))
            if isinstance(bc, (Periodic, PhasePeriodic)):
                q = tuple(x // n for x, n in zip(far, sizes))
                far_cell = tuple(x % n for x, n in zip(far, sizes))
                factor = _phase(bc.omega, q) if isinstance(bc, PhasePeriodic) else 1.0
            else:
                if not _inside(far, box):
                    continue
                if isinstance(bc, FixedBoundary) and k not in live_set and far not in live_set:
                    continue
                far_cell, factor = far, 1.0
            row = len(row_labels)
            row_labels.append((ei, k))
            near_col = col_base.get((e.kappa, k))
            far_col = col_base.get((e.tau, far_cell))
            for s in range(d):
                if near_col is not None:
                    entries.append((row, near_col + s, V[ei, s]))
                if far_col is not None:
                    entries.append((row, far_col + s, -V[ei, s] * factor))
    M = np.zeros((len(row_labels), len(col_labels)), dtype=complex if complex_entries else float)
    for i, j, x in entries:
        M[i, j] += x
    return PatchRigidityMatrix(M, row_labels, col_labels)


def flex_space(M, tol: float = KERNEL_TOL) -> np.ndarray:
    """Orthonormal kernel basis as columns; singular values <= tol * sigma_max
    count as zero."""
    A = M.matrix if isinstance(M, PatchRigidityMatrix) else np.asarray(M)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=A.dtype)
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return vh[rank:].conj().T


class FlexCheck(NamedTuple):
    is_flex: bool
    residual: float


def _incident_edges(fw: CrystalFramework, support) -> set[tuple[int, Cell]]:
    out = set()
    for kappa, k in support:
        for ei, e in enumerate(fw.edges):
            if e.kappa == kappa:
                out.add((ei, k))
            if e.tau == kappa:
                out.add((ei, tuple(a - b for a, b in zip(k, e.delta))))
    return out


def is_infinitesimal_flex(fw: CrystalFramework, u: VelocityField, tol: float = KERNEL_TOL, box=None) -> FlexCheck:
    """Check <v_e, u_a - u_b> = 0 on every edge meeting the support of ``u``.

    Missing vertices have zero velocity.  With ``box`` only edges whose two
    endpoints lie in the box are checked (useful for fields that are really
    defined on the whole framework, such as translations).
    """
    u = {(kappa, tuple(k)): np.asarray(v) for (kappa, k), v in u.items()}
    if box is not None:
        box = make_box(box, fw.rank)
    V = fw.edge_vectors_float
    zero = np.zeros(fw.dim)
    worst = 0.0
    for ei, k in _incident_edges(fw, u):
        e = fw.edges[ei]
        far = tuple(a + b for a, b in zip(k, e.delta))
        if box is not None and not (_inside(k, box) and _inside(far, box)):
            continue
        diff = u.get((e.kappa, k), zero) - u.get((e.tau, far), zero)
        worst = max(worst, float(abs(V[ei] @ diff)))
    return FlexCheck(worst <= tol, worst)


def kernel_vector_to_field(M: PatchRigidityMatrix, x: np.ndarray, d: int) -> VelocityField:
    field: VelocityField = {}
    for c in range(0, len(M.col_labels), d):
        kappa, k, _ = M.col_labels[c]
        field[(kappa, k)] = np.array(x[c : c + d])
    return field


def _sparsest_kernel_vector(K: np.ndarray) -> np.ndarray:
    """Re-express the kernel basis so each vector is 1 on its own pivot
    coordinate and 0 on the others; return the one with smallest support."""
    m = K.shape[1]
    if m == 1:
        return K[:, 0]
    _, _, piv = scipy.linalg.qr(K.T, pivoting=True)
    B = K @ np.linalg.inv(K[piv[:m], :])
    B = np.where(np.abs(B) < 1e-10 * np.max(np.abs(B)), 0.0, B)
    support = np.count_nonzero(B, axis=0)
    return B[:, int(np.argmin(support))]


def local_flex_search(fw: CrystalFramework, box, tol: float = KERNEL_TOL) -> VelocityField | None:
    """Look for a flex supported inside ``box`` with a pinned boundary ring.

    Returns a unit-norm velocity field (zero velocities omitted) or None.
    """
    box = make_box(box, fw.rank)
    w = fw.max_offset
    for lo, hi in box:
        if hi - lo <= 2 * w:
            raise ValueError(f"box side {hi - lo} must exceed twice the edge offset {w}")
    M = patch_rigidity_matrix(fw, box, FixedBoundary(w))
    if M.shape[1] == 0:
        return None
    K = flex_space(M, tol)
    if K.shape[1] == 0:
        return None
    x = _sparsest_kernel_vector(np.real_if_close(K))
    x = np.where(np.abs(x) < 1e-12 * np.max(np.abs(x)), 0.0, x)
    x = x / np.linalg.norm(x)
    if x[np.argmax(np.abs(x))] < 0:
        x = -x
    field = kernel_vector_to_field(M, x, fw.dim)
    return {key: v for key, v in field.items() if np.any(v != 0)}


def phase_residuals(fw: CrystalFramework, omega: Sequence[complex], u: np.ndarray) -> np.ndarray:
    """Edge residuals of the phase-periodic field u~_{kappa,k} = omega^k u_kappa,
    computed directly from the flex equations for each motif edge in cell 0."""
    d = fw.dim
    u = np.asarray(u, dtype=complex).reshape(fw.n_vertices, d)
    V = fw.edge_vectors_float
    out = np.empty(fw.n_edges, dtype=complex)
    for ei, e in enumerate(fw.edges):
        out[ei] = V[ei] @ u[e.kappa] - V[ei] @ (_phase(omega, e.delta) * u[e.tau])
    return out


def wave_motion_defect(
    fw: CrystalFramework,
    omega: Sequence[complex],
    u: np.ndarray,
    alpha: float,
    T: float = 1.0,
    box=4,
    amplitude: float = 1.0,
    samples: int = 64,
) -> float:
    """Largest bar-length change under the wave motion

        p_{kappa,k}(t) = p_{kappa,k} + amplitude * Re(u_kappa omega^k e^{i alpha t})

    over ``samples`` times in [0, T] and all edges inside the patch, measured
    against the lengths at t = 0.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    box = make_box(box, fw.rank)
    u = np.asarray(u, dtype=complex).reshape(fw.n_vertices, fw.dim)
    V = fw.edge_vectors_float
    vecs, dus = [], []
    for k in _cells(box):
        for ei, e in enumerate(fw.edges):
            far = tuple(a + b for a, b in zip(k, e.delta))
            if not _inside(far, box):
                continue
            vecs.append(V[ei])
            dus.append(_phase(omega, k) * u[e.kappa] - _phase(omega, far) * u[e.tau])
    if not vecs:
        return 0.0
    vecs = np.array(vecs)
    dus = np.array(dus)
    t = np.linspace(0.0, T, max(samples, 2))
    rot = np.exp(1j * alpha * t)
    # (time, edge, coord)
    disp = amplitude * np.real(dus[None, :, :] * rot[:, None, None])
    lengths = np.linalg.norm(vecs[None, :, :] + disp, axis=2)
    return float(np.max(np.abs(lengths - lengths[0][None, :])))


def fourier_singular_values(fw: CrystalFramework, n) -> tuple[np.ndarray, np.ndarray]:
    """Sorted singular values of the Periodic(n) matrix and of the union of
    symbol blocks at the n-th roots of unity."""
    r = fw.rank
    sizes = _sizes(n, r)
    M = patch_rigidity_matrix(fw, sizes, Periodic(sizes)).matrix
    big = np.linalg.svd(M, compute_uv=False)
    phi = build_symbol(fw)
    grids = [np.exp(2j * np.pi * np.arange(m) / m) for m in sizes]
    pts = np.array(list(itertools.product(*grids))).reshape(-1, r)
    blocks = np.linalg.svd(phi.evaluate_many(np.conj(pts)), compute_uv=False)
    return np.sort(big), np.sort(blocks.reshape(-1))


def fourier_block_check(fw: CrystalFramework, n, tol: float = 1e-9) -> bool:
    big, small = fourier_singular_values(fw, n)
    return big.shape == small.shape and bool(np.all(np.abs(big - small) <= tol))


def flex_to_csv(field: VelocityField) -> str:
    """CSV with header ``kappa,k1..kr,v1..vd``; kappa is 1-based."""
    if not field:
        return ""
    (_, k0), v0 = next(iter(field.items()))
    lines = [",".join(["kappa", *(f"k{i + 1}" for i in range(len(k0))), *(f"v{i + 1}" for i in range(len(v0)))])]
    for (kappa, k), v in sorted(field.items(), key=lambda t: (t[0][1], t[0][0])):
        vals = [f"{complex(x).real:.17g}" if complex(x).imag == 0 else f"{complex(x)!r}" for x in v]
        lines.append(",".join([str(kappa + 1), *map(str, k), *vals]))
    return "\n".join(lines) + "\n"
