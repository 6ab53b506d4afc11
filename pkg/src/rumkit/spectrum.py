"""Sampling the RUM spectrum on the torus.

The symbol is evaluated at the conjugate phase: a velocity field
u~_{kappa,k} = omega^k u_kappa is a flex exactly when phi(conj(omega)) u = 0.

Two notions of deficiency are exposed.  ``"rows"`` asks for rank below the
number of edges (the variety description), ``"kernel"`` for rank below the
number of velocity coordinates (existence of a nonzero wave flex).  They
coincide for frameworks in Maxwell counting equilibrium.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .framework import CrystalFramework, maxwell_equilibrium, supercell
from .polynomial import DEFAULT_SEED, is_identically_zero, random_torus_points
from .symbol import SymbolMatrix, build_symbol

__all__ = [
    "RumDimensionEstimate",
    "SpectrumGrid",
    "SpectrumReport",
    "SquareSummableResult",
    "SupercellCheck",
    "rum_dimension_estimate",
    "rum_points",
    "sigma_min_field",
    "square_summable_flex_exists",
    "supercell_spectrum_check",
    "supercell_spectrum_report",
    "wave_flex_at",
]

MODES = ("rows", "kernel")
DEFAULT_THRESHOLD = 1e-8
CHUNK = 4096


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def _sigma_pick(s: np.ndarray, shape: tuple[int, int], mode: str) -> np.ndarray:
    """The |F_e|-th (rows) or d|F_v|-th (kernel) singular value, or 0 when
    the matrix has fewer singular values than that."""
    rows, cols = shape
    want = rows if mode == "rows" else cols
    if want > min(rows, cols):
        return np.zeros(s.shape[0])
    return s[:, want - 1]


def singular_values_at(phi: SymbolMatrix, phases: np.ndarray) -> np.ndarray:
    """Descending singular values of phi(conj(omega)) for each phase, (P, m)."""
    phases = np.asarray(phases, dtype=complex).reshape(-1, phi.nvars)
    out = []
    for start in range(0, phases.shape[0], CHUNK):
        mats = phi.evaluate_many(np.conj(phases[start : start + CHUNK]))
        out.append(np.linalg.svd(mats, compute_uv=False))
    return np.concatenate(out, axis=0) if out else np.zeros((0, min(phi.shape)))


def grid_phases(n: int, r: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    idx = list(itertools.product(range(n), repeat=r))
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    # exact values at the four axis points keep lines like z = 1 exactly singular
    roots[0] = 1.0
    if n % 2 == 0:
        roots[n // 2] = -1.0
    if n % 4 == 0:
        roots[n // 4] = 1j
        roots[3 * n // 4] = -1j
    phases = np.array([[roots[j] for j in jj] for jj in idx], dtype=complex).reshape(-1, r)
    return idx, phases


@dataclass(frozen=True, eq=False)
class SpectrumGrid:
    n: int
    mode: str
    values: np.ndarray  # sigma_min, shape (n,)*r
    sigma_max: np.ndarray

    @property
    def rank(self) -> int:
        return self.values.ndim


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    threshold: float
    mode: str
    n: int
    points: list[tuple[int, ...]]
    wave_vectors: np.ndarray  # k in [0,1)^r with omega_j = exp(2 pi i k_j)

    def __len__(self):
        return len(self.points)


def sigma_min_field(fw: CrystalFramework, n: int, mode: str = "kernel", phi: SymbolMatrix | None = None) -> SpectrumGrid:
    """Smallest relevant singular value at every n-th-root-of-unity phase."""
    _check_mode(mode)
    if n < 1:
        raise ValueError("resolution must be positive")
    phi = phi if phi is not None else build_symbol(fw)
    r = phi.nvars
    _, phases = grid_phases(n, r)
    s = singular_values_at(phi, phases)
    shape = (n,) * r
    smin = _sigma_pick(s, phi.shape, mode).reshape(shape)
    smax = (s[:, 0] if s.shape[1] else np.zeros(s.shape[0])).reshape(shape)
    return SpectrumGrid(n, mode, smin, smax)


def rum_points(grid: SpectrumGrid, threshold: float = DEFAULT_THRESHOLD) -> SpectrumReport:
    """Grid points with sigma_min <= threshold * max(sigma_max, 1)."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    mask = grid.values <= threshold * np.maximum(grid.sigma_max, 1.0)
    pts = [tuple(int(x) for x in p) for p in np.argwhere(mask)]
    wv = np.array(pts, dtype=float).reshape(-1, grid.rank) / grid.n
    return SpectrumReport(threshold, grid.mode, grid.n, pts, wv)


def wave_flex_at(fw: CrystalFramework, omega, phi: SymbolMatrix | None = None) -> tuple[np.ndarray, float]:
    """Unit vector u minimizing |phi(conj(omega)) u| and that minimum.

    The global phase is fixed so the largest-magnitude component is real and
    positive; a flex of a real-valued block then comes out real.
    """
    phi = phi if phi is not None else build_symbol(fw)
    omega = np.asarray(omega, dtype=complex).reshape(-1)
    if not np.allclose(np.abs(omega), 1.0, rtol=0, atol=1e-12):
        raise ValueError("phase must lie on the torus")
    A = phi.evaluate(np.conj(omega))
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    rows, cols = A.shape
    smin = float(s[cols - 1]) if cols <= rows else 0.0
    u = vh[-1].conj()
    j = int(np.argmax(np.abs(u)))
    u = u * (abs(u[j]) / u[j])
    return u, smin


@dataclass(frozen=True)
class RumDimensionEstimate:
    resolutions: tuple[int, ...]
    counts: tuple[int, ...]
    slope: float
    dimension: int


def rum_dimension_estimate(
    fw: CrystalFramework,
    resolutions=(16, 32, 64),
    threshold: float = DEFAULT_THRESHOLD,
    mode: str = "kernel",
) -> RumDimensionEstimate:
    """Box-counting style estimate: slope of log(count) against log(N)."""
    resolutions = tuple(int(n) for n in resolutions)
    if len(resolutions) < 2:
        raise ValueError("need at least two resolutions")
    phi = build_symbol(fw)
    counts = tuple(len(rum_points(sigma_min_field(fw, n, mode, phi), threshold)) for n in resolutions)
    usable = [(n, c) for n, c in zip(resolutions, counts) if c > 0]
    if len(usable) < 2:
        return RumDimensionEstimate(resolutions, counts, 0.0, 0)
    x = np.log([n for n, _ in usable])
    y = np.log([c for _, c in usable])
    slope = float(np.polyfit(x, y, 1)[0])
    dim = int(min(max(round(slope), 0), phi.nvars))
    return RumDimensionEstimate(resolutions, counts, slope, dim)


@dataclass(frozen=True)
class SupercellCheck:
    ok: bool
    checked: int
    failures: list[tuple[int, ...]] = field(default_factory=list)
    reverse_checked: int = 0
    reverse_missing: int = 0

    def __bool__(self):
        return self.ok


def supercell_spectrum_report(
    fw: CrystalFramework,
    m,
    n: int,
    threshold: float = DEFAULT_THRESHOLD,
    mode: str = "kernel",
) -> SupercellCheck:
    """Forward check of the covering map omega -> omega^m on spectra.

    Every sampled spectrum point of ``fw`` must map to a point where the
    supercell symbol is deficient.  Reverse inclusion (supercell spectrum
    points having some preimage in the old spectrum) is counted for
    information only.
    """
    m = tuple(int(x) for x in m)
    big = supercell(fw, m)
    phi, phi_big = build_symbol(fw), build_symbol(big)
    report = rum_points(sigma_min_field(fw, n, mode, phi), threshold)
    idx, phases = grid_phases(n, phi.nvars)
    lookup = dict(zip(idx, phases))
    images = np.array(
        [[complex(w) ** mj for w, mj in zip(lookup[p], m)] for p in report.points], dtype=complex
    ).reshape(-1, phi.nvars)
    failures = []
    if len(images):
        s = singular_values_at(phi_big, images)
        smin = _sigma_pick(s, phi_big.shape, mode)
        bad = smin > threshold * np.maximum(s[:, 0], 1.0)
        failures = [p for p, b in zip(report.points, bad) if b]

    # reverse: supercell spectrum points vs preimages on the finer grid
    big_report = rum_points(sigma_min_field(big, n, mode, phi_big), threshold)
    missing = 0
    for p in big_report.points:
        # preimages of exp(2 pi i p/n) under z -> z^m are exp(2 pi i (p + n t)/(n m))
        roots = [np.exp(2j * np.pi * (pj + n * np.arange(mj)) / (n * mj)) for pj, mj in zip(p, m)]
        cands = np.array(list(itertools.product(*roots)))
        s = singular_values_at(phi, cands)
        smin = _sigma_pick(s, phi.shape, mode)
        if not np.any(smin <= threshold * np.maximum(s[:, 0], 1.0)):
            missing += 1
    return SupercellCheck(not failures, len(report.points), failures, len(big_report.points), missing)


def supercell_spectrum_check(fw: CrystalFramework, m, n: int, threshold: float = DEFAULT_THRESHOLD, mode: str = "kernel") -> bool:
    return supercell_spectrum_report(fw, m, n, threshold, mode).ok


@dataclass(frozen=True)
class SquareSummableResult:
    exists: bool
    generic_rank: int
    columns: int
    method: str
    det_identically_zero: bool | None = None

    def __bool__(self):
        return self.exists

    @property
    def consistent(self) -> bool:
        return self.det_identically_zero is None or self.det_identically_zero == self.exists


def square_summable_flex_exists(
    fw: CrystalFramework,
    trials: int = 50,
    seed: int | None = DEFAULT_SEED,
    tol: float = 1e-10,
    cross_check: bool = True,
) -> SquareSummableResult:
    """A square-summable flex exists iff the symbol has reduced column rank on
    a set of positive measure; for analytic entries that is the generic
    rank, estimated as the maximum rank over random torus points."""
    phi = build_symbol(fw)
    pts = random_torus_points(trials, phi.nvars, seed)
    s = singular_values_at(phi, pts)
    ranks = np.sum(s > tol * np.maximum(s[:, :1], 1e-300), axis=1)
    generic = int(ranks.max()) if len(ranks) else 0
    cols = phi.shape[1]
    det_zero = None
    method = f"generic column rank over {trials} random torus points"
    if cross_check and maxwell_equilibrium(fw):
        det_zero = is_identically_zero(phi, "exact")
        method += "; exact determinant cross-check"
    return SquareSummableResult(generic < cols, generic, cols, method, det_zero)
