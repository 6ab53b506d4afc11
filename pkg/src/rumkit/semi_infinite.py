"""Rooted symbols for frameworks with one period direction.

Removing the columns of supporting vertices and the rows of base edges
gives a square matrix function phi0.  Its determinant, a Laurent polynomial
in one variable, decides which phases carry flexes that keep the support
fixed.  Zeros off the unit circle give one-sided geometric flexes.

Convention: the symbol variable z stands for the conjugate phase, so a zero
r of det phi0 corresponds to the velocity field u~_k = r^-k u.  The printed
"decay ratio" is 1/r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np
import scipy.linalg

from .framework import CrystalFramework
from .laurent import LaurentPoly
from .polynomial import determinant
from .scalar import ExactScalar
from .symbol import SymbolMatrix, build_symbol

__all__ = [
    "RootInfo",
    "RootReport",
    "RootedSymbol",
    "RootedVerdict",
    "geometric_flex_field",
    "polynomial_roots",
    "root_analysis",
    "rooted_rigidity_verdict",
    "rooted_symbol",
]

ON_CIRCLE_TOL = 1e-9
CLUSTER_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class RootedSymbol:
    framework: CrystalFramework
    base: SymbolMatrix
    removed_vertices: tuple[int, ...]
    removed_edges: tuple[int, ...]
    matrix: SymbolMatrix
    kept_vertices: tuple[int, ...]

    @property
    def shape(self):
        return self.matrix.shape


def rooted_symbol(fw: CrystalFramework, removed_vertices=(), removed_edges=()) -> RootedSymbol:
    """Delete the d columns of each removed vertex and the listed edge rows
    (0-based indices)."""
    rv, re_ = tuple(removed_vertices), tuple(removed_edges)
    if len(set(rv)) != len(rv) or len(set(re_)) != len(re_):
        raise ValueError("removed indices must be distinct")
    for v in rv:
        if not 0 <= v < fw.n_vertices:
            raise IndexError(f"vertex index {v} out of range")
    for e in re_:
        if not 0 <= e < fw.n_edges:
            raise IndexError(f"edge index {e} out of range")
    phi = build_symbol(fw)
    d = fw.dim
    kept_v = tuple(v for v in range(fw.n_vertices) if v not in rv)
    rows = [e for e in range(fw.n_edges) if e not in re_]
    cols = [v * d + s for v in kept_v for s in range(d)]
    if not rows or not cols:
        raise ValueError("rooted symbol would be empty")
    return RootedSymbol(fw, phi, rv, re_, phi.submatrix(rows, cols), kept_v)


@dataclass(frozen=True)
class RootInfo:
    value: complex
    multiplicity: int
    location: str  # "on-circle" | "inside" | "outside"

    @property
    def decay_ratio(self) -> complex | None:
        """Ratio between consecutive cells of the associated flex, 1/root."""
        return None if self.location == "on-circle" else 1 / self.value

    @property
    def phase(self) -> complex:
        """Phase omega of the flex u~_k = omega^k u."""
        return 1 / self.value


@dataclass(frozen=True, eq=False)
class RootReport:
    determinant: LaurentPoly
    shift: int
    cleared: LaurentPoly
    normalized: LaurentPoly
    zero_roots: int
    roots: list[RootInfo] = field(default_factory=list)
    tol: float = ON_CIRCLE_TOL

    @property
    def identically_zero(self) -> bool:
        return self.determinant.is_zero()

    @property
    def degree(self) -> int:
        return max(e[0] for e in self.cleared.terms) if self.cleared else 0


def _primitive(q: LaurentPoly) -> LaurentPoly:
    """Scale to integer coefficients with gcd 1 and positive leading term;
    monic if some coefficient is irrational."""
    _, lc = q.leading_term()
    coeffs = list(q.terms.values())
    if all(isinstance(c, ExactScalar) and c.is_rational for c in coeffs):
        den = 1
        for c in coeffs:
            den = den * c.a.denominator // gcd(den, c.a.denominator)
        g = 0
        for c in coeffs:
            g = gcd(g, int(c.a * den))
        scale = Fraction(den, g)
        if lc.sign() < 0:
            scale = -scale
        return q * ExactScalar(scale)
    inv = lc.inverse() if isinstance(lc, ExactScalar) else 1.0 / lc
    return q * inv


def polynomial_roots(coeffs) -> np.ndarray:
    """Roots of sum coeffs[i] z^(n-i) (highest degree first) from the
    eigenvalues of the balanced companion matrix."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "f")
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    C = np.zeros((n, n), dtype=complex)
    C[0, :] = -c[1:] / c[0]
    C[np.arange(1, n), np.arange(n - 1)] = 1.0
    B, _ = scipy.linalg.matrix_balance(C, permute=False)
    roots = np.linalg.eigvals(B)
    if np.all(c.imag == 0):
        roots = np.where(np.abs(roots.imag) <= 1e-14 * np.maximum(1, np.abs(roots)), roots.real, roots)
    return roots


def _cluster(roots: np.ndarray) -> list[tuple[complex, int]]:
    out: list[list[complex]] = []
    for r in sorted(roots, key=lambda x: (x.real, x.imag)):
        for group in out:
            c = np.mean(group)
            if abs(r - c) <= CLUSTER_TOL * max(1.0, abs(c)):
                group.append(r)
                break
        else:
            out.append([r])
    return [(complex(np.mean(g)), len(g)) for g in out]


def root_analysis(rs: RootedSymbol, tol: float = ON_CIRCLE_TOL) -> RootReport:
    phi0 = rs.matrix
    if not phi0.is_square:
        raise ValueError(f"rooted symbol must be square, got {phi0.shape}")
    if phi0.nvars != 1:
        raise ValueError("root analysis needs exactly one period direction")
    det = determinant(phi0)
    if det.is_zero():
        return RootReport(det, 0, det, det, 0, [], tol)
    lo = det.min_exponents()[0]
    s = max(0, -lo)
    cleared = det.shift((s,))
    zero_roots = cleared.min_exponents()[0]
    normalized = _primitive(cleared)
    reduced = cleared.shift((-zero_roots,))
    deg = reduced.max_exponents()[0]
    coeffs = [complex(reduced.coefficient((deg - i,))) for i in range(deg + 1)]
    roots = [
        RootInfo(_tidy(v), mult, _location(v, tol))
        for v, mult in _cluster(polynomial_roots(coeffs))
    ]
    return RootReport(det, s, cleared, normalized, zero_roots, roots, tol)


def _tidy(v: complex) -> complex:
    return complex(v.real, 0.0) if abs(v.imag) <= 1e-14 * max(1.0, abs(v)) else v


def _location(v: complex, tol: float) -> str:
    m = abs(v)
    if abs(m - 1) <= tol:
        return "on-circle"
    return "inside" if m < 1 else "outside"


@dataclass(frozen=True)
class GeometricMode:
    ratio: complex
    multiplicity: int
    decays_toward: str  # "+inf" or "-inf"


@dataclass(frozen=True, eq=False)
class RootedVerdict:
    degenerate: bool
    phase_periodic_flex_exists: bool
    flex_phases: list[complex]
    square_summable_rooted_flex: bool
    geometric_modes: list[GeometricMode]

    def summary(self) -> str:
        if self.degenerate:
            return "degenerate: flexes at every phase"
        lines = [f"phase-periodic flex: {'yes' if self.phase_periodic_flex_exists else 'no'}"]
        for w in self.flex_phases:
            lines.append(f"  flex phase {_fmt(w)}")
        lines.append(f"square-summable rooted flex: {'yes' if self.square_summable_rooted_flex else 'no'}")
        for g in self.geometric_modes:
            lines.append(
                f"geometric flex candidate: decay ratio {_fmt(g.ratio)}"
                f" (multiplicity {g.multiplicity}), decays toward {g.decays_toward} cells"
            )
        return "\n".join(lines)


def rooted_rigidity_verdict(report: RootReport) -> RootedVerdict:
    if report.identically_zero:
        return RootedVerdict(True, True, [], True, [])
    on = [r for r in report.roots if r.location == "on-circle"]
    modes = []
    for r in report.roots:
        if r.location == "on-circle":
            continue
        ratio = r.decay_ratio
        modes.append(GeometricMode(ratio, r.multiplicity, "+inf" if abs(ratio) < 1 else "-inf"))
    # a nonzero determinant vanishes on a null set of the circle, so the
    # multiplication operator has trivial kernel
    return RootedVerdict(False, bool(on), [r.phase for r in on], False, modes)


def geometric_flex_field(rs: RootedSymbol, root: complex, cells) -> dict:
    """Velocity field u~_{kappa,k} = root^-k u_kappa on the given cells, with
    u in the kernel of phi0(root) and zero velocity on removed vertices."""
    A = rs.matrix.evaluate([root])
    _, _, vh = np.linalg.svd(A)
    x = vh[-1].conj()
    d = rs.framework.dim
    full = np.zeros((rs.framework.n_vertices, d), dtype=complex)
    for i, v in enumerate(rs.kept_vertices):
        full[v] = x[i * d : (i + 1) * d]
    ratio = 1 / complex(root)
    field = {}
    for k in cells:
        k = (k,) if isinstance(k, (int, np.integer)) else tuple(k)
        for v in range(rs.framework.n_vertices):
            field[(v, k)] = ratio ** k[0] * full[v]
    return field


def _fmt(v: complex) -> str:
    v = complex(v)
    if v.imag == 0:
        return f"{v.real:.15g}"
    return f"{v.real:.15g}{v.imag:+.15g}j"
