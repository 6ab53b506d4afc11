"""The matrix-valued symbol function of a crystal framework.

Rows follow motif edge order; columns are ``(kappa, sigma)`` with the vertex
index major and the coordinate minor.  The conjugate variable on the torus
is stored as the exponent -1, so the entry for the far endpoint of an edge
with offset ``delta`` is ``-(v_e)_sigma * z^-delta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .framework import CrystalFramework
from .laurent import LaurentPoly, variable_names

__all__ = ["SymbolMatrix", "build_symbol", "evaluate_symbol"]


@dataclass(frozen=True, eq=False)
class SymbolMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    nvars: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, SymbolMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.entries == other.entries

    __hash__ = None

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> SymbolMatrix:
        return SymbolMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows), self.nvars)

    def map(self, f) -> SymbolMatrix:
        return SymbolMatrix(tuple(tuple(f(x) for x in row) for row in self.entries), self.nvars)

    def to_float(self) -> SymbolMatrix:
        return self.map(LaurentPoly.to_float)

    def transpose(self) -> SymbolMatrix:
        r, c = self.shape
        return SymbolMatrix(tuple(tuple(self.entries[i][j] for i in range(r)) for j in range(c)), self.nvars)

    @cached_property
    def _compiled(self):
        """Flat term list: row, col, float coefficient, exponent."""
        rows, cols, coeffs, exps = [], [], [], []
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                for e, c in p.terms.items():
                    rows.append(i)
                    cols.append(j)
                    coeffs.append(complex(c))
                    exps.append(e)
        exps_arr = np.array(exps, dtype=int).reshape(-1, self.nvars)
        return np.array(rows, dtype=int), np.array(cols, dtype=int), np.array(coeffs), exps_arr

    def evaluate(self, omega: Sequence[complex]) -> np.ndarray:
        return self.evaluate_many(np.asarray(omega, dtype=complex).reshape(1, self.nvars))[0]

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at an array of points of shape (P, nvars) -> (P, rows, cols)."""
        points = np.asarray(points, dtype=complex).reshape(-1, self.nvars)
        if np.any(points == 0):
            raise ValueError("symbol evaluated at a point with a zero coordinate")
        rows, cols, coeffs, exps = self._compiled
        out = np.zeros((points.shape[0],) + self.shape, dtype=complex)
        if len(coeffs) == 0:
            return out
        uniq, inverse = np.unique(exps, axis=0, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        monos = np.ones((points.shape[0], len(uniq)), dtype=complex)
        for v in range(self.nvars):
            for k in np.unique(uniq[:, v]):
                if k == 0:
                    continue
                sel = uniq[:, v] == k
                monos[:, sel] *= _int_power(points[:, v], int(k))[:, None]
        vals = monos[:, inverse] * coeffs[None, :]
        np.add.at(out, (slice(None), rows, cols), vals)
        return out

    def to_str(self, compact: bool = True) -> str:
        names = variable_names(self.nvars)
        cells = [[p.to_str(names, compact=compact) for p in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)

    def __str__(self):
        return self.to_str()


def _int_power(x: np.ndarray, k: int) -> np.ndarray:
    """x**k by repeated squaring; exact for points like 1 and -1."""
    if k < 0:
        return 1.0 / _int_power(x, -k)
    result = np.ones_like(x)
    base = x.copy()
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def build_symbol(fw: CrystalFramework, backend: str = "exact") -> SymbolMatrix:
    """Symbol matrix of ``fw`` with exact (default) or float coefficients."""
    if backend not in ("exact", "float"):
        raise ValueError(f"unknown backend {backend!r}")
    d, r = fw.dim, fw.rank
    ncols = d * fw.n_vertices
    zero = LaurentPoly.zero(r)
    one = (0,) * r
    rows = []
    for e, v in zip(fw.edges, fw.edge_vectors):
        row = [zero] * ncols
        neg = tuple(-x for x in e.delta)
        for s in range(d):
            c = v[s]
            if not c:
                continue
            if backend == "float":
                c = float(c)
            if e.reflexive:
                row[e.kappa * d + s] = LaurentPoly({one: c, neg: -c}, r)
            else:
                row[e.kappa * d + s] = LaurentPoly({one: c}, r)
                row[e.tau * d + s] = LaurentPoly({neg: -c}, r)
        rows.append(tuple(row))
    return SymbolMatrix(tuple(rows), r)


def evaluate_symbol(phi: SymbolMatrix, omega: Sequence[complex]) -> np.ndarray:
    """Complex matrix phi(omega); every coordinate of omega must be nonzero."""
    omega = np.asarray(omega, dtype=complex).reshape(-1)
    if omega.shape[0] != phi.nvars:
        raise ValueError(f"expected a point with {phi.nvars} coordinates")
    if np.any(omega == 0):
        raise ValueError("symbol evaluated at a point with a zero coordinate")
    return phi.evaluate(omega)
