"""Exact determinants of symbol matrices and crystal polynomials."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly
from .scalar import ExactScalar
from .symbol import SymbolMatrix

__all__ = [
    "CrystalPolynomial",
    "bareiss_determinant",
    "cofactor_determinant",
    "crystal_polynomial",
    "determinant",
    "is_identically_zero",
    "proportional_to",
    "random_torus_points",
]

COFACTOR_MAX = 8
ZERO_TOL = 1e-10
DEFAULT_SEED = 20110701


def _require_square(phi: SymbolMatrix):
    r, c = phi.shape
    if r != c:
        raise ValueError(f"determinant needs a square matrix, got {r}x{c}")


def cofactor_determinant(phi: SymbolMatrix) -> LaurentPoly:
    """Laplace expansion along rows, memoized on the set of unused columns.

    Division-free, so it also works for float coefficients.
    """
    _require_square(phi)
    n = phi.shape[0]
    nz = [[j for j in range(n) if phi.entries[i][j]] for i in range(n)]
    memo: dict[int, LaurentPoly] = {}
    unit = ExactScalar(1) if _is_exact(phi) else 1.0
    one = LaurentPoly.constant(unit, phi.nvars)
    zero = LaurentPoly.zero(phi.nvars)

    def minor(i: int, mask: int) -> LaurentPoly:
        # determinant of rows i.. restricted to the columns in ``mask``
        if i == n:
            return one
        if mask in memo:
            return memo[mask]
        total = zero
        for j in nz[i]:
            if not mask >> j & 1:
                continue
            sub = minor(i + 1, mask & ~(1 << j))
            if sub.is_zero():
                continue
            # sign from the position of column j among the remaining columns
            pos = bin(mask & ((1 << j) - 1)).count("1")
            term = phi.entries[i][j] * sub
            total = total - term if pos & 1 else total + term
        memo[mask] = total
        return total

    return minor(0, (1 << n) - 1)


def bareiss_determinant(phi: SymbolMatrix) -> LaurentPoly:
    """Fraction-free elimination over the polynomial ring.

    Each row is first multiplied by a monomial so that all exponents are
    nonnegative; the shift is undone on the result.  Requires exact
    coefficients (each division step must be exact).
    """
    _require_square(phi)
    n = phi.shape[0]
    r = phi.nvars
    total_shift = [0] * r
    m: list[list[LaurentPoly]] = []
    for row in phi.entries:
        live = [p for p in row if p]
        if not live:
            return LaurentPoly.zero(r)
        lo = [min(p.min_exponents()[v] for p in live) for v in range(r)]
        gamma = [-x for x in lo]
        total_shift = [t + g for t, g in zip(total_shift, gamma)]
        m.append([p.shift(gamma) for p in row])
    sign = 1
    prev = LaurentPoly.constant(ExactScalar(1), r)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return LaurentPoly.zero(r)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = piv * m[i][j]
                if mik and m[k][j]:
                    num = num - mik * m[k][j]
                m[i][j] = num.exact_div(prev) if k else num
            m[i][k] = LaurentPoly.zero(r)
        prev = piv
    det = m[n - 1][n - 1]
    if sign < 0:
        det = -det
    return det.shift([-x for x in total_shift])


def determinant(phi: SymbolMatrix) -> LaurentPoly:
    """Exact determinant: cofactor expansion up to 8x8, Bareiss beyond.

    Float-coefficient matrices always use cofactor expansion.
    """
    _require_square(phi)
    n = phi.shape[0]
    if n <= COFACTOR_MAX or not _is_exact(phi):
        return cofactor_determinant(phi)
    return bareiss_determinant(phi)


def _is_exact(phi: SymbolMatrix) -> bool:
    return all(isinstance(c, ExactScalar) for row in phi.entries for p in row for c in p.terms.values())


@dataclass(frozen=True, eq=False)
class CrystalPolynomial:
    poly: LaurentPoly
    shift: tuple[int, ...]
    constant: object

    def __str__(self):
        return self.poly.to_str()


def crystal_polynomial(p: LaurentPoly) -> CrystalPolynomial:
    """Shift ``p`` to nonnegative exponents (minimal shift) and make it monic
    in graded-lex order.  ``p == constant * z^-shift * poly``."""
    if p.is_zero():
        raise ValueError("crystal polynomial of the zero determinant is undefined (RUM dimension is full)")
    gamma = tuple(-x for x in p.min_exponents())
    shifted = p.shift(gamma)
    _, lc = shifted.leading_term()
    inv = lc.inverse() if isinstance(lc, ExactScalar) else 1.0 / lc
    return CrystalPolynomial(shifted * inv, gamma, lc)


def random_torus_points(n: int, r: int, seed: int | None = DEFAULT_SEED) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.exp(2j * np.pi * rng.random((n, r)))


def is_identically_zero(obj, mode: str = "exact", trials: int = 100, seed: int | None = DEFAULT_SEED) -> bool:
    """Whether a Laurent polynomial, or the determinant of a square symbol
    matrix, vanishes identically.

    ``mode="probabilistic"`` evaluates at ``trials`` random torus points and
    declares zero when every value is below 1e-10 times a scale (Hadamard's
    bound for matrices, the coefficient 1-norm for polynomials).
    """
    if mode == "exact":
        if isinstance(obj, SymbolMatrix):
            obj = determinant(obj)
        return obj.is_zero()
    if mode != "probabilistic":
        raise ValueError(f"unknown mode {mode!r}")
    pts = random_torus_points(trials, obj.nvars, seed)
    if isinstance(obj, SymbolMatrix):
        _require_square(obj)
        mats = obj.evaluate_many(pts)
        vals = np.abs(np.linalg.det(mats))
        scale = np.prod(np.maximum(np.linalg.norm(mats, axis=2), 1.0), axis=1)
        return bool(np.all(vals <= ZERO_TOL * scale))
    vals = np.abs(obj.evaluate_many(pts))
    scale = max(1.0, sum(abs(complex(c)) for c in obj.terms.values()))
    return bool(np.all(vals <= ZERO_TOL * scale))


def proportional_to(p: LaurentPoly, q: LaurentPoly):
    """Return ``(c, gamma)`` with ``p == c * z^gamma * q`` exactly, or None."""
    if p.is_zero() or q.is_zero():
        raise ValueError("proportionality is only defined for nonzero polynomials")
    if p.nvars != q.nvars or len(p) != len(q):
        return None
    pe, pc = p.leading_term()
    qe, qc = q.leading_term()
    gamma = tuple(a - b for a, b in zip(pe, qe))
    c = pc / qc
    for e, coeff in q.terms.items():
        target = tuple(a + g for a, g in zip(e, gamma))
        if target not in p.terms or p.terms[target] != c * coeff:
            return None
    return c, gamma
