"""Cross-module consistency checks run by ``rumkit check``."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .framework import CrystalFramework, maxwell_equilibrium, supercell
from .io import parse_framework, serialize_framework
from .polynomial import determinant, is_identically_zero
from .rigidity import PhasePeriodic, fourier_singular_values, local_flex_search, patch_rigidity_matrix, phase_residuals
from .spectrum import rum_points, sigma_min_field, square_summable_flex_exists, supercell_spectrum_check
from .symbol import build_symbol

__all__ = ["CheckResult", "run_checks"]


class CheckResult(NamedTuple):
    name: str
    ok: bool
    detail: str


def _roundtrip(fw, rng):
    back = parse_framework(serialize_framework(fw))
    return back == fw, "serialize -> parse"


def _translations(fw, rng):
    phi = build_symbol(fw)
    d = fw.dim
    for row in phi.entries:
        for s0 in range(d):
            # value at z = 1 is the coefficient sum
            total = sum((sum(row[k * d + s0].terms.values(), 0) for k in range(fw.n_vertices)), 0)
            if total != 0:
                return False, f"row sum {total} for coordinate {s0}"
    return True, "phi(1) annihilates all translations exactly"


def _conjugation(fw, rng):
    phi = build_symbol(fw)
    pts = np.exp(2j * np.pi * rng.random((20, fw.rank)))
    a = np.linalg.svd(phi.evaluate_many(pts), compute_uv=False)
    b = np.linalg.svd(phi.evaluate_many(np.conj(pts)), compute_uv=False)
    err = float(np.max(np.abs(a - b)))
    return err <= 1e-12, f"max singular value gap {err:.2e}"


def _phase_restriction(fw, rng):
    phi = build_symbol(fw)
    worst = 0.0
    n = fw.dim * fw.n_vertices
    for _ in range(20):
        omega = np.exp(2j * np.pi * rng.random(fw.rank))
        u = rng.normal(size=n) + 1j * rng.normal(size=n)
        direct = phase_residuals(fw, omega, u)
        via = phi.evaluate(np.conj(omega)) @ u
        scale = max(1.0, float(np.max(np.abs(direct))))
        worst = max(worst, float(np.max(np.abs(direct - via))) / scale)
    return worst <= 1e-12, f"max relative residual gap {worst:.2e}"


def _phase_patch(fw, rng):
    phi = build_symbol(fw)
    worst = 0.0
    for _ in range(10):
        omega = tuple(np.exp(2j * np.pi * rng.random(fw.rank)))
        M = patch_rigidity_matrix(fw, 1, PhasePeriodic(omega, 1)).matrix
        worst = max(worst, float(np.max(np.abs(M - phi.evaluate(np.conj(omega))))))
    return worst <= 1e-12, f"PhasePeriodic(omega,1) vs phi(conj omega): {worst:.2e}"


def _fourier(fw, rng):
    worst = 0.0
    for n in (1, 2, 3, 4):
        big, small = fourier_singular_values(fw, n)
        if big.shape != small.shape:
            return False, f"N={n}: {big.size} vs {small.size} singular values"
        worst = max(worst, float(np.max(np.abs(big - small))))
    return worst <= 1e-9, f"N in 1..4, max gap {worst:.2e}"


def _backends(fw, rng):
    exact, flt = build_symbol(fw), build_symbol(fw, "float")
    pts = np.exp(2j * np.pi * rng.random((100, fw.rank)))
    a, b = exact.evaluate_many(pts), flt.evaluate_many(pts)
    err = float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a))))
    return err <= 1e-9, f"exact vs float symbol at 100 points: {err:.2e}"


def _determinant(fw, rng):
    phi = build_symbol(fw)
    det = determinant(phi)
    pts = np.exp(2j * np.pi * rng.random((50, fw.rank)))
    mats = phi.evaluate_many(pts)
    num = np.linalg.det(mats)
    exact = det.evaluate_many(pts)
    scale = np.prod(np.maximum(np.linalg.norm(mats, axis=2), 1.0), axis=1)
    err = float(np.max(np.abs(num - exact) / scale))
    return err <= 1e-8, f"exact det vs numeric det at 50 points: {err:.2e}"


def _zero_modes(fw, rng):
    phi = build_symbol(fw)
    ex = is_identically_zero(phi, "exact")
    pr = is_identically_zero(phi, "probabilistic", trials=100, seed=int(rng.integers(2**31)))
    return ex == pr, f"exact={ex} probabilistic={pr}"


def _flex_equivalence(fw, rng):
    det_zero = is_identically_zero(build_symbol(fw), "exact")
    box = max(4, 2 * fw.max_offset + 2)
    local = local_flex_search(fw, box) is not None
    l2 = square_summable_flex_exists(fw, seed=int(rng.integers(2**31)), cross_check=False).exists
    ok = det_zero == local == l2
    return ok, f"det==0: {det_zero}, local flex (box {box}): {local}, square-summable: {l2}"


def _translation_mode(fw, rng):
    rep = rum_points(sigma_min_field(fw, 4, "kernel"))
    return (0,) * fw.rank in rep.points, "omega = 1 is in the kernel-mode spectrum"


def _supercell(fw, rng):
    m = (2,) * fw.rank
    ok = supercell_spectrum_check(fw, m, 8)
    ident = supercell(fw, (1,) * fw.rank) == fw
    return ok and ident, f"doubling map forward inclusion (N=8), identity supercell: {ident}"


CHECKS: list[tuple[str, Callable, bool]] = [
    ("roundtrip", _roundtrip, False),
    ("translations", _translations, False),
    ("conjugation", _conjugation, False),
    ("phase-restriction", _phase_restriction, False),
    ("phase-patch", _phase_patch, False),
    ("fourier-blocks", _fourier, False),
    ("backends", _backends, False),
    ("translation-mode", _translation_mode, False),
    ("supercell-doubling", _supercell, False),
    ("determinant", _determinant, True),
    ("zero-test", _zero_modes, True),
    ("flex-equivalence", _flex_equivalence, True),
]


def run_checks(fw: CrystalFramework, seed: int = 0) -> list[CheckResult]:
    """Run every applicable check; determinant-based ones need a square symbol."""
    rng = np.random.default_rng(seed)
    out = []
    square = maxwell_equilibrium(fw)
    for name, fn, needs_square in CHECKS:
        if needs_square and not square:
            continue
        try:
            ok, detail = fn(fw, rng)
        except Exception as exc:  # reported, not raised: one failing check should not hide the rest
            ok, detail = False, f"error: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out
