import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rumkit.generators import GENERATORS, generator
from rumkit.rigidity import (
    FixedBoundary,
    Free,
    Periodic,
    PhasePeriodic,
    flex_space,
    flex_to_csv,
    fourier_block_check,
    fourier_singular_values,
    is_infinitesimal_flex,
    local_flex_search,
    make_box,
    patch_rigidity_matrix,
    phase_residuals,
    wave_motion_defect,
)
from rumkit.symbol import build_symbol


def grid_periodic2_oracle():
    """Rigidity matrix of the 2x2 periodic square grid written out by hand.

    Vertex (i, j) has columns 2*(2i+j) + {0, 1}.  The bar from (i, j) to
    (i+1, j) has v = (-1, 0), to (i, j+1) has v = (0, -1).
    """
    rows = []
    for i in range(2):
        for j in range(2):
            for di, dj in ((1, 0), (0, 1)):
                row = np.zeros(8)
                a = 2 * (2 * i + j)
                b = 2 * (2 * ((i + di) % 2) + (j + dj) % 2)
                v = np.array([-di, -dj], dtype=float)
                row[a : a + 2] += v
                row[b : b + 2] -= v
                rows.append(row)
    return np.array(rows)


def test_grid_periodic_rank():
    M = patch_rigidity_matrix(generator("grid2d"), 2, Periodic(2)).matrix
    assert M.shape == (8, 8)
    oracle = grid_periodic2_oracle()
    assert np.linalg.matrix_rank(M) == np.linalg.matrix_rank(oracle) == 4
    # same matrix up to row order
    assert sorted(map(tuple, M)) == sorted(map(tuple, oracle))


def test_grid_periodic_block_ranks():
    phi = build_symbol(generator("grid2d"))
    ranks = {w: np.linalg.matrix_rank(phi.evaluate(w)) for w in [(1, 1), (1, -1), (-1, 1), (-1, -1)]}
    assert ranks == {(1, 1): 0, (1, -1): 1, (-1, 1): 1, (-1, -1): 2}


def test_strip_phase_periodic_is_symbol():
    fw = generator("strip")
    M = patch_rigidity_matrix(fw, 1, PhasePeriodic((1,), 1)).matrix
    assert M.shape == (5, 6)
    assert np.array_equal(M, build_symbol(fw).evaluate((1,)))


def test_kagome_single_cell_free():
    M = patch_rigidity_matrix(generator("kagome"), 1, Free())
    assert M.shape == (3, 6)
    assert [label[0] for label in M.row_labels] == [0, 1, 2]


def test_periodic_box_mismatch():
    with pytest.raises(ValueError):
        patch_rigidity_matrix(generator("grid2d"), 3, Periodic(2))


def test_fixed_ring_too_thin():
    with pytest.raises(ValueError):
        patch_rigidity_matrix(generator("kagome_net"), 4, FixedBoundary(0))


@pytest.mark.parametrize(
    "name,dim", [("grid2d", 2), ("kagome", 3)]
)
def test_flex_space_periodic1(name, dim):
    K = flex_space(patch_rigidity_matrix(generator(name), 1, Periodic(1)))
    assert K.shape[1] == dim


def test_kagome_rotation_mode():
    # the third zero mode at omega=1 rotates each up-triangle about its centroid
    fw = generator("kagome")
    P = fw.positions
    c = P.mean(axis=0)
    u = np.concatenate([[-(p - c)[1], (p - c)[0]] for p in P])
    assert np.allclose(build_symbol(fw).evaluate((1, 1)) @ u, 0, atol=1e-14)


def test_strip_periodic1():
    M = patch_rigidity_matrix(generator("strip"), 1, Periodic(1))
    assert M.shape == (5, 6)
    assert flex_space(M).shape[1] >= 2


def test_flex_space_orthonormal(any_framework):
    M = patch_rigidity_matrix(any_framework, 2, Periodic(2))
    K = flex_space(M)
    assert np.allclose(K.conj().T @ K, np.eye(K.shape[1]), atol=1e-12)
    assert np.allclose(M.matrix @ K, 0, atol=1e-10)


def test_constant_field_is_flex(any_framework):
    fw = any_framework
    t = np.arange(1, fw.dim + 1, dtype=float)
    cells = [tuple(k) for k in np.ndindex(*(3,) * fw.rank)]
    u = {(kappa, k): t for k in cells for kappa in range(fw.n_vertices)}
    res = is_infinitesimal_flex(fw, u, box=3)
    assert res.is_flex and res.residual == 0


def test_midpoint_flex():
    fw = generator("subdivided_grid_diag")
    assert is_infinitesimal_flex(fw, {(1, (0, 0)): np.array([0.0, 1.0])}).is_flex


def test_grid_single_vertex_not_flex():
    res = is_infinitesimal_flex(generator("grid2d"), {(0, (0, 0)): np.array([1.0, 0.0])})
    assert not res.is_flex and res.residual == 1


def test_local_flex_midpoint():
    fw = generator("subdivided_grid_diag")
    field = local_flex_search(fw, 3)
    assert field is not None and len(field) == 1
    (kappa, _), v = next(iter(field.items()))
    assert kappa == 1 and np.allclose(np.abs(v), [0, 1])
    assert is_infinitesimal_flex(fw, field).is_flex


@pytest.mark.parametrize("name", ["kagome", "grid2d"])
def test_no_local_flex(name):
    assert local_flex_search(generator(name), 4) is None


def test_local_flex_box_too_small():
    with pytest.raises(ValueError):
        local_flex_search(generator("kagome"), 2)


def test_flex_csv():
    field = local_flex_search(generator("subdivided_grid_diag"), 3)
    lines = flex_to_csv(field).splitlines()
    assert lines[0] == "kappa,k1,k2,v1,v2"
    assert lines[1].startswith("2,1,1,0,")


def test_make_box():
    assert make_box(3, 2) == ((0, 3), (0, 3))
    assert make_box((2, 4), 2) == ((0, 2), (0, 4))
    assert make_box(((-1, 1),), 1) == ((-1, 1),)
    with pytest.raises(ValueError):
        make_box(0, 1)
    with pytest.raises(ValueError):
        make_box((2, 2), 1)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(GENERATORS)), st.integers(0, 2**31 - 1))
def test_phase_residuals_match_symbol(name, seed):
    fw = generator(name)
    rng = np.random.default_rng(seed)
    omega = np.exp(2j * np.pi * rng.random(fw.rank))
    u = rng.normal(size=fw.dim * fw.n_vertices) + 1j * rng.normal(size=fw.dim * fw.n_vertices)
    direct = phase_residuals(fw, omega, u)
    via = build_symbol(fw).evaluate(np.conj(omega)) @ u
    assert np.allclose(direct, via, rtol=1e-12, atol=1e-12)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["grid2d", "kagome", "strip"]), st.integers(0, 2**31 - 1))
def test_phase_periodic_patch_kernel_gives_wave(name, seed):
    """A flex of the PhasePeriodic(omega^2, 2) patch restricted from a
    phase-omega wave must have zero residual."""
    fw = generator(name)
    rng = np.random.default_rng(seed)
    omega = np.exp(2j * np.pi * rng.random(fw.rank))
    u = rng.normal(size=fw.dim * fw.n_vertices)
    M = patch_rigidity_matrix(fw, 2, PhasePeriodic(tuple(omega**2), 2))
    x = np.concatenate(
        [np.prod(omega ** np.array(label[1])) * u[label[0] * fw.dim : (label[0] + 1) * fw.dim] for label in M.col_labels[:: fw.dim]]
    )
    lhs = M.matrix @ x
    # every row is one placed edge; its residual is the phase-scaled block residual
    res = phase_residuals(fw, omega, u)
    expect = np.array([np.prod(omega ** np.array(k)) * res[ei] for ei, k in M.row_labels])
    assert np.allclose(lhs, expect, atol=1e-12)


def test_wave_defect_translation_zero(any_framework):
    fw = any_framework
    u = np.tile(np.arange(1, fw.dim + 1, dtype=float), fw.n_vertices)
    assert wave_motion_defect(fw, (1,) * fw.rank, u, alpha=0.1, box=3) == 0.0


def test_wave_defect_rejects_bad_alpha():
    with pytest.raises(ValueError):
        wave_motion_defect(generator("grid2d"), (1, 1), np.zeros(2), alpha=0)


@pytest.mark.parametrize("name,n", [("strip", 4), ("grid2d", 3), ("kagome", 2)])
def test_fourier_examples(name, n):
    assert fourier_block_check(generator(name), n)


def test_fourier_counts():
    big, small = fourier_singular_values(generator("strip"), 4)
    assert big.size == small.size == 20
