import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rumkit.framework import (
    EdgeSpec,
    FrameworkError,
    Motif,
    TranslationGroup,
    edge_vector,
    maxwell_equilibrium,
    new_framework,
    place_vertex,
    supercell,
)
from rumkit.generators import GENERATORS, generator
from rumkit.scalar import ExactScalar


def vec(*xs):
    return tuple(ExactScalar(x) for x in xs)


@pytest.fixture
def strip():
    return generator("strip")


def test_strip_motif(strip):
    assert strip.motif.vertices == (vec(0, 0), vec(0, 4), vec(1, 3))
    assert strip.rank == 1 and strip.dim == 2


@pytest.mark.parametrize("kappa,k,expected", [(0, (0,), (0, 0)), (2, (2,), (9, 3)), (1, (-1,), (-4, 4))])
def test_place_vertex(strip, kappa, k, expected):
    assert place_vertex(strip, kappa, k) == vec(*expected)


@pytest.mark.parametrize("e,expected", [(0, (0, -4)), (3, (-4, 0)), (4, (-3, -1))])
def test_edge_vector(strip, e, expected):
    assert edge_vector(strip, e) == vec(*expected)


def test_index_errors(strip):
    with pytest.raises(IndexError):
        place_vertex(strip, 3, (0,))
    with pytest.raises(IndexError):
        edge_vector(strip, 5)
    with pytest.raises(ValueError):
        place_vertex(strip, 0, (0, 0))


@given(
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    st.integers(0, 2),
)
def test_place_vertex_additive(k, l, kappa):
    fw = generator("kagome")
    base = place_vertex(fw, kappa, (0, 0))
    pk, pl = place_vertex(fw, kappa, k), place_vertex(fw, kappa, l)
    s = place_vertex(fw, kappa, tuple(a + b for a, b in zip(k, l)))
    assert s == tuple(x + y - z for x, y, z in zip(pk, pl, base))


def test_maxwell():
    expect = {"kagome": True, "strip": False, "grid2d": True, "subdivided_grid_diag": True, "kagome_net": True}
    for name, want in expect.items():
        assert maxwell_equilibrium(generator(name)) is want


def test_kagome_unit_bars():
    fw = generator("kagome")
    assert fw.n_edges == 6
    for v in fw.edge_vectors:
        assert sum((x * x for x in v), ExactScalar(0)) == 1


def test_kagome_net_unit_length_bars():
    fw = generator("kagome_net")
    assert (fw.n_vertices, fw.n_edges, fw.dim, fw.rank) == (4, 12, 3, 3)
    lengths = {sum((x * x for x in v), ExactScalar(0)) for v in fw.edge_vectors}
    assert len(lengths) == 1


def test_rank_deficient_periods():
    m = Motif(2, (vec(0, 0),), (EdgeSpec(0, 0, (1, 0)),))
    with pytest.raises(FrameworkError) as err:
        new_framework(m, TranslationGroup((vec(1, 0), vec(2, 0))))
    assert err.value.kind == "rank"


def test_zero_edge_vector():
    m = Motif(2, (vec(0, 0),), (EdgeSpec(0, 0, (1, 0)), EdgeSpec(0, 0, (0, 0))))
    with pytest.raises(FrameworkError) as err:
        new_framework(m, TranslationGroup((vec(1, 0), vec(0, 1))))
    assert err.value.kind == "zero-edge" and err.value.index == 1


def test_coincident_vertices():
    m = Motif(2, (vec(0, 0), vec(1, 0)), (EdgeSpec(0, 1, (0, 0)),))
    with pytest.raises(FrameworkError) as err:
        new_framework(m, TranslationGroup((vec(1, 0), vec(0, 1))))
    assert err.value.kind == "coincident"


@pytest.mark.parametrize(
    "motif,periods,kind",
    [
        (Motif(2, (vec(0, 0, 0),), (EdgeSpec(0, 0, (1,)),)), (vec(1, 0),), "dimension"),
        (Motif(2, (vec(0, 0),), (EdgeSpec(0, 1, (1,)),)), (vec(1, 0),), "edge-index"),
        (Motif(2, (vec(0, 0),), (EdgeSpec(0, 0, (1, 0)),)), (vec(1, 0),), "edge-offset"),
        (Motif(2, (vec(0, 0),), (EdgeSpec(0, 0, (1,)),)), (vec(1, 0), vec(0, 1), vec(1, 1)), "periods"),
        (Motif(2, (), ()), (vec(1, 0),), "vertices"),
    ],
)
def test_validation_kinds(motif, periods, kind):
    with pytest.raises(FrameworkError) as err:
        new_framework(motif, TranslationGroup(periods))
    assert err.value.kind == kind


def test_mixed_radicands():
    r2, r3 = ExactScalar(0, 1, 2), ExactScalar(0, 1, 3)
    m = Motif(2, ((0, 0), (r2, 0)), (EdgeSpec(0, 1, (0, 0)),))
    with pytest.raises(ValueError):
        new_framework(m, TranslationGroup(((5, 0), (0, r3))))


def test_supercell_counts(strip):
    big = supercell(strip, (2,))
    assert (big.n_vertices, big.n_edges) == (6, 10)
    assert big.translations.periods == (vec(8, 0),)
    big = supercell(generator("kagome"), (2, 2))
    assert (big.n_vertices, big.n_edges) == (12, 24)


def test_supercell_identity(any_framework):
    assert supercell(any_framework, (1,) * any_framework.rank) == any_framework


def test_supercell_bad_multipliers(strip):
    with pytest.raises(ValueError):
        supercell(strip, (0,))
    with pytest.raises(ValueError):
        supercell(strip, (2, 2))


def _placed_bars(fw, cells):
    """Set of bars {p, q} (exact endpoints) with the first endpoint in ``cells``."""
    bars = set()
    for k in cells:
        for e in fw.edges:
            p = place_vertex(fw, e.kappa, k)
            q = place_vertex(fw, e.tau, tuple(a + b for a, b in zip(k, e.delta)))
            bars.add(frozenset((p, q)))
    return bars


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["grid2d", "kagome", "subdivided_grid_diag"]), st.integers(1, 3), st.integers(1, 3))
def test_supercell_places_same_bars(name, m1, m2):
    fw = generator(name)
    big = supercell(fw, (m1, m2))
    # the big cells [0,2)^2 cover exactly the small cells [0, 2m)
    small_cells = itertools.product(range(2 * m1), range(2 * m2))
    big_cells = itertools.product(range(2), range(2))
    assert _placed_bars(big, big_cells) == _placed_bars(fw, small_cells)


def test_unknown_generator():
    with pytest.raises(ValueError):
        generator("honeycomb")
    with pytest.raises(ValueError):
        generator("strip", size=3)


def test_generators_listed():
    assert set(GENERATORS) == {"strip", "grid2d", "kagome", "kagome_net", "subdivided_grid_diag"}
