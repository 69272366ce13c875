import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from walksym.errors import StepOffSupport, ZeroWeight
from walksym.gauge import (
    ab_phase,
    canonical_form,
    conjugate_to_conjugate,
    cycle_weight,
    fingerprint,
    gauge_equivalent,
    gauge_potential,
    trivial_gauge,
)
from walksym.hermitian import gauge_conjugate
from walksym.support import SupportGraph

from _gen import (
    closed_walks,
    random_connected_edges,
    random_hermitian,
    random_phases,
    random_tree_edges,
    walk_weight,
    weighted,
)


def triangle_with(w01, w12, w20):
    h = np.zeros((3, 3), dtype=complex)
    for (j, k), z in zip([(0, 1), (1, 2), (2, 0)], [w01, w12, w20]):
        h[j, k], h[k, j] = z, np.conj(z)
    return h


def test_back_and_forth_weight(rng):
    h = random_hermitian(rng, 4, density=1.0)
    assert cycle_weight(h, (1, 3)) == pytest.approx(abs(h[1, 3]) ** 2, rel=1e-14)


def test_disorder_cycle_weight(disorder):
    assert cycle_weight(disorder, (0, 1, 2, 3)) == -1j


def test_loop_weight(disorder):
    assert cycle_weight(disorder, (2,)) == 3


def test_step_off_support(disorder):
    with pytest.raises(StepOffSupport) as info:
        cycle_weight(disorder, (0, 2, 3))
    assert info.value.step == (0, 2)


def test_ab_phases(disorder, triangle):
    assert ab_phase(triangle_with(1, 1, 1), (0, 1, 2)) == 0
    assert ab_phase(disorder, (0, 1, 2, 3)) == pytest.approx(-np.pi / 2)
    assert ab_phase(triangle, (0, 1, 2)) == pytest.approx(np.pi / 2)


def test_zero_weight():
    # a caller-supplied graph can claim a loop the matrix does not have
    loop_only = SupportGraph.from_edges(1, [], loops=[0])
    with pytest.raises(ZeroWeight):
        ab_phase(np.zeros((1, 1)), (0,), g=loop_only)


def test_gauge_potential(disorder):
    h = np.array([[0, 1j], [-1j, 0]])
    theta = gauge_potential(h)
    assert theta[0, 1] == pytest.approx(np.pi / 2) and theta[1, 0] == pytest.approx(-np.pi / 2)
    assert not gauge_potential(np.abs(disorder)).any()
    theta = gauge_potential(disorder)
    expected = np.zeros((4, 4))
    expected[0, 3], expected[3, 0] = np.pi / 2, -np.pi / 2
    np.testing.assert_allclose(theta, expected)


def test_canonical_form_idempotent_on_real_nonnegative(rng):
    h = np.abs(random_hermitian(rng, 5, density=1.0)).astype(complex)
    cf = canonical_form(h)
    np.testing.assert_array_equal(cf.gauge, 0)
    np.testing.assert_array_equal(cf.matrix, h)


def test_canonical_form_triangle(triangle):
    cf = canonical_form(triangle)
    m = cf.matrix
    assert m[0, 1] == 1 and m[0, 2] == 1
    assert m[1, 2] == pytest.approx(1j, abs=1e-15)
    np.testing.assert_allclose(gauge_conjugate(cf.gauge, triangle), m, atol=1e-15)


def test_canonical_form_idempotent(rng):
    h = random_hermitian(rng, 6, density=0.8)
    m = canonical_form(h).matrix
    again = canonical_form(m)
    np.testing.assert_array_equal(again.gauge, 0)
    np.testing.assert_allclose(again.matrix, m, atol=1e-15)


def test_fingerprint_tree_has_no_cycles(rng):
    h = weighted(rng, 6, random_tree_edges(rng, 6), complex_weights=False)
    fp = fingerprint(h)
    assert fp.cycles == () and len(fp.moduli) == 5


def test_fingerprint_disorder(disorder):
    fp = fingerprint(disorder)
    assert fp.cycles == ((0, 1, 2, 3),)
    assert fp.cycle_weights == (-1j,)
    np.testing.assert_array_equal(fp.diagonal, [1, 2, 3, 4])


def test_gauge_equivalent_examples(rng, triangle):
    h = random_hermitian(rng, 5)
    np.testing.assert_array_equal(gauge_equivalent(h, h), 0)
    assert gauge_equivalent(triangle_with(1, 1, 1), triangle) is None


def test_trivial_gauge_examples(rng, disorder):
    h = weighted(rng, 6, random_tree_edges(rng, 6))
    phi = trivial_gauge(h)
    assert phi is not None
    assert np.max(np.abs(gauge_conjugate(phi, h).imag)) < 1e-12
    assert trivial_gauge(disorder) is None
    h = triangle_with(1, 1, -1)
    phi = trivial_gauge(h)
    assert phi is not None
    np.testing.assert_allclose(gauge_conjugate(phi, h), [[0, 1, 1], [1, 0, -1], [1, -1, 0]],
                               atol=1e-15)


def test_conjugate_to_conjugate_examples(rng, disorder):
    real = random_hermitian(rng, 5, complex_weights=False)
    phi = conjugate_to_conjugate(real)
    np.testing.assert_allclose(gauge_conjugate(phi, real), real, atol=1e-15)
    assert conjugate_to_conjugate(disorder) is None
    h = weighted(rng, 6, random_tree_edges(rng, 6))
    phi = conjugate_to_conjugate(h)
    np.testing.assert_allclose(gauge_conjugate(phi, h), h.conj(), atol=1e-12)


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_fingerprint_invariance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    h = random_hermitian(rng, n)
    a, b = fingerprint(h), fingerprint(gauge_conjugate(random_phases(rng, n), h))
    assert a.cycles == b.cycles and a.moduli.keys() == b.moduli.keys()
    np.testing.assert_allclose(list(a.moduli.values()), list(b.moduli.values()), atol=1e-9)
    np.testing.assert_allclose(a.cycle_weights, b.cycle_weights, atol=1e-9)
    np.testing.assert_allclose(a.diagonal, b.diagonal, atol=1e-9)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_canonical_form_is_orbit_invariant(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    h = random_hermitian(rng, n)
    cf = canonical_form(h)
    other = canonical_form(gauge_conjugate(random_phases(rng, n), h))
    np.testing.assert_allclose(other.matrix, cf.matrix, atol=1e-9)
    for j, k in cf.forest.tree_edges:
        assert cf.matrix[j, k].imag == 0 and cf.matrix[j, k].real >= 0


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_gauge_equivalent_round_trip(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    h = random_hermitian(rng, n)
    h2 = gauge_conjugate(random_phases(rng, n), h)
    phi = gauge_equivalent(h, h2)
    assert phi is not None
    np.testing.assert_allclose(gauge_conjugate(phi, h), h2, atol=1e-8)
    for comp in canonical_form(h).graph.components:
        assert phi[comp[0]] == 0


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_ab_phase_is_sum_of_potential(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 8))
    h = weighted(rng, n, random_connected_edges(rng, n))
    theta = gauge_potential(h)
    for c in fingerprint(h).cycles:
        total = sum(theta[c[i], c[(i + 1) % len(c)]] for i in range(len(c)))
        assert np.exp(1j * ab_phase(h, c)) == pytest.approx(np.exp(1j * total), abs=1e-9)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_trivial_gauge_gives_real_canonical_form(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 8))
    real = random_hermitian(rng, n, complex_weights=False)
    h = gauge_conjugate(random_phases(rng, n), real)
    assert trivial_gauge(h) is not None
    assert np.max(np.abs(canonical_form(h).matrix.imag)) <= 1e-8


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_fundamental_basis_sufficient(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    h = random_hermitian(rng, n)
    m = canonical_form(h).matrix
    for walk in closed_walks(h, n):
        assert walk_weight(m, walk) == pytest.approx(walk_weight(h, walk), abs=1e-9)
