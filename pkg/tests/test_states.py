import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bhabha_entanglement.amplitudes import HelicityAmplitudeTable, amplitude_table
from bhabha_entanglement.errors import DegenerateStateError, DomainError
from bhabha_entanglement.states import (DensityMatrix, MultiQubitState, ScatteringConfig,
                                        partial_trace, reduced_pairs, reference_final,
                                        reference_initial, to_density, tripartite_final,
                                        tripartite_initial)

R, L = 0, 1


def random_state(rng, n):
    psi = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return MultiQubitState(psi / np.linalg.norm(psi), "ABC"[:n])


def test_reference_initial():
    s = reference_initial(math.pi / 4)
    np.testing.assert_allclose(s.amplitudes, np.array([1, 1, 0, 0]) / math.sqrt(2), atol=1e-15)
    s = reference_initial(math.pi / 4, beta=math.pi / 2, incoming="L")
    # |L>(|L> + i|R>)/sqrt2 -> indices LL = 3, LR = 2
    np.testing.assert_allclose(s.amplitudes, np.array([0, 0, 1j, 1]) / math.sqrt(2), atol=1e-15)


def test_tripartite_initial():
    s = tripartite_initial(math.pi / 4)
    want = np.zeros(8)
    want[0b000] = want[0b011] = 1 / math.sqrt(2)
    np.testing.assert_allclose(s.amplitudes, want, atol=1e-15)
    s = tripartite_initial(math.pi / 4, incoming="L")
    want = np.zeros(8)
    want[0b111] = want[0b100] = 1 / math.sqrt(2)
    np.testing.assert_allclose(s.amplitudes, want, atol=1e-15)


@pytest.mark.parametrize("incoming", ["R", "L"])
def test_reference_final_by_hand(incoming):
    mu, theta, eta, beta = 1.3, 2.2, 0.4, 0.9
    cfg = ScatteringConfig(mu, theta, eta, beta, incoming)
    tab = amplitude_table(mu, theta)
    other = "L" if incoming == "R" else "R"
    raw = np.array([
        math.cos(eta) * tab[(incoming, incoming, r, s)]
        + np.exp(1j * beta) * math.sin(eta) * tab[(incoming, other, r, s)]
        for r in "RL" for s in "RL"
    ])
    st_ = reference_final(cfg)
    np.testing.assert_allclose(st_.amplitudes, raw / np.linalg.norm(raw), atol=1e-14)
    assert st_.norm == pytest.approx(np.linalg.norm(raw), rel=1e-14)


def test_tripartite_norm_and_eta_zero():
    mu, theta = 2.0, 1.1
    tab = amplitude_table(mu, theta)
    cfg = ScatteringConfig(mu, theta, 0.7)
    st_ = tripartite_final(cfg, tab)
    want = math.sqrt(math.cos(0.7) ** 2 * np.sum(np.abs(tab.values[R, R]) ** 2)
                     + math.sin(0.7) ** 2 * np.sum(np.abs(tab.values[R, L]) ** 2))
    assert st_.norm == pytest.approx(want, rel=1e-13)
    zero = tripartite_final(ScatteringConfig(mu, theta, 0.0), tab).tensor()
    assert np.all(zero[:, :, L] == 0)
    ref = reference_final(ScatteringConfig(mu, theta, 0.0), tab)
    np.testing.assert_allclose(zero[:, :, R].reshape(4), ref.amplitudes, atol=1e-15)


def test_tripartite_left_incoming_tags_spectator():
    mu, theta, eta = 1.0, 2.0, 0.3
    tab = amplitude_table(mu, theta)
    psi = tripartite_final(ScatteringConfig(mu, theta, eta, incoming="L"), tab).tensor()
    raw = np.zeros((2, 2, 2), dtype=complex)
    raw[:, :, L] = math.cos(eta) * tab.values[L, L]
    raw[:, :, R] = math.sin(eta) * tab.values[L, R]
    np.testing.assert_allclose(psi, raw / np.linalg.norm(raw), atol=1e-14)


def test_ab_pair_is_branch_mixture():
    mu, theta, eta = 0.8, 2.5, 1.0
    tab = amplitude_table(mu, theta)
    pairs = reduced_pairs(tripartite_final(ScatteringConfig(mu, theta, eta), tab))
    one = math.cos(eta) * tab.final_vector("R", "R")
    two = math.sin(eta) * tab.final_vector("R", "L")
    mix = np.outer(one, one.conj()) + np.outer(two, two.conj())
    np.testing.assert_allclose(pairs["AB"].matrix, mix / np.trace(mix).real, atol=1e-14)


@pytest.mark.parametrize("factor", [1e-8, 3.7, 2 - 5j, 1e9])
def test_rescaling_invariance(factor):
    mu, theta, eta = 1.4, 2.7, 0.6
    tab = amplitude_table(mu, theta)
    cfg = ScatteringConfig(mu, theta, eta)
    base = reduced_pairs(tripartite_final(cfg, tab))
    scaled = reduced_pairs(tripartite_final(cfg, tab.scaled(factor)))
    for k in base:
        np.testing.assert_allclose(scaled[k].matrix, base[k].matrix, atol=1e-13)


def test_degenerate_state():
    tab = HelicityAmplitudeTable(np.zeros((2, 2, 2, 2)), 1.0, 1.0)
    with pytest.raises(DegenerateStateError):
        reference_final(ScatteringConfig(1.0, 1.0, 0.3), tab)
    with pytest.raises(DegenerateStateError):
        tripartite_final(ScatteringConfig(1.0, 1.0, 0.3), tab)
    with pytest.raises(DegenerateStateError):
        to_density(MultiQubitState(np.zeros(4), "AB", normalized=False))


def test_table_kinematics_must_match():
    with pytest.raises(DomainError):
        reference_final(ScatteringConfig(1.0, 1.0, 0.3), amplitude_table(1.0, 1.5))
    with pytest.raises(DomainError):
        reference_final(ScatteringConfig(1.0, 1.0, 0.3), amplitude_table(1.0, 1.0, phi=0.2))


@pytest.mark.parametrize("kwargs", [
    dict(mu=0.0, theta=1.0, eta=0.1), dict(mu=1.0, theta=0.0, eta=0.1),
    dict(mu=1.0, theta=1.0, eta=-0.1), dict(mu=1.0, theta=1.0, eta=4.0),
    dict(mu=1.0, theta=1.0, eta=0.1, beta=7.0), dict(mu=1.0, theta=1.0, eta=0.1, incoming="X"),
])
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        ScatteringConfig(**kwargs)


@pytest.mark.parametrize("matrix", [
    np.array([[1, 0.1], [0, 0]]),             # not Hermitian
    np.diag([0.6, 0.6]),                      # trace 1.2
    np.diag([1.2, -0.2]),                     # negative eigenvalue
    np.eye(4) / 4,                            # wrong dimension
])
def test_density_matrix_validation(matrix):
    with pytest.raises(DomainError):
        DensityMatrix(matrix, ("A",))


def test_state_validation():
    with pytest.raises(DomainError):
        MultiQubitState(np.ones(4), "AB")
    with pytest.raises(DomainError):
        MultiQubitState(np.ones(3), "AB", normalized=False)


def test_partial_trace_by_hand():
    rng = np.random.default_rng(0)
    psi = random_state(rng, 3)
    rho = to_density(psi)
    t = psi.tensor()
    ac = np.einsum("abc,dbf->acdf", t, t.conj()).reshape(4, 4)
    np.testing.assert_allclose(partial_trace(rho, "AC").matrix, ac, atol=1e-15)
    ca = np.einsum("abc,dbf->cafd", t, t.conj()).reshape(4, 4)
    np.testing.assert_allclose(partial_trace(rho, "CA").matrix, ca, atol=1e-15)
    np.testing.assert_allclose(partial_trace(rho, "ABC").matrix, rho.matrix)
    with pytest.raises(DomainError):
        partial_trace(rho, "AD")
    with pytest.raises(DomainError):
        partial_trace(rho, "AA")


complex_vec = arrays(np.complex128, 8, elements=st.complex_numbers(max_magnitude=10,
                                                                    allow_nan=False,
                                                                    allow_infinity=False))


@given(complex_vec)
@settings(max_examples=80, deadline=None)
def test_partial_trace_properties(psi):
    norm = np.linalg.norm(psi)
    if norm < 1e-3:
        return
    rho = to_density(MultiQubitState(psi, "ABC", normalized=False))
    a_direct = partial_trace(rho, "A").matrix
    a_nested = partial_trace(partial_trace(rho, "AB"), "A").matrix
    np.testing.assert_allclose(a_direct, a_nested, atol=1e-13)
    for pair in ("AB", "AC", "BC"):
        red = partial_trace(rho, pair)
        assert abs(np.trace(red.matrix) - 1) < 1e-12
        assert red.eigenvalues().min() > -1e-12
    # pure global state: complementary reductions share their spectrum
    ev_a = np.sort(partial_trace(rho, "A").eigenvalues())
    ev_bc = np.sort(partial_trace(rho, "BC").eigenvalues())[2:]
    np.testing.assert_allclose(ev_a, ev_bc, atol=1e-12)


def test_purity():
    assert to_density(reference_initial(0.3)).purity() == pytest.approx(1.0)
    assert DensityMatrix(np.eye(4) / 4, "AB").purity() == pytest.approx(0.25)
