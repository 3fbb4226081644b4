import itertools
import math

import numpy as np
import pytest

from bhabha_entanglement.dirac import (GAMMA, GAMMA0, GAMMA5, METRIC, FourMomentum,
                                       anticommutator, dirac_adjoint, make_momentum, slash,
                                       spinor_u, spinor_v, two_spinor_helicity)
from bhabha_entanglement.errors import DomainError
from bhabha_entanglement.sweep import MU_M

R2 = math.sqrt(2.0)


@pytest.mark.parametrize("mu,theta,energy,vector", [
    (1.0, 0.0, R2, (0, 0, 1)),
    (1.0, math.pi, R2, (0, 0, -1)),
    (2.0, math.pi / 2, math.sqrt(5), (2, 0, 0)),
])
def test_make_momentum(mu, theta, energy, vector):
    p = make_momentum(mu, theta, 0.0)
    assert p.energy == pytest.approx(energy, abs=1e-15)
    np.testing.assert_allclose(p.vector, vector, atol=1e-15)
    assert abs(p.mass_shell() - 1.0) < 1e-12


@pytest.mark.parametrize("mu", [0.0, -1.0, float("nan")])
def test_make_momentum_rejects_nonpositive(mu):
    with pytest.raises(DomainError):
        make_momentum(mu, 0.3)


def test_mass_shell_large_mu():
    p = make_momentum(1e4, 1.1, 0.4)
    assert p.energy >= 1
    assert abs(p.mass_shell() - 1.0) < 1e-12 * p.energy ** 2


def test_anticommutation():
    for i, j in itertools.product(range(4), repeat=2):
        np.testing.assert_allclose(anticommutator(i, j), 2 * METRIC[i, j] * np.eye(4), atol=1e-14)
    np.testing.assert_array_equal(GAMMA5, np.diag([-1, -1, 1, 1]))
    np.testing.assert_allclose(GAMMA5, 1j * GAMMA[0] @ GAMMA[1] @ GAMMA[2] @ GAMMA[3], atol=1e-14)


def test_gammas_are_readonly():
    with pytest.raises(ValueError):
        GAMMA0[0, 0] = 3


def test_spinor_examples():
    p = make_momentum(1.0, 0.0, 0.0)
    a, b = math.sqrt(R2 - 1), math.sqrt(R2 + 1)
    np.testing.assert_allclose(spinor_u("R", p).components, [a, 0, b, 0], atol=1e-15)
    np.testing.assert_allclose(spinor_v("R", p).components, [0, b, 0, -a], atol=1e-15)
    np.testing.assert_allclose(spinor_v("L", p).components, [a, 0, -b, 0], atol=1e-15)


def test_rest_frame_spinor():
    rest = FourMomentum(0.0, 0.0, 0.0)
    u = spinor_u("R", rest)
    np.testing.assert_allclose(u.components, [1, 0, 1, 0], atol=1e-15)
    assert dirac_adjoint(u) @ u.components == pytest.approx(2.0)
    v = spinor_v("R", rest)
    assert dirac_adjoint(v) @ v.components == pytest.approx(-2.0)


def test_reflected_columns_by_hand():
    # direction +z, so -p points along -z; substituted by hand into the -p columns
    p = make_momentum(1.0, 0.0, 0.0)
    a, b = math.sqrt(R2 - 1), math.sqrt(R2 + 1)
    np.testing.assert_allclose(spinor_u("R", p, reflected=True).components, [0, a, 0, b], atol=1e-15)
    np.testing.assert_allclose(spinor_u("L", p, reflected=True).components, [b, 0, a, 0], atol=1e-15)
    np.testing.assert_allclose(spinor_v("R", p, reflected=True).components, [b, 0, -a, 0], atol=1e-15)
    np.testing.assert_allclose(spinor_v("L", p, reflected=True).components, [0, a, 0, -b], atol=1e-15)
    assert spinor_u("R", p, reflected=True).momentum.vector[2] == pytest.approx(-1.0)


@pytest.mark.parametrize("kind", ["u", "v"])
@pytest.mark.parametrize("hel", ["R", "L"])
@pytest.mark.parametrize("phi", [0.0, math.pi / 3])
def test_reflected_columns_are_images_up_to_sign(kind, hel, phi):
    build = spinor_u if kind == "u" else spinor_v
    for theta in np.linspace(0.05, 3.0, 9):
        p = make_momentum(1.7, theta, phi)
        printed = build(hel, p, reflected=True).components
        image = build(hel, p.reflected()).components
        np.testing.assert_allclose(printed, -image, atol=1e-14)


def test_adjoint_matches_explicit_product():
    rng = np.random.default_rng(3)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    np.testing.assert_allclose(dirac_adjoint(psi), psi.conj().T @ GAMMA0)


def _all_spinors(mu, theta, phi):
    p = make_momentum(mu, theta, phi)
    for build in (spinor_u, spinor_v):
        for hel in ("R", "L"):
            for refl in (False, True):
                yield build(hel, p, reflected=refl)


@pytest.mark.parametrize("mu", [0.1, MU_M, 1.0, 5.0, 100.0])
def test_dirac_residuals(mu):
    for theta in np.linspace(0, 2 * np.pi, 64, endpoint=False):
        for phi in (0.0, math.pi / 3):
            for s in _all_spinors(mu, theta, phi):
                assert s.residual() <= 1e-10


@pytest.mark.parametrize("mu", [0.1, 1.0, 100.0])
def test_helicity_and_normalisation(mu):
    for theta in (0.2, 1.3, 2.9):
        p = make_momentum(mu, theta, 0.7)
        for refl in (False, True):
            u_r, u_l = spinor_u("R", p, refl), spinor_u("L", p, refl)
            v_r, v_l = spinor_v("R", p, refl), spinor_v("L", p, refl)
            assert two_spinor_helicity(u_r) == pytest.approx(1.0, abs=1e-12)
            assert two_spinor_helicity(u_l) == pytest.approx(-1.0, abs=1e-12)
            assert two_spinor_helicity(v_r) == pytest.approx(-1.0, abs=1e-12)
            assert two_spinor_helicity(v_l) == pytest.approx(1.0, abs=1e-12)
            for u in (u_r, u_l):
                assert (u.adjoint() @ u.components).real == pytest.approx(2.0, rel=1e-10)
            for v in (v_r, v_l):
                assert (v.adjoint() @ v.components).real == pytest.approx(-2.0, rel=1e-10)


@pytest.mark.parametrize("mu", [0.1, MU_M, 5.0, 100.0])
@pytest.mark.parametrize("reflected", [False, True])
def test_completeness(mu, reflected):
    for theta in (0.0, 0.9, 2.4, 4.0):
        p = make_momentum(mu, theta, 1.1)
        target = p.reflected() if reflected else p
        su = sum(np.outer(s.components, s.adjoint()) for s in
                 (spinor_u(h, p, reflected) for h in "RL"))
        sv = sum(np.outer(s.components, s.adjoint()) for s in
                 (spinor_v(h, p, reflected) for h in "RL"))
        scale = max(1.0, target.energy)
        np.testing.assert_allclose(su, slash(target) + np.eye(4), atol=1e-10 * scale)
        np.testing.assert_allclose(sv, slash(target) - np.eye(4), atol=1e-10 * scale)


def test_large_mu_no_cancellation():
    # sqrt(omega - mu) from the reciprocal identity stays accurate at large mu
    p = make_momentum(1e6, 0.0)
    small = spinor_u("R", p).components[0].real
    assert small == pytest.approx(1 / math.sqrt(math.hypot(1, 1e6) + 1e6), rel=1e-14)
    assert small > 0
