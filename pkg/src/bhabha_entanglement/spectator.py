"""
Reduced state of the spectator C after A and B scatter.

The final-state momentum integral is reduced to the sphere ``|p3| = mu`` and
carried out as a product rule: Gauss-Legendre in ``cos(theta)`` on panels
graded geometrically towards the forward pole, and a uniform trapezoid in
``phi``.  The region ``theta < theta_min`` around the non-integrable forward
divergence of ``|M|^2`` is excluded.

All box-normalisation constants are folded into one dimensionless weight
``w``: the unscattered part of the state carries weight 1 and the scattered
part weight ``w``.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .amplitudes import amplitude_array
from .errors import DomainError, QuadratureError

_INDEX = {"R": 0, "L": 1}

DEFAULT_THETA_MIN = 1e-3
#: graded panels per decade of t = 1 - cos(theta) when n_panels is not given
PANELS_PER_DECADE = 2.5


def cross_term(a, mu, theta, phi, first="R", second="L"):
    """``sum_rs M(a first; rs) conj(M(a second; rs))`` at outgoing direction ``(theta, phi)``.

    ``first``/``second`` are the positron helicities; the default pair gives the
    interference term between the two branches of the entangled positron.
    """
    m = amplitude_array(mu, theta, phi)
    ia = _INDEX[a]
    out = np.sum(m[..., ia, _INDEX[first], :, :] * m[..., ia, _INDEX[second], :, :].conj(),
                 axis=(-2, -1))
    return complex(out) if np.ndim(out) == 0 else out


def solid_angle_rule(theta_min=DEFAULT_THETA_MIN, n_panels=None, nodes_per_panel=16, n_phi=64):
    """Nodes and weights on the sphere with the cap ``theta < theta_min`` removed.

    ``n_panels`` defaults to :data:`PANELS_PER_DECADE` panels per decade of
    ``1 - cos(theta)``, so the panel ratio does not depend on the cutoff.
    Returns ``(theta, phi, weight)`` arrays of shape ``(n_theta, n_phi)``; the
    weights sum to the solid angle of the remaining region.
    """
    if not 0 < theta_min < np.pi:
        raise DomainError("theta_min must lie in (0, pi)")
    # t = 1 - cos(theta) runs from t_min to 2
    t_min = 2.0 * np.sin(0.5 * theta_min) ** 2
    if n_panels is None:
        n_panels = max(4, int(np.ceil(PANELS_PER_DECADE * np.log10(2.0 / t_min))))
    if n_phi < 2 or n_panels < 1 or nodes_per_panel < 1:
        raise DomainError("quadrature needs at least one panel and two phi nodes")
    edges = t_min * (2.0 / t_min) ** (np.arange(n_panels + 1) / n_panels)
    x, wx = np.polynomial.legendre.leggauss(nodes_per_panel)
    lo, hi = edges[:-1, None], edges[1:, None]
    t = (0.5 * (hi - lo) * x + 0.5 * (hi + lo)).ravel()
    wt = (0.5 * (hi - lo) * wx).ravel()
    theta = 2.0 * np.arcsin(np.sqrt(0.5 * t))
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    weight = wt[:, None] * np.full(n_phi, 2.0 * np.pi / n_phi)
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    return th, ph, weight


@dataclass(frozen=True)
class SpectatorIntegrals:
    """Angular integrals entering the spectator density matrix.

    ``up``/``down`` integrate ``sum_rs |M(a b; rs)|^2`` for positron helicity
    ``b = R``/``L``; ``cross`` integrates :func:`cross_term`.
    """

    up: float
    down: float
    cross: complex
    mu: float
    incoming: str
    theta_min: float
    n_nodes: int


@lru_cache(maxsize=256)
def spectator_integrals(mu, a="R", theta_min=DEFAULT_THETA_MIN, n_panels=None,
                        nodes_per_panel=16, n_phi=64):
    th, ph, w = solid_angle_rule(theta_min, n_panels, nodes_per_panel, n_phi)
    m = amplitude_array(mu, th, ph)[..., _INDEX[a], :, :, :]  # [..., b, r, s]
    up = np.sum(np.abs(m[..., 0, :, :]) ** 2, axis=(-2, -1))
    down = np.sum(np.abs(m[..., 1, :, :]) ** 2, axis=(-2, -1))
    cross = np.sum(m[..., 0, :, :] * m[..., 1, :, :].conj(), axis=(-2, -1))
    # fixed summation order keeps results bit-reproducible
    return SpectatorIntegrals(
        float(np.sum(w * up)), float(np.sum(w * down)), complex(np.sum(w * cross)),
        float(mu), a, float(theta_min), int(w.size),
    )


def lambda_norm(eta, mu, a="R", theta_min=DEFAULT_THETA_MIN, **rule):
    """Angular integral of ``cos^2(eta) sum|M(a R; rs)|^2 + sin^2(eta) sum|M(a L; rs)|^2``."""
    ints = spectator_integrals(float(mu), a, float(theta_min), **rule)
    return np.cos(eta) ** 2 * ints.up + np.sin(eta) ** 2 * ints.down


@dataclass(frozen=True)
class SpectatorDensity:
    """Normalised 2x2 spin state of the spectator after scattering."""

    matrix: np.ndarray = field(repr=False)
    eta: float
    weight: float
    normalization: float
    integrals: SpectatorIntegrals = field(repr=False)

    @property
    def max_offdiag(self):
        return float(abs(self.matrix[0, 1]))

    def deviation_from_initial(self):
        """Largest entrywise difference from ``diag(cos^2 eta, sin^2 eta)``."""
        return float(np.max(np.abs(self.matrix - rho_C_initial(self.eta))))


def rho_C_initial(eta):
    return np.diag([np.cos(eta) ** 2, np.sin(eta) ** 2]).astype(complex)


def rho_C_final(eta, mu, w=1.0, a="R", beta=0.0, theta_min=DEFAULT_THETA_MIN,
                n_panels=None, nodes_per_panel=16, n_phi=64, rtol=1e-8):
    """Spectator density matrix after scattering, normalised to unit trace.

    The diagonal is ``(1 + w I_b) * weight_b`` and the off-diagonal
    ``w * cross * cos(eta) sin(eta) e^{-/+ i beta}``.  The quadrature is
    repeated with half the nodes per panel; if the ``|M|^2`` integrals move by
    more than ``rtol`` a :class:`QuadratureError` is raised.
    """
    if w < 0:
        raise DomainError("coupling weight must be nonnegative")
    rule = dict(n_panels=n_panels, nodes_per_panel=nodes_per_panel, n_phi=n_phi)
    ints = spectator_integrals(float(mu), a, float(theta_min), **rule)
    if rtol is not None and nodes_per_panel >= 2:
        coarse = spectator_integrals(float(mu), a, float(theta_min), n_panels,
                                     nodes_per_panel // 2, n_phi)
        achieved = max(abs(coarse.up - ints.up) / ints.up, abs(coarse.down - ints.down) / ints.down)
        if achieved > rtol:
            raise QuadratureError(
                f"spectator integrals not converged (relative change {achieved:.2e})", achieved
            )
    c, s = np.cos(eta), np.sin(eta)
    raw = np.array([
        [(1.0 + w * ints.up) * c * c, w * np.exp(-1j * beta) * c * s * ints.cross],
        [w * np.exp(1j * beta) * c * s * np.conj(ints.cross), (1.0 + w * ints.down) * s * s],
    ])
    norm = float(np.real(np.trace(raw)))
    return SpectatorDensity(raw / norm, float(eta), float(w), norm, ints)
