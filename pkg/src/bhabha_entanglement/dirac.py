"""
Gamma matrices in the Weyl (chiral) representation and helicity spinors.

Natural units with the electron mass set to one: a momentum of magnitude
``mu`` has energy ``sqrt(1 + mu**2)``.  Directions are given by polar angles
``(theta, phi)``.  Spinors for the reflected momentum ``-p`` are built from the
angles of ``+p`` using their own closed-form columns, which differ from the
direct formula evaluated at ``(pi - theta, phi + pi)`` by an overall sign.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

HELICITIES = ("R", "L")

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

GAMMA0 = np.block([[_Z2, _I2], [_I2, _Z2]])
GAMMA1, GAMMA2, GAMMA3 = (np.block([[_Z2, s], [-s, _Z2]]) for s in PAULI)
GAMMA5 = np.block([[-_I2, _Z2], [_Z2, _I2]])

#: gamma^mu stacked along the first axis, shape (4, 4, 4)
GAMMA = np.stack([GAMMA0, GAMMA1, GAMMA2, GAMMA3])
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

#: spin operator Sigma^i = diag(sigma^i, sigma^i) in this representation
SPIN = np.stack([np.block([[s, _Z2], [_Z2, s]]) for s in PAULI])

for _m in (GAMMA0, GAMMA1, GAMMA2, GAMMA3, GAMMA5, GAMMA, METRIC, SPIN):
    _m.setflags(write=False)


@dataclass(frozen=True)
class FourMomentum:
    """On-shell momentum of a unit-mass particle, parametrised by ``(mu, theta, phi)``."""

    mu: float
    theta: float = 0.0
    phi: float = 0.0

    @property
    def energy(self):
        return float(np.hypot(1.0, self.mu))

    @property
    def direction(self):
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])

    @property
    def vector(self):
        return self.mu * self.direction

    @property
    def components(self):
        """Contravariant components ``(omega, px, py, pz)``."""
        return np.concatenate([[self.energy], self.vector])

    def reflected(self):
        """The momentum with opposite spatial part, ``(omega, -p)``."""
        return FourMomentum(self.mu, np.pi - self.theta, (self.phi + np.pi) % (2 * np.pi))

    def mass_shell(self):
        """``omega**2 - |p|**2``, equal to one on shell."""
        c = self.components
        return float(c @ METRIC @ c)


def make_momentum(mu, theta, phi=0.0):
    """Build the on-shell momentum ``omega = sqrt(1 + mu^2)``, ``p = mu * n(theta, phi)``."""
    if not mu > 0:
        raise DomainError(f"momentum ratio mu must be positive, got {mu!r}")
    return FourMomentum(float(mu), float(theta), float(phi))


def slash(p):
    """Feynman slash ``gamma^mu p_mu`` of a four-momentum."""
    c = p.components if isinstance(p, FourMomentum) else np.asarray(p)
    return np.tensordot(METRIC @ c, GAMMA, axes=1)


@dataclass(frozen=True)
class DiracSpinor:
    """A four-component spinor tagged with its flavour, helicity and momentum.

    ``kind`` is ``"u"`` for particles and ``"v"`` for antiparticles.
    """

    components: np.ndarray = field(repr=False)
    kind: str
    helicity: str
    momentum: FourMomentum

    def __post_init__(self):
        c = np.array(self.components, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "components", c)

    def adjoint(self):
        return dirac_adjoint(self)

    def residual(self):
        """Norm of ``(pslash -+ m) psi`` relative to ``|psi|``."""
        sign = -1.0 if self.kind == "u" else 1.0
        r = (slash(self.momentum) + sign * np.eye(4)) @ self.components
        return float(np.linalg.norm(r) / np.linalg.norm(self.components))


def _sqrt_energy_pair(mu):
    """``sqrt(omega - mu)`` and ``sqrt(omega + mu)`` without cancellation."""
    mu = np.asarray(mu, dtype=float)
    plus = np.hypot(1.0, mu) + mu
    return np.sqrt(1.0 / plus), np.sqrt(plus)


def spinor_columns(kind, helicity, mu, theta, phi=0.0, reflected=False):
    """Vectorised helicity spinor components, shape ``broadcast(mu, theta, phi) + (4,)``.

    With ``reflected=True`` the columns for momentum ``-p`` are returned, still
    parametrised by the angles of ``+p``.
    """
    if helicity not in HELICITIES:
        raise DomainError(f"unknown helicity {helicity!r}")
    a, b = _sqrt_energy_pair(mu)
    half = 0.5 * np.asarray(theta, dtype=float)
    c, s = np.cos(half), np.sin(half)
    e = np.exp(1j * np.asarray(phi, dtype=float))
    key = (kind, helicity, bool(reflected))
    if key == ("u", "R", False):
        col = (a * c, a * e * s, b * c, b * e * s)
    elif key == ("u", "L", False):
        col = (-b * s, b * e * c, -a * s, a * e * c)
    elif key == ("v", "R", False):
        col = (-b * s, b * e * c, a * s, -a * e * c)
    elif key == ("v", "L", False):
        col = (a * c, a * e * s, -b * c, -b * e * s)
    elif key == ("u", "R", True):
        col = (-a * s, a * e * c, -b * s, b * e * c)
    elif key == ("u", "L", True):
        col = (b * c, b * e * s, a * c, a * e * s)
    elif key == ("v", "R", True):
        col = (b * c, b * e * s, -a * c, -a * e * s)
    elif key == ("v", "L", True):
        col = (-a * s, a * e * c, b * s, -b * e * c)
    else:
        raise DomainError(f"unknown spinor kind {kind!r}")
    col = np.broadcast_arrays(*col)
    return np.stack(col, axis=-1).astype(complex)


def _spinor(kind, helicity, momentum, reflected):
    comps = spinor_columns(kind, helicity, momentum.mu, momentum.theta, momentum.phi, reflected)
    actual = momentum.reflected() if reflected else momentum
    return DiracSpinor(comps, kind, helicity, actual)


def spinor_u(helicity, momentum, reflected=False):
    """Particle spinor ``u`` of the given helicity (``"R"`` or ``"L"``).

    If ``reflected`` is true the spinor belongs to ``-p`` (see module notes).
    """
    return _spinor("u", helicity, momentum, reflected)


def spinor_v(helicity, momentum, reflected=False):
    """Antiparticle spinor ``v``; solves ``(pslash + m) v = 0``."""
    return _spinor("v", helicity, momentum, reflected)


def dirac_adjoint(spinor):
    """Row spinor ``psi^dagger gamma^0``."""
    psi = spinor.components if isinstance(spinor, DiracSpinor) else np.asarray(spinor)
    return psi.conj() @ GAMMA0


def two_spinor_helicity(spinor):
    """Eigenvalue of ``Sigma . p_hat`` on the spinor (``+1`` or ``-1``).

    For ``u`` spinors this is the helicity; ``v`` spinors embed the two-spinor of
    opposite sign, so ``v_R`` returns ``-1``.
    """
    n = spinor.momentum.direction
    op = np.tensordot(n, SPIN, axes=1)
    psi = spinor.components
    return float(np.real(psi.conj() @ op @ psi) / np.real(psi.conj() @ psi))


def anticommutator(i, j):
    return GAMMA[i] @ GAMMA[j] + GAMMA[j] @ GAMMA[i]
