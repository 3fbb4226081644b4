"""
Wootters concurrence of two-qubit states and the high-energy closed forms.

The lambdas entering ``C = max(0, l1 - l2 - l3 - l4)`` are the square roots of
the eigenvalues of ``rho @ spin_flip(rho)``.  :func:`concurrence` obtains them
as the singular values of ``W.T @ (sy (x) sy) @ W`` where ``rho = W @ W^dagger``;
the two are the same numbers, but the singular values are accurate to machine
precision while square roots of near-zero eigenvalues of the non-Hermitian
product carry errors of order ``sqrt(eps)``.  The eigenvalue route is kept as
:func:`concurrence_eig`, and :func:`concurrence_hermitian` uses
``sqrt(sqrt(rho) rho~ sqrt(rho))``.
"""
from dataclasses import dataclass

import numpy as np

from .dirac import SIGMA_Y
from .errors import DomainError, NumericalDegradationError
from .states import DensityMatrix, MultiQubitState

SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)
SPIN_FLIP.setflags(write=False)

#: residues below this are discarded silently (reported in diagnostics)
CLAMP_TOL = 1e-9
#: residues at or above this raise NumericalDegradationError
DEGRADATION_TOL = 1e-6


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: tuple
    max_imag_discarded: float = 0.0
    min_eigenvalue_clamped: float = 0.0
    method: str = "svd"

    def __float__(self):
        return self.value


def _matrix(rho):
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise DomainError(f"concurrence needs a 4x4 two-qubit matrix, got shape {m.shape}")
    return m


def spin_flip(rho):
    """``(sy (x) sy) rho* (sy (x) sy)`` in the computational basis."""
    m = _matrix(rho)
    return SPIN_FLIP @ m.conj() @ SPIN_FLIP


def _result(lambdas, method, imag=0.0, clamped=0.0):
    lam = np.sort(np.asarray(lambdas, dtype=float))[::-1]
    value = max(0.0, float(lam[0] - lam[1:].sum()))
    return ConcurrenceResult(value, tuple(float(x) for x in lam), float(imag), float(clamped), method)


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix.

    Returns a :class:`ConcurrenceResult`; ``float(result)`` gives the value.
    Eigenvalues of ``rho`` below ``-DEGRADATION_TOL`` raise
    :class:`NumericalDegradationError`.
    """
    m = _matrix(rho)
    d, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    low = float(d.min())
    if low < -DEGRADATION_TOL:
        raise NumericalDegradationError(
            f"density matrix eigenvalue {low:.3e} is too negative to clamp",
            {"min_eigenvalue": low},
        )
    w = v * np.sqrt(np.clip(d, 0.0, None))
    tau = w.T @ SPIN_FLIP @ w
    lam = np.linalg.svd(tau, compute_uv=False)
    return _result(lam, "svd", clamped=min(low, 0.0))


def concurrence_eig(rho):
    """Concurrence from the general eigensolver applied to ``rho @ spin_flip(rho)``."""
    m = _matrix(rho)
    ev = np.linalg.eigvals(m @ spin_flip(m))
    imag = float(np.max(np.abs(ev.imag)))
    low = float(ev.real.min())
    diagnostics = {"max_imag": imag, "min_real": low}
    if imag >= DEGRADATION_TOL or low <= -DEGRADATION_TOL:
        raise NumericalDegradationError("eigenvalues of R are not real and nonnegative", diagnostics)
    lam = np.sqrt(np.clip(ev.real, 0.0, None))
    return _result(lam, "eig", imag=imag, clamped=min(low, 0.0))


def _psd_sqrt(m):
    d, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return (v * np.sqrt(np.clip(d, 0.0, None))) @ v.conj().T


def concurrence_hermitian(rho):
    """Concurrence from the Hermitian matrix ``sqrt(rho) rho~ sqrt(rho)``."""
    m = _matrix(rho)
    s = _psd_sqrt(m)
    h = s @ spin_flip(m) @ s
    ev = np.linalg.eigvalsh(0.5 * (h + h.conj().T))
    return _result(np.sqrt(np.clip(ev, 0.0, None)), "hermitian", clamped=min(float(ev.min()), 0.0))


def pure_state_concurrence(state):
    """``2 |ad - bc|`` for a (possibly unnormalised) two-qubit vector ``(a, b, c, d)``."""
    psi = state.amplitudes if isinstance(state, MultiQubitState) else np.asarray(state, dtype=complex)
    if psi.shape != (4,):
        raise DomainError("pure-state concurrence needs four amplitudes")
    a, b, c, d = psi
    return float(2 * abs(a * d - b * c) / np.vdot(psi, psi).real)


# relativistic limits --------------------------------------------------------

def limit_denominator(eta, theta):
    """``1 - (1 - sin^2(theta)/8) sin^2(theta) sin^2(eta)``, shared by all limits."""
    s2 = np.sin(theta) ** 2
    return 1.0 - (1.0 - s2 / 8.0) * s2 * np.sin(eta) ** 2


def limit_C_AB(eta, theta):
    """High-energy concurrence of the AB pair after scattering."""
    num = 2.0 * np.sin(eta) ** 2 * np.sin(theta / 2) ** 4 * np.cos(theta / 2) ** 4
    return num / limit_denominator(eta, theta)


def limit_C_REF(eta, theta):
    """High-energy concurrence of the reference state; identical to :func:`limit_C_AB`."""
    return limit_C_AB(eta, theta)


def limit_C_AC(eta, theta):
    """High-energy concurrence of the AC pair (uses ``|sin 2 eta|``)."""
    return np.abs(np.sin(2 * eta)) * np.sin(theta / 2) ** 4 / limit_denominator(eta, theta)


def limit_C_BC(eta, theta):
    """High-energy concurrence of the BC pair (uses ``|sin 2 eta|``)."""
    return np.abs(np.sin(2 * eta)) * np.cos(theta / 2) ** 4 / limit_denominator(eta, theta)
