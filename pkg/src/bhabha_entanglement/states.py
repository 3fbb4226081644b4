"""
Helicity states before and after scattering, density matrices and partial traces.

Basis ordering is ``A (x) B (x) C`` with ``R -> 0`` and ``L -> 1`` on every
subsystem, so ``|R L R>`` is basis index ``0b010``.
"""
from dataclasses import dataclass, field

import numpy as np

from .amplitudes import HelicityAmplitudeTable, amplitude_table
from .errors import DegenerateStateError, DomainError

_OTHER = {"R": "L", "L": "R"}

#: tolerances enforced on every DensityMatrix
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class ScatteringConfig:
    """Kinematics and initial entanglement of one scattering event.

    ``incoming`` is the helicity of electron A; the first branch of the
    positron carries the same helicity and the second the opposite one.
    """

    mu: float
    theta: float
    eta: float
    beta: float = 0.0
    incoming: str = "R"

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu!r}")
        if not 0 < self.theta < 2 * np.pi:
            raise DomainError(f"theta must lie in (0, 2 pi), got {self.theta!r}")
        if not 0 <= self.eta <= np.pi:
            raise DomainError(f"eta must lie in [0, pi], got {self.eta!r}")
        if not 0 <= self.beta < 2 * np.pi:
            raise DomainError(f"beta must lie in [0, 2 pi), got {self.beta!r}")
        if self.incoming not in _OTHER:
            raise DomainError(f"incoming helicity must be 'R' or 'L', got {self.incoming!r}")


@dataclass(frozen=True)
class MultiQubitState:
    """State vector over two or three helicity labels.

    ``norm`` keeps the norm the vector had before normalisation (1 for states
    built normalised from the start).
    """

    amplitudes: np.ndarray = field(repr=False)
    labels: tuple
    normalized: bool = True
    norm: float = 1.0

    def __post_init__(self):
        psi = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if psi.size != 2 ** len(self.labels):
            raise DomainError(f"{psi.size} amplitudes do not fit labels {self.labels}")
        if self.normalized and abs(np.vdot(psi, psi).real - 1.0) > 1e-12:
            raise DomainError("state flagged normalized does not have unit norm")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_qubits(self):
        return len(self.labels)

    def tensor(self):
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape((2,) * self.n_qubits)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix over labelled qubits.

    The invariants are checked on every construction.
    """

    matrix: np.ndarray = field(repr=False)
    labels: tuple

    def __post_init__(self):
        rho = np.array(self.matrix, dtype=complex)
        dim = 2 ** len(self.labels)
        if rho.shape != (dim, dim):
            raise DomainError(f"matrix of shape {rho.shape} does not fit labels {self.labels}")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > HERMITIAN_TOL:
            raise DomainError(f"density matrix not Hermitian (deviation {herm:.3e})")
        tr = np.trace(rho)
        if abs(tr - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix trace is {tr.real:.15g}, not 1")
        low = np.linalg.eigvalsh(rho).min()
        if low < -PSD_TOL:
            raise DomainError(f"density matrix has negative eigenvalue {low:.3e}")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_qubits(self):
        return len(self.labels)

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)


def _normalized(psi, labels):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if not np.isfinite(norm) or norm < 1e-300:
        raise DegenerateStateError("state has zero norm; all contributing amplitudes vanish")
    return MultiQubitState(psi / norm, labels, True, norm)


def _ket(*helicities):
    psi = np.zeros(2 ** len(helicities), dtype=complex)
    psi[int("".join("0" if h == "R" else "1" for h in helicities), 2)] = 1.0
    return psi


def reference_initial(eta, beta=0.0, incoming="R"):
    """``|a>_A (cos eta |a>_B + e^{i beta} sin eta |a'>_B)`` with ``a' != a``."""
    a, b = incoming, _OTHER[incoming]
    psi = np.cos(eta) * _ket(a, a) + np.exp(1j * beta) * np.sin(eta) * _ket(a, b)
    return MultiQubitState(psi, ("A", "B"))


def tripartite_initial(eta, beta=0.0, incoming="R"):
    """``|a>_A (cos eta |a a>_BC + e^{i beta} sin eta |a' a'>_BC)``."""
    a, b = incoming, _OTHER[incoming]
    psi = np.cos(eta) * _ket(a, a, a) + np.exp(1j * beta) * np.sin(eta) * _ket(a, b, b)
    return MultiQubitState(psi, ("A", "B", "C"))


def _table_for(config, table):
    if table is None:
        return amplitude_table(config.mu, config.theta)
    if not isinstance(table, HelicityAmplitudeTable):
        raise DomainError("expected a HelicityAmplitudeTable")
    if table.phi != 0:
        raise DomainError("final states are built from tables at phi = 0")
    if abs(table.mu - config.mu) > 1e-12 * config.mu or abs(table.theta - config.theta) > 1e-12:
        raise DomainError("amplitude table was evaluated at different kinematics")
    return table


def _branches(config, table):
    a, b = config.incoming, _OTHER[config.incoming]
    first = np.cos(config.eta) * table.final_vector(a, a)
    second = np.exp(1j * config.beta) * np.sin(config.eta) * table.final_vector(a, b)
    return first, second


def reference_final(config, table=None):
    """Post-selected two-qubit state after scattering at fixed ``theta``.

    ``sum_rs [cos eta M(aa; rs) + e^{i beta} sin eta M(aa'; rs)] |r>_A |s>_B``,
    normalised.  ``table`` defaults to the spinor amplitudes at the config's
    kinematics.
    """
    first, second = _branches(config, _table_for(config, table))
    return _normalized(first + second, ("A", "B"))


def tripartite_final(config, table=None):
    """Three-qubit state after scattering; the spectator C tags the positron branch."""
    first, second = _branches(config, _table_for(config, table))
    psi = np.stack([first, second], axis=-1)  # [rs, c]
    a = config.incoming
    if a == "L":
        psi = psi[:, ::-1]  # C carries |L> on the first branch
    return _normalized(psi.reshape(-1), ("A", "B", "C"))


def to_density(state):
    """``|psi><psi| / <psi|psi>``."""
    psi = state.amplitudes
    norm2 = float(np.vdot(psi, psi).real)
    if not np.isfinite(norm2) or norm2 < 1e-300:
        raise DegenerateStateError("cannot form a density matrix from the zero vector")
    return DensityMatrix(np.outer(psi, psi.conj()) / norm2, state.labels)


def partial_trace(rho, keep):
    """Reduce ``rho`` to the subsystems named in ``keep`` (order preserved).

    ``keep`` may be a string such as ``"AC"`` or a sequence of labels.
    """
    keep = tuple(keep)
    labels = rho.labels
    if not keep or any(k not in labels for k in keep) or len(set(keep)) != len(keep):
        raise DomainError(f"cannot keep {keep} from subsystems {labels}")
    n = len(labels)
    tensor = rho.matrix.reshape((2,) * (2 * n))
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i, lab in enumerate(labels):
        if lab not in keep:
            col[i] = row[i]
    order = [labels.index(k) for k in keep]
    out = "".join(row[i] for i in order) + "".join(col[i] for i in order)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, tensor)
    dim = 2 ** len(keep)
    return DensityMatrix(reduced.reshape(dim, dim), keep)


def reduced_pairs(state):
    """Reduced density matrices ``{"AB", "AC", "BC"}`` of a three-qubit state."""
    rho = to_density(state)
    return {pair: partial_trace(rho, pair) for pair in ("AB", "AC", "BC")}
