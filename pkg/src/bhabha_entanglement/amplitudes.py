"""
Polarised tree-level Bhabha amplitudes ``M(ab; rs)``.

Incoming electron (helicity ``a``) moves along ``+z`` and the positron
(helicity ``b``) along ``-z``; the outgoing electron (``r``) leaves at polar
angles ``(theta, phi)`` and the positron (``s``) back to back with it.  The
coupling ``e**2`` is set to one.

Two independent routes are provided:

* :func:`amplitude_spinor` contracts the s- and t-channel currents built from
  the helicity spinors of :mod:`bhabha_entanglement.dirac`;
* :func:`amplitude_closed` evaluates the known closed forms at ``phi = 0``.

Helicity indices in arrays use ``R -> 0``, ``L -> 1``.
"""
from dataclasses import dataclass, field

import numpy as np

from .dirac import GAMMA, GAMMA0, HELICITIES, METRIC, spinor_columns
from .errors import DomainError, PoleError

#: angular distance from theta = 0 (mod 2 pi) below which evaluation is refused
POLE_GUARD = 1e-6

_INDEX = {"R": 0, "L": 1}
FINAL_ORDER = ("RR", "RL", "LR", "LL")

#: (lhs, rhs, sign) meaning M[lhs] = sign * M[rhs]
SYMMETRY_RELATIONS = (
    ("RR;RR", "LL;LL", 1),
    ("RR;RL", "RR;LR", 1),
    ("RR;RL", "LL;RL", -1),
    ("RR;RL", "LL;LR", -1),
    ("RR;LL", "LL;RR", 1),
    ("RL;RR", "LR;RR", 1),
    ("RL;RR", "RL;LL", -1),
    ("RL;RR", "LR;LL", -1),
    ("RL;RL", "LR;LR", 1),
    ("RL;LR", "LR;RL", 1),
)


def _check_kinematics(mu, theta):
    mu = np.asarray(mu, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(~(mu > 0)):
        raise DomainError("momentum ratio mu must be positive")
    wrapped = np.mod(theta, 2 * np.pi)
    dist = np.minimum(wrapped, 2 * np.pi - wrapped)
    if np.any(dist < POLE_GUARD):
        raise PoleError(
            f"theta within {POLE_GUARD:g} rad of the forward t-channel pole"
        )
    return mu, theta


def mandelstam(mu, theta):
    """Return ``(s, t)`` for elastic scattering at ``mu`` and angle ``theta``."""
    mu = np.asarray(mu, dtype=float)
    s = 4.0 * (1.0 + mu * mu)
    t = -2.0 * mu * mu * (1.0 - np.cos(theta))
    return s, t


def _bilinear(left, right):
    """``bar(left) gamma^mu right`` for stacked spinors; last axis is mu."""
    bar = left.conj() @ GAMMA0
    return np.einsum("...i,mij,...j->...m", bar, GAMMA, right)


def amplitude_array(mu, theta, phi=0.0):
    """All sixteen amplitudes from spinor contractions.

    Returns a complex array of shape ``broadcast(mu, theta, phi) + (2, 2, 2, 2)``
    indexed ``[a, b, r, s]``.
    """
    mu, theta = _check_kinematics(mu, theta)
    mu, theta, phi = np.broadcast_arrays(mu, theta, np.asarray(phi, dtype=float))

    def stack(kind, theta_, phi_, reflected):
        return np.stack(
            [spinor_columns(kind, h, mu, theta_, phi_, reflected) for h in HELICITIES],
            axis=-2,
        )

    zero = np.zeros_like(theta)
    u1 = stack("u", zero, zero, False)  # [..., a, i]
    v2 = stack("v", zero, zero, True)  # [..., b, i]
    u3 = stack("u", theta, phi, False)  # [..., r, i]
    v4 = stack("v", theta, phi, True)  # [..., s, i]

    j_ann_in = _bilinear(v2[..., :, None, :], u1[..., None, :, :])  # [b, a, mu]
    j_ann_out = _bilinear(u3[..., :, None, :], v4[..., None, :, :])  # [r, s, mu]
    j_pos = _bilinear(v2[..., :, None, :], v4[..., None, :, :])  # [b, s, mu]
    j_ele = _bilinear(u3[..., :, None, :], u1[..., None, :, :])  # [r, a, mu]

    s_inv, t_inv = (1.0 / x for x in mandelstam(mu, theta))
    g = np.diag(METRIC)
    s_chan = np.einsum("...bam,m,...rsm->...abrs", j_ann_in, g, j_ann_out)
    t_chan = np.einsum("...bsm,m,...ram->...abrs", j_pos, g, j_ele)
    return (s_chan * s_inv[..., None, None, None, None]
            - t_chan * t_inv[..., None, None, None, None])


def _parse(a, b, r, s):
    try:
        return _INDEX[a], _INDEX[b], _INDEX[r], _INDEX[s]
    except KeyError as exc:
        raise DomainError(f"unknown helicity label {exc.args[0]!r}") from None


def amplitude_spinor(a, b, r, s, mu, theta, phi=0.0):
    """Spinor-contraction amplitude ``M(ab; rs)`` (complex)."""
    idx = _parse(a, b, r, s)
    out = amplitude_array(mu, theta, phi)[(..., *idx)]
    return complex(out) if np.ndim(out) == 0 else out


def _closed_forms(mu, theta):
    m2 = mu * mu
    c = np.cos(theta)
    half = 0.5 * theta
    cot = np.cos(half) / np.sin(half)
    csc2 = 1.0 / np.sin(half) ** 2
    same = ((2 + 11 * m2 + 8 * m2 * m2 + 2 * c + m2 * np.cos(2 * theta)) * csc2
            / (4 * m2 * (1 + m2)))
    flip = (1 + m2 * c) * cot / (m2 * np.sqrt(1 + m2))
    swap = (1 + m2 * (1 + c)) / (m2 * (1 + m2))
    keep = (1 + m2 * (1 + c)) * cot * cot / m2
    cross = 1 - c - 1 / m2
    return same, flip, swap, keep, cross


def closed_form_array(mu, theta):
    """All sixteen closed-form amplitudes at ``phi = 0``, real, indexed ``[a, b, r, s]``."""
    mu, theta = _check_kinematics(mu, theta)
    mu, theta = np.broadcast_arrays(mu, theta)
    same, flip, swap, keep, cross = _closed_forms(mu, theta)
    out = np.empty(theta.shape + (2, 2, 2, 2))
    R, L = 0, 1
    out[..., R, R, R, R] = out[..., L, L, L, L] = same
    out[..., R, R, R, L] = out[..., R, R, L, R] = -flip
    out[..., L, L, R, L] = out[..., L, L, L, R] = flip
    out[..., R, R, L, L] = out[..., L, L, R, R] = swap
    out[..., R, L, R, R] = out[..., L, R, R, R] = flip
    out[..., R, L, L, L] = out[..., L, R, L, L] = -flip
    out[..., R, L, R, L] = out[..., L, R, L, R] = keep
    out[..., R, L, L, R] = out[..., L, R, R, L] = cross
    return out


def amplitude_closed(a, b, r, s, mu, theta):
    """Closed-form amplitude ``M(ab; rs)`` at ``phi = 0`` (real)."""
    idx = _parse(a, b, r, s)
    out = closed_form_array(mu, theta)[(..., *idx)]
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class HelicityAmplitudeTable:
    """The sixteen amplitudes at one kinematic point.

    ``values[a, b, r, s]`` with ``R -> 0`` and ``L -> 1``.  Lookups also accept
    string keys such as ``table["RR;RL"]``.
    """

    values: np.ndarray = field(repr=False)
    mu: float
    theta: float
    phi: float = 0.0
    source: str = "spinor"

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (2, 2, 2, 2):
            raise DomainError(f"amplitude table must have shape (2, 2, 2, 2), got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, key):
        if isinstance(key, str):
            initial, final = key.replace(" ", "").split(";")
            key = tuple(initial) + tuple(final)
        return self.values[_parse(*key)]

    def final_vector(self, a, b):
        """The four amplitudes ``M(ab; rs)`` ordered ``RR, RL, LR, LL``."""
        return self.values[_INDEX[a], _INDEX[b]].reshape(4)

    def scaled(self, factor):
        return HelicityAmplitudeTable(self.values * factor, self.mu, self.theta, self.phi, self.source)

    def symmetry_violation(self):
        """Largest ``|M[lhs] - sign * M[rhs]|`` over the known relations."""
        return max(abs(self[lhs] - sign * self[rhs]) for lhs, rhs, sign in SYMMETRY_RELATIONS)


def amplitude_table(mu, theta, phi=0.0, source="spinor"):
    """Build the full amplitude table with either the ``"spinor"`` or ``"closed"`` route."""
    if source == "spinor":
        values = amplitude_array(mu, theta, phi)
    elif source == "closed":
        if phi != 0:
            raise DomainError("closed forms are only defined at phi = 0")
        values = closed_form_array(mu, theta)
    else:
        raise DomainError(f"unknown amplitude source {source!r}")
    return HelicityAmplitudeTable(values, float(mu), float(theta), float(phi), source)


def tables_for_thetas(mu, thetas, phi=0.0):
    """Spinor tables for many angles at once (one vectorised contraction)."""
    values = amplitude_array(mu, np.asarray(thetas, dtype=float), phi)
    return [HelicityAmplitudeTable(v, float(mu), float(t), float(phi))
            for v, t in zip(values, np.asarray(thetas, dtype=float))]


@dataclass(frozen=True)
class KappaReport:
    """Result of comparing the two amplitude routes."""

    kappa: complex
    max_relative_deviation: float
    n_compared: int


def measure_kappa(mus, thetas, floor=1e-6):
    """Fit the single constant ``kappa`` with ``spinor = kappa * closed``.

    Every entry with ``|closed|`` above ``floor`` times the largest entry of its
    table is compared relative to ``|kappa * closed|``; smaller entries (zeros of
    the closed forms) are compared relative to the table's largest entry.
    """
    num = 0j
    den = 0.0
    pairs = []
    for mu in np.atleast_1d(mus):
        sp = amplitude_array(mu, thetas)
        cl = closed_form_array(mu, thetas)
        num += np.sum(sp * cl)
        den += np.sum(cl * cl)
        pairs.append((sp, cl))
    kappa = num / den
    worst = 0.0
    count = 0
    for sp, cl in pairs:
        scale = np.max(np.abs(cl), axis=(-4, -3, -2, -1), keepdims=True)
        ref = np.abs(kappa * cl)
        denom = np.where(np.abs(cl) > floor * scale, ref, np.abs(kappa) * scale)
        dev = np.abs(sp - kappa * cl) / denom
        worst = max(worst, float(dev.max()))
        count += dev.size
    return KappaReport(complex(kappa), worst, count)
