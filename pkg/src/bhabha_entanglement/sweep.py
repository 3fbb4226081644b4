"""
Parameter sweeps over ``(theta, mu, eta)``, CSV I/O, plan files and the
built-in verification reports.
"""
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.optimize import minimize_scalar

from .amplitudes import POLE_GUARD, amplitude_table, tables_for_thetas
from .entanglement import (concurrence, limit_C_AB, limit_C_AC, limit_C_BC,
                           limit_C_REF)
from .errors import (DegenerateStateError, DomainError, NumericalDegradationError,
                     PoleError)
from .spectator import rho_C_final
from .states import (ScatteringConfig, reduced_pairs, reference_final, to_density,
                     tripartite_final)

log = logging.getLogger(__name__)

#: momentum ratio maximising the RR-channel concurrence, (1/2) sqrt(sqrt(17) - 3)
MU_M = 0.5 * math.sqrt(math.sqrt(17.0) - 3.0)

CSV_FIELDS = ("theta", "mu", "eta", "beta", "C_AB", "C_AC", "C_BC", "C_REF", "diff")
CHANNELS = ("C_AB", "C_AC", "C_BC", "C_REF")

_POINT_ERRORS = (PoleError, DegenerateStateError, NumericalDegradationError, DomainError)


@dataclass(frozen=True)
class SweepRecord:
    theta: float
    mu: float
    eta: float
    beta: float
    C_AB: float
    C_AC: float
    C_BC: float
    C_REF: float
    diff: float
    error: str = field(default=None, compare=False)

    @property
    def ok(self):
        return self.error is None

    def row(self):
        return tuple(getattr(self, name) for name in CSV_FIELDS)


@dataclass(frozen=True)
class SweepPlan:
    """Grid definition for a sweep.

    ``theta_points`` angles are placed at half-step offsets inside
    ``(theta_start, theta_stop)`` so neither endpoint is sampled.
    """

    theta_points: int = 720
    mu: tuple = (1.0,)
    eta: tuple = (math.pi / 4,)
    beta: float = 0.0
    incoming: str = "R"
    theta_start: float = 0.0
    theta_stop: float = 2 * math.pi
    out: str = None

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(float(m) for m in np.atleast_1d(self.mu)))
        object.__setattr__(self, "eta", tuple(float(e) for e in np.atleast_1d(self.eta)))
        if int(self.theta_points) < 2:
            raise DomainError("a sweep needs at least two theta points")
        object.__setattr__(self, "theta_points", int(self.theta_points))
        if not 0 <= self.theta_start < self.theta_stop <= 2 * math.pi:
            raise DomainError("theta range must satisfy 0 <= start < stop <= 2 pi")
        if not self.mu or not self.eta:
            raise DomainError("mu and eta lists must not be empty")
        # validates mu, eta, beta, incoming once up front
        for m in self.mu:
            for e in self.eta:
                ScatteringConfig(m, math.pi, e, self.beta, self.incoming)

    def thetas(self):
        step = (self.theta_stop - self.theta_start) / self.theta_points
        return self.theta_start + (np.arange(self.theta_points) + 0.5) * step


def point_concurrences(config, table=None):
    """The four concurrences at one configuration, as a dict keyed by channel."""
    if table is None:
        table = amplitude_table(config.mu, config.theta)
    pairs = reduced_pairs(tripartite_final(config, table))
    ref = to_density(reference_final(config, table))
    out = {f"C_{k}": concurrence(v).value for k, v in pairs.items()}
    out["C_REF"] = concurrence(ref).value
    return out


def _failed(theta, mu, eta, beta, exc):
    log.warning("sweep point theta=%r mu=%r eta=%r failed: %s", theta, mu, eta, exc)
    nan = float("nan")
    return SweepRecord(theta, mu, eta, beta, nan, nan, nan, nan, nan,
                       error=f"{type(exc).__name__}: {exc}")


def _tables(mu, thetas):
    """Tables for every theta; entries too close to the pole hold the exception."""
    wrapped = np.mod(thetas, 2 * np.pi)
    safe = np.minimum(wrapped, 2 * np.pi - wrapped) >= POLE_GUARD
    out = [None] * len(thetas)
    if safe.any():
        for i, t in zip(np.flatnonzero(safe), tables_for_thetas(mu, thetas[safe])):
            out[i] = t
    for i in np.flatnonzero(~safe):
        out[i] = PoleError(f"theta={thetas[i]!r} is at the forward pole")
    return out


def run_sweep(plan):
    """Evaluate the plan; records are ordered theta-major, then mu, then eta.

    Failed points become rows of NaN with ``error`` set; the sweep continues.
    """
    thetas = plan.thetas()
    tables = {mu: _tables(mu, thetas) for mu in plan.mu}
    records = []
    for i, theta in enumerate(thetas):
        theta = float(theta)
        for mu in plan.mu:
            table = tables[mu][i]
            for eta in plan.eta:
                try:
                    if isinstance(table, Exception):
                        raise table
                    cfg = ScatteringConfig(mu, theta, eta, plan.beta, plan.incoming)
                    c = point_concurrences(cfg, table)
                except _POINT_ERRORS as exc:
                    records.append(_failed(theta, mu, eta, plan.beta, exc))
                    continue
                records.append(SweepRecord(theta, mu, eta, plan.beta, c["C_AB"], c["C_AC"],
                                           c["C_BC"], c["C_REF"], c["C_REF"] - c["C_AB"]))
    return records


# CSV ----------------------------------------------------------------------------

def _fmt(x):
    return format(float(x), ".17g")


def write_csv(records, target):
    """Write records to a path or text stream (UTF-8, LF line endings)."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as fh:
            return write_csv(records, fh)
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in records:
        writer.writerow([_fmt(x) for x in rec.row()])


def csv_text(records):
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def read_csv(source):
    """Parse a CSV written by :func:`write_csv` back into records."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fh:
            return read_csv(fh)
    reader = csv.reader(source)
    header = tuple(next(reader))
    if header != CSV_FIELDS:
        raise DomainError(f"unexpected CSV header {header}")
    return [SweepRecord(*(float(x) for x in row)) for row in reader if row]


# plan files ---------------------------------------------------------------------

_PLAN_KEYS = {"theta_points", "mu", "eta", "beta", "incoming", "theta_start", "theta_stop", "out"}


def parse_plan(text):
    """Parse flat ``key=value`` plan text; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or key not in _PLAN_KEYS:
            raise DomainError(f"plan line {lineno}: cannot parse {line!r}")
        values[key] = value
    kwargs = {}
    try:
        for key, value in values.items():
            if key in ("mu", "eta"):
                kwargs[key] = tuple(float(v) for v in value.split(","))
            elif key == "theta_points":
                kwargs[key] = int(value)
            elif key in ("incoming", "out"):
                kwargs[key] = value
            else:
                kwargs[key] = float(value)
    except ValueError as exc:
        raise DomainError(f"bad plan value: {exc}") from None
    return SweepPlan(**kwargs)


def load_plan(path):
    return parse_plan(Path(path).read_text(encoding="utf-8"))


def figure_plan(figure_id):
    """The shipped plan for a figure id such as ``2``, ``"06"`` or ``"fig11"``."""
    key = str(figure_id).lower().removeprefix("fig").lstrip("0")
    name = f"fig{int(key):02d}.plan" if key.isdigit() else None
    if name is None or not resources.files(__package__).joinpath("plans", name).is_file():
        raise DomainError(f"no shipped plan for figure {figure_id!r}")
    return parse_plan(resources.files(__package__).joinpath("plans", name).read_text("utf-8"))


def shipped_figures():
    names = sorted(p.name for p in resources.files(__package__).joinpath("plans").iterdir()
                   if p.name.endswith(".plan"))
    return [int(n[3:5]) for n in names]


# verification reports -----------------------------------------------------------

@dataclass(frozen=True)
class LimitReport:
    mu: float
    tol: float
    max_deviation: dict
    by_eta: np.ndarray = field(repr=False)
    etas: tuple = field(repr=False)
    convergence_order: dict = None

    @property
    def worst(self):
        return max(self.max_deviation.values())

    @property
    def passed(self):
        return self.worst <= self.tol


_LIMITS = {"C_AB": limit_C_AB, "C_AC": limit_C_AC, "C_BC": limit_C_BC, "C_REF": limit_C_REF}


def _limit_deviations(mu, thetas, etas):
    dev = np.zeros((len(etas), len(CHANNELS)))
    tables = tables_for_thetas(mu, thetas)
    for table, theta in zip(tables, thetas):
        for i, eta in enumerate(etas):
            c = point_concurrences(ScatteringConfig(mu, float(theta), float(eta)), table)
            for j, ch in enumerate(CHANNELS):
                dev[i, j] = max(dev[i, j], abs(c[ch] - _LIMITS[ch](eta, theta)))
    return dev


def check_limits(mu_large=1000.0, tol=1e-3, theta_points=180, eta_points=9, measure_rate=False):
    """Compare pipeline concurrences at ``mu_large`` with the high-energy closed forms.

    The grid is ``theta_points`` half-offset angles on ``(0, 2 pi)`` times
    ``eta_points`` values spanning ``[0, pi]``.  With ``measure_rate`` the check
    is repeated at ``mu_large / 10`` and the empirical order
    ``log10(dev(mu/10) / dev(mu))`` is reported per channel.
    """
    if mu_large < 50:
        raise DomainError("check_limits needs mu_large >= 50")
    thetas = (np.arange(theta_points) + 0.5) * 2 * np.pi / theta_points
    etas = np.linspace(0.0, np.pi, eta_points)
    dev = _limit_deviations(mu_large, thetas, etas)
    worst = {ch: float(dev[:, j].max()) for j, ch in enumerate(CHANNELS)}
    order = None
    if measure_rate:
        coarse = _limit_deviations(mu_large / 10, thetas, etas).max(axis=0)
        order = {ch: float(np.log10(coarse[j] / worst[ch])) if worst[ch] > 0 else math.inf
                 for j, ch in enumerate(CHANNELS)}
    return LimitReport(float(mu_large), float(tol), worst, dev, tuple(etas), order)


@dataclass(frozen=True)
class MirrorReport:
    mu: float
    eta: float
    max_reflection_error: float
    asymmetry: float
    opposite_asymmetry: float
    tol: float = 1e-9

    @property
    def passed(self):
        return self.max_reflection_error <= self.tol


def reference_curve(mu, thetas, eta, beta=0.0, incoming="R"):
    """Reference-state concurrence along a list of angles."""
    tables = tables_for_thetas(mu, thetas)
    return np.array([
        concurrence(to_density(reference_final(
            ScatteringConfig(mu, float(t), eta, beta, incoming), tab))).value
        for t, tab in zip(thetas, tables)
    ])


def check_mirror(mu=2.0, eta=math.pi / 8, beta=0.0, theta_points=720, tol=1e-9):
    """Opposite incoming helicities must reflect the reference curve about ``theta = pi``."""
    thetas = (np.arange(theta_points) + 0.5) * 2 * np.pi / theta_points
    mirrored = 2 * np.pi - thetas
    std = reference_curve(mu, thetas, eta, beta, "R")
    std_mirrored = reference_curve(mu, mirrored, eta, beta, "R")
    opp = reference_curve(mu, thetas, eta, beta, "L")
    opp_mirrored = reference_curve(mu, mirrored, eta, beta, "L")
    return MirrorReport(
        float(mu), float(eta),
        float(np.max(np.abs(opp - std_mirrored))),
        float(np.max(np.abs(std - std_mirrored))),
        float(np.max(np.abs(opp - opp_mirrored))),
        tol,
    )


@dataclass(frozen=True)
class SpectatorReport:
    max_offdiag: float
    max_diag_deviation: float
    max_cutoff_change: float
    rows: tuple = field(repr=False)
    tol: float = 1e-8

    @property
    def offdiag_passed(self):
        return self.max_offdiag < self.tol and self.max_cutoff_change < self.tol

    @property
    def diag_passed(self):
        return self.max_diag_deviation < self.tol

    @property
    def passed(self):
        return self.offdiag_passed and self.diag_passed


def check_spectator(mus=(MU_M, 1.0, 5.0, 100.0), etas=(math.pi / 8, math.pi / 4, 3 * math.pi / 8),
                    weights=(0.0, 1.0, 100.0), cutoffs=(1e-3, 1e-4), tol=1e-8):
    """Compare the spectator state after scattering with ``diag(cos^2 eta, sin^2 eta)``.

    ``rows`` holds ``(mu, eta, w, cutoff, |offdiag|, diag deviation)`` per case;
    ``max_cutoff_change`` is the largest change of the off-diagonal element
    between the cutoffs.
    """
    rows = []
    worst_cut = 0.0
    for mu in mus:
        for eta in etas:
            for w in weights:
                per_cut = []
                for cut in cutoffs:
                    rho = rho_C_final(eta, mu, w, theta_min=cut)
                    diag_dev = float(np.max(np.abs(np.diag(rho.matrix).real
                                                   - [math.cos(eta) ** 2, math.sin(eta) ** 2])))
                    rows.append((mu, eta, w, cut, rho.max_offdiag, diag_dev))
                    per_cut.append(rho.matrix[0, 1])
                worst_cut = max(worst_cut, float(np.ptp(np.abs(per_cut))))
    rows = tuple(rows)
    return SpectatorReport(
        max(r[4] for r in rows), max(r[5] for r in rows), worst_cut, rows, tol,
    )


@dataclass(frozen=True)
class MuPeak:
    mu: float
    theta: float
    concurrence: float


def _ref_value(mu, theta, eta):
    return concurrence(to_density(reference_final(ScatteringConfig(mu, theta, eta)))).value


def locate_mu_peak(eta=0.0, mu_bounds=(0.1, 2.0), theta_points=180, mu_points=1901,
                   coarse_mu_points=96):
    """Find the momentum ratio maximising the reference-state concurrence.

    The concurrence surface is first sampled on a coarse ``(mu, theta)`` grid to
    find the peak angle, which is refined at the best coarse ``mu``.  At that
    angle ``mu`` is scanned on ``mu_points`` values inside ``mu_bounds`` and
    refined with a bounded scalar search around the best scan point.
    """
    lo, hi = mu_bounds
    thetas = (np.arange(theta_points) + 0.5) * 2 * np.pi / theta_points
    coarse = np.linspace(lo, hi, coarse_mu_points + 2)[1:-1]
    surface = np.array([reference_curve(m, thetas, eta) for m in coarse])
    i, k = np.unravel_index(int(np.argmax(surface)), surface.shape)
    step = thetas[1] - thetas[0]
    res = minimize_scalar(lambda t: -_ref_value(coarse[i], t, eta),
                          bounds=(thetas[k] - step, thetas[k] + step), method="bounded",
                          options={"xatol": 1e-12})
    theta_peak = float(res.x)

    mus = np.linspace(lo, hi, mu_points + 2)[1:-1]
    values = np.array([_ref_value(m, theta_peak, eta) for m in mus])
    j = int(np.argmax(values))
    dm = mus[1] - mus[0]
    res = minimize_scalar(lambda m: -_ref_value(m, theta_peak, eta),
                          bounds=(max(lo, mus[j] - dm), min(hi, mus[j] + dm)), method="bounded",
                          options={"xatol": 1e-12})
    return MuPeak(float(res.x), theta_peak, float(-res.fun))
