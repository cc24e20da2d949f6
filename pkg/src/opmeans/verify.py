"""Randomized verification suites for mean/metric monotonicity properties.

Each suite draws seeded random positive-definite pairs, evaluates one
family of inequalities per trial, and reports a SuiteResult: trial count,
violation count, the worst (most negative) relative slack seen, and a
replayable witness when anything violated. Trials are independent: trial i
uses the sub-seed ``seed XOR i``, so results are identical no matter how
trials are scheduled, and reports merge associatively.

Margins are relative: a check ``lhs >= rhs`` contributes the slack
``(lhs - rhs) / max(1, |lhs|, |rhs|)`` and a trial violates when its worst
slack falls below ``-tolerance``. Matrix-order checks ("X >= Y in the
positive-semidefinite sense") use ``lambda_min(X - Y) >= -tol * max(1,
||X||_F)``, since exact semidefiniteness is noise-fragile at machine
precision.

Monotonicity along a weight grid is necessarily tested on a finite grid
(default 1001 uniform points) with the same tolerance band; that is the
numerically decidable surrogate for continuous monotonicity.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import means as mn
from . import metrics as mt
from .errors import NoSignChange
from .symcore import eigh, format_matrix, frob_inner, frob_norm, matrix_power, symmetrize

# ---------------------------------------------------------------------------
# Configuration and result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialConfig:
    """Reproducible settings for a randomized suite run.

    ``dimensions`` are cycled per trial (trial i uses dimensions[i % len]);
    a single int is accepted. Eigenvalues of sampled matrices are 10**u
    with u uniform in ``condition_exponent_range``, so hi - lo bounds the
    log10 condition number.
    """

    dimensions: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8)
    trials: int = 1000
    seed: int = 42
    condition_exponent_range: tuple[float, float] = (-2.0, 2.0)
    t_grid_size: int = 1001
    tolerance: float = 1e-9

    def __post_init__(self):
        dims = self.dimensions
        if isinstance(dims, int):
            dims = (dims,)
        dims = tuple(int(d) for d in dims)
        object.__setattr__(self, "dimensions", dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"dimensions must all be >= 1, got {dims}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.t_grid_size < 3:
            raise ValueError("t_grid_size must be >= 3")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        lo, hi = self.condition_exponent_range
        if not lo <= hi:
            raise ValueError("condition_exponent_range must satisfy lo <= hi")
        object.__setattr__(self, "condition_exponent_range", (float(lo), float(hi)))


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one suite run; serializes to the JSON report schema."""

    suite: str
    trials: int
    violations: int
    worst_margin: float
    witness: dict | None
    finding: bool = False  # explorer runs report violations as findings

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "trials": self.trials,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
        }
        if self.finding:
            out["finding"] = True
        return out


@dataclass(frozen=True)
class MonotonicityReport:
    """A sampled weight grid with the metric curve and its verdict.

    ``violations`` lists the minority-direction moves (t_i, t_{i+1}, delta)
    when the curve is non-monotone, and is empty otherwise.
    ``crossing_points`` are grid values where the significant finite
    difference changes sign. A flat curve (no move beyond the tolerance
    band) counts as monotone in the direction the metric makes natural:
    decreasing for distances, increasing for the angle functional.
    """

    t_values: np.ndarray
    values: np.ndarray
    verdict: str
    violations: tuple[tuple[float, float, float], ...]
    crossing_points: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "t_values": [float(t) for t in self.t_values],
            "values": [float(v) for v in self.values],
            "verdict": self.verdict,
            "violations": [list(v) for v in self.violations],
            "crossing_points": list(self.crossing_points),
        }


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _sample_pd(rng, n: int, exponent_range: tuple[float, float]) -> np.ndarray:
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.where(np.diagonal(r) < 0.0, -1.0, 1.0)
    lam = 10.0 ** rng.uniform(exponent_range[0], exponent_range[1], size=n)
    return symmetrize((q * lam) @ q.T)


def sample_pd(dimension: int, seed: int, condition_exponent_range=(-2.0, 2.0)) -> np.ndarray:
    """Seeded random PD matrix Q diag(10**u) Q^T with Q from a Gaussian QR.

    Deterministic per seed; the exponent range controls the spectrum
    spread (u is uniform in it).
    """
    rng = np.random.default_rng(seed)
    return _sample_pd(rng, int(dimension), condition_exponent_range)


def random_measures(rng, count: int, max_atoms: int = 8) -> list[mn.DiscreteMeasure]:
    """Random discrete probability measures on [0, 1] (Dirichlet weights)."""
    out = []
    for _ in range(count):
        k = int(rng.integers(1, max_atoms + 1))
        nodes = rng.uniform(0.0, 1.0, size=k)
        weights = rng.dirichlet(np.ones(k))
        out.append(mn.DiscreteMeasure(tuple(nodes), tuple(weights)))
    return out


# ---------------------------------------------------------------------------
# Monotonicity scanning
# ---------------------------------------------------------------------------


def scan_monotonicity(
    mean_family,
    a,
    b,
    metric: str,
    grid: int = 1001,
    tolerance: float = 1e-9,
) -> MonotonicityReport:
    """Evaluate t -> metric(A, family(A, B, t)) on a uniform grid.

    ``metric`` is 'euclid', 'inv-euclid', 'trace', or 'angle' (the cos^2
    functional, which rises when the angle falls). The verdict follows the
    sign pattern of consecutive differences with a tolerance band of
    ``tolerance * max(1, value scale)``.
    """
    ts = np.linspace(0.0, 1.0, int(grid))
    vals = np.empty(len(ts))
    for i, t in enumerate(ts):
        vals[i] = mt.metric_value(metric, a, mean_family(a, b, float(t)))
    diffs = np.diff(vals)
    scale = max(1.0, float(np.max(np.abs(vals))))
    band = tolerance * scale
    up = diffs > band
    down = diffs < -band
    has_up = bool(up.any())
    has_down = bool(down.any())
    if has_up and has_down:
        verdict = "non_monotone"
        minority = up if int(up.sum()) <= int(down.sum()) else down
        violations = tuple(
            (float(ts[i]), float(ts[i + 1]), float(diffs[i]))
            for i in np.nonzero(minority)[0]
        )
    elif has_up:
        verdict = "monotone_increasing"
        violations = ()
    elif has_down:
        verdict = "monotone_decreasing"
        violations = ()
    else:
        verdict = "monotone_increasing" if metric == "angle" else "monotone_decreasing"
        violations = ()
    crossings = []
    prev = 0
    for i, d in enumerate(diffs):
        s = 1 if d > band else (-1 if d < -band else 0)
        if s == 0:
            continue
        if prev != 0 and s != prev:
            crossings.append(float(ts[i]))
        prev = s
    return MonotonicityReport(ts, vals, verdict, violations, tuple(crossings))


def refine_crossing(mean_family, a, b, metric: str, bracket, tol: float = 1e-6) -> float:
    """Bisect the sign change of the slope of the squared-distance curve.

    The slope is a central finite difference of metric(A, family(t))**2
    (the 'angle' functional is used as is). Raises NoSignChange when the
    slope has the same sign at both bracket ends.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0.0 <= lo < hi <= 1.0:
        raise NoSignChange(f"invalid bracket {bracket!r}")
    h = 1e-7

    def curve(t: float) -> float:
        v = mt.metric_value(metric, a, mean_family(a, b, t))
        return v if metric == "angle" else v * v

    def slope(t: float) -> float:
        t = min(max(t, h), 1.0 - h)
        return curve(t + h) - curve(t - h)

    s_lo = slope(lo)
    s_hi = slope(hi)
    if s_lo == 0.0:
        return lo
    if s_hi == 0.0:
        return hi
    if (s_lo > 0.0) == (s_hi > 0.0):
        raise NoSignChange(
            f"slope does not change sign over [{lo}, {hi}] "
            f"(slope {s_lo:g} and {s_hi:g})"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        s_mid = slope(mid)
        if s_mid == 0.0:
            return mid
        if (s_mid > 0.0) == (s_lo > 0.0):
            lo, s_lo = mid, s_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _monotone_stats(values: np.ndarray, direction: str, tolerance: float):
    """Worst relative slack and violation count for a monotonicity claim."""
    diffs = np.diff(values)
    scale = max(1.0, float(np.max(np.abs(values))))
    rel = diffs / scale
    if direction == "decreasing":
        slack = -rel
    elif direction == "increasing":
        slack = rel
    else:
        raise ValueError(direction)
    worst = float(np.min(slack))
    count = int(np.sum(slack < -tolerance))
    return worst, count


# ---------------------------------------------------------------------------
# Suite runner plumbing
# ---------------------------------------------------------------------------


def _thread_cap() -> int:
    raw = os.environ.get("OPMEANS_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_suite(name: str, config: TrialConfig, trial_fn, finding: bool = False) -> SuiteResult:
    """Run trial_fn(rng, dim, sub_seed) -> (margin, params, (A, B) or None)
    over config.trials independent trials and merge.

    The worst trial (smallest margin, ties to the lowest index) supplies
    the witness when violations occurred, so the merged result does not
    depend on scheduling order.
    """

    def one(i: int):
        sub_seed = config.seed ^ i
        rng = np.random.default_rng(sub_seed)
        dim = config.dimensions[i % len(config.dimensions)]
        margin, params, ab = trial_fn(rng, dim, sub_seed)
        return i, float(margin), params, ab

    cap = _thread_cap()
    if cap > 1 and config.trials > 1:
        with ThreadPoolExecutor(max_workers=cap) as pool:
            rows = list(pool.map(one, range(config.trials)))
    else:
        rows = [one(i) for i in range(config.trials)]
    rows.sort(key=lambda r: r[0])

    violations = sum(1 for _, m, _, _ in rows if m < -config.tolerance)
    worst_i, worst_margin, worst_params, worst_ab = min(rows, key=lambda r: (r[1], r[0]))
    witness = None
    if violations > 0 and worst_ab is not None:
        a, b = worst_ab
        witness = {
            "A": format_matrix(a),
            "B": format_matrix(b),
            "params": worst_params,
            "seed": config.seed ^ worst_i,
        }
    return SuiteResult(name, config.trials, violations, worst_margin, witness, finding)


def _rel_slack(lhs: float, rhs: float) -> float:
    """Slack of lhs >= rhs, relative to max(1, |lhs|, |rhs|)."""
    return (lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _psd_order_slack(x_minus_y: np.ndarray, scale_matrix: np.ndarray) -> float:
    """Slack of X >= Y in the PSD order: lambda_min(X-Y), norm-relative."""
    w = eigh(symmetrize(x_minus_y)).eigenvalues
    return float(w[0]) / max(1.0, frob_norm(scale_matrix))


# ---------------------------------------------------------------------------
# Power-mean suites
# ---------------------------------------------------------------------------


def suite_power_distance(config: TrialConfig, p: float | None = None) -> SuiteResult:
    """Distance monotonicity of the weighted power mean, p in [1, 2].

    Per trial: the Euclidean distance from A to the power mean must fall
    monotonically along the weight grid, and the mixing bound
    trace(M_t^2) <= t trace(A^2) + (1-t) trace(B^2) must hold on a coarse
    grid. ``p`` fixes the exponent (used by the conjecture explorer);
    by default p is drawn uniformly from [1, 2].
    """
    name = "power-distance" if p is None else f"power-distance[p={p:g}]"

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        p_t = float(rng.uniform(1.0, 2.0)) if p is None else float(p)
        fam = mn.power_mean_family(p_t)
        rep = scan_monotonicity(fam, a, b, "euclid", config.t_grid_size, config.tolerance)
        margin, _ = _monotone_stats(rep.values, "decreasing", config.tolerance)
        ta2 = frob_inner(a, a)
        tb2 = frob_inner(b, b)
        for t in np.linspace(0.0, 1.0, 21):
            m = fam(a, b, float(t))
            margin = min(margin, _rel_slack(t * ta2 + (1.0 - t) * tb2, frob_inner(m, m)))
        return margin, {"p": p_t, "dim": dim}, (a, b)

    return _run_suite(name, config, trial, finding=p is not None and p > 2.0)


def suite_power_angle(config: TrialConfig, p: float | None = None) -> SuiteResult:
    """Angle monotonicity of the weighted power mean, p in [1, 2].

    Per trial: the cos^2 functional toward A must rise along the weight
    grid. The normalized two-operand inequality behind it (unit-norm G, H,
    convex coefficient s) is checked directly as well:
    (tr GH)^2 tr[(sG^p+(1-s)H^p)^(2/p)] <= (tr[G (sG^p+(1-s)H^p)^(1/p)])^2.
    """
    name = "power-angle" if p is None else f"power-angle[p={p:g}]"

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        p_t = float(rng.uniform(1.0, 2.0)) if p is None else float(p)
        fam = mn.power_mean_family(p_t)
        rep = scan_monotonicity(fam, a, b, "angle", config.t_grid_size, config.tolerance)
        margin, _ = _monotone_stats(rep.values, "increasing", config.tolerance)

        g = a / frob_norm(a)
        h = b / frob_norm(b)
        s = float(rng.uniform())
        base = s * matrix_power(g, p_t) + (1.0 - s) * matrix_power(h, p_t)
        tr_gh = frob_inner(g, h)
        lhs = tr_gh * tr_gh * frob_inner(
            matrix_power(base, 1.0 / p_t), matrix_power(base, 1.0 / p_t)
        )
        rhs_root = frob_inner(g, matrix_power(base, 1.0 / p_t))
        margin = min(margin, _rel_slack(rhs_root * rhs_root, lhs))
        return margin, {"p": p_t, "s": s, "dim": dim}, (a, b)

    return _run_suite(name, config, trial, finding=p is not None and p > 2.0)


# ---------------------------------------------------------------------------
# Heinz suites
# ---------------------------------------------------------------------------


def suite_heinz_angle(config: TrialConfig) -> SuiteResult:
    """Angle in-betweenness of the Heinz mean A^nu B^(1-nu).

    Per trial with nu uniform in [0, 1]:
    tr(B^2) (tr[A^(1+nu) B^(1-nu)])^2 >= tr[A^(2nu) B^(2-2nu)] (tr[AB])^2,
    together with its restatement through g(x) = tr[A^(2x) B^(2(1-x))]:
    g(0) g(1/2 + nu/2)^2 >= g(nu) g(1/2)^2. The traces themselves must be
    positive (they are traces of products of PD matrices).
    """

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        nu = float(rng.uniform())
        t_b2 = frob_inner(b, b)
        t_mid = frob_inner(matrix_power(a, 1.0 + nu), matrix_power(b, 1.0 - nu))
        t_nu = frob_inner(matrix_power(a, 2.0 * nu), matrix_power(b, 2.0 * (1.0 - nu)))
        t_ab = frob_inner(a, b)
        if min(t_b2, t_mid, t_nu, t_ab) <= 0.0:
            return -1.0, {"nu": nu, "dim": dim, "check": "trace positivity"}, (a, b)
        margin = _rel_slack(t_b2 * t_mid * t_mid, t_nu * t_ab * t_ab)
        g0 = mn.heinz_trace_g(a, b, 0.0)
        g_mid = mn.heinz_trace_g(a, b, 0.5 + 0.5 * nu)
        g_nu = mn.heinz_trace_g(a, b, nu)
        g_half = mn.heinz_trace_g(a, b, 0.5)
        margin = min(margin, _rel_slack(g0 * g_mid * g_mid, g_nu * g_half * g_half))
        return margin, {"nu": nu, "dim": dim}, (a, b)

    return _run_suite("heinz-angle", config, trial)


def suite_heinz_distance(config: TrialConfig) -> SuiteResult:
    """Distance in-betweenness of the Heinz mean.

    Per trial with nu uniform in [0, 1]:
    tr(B^2) + 2 tr[A^(1+nu) B^(1-nu)] >= tr[A^(2nu) B^(2-2nu)] + 2 tr[AB],
    plus convexity of g(x) on a grid (second differences >= -tolerance).
    """

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        nu = float(rng.uniform())
        t_b2 = frob_inner(b, b)
        t_mid = frob_inner(matrix_power(a, 1.0 + nu), matrix_power(b, 1.0 - nu))
        t_nu = frob_inner(matrix_power(a, 2.0 * nu), matrix_power(b, 2.0 * (1.0 - nu)))
        t_ab = frob_inner(a, b)
        margin = _rel_slack(t_b2 + 2.0 * t_mid, t_nu + 2.0 * t_ab)
        xs = np.linspace(0.0, 1.0, 21)
        gs = [mn.heinz_trace_g(a, b, float(x)) for x in xs]
        g_scale = max(1.0, max(abs(g) for g in gs))
        for i in range(1, len(gs) - 1):
            margin = min(margin, (gs[i - 1] - 2.0 * gs[i] + gs[i + 1]) / g_scale)
        return margin, {"nu": nu, "dim": dim}, (a, b)

    return _run_suite("heinz-distance", config, trial)


def suite_logconvexity(config: TrialConfig) -> SuiteResult:
    """Midpoint log-convexity of g(x) = tr[A^(2x) B^(2(1-x))].

    Per trial with x, y uniform in [0, 1]: g((x+y)/2)^2 <= g(x) g(y),
    which is the Cauchy-Schwarz step behind both Heinz results.
    """

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        x = float(rng.uniform())
        y = float(rng.uniform())
        g_mid = mn.heinz_trace_g(a, b, 0.5 * (x + y))
        margin = _rel_slack(
            mn.heinz_trace_g(a, b, x) * mn.heinz_trace_g(a, b, y), g_mid * g_mid
        )
        return margin, {"x": x, "y": y, "dim": dim}, (a, b)

    return _run_suite("logconvexity", config, trial)


_CONVEX_TEST_FUNCTIONS: tuple[tuple[str, Callable[[float], float]], ...] = (
    ("square", lambda u: u * u),
    ("exp", math.exp),
    ("neglog_shifted", lambda u: -math.log(u + 0.05)),
)


def suite_lemma_convex(config: TrialConfig) -> SuiteResult:
    """Slope comparison for convex scalar functions.

    For convex f and x < a, b < y:
    (f(a) - f(x)) / (a - x) <= (f(y) - f(b)) / (y - b). Checked for the
    registry functions x^2, e^x and -log(x + 0.05) on windows in [0, 4].
    """

    def trial(rng, dim, sub_seed):
        x = float(rng.uniform(0.0, 3.0))
        y = x + float(rng.uniform(0.2, 1.0))
        a_pt = x + (y - x) * float(rng.uniform(0.05, 0.95))
        b_pt = x + (y - x) * float(rng.uniform(0.05, 0.95))
        margin = math.inf
        worst = None
        for label, f in _CONVEX_TEST_FUNCTIONS:
            left = (f(a_pt) - f(x)) / (a_pt - x)
            right = (f(y) - f(b_pt)) / (y - b_pt)
            slack = (right - left) / max(1.0, abs(left), abs(right))
            if slack < margin:
                margin = slack
                worst = label
        return margin, {"x": x, "a": a_pt, "b": b_pt, "y": y, "function": worst}, None

    return _run_suite("lemma-convex", config, trial)


# ---------------------------------------------------------------------------
# Mean registry for the trace-metric / axiom / duality suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegistryMean:
    """A named mean built from a representing function or a measure."""

    label: str
    payload: object  # RepresentingFunction | DiscreteMeasure

    def evaluate(self, a, b) -> np.ndarray:
        if isinstance(self.payload, mn.DiscreteMeasure):
            return mn.kubo_ando_measure(self.payload, a, b)
        return mn.kubo_ando_spectral(self.payload, a, b)

    def scalar(self, c: float) -> float:
        return mn.scalar_mean_value(self.payload, c)


def default_mean_registry() -> list[RegistryMean]:
    """arith, geom, harm, and power p in {-1, -1/2, 1/2, 1}."""
    names = ["arith", "geom", "harm", "power:-1", "power:-0.5", "power:0.5", "power:1"]
    return [RegistryMean(n, mn.representing_function(n)) for n in names]


def _registry_with_measures(config: TrialConfig, n_measures: int, salt: int) -> list[RegistryMean]:
    regs = default_mean_registry()
    rng = np.random.default_rng(config.seed ^ salt)
    for i, m in enumerate(random_measures(rng, n_measures)):
        regs.append(RegistryMean(f"measure[{i}]", m))
    return regs


_SANDWICH_GRID = tuple(np.concatenate([np.linspace(0.05, 1.0, 12), np.logspace(-4, -1, 6)]))


def _scalar_sandwich_margin(mean: RegistryMean) -> float:
    """Worst slack of 1 >= (1 sigma c) >= c over a grid of c in (0, 1]."""
    worst = math.inf
    for c in _SANDWICH_GRID:
        v = mean.scalar(float(c))
        worst = min(worst, 1.0 - v, v - float(c))
    return worst


def suite_trace_metric_ka(
    config: TrialConfig,
    registry: Sequence[RegistryMean] | None = None,
    n_random_measures: int = 50,
) -> SuiteResult:
    """Trace-metric contraction of harmonic-mixture means.

    Per trial and per registry mean sigma (closed-form representing
    functions plus random discrete measures):
    dist_trace_metric(A, A sigma B) <= dist_trace_metric(A, B).
    The scalar sandwich 1 >= (1 sigma c) >= c for c in (0, 1], which is the
    pointwise fact behind the contraction, is checked once per mean on a c
    grid and folded into every trial margin.
    """
    regs = list(registry) if registry is not None else _registry_with_measures(
        config, n_random_measures, salt=0x7CA11
    )
    sandwich = min(_scalar_sandwich_margin(m) for m in regs)

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        d_ab = mt.dist_trace_metric(a, b)
        margin = sandwich
        worst_label = "scalar sandwich" if sandwich < math.inf else ""
        for reg in regs:
            d_am = mt.dist_trace_metric(a, reg.evaluate(a, b))
            slack = (d_ab - d_am) / max(1.0, d_ab)
            if slack < margin:
                margin = slack
                worst_label = reg.label
        return margin, {"dim": dim, "worst_mean": worst_label}, (a, b)

    return _run_suite("trace-metric-ka", config, trial)


def suite_adjoint_duality(config: TrialConfig, n_random_measures: int = 3) -> SuiteResult:
    """Inversion duality between the two Euclidean metrics.

    Per trial and per registry mean sigma, with sigma* the inversion
    conjugate: dist_inv_euclid(A, A sigma B) equals
    dist_euclid(A^-1, A^-1 sigma* B^-1), both evaluated through their own
    code paths. This is the identity that transports in-betweenness
    between the metric pair.
    """
    regs = _registry_with_measures(config, n_random_measures, salt=0xAD301)

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        a_inv = matrix_power(a, -1.0)
        b_inv = matrix_power(b, -1.0)
        margin = math.inf
        worst_label = ""
        for reg in regs:
            lhs = mt.dist_inv_euclid(a, reg.evaluate(a, b))
            adj = mn.adjoint_mean(reg.evaluate)
            rhs = mt.dist_euclid(a_inv, adj(a_inv, b_inv))
            slack = -abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
            if slack < margin:
                margin = slack
                worst_label = reg.label
        return margin, {"dim": dim, "worst_mean": worst_label}, (a, b)

    return _run_suite("adjoint-duality", config, trial)


def suite_ka_axioms(
    config: TrialConfig,
    registry: Sequence[RegistryMean] | None = None,
    n_random_measures: int = 5,
) -> SuiteResult:
    """Operator-mean axioms at desk scale for registry means.

    Per trial and mean: joint monotonicity (A <= C, B <= D implies
    sigma(A,B) <= sigma(C,D), with C = A + PSD, D = B + PSD), the
    transformer inequality C sigma(A,B) C <= sigma(CAC, CBC) for random
    invertible symmetric C, and the normalization sigma(I, I) = I within
    1e-12 (checked once per mean and dimension, folded into trial
    margins). Order comparisons use the tolerant PSD predicate.
    """
    regs = list(registry) if registry is not None else _registry_with_measures(
        config, n_random_measures, salt=0xAC105
    )
    norm_margin = 0.0
    for reg in regs:
        for dim in sorted(set(config.dimensions)):
            eye = np.eye(dim)
            dev = float(np.max(np.abs(reg.evaluate(eye, eye) - eye)))
            if dev > 1e-12:
                norm_margin = min(norm_margin, -1.0)

    def trial(rng, dim, sub_seed):
        a = _sample_pd(rng, dim, config.condition_exponent_range)
        b = _sample_pd(rng, dim, config.condition_exponent_range)
        g = rng.standard_normal((dim, dim))
        h = rng.standard_normal((dim, dim))
        c_mat = a + symmetrize(g @ g.T)
        d_mat = b + symmetrize(h @ h.T)
        q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
        q = q * np.where(np.diagonal(r) < 0.0, -1.0, 1.0)
        signs = rng.choice([-1.0, 1.0], size=dim)
        lam = signs * 10.0 ** rng.uniform(-1.0, 1.0, size=dim)
        c0 = symmetrize((q * lam) @ q.T)
        margin = norm_margin
        worst_label = ""
        for reg in regs:
            m_ab = reg.evaluate(a, b)
            m_cd = reg.evaluate(c_mat, d_mat)
            slack = _psd_order_slack(m_cd - m_ab, m_cd)
            if slack < margin:
                margin, worst_label = slack, f"{reg.label}:monotonicity"
            lhs = symmetrize(c0 @ m_ab @ c0)
            rhs = reg.evaluate(symmetrize(c0 @ a @ c0), symmetrize(c0 @ b @ c0))
            slack = _psd_order_slack(rhs - lhs, rhs)
            if slack < margin:
                margin, worst_label = slack, f"{reg.label}:transformer"
        return margin, {"dim": dim, "worst_check": worst_label}, (a, b)

    return _run_suite("ka-axioms", config, trial)


# ---------------------------------------------------------------------------
# Conjecture explorer (p > 2): findings, not failures
# ---------------------------------------------------------------------------


def explore_power_conjecture(config: TrialConfig, p_values: Sequence[float]) -> list[SuiteResult]:
    """Run the power-mean monotonicity machinery at fixed exponents.

    The proven range is p in [1, 2]; larger p is an open question, so a
    nonzero violation count here is a finding to report, not a failure.
    Results carry ``finding=True`` for p > 2.
    """
    results = []
    for p in p_values:
        if not p > 0:
            raise ValueError(f"power exponents must be positive, got {p!r}")
        results.append(suite_power_distance(config, p=float(p)))
        results.append(suite_power_angle(config, p=float(p)))
    return results


# ---------------------------------------------------------------------------
# The built-in 2x2 counterexample pair
# ---------------------------------------------------------------------------


def counterexample_pair() -> tuple[np.ndarray, np.ndarray]:
    """The built-in PD pair whose weighted harmonic mean initially moves
    away from A in Euclidean distance (the anomaly peaks near t = 0.315)."""
    a = np.array([[5.0, 7.0], [7.0, 10.0]])
    b = np.array([[5.0, 2.0], [2.0, 1.0]])
    return a, b


def counterexample_scaling_demo(target_t: float = 0.5, grid: int = 401) -> dict:
    """Show the anomaly is movable: rescaling B relocates both the rising
    segment of t -> d(A, A !_t (cB)) and the weight where the mean is
    farther from A than B is. Reports, for the scale c maximizing the
    violation at ``target_t``, the distances and the end of the rising
    segment."""
    a, b = counterexample_pair()
    fam = mn.harmonic_family()
    best = None
    for c in np.logspace(-2.0, 2.0, 81):
        bc = c * b
        d_end = mt.dist_euclid(a, bc)
        d_mid = mt.dist_euclid(a, fam(a, bc, float(target_t)))
        ratio = d_mid / d_end
        if best is None or ratio > best[1]:
            best = (float(c), float(ratio))
    c, ratio = best
    bc = c * b
    rep = scan_monotonicity(fam, a, bc, "euclid", grid)
    rising_end = rep.crossing_points[0] if rep.crossing_points else 0.0
    return {
        "scale": c,
        "target_t": float(target_t),
        "dist_to_scaled_b": mt.dist_euclid(a, bc),
        "dist_to_mean_at_target": mt.dist_euclid(a, fam(a, bc, float(target_t))),
        "violation_ratio": ratio,
        "rising_segment_end": float(rising_end),
    }


# ---------------------------------------------------------------------------
# Suite registry for the CLI
# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[[TrialConfig], SuiteResult]] = {
    "power-distance": suite_power_distance,
    "power-angle": suite_power_angle,
    "heinz-angle": suite_heinz_angle,
    "heinz-distance": suite_heinz_distance,
    "logconvexity": suite_logconvexity,
    "lemma-convex": suite_lemma_convex,
    "trace-metric-ka": suite_trace_metric_ka,
    "adjoint-duality": suite_adjoint_duality,
    "ka-axioms": suite_ka_axioms,
}

# trace-metric slack is dominated by two chained eigendecompositions, so its
# acceptance tolerance is looser than the 1e-9 default used elsewhere.
SUITE_TOLERANCES: dict[str, float] = {"trace-metric-ka": 1e-8}
