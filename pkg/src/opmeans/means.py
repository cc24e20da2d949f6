"""Mean families on pairs of positive-definite matrices.

Weighted families share one convention: ``F(A, B, 1) = A`` and
``F(A, B, 0) = B``, with the weight saying how much A dominates. Endpoints
are short-circuited to exact copies because several defining formulas
degenerate there (division by t or 1-t); interior weights use the defining
formulas:

* arithmetic:      t*A + (1-t)*B
* weighted harmonic ``A !_t B``:  (t*A^-1 + (1-t)*B^-1)^-1
* weighted geometric ``A #_t B``: A^1/2 (A^-1/2 B A^-1/2)^t A^1/2
* power mean:      (t*A^p + (1-t)*B^p)^(1/p), p != 0
* Heinz mean:      A^nu B^(1-nu)  (generally non-symmetric; never symmetrized)

The geometric family is the one exception to the convention: its defining
formula runs the trace-metric geodesic from A (t=0) to B (t=1), and the
geodesic identity dist_trace_metric(A, A #_t B) = t * dist(A, B) pins that
orientation; see geometric_w.

Two constructions turn scalar data into means: a representing function
f on (0, +inf) applied spectrally, ``A^1/2 f(A^-1/2 B A^-1/2) A^1/2``, and
a discrete probability measure over [0, 1] mixing weighted harmonic means,
``sum_i w_i (A !_{t_i} B)``. Every mean built either way satisfies the
standard operator-mean axioms at the scalar level, which the verification
suites check at matrix level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, DomainViolation, InvalidMeasure, ZeroExponent
from .symcore import (
    as_square,
    assert_pd,
    eigh,
    frob_inner,
    matrix_function,
    matrix_power,
    require_pd,
    spectral_apply,
    symmetrize,
)

MEASURE_SUM_TOL = 1e-12

MatrixFamily = Callable[[np.ndarray, np.ndarray, float], np.ndarray]
BinaryMean = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _pair(a, b):
    a = as_square(a)
    b = as_square(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"operand shapes {a.shape} and {b.shape} differ")
    return a, b


def _check_weight(t: float, name: str = "t") -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainViolation(f"{name}={t!r} is outside [0, 1]")
    return t


# ---------------------------------------------------------------------------
# Closed-form families
# ---------------------------------------------------------------------------


def arithmetic(a, b, t: float) -> np.ndarray:
    """Weighted arithmetic mean t*A + (1-t)*B. Total: no positivity needed."""
    a, b = _pair(a, b)
    t = _check_weight(t)
    if t == 0.0:
        return b.copy()
    if t == 1.0:
        return a.copy()
    return t * a + (1.0 - t) * b


def parallel_sum(a, b) -> np.ndarray:
    """Parallel sum A : B = (A^-1 + B^-1)^-1 of positive-definite matrices."""
    a, b = _pair(a, b)
    return matrix_power(matrix_power(a, -1.0) + matrix_power(b, -1.0), -1.0)


def parallel_sum_schur(a, b) -> np.ndarray:
    """Algebraically equal form B - B (A+B)^-1 B, exposed as a cross-check."""
    a, b = _pair(a, b)
    assert_pd(a, "parallel_sum_schur")
    assert_pd(b, "parallel_sum_schur")
    return symmetrize(b - b @ matrix_power(a + b, -1.0) @ b)


def harmonic_w(a, b, t: float) -> np.ndarray:
    """Weighted harmonic mean A !_t B = (t*A^-1 + (1-t)*B^-1)^-1."""
    a, b = _pair(a, b)
    t = _check_weight(t)
    if t == 0.0 or t == 1.0:
        assert_pd(a, "harmonic_w")
        assert_pd(b, "harmonic_w")
        return a.copy() if t == 1.0 else b.copy()
    ainv = matrix_power(a, -1.0)
    binv = matrix_power(b, -1.0)
    return _harmonic_from_inverses(a, b, ainv, binv, t)


def _harmonic_from_inverses(a, b, ainv, binv, t: float) -> np.ndarray:
    # Bit-identical to harmonic_w for interior t; lets measure mixing and
    # grid scans reuse the two fixed inverses.
    if t == 0.0:
        return b.copy()
    if t == 1.0:
        return a.copy()
    return matrix_power(t * ainv + (1.0 - t) * binv, -1.0)


def geometric_w(a, b, t: float) -> np.ndarray:
    """Weighted geometric mean A #_t B = A^1/2 (A^-1/2 B A^-1/2)^t A^1/2.

    Orientation note: this family runs the trace-metric geodesic from A to
    B, so the t-weight sits on the B side -- geometric_w(A, B, 0) = A and
    geometric_w(A, B, 1) = B, the opposite of the other weighted families.
    That is what makes dist_trace_metric(A, A #_t B) == t * dist(A, B)
    hold literally. t=1/2 is the geometric mean A # B either way.
    """
    a, b = _pair(a, b)
    t = _check_weight(t)
    if t == 0.0 or t == 1.0:
        assert_pd(a, "geometric_w")
        assert_pd(b, "geometric_w")
        return b.copy() if t == 1.0 else a.copy()
    spec = eigh(a)
    require_pd(spec.eigenvalues, "geometric_w")
    assert_pd(b, "geometric_w")
    sq = spectral_apply(spec, spec.eigenvalues ** 0.5)
    isq = spectral_apply(spec, spec.eigenvalues ** -0.5)
    inner = symmetrize(isq @ b @ isq)
    return symmetrize(sq @ matrix_power(inner, t) @ sq)


def power_mean(a, b, t: float, p: float) -> np.ndarray:
    """Weighted power mean (t*A^p + (1-t)*B^p)^(1/p), p nonzero.

    p=1 reduces to the arithmetic mean and p=-1 to the weighted harmonic
    mean (bit-identically: the same expressions are evaluated). p=0 raises
    ZeroExponent; the geometric limit is not interpolated.
    """
    a, b = _pair(a, b)
    t = _check_weight(t)
    p = float(p)
    if p == 0.0:
        raise ZeroExponent("p=0 is not defined for the power mean; use geometric_w")
    if t == 0.0 or t == 1.0:
        assert_pd(a, "power_mean")
        assert_pd(b, "power_mean")
        return a.copy() if t == 1.0 else b.copy()
    ap = matrix_power(a, p)
    bp = matrix_power(b, p)
    return matrix_power(t * ap + (1.0 - t) * bp, 1.0 / p)


def heinz(a, b, nu: float) -> np.ndarray:
    """Heinz mean A^nu B^(1-nu): generally non-symmetric, never symmetrized."""
    a, b = _pair(a, b)
    nu = _check_weight(nu, "nu")
    return matrix_power(a, nu) @ matrix_power(b, 1.0 - nu)


def heinz_trace_g(a, b, x: float) -> float:
    """g(x) = trace(A^(2x) B^(2(1-x))); log-convex in x for PD inputs."""
    a, b = _pair(a, b)
    x = _check_weight(x, "x")
    return frob_inner(matrix_power(a, 2.0 * x), matrix_power(b, 2.0 * (1.0 - x)))


# ---------------------------------------------------------------------------
# Representing functions and the spectral construction
# ---------------------------------------------------------------------------

_SPOT_GRID = tuple(float(x) for x in np.logspace(-6.0, 6.0, 25))


@dataclass(frozen=True)
class RepresentingFunction:
    """Scalar function on (0, +inf) generating a mean spectrally.

    f(x) is the mean of the scalars 1 and x; f must be nonnegative there.
    Nonnegativity is spot-checked on a log-spaced grid at construction.
    Operator monotonicity (what makes the generated mean well behaved in
    the operator order) is NOT certified; garbage in, garbage out.
    """

    f: Callable[[float], float]
    label: str

    def __post_init__(self):
        for x in _SPOT_GRID:
            y = self.f(x)
            if not (math.isfinite(y) and y >= 0.0):
                raise ValueError(
                    f"representing function {self.label!r} is negative or "
                    f"non-finite at x={x!r}: {y!r}"
                )

    def __call__(self, x: float) -> float:
        return self.f(x)


def representing_function(name: str) -> RepresentingFunction:
    """Built-in registry: 'arith', 'geom', 'harm', or 'power:p' (p nonzero)."""
    if name == "arith":
        return RepresentingFunction(lambda x: (1.0 + x) / 2.0, "arith")
    if name == "geom":
        return RepresentingFunction(math.sqrt, "geom")
    if name == "harm":
        return RepresentingFunction(lambda x: 2.0 * x / (1.0 + x), "harm")
    if name.startswith("power:"):
        try:
            p = float(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad power exponent in {name!r}") from None
        if p == 0.0:
            raise ZeroExponent("p=0 is not defined for the power representing function")
        return RepresentingFunction(
            lambda x: ((1.0 + x**p) / 2.0) ** (1.0 / p), name
        )
    raise ValueError(
        f"unknown representing function {name!r}; "
        "valid names: arith, geom, harm, power:p"
    )


REPRESENTING_FUNCTION_NAMES = ("arith", "geom", "harm", "power:p")


def kubo_ando_spectral(f, a, b) -> np.ndarray:
    """Mean from a representing function: A^1/2 f(A^-1/2 B A^-1/2) A^1/2.

    ``f`` is a RepresentingFunction or a registry name.
    """
    if isinstance(f, str):
        f = representing_function(f)
    a, b = _pair(a, b)
    spec = eigh(a)
    require_pd(spec.eigenvalues, "kubo_ando_spectral")
    assert_pd(b, "kubo_ando_spectral")
    sq = spectral_apply(spec, spec.eigenvalues ** 0.5)
    isq = spectral_apply(spec, spec.eigenvalues ** -0.5)
    inner = symmetrize(isq @ b @ isq)
    m = matrix_function(inner, f.f, domain_check=lambda lam: lam > 0.0, label=f.label)
    return symmetrize(sq @ m @ sq)


# ---------------------------------------------------------------------------
# Discrete measures and the harmonic-mixture construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteMeasure:
    """Probability weights over nodes in [0, 1].

    Mixing weighted harmonic means with these weights produces a mean;
    an atom at t=1 contributes A and an atom at t=0 contributes B, so the
    two-endpoint measure {0: 1/2, 1: 1/2} gives the arithmetic mean.

    ``normalization_applied`` records whether construction rescaled the
    weights (see convert_measure); it does not affect equality of the
    measure's action.
    """

    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    normalization_applied: bool = False

    def __post_init__(self):
        nodes = tuple(float(t) for t in self.nodes)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if len(nodes) != len(weights) or not nodes:
            raise InvalidMeasure(
                f"need matching nonempty nodes/weights, got {len(nodes)}/{len(weights)}"
            )
        for t in nodes:
            if not 0.0 <= t <= 1.0 or not math.isfinite(t):
                raise InvalidMeasure(f"node {t!r} is outside [0, 1]")
        for w in weights:
            if not w >= 0.0 or not math.isfinite(w):
                raise InvalidMeasure(f"weight {w!r} is negative or non-finite")
        total = math.fsum(weights)
        if abs(total - 1.0) > MEASURE_SUM_TOL:
            raise InvalidMeasure(
                f"weights sum to {total!r}, not 1 within {MEASURE_SUM_TOL:g}"
            )


def kubo_ando_measure(m: DiscreteMeasure, a, b) -> np.ndarray:
    """Mean from a discrete measure: sum_i w_i * (A !_{t_i} B)."""
    if not isinstance(m, DiscreteMeasure):
        raise InvalidMeasure(f"expected a DiscreteMeasure, got {type(m).__name__}")
    a, b = _pair(a, b)
    assert_pd(a, "kubo_ando_measure")
    assert_pd(b, "kubo_ando_measure")
    interior = any(0.0 < t < 1.0 for t in m.nodes)
    ainv = matrix_power(a, -1.0) if interior else None
    binv = matrix_power(b, -1.0) if interior else None
    acc = np.zeros_like(a)
    for t, w in zip(m.nodes, m.weights):
        acc = acc + w * _harmonic_from_inverses(a, b, ainv, binv, t)
    return acc


def scalar_mean_value(mean, c: float) -> float:
    """The scalar mean of 1 and c under a representing function or measure.

    For a representing function this is f(c) by definition; for a measure
    it is sum_i w_i / (t_i + (1-t_i)/c). Used for cheap scalar sanity
    checks like the 1 >= (1 sigma c) >= c sandwich for 0 < c <= 1.
    """
    c = float(c)
    if c <= 0.0:
        raise DomainViolation(f"scalar operand must be positive, got {c!r}")
    if isinstance(mean, DiscreteMeasure):
        return math.fsum(
            w / (t + (1.0 - t) / c) for t, w in zip(mean.nodes, mean.weights)
        )
    if isinstance(mean, str):
        mean = representing_function(mean)
    return float(mean.f(c))


def convert_measure(atoms: Sequence[tuple[float, float]]) -> DiscreteMeasure:
    """Transport atoms from the [0, +inf] convention to nodes in [0, 1].

    Each atom (s, w) maps to the node t = 1/(1+s): s=0 lands on t=1 (the
    A endpoint) and s=+inf (math.inf) on t=0 (the B endpoint). Weights are
    transported unchanged and renormalized to total 1; the result's
    ``normalization_applied`` flag records whether rescaling happened.

    Only atoms are transported. A caller who discretized a *density* in
    the s-convention must fold the substitution Jacobian into the weights
    first; this function does not guess.
    """
    nodes: list[float] = []
    weights: list[float] = []
    for s, w in atoms:
        s = float(s)
        w = float(w)
        if w < 0.0 or not math.isfinite(w):
            raise InvalidMeasure(f"weight {w!r} is negative or non-finite")
        if s < 0.0 or math.isnan(s):
            raise InvalidMeasure(f"atom position {s!r} is outside [0, +inf]")
        nodes.append(0.0 if math.isinf(s) else 1.0 / (1.0 + s))
        weights.append(w)
    total = math.fsum(weights)
    if total <= 0.0:
        raise InvalidMeasure("total weight must be positive")
    applied = abs(total - 1.0) > MEASURE_SUM_TOL
    if applied:
        weights = [w / total for w in weights]
    return DiscreteMeasure(tuple(nodes), tuple(weights), normalization_applied=applied)


def gauss_legendre_measure(order: int = 200) -> DiscreteMeasure:
    """Gauss-Legendre discretization of the uniform density on [0, 1]."""
    if order < 1:
        raise InvalidMeasure(f"quadrature order must be >= 1, got {order}")
    x, w = np.polynomial.legendre.leggauss(order)
    nodes = (x + 1.0) / 2.0
    weights = w / 2.0
    weights = weights / weights.sum()
    return DiscreteMeasure(tuple(nodes), tuple(weights))


def parse_measure(text: str) -> DiscreteMeasure:
    """Parse 'node weight' lines into a DiscreteMeasure."""
    nodes: list[float] = []
    weights: list[float] = []
    for lineno, ln in enumerate(text.splitlines(), 1):
        if not ln.strip():
            continue
        toks = ln.split()
        if len(toks) != 2:
            raise InvalidMeasure(f"line {lineno}: expected 't weight', got {ln!r}")
        try:
            t, w = float(toks[0]), float(toks[1])
        except ValueError:
            raise InvalidMeasure(f"line {lineno}: bad number in {ln!r}") from None
        nodes.append(t)
        weights.append(w)
    return DiscreteMeasure(tuple(nodes), tuple(weights))


def format_measure(m: DiscreteMeasure) -> str:
    return "".join(f"{t:.17g} {w:.17g}\n" for t, w in zip(m.nodes, m.weights))


def read_measure(path) -> DiscreteMeasure:
    with open(path, "r", encoding="ascii") as fh:
        return parse_measure(fh.read())


# ---------------------------------------------------------------------------
# Adjoints and weighted-family constructors
# ---------------------------------------------------------------------------


def adjoint_mean(mean: BinaryMean) -> BinaryMean:
    """Conjugate a binary mean by inversion: (A, B) -> mean(A^-1, B^-1)^-1.

    The adjoint of the arithmetic mean is the harmonic mean and vice
    versa; the geometric mean is its own adjoint; taking the adjoint twice
    returns the original mean (numerically, to rounding).
    """

    def adjoint(a, b):
        return matrix_power(mean(matrix_power(a, -1.0), matrix_power(b, -1.0)), -1.0)

    adjoint.__name__ = f"adjoint_of_{getattr(mean, '__name__', 'mean')}"
    return adjoint


class _PairCache:
    """Tiny identity-keyed cache for per-pair precomputation in grid scans."""

    def __init__(self):
        self._entries: list[tuple] = []

    def get(self, a, b, build):
        for a0, b0, payload in self._entries:
            if a0 is a and b0 is b:
                return payload
        payload = build()
        self._entries.append((a, b, payload))
        if len(self._entries) > 8:
            del self._entries[0]
        return payload


def power_mean_family(p: float) -> MatrixFamily:
    """(A, B, t) -> power mean, caching A^p and B^p per operand pair.

    Bit-identical to power_mean(a, b, t, p); the cache only saves the
    repeated decompositions of A and B across a t-grid.
    """
    p = float(p)
    if p == 0.0:
        raise ZeroExponent("p=0 is not defined for the power mean; use geometric_w")
    cache = _PairCache()

    def family(a, b, t):
        t = _check_weight(t)
        ap, bp = cache.get(a, b, lambda: (matrix_power(a, p), matrix_power(b, p)))
        if t == 0.0:
            return b.copy()
        if t == 1.0:
            return a.copy()
        return matrix_power(t * ap + (1.0 - t) * bp, 1.0 / p)

    family.__name__ = f"power_mean_p{p:g}"
    return family


def harmonic_family() -> MatrixFamily:
    """(A, B, t) -> weighted harmonic mean, caching the two inverses."""
    cache = _PairCache()

    def family(a, b, t):
        t = _check_weight(t)
        ainv, binv = cache.get(
            a, b, lambda: (matrix_power(a, -1.0), matrix_power(b, -1.0))
        )
        return _harmonic_from_inverses(a, b, ainv, binv, t)

    family.__name__ = "harmonic_w"
    return family


def geometric_family() -> MatrixFamily:
    """(A, B, t) -> weighted geometric mean, caching A^±1/2 and the inner
    eigendecomposition so each grid point costs one spectral assembly.
    Same A-to-B orientation as geometric_w."""
    cache = _PairCache()

    def family(a, b, t):
        t = _check_weight(t)

        def build():
            spec = eigh(a)
            require_pd(spec.eigenvalues, "geometric_w")
            assert_pd(b, "geometric_w")
            sq = spectral_apply(spec, spec.eigenvalues ** 0.5)
            isq = spectral_apply(spec, spec.eigenvalues ** -0.5)
            inner = symmetrize(isq @ b @ isq)
            return sq, eigh(inner)

        sq, inner_spec = cache.get(a, b, build)
        if t == 0.0:
            return a.copy()
        if t == 1.0:
            return b.copy()
        require_pd(inner_spec.eigenvalues, "geometric_w")
        mid = spectral_apply(inner_spec, inner_spec.eigenvalues ** t)
        return symmetrize(sq @ mid @ sq)

    family.__name__ = "geometric_w"
    return family


def make_family(spec: str, measure: DiscreteMeasure | None = None) -> MatrixFamily:
    """Build a weighted family from a CLI-style name.

    Names: 'arith', 'harm', 'geom', 'power:p', 'heinz', 'ka-f:NAME', and
    'ka-measure' (with ``measure`` supplied). The ka-* means are binary
    (unweighted): their family ignores the weight and traces a constant
    curve, which keeps the scan report schema uniform.
    """
    if spec == "arith":
        return arithmetic
    if spec == "harm":
        return harmonic_family()
    if spec == "geom":
        return geometric_family()
    if spec.startswith("power:"):
        try:
            p = float(spec.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad power exponent in {spec!r}") from None
        return power_mean_family(p)
    if spec == "heinz":
        return heinz
    if spec.startswith("ka-f:"):
        f = representing_function(spec.split(":", 1)[1])
        cache = _PairCache()

        def ka_f_family(a, b, t):
            return cache.get(a, b, lambda: kubo_ando_spectral(f, a, b)).copy()

        ka_f_family.__name__ = f"ka_{f.label}"
        return ka_f_family
    if spec == "ka-measure":
        if measure is None:
            raise ValueError("'ka-measure' requires a measure")
        cache = _PairCache()

        def ka_m_family(a, b, t):
            return cache.get(a, b, lambda: kubo_ando_measure(measure, a, b)).copy()

        ka_m_family.__name__ = "ka_measure"
        return ka_m_family
    raise ValueError(
        f"unknown mean {spec!r}; valid: arith, harm, geom, power:p, heinz, "
        "ka-f:NAME, ka-measure:FILE"
    )


MEAN_NAMES = ("arith", "harm", "geom", "power:p", "heinz", "ka-f:NAME", "ka-measure:FILE")
