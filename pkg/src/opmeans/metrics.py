"""Distance measures and the angle functional on matrices.

Three distances:

* ``euclid``: the Frobenius (Hilbert-Schmidt) distance ||A - B||_F, defined
  for arbitrary square matrices. The operator 2-norm written in trace form,
  sqrt(trace[(A-B)^T (A-B)]), is exactly this, not the spectral norm.
* ``inv-euclid``: the Euclidean distance between the inverses,
  ||A^-1 - B^-1||_F; the weighted harmonic mean traces its geodesics.
* ``trace``: the affine-invariant distance on the positive-definite cone,
  ||log(A^-1/2 B A^-1/2)||_F; the weighted geometric mean traces its
  geodesics.

Angles are Euclidean angles in the trace inner product. For real matrices
the real-part operation in cos(theta) = Re trace[A^T B] / (||A|| ||B||) is
automatic; for Heinz-mean arguments derived from positive-definite pairs
the relevant traces are positive (the verification suites assert this), so
plain traces suffice.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, DomainViolation, ZeroOperator
from .symcore import (
    as_square,
    eigh,
    frob_inner,
    frob_norm,
    matrix_power,
    require_pd,
    symmetrize,
)

METRIC_NAMES = ("euclid", "inv-euclid", "trace")
SYMMETRY_TOL = 1e-9  # relative asymmetry allowed in PD-cone metrics


def _require_symmetric(a, context: str) -> np.ndarray:
    a = as_square(a)
    gap = float(np.max(np.abs(a - a.T)))
    if gap > SYMMETRY_TOL * max(1.0, frob_norm(a)):
        raise DomainViolation(
            f"{context}: operand is not symmetric (max asymmetry {gap:g})"
        )
    return symmetrize(a)


def dist_euclid(a, b) -> float:
    """Frobenius distance ||A - B||_F; zero iff the entries coincide."""
    a = as_square(a)
    b = as_square(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return frob_norm(a - b)


def dist_inv_euclid(a, b) -> float:
    """Euclidean distance between the inverses of two PD matrices."""
    a = _require_symmetric(a, "dist_inv_euclid")
    b = _require_symmetric(b, "dist_inv_euclid")
    return dist_euclid(matrix_power(a, -1.0), matrix_power(b, -1.0))


def dist_trace_metric(a, b) -> float:
    """Affine-invariant distance ||log(A^-1/2 B A^-1/2)||_F on PD matrices.

    Computed through the eigenvalues of the congruence, so it costs two
    eigendecompositions. Symmetric in its arguments and invariant under
    joint congruence (both facts verified by tests, not assumed here).
    """
    a = _require_symmetric(a, "dist_trace_metric")
    b = _require_symmetric(b, "dist_trace_metric")
    spec = eigh(a)
    require_pd(spec.eigenvalues, "dist_trace_metric")
    q = spec.eigenvectors
    isq = symmetrize((q * spec.eigenvalues**-0.5) @ q.T)
    inner = symmetrize(isq @ b @ isq)
    w = eigh(inner).eigenvalues
    require_pd(w, "dist_trace_metric")
    for lam in w:
        if lam <= 0.0:
            raise DomainViolation(f"log of nonpositive eigenvalue {lam!r}")
    return math.sqrt(float(np.sum(np.log(w) ** 2)))


def angle(a, b) -> float:
    """Angle in radians, arccos of the trace-inner-product cosine.

    The cosine is clamped to [-1, 1] before arccos so rounding at
    colinearity cannot produce NaN. For PD pairs the cosine is positive.
    """
    a = as_square(a)
    b = as_square(b)
    na = frob_norm(a)
    nb = frob_norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroOperator("angle is undefined against a zero matrix")
    cos_theta = frob_inner(a, b) / (na * nb)
    return math.acos(min(1.0, max(-1.0, cos_theta)))


def angle_cos_sq_functional(a, m) -> float:
    """(trace[A^T M])^2 / trace[M^T M]: the A-scaled squared cosine.

    For fixed A this grows exactly when the angle between A and M shrinks,
    so monotone increase of this functional along a mean family is the
    workable surrogate for angle monotonicity (it avoids the arccos and
    the constant trace[A^T A] factor).
    """
    a = as_square(a)
    m = as_square(m)
    denom = frob_inner(m, m)
    if denom == 0.0:
        raise ZeroOperator("cos^2 functional is undefined for a zero matrix")
    num = frob_inner(a, m)
    return num * num / denom


def metric_value(kind: str, a, m) -> float:
    """Dispatch a metric tag: euclid / inv-euclid / trace / angle.

    'angle' yields the cos^2 functional (which rises as the angle falls);
    the three distance tags yield distances (which fall toward A).
    """
    if kind == "euclid":
        return dist_euclid(a, m)
    if kind == "inv-euclid":
        return dist_inv_euclid(a, m)
    if kind == "trace":
        return dist_trace_metric(a, m)
    if kind == "angle":
        return angle_cos_sq_functional(a, m)
    raise ValueError(f"unknown metric {kind!r}; valid: euclid, inv-euclid, trace, angle")
