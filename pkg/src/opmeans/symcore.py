"""Dense symmetric matrix arithmetic and spectral matrix functions.

Matrices are square numpy float64 arrays. Symmetric matrices are kept
exactly symmetric (``a[i, j] == a[j, i]`` bitwise): every routine whose
result is nominally symmetric passes it through :func:`symmetrize` before
returning, and :func:`eigh` symmetrizes its input copy first, so tiny
asymmetries cannot accumulate.

Eigendecomposition is a cyclic Jacobi iteration (see the backend kernels),
chosen for unconditional stability on symmetric input and for being simple
enough to run identically in the compiled and pure-Python backends.
Eigenvalues are returned ascending and each eigenvector is scaled so its
first nonzero component is nonnegative, making outputs deterministic.

Positive definiteness is a checked predicate with a single global gate:
``lambda_min > PD_EPSILON * max(1, lambda_max)``. Operations on "positive"
matrices use this gate uniformly; :func:`pseudo_power` is the one escape
hatch for semidefinite input.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from . import backend
from .errors import DimensionMismatch, DomainViolation, NonConvergence

PD_EPSILON = 1e-10       # relative eigenvalue floor for positive definiteness
JACOBI_REL_TOL = 1e-12   # off-diagonal Frobenius threshold, relative to ||A||_F
JACOBI_MAX_SWEEPS = 100
LOAD_ASYMMETRY_TOL = 1e-9  # max |a - a.T| allowed on load, relative to ||A||_F


class Spectral(NamedTuple):
    """Eigendecomposition A = Q diag(w) Q^T of a symmetric matrix."""

    eigenvalues: np.ndarray   # ascending
    eigenvectors: np.ndarray  # orthogonal; columns; first nonzero entry >= 0


def as_square(a) -> np.ndarray:
    """Coerce to a square float64 array, raising DimensionMismatch otherwise."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def symmetrize(a) -> np.ndarray:
    """Exact symmetrization (a + a.T)/2; a bitwise no-op on symmetric input."""
    a = as_square(a)
    return (a + a.T) / 2.0


def eigh(a, *, kernel=None) -> Spectral:
    """Symmetric eigendecomposition via cyclic Jacobi rotations.

    Deterministic for fixed input: eigenvalues ascending, eigenvector sign
    fixed by the first nonzero component. ``kernel`` overrides the backend
    kernel (used by the backend-comparison tests and the benchmark).

    Raises NonConvergence if the off-diagonal Frobenius norm does not fall
    below ``1e-12 * ||A||_F`` within 100 sweeps.
    """
    a = as_square(a)
    if not np.all(np.isfinite(a)):
        raise DomainViolation("matrix has non-finite entries")
    work = np.ascontiguousarray(symmetrize(a))
    n = work.shape[0]
    vec = np.eye(n)
    run = backend.jacobi_cycle if kernel is None else kernel
    sweeps = run(work, vec, JACOBI_REL_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise NonConvergence(
            f"Jacobi iteration did not reach {JACOBI_REL_TOL} * ||A||_F "
            f"within {JACOBI_MAX_SWEEPS} sweeps"
        )
    w = np.diagonal(work).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    q = vec[:, order].copy()
    for k in range(n):
        for x in q[:, k]:
            if x != 0.0:
                if x < 0.0:
                    q[:, k] = -q[:, k]
                break
    return Spectral(w, q)


def spectral_apply(spec: Spectral, values) -> np.ndarray:
    """Assemble Q diag(values) Q^T, symmetrized."""
    q = spec.eigenvectors
    return symmetrize((q * np.asarray(values, dtype=np.float64)) @ q.T)


def matrix_function(
    a,
    f: Callable[[float], float],
    domain_check: Callable[[float], bool] | None = None,
    label: str = "f",
) -> np.ndarray:
    """Apply a scalar function to a symmetric matrix through its spectrum.

    ``domain_check`` is evaluated on every eigenvalue first; a failure
    raises DomainViolation naming the offending eigenvalue.
    """
    spec = eigh(a)
    if domain_check is not None:
        for lam in spec.eigenvalues:
            if not domain_check(lam):
                raise DomainViolation(
                    f"eigenvalue {lam!r} is outside the domain of {label}"
                )
    fw = np.array([float(f(float(lam))) for lam in spec.eigenvalues])
    return spectral_apply(spec, fw)


def require_pd(eigenvalues, context: str = "operation") -> None:
    """Raise DomainViolation unless the spectrum clears the PD gate."""
    lam_min = float(eigenvalues[0])
    lam_max = float(eigenvalues[-1])
    if not lam_min > PD_EPSILON * max(1.0, lam_max):
        raise DomainViolation(
            f"{context}: matrix is not positive definite "
            f"(eigenvalue {lam_min!r} <= {PD_EPSILON} * max(1, {lam_max!r}))"
        )


def assert_pd(a, context: str = "operation") -> None:
    """PD-gate a matrix (one eigendecomposition)."""
    require_pd(eigh(a).eigenvalues, context)


def matrix_power(a, p: float) -> np.ndarray:
    """Spectral power A^p of a positive-definite matrix.

    The PD gate applies for every exponent so error behavior is uniform;
    ``matrix_power(a, 1)`` returns ``a`` (symmetrized) and
    ``matrix_power(a, 0)`` the identity, both exactly.
    """
    a = as_square(a)
    spec = eigh(a)
    require_pd(spec.eigenvalues, f"matrix_power(p={p})")
    if p == 0:
        return np.eye(a.shape[0])
    if p == 1:
        return symmetrize(a)
    return spectral_apply(spec, spec.eigenvalues ** float(p))


def pseudo_power(a, p: float, cutoff: float = 1e-12) -> np.ndarray:
    """Spectral power with small eigenvalues dropped (Moore-Penrose style).

    Eigenvalues ``<= cutoff * lambda_max`` map to 0; the rest to
    ``lambda**p``. Agrees with :func:`matrix_power` on positive-definite
    input.
    """
    a = as_square(a)
    if cutoff < 0:
        raise DomainViolation("cutoff must be nonnegative")
    spec = eigh(a)
    lam_max = float(spec.eigenvalues[-1])
    fw = np.empty_like(spec.eigenvalues)
    for i, lam in enumerate(spec.eigenvalues):
        fw[i] = 0.0 if lam <= cutoff * lam_max else float(lam) ** float(p)
    return spectral_apply(spec, fw)


def frob_inner(a, b) -> float:
    """Hilbert-Schmidt inner product trace(A^T B)."""
    a = as_square(a)
    b = as_square(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return float((a * b).sum())


def frob_norm(a) -> float:
    """Frobenius norm sqrt(trace(A^T A))."""
    a = as_square(a)
    return math.sqrt(float((a * a).sum()))


def is_positive_definite(a) -> bool:
    """True iff lambda_min > PD_EPSILON * max(1, lambda_max)."""
    w = eigh(a).eigenvalues
    return bool(w[0] > PD_EPSILON * max(1.0, float(w[-1])))


# ---------------------------------------------------------------------------
# Matrix text format: first line n, then n rows of n whitespace-separated
# decimal numbers. Loading symmetrizes, rejecting asymmetry beyond
# LOAD_ASYMMETRY_TOL * ||A||_F. Printing uses 17 significant digits so
# float64 values round-trip exactly.
# ---------------------------------------------------------------------------


def format_matrix(a) -> str:
    a = as_square(a)
    lines = [str(a.shape[0])]
    for row in a:
        lines.append(" ".join(f"{float(x):.17g}" for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ValueError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows after the dimension line, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        vals = [float(tok) for tok in ln.split()]
        if len(vals) != n:
            raise ValueError(f"expected {n} entries per row, got {len(vals)}: {ln!r}")
        rows.append(vals)
    a = np.array(rows, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    gap = float(np.max(np.abs(a - a.T)))
    if gap > LOAD_ASYMMETRY_TOL * frob_norm(a):
        raise ValueError(
            f"matrix is not symmetric: max asymmetry {gap:g} exceeds "
            f"{LOAD_ASYMMETRY_TOL:g} * ||A||_F"
        )
    return symmetrize(a)


def read_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix(fh.read())
