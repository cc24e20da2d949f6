# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cyclic Jacobi eigendecomposition kernel (compiled backend).

Mirrors ``_jacobi_py.jacobi_cycle`` statement for statement; with
``-ffp-contract=off`` both backends produce bit-identical output.
"""

from libc.math cimport atan2, cos, sin, sqrt


def jacobi_cycle(double[:, ::1] a, double[:, ::1] v, double rel_tol, int max_sweeps):
    """Diagonalize symmetric ``a`` in place, accumulating rotations into ``v``.

    ``a`` must be exactly symmetric and ``v`` the identity on entry. On
    return the diagonal of ``a`` holds the eigenvalues and the columns of
    ``v`` the eigenvectors (unsorted). Returns the number of sweeps used,
    or -1 if the off-diagonal Frobenius norm did not drop below
    ``rel_tol * ||A||_F`` within ``max_sweeps`` sweeps.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweeps = 0
    cdef double fro = 0.0
    cdef double off, thresh
    cdef double app, aqq, apq, phi, c, s, aip, aiq, vip, viq

    for p in range(n):
        for q in range(n):
            fro += a[p, q] * a[p, q]
    fro = sqrt(fro)
    thresh = rel_tol * fro

    while True:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = sqrt(off)
        if off <= thresh:
            return sweeps
        if sweeps == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                phi = 0.5 * atan2(2.0 * apq, aqq - app)
                c = cos(phi)
                s = sin(phi)
                a[p, p] = c * c * app - 2.0 * s * c * apq + s * s * aqq
                a[q, q] = s * s * app + 2.0 * s * c * apq + c * c * aqq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[p, i] = a[i, p]
                        a[i, q] = s * aip + c * aiq
                        a[q, i] = a[i, q]
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
        sweeps += 1
