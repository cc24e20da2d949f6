"""Cyclic Jacobi eigendecomposition kernel (pure-Python backend).

Same operation sequence as the compiled kernel in ``_jacobi.pyx``; both
backends produce bit-identical results. Kept as an import-time fallback
and as the reference for the compiled kernel.
"""

import math


def jacobi_cycle(a, v, rel_tol, max_sweeps):
    """Diagonalize symmetric ``a`` in place, accumulating rotations into ``v``.

    See the compiled kernel for the contract. Returns the sweep count, or
    -1 on non-convergence.
    """
    n = a.shape[0]
    fro = 0.0
    for p in range(n):
        for q in range(n):
            fro += a[p, q] * a[p, q]
    fro = math.sqrt(fro)
    thresh = rel_tol * fro

    sweeps = 0
    while True:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = math.sqrt(off)
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
                phi = 0.5 * math.atan2(2.0 * apq, aqq - app)
                c = math.cos(phi)
                s = math.sin(phi)
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
