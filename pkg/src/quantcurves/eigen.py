"""Self-contained Hermitian eigensolver: Householder tridiagonalization + implicit QL.

Exists so the spectral module has no mandatory dependence on LAPACK and,
more importantly, so spectra can be computed in extended precision
(numpy longdouble / clongdouble) when the Galerkin matrix norm outgrows
double-precision roundoff.  Eigenvalues only, ascending.
"""

from __future__ import annotations

import numpy as np


def householder_tridiagonal(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce Hermitian H to real symmetric tridiagonal (d, e) by unitary similarity.

    Off-diagonal phases are absorbed into a diagonal unitary, which leaves the
    spectrum unchanged, so e is returned as magnitudes.
    """
    A = np.array(H, copy=True)
    n = A.shape[0]
    real_dtype = np.real(A[:1, :1]).dtype
    for k in range(n - 2):
        x = A[k + 1:, k].copy()
        nx2 = np.real(np.vdot(x, x))
        nx = np.sqrt(nx2)
        if nx == 0:
            continue
        a0 = x[0]
        phase = a0 / abs(a0) if abs(a0) != 0 else 1.0
        alpha = -phase * nx
        v = x
        v[0] -= alpha
        vn2 = np.real(np.vdot(v, v))
        if vn2 == 0:
            continue
        B = A[k + 1:, k + 1:]
        p = B @ v * (2.0 / vn2)
        K = np.vdot(v, p) / vn2
        q = p - K * v
        B -= np.outer(v, np.conj(q)) + np.outer(q, np.conj(v))
        A[k + 1, k] = alpha
        A[k, k + 1] = np.conj(alpha)
        A[k + 2:, k] = 0
        A[k, k + 2:] = 0
    d = np.real(np.diag(A)).astype(real_dtype)
    e = np.abs(np.diag(A, -1)).astype(real_dtype)
    return d, e


def tridiagonal_eigenvalues(d: np.ndarray, e: np.ndarray, max_iter: int = 60) -> np.ndarray:
    """Implicit-shift QL on a real symmetric tridiagonal; ascending eigenvalues."""
    d = np.array(d, copy=True)
    n = d.shape[0]
    ee = np.zeros(n, dtype=d.dtype)
    ee[:n - 1] = e
    eps = np.finfo(d.dtype).eps
    for l in range(n):
        for _ in range(max_iter):
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(ee[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            # Wilkinson shift
            g = (d[l + 1] - d[l]) / (2 * ee[l])
            r = np.hypot(g, type(g)(1.0))
            g = d[m] - d[l] + ee[l] / (g + (r if g >= 0 else -r))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * ee[i]
                b = c * ee[i]
                r = np.hypot(f, g)
                ee[i + 1] = r
                if r == 0:
                    d[i + 1] -= p
                    ee[m] = 0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            else:
                d[l] -= p
                ee[l] = g
                ee[m] = 0
                continue
        else:
            raise RuntimeError("QL iteration did not converge")
    return np.sort(d)


def hermitian_eigenvalues(H: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix via the built-in reduction."""
    if H.shape[0] == 1:
        return np.real(H[:1, 0])
    d, e = householder_tridiagonal(H)
    return tridiagonal_eigenvalues(d, e)
