# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled inner loop of the Volterra Euler scheme.

One path costs O(n_steps**2): every step re-sums the whole convolution
history, which is what makes the non-Markovian dynamics expensive and this
loop worth compiling.  The recursion matches _pathsim_py.simulate_block
term for term; only the summation order of the inner dot product differs,
so the backends agree to rounding error but not necessarily bit for bit.
"""

import numpy as np


def simulate_block(const double[::1] ktab, const double[::1] ctl, double x0,
                   double alpha, double beta, double sigma, double dt,
                   const double[:, ::1] dw, double[:, ::1] out):
    """Fill out[p, i] with the left-endpoint Euler recursion.

    ktab: kernel on the grid, ktab[j] = K(j * dt), length n_steps + 1.
    ctl:  control at left endpoints, length n_steps.
    dw:   Gaussian increments, shape (n_paths, n_steps).
    out:  preallocated (n_paths, n_steps + 1) result buffer.
    """
    cdef Py_ssize_t n_paths = dw.shape[0]
    cdef Py_ssize_t n_steps = dw.shape[1]
    cdef Py_ssize_t p, i, j
    cdef double acc
    gbuf = np.empty(n_steps, dtype=np.float64)
    cdef double[::1] g = gbuf
    with nogil:
        for p in range(n_paths):
            out[p, 0] = x0
            for i in range(1, n_steps + 1):
                j = i - 1
                g[j] = (alpha * ctl[j] - beta * out[p, j]) * dt + sigma * dw[p, j]
                acc = 0.0
                for j in range(i):
                    acc += ktab[i - j] * g[j]
                out[p, i] = x0 + acc
