"""Bernstein polynomial approximation of a kernel.

The degree-n Bernstein polynomial of K on [0, T],

    K_n(t) = sum_k K(T k / n) C(n, k) (t/T)**k (1 - t/T)**(n-k),

interpolates K at both endpoints, inherits K's Holder constant, and for an
h-Holder kernel satisfies the uniform bound

    sup |K - K_n| <= holder_H * T**h * 2**(-h) * n**(-h/2).

Its monomial coefficients kappa (K_n(t) = sum_k kappa[k] t**k) are what make
K_n liftable, so they are the main product here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericRangeError
from .kernels import Kernel, _check_time

#: largest approximation degree with trustworthy double-precision coefficients;
#: k! * kappa[k] magnitudes degrade quickly beyond this.
N_CAP = 25


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _forward_differences(values):
    """All forward differences Delta^k[values](0), k = 0..n.

    The difference table is kept as (hi, lo) double-double pairs so the
    alternating cancellation costs no extra rounding beyond the initial
    representation of the kernel samples.
    """
    hi = [float(v) for v in values]
    lo = [0.0] * len(hi)
    out = [hi[0]]
    n = len(hi) - 1
    for k in range(1, n + 1):
        for i in range(n - k + 1):
            s, e = _two_sum(hi[i + 1], -hi[i])
            e += lo[i + 1] - lo[i]
            hi[i], lo[i] = _two_sum(s, e)
        out.append(hi[0] + lo[0])
    return out


@dataclass(frozen=True)
class BernsteinKernel:
    """Degree-n Bernstein approximation of a source kernel.

    Attributes
    ----------
    n : int
        Approximation degree.
    kappa : numpy.ndarray
        Monomial coefficients, length n + 1.
    source : Kernel
        The approximated kernel (carries horizon and Holder metadata).
    node_values : numpy.ndarray
        K(T k / n) for k = 0..n; basis-form evaluation runs on these.
    """

    n: int
    kappa: np.ndarray
    source: Kernel
    node_values: np.ndarray

    @property
    def T(self) -> float:
        return self.source.T

    def __call__(self, t):
        """Evaluate K_n(t) in the Bernstein basis (de Casteljau recursion).

        Numerically stable for any n <= N_CAP; accepts scalars or arrays.
        """
        scalar = np.isscalar(t)
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        x = np.array([_check_time(v, self.T) for v in ts]) / self.T
        b = np.repeat(self.node_values[:, None], len(x), axis=1)
        for r in range(self.n):
            b[: self.n - r] = (1.0 - x) * b[: self.n - r] + x * b[1 : self.n - r + 1]
        return float(b[0, 0]) if scalar else b[0].copy()

    def monomial_value(self, t: float) -> float:
        """Evaluate sum_k kappa[k] t**k by Horner (cancellation sentinel)."""
        t = _check_time(float(t), self.T)
        acc = 0.0
        for c in self.kappa[::-1]:
            acc = acc * t + c
        return acc


def bernstein_kernel(source: Kernel, n: int) -> BernsteinKernel:
    """Build the degree-n Bernstein approximation of ``source``.

    The monomial coefficients are, with f_k = K(T k / n),

        kappa[k] = C(n, k) * Delta^k[f](0) / T**k,

    the forward-difference form of the alternating binomial sum; the two are
    algebraically identical but the difference table is far better behaved.
    """
    if n < 0:
        raise NumericRangeError(f"degree must be nonnegative, got {n}")
    if n > N_CAP:
        raise NumericRangeError(f"degree {n} exceeds numerically stable cap {N_CAP}")
    T = source.T
    if n == 0:
        vals = np.array([source(0.0)])
        return BernsteinKernel(n=0, kappa=vals.copy(), source=source, node_values=vals)
    vals = np.array([source(T * k / n) for k in range(n + 1)])
    diffs = _forward_differences(vals)
    kappa = np.array([math.comb(n, k) * diffs[k] / T**k for k in range(n + 1)])
    if not np.all(np.isfinite(kappa)):
        raise NumericRangeError("non-finite Bernstein coefficients")
    return BernsteinKernel(n=n, kappa=kappa, source=source, node_values=vals)


@dataclass(frozen=True)
class ApproximationReport:
    n: int
    sup_error: float
    bound: float


def uniform_error_report(source: Kernel, n: int, grid_points: int = 400) -> ApproximationReport:
    """Measured sup |K - K_n| on a uniform grid, next to the theoretical bound.

    The bound is holder_H * T**h * 2**(-h) * n**(-h/2) from the kernel's
    Holder metadata; the measured error must never exceed it.
    """
    if grid_points < 2:
        raise NumericRangeError(f"grid_points must be >= 2, got {grid_points}")
    bk = bernstein_kernel(source, n)
    ts = np.linspace(0.0, source.T, grid_points)
    approx = bk(ts)
    exact = np.array([source(t) for t in ts])
    sup_error = float(np.abs(exact - approx).max())
    h, H = source.holder_metadata()
    bound = math.inf if n == 0 else H * source.T**h * 2.0**-h * n ** (-h / 2.0)
    return ApproximationReport(n=n, sup_error=sup_error, bound=bound)
