"""Memory kernels for the goodwill dynamics.

A kernel is a continuous function K on [0, T] entering the state equation
through the convolution integrals int_0^t K(t-s)(alpha u(s) - beta X(s)) ds
and int_0^t K(t-s) dW(s).  Every kernel carries Holder regularity metadata
(holder_h, holder_H) with

    |K(t) - K(s)| <= holder_H * |t - s|**holder_h,   s, t in [0, T],

which drives all approximation-error bounds downstream.  Metadata can be
supplied explicitly; for the monomial, fractional and gamma families a
conservative default is derived automatically.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, MetadataError

#: relative slack when checking t against [0, T]; grid nodes built as i*dt can
#: overshoot T by a few ulps.
DOMAIN_TOL = 1e-9


def _check_time(t: float, T: float) -> float:
    """Validate t in [0, T] (with ulp slack) and clamp it into the interval."""
    tol = DOMAIN_TOL * max(1.0, T)
    if not (-tol <= t <= T + tol):
        raise DomainError(f"time {t!r} outside kernel domain [0, {T}]")
    return min(max(t, 0.0), T)


@dataclass(frozen=True, kw_only=True)
class Kernel:
    """Base class: a kernel on [0, T] with optional Holder metadata.

    Attributes
    ----------
    T : float
        Horizon; the kernel is defined on [0, T].
    holder_h : float, optional
        Holder exponent in (0, 1].  When omitted, a family-specific default
        is derived (see ``default_holder_metadata``).
    holder_H : float, optional
        Holder constant, > 0.
    """

    T: float
    holder_h: float | None = None
    holder_H: float | None = None

    def __post_init__(self):
        if not self.T > 0.0:
            raise DomainError(f"horizon T must be positive, got {self.T}")
        if self.holder_h is not None and not 0.0 < self.holder_h <= 1.0:
            raise DomainError(f"holder_h must lie in (0, 1], got {self.holder_h}")
        if self.holder_H is not None and not self.holder_H > 0.0:
            raise DomainError(f"holder_H must be positive, got {self.holder_H}")

    def __call__(self, t: float) -> float:
        return self._value(_check_time(float(t), self.T))

    def _value(self, t: float) -> float:
        raise NotImplementedError

    def default_holder_metadata(self) -> tuple[float, float]:
        raise MetadataError(
            f"{type(self).__name__} has no derivable Holder metadata; "
            "supply holder_h and holder_H explicitly"
        )

    def holder_metadata(self) -> tuple[float, float]:
        """Explicit (holder_h, holder_H) if given, else the family default."""
        if self.holder_h is not None and self.holder_H is not None:
            return self.holder_h, self.holder_H
        return self.default_holder_metadata()


@dataclass(frozen=True, kw_only=True)
class MonomialKernel(Kernel):
    """K(t) = t**degree with integer degree >= 0; 0**0 is taken as 1."""

    degree: int

    def __post_init__(self):
        super().__post_init__()
        if self.degree < 0 or self.degree != int(self.degree):
            raise DomainError(f"degree must be a nonnegative integer, got {self.degree}")

    def _value(self, t):
        if self.degree == 0:
            return 1.0
        return t**self.degree

    def default_holder_metadata(self):
        if self.degree == 0:
            return 1.0, 1.0
        # Lipschitz constant: sup of the derivative N*t**(N-1) on [0, T].
        return 1.0, self.degree * self.T ** (self.degree - 1)


@dataclass(frozen=True, kw_only=True)
class FractionalKernel(Kernel):
    """K(t) = t**exponent.

    For exponent in (0, 1) the kernel is exponent-Holder with constant 1.
    Larger exponents (e.g. the smooth t**1.1 case) evaluate fine but need
    explicit metadata: the default derivation only covers (0, 1).
    """

    exponent: float

    def __post_init__(self):
        super().__post_init__()
        if not self.exponent > 0.0:
            raise DomainError(f"exponent must be positive, got {self.exponent}")

    def _value(self, t):
        return t**self.exponent

    def default_holder_metadata(self):
        if not self.exponent < 1.0:
            raise MetadataError(
                "default Holder metadata is only derived for exponents in (0, 1); "
                f"got {self.exponent}: supply holder_h and holder_H explicitly"
            )
        # |t**h - s**h| <= |t - s|**h for h in (0, 1).
        return self.exponent, 1.0


@dataclass(frozen=True, kw_only=True)
class GammaKernel(Kernel):
    """K(t) = exp(-rate * t) * t**exponent, rate > 0, exponent in (0, 1)."""

    rate: float
    exponent: float

    def __post_init__(self):
        super().__post_init__()
        if not self.rate > 0.0:
            raise DomainError(f"rate must be positive, got {self.rate}")
        if not 0.0 < self.exponent < 1.0:
            raise DomainError(f"exponent must lie in (0, 1), got {self.exponent}")

    def _value(self, t):
        return math.exp(-self.rate * t) * t**self.exponent

    def default_holder_metadata(self):
        # Split K(t)-K(s) into exp(-rate t)(t**h - s**h) + s**h (e^{-rate t}-e^{-rate s});
        # the first term is |t-s|**h, the second at most rate*T*|t-s| which we absorb
        # conservatively as rate*T**h*|t-s|**h on [0, T].
        return self.exponent, 1.0 + self.rate * self.T**self.exponent


@dataclass(frozen=True, kw_only=True)
class PolynomialKernel(Kernel):
    """K(t) = sum_k coeffs[k] * t**k (coefficients in increasing power order).

    Polynomial kernels admit an exact coefficient lift, bypassing the
    Bernstein approximation entirely.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        super().__post_init__()
        if len(self.coeffs) == 0:
            raise DomainError("polynomial kernel needs at least one coefficient")
        if not all(math.isfinite(c) for c in self.coeffs):
            raise DomainError("polynomial coefficients must be finite")

    def _value(self, t):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


@dataclass(frozen=True, kw_only=True)
class TabulatedKernel(Kernel):
    """Piecewise-linear kernel through (times, values) nodes.

    Linear interpolation preserves a Holder bound, so explicit metadata for
    the underlying function remains valid for the interpolant.
    """

    times: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        super().__post_init__()
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or len(t) < 2:
            raise DomainError("tabulated kernel needs matching times/values, length >= 2")
        if not np.all(np.diff(t) > 0.0):
            raise DomainError("tabulated times must be strictly increasing")
        tol = 1e-12 * max(1.0, self.T)
        if abs(t[0]) > tol or abs(t[-1] - self.T) > tol:
            raise DomainError("tabulated times must start at 0 and end at T")
        if not np.all(np.isfinite(v)):
            raise DomainError("tabulated values must be finite")

    def _value(self, t):
        return float(np.interp(t, self.times, self.values))


def holder_margin(kernel: Kernel, grid_points: int = 200) -> float:
    """Worst slack of the sampled Holder inequality on a uniform grid.

    Returns min over grid pairs of H*|t-s|**h - |K(t)-K(s)|; nonnegative
    means the metadata is consistent with the sampled kernel.
    """
    h, H = kernel.holder_metadata()
    ts = np.linspace(0.0, kernel.T, grid_points)
    vals = np.array([kernel(t) for t in ts])
    dv = np.abs(vals[:, None] - vals[None, :])
    dt = np.abs(ts[:, None] - ts[None, :])
    mask = ~np.eye(grid_points, dtype=bool)
    return float((H * dt[mask] ** h - dv[mask]).min())
