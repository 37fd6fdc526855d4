"""Near-optimal advertising controls in closed form.

For the lifted problem the optimal spend is deterministic,

    u(t) = (alpha * a2 / (2 a1)) * <g, e^{(T-t) Abar} nu>,

and truncating the operator exponential at order M turns it into an explicit
polynomial in (T - t):

    u_{n,M}(t) = scale * sum_{k<=M} c_k (T-t)**k,
    c_k = sum_{i <= min(n,k)} g[i] * gamma(i, k) / k!.

The dynamic-programming equation behind this is never discretized; its
solution is affine in the state, v(t, z) = <w(t), z> + c(t), and only the
scalar trace <w(s), nu> = -(2 a1 / alpha) u(s) is ever needed, so the value
at time zero reduces to a one-dimensional quadrature over u.

For a pure monomial kernel t**N the exponential sums in closed form to a
Mittag-Leffler expression, which serves as the exact reference everywhere.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bernstein import bernstein_kernel
from .errors import DomainError, NumericRangeError
from .kernels import Kernel, MonomialKernel, PolynomialKernel, _check_time
from .lift import (
    LiftedKernel,
    gamma_table,
    lift_from_coefficients,
    lift_kernel,
    operator_norm_bound,
)
from .mittag_leffler import mittag_leffler

#: hard cap for automatic truncation-order selection.
M_MAX = 200


@dataclass(frozen=True, kw_only=True)
class ControlProblem:
    """Advertising problem data.

    Attributes
    ----------
    alpha : float
        Advertising effectiveness (drift weight of the spend), > 0.
    beta : float
        Forgetting rate (mean reversion), >= 0; zero disables the feedback.
    sigma : float
        Noise scale, >= 0.
    a1 : float
        Quadratic spend-cost weight, > 0.
    a2 : float
        Terminal goodwill reward weight, > 0.
    x0 : float
        Initial goodwill.
    kernel : Kernel
        Memory kernel of the dynamics; its horizon is the problem horizon.
    """

    alpha: float
    beta: float
    sigma: float
    a1: float
    a2: float
    x0: float
    kernel: Kernel

    def __post_init__(self):
        for name in ("alpha", "a1", "a2"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        # beta = 0 (no forgetting) is admissible: the lift degenerates to the
        # pure shift and the simulator drops its feedback term
        for name in ("beta", "sigma"):
            if not getattr(self, name) >= 0.0:
                raise DomainError(f"{name} must be nonnegative, got {getattr(self, name)}")

    @property
    def T(self) -> float:
        return self.kernel.T

    @property
    def scale(self) -> float:
        """Common prefactor alpha * a2 / (2 a1) of the optimal control."""
        return self.alpha * self.a2 / (2.0 * self.a1)


@dataclass(frozen=True)
class ControlPolynomial:
    """u_{n,M}(t) = scale * sum_k coeffs[k] * (T - t)**k.

    ``trunc_bound_at_0`` is the worst-case truncation error over [0, T]
    (attained at t = 0); it is only finite when ``bound_valid`` is set, i.e.
    when M >= T * (operator norm bound), the hypothesis under which the tail
    estimate applies.
    """

    scale: float
    coeffs: np.ndarray
    M: int
    n: int
    T: float
    trunc_bound_at_0: float
    bound_valid: bool

    def __call__(self, t):
        scalar = np.isscalar(t)
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        x = self.T - np.array([_check_time(v, self.T) for v in ts])
        acc = np.zeros_like(x)
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        out = self.scale * acc
        return float(out[0]) if scalar else out


def lift_for_problem(problem: ControlProblem, n: int) -> LiftedKernel:
    """Lift the problem's kernel: exactly for polynomials, else via Bernstein(n).

    Monomial kernels are a special case of the exact route when expressed as
    PolynomialKernel; as MonomialKernel they go through Bernstein like any
    other continuous kernel, which is what the approximation studies need.
    """
    if isinstance(problem.kernel, PolynomialKernel):
        return lift_from_coefficients(problem.kernel.coeffs, problem.beta)
    return lift_kernel(bernstein_kernel(problem.kernel, n), problem.beta)


def optimal_control_poly(problem: ControlProblem, n: int, M: int) -> ControlPolynomial:
    """Assemble the truncated near-optimal control for lift degree n, order M."""
    if M < 0:
        raise NumericRangeError(f"truncation order must be nonnegative, got {M}")
    lk = lift_for_problem(problem, n)
    table = gamma_table(lk, M)
    coeffs = np.zeros(M + 1)
    fact = 1.0
    for k in range(M + 1):
        if k > 0:
            fact *= k
        m = min(lk.n, k)
        coeffs[k] = float(np.dot(lk.g[: m + 1], table.gamma[: m + 1, k])) / fact
    if not np.all(np.isfinite(coeffs)):
        raise NumericRangeError("control coefficients overflow; reduce M or n")
    T = problem.T
    valid = M >= T * operator_norm_bound(lk)
    bound = problem.scale * truncation_error_bound(lk, T, 0.0, M) if valid else math.inf
    return ControlPolynomial(
        scale=problem.scale,
        coeffs=coeffs,
        M=M,
        n=lk.n,
        T=T,
        trunc_bound_at_0=bound,
        bound_valid=valid,
    )


def evaluate_control(cp: ControlPolynomial, t: float) -> float:
    """Horner evaluation of the control polynomial in the variable (T - t)."""
    return cp(t)


def truncation_error_bound(lk: LiftedKernel, T: float, t: float, M: int) -> float:
    """Tail bound |u_n(t) - u_{n,M}(t)| / scale for M >= (T-t) * norm bound.

    Uses |g| * exp(x) * (1 - exp(-x / (M+1))) with x = (T - t) * |Abar|,
    |Abar| replaced by its upper bound (the expression is monotone in the
    norm, so the bound stays valid).
    """
    nb = operator_norm_bound(lk)
    x = (T - t) * nb
    if M < x:
        raise NumericRangeError(
            f"M={M} below operator-norm threshold {x:.6g}; the tail bound needs M >= (T-t)*|Abar|"
        )
    gnorm = float(np.sqrt(np.dot(lk.g, lk.g)))
    return gnorm * math.exp(x) * -math.expm1(-x / (M + 1))


def choose_M(lk: LiftedKernel, T: float, tol: float) -> int:
    """Smallest admissible M with truncation_error_bound(lk, T, 0, M) <= tol.

    Starts at ceil(T * norm bound) (below that the bound does not apply) and
    gives up at M_MAX; lifts with large coefficient norm can make the bound
    unreachable, in which case an explicit M must be chosen by hand.
    """
    if not tol > 0.0:
        raise NumericRangeError(f"tolerance must be positive, got {tol}")
    start = max(0, math.ceil(T * operator_norm_bound(lk)))
    for M in range(start, M_MAX + 1):
        if truncation_error_bound(lk, T, 0.0, M) <= tol:
            return M
    raise NumericRangeError(f"tolerance {tol} unreachable at M <= {M_MAX}")


def monomial_closed_form(problem: ControlProblem, t: float) -> float:
    """Exact optimal control for K(t) = t**N via the Mittag-Leffler function:

        scale * N! * (T-t)**N * E_{N+1,N+1}(-beta * N! * (T-t)**(N+1)).
    """
    if not isinstance(problem.kernel, MonomialKernel):
        raise DomainError("closed form undefined: kernel is not a monomial")
    N = problem.kernel.degree
    T = problem.T
    s = T - _check_time(float(t), T)
    fN = float(math.factorial(N))
    return problem.scale * fN * s**N * mittag_leffler(-problem.beta * fN * s ** (N + 1), N + 1, N + 1)


@dataclass(frozen=True)
class ValueFunctionReport:
    """Value-function constant at time zero and the induced optimum of the objective."""

    c0: float
    predicted_optimal_J: float


def value_function(problem: ControlProblem, n: int, M: int, n_intervals: int = 1000) -> ValueFunctionReport:
    """Closed-form value function evaluated by quadrature over the control.

    With <w(s), nu> = -(2 a1 / alpha) u(s), the time-zero constant is

        c0 = int_0^T (2 a1 beta x0 u(s) / alpha - a1 u(s)**2) ds,

    computed with composite Simpson on at least 1000 intervals (the integrand
    is a smooth polynomial, so the fixed rule is already negligible error).
    The predicted optimum of the maximization problem is a2 * x0 - c0.
    """
    if n_intervals < 1000:
        n_intervals = 1000
    if n_intervals % 2:
        n_intervals += 1
    cp = optimal_control_poly(problem, n, M)
    ts = np.linspace(0.0, problem.T, n_intervals + 1)
    u = cp(ts)
    integrand = 2.0 * problem.a1 * problem.beta * problem.x0 * u / problem.alpha - problem.a1 * u**2
    weights = np.ones(n_intervals + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    c0 = float(problem.T / n_intervals / 3.0 * np.dot(weights, integrand))
    return ValueFunctionReport(c0=c0, predicted_optimal_J=problem.a2 * problem.x0 - c0)
