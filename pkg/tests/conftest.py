import numpy as np
import pytest

from voctrl import ControlProblem, FractionalKernel, GammaKernel, MonomialKernel


def make_problem(kernel, alpha=1.0, beta=1.0, sigma=1.0, a1=1.0, a2=1.0, x0=0.0):
    return ControlProblem(alpha=alpha, beta=beta, sigma=sigma, a1=a1, a2=a2, x0=x0, kernel=kernel)


@pytest.fixture
def fractional_kernel():
    return FractionalKernel(T=2.0, exponent=0.3)


@pytest.fixture
def smooth_kernel():
    # t**1.1 is differentiable, so Lipschitz metadata with the sup of the
    # derivative 1.1 * T**0.1 must be supplied explicitly
    return FractionalKernel(T=2.0, exponent=1.1, holder_h=1.0, holder_H=1.1 * 2.0**0.1)


@pytest.fixture
def gamma_kernel():
    return GammaKernel(T=2.0, rate=1.0, exponent=0.3)


@pytest.fixture
def square_kernel():
    return MonomialKernel(T=2.0, degree=2)


def grid_sup(f, g, ts):
    return max(abs(f(t) - g(t)) for t in ts)


def uniform_grid(T, n):
    return np.linspace(0.0, T, n)
