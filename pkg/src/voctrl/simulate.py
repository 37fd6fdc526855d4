"""Sample-path simulation and the deterministic mean equation.

The state follows the stochastic convolution equation

    X(t) = x0 + int_0^t K(t-s)(alpha u(s) - beta X(s)) ds
              + sigma int_0^t K(t-s) dW(s),

discretized with a left-endpoint rule so no step ever references a future
Brownian increment:

    X_i = x0 + sum_{j<i} K(t_i - t_j) ((alpha u_j - beta X_j) dt + sigma dW_j).

Noise is counter-based: one Philox stream keyed by the seed, with path p
owning counter blocks [p*bpp, (p+1)*bpp) where bpp = ceil(n_steps / 4)
(Philox emits 4 words per block).  The word for (path, step) is therefore a
pure function of (seed, path, step), so results are bit-identical for a
given backend no matter how paths are chunked across workers.

The hot inner loop runs in the compiled ``_pathsim`` extension when it was
built, with ``_pathsim_py`` as a pure-numpy fallback selected at import; see
benchmarks/bench_pathsim.py for the comparison.  When beta == 0 the feedback
vanishes and both backends are bypassed for a single convolution product.

The deterministic mean solves the associated linear Volterra equation of the
second kind with the trapezoidal product rule, one scalar division per step.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from . import _pathsim_py
from .control import ControlProblem
from .errors import DomainError, NumericRangeError, SimulationError

try:
    from . import _pathsim
except ImportError:  # extension not built; fall back to numpy
    _pathsim = None

#: backend chosen at import time.
DEFAULT_BACKEND = "cython" if _pathsim is not None else "numpy"

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t_i = i * dt, i = 0..n_steps, with n_steps * dt = T."""

    T: float
    dt: float

    def __post_init__(self):
        if not self.dt > 0.0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        if not self.T > 0.0:
            raise DomainError(f"T must be positive, got {self.T}")
        if abs(self.n_steps * self.dt - self.T) > 1e-12:
            raise DomainError(
                f"grid mesh {self.dt} does not divide horizon {self.T} evenly"
            )

    @property
    def n_steps(self) -> int:
        return int(round(self.T / self.dt))

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.dt


@dataclass(frozen=True)
class PathBatch:
    """Simulated goodwill paths: row p is path p on the grid nodes."""

    paths: np.ndarray
    seed: int
    grid: TimeGrid


def gaussian_increments(seed: int, n_paths: int, n_steps: int, dt: float) -> np.ndarray:
    """Increment matrix dW ~ Normal(0, dt), shape (n_paths, n_steps).

    Philox counter addressing as described in the module docstring; the
    uniform for each word w is ((w >> 11) + 0.5) * 2**-53, mapped through the
    normal quantile function.
    """
    blocks_per_path = max(1, -(-n_steps // 4))
    bg = np.random.Philox(key=seed & _MASK64)
    words = bg.random_raw(4 * blocks_per_path * n_paths)
    u = (words.reshape(n_paths, 4 * blocks_per_path)[:, :n_steps] >> np.uint64(11)).astype(
        np.float64
    )
    del words
    u += 0.5
    u *= 2.0**-53
    ndtri(u, out=u)
    u *= math.sqrt(dt)
    return u


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("VOC_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _resolve_backend(backend: str | None):
    name = backend or DEFAULT_BACKEND
    if name == "cython":
        if _pathsim is None:
            raise NumericRangeError("compiled backend requested but not built")
        return name, _pathsim.simulate_block
    if name == "numpy":
        return name, _pathsim_py.simulate_block
    raise NumericRangeError(f"unknown simulation backend {backend!r}")


def _control_values(control, nodes) -> np.ndarray:
    vals = np.array([float(control(t)) for t in nodes])
    if not np.all(np.isfinite(vals)):
        raise SimulationError("control produced non-finite values")
    return vals


def _kernel_table(problem: ControlProblem, grid: TimeGrid) -> np.ndarray:
    # tabulate once; the inner loops only ever need K on the grid offsets
    ktab = np.array([problem.kernel(j * grid.dt) for j in range(grid.n_steps + 1)])
    if not np.all(np.isfinite(ktab)):
        raise SimulationError("kernel produced non-finite values on the grid")
    return ktab


def simulate_paths(
    problem: ControlProblem,
    control,
    grid: TimeGrid,
    n_paths: int,
    seed: int,
    workers: int | None = None,
    backend: str | None = None,
) -> PathBatch:
    """Simulate n_paths goodwill trajectories under a deterministic control.

    ``workers`` bounds thread fan-out over path chunks (default: the
    VOC_THREADS environment variable, else 1); it never changes the result.
    ``backend`` picks "cython" or "numpy" explicitly, defaulting to the
    compiled kernel when available.
    """
    if abs(grid.T - problem.T) > 1e-12:
        raise DomainError("grid horizon does not match the problem horizon")
    if n_paths < 1:
        raise DomainError(f"n_paths must be >= 1, got {n_paths}")
    _, block_fn = _resolve_backend(backend)
    workers = _resolve_workers(workers)
    n_steps = grid.n_steps
    dt = grid.dt
    ktab = _kernel_table(problem, grid)
    ctl = _control_values(control, grid.nodes[:-1])
    dw = gaussian_increments(seed, n_paths, n_steps, dt)
    out = np.empty((n_paths, n_steps + 1))

    if problem.beta == 0.0:
        # no feedback: the whole scheme collapses to one convolution product
        g = problem.alpha * ctl * dt + problem.sigma * dw
        conv = np.zeros((n_steps, n_steps + 1))
        for i in range(1, n_steps + 1):
            conv[:i, i] = ktab[i:0:-1]
        out[:, 0] = problem.x0
        out[:, 1:] = problem.x0 + g @ conv[:, 1:]
    elif workers == 1 or n_paths < 2 * workers:
        block_fn(ktab, ctl, problem.x0, problem.alpha, problem.beta, problem.sigma, dt, dw, out)
    else:
        bounds = np.linspace(0, n_paths, workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    block_fn, ktab, ctl, problem.x0, problem.alpha, problem.beta,
                    problem.sigma, dt, dw[a:b], out[a:b],
                )
                for a, b in zip(bounds[:-1], bounds[1:])
                if b > a
            ]
            for f in futures:
                f.result()

    if not np.all(np.isfinite(out)):
        raise SimulationError("simulation produced non-finite state values")
    return PathBatch(paths=out, seed=seed, grid=grid)


def deterministic_mean(problem: ControlProblem, control, grid: TimeGrid) -> np.ndarray:
    """Mean goodwill on the grid via trapezoidal product quadrature.

    Sweeping i upward, the i-th equation involves m_i only through the
    half-weight K(0) dt / 2 term, so each step is one scalar linear solve:

        (1 + beta K(0) dt / 2) m_i = x0 + known history terms.
    """
    if abs(grid.T - problem.T) > 1e-12:
        raise DomainError("grid horizon does not match the problem horizon")
    n_steps = grid.n_steps
    dt = grid.dt
    ktab = _kernel_table(problem, grid)
    u = _control_values(control, grid.nodes)
    alpha, beta, x0 = problem.alpha, problem.beta, problem.x0
    pivot = 1.0 + beta * ktab[0] * dt / 2.0
    if pivot == 0.0:
        raise NumericRangeError("singular step in the mean equation")
    m = np.empty(n_steps + 1)
    m[0] = x0
    for i in range(1, n_steps + 1):
        acc = 0.5 * dt * ktab[i] * (alpha * u[0] - beta * m[0])
        if i > 1:
            acc += dt * float(np.dot(ktab[i - 1 : 0 : -1], alpha * u[1:i] - beta * m[1:i]))
        acc += 0.5 * dt * ktab[0] * alpha * u[i]
        m[i] = (x0 + acc) / pivot
    return m
