"""Pure-numpy fallback for the Volterra Euler inner loop.

Same recursion as the compiled module, vectorized across paths: step i does
one matrix-vector product against the reversed kernel table.  Each path's
row only ever enters row-wise reductions, so results do not depend on how
paths are chunked across workers.
"""

import numpy as np


def simulate_block(ktab, ctl, x0, alpha, beta, sigma, dt, dw, out):
    n_steps = dw.shape[1]
    out[:, 0] = x0
    g = np.empty_like(dw)
    for i in range(1, n_steps + 1):
        j = i - 1
        g[:, j] = (alpha * ctl[j] - beta * out[:, j]) * dt + sigma * dw[:, j]
        out[:, i] = x0 + g[:, :i] @ ktab[i:0:-1]
