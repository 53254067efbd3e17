"""Interpreted Crank-Nicolson kernel, used when the extension is absent.

Same Toeplitz Thomas recurrences as the compiled core, written over plain
Python complex scalars. Correct but roughly two orders of magnitude slower;
see benchmarks/bench_kernels.py.
"""

import numpy as np


def _step_list(psi, alpha):
    n = len(psi)
    diag = 1.0 + 1j * alpha
    off = -0.5j * alpha
    bdiag = 1.0 - 1j * alpha
    boff = 0.5j * alpha

    if n == 1:
        return [(bdiag * psi[0]) / diag]

    rhs = [0j] * n
    rhs[0] = bdiag * psi[0] + boff * psi[1]
    for j in range(1, n - 1):
        rhs[j] = bdiag * psi[j] + boff * (psi[j - 1] + psi[j + 1])
    rhs[n - 1] = bdiag * psi[n - 1] + boff * psi[n - 2]

    cp = [0j] * n
    inv = 1.0 / diag
    cp[0] = off * inv
    rhs[0] = rhs[0] * inv
    for j in range(1, n):
        inv = 1.0 / (diag - off * cp[j - 1])
        cp[j] = off * inv
        rhs[j] = (rhs[j] - off * rhs[j - 1]) * inv

    out = [0j] * n
    out[n - 1] = rhs[n - 1]
    for j in range(n - 2, -1, -1):
        out[j] = rhs[j] - cp[j] * out[j + 1]
    return out


def cn_step(psi, alpha):
    """Return the state advanced by one Crank-Nicolson step."""
    values = np.asarray(psi, dtype=np.complex128)
    if values.size == 0:
        return values.copy()
    return np.array(_step_list(list(values), float(alpha)), dtype=np.complex128)


def cn_evolve(psi, alphas):
    """Apply one Crank-Nicolson step per entry of ``alphas``."""
    values = np.asarray(psi, dtype=np.complex128)
    if values.size == 0:
        return values.copy()
    state = list(values)
    for alpha in np.asarray(alphas, dtype=np.float64):
        state = _step_list(state, float(alpha))
    return np.array(state, dtype=np.complex128)
