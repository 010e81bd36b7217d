"""Hot loops of the walk: one step of ``S C Q`` and a full evolution.

Two implementations of each kernel exist. The numba ones are used when
numba imports and ``QWSTATIONARY_DISABLE_NUMBA`` is unset (or ``0``); the
pure-numpy ones otherwise. Both are always importable so tests and the
benchmark can compare them directly.

Kernel arguments are the raw CSR arrays of :class:`qwstationary.graph.Graph`:
``offsets`` (n+1), ``reverse`` (2m) and ``sign`` (2m, -1.0 on arcs leaving a
marked vertex, +1.0 elsewhere). Every vertex has degree >= 1.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "HAVE_NUMBA",
    "USE_NUMBA",
    "step",
    "evolve",
    "step_numpy",
    "evolve_numpy",
    "step_numba",
    "evolve_numba",
]


def _have_numba() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


HAVE_NUMBA = _have_numba()
USE_NUMBA = HAVE_NUMBA and os.environ.get("QWSTATIONARY_DISABLE_NUMBA", "0").lower() in ("", "0", "false", "no")


def step_numpy(x, offsets, reverse, sign):
    y = sign * x
    deg = np.diff(offsets)
    mean = np.add.reduceat(y, offsets[:-1]) / deg
    z = 2.0 * np.repeat(mean, deg) - y
    return z[reverse]


def evolve_numpy(x0, steps, offsets, reverse, sign, marked_arc):
    """Return ``(x_T, p, norm2)`` with ``p[t]``/``norm2[t]`` after ``t`` steps."""
    p = np.empty(steps + 1)
    norm2 = np.empty(steps + 1)
    x = x0.copy()
    for t in range(steps + 1):
        if t:
            x = step_numpy(x, offsets, reverse, sign)
        prob = x.real**2 + x.imag**2
        p[t] = prob[marked_arc].sum()
        norm2[t] = prob.sum()
    return x, p, norm2


if HAVE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _step_into(x, out, offsets, reverse, sign):
        n = offsets.shape[0] - 1
        for v in range(n):
            lo = offsets[v]
            hi = offsets[v + 1]
            acc = 0.0 * x[0]
            for a in range(lo, hi):
                acc += sign[a] * x[a]
            mean2 = 2.0 * acc / (hi - lo)
            for a in range(lo, hi):
                out[reverse[a]] = mean2 - sign[a] * x[a]

    @njit(cache=True)
    def step_numba(x, offsets, reverse, sign):
        out = np.empty_like(x)
        _step_into(x, out, offsets, reverse, sign)
        return out

    @njit(cache=True)
    def evolve_numba(x0, steps, offsets, reverse, sign, marked_arc):
        p = np.empty(steps + 1)
        norm2 = np.empty(steps + 1)
        x = x0.copy()
        buf = np.empty_like(x)
        for t in range(steps + 1):
            if t:
                _step_into(x, buf, offsets, reverse, sign)
                x, buf = buf, x
            pt = 0.0
            nt = 0.0
            for a in range(x.shape[0]):
                q = x[a].real * x[a].real + x[a].imag * x[a].imag
                nt += q
                if marked_arc[a]:
                    pt += q
            p[t] = pt
            norm2[t] = nt
        return x, p, norm2

else:
    step_numba = None
    evolve_numba = None


if USE_NUMBA:
    step = step_numba
    evolve = evolve_numba
else:
    step = step_numpy
    evolve = evolve_numpy
