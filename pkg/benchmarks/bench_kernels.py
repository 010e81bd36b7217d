"""Compare the numba and numpy walk kernels.

    python benchmarks/bench_kernels.py [--steps 2000] [--repeat 5]

Prints per-step time of ``evolve`` for each backend and the speedup.
"""

import argparse
import time

import numpy as np

from qwstationary import _kernels, gen_complete, gen_cycle, load_graph
from qwstationary.walk import WalkOperator, uniform_state


def random_regular(n, d, seed=0):
    rng = np.random.default_rng(seed)
    while True:
        stubs = rng.permutation(np.repeat(np.arange(n), d)).reshape(-1, 2)
        edges = {(min(u, v), max(u, v)) for u, v in stubs if u != v}
        if len(edges) == n * d // 2:
            return load_graph(sorted(edges)), [0]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba not installed; nothing to compare")

    cases = {
        "cycle-100": gen_cycle(100, 2),
        "cycle-2000": gen_cycle(2000, 2),
        "complete-60": gen_complete(60, 3),
        "regular-2000x6": random_regular(2000, 6),
    }
    print(f"{'graph':<16}{'arcs':>8}{'numpy us/step':>16}{'numba us/step':>16}{'speedup':>10}")
    for name, (g, M) in cases.items():
        op = WalkOperator(g, M)
        x0 = uniform_state(g)
        a = (x0, args.steps, g.offsets, g.reverse, op.sign, op.marked_arc)
        _kernels.evolve_numba(*a[:1], 1, *a[2:])  # compile outside timing
        t_np = best_of(lambda: _kernels.evolve_numpy(*a), args.repeat) / args.steps * 1e6
        t_nb = best_of(lambda: _kernels.evolve_numba(*a), args.repeat) / args.steps * 1e6
        print(f"{name:<16}{g.n_arcs:>8}{t_np:>16.2f}{t_nb:>16.2f}{t_np / t_nb:>10.1f}")


if __name__ == "__main__":
    main()
