"""Compare the compiled and numpy layer kernels on real BFS workloads.

    python3 benchmarks/bench_kernels.py [--depth 9] [--quotient-depth 16] [--repeat 3]
"""
import argparse
import time

import numpy as np

from coxgrowth import kernels
from coxgrowth.diagram import Diagram
from coxgrowth.growth import coxeter_layers, parabolic_layers


def star(k):
    return Diagram(["c"] + [f"l{i}" for i in range(1, k + 1)],
                   [("c", f"l{i}", 3) for i in range(1, k + 1)])


def last_layer(gen):
    lay = None
    for _, lay in gen:
        pass
    return lay


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=9)
    ap.add_argument("--quotient-depth", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    d = star(5)
    g2 = np.ascontiguousarray(d.gram2, dtype=np.int64)
    allowed = np.arange(d.rank, dtype=np.int64)
    jmask = np.array([True] * 5 + [False])
    layer = last_layer(coxeter_layers(d, args.depth))
    qlayer = last_layer(parabolic_layers(d, range(5), args.quotient_depth))
    # inverses via exact float solve are fine at these sizes
    qinv = np.rint(np.linalg.inv(qlayer.astype(float))).astype(np.int64)
    vecs = np.eye(d.rank, dtype=np.int64)[:5]

    cases = [
        ("expand_right", layer.shape[0],
         lambda: kernels.expand_right_jit(layer, g2, allowed),
         lambda: kernels.expand_right_np(layer, g2, allowed)),
        ("expand_left", qlayer.shape[0],
         lambda: kernels.expand_left_jit(qlayer, qinv, g2, jmask),
         lambda: kernels.expand_left_np(qlayer, qinv, g2, jmask)),
        ("images_positive", layer.shape[0],
         lambda: kernels.images_positive_jit(layer, vecs),
         lambda: kernels.images_positive_np(layer, vecs)),
    ]
    print(f"backend selected by default: {kernels.BACKEND}")
    print(f"{'kernel':<16} {'layer':>8} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, size, fj, fn in cases:
        fj()  # compile outside the timing
        tj = best_of(fj, args.repeat)
        tn = best_of(fn, args.repeat)
        print(f"{name:<16} {size:>8} {tj * 1e3:>10.2f} {tn * 1e3:>10.2f} {tn / tj:>8.1f}")


if __name__ == "__main__":
    main()
