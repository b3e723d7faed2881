"""Compare the compiled and pure-Python kernels on the hot loops.

Run with ``python3 benchmarks/bench_kernels.py``.  Each workload is timed on
both backends and the outputs are checked for equality.
"""

import argparse
import time

from arthur_phi import _kernels_py
from arthur_phi.cartan import CARTAN, classical, from_cartan

try:
    from arthur_phi import _kernels as _compiled
except ImportError:
    _compiled = None


def _generators(roots, coroots):
    from arthur_phi.rootdatum import RootSystem
    rs = RootSystem(roots, coroots)
    return [(rs.roots[i], rs.coroots[i]) for i in rs.simple], len(roots[0])


def workloads():
    for name, data in (("B3", classical("B", 3)), ("D4", classical("D", 4)),
                       ("F4", from_cartan(CARTAN["F4"])), ("E6", from_cartan(CARTAN["E6"]))):
        gens, n = _generators(*data)
        yield f"weyl_closure {name}", "weyl_closure", (gens, n, 100_000)
    roots, coroots = from_cartan(CARTAN["F4"])
    points = [tuple((i * 7 + j * 3) % 11 - 5 for j in range(4)) for i in range(1152)]
    yield "sign_rows F4 (1152 points x 48 roots)", "sign_rows", (points, roots)
    signs = _kernels_py.sign_rows(points, roots)
    yield "conformal_indices F4 (1152 rays)", "conformal_indices", (signs, signs[0])


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if _compiled is None:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'workload':<42} {'python (s)':>11} {'compiled (s)':>13} {'speedup':>8}")
    for label, fname, fargs in workloads():
        tp, outp = _time(getattr(_kernels_py, fname), fargs, args.repeat)
        if _compiled is None:
            print(f"{label:<42} {tp:>11.4f} {'-':>13} {'-':>8}")
            continue
        tc, outc = _time(getattr(_compiled, fname), fargs, args.repeat)
        if outp != outc:
            raise SystemExit(f"backend mismatch on {label}")
        print(f"{label:<42} {tp:>11.4f} {tc:>13.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
