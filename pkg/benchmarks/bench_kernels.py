"""Time the numba and numpy paths of the three hot kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--size 1]

The first numba call (compilation) is excluded by a warm-up run.
"""

import argparse
import time

import numpy as np

from eqtoeplitz import _accel, _kernels


def _disc(rng, n, rmax=0.95):
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def cases(size=1, seed=0):
    rng = np.random.default_rng(seed)
    na, nb, nk = 400 * size, 400 * size, 4
    a, b = _disc(rng, na), _disc(rng, nb)
    U = rng.standard_normal((na, nk)) + 1j * rng.standard_normal((na, nk))
    V = rng.standard_normal((nb, nk)) + 1j * rng.standard_normal((nb, nk))
    delta = (a, rng.random(na), b, rng.random(nb), U, V, 6.0)

    P = 120 * size
    nr = 2 * P
    ring = (rng.random(nr), rng.random((nr, P)),
            rng.standard_normal((nr, 2 * P - 1)) + 1j * rng.standard_normal((nr, 2 * P - 1)))

    # a single hyperbolic pair: circles |z -+ c| = r with c^2 - r^2 = 1
    c, r = 1.5, np.sqrt(1.25)
    cen = np.array([-c, c], dtype=complex)
    rad = np.array([r, r])
    ga = np.array([c / r + 0j])
    gb = np.array([1 / r + 0j])
    desc = (_disc(rng, 20000 * size, 0.999), cen, rad, ga, gb, 64)
    return {"delta_pair": (_kernels._delta_pair_nb, _kernels._delta_pair_np, delta),
            "ring_assembly": (_kernels._ring_assembly_nb, _kernels._ring_assembly_np, ring),
            "descend": (_kernels._descend_nb, _kernels._descend_np, desc)}


def best_of(fn, args, repeat):
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        ts.append(time.perf_counter() - t0)
    return min(ts), out


def _maxdiff(x, y):
    if isinstance(x, tuple):
        return max(_maxdiff(u, v) for u, v in zip(x, y))
    x, y = np.asarray(x), np.asarray(y)
    if x.dtype == bool:
        return float(np.count_nonzero(x != y))
    return float(np.max(np.abs(x - y))) if x.size else 0.0


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--size", type=int, default=1)
    args = p.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba unavailable (or EQTOEPLITZ_NO_NUMBA set); timing numpy only")
    print(f"{'kernel':15s} {'numpy [s]':>11s} {'numba [s]':>11s} {'speedup':>8s} {'max diff':>10s}")
    for name, (nb, npf, args_) in cases(args.size).items():
        t_np, r_np = best_of(npf, args_, args.repeat)
        if _accel.HAVE_NUMBA:
            nb(*args_)  # compile
            t_nb, r_nb = best_of(nb, args_, args.repeat)
            print(f"{name:15s} {t_np:11.4f} {t_nb:11.4f} {t_np / t_nb:8.1f} {_maxdiff(r_np, r_nb):10.2e}")
        else:
            print(f"{name:15s} {t_np:11.4f} {'-':>11s} {'-':>8s} {'-':>10s}")


if __name__ == "__main__":
    main()
