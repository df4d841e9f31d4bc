"""Compiled vs pure-Python kernel timings.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each case runs on both backends with the same inputs and checks that the
results agree before reporting the timings.
"""

import argparse
import random
import time
from itertools import combinations

import numpy as np

from cliffspin import _backend
from cliffspin.clifford import build, monomial
from cliffspin.gilbert import even_generators, random_vector
from cliffspin.linalg import _integer_matrix


def spin_inputs(n: int, seed: int | None = 0):
    """g_1 g_j generators at n, with a random vector (or e_0 when seed is None)."""
    g = even_generators(build(n))
    mats = np.array([_integer_matrix(g[0] @ gj) for gj in g[1:]], dtype=np.int64)
    if seed is None:
        v = [1] + [0] * (mats.shape[1] - 1)
    else:
        v = random_vector(random.Random(seed), mats.shape[1])
    return mats, v


def monomial_rows(n: int):
    """Flattened monomials of one component, the input of the exact span rank."""
    gens = build(n).component("+")
    size = gens[0].rows
    rows = []
    for r in range(n + 1):
        for alpha in combinations(range(n), r):
            sp = monomial(gens, alpha).to_signed_perm()
            flat = [0] * (size * size)
            for j, (i, s) in enumerate(zip(sp.perm, sp.signs)):
                flat[i * size + j] = s
            rows.append(flat)
    return rows


def random_rows(rows: int, cols: int, rank: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    a = rng.integers(-3, 4, size=(rows, rank)) @ rng.integers(-3, 4, size=(rank, cols))
    return a.tolist()


def timed(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _overflows(fn) -> bool:
    if _backend._compiled is None:
        return False
    try:
        fn(_backend._compiled)
    except OverflowError:
        return True
    return False


def _as(b, m):
    return m.tolist() if b == "python" else m


def cases(quick: bool):
    for n in (6, 7) if quick else (6, 7, 8):
        rows = monomial_rows(n)
        yield f"rref monomials n={n}", (lambda b, rows=rows: _backend.rref(rows, backend=b)), False
    for size in (16, 48):
        rows = random_rows(size, size, size // 2)
        yield (
            f"rref dense {size}x{size}",
            lambda b, rows=rows: _backend.rref(rows, backend=b),
            _overflows(lambda c, rows=rows: c.rref(rows)),
        )
    for n in (10, 12) if quick else (10, 12, 14):
        m, e0 = spin_inputs(n, seed=None)
        yield f"spin e_0 n={n} ({m.shape[1]}-dim)", (lambda b, m=m, v=e0: _backend.spin(_as(b, m), v, backend=b)), False
        m, v = spin_inputs(n)
        yield (
            f"spin_rank_mod n={n} ({m.shape[1]}-dim)",
            lambda b, m=m, v=v: _backend.spin_rank_mod(_as(b, m), v, backend=b),
            False,
        )
    m, v = spin_inputs(10)
    yield (
        f"spin random n=10 ({m.shape[1]}-dim)",
        lambda b, m=m, v=v: _backend.spin(_as(b, m), v, backend=b),
        _overflows(lambda c, m=m, v=v: c.spin(m, v)),
    )


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--quick", action="store_true")
    args = p.parse_args()
    backends = _backend.available()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is timed")
    print(f"{'case':32s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn, fallback in cases(args.quick):
        times, outs = [], []
        for b in backends:
            t, out = timed(lambda: fn(b), args.repeat)
            times.append(t)
            outs.append(out)
        if len(outs) == 2 and outs[0] != outs[1]:
            raise SystemExit(f"backends disagree on {name}")
        line = f"{name:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:11.1f}x"
        if fallback:
            line += "  (int64 overflow: compiled path reruns in Python)"
        print(line)


if __name__ == "__main__":
    main()
