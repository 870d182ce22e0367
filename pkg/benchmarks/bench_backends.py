"""Compare the compiled kernel against the pure-Python fallback.

Times the five shared kernel functions on synthetic workloads and one
end-to-end pipeline run per backend.  Run as a script:

    python3 benchmarks/bench_backends.py
"""

import itertools
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import flagflux._pyforms as pure

try:
    import flagflux._fastforms as fast
except ImportError:
    fast = None


def random_terms(rng, degree, max_index, max_terms):
    keys = list(itertools.combinations(range(1, max_index + 1), degree))
    rng.shuffle(keys)
    out = {}
    for key in keys[: rng.randint(max_terms // 2, max_terms)]:
        out[key] = rng.choice(
            [rng.randint(-9, -1), rng.randint(1, 9), Fraction(rng.randint(1, 7), 3)]
        )
    return out


def build_workloads(seed=97):
    rng = random.Random(seed)
    pairs3 = [
        (random_terms(rng, 2, 12, 20), random_terms(rng, 3, 12, 40))
        for _ in range(60)
    ]
    diffs = []
    for k in range(1, 13):
        diffs.append({} if k <= 2 else random_terms(rng, 2, k - 1, 4))
    forms3 = [random_terms(rng, 3, 12, 40) for _ in range(60)]
    return pairs3, diffs, forms3


def timed(fn, reps=5):
    best = None
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_kernel(mod, pairs3, diffs, forms3):
    rows = {}
    rows["wedge"] = timed(lambda: [mod.wedge_terms(a, b) for a, b in pairs3])
    rows["add"] = timed(lambda: [mod.add_terms(a, b) for (a, _), (b, _) in zip(pairs3, pairs3[1:] + pairs3[:1])])
    rows["scale"] = timed(lambda: [mod.scale_terms(f, Fraction(3, 7)) for f in forms3])
    rows["interior"] = timed(lambda: [mod.interior_terms(x, f) for f in forms3 for x in (1, 5, 9)])
    rows["ce"] = timed(lambda: [mod.ce_terms(diffs, f) for f in forms3])
    return rows


def bench_pipeline(force_pure):
    env = dict(os.environ)
    if force_pure:
        env["FLAGFLUX_PURE"] = "1"
    else:
        env.pop("FLAGFLUX_PURE", None)
    code = (
        "from flagflux import FlagSpec, three_summand_correspond;"
        "import flagflux.correspond as m;"
        "three_summand_correspond(2, 2, 2)"
    )
    t0 = time.perf_counter()
    subprocess.run([sys.executable, "-c", code], check=True, env=env)
    return time.perf_counter() - t0


def main():
    pairs3, diffs, forms3 = build_workloads()
    print("kernel microbenchmarks (best of 5, seconds)")
    print("%-10s %12s %12s %8s" % ("function", "pure", "compiled", "speedup"))
    pure_rows = bench_kernel(pure, pairs3, diffs, forms3)
    fast_rows = bench_kernel(fast, pairs3, diffs, forms3) if fast else None
    for name, p in pure_rows.items():
        if fast_rows:
            f = fast_rows[name]
            print("%-10s %12.6f %12.6f %7.2fx" % (name, p, f, p / f))
        else:
            print("%-10s %12.6f %12s %8s" % (name, p, "absent", "-"))
    for name in pure_rows:
        if fast_rows:
            a = [pure.wedge_terms(x, y) for x, y in pairs3]
            b = [fast.wedge_terms(x, y) for x, y in pairs3]
            assert a == b, "backends disagree on wedge"
            break

    print()
    print("end-to-end three-summand pipeline, one process each (includes startup)")
    t_pure = bench_pipeline(force_pure=True)
    print("%-10s %12.3f" % ("pure", t_pure))
    if fast:
        t_fast = bench_pipeline(force_pure=False)
        print("%-10s %12.3f %7.2fx" % ("compiled", t_fast, t_pure / t_fast))


if __name__ == "__main__":
    main()
