"""Compare the compiled and pure-Python kernels on random lambda terms.

Run with ``python3 benchmarks/bench_kernels.py``.
"""
import argparse
import importlib
import random
import timeit

from bindsyn.gen import TermGenerator
from bindsyn.signature import SIGMA_LC


def workload(n_terms, seed):
    rng = random.Random(seed)
    gen = TermGenerator(SIGMA_LC, rng)
    terms = [gen.term(4, 9) for _ in range(n_terms)]
    images = [gen.substitution(4, 3, 4) for _ in range(n_terms)]
    return terms, images


def bench(mod, terms, images, repeat):
    pos = SIGMA_LC.positions

    def run():
        for t, f in zip(terms, images):
            mod.substitute(t, f, 4, 0)
            mod.remap(t, (3, 2, 1, 0), 4, 0)
            mod.order_key(t, pos)
            mod.free_indices(t)
            mod.scope_bound(t)

    return min(timeit.repeat(run, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    terms, images = workload(args.terms, args.seed)
    py = importlib.import_module("bindsyn._pykernels")
    rows = [("python", bench(py, terms, images, args.repeat))]
    try:
        c = importlib.import_module("bindsyn._ckernels")
    except ImportError:
        print("compiled kernels not built; only the pure-Python backend was timed")
    else:
        for t, f in zip(terms, images):
            assert c.substitute(t, f, 4, 0) == py.substitute(t, f, 4, 0)
        rows.append(("cython", bench(c, terms, images, args.repeat)))
    base = rows[0][1]
    nodes = sum(len(repr(t)) for t in terms)
    print(f"{len(terms)} terms (~{nodes} repr chars), best of {args.repeat}")
    for name, secs in rows:
        print(f"  {name:7s} {secs * 1000:8.1f} ms   speedup x{base / secs:.2f}")


if __name__ == "__main__":
    main()
