"""Compare the compiled and pure-Python evaluation kernels.

Usage: python benchmarks/bench_kernel.py [--repeat N]

Each workload runs a full identity check through both kernels, asserts
that verdicts, witnesses and tuple counts coincide, and prints timings.
"""

import argparse
import time

from starpi import catalog
from starpi.algebra import require_valid
from starpi.identities import check_envelope_lemma, is_graded_star_identity, minimal_generators
from starpi.kernel import BACKEND
from starpi.poly import Kind, StarPolynomial, Variable, commutator
from starpi.sampling import lemma_sample, seeded
from starpi.transforms import grade_expansions


def _triple_commutators():
    out = []
    for kinds in [(a, b, c) for a in Kind for b in Kind for c in Kind]:
        x = [StarPolynomial.from_variable(Variable(k, i + 1)) for i, k in enumerate(kinds)]
        out.append(commutator(commutator(x[0], x[1]), x[2]))
    return out


E6 = require_valid(catalog.grassmann_algebra(6))
LEMMA = {name: require_valid(catalog.get(name)) for name in ("m2_symplectic_z4", "grassmann3", "grassmann2_x_m2_symplectic_z4")}


def workload_grassmann(backend):
    E = E6
    results = []
    for f in _triple_commutators():
        for g in grade_expansions(f):
            r = is_graded_star_identity(E, g, backend=backend)
            results.append((r.holds, r.tuples_checked))
    return results


def _samples(A, seed, count, degree):
    rng = seeded(seed)
    return [lemma_sample(rng, A, max_degree=degree) for _ in range(count)]


LEMMA_SAMPLES = {name: _samples(A, 11, 15, 4) for name, A in LEMMA.items()}
EXHAUSTIVE_SAMPLES = _samples(LEMMA["grassmann3"], 5, 6, 3)


def workload_envelope(backend):
    results = []
    for name, A in LEMMA.items():
        for f in LEMMA_SAMPLES[name]:
            r = check_envelope_lemma(A, f, backend=backend)
            results.append((r.lhs, r.rhs, r.rhs_report.tuples_checked))
    return results


def workload_exhaustive(backend):
    # full envelope basis with a few spare generators: many tuples per check
    A = LEMMA["grassmann3"]
    results = []
    for f in EXHAUSTIVE_SAMPLES:
        r = check_envelope_lemma(A, f, n_generators=minimal_generators(f) + 4, exhaustive=True, backend=backend)
        results.append((r.lhs, r.rhs, r.rhs_report.tuples_checked))
    return results


def bench(fn, backend, repeat):
    best, out = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(backend)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if BACKEND != "compiled":
        print("compiled kernel unavailable; only the Python kernel can run")
    print(f"{'workload':<22}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}")
    workloads = [
        ("grassmann6 battery", workload_grassmann),
        ("envelope lemma", workload_envelope),
        ("exhaustive envelope", workload_exhaustive),
    ]
    for name, fn in workloads:
        fn("python")  # warm the per-algebra caches

        tp, rp = bench(fn, "python", args.repeat)
        if BACKEND == "compiled":
            tc, rc = bench(fn, "compiled", args.repeat)
            assert rp == rc, f"kernels disagree on {name}"
            print(f"{name:<22}{tp:>12.3f}{tc:>14.3f}{tp / tc:>9.1f}x")
        else:
            print(f"{name:<22}{tp:>12.3f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
