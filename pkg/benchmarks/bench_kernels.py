"""Compare the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Each row reports the best wall time of N runs per backend and checks that
both backends return the same answer.
"""

import argparse
import time

from meshddbs.constructions import build
from meshddbs.kernels import available_backends
from meshddbs.lattice_ball import BallSpec, ConstraintSpec, enumerate_ball
from meshddbs.mesh_graph import MeshSubgraph


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def diameter_cases():
    for family, p in (("h3", 4), ("h3", 8), ("q3", 8), ("delta3-even", 20)):
        g, _ = build(family, p)
        indptr, indices = g.csr()
        yield f"diameter {family}({p}) n={g.order}", "all_pairs_diameter", (g.order, indptr, indices)


def search_cases():
    for D, cap in ((4, 10**6), (5, 10**6), (6, 10**6)):
        c = ConstraintSpec(3, D)
        ball = enumerate_ball(BallSpec.from_diameter(2, D))
        # a lex-first slice of the ball: big enough to need backtracking
        g = MeshSubgraph.induced(2, ball.vertices[: min(ball.order, 4 * D + 2)])
        eu = [e[0] for e in g.edges]
        ev = [e[1] for e in g.edges]
        yield (f"search k=2 D={D} n={g.order} m={g.size}", "subgraph_search",
               (g.order, eu, ev, c.max_degree, c.diameter_bound, cap))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    backends = available_backends()
    names = sorted(backends)
    print(f"{'case':<40}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, kernel, inputs in [*diameter_cases(), *search_cases()]:
        times, outs = {}, {}
        for name in names:
            times[name], outs[name] = best_of(args.repeat, getattr(backends[name], kernel), *inputs)
        if len({repr(o) for o in outs.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}: {outs}")
        row = f"{label:<40}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
