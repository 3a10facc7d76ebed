"""Exact and heuristic search for the largest degree/diameter-bounded mesh subgraph.

Exact search works top-down. Every vertex set of L1 diameter at most D,
translated so its lexicographically smallest point is the origin, lies in a
maximal clique of the "L1 distance <= D" relation on the lexicographically
non-negative part of the radius-D ball. For each target order t, from the
sandwich bound downwards, the search enumerates the t-subsets of those cliques
that contain the origin. It discards lattice-symmetric duplicates by canonical
form and asks the edge-deletion kernel whether some edge subset meets the
degree and diameter limits. The first feasible level is the optimum.

Candidates are evaluated in fixed batches so results, node counts and the
checkpoint position do not depend on the thread count.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import random
import time
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx

from meshddbs import kernels
from meshddbs.constructions import build, family_for
from meshddbs.lattice_ball import BallSpec, ConstraintSpec, ball_points, ball_size_closed, enumerate_ball
from meshddbs.mesh_graph import MeshSubgraph, Point, canonical_points, l1
from meshddbs.verifier import sandwich_bound, verify

log = logging.getLogger(__name__)

DEFAULT_MAX_NODES = 10**8
BATCH = 64
CHECKPOINT_FORMAT = "meshddbs.search-checkpoint"
CHECKPOINT_VERSION = 1

# Largest known orders and upper bounds for k = 2, max degree 3, by diameter.
LITERATURE_K2_DELTA3: dict[int, tuple[int, int]] = {
    2: (4, 4), 3: (6, 6), 4: (10, 10), 5: (14, 14), 6: (22, 22),
    7: (28, 32), 8: (37, 41), 9: (44, 50), 10: (52, 61), 11: (68, 72),
    12: (77, 85), 13: (90, 98), 14: (104, 113), 15: (124, 128), 16: (135, 145),
}


class CheckpointError(ValueError):
    """The checkpoint is unreadable, of another format version, or for another instance."""


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    time_limit: float | None = None
    threads: int | None = None
    batch: int = BATCH

    def thread_count(self) -> int:
        return self.threads if self.threads else (os.cpu_count() or 1)


@dataclass(frozen=True)
class SearchResult:
    best_order: int
    witness: MeshSubgraph
    exact: bool
    nodes_explored: int
    elapsed: float
    upper_bound_used: int
    checkpoint: dict | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "best_order": self.best_order,
            "exact": self.exact,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 3),
            "upper_bound_used": self.upper_bound_used,
            "witness": self.witness.to_dict(),
        }


def _validate_instance(k: int, c: ConstraintSpec) -> None:
    if k < 1:
        raise ValueError(f"dimension must be >= 1, got {k}")
    c.check_dimension(k)


def _instance(k: int, c: ConstraintSpec) -> dict:
    return {"dim": k, "max_degree": c.max_degree, "diameter": c.diameter_bound}


def _feasible(points: list[Point], dim: int, c: ConstraintSpec, cap: int) -> tuple[int, int, MeshSubgraph | None]:
    """Run the edge-deletion kernel on the induced graph of ``points``."""
    g = MeshSubgraph.induced(dim, points)
    if g.order == 1:
        return kernels.FEASIBLE, 1, g
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    status, nodes, alive = kernels.subgraph_search(g.order, eu, ev, c.max_degree, c.diameter_bound, cap)
    if status != kernels.FEASIBLE:
        return status, nodes, None
    edges = tuple(e for e, keep in zip(g.edges, alive) if keep)
    return status, nodes, MeshSubgraph(dim, g.vertices, edges)


def upper_bound(k: int, c: ConstraintSpec) -> int:
    return sandwich_bound(k, c)


def _region(k: int, diameter: int) -> list[Point]:
    origin = (0,) * k
    return sorted(v for v in ball_points(BallSpec(k, diameter)) if v >= origin)


def _cliques(k: int, diameter: int) -> list[tuple[Point, ...]]:
    """Maximal sets of pairwise L1 distance <= D containing the origin, in a fixed order."""
    region = _region(k, diameter)
    graph = nx.Graph()
    graph.add_nodes_from(region)
    graph.add_edges_from((u, v) for u, v in itertools.combinations(region, 2) if l1(u, v) <= diameter)
    origin = (0,) * k
    cliques = {tuple(sorted(q)) for q in nx.find_cliques(graph, nodes=[origin])}
    return sorted(cliques, key=lambda q: (-len(q), q))


def _candidates(k: int, cliques: list[tuple[Point, ...]], target: int) -> Iterator[list[Point]]:
    """Distinct (up to lattice symmetry) target-subsets of the cliques that contain the origin."""
    origin = (0,) * k
    seen: set[tuple[Point, ...]] = set()
    for clique in cliques:
        if len(clique) < target:
            continue
        rest = [v for v in clique if v != origin]
        for combo in itertools.combinations(rest, target - 1):
            pts = [origin, *combo]
            key = canonical_points(pts, k)
            if key in seen:
                continue
            seen.add(key)
            yield pts


def _path_witness(k: int, c: ConstraintSpec) -> MeshSubgraph:
    """A straight path: always feasible when the degree allows it."""
    length = 1 if c.max_degree == 1 else c.diameter_bound
    length = min(length, c.diameter_bound)
    pts = [(i,) + (0,) * (k - 1) for i in range(length + 1)]
    return MeshSubgraph.induced(k, pts)


def _checkpoint(k: int, c: ConstraintSpec, level: int, position: int, nodes: int,
                incumbent: MeshSubgraph, result: SearchResult | None) -> dict:
    return {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "instance": _instance(k, c),
        "seed": 0,
        "level": level,
        "position": position,
        "nodes": nodes,
        "incumbent": incumbent.to_dict(),
        "result": None if result is None else result.to_dict(),
    }


def save_checkpoint(state: dict, path: str | os.PathLike) -> None:
    Path(path).write_text(json.dumps(state, indent=1, sort_keys=True) + "\n")


def load_checkpoint(path: str | os.PathLike) -> dict:
    try:
        state = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(state, dict) or state.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError(f"{path} is not a {CHECKPOINT_FORMAT} file")
    if state.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint version {state.get('version')!r}, expected {CHECKPOINT_VERSION}")
    for key in ("instance", "level", "position", "nodes", "incumbent"):
        if key not in state:
            raise CheckpointError(f"checkpoint is missing field {key!r}")
    return state


def _graph_from_dict(d: dict) -> MeshSubgraph:
    return MeshSubgraph(d["dim"], tuple(map(tuple, d["vertices"])), tuple(map(tuple, d["edges"])))


def exact_search(
    k: int,
    c: ConstraintSpec,
    budget: SearchBudget | None = None,
    resume: dict | None = None,
) -> SearchResult:
    """Largest order of a subgraph of Z^k with max degree and diameter within ``c``.

    ``exact`` is False when the node or time budget ran out; the result then
    carries a checkpoint (``result.checkpoint``) from which ``resume``
    continues as if never interrupted.
    """
    _validate_instance(k, c)
    budget = budget or SearchBudget()
    start = time.monotonic()
    D = c.diameter_bound
    ub = upper_bound(k, c)
    cliques = _cliques(k, D)
    top = min(ub, max(len(q) for q in cliques))

    incumbent = _path_witness(k, c)
    level, position, nodes = top, 0, 0
    if resume is not None:
        if resume.get("instance") != _instance(k, c):
            raise CheckpointError(f"checkpoint is for {resume.get('instance')}, not {_instance(k, c)}")
        incumbent = _graph_from_dict(resume["incumbent"])
        if resume.get("result") is not None:
            r = resume["result"]
            return SearchResult(r["best_order"], _graph_from_dict(r["witness"]), r["exact"],
                                r["nodes_explored"], 0.0, r["upper_bound_used"], resume)
        level, position, nodes = resume["level"], resume["position"], resume["nodes"]

    threads = budget.thread_count()
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def stop(lvl: int, pos: int) -> SearchResult:
        state = _checkpoint(k, c, lvl, pos, nodes, incumbent, None)
        return SearchResult(incumbent.order, incumbent, False, nodes, time.monotonic() - start, ub, state)

    try:
        while level > incumbent.order:
            stream = _candidates(k, cliques, level)
            for _ in itertools.islice(stream, position):
                pass
            while True:
                batch = list(itertools.islice(stream, budget.batch))
                if not batch:
                    break
                remaining = budget.max_nodes - nodes
                timed_out = budget.time_limit is not None and time.monotonic() - start > budget.time_limit
                if remaining <= 0 or timed_out:
                    return stop(level, position)

                def run(pts: list[Point], cap: int = remaining) -> tuple[int, int, MeshSubgraph | None]:
                    return _feasible(pts, k, c, cap)

                outcomes = list(pool.map(run, batch)) if pool else [run(b) for b in batch]
                if any(status == kernels.ABORTED for status, _, _ in outcomes):
                    nodes_spent = sum(n for _, n, _ in outcomes)
                    res = stop(level, position)
                    return SearchResult(res.best_order, res.witness, False, nodes + nodes_spent,
                                        res.elapsed, ub, res.checkpoint)
                nodes += sum(n for _, n, _ in outcomes) + len(batch)
                position += len(batch)
                for status, _, g in outcomes:
                    if status == kernels.FEASIBLE:
                        incumbent = g
                        result = SearchResult(g.order, g, True, nodes, time.monotonic() - start, ub)
                        state = _checkpoint(k, c, level, position, nodes, g, result)
                        return SearchResult(g.order, g, True, nodes, result.elapsed, ub, state)
            level -= 1
            position = 0
    finally:
        if pool:
            pool.shutdown()
    result = SearchResult(incumbent.order, incumbent, True, nodes, time.monotonic() - start, ub)
    state = _checkpoint(k, c, level, 0, nodes, incumbent, result)
    return SearchResult(incumbent.order, incumbent, True, nodes, result.elapsed, ub, state)


# ---------------------------------------------------------------------------
# heuristic


def heuristic_search(
    k: int,
    c: ConstraintSpec,
    seed: int = 0,
    budget: SearchBudget | None = None,
    restarts: int = 2000,
    probe_cap: int = 20000,
) -> SearchResult:
    """Seeded randomized trimming and regrowth inside the maximal ball.

    The incumbent starts as the matching construction when one exists and
    verifies, else a straight path. Each restart trims uniformly random
    points from the maximal ball until the kernel finds a feasible edge subset
    (each probe is capped at ``probe_cap`` nodes; an aborted probe counts as
    infeasible), then tries to re-add the trimmed points one by one.
    Deterministic for a given seed and node budget; ``exact`` is always False.
    """
    _validate_instance(k, c)
    budget = budget or SearchBudget()
    start = time.monotonic()
    rng = random.Random(seed)
    D = c.diameter_bound
    ub = upper_bound(k, c)
    nodes = 0

    best = _path_witness(k, c)
    family = family_for(k, c.max_degree, D)
    if family is not None:
        g, _ = build(family, D // 2)
        if verify(g, c).satisfies and g.order > best.order:
            best = g

    spec = BallSpec.from_diameter(k, D)
    if c.max_degree >= 2 * k and ball_size_closed(spec) <= budget.max_nodes:
        ball = enumerate_ball(spec)
        if ball.order > best.order:
            best = ball

    ball_pts = list(ball_points(spec))

    def probe(pts: list[Point]) -> MeshSubgraph | None:
        nonlocal nodes
        status, n, g = _feasible(sorted(pts), k, c, min(probe_cap, max(budget.max_nodes - nodes, 1)))
        nodes += n
        return g if status == kernels.FEASIBLE else None

    def out_of_budget() -> bool:
        if nodes >= budget.max_nodes:
            return True
        return budget.time_limit is not None and time.monotonic() - start > budget.time_limit

    for _ in range(restarts):
        if best.order >= ub or out_of_budget():
            break
        current = set(ball_pts)
        removed: list[Point] = []
        g = None
        while current and not out_of_budget():
            if len(current) > best.order:
                g = probe(list(current))
                if g is not None:
                    break
            victim = rng.choice(sorted(current))
            current.discard(victim)
            removed.append(victim)
            if len(current) <= best.order:
                break
        if g is None:
            continue
        rng.shuffle(removed)
        for v in removed:
            if out_of_budget():
                break
            trial = probe(list(current | {v}))
            if trial is not None:
                current.add(v)
                g = trial
        if g.order > best.order:
            best = g
            log.debug("heuristic: order %d after %d nodes", best.order, nodes)

    return SearchResult(best.order, best, False, nodes, time.monotonic() - start, ub)
