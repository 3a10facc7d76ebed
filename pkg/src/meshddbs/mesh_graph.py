"""Subgraphs of the k-dimensional integer mesh.

Adjacency is stored explicitly as an edge list. A subgraph may omit mesh
edges between two of its vertices, so edges are never inferred from geometry.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from meshddbs import kernels

Point = tuple[int, ...]


class EmptyGraphError(ValueError):
    """Degree and diameter are undefined on the order-0 graph."""


class DisconnectedGraphError(ValueError):
    """Raised by ``diameter`` on a disconnected graph; carries one separated pair."""

    def __init__(self, u: Point, v: Point):
        super().__init__(f"graph is disconnected: {list(v)} is unreachable from {list(u)}")
        self.u = u
        self.v = v


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    vertices: tuple[Point, ...] = ()
    indices: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "message": self.message,
            "vertices": [list(v) for v in self.vertices],
            "indices": list(self.indices),
        }


def l1(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(abs(a - b) for a, b in zip(u, v))


@dataclass(frozen=True)
class MeshSubgraph:
    """A vertex list of lattice points plus index-pair edges (i, j) with i < j.

    Instances are not validated on construction; ``validate`` reports problems.
    """

    dim: int
    vertices: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(tuple(int(c) for c in v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))

    @classmethod
    def from_point_edges(cls, dim: int, points: Iterable[Point], edges: Iterable[tuple[Point, Point]]) -> MeshSubgraph:
        """Build from coordinate pairs; vertices and edges come out lexicographically sorted."""
        verts = sorted(set(map(tuple, points)))
        index = {v: i for i, v in enumerate(verts)}
        pairs = set()
        for a, b in edges:
            i, j = index[tuple(a)], index[tuple(b)]
            pairs.add((i, j) if i < j else (j, i))
        return cls(dim, tuple(verts), tuple(sorted(pairs)))

    @classmethod
    def induced(cls, dim: int, points: Iterable[Point]) -> MeshSubgraph:
        """All mesh edges between the given points."""
        verts = sorted(set(map(tuple, points)))
        index = {v: i for i, v in enumerate(verts)}
        edges = []
        for i, v in enumerate(verts):
            for axis in range(dim):
                w = v[:axis] + (v[axis] + 1,) + v[axis + 1:]
                j = index.get(w)
                if j is not None:
                    edges.append((i, j))
        return cls(dim, tuple(verts), tuple(sorted(edges)))

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[Point, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[set[int]] = [set() for _ in self.vertices]
        n = len(adj)
        for i, j in self.edges:
            if 0 <= i < n and 0 <= j < n and i != j:
                adj[i].add(j)
                adj[j].add(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def degree_sequence(self) -> list[int]:
        return sorted(self.degrees(), reverse=True)

    def csr(self) -> tuple[list[int], list[int]]:
        indptr = [0]
        indices: list[int] = []
        for nbrs in self.adjacency:
            indices.extend(nbrs)
            indptr.append(len(indices))
        return indptr, indices

    def point_edges(self) -> list[tuple[Point, Point]]:
        return [(self.vertices[i], self.vertices[j]) for i, j in self.edges]

    def average_degree(self) -> float:
        if not self.vertices:
            raise EmptyGraphError("average degree of an empty graph")
        return 2 * self.size / self.order

    def to_dict(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices], "edges": [list(e) for e in self.edges]}


def _require_nonempty(g: MeshSubgraph) -> None:
    if g.order == 0:
        raise EmptyGraphError("operation undefined on the empty graph")


def max_degree(g: MeshSubgraph) -> int:
    _require_nonempty(g)
    return max(g.degrees())


def is_connected(g: MeshSubgraph) -> bool:
    if g.order == 0:
        return False
    adj = g.adjacency
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.order


def diameter_with_pair(g: MeshSubgraph) -> tuple[int, Point, Point]:
    """Exact diameter by BFS from every vertex, with one pair realising it."""
    _require_nonempty(g)
    indptr, indices = g.csr()
    d, u, v = kernels.all_pairs_diameter(g.order, indptr, indices)
    if d < 0:
        raise DisconnectedGraphError(g.vertices[u], g.vertices[v])
    return d, g.vertices[u], g.vertices[v]


def diameter(g: MeshSubgraph) -> int:
    return diameter_with_pair(g)[0]


def validate(g: MeshSubgraph) -> list[Violation]:
    """Every broken MeshSubgraph invariant, one entry per offence."""
    out: list[Violation] = []
    if g.dim < 1:
        out.append(Violation("dimension", f"dimension must be positive, got {g.dim}"))
    for i, v in enumerate(g.vertices):
        if len(v) != g.dim:
            out.append(Violation("dimension", f"vertex {list(v)} has {len(v)} coordinates, expected {g.dim}", (v,), (i,)))
    seen: dict[Point, int] = {}
    for i, v in enumerate(g.vertices):
        if v in seen:
            out.append(Violation("duplicate-vertex", f"duplicate vertex {list(v)} at indices {seen[v]} and {i}", (v,), (seen[v], i)))
        else:
            seen[v] = i
    n = g.order
    edge_seen: set[tuple[int, int]] = set()
    for i, j in g.edges:
        if not (0 <= i < n and 0 <= j < n):
            out.append(Violation("index-range", f"edge [{i}, {j}] has an index outside 0..{n - 1}", (), (i, j)))
            continue
        u, v = g.vertices[i], g.vertices[j]
        if i == j:
            out.append(Violation("self-loop", f"self-loop at {list(u)}", (u,), (i, j)))
            continue
        if i > j:
            out.append(Violation("edge-order", f"edge [{i}, {j}] is not written with i < j", (u, v), (i, j)))
        key = (min(i, j), max(i, j))
        if key in edge_seen:
            out.append(Violation("duplicate-edge", f"duplicate edge {list(u)} - {list(v)}", (u, v), (i, j)))
        edge_seen.add(key)
        if len(u) == len(v):
            dist = l1(u, v)
            if dist != 1:
                out.append(Violation("distance", f"L1 distance {dist} ≠ 1 between {list(u)} and {list(v)}", (u, v), (i, j)))
    return out


def normalize(g: MeshSubgraph) -> MeshSubgraph:
    """Translate the lexicographically smallest vertex to the origin and sort."""
    if g.order == 0:
        return g
    base = min(g.vertices)
    shifted = [tuple(c - b for c, b in zip(v, base)) for v in g.vertices]
    return MeshSubgraph.from_point_edges(g.dim, shifted, ((shifted[i], shifted[j]) for i, j in g.edges))


def transform(g: MeshSubgraph, perm: Sequence[int], signs: Sequence[int]) -> MeshSubgraph:
    """Apply a signed coordinate permutation: new[a] = signs[a] * old[perm[a]]."""
    def f(v: Point) -> Point:
        return tuple(s * v[p] for p, s in zip(perm, signs))

    pts = [f(v) for v in g.vertices]
    return MeshSubgraph.from_point_edges(g.dim, pts, ((pts[i], pts[j]) for i, j in g.edges))


def signed_permutations(dim: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The 2^k k! symmetries of Z^k fixing the origin, identity first."""
    out = []
    for perm in itertools.permutations(range(dim)):
        for signs in itertools.product((1, -1), repeat=dim):
            out.append((perm, signs))
    return out


def to_dot(g: MeshSubgraph, name: str = "mesh") -> str:
    """Graphviz view; coordinates become labels and 2D layouts are pinned."""
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=8];"]
    for i, v in enumerate(g.vertices):
        label = ",".join(map(str, v))
        pos = f', pos="{v[0]},{v[1]}!"' if g.dim == 2 else ""
        lines.append(f'  n{i} [label="{label}"{pos}];')
    for i, j in g.edges:
        lines.append(f"  n{i} -- n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def canonical_points(points: Iterable[Point], dim: int) -> tuple[Point, ...]:
    """Smallest normalized image of a point set under the signed permutations of Z^dim.

    Two vertex sets share a canonical form iff one is a lattice symmetry of the other.
    """
    pts = [tuple(v) for v in points]
    if not pts:
        return ()
    best = None
    for perm, signs in signed_permutations(dim):
        img = [tuple(s * v[p] for p, s in zip(perm, signs)) for v in pts]
        base = min(img)
        form = tuple(sorted(tuple(c - b for c, b in zip(v, base)) for v in img))
        if best is None or form < best:
            best = form
    return best
