"""Explicit lower-bound constructions in the 2D and 3D meshes.

Degree-4 families in Z^3 stack layers of a suppressed-spine planar ball:

* ``h3`` (D = 2p): layers E2(p - |z|) for |z| <= p.
* ``q3`` (D = 2p + 1): layers O2(p - |z|) for |z| <= p - 1.

Degree-3 families in Z^2 pack 2x2 square blocks along the axes and fill the
four triangular gaps with interwoven 2x1 bricks:

* ``delta3-even`` (D = 2p), order 2p^2 - 2p + 1.
* ``delta3-odd`` (D = 2p + 1) around a vertical spine of 2p + 2 vertices.

Every builder returns the graph together with its closed-form prediction.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from meshddbs.lattice_ball import BallSpec, Parity, ball_points
from meshddbs.mesh_graph import MeshSubgraph, Point

log = logging.getLogger(__name__)

Edge = tuple[Point, Point]


class ConstructionError(RuntimeError):
    """A packing step broke the degree cap or the distance layout."""


class Family(enum.Enum):
    H3 = "h3"
    Q3 = "q3"
    DELTA3_EVEN = "delta3-even"
    DELTA3_ODD = "delta3-odd"

    @property
    def min_p(self) -> int:
        return 3 if self is Family.DELTA3_EVEN else 2

    @property
    def dim(self) -> int:
        return 3 if self in (Family.H3, Family.Q3) else 2

    @property
    def max_degree(self) -> int:
        return 4 if self in (Family.H3, Family.Q3) else 3

    def diameter(self, p: int) -> int:
        return 2 * p if self in (Family.H3, Family.DELTA3_EVEN) else 2 * p + 1


@dataclass(frozen=True)
class ConstructionPrediction:
    family: Family
    p: int
    order: int
    diameter: int
    size_expected: int | None
    avg_degree_limit: Fraction
    size_advisory: bool = True

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "p": self.p,
            "order": self.order,
            "diameter": self.diameter,
            "size_expected": self.size_expected,
            "size_advisory": self.size_advisory,
            "avg_degree_limit": str(self.avg_degree_limit),
        }


def _check_p(family: Family, p: int) -> None:
    if not isinstance(p, int) or p < family.min_p:
        raise ValueError(f"{family.value} needs p >= {family.min_p}, got {p}")


def predict(family: Family | str, p: int) -> ConstructionPrediction:
    """Closed-form order and diameter; the edge count is the advisory corollary polynomial."""
    family = Family(family)
    _check_p(family, p)
    if family is Family.H3:
        order = Fraction(4 * p**3, 3) + 2 * p * p - Fraction(4 * p, 3) + 3
        size = Fraction(8 * p**3, 3) + Fraction(4 * p, 3) + 2
    elif family is Family.Q3:
        order = Fraction(4 * p**3 + 12 * p * p + 2 * p, 3)
        size = Fraction(8 * p**3, 3) + 4 * p * p - Fraction(2 * p, 3)
    elif family is Family.DELTA3_EVEN:
        order = Fraction(2 * p * p - 2 * p + 1)
        size = Fraction(3 * p * p - 6 * p + (6 if p % 2 == 0 else 4))
    else:
        order = Fraction(2 * p * p + p + (0 if p % 2 == 0 else 3))
        size = Fraction(3 * p * p - p + (-1 if p % 2 == 0 else 3))
    assert order.denominator == 1 and size.denominator == 1
    return ConstructionPrediction(
        family=family,
        p=p,
        order=int(order),
        diameter=family.diameter(p),
        size_expected=int(size),
        avg_degree_limit=Fraction(family.max_degree),
    )


# ---------------------------------------------------------------------------
# 3D layered families


def _suppress_spine(points: Iterable[tuple[int, int]], tips: set[tuple[int, int]]) -> MeshSubgraph:
    pts = [v for v in points if v not in tips]
    ball = MeshSubgraph.induced(2, pts)
    keep = [(u, v) for u, v in ball.point_edges() if not (u[0] == 0 and v[0] == 0)]
    return MeshSubgraph.from_point_edges(2, pts, keep)


def build_E2(p: int) -> MeshSubgraph:
    """Even planar ball B2(p) without its y-axis edges and without the tips (0, +-p).

    E2(0) is the single vertex at the origin.
    """
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    if p == 0:
        return MeshSubgraph(2, ((0, 0),), ())
    return _suppress_spine(ball_points(BallSpec(2, p)), {(0, p), (0, -p)})


def build_O2(p: int) -> MeshSubgraph:
    """Odd planar ball of radius p + 1/2 around (0, 1/2), spine edges and tips removed.

    The ball is taken with its centre on the y-axis so the spine is vertical,
    matching the layers of ``h3``.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    pts = [(y, x) for x, y in ball_points(BallSpec(2, p, Parity.ODD))]
    return _suppress_spine(pts, {(0, -p), (0, p + 1)})


def connectors(layer: MeshSubgraph) -> list[Point]:
    """The surviving spine vertices of a layer, which carry the vertical edges."""
    return [v for v in layer.vertices if v[0] == 0]


def _stack(layers: dict[int, MeshSubgraph]) -> tuple[set[Point], set[Edge]]:
    points: set[Point] = set()
    edges: set[Edge] = set()
    for z, layer in layers.items():
        points.update((x, y, z) for x, y in layer.vertices)
        edges.update(_key((u[0], u[1], z), (v[0], v[1], z)) for u, v in layer.point_edges())
        below = layers.get(z - 1)
        if below is not None:
            lower = set(connectors(below))
            edges.update(((0, y, z - 1), (0, y, z)) for _, y in connectors(layer) if (0, y) in lower)
    return points, edges


def _apex_layer(odd: bool) -> MeshSubgraph:
    """Radius-1 layer next to the poles: the whole spine is kept and one x-side is dropped instead."""
    if odd:
        return MeshSubgraph.induced(2, [(0, -1), (0, 0), (0, 1), (0, 2), (1, 0), (1, 1)])
    return MeshSubgraph.induced(2, [(0, -1), (0, 0), (0, 1)])


def _level_rows(j: int, odd: bool) -> tuple[int, int]:
    """The two spine rows at distance j from the centre row (or central pair of rows)."""
    return (j + 1, -j) if odd else (j, -j)


def _layered(p: int, odd: bool) -> MeshSubgraph:
    """Stack of suppressed-spine layers, with the equator and apex adjustments.

    Stacking alone leaves spine vertices unable to move along y, which costs
    two extra steps between some equatorial spine points and points near the
    poles. Three local changes restore diameter 2p (2p + 1 when odd) at the
    same order:

    * the radius-1 layers keep their spine as a path and drop x-side points;
    * on the equator (z = 0) each half of the spine becomes a path from
      level 1 to level p - 1; spine vertices at levels 2..p-2 give up both
      x-edges and level 1 gives up its +x edge;
    * beside level 1, at x = 1, a short vertical column over z = -1..1
      replaces the +x edges of those three vertices.
    """
    layer = build_O2 if odd else build_E2
    zs = range(-(p - 1), p) if odd else range(-p, p + 1)
    layers = {z: (_apex_layer(odd) if p - abs(z) == 1 else layer(p - abs(z))) for z in zs}
    points, edges = _stack(layers)

    if p >= 3:
        for side in (0, 1):
            for j in range(1, p - 1):
                edges.add(_key((0, _level_rows(j, odd)[side], 0), (0, _level_rows(j + 1, odd)[side], 0)))
            for j in range(2, p - 1):
                y = _level_rows(j, odd)[side]
                edges.discard(_key((-1, y, 0), (0, y, 0)))
                edges.discard(_key((0, y, 0), (1, y, 0)))
            y = _level_rows(1, odd)[side]
            edges.discard(_key((0, y, 0), (1, y, 0)))
            for z in (-1, 0, 1):
                edges.discard(_key((1, y, z), (2, y, z)))
            edges.add(_key((1, y, -1), (1, y, 0)))
            edges.add(_key((1, y, 0), (1, y, 1)))
    return MeshSubgraph.from_point_edges(3, points, edges)


def _log_size(g: MeshSubgraph, pred: ConstructionPrediction) -> None:
    if pred.size_expected is not None and g.size != pred.size_expected:
        log.info(
            "%s(p=%d): built graph has %d edges, advisory polynomial gives %d",
            pred.family.value, pred.p, g.size, pred.size_expected,
        )


def build_H3(p: int) -> tuple[MeshSubgraph, ConstructionPrediction]:
    """Max degree 4, diameter 2p in Z^3, from layers E2(p - |z|)."""
    pred = predict(Family.H3, p)
    g = _layered(p, odd=False)
    _log_size(g, pred)
    return g, pred


def build_Q3(p: int) -> tuple[MeshSubgraph, ConstructionPrediction]:
    """Max degree 4, diameter 2p + 1 in Z^3, from layers O2(p - |z|), |z| <= p - 1."""
    pred = predict(Family.Q3, p)
    g = _layered(p, odd=True)
    _log_size(g, pred)
    return g, pred


# ---------------------------------------------------------------------------
# Brick-filled triangles


class Orientation(enum.Enum):
    """Maps of canonical triangle coordinates (a, b) into the plane, relative to the corner.

    The canonical triangle has its corner at the origin, legs along +a and +b.
    """

    IDENTITY = "identity"              # (a, b)
    FLIP_X = "flip-x"                  # (-a, b)
    FLIP_Y = "flip-y"                  # (a, -b)
    ROT180 = "rot180"                  # (-a, -b)
    TRANSPOSE = "transpose"            # (b, a)
    ROT90 = "rot90"                    # (-b, a)
    ROT270 = "rot270"                  # (b, -a)
    ANTI_TRANSPOSE = "anti-transpose"  # (-b, -a)

    def apply(self, a: int, b: int) -> tuple[int, int]:
        return _ORIENT_MAPS[self](a, b)


_ORIENT_MAPS: dict[Orientation, Callable[[int, int], tuple[int, int]]] = {
    Orientation.IDENTITY: lambda a, b: (a, b),
    Orientation.FLIP_X: lambda a, b: (-a, b),
    Orientation.FLIP_Y: lambda a, b: (a, -b),
    Orientation.ROT180: lambda a, b: (-a, -b),
    Orientation.TRANSPOSE: lambda a, b: (b, a),
    Orientation.ROT90: lambda a, b: (-b, a),
    Orientation.ROT270: lambda a, b: (b, -a),
    Orientation.ANTI_TRANSPOSE: lambda a, b: (-b, -a),
}


def _rect_cycle(x0: int, y0: int, w: int, h: int) -> list[Edge]:
    """Boundary cycle of the w x h lattice rectangle with lower-left corner (x0, y0)."""
    ring = [(x, y0) for x in range(x0, x0 + w)]
    ring += [(x0 + w, y) for y in range(y0, y0 + h)]
    ring += [(x, y0 + h) for x in range(x0 + w, x0, -1)]
    ring += [(x0, y) for y in range(y0 + h, y0, -1)]
    return [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]


def _key(u: Point, v: Point) -> Edge:
    return (u, v) if u <= v else (v, u)


def interior_count(side: int) -> int:
    """Points a fill adds strictly inside the triangle (off both legs)."""
    m = side // 2
    return 2 * m * m - (2 * m if side % 2 == 0 else 0)


def _leg_degrees(side: int) -> dict[Point, int]:
    # corner degree 3; horizontal leg free at even a >= 2; vertical leg free at odd b
    deg = {(0, 0): 3}
    for a in range(1, side + 1):
        deg[(a, 0)] = 2 if a % 2 == 0 else 3
    for b in range(1, side):
        deg[(0, b)] = 2 if b % 2 == 1 else 3
    return deg


def _bfs_from_corner(adj: dict[Point, set[Point]]) -> dict[Point, int]:
    dist = {(0, 0): 0}
    queue = deque([(0, 0)])
    while queue:
        u = queue.popleft()
        for w in adj.get(u, ()):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@lru_cache(maxsize=None)
def canonical_bricks(side: int) -> tuple[tuple[int, int, int, int], ...]:
    """Brick rectangles (a0, b0, w, h) of the canonical fill of a side-``side`` triangle.

    Cells (a, b) with a + b <= side - 2 are filled in chevron waves: wave j
    lays horizontal bricks down the diagonal from (2j, 0), then vertical
    bricks up from (j, j + 1). Every placement is checked against the leg
    degree profile and must keep each new vertex at graph distance a + b
    from the corner; a failure raises ``ConstructionError``.
    """
    if side < 0:
        raise ValueError(f"side must be >= 0, got {side}")
    cells = {(a, b) for a in range(side) for b in range(side) if a + b <= side - 2}
    deg = _leg_degrees(side)
    adj: dict[Point, set[Point]] = {}
    for a in range(side):
        adj.setdefault((a, 0), set()).add((a + 1, 0))
        adj.setdefault((a + 1, 0), set()).add((a, 0))
    for b in range(side - 1):
        adj.setdefault((0, b), set()).add((0, b + 1))
        adj.setdefault((0, b + 1), set()).add((0, b))
    bricks = []
    for j in range(side):
        wave = [(2 * j - i, i, 2, 1) for i in range(j + 1)]
        wave += [(j - i, j + 1 + i, 1, 2) for i in range(j + 1)]
        for a0, b0, w, h in wave:
            covers = {(a0, b0), (a0 + w - 1, b0 + h - 1)}
            if not covers <= cells:
                continue
            for u, v in _rect_cycle(a0, b0, w, h):
                if v in adj.get(u, ()):
                    continue
                adj.setdefault(u, set()).add(v)
                adj.setdefault(v, set()).add(u)
                for x in (u, v):
                    deg[x] = deg.get(x, 0) + 1
                    if deg[x] > 3:
                        raise ConstructionError(f"brick {(a0, b0, w, h)} gives {x} degree {deg[x]}")
            dist = _bfs_from_corner(adj)
            for u, _ in _rect_cycle(a0, b0, w, h):
                if dist.get(u) != u[0] + u[1]:
                    raise ConstructionError(f"brick {(a0, b0, w, h)} puts {u} off its shortest distance")
            bricks.append((a0, b0, w, h))
    return tuple(bricks)


@dataclass(frozen=True)
class TriangleFill:
    corner: Point
    side: int
    orientation: Orientation
    bricks: tuple[tuple[int, int, int, int], ...]
    points: tuple[Point, ...]
    edges: tuple[Edge, ...]
    interior: tuple[Point, ...]

    def subgraph(self) -> MeshSubgraph:
        return MeshSubgraph.from_point_edges(2, self.points, self.edges)


def fill_triangle(corner: Point, side: int, orientation: Orientation | str = Orientation.IDENTITY) -> TriangleFill:
    """The brick tiling of a triangle with legs of ``side`` units, placed at ``corner``.

    Returned points and edges are those of the bricks only; the legs
    themselves belong to the surrounding axis structure.
    """
    orientation = Orientation(orientation)
    cx, cy = corner

    def place(a: int, b: int) -> Point:
        dx, dy = orientation.apply(a, b)
        return (cx + dx, cy + dy)

    bricks = canonical_bricks(side)
    edges = set()
    points = set()
    interior = set()
    for brick in bricks:
        for u, v in _rect_cycle(*brick):
            pu, pv = place(*u), place(*v)
            edges.add(_key(pu, pv))
            for c, pc in ((u, pu), (v, pv)):
                points.add(pc)
                if c[0] >= 1 and c[1] >= 1:
                    interior.add(pc)
    return TriangleFill(
        corner=(cx, cy),
        side=side,
        orientation=orientation,
        bricks=bricks,
        points=tuple(sorted(points)),
        edges=tuple(sorted(edges)),
        interior=tuple(sorted(interior)),
    )


# ---------------------------------------------------------------------------
# Degree-3 planar families


class _Packing:
    """Planar edge set that refuses any vertex of degree above 3."""

    def __init__(self) -> None:
        self.edges: set[Edge] = set()
        self.points: set[Point] = set()
        self.deg: dict[Point, int] = {}

    def add_point(self, v: Point) -> None:
        self.points.add(v)

    def add_edges(self, edges: Iterable[Edge], what: str) -> None:
        for u, v in edges:
            key = _key(u, v)
            self.points.update(key)
            if key in self.edges:
                continue
            self.edges.add(key)
            for x in key:
                self.deg[x] = self.deg.get(x, 0) + 1
                if self.deg[x] > 3:
                    raise ConstructionError(f"{what}: vertex {x} reaches degree {self.deg[x]}")

    def add_rect(self, x0: int, y0: int, w: int, h: int) -> None:
        self.add_edges(_rect_cycle(x0, y0, w, h), f"rectangle {(x0, y0, w, h)}")

    def add_path(self, points: list[Point]) -> None:
        self.points.update(points)
        self.add_edges(zip(points, points[1:]), "path")

    def add_triangle(self, corner: Point, side: int, orientation: Orientation) -> None:
        fill = fill_triangle(corner, side, orientation)
        self.add_edges(fill.edges, f"triangle at {corner}")

    def graph(self) -> MeshSubgraph:
        return MeshSubgraph.from_point_edges(2, self.points, self.edges)


def build_delta3_even(p: int) -> tuple[MeshSubgraph, ConstructionPrediction]:
    """Max degree 3, diameter 2p, order 2p^2 - 2p + 1 (p >= 3)."""
    pred = predict(Family.DELTA3_EVEN, p)
    pk = _Packing()
    nb_h = (p - 1) // 2
    for j in range(nb_h):
        pk.add_rect(2 * j, -1, 2, 2)
        pk.add_rect(-2 * j - 2, -1, 2, 2)
    if p % 2 == 0:
        pk.add_rect(2 * nb_h, -1, 1, 2)
        pk.add_rect(-2 * nb_h - 1, -1, 1, 2)
    nb_v = (p - 3) // 2
    for j in range(nb_v):
        pk.add_rect(-1, 1 + 2 * j, 2, 2)
        pk.add_rect(-1, -3 - 2 * j, 2, 2)
    if p % 2 == 0:
        pk.add_rect(-1, 1 + 2 * nb_v, 2, 1)
        pk.add_rect(-1, -2 - 2 * nb_v, 2, 1)
    s = p - 2
    for corner, orientation in (
        ((1, 1), Orientation.IDENTITY),
        ((-1, 1), Orientation.FLIP_X),
        ((1, -1), Orientation.FLIP_Y),
        ((-1, -1), Orientation.ROT180),
    ):
        pk.add_triangle(corner, s, orientation)
    g = pk.graph()
    _log_size(g, pred)
    return g, pred


def build_delta3_odd(p: int) -> tuple[MeshSubgraph, ConstructionPrediction]:
    """Max degree 3, diameter 2p + 1 around the spine x = 0, -p <= y <= p + 1 (p >= 2)."""
    pred = predict(Family.DELTA3_ODD, p)
    pk = _Packing()
    pk.add_path([(0, y) for y in range(-p, p + 2)])
    pk.add_path([(x, 0) for x in range(0, p + 1)])
    pk.add_path([(x, 1) for x in range(-p, 1)])
    nb = (p - 1) // 2
    for j in range(nb):
        pk.add_rect(2 * j, 0, 2, 2)
        pk.add_rect(-2 * j - 2, -1, 2, 2)
    for corner, side, orientation in (
        ((0, 0), p, Orientation.ROT270),
        ((0, 1), p, Orientation.ROT90),
        ((0, 2), p - 1, Orientation.TRANSPOSE),
        ((0, -1), p - 1, Orientation.ANTI_TRANSPOSE),
    ):
        pk.add_triangle(corner, side, orientation)
    g = pk.graph()
    _log_size(g, pred)
    return g, pred


_BUILDERS = {
    Family.H3: build_H3,
    Family.Q3: build_Q3,
    Family.DELTA3_EVEN: build_delta3_even,
    Family.DELTA3_ODD: build_delta3_odd,
}


def build(family: Family | str, p: int) -> tuple[MeshSubgraph, ConstructionPrediction]:
    return _BUILDERS[Family(family)](p)


def family_for(dim: int, max_degree: int, diameter: int) -> Family | None:
    """The construction family matching an instance, when there is one."""
    p = diameter // 2
    even = diameter % 2 == 0
    if dim == 3 and max_degree == 4:
        family = Family.H3 if even else Family.Q3
    elif dim == 2 and max_degree == 3:
        family = Family.DELTA3_EVEN if even else Family.DELTA3_ODD
    else:
        return None
    return family if p >= family.min_p else None
