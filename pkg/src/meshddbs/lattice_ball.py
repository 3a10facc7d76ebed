"""Lattice points in maximal L1 balls of Z^k.

A maximal ball of diameter D is centred on a lattice point when D = 2p is
even, and on the midpoint of a unit edge when D = 2p + 1 is odd. The odd
centre is offset along the first coordinate axis, at (1/2, 0, ..., 0).
All counts are exact Python integers.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from meshddbs.mesh_graph import MeshSubgraph

DEFAULT_VERTEX_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    """A request would materialise more points than the configured budget."""


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of_diameter(cls, diameter: int) -> Parity:
        return cls.EVEN if diameter % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class BallSpec:
    dimension: int
    radius: int
    parity: Parity = Parity.EVEN

    def __post_init__(self) -> None:
        if self.dimension < 0 or self.radius < 0:
            raise ValueError(f"dimension and radius must be >= 0, got k={self.dimension}, p={self.radius}")
        if not isinstance(self.parity, Parity):
            object.__setattr__(self, "parity", Parity(self.parity))

    @classmethod
    def from_diameter(cls, dimension: int, diameter: int) -> BallSpec:
        return cls(dimension, diameter // 2, Parity.of_diameter(diameter))

    def diameter(self) -> int:
        return 2 * self.radius + (1 if self.parity is Parity.ODD else 0)


@dataclass(frozen=True)
class ConstraintSpec:
    max_degree: int
    diameter_bound: int

    def __post_init__(self) -> None:
        if self.max_degree < 1:
            raise ValueError(f"max degree must be >= 1, got {self.max_degree}")
        if self.diameter_bound < 0:
            raise ValueError(f"diameter bound must be >= 0, got {self.diameter_bound}")

    def check_dimension(self, dimension: int) -> None:
        if self.max_degree > 2 * dimension:
            raise ValueError(
                f"max degree {self.max_degree} exceeds 2k = {2 * dimension} for the {dimension}-dimensional mesh"
            )


def ball_size_closed(spec: BallSpec) -> int:
    """|B_k(p)| from the binomial sum sum_i C(k,i) C(k+p-i, p-i) (doubled, with k-1, when odd)."""
    k, p = spec.dimension, spec.radius
    if k == 0:
        return 1
    if spec.parity is Parity.EVEN:
        return sum(math.comb(k, i) * math.comb(k + p - i, p - i) for i in range(p + 1))
    return 2 * sum(math.comb(k - 1, i) * math.comb(k + p - i, p - i) for i in range(p + 1))


def ball_size_closed_alt(spec: BallSpec) -> int:
    """The second, index-reversed form of the same sum: sum_i C(k, p-i) C(k+i, i)."""
    k, p = spec.dimension, spec.radius
    if k == 0:
        return 1
    if spec.parity is Parity.EVEN:
        return sum(math.comb(k, p - i) * math.comb(k + i, i) for i in range(p + 1))
    return 2 * sum(math.comb(k - 1, p - i) * math.comb(k + i, i) for i in range(p + 1))


ball_size = ball_size_closed


def ball_size_recurrence(spec: BallSpec) -> int:
    """Pascal-like table f(k,p) = f(k,p-1) + f(k-1,p) + f(k-1,p-1).

    Boundaries: f(0,p) = 1, f(k,0) = 1 or 2, f(1,p) = 2p+1 or 2(p+1).
    The table is local to the call.
    """
    k, p = spec.dimension, spec.radius
    odd = spec.parity is Parity.ODD
    if k == 0:
        return 1
    # row j holds f(j, 0..p)
    prev = [1] * (p + 1)
    row = [2 * q + 2 if odd else 2 * q + 1 for q in range(p + 1)]
    for _ in range(2, k + 1):
        prev, row = row, [2 if odd else 1] + [0] * p
        for q in range(1, p + 1):
            row[q] = row[q - 1] + prev[q] + prev[q - 1]
    return row[p]


def generating_series(k: int, parity: Parity, max_p: int) -> list[int]:
    """Coefficients c_0..c_max_p of (1+z)^k / (1-z)^(k+1), or 2 (1+z)^(k-1) / (1-z)^(k+1) when odd."""
    if k < 0 or max_p < 0:
        raise ValueError("k and max_p must be >= 0")
    parity = Parity(parity)
    if k == 0:
        return [1] * (max_p + 1)
    if parity is Parity.EVEN:
        poly = [math.comb(k, i) for i in range(k + 1)]
    else:
        poly = [2 * math.comb(k - 1, i) for i in range(k)]
    tail = [math.comb(k + q, q) for q in range(max_p + 1)]
    return [sum(poly[i] * tail[q - i] for i in range(min(q, len(poly) - 1) + 1)) for q in range(max_p + 1)]


def _l1_points(dim: int, radius: int) -> Iterator[tuple[int, ...]]:
    if dim == 0:
        yield ()
        return
    for x in range(-radius, radius + 1):
        for rest in _l1_points(dim - 1, radius - abs(x)):
            yield (x, *rest)


def ball_points(spec: BallSpec) -> Iterator[tuple[int, ...]]:
    """Lattice points of the maximal ball, in lexicographic order."""
    k, p = spec.dimension, spec.radius
    if spec.parity is Parity.EVEN:
        yield from _l1_points(k, p)
        return
    # |x1 - 1/2| + |rest| <= p + 1/2
    for x1 in range(-p, p + 2):
        budget = p + 1 - x1 if x1 >= 1 else p + x1
        for rest in _l1_points(k - 1, budget):
            yield (x1, *rest)


def enumerate_ball(spec: BallSpec, budget: int = DEFAULT_VERTEX_BUDGET) -> MeshSubgraph:
    """The induced mesh subgraph on every lattice point of the maximal ball."""
    from meshddbs.mesh_graph import MeshSubgraph

    if spec.dimension < 1:
        raise ValueError("enumerate_ball needs dimension >= 1")
    size = ball_size_closed(spec)
    if size > budget:
        raise BudgetExceededError(f"ball k={spec.dimension}, p={spec.radius} has {size} points, budget is {budget}")
    return MeshSubgraph.induced(spec.dimension, ball_points(spec))


def asymptotic_estimate(k: int, p: int) -> float:
    """Leading term (2p)^k / k! of the ball size."""
    if k < 0 or p < 1:
        raise ValueError("need k >= 0 and p >= 1")
    return (2 * p) ** k / math.factorial(k)


def moore_bound(max_degree: int, diameter: int) -> int:
    """1 + Delta * sum_{i<D} (Delta-1)^i."""
    if max_degree < 1 or diameter < 0:
        raise ValueError("need max_degree >= 1 and diameter >= 0")
    return 1 + max_degree * sum((max_degree - 1) ** i for i in range(diameter))


def bound_chain(k: int, k_prime: int, radius: int, parity: Parity = Parity.EVEN) -> tuple[int, int]:
    """(|B_k(p)|, |B_k'(p)|): the lower and upper ends of the dimension sandwich for N_k'(2k, p)."""
    if not 1 <= k < k_prime:
        raise ValueError(f"need 1 <= k < k', got k={k}, k'={k_prime}")
    return (
        ball_size_closed(BallSpec(k, radius, parity)),
        ball_size_closed(BallSpec(k_prime, radius, parity)),
    )


def size_table(max_dim: int, max_radius: int, parity: Parity) -> list[list[int]]:
    """Rows k = 0..max_dim of |B_k(p)| for p = 0..max_radius."""
    return [generating_series(k, parity, max_radius) for k in range(max_dim + 1)]


def bounding_box_points(spec: BallSpec) -> list[tuple[int, ...]]:
    """Brute-force scan of the ball's bounding box; an oracle independent of ``ball_points``."""
    k, p = spec.dimension, spec.radius
    twice_r = spec.diameter()
    offset = 1 if spec.parity is Parity.ODD else 0
    out = []
    for x in itertools.product(range(-p - 1, p + 2), repeat=k):
        twice = abs(2 * x[0] - offset) + sum(abs(2 * c) for c in x[1:]) if k else 0
        if twice <= twice_r:
            out.append(x)
    return out
