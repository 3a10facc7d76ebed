"""Certification of mesh subgraphs against degree and diameter limits."""

from __future__ import annotations

from dataclasses import dataclass, field

from meshddbs.lattice_ball import BallSpec, ConstraintSpec, ball_size_closed, moore_bound
from meshddbs.mesh_graph import (
    DisconnectedGraphError,
    EmptyGraphError,
    MeshSubgraph,
    Violation,
    diameter_with_pair,
    validate,
)


class CorruptGraphError(ValueError):
    """The graph cannot be inspected at all (for instance an edge index out of range)."""


@dataclass(frozen=True)
class VerificationReport:
    connected: bool
    max_degree_observed: int
    diameter_observed: int | None
    order: int
    size: int
    mesh_valid: bool
    satisfies: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "satisfies": self.satisfies,
            "order": self.order,
            "size": self.size,
            "connected": self.connected,
            "mesh_valid": self.mesh_valid,
            "max_degree_observed": self.max_degree_observed,
            "diameter_observed": self.diameter_observed,
            "violations": [v.to_dict() for v in self.violations],
        }


def verify(g: MeshSubgraph, c: ConstraintSpec) -> VerificationReport:
    """Check mesh validity, connectivity, degree and diameter; infeasibility is reported, not raised."""
    if g.order == 0:
        raise EmptyGraphError("cannot verify the empty graph")
    problems = validate(g)
    if any(v.kind == "index-range" for v in problems):
        raise CorruptGraphError("; ".join(v.message for v in problems if v.kind == "index-range"))
    violations = list(problems)
    mesh_valid = not problems

    degrees = g.degrees()
    max_deg = max(degrees)
    if max_deg > c.max_degree:
        for v, d in zip(g.vertices, degrees):
            if d > c.max_degree:
                violations.append(Violation("degree", f"degree {d} > {c.max_degree} at {list(v)}", (v,)))

    try:
        diam, u, w = diameter_with_pair(g)
        connected = True
    except DisconnectedGraphError as exc:
        diam = None
        connected = False
        violations.append(Violation("disconnected", str(exc), (exc.u, exc.v)))
    if diam is not None and diam > c.diameter_bound:
        violations.append(
            Violation("diameter", f"diameter {diam} > {c.diameter_bound} between {list(u)} and {list(w)}", (u, w))
        )

    satisfies = connected and mesh_valid and max_deg <= c.max_degree and diam is not None and diam <= c.diameter_bound
    return VerificationReport(
        connected=connected,
        max_degree_observed=max_deg,
        diameter_observed=diam,
        order=g.order,
        size=g.size,
        mesh_valid=mesh_valid,
        satisfies=satisfies,
        violations=tuple(violations),
    )


def sandwich_bound(dim: int, c: ConstraintSpec) -> int:
    """min(Moore bound, size of the maximal ball of diameter D in Z^dim)."""
    return min(moore_bound(c.max_degree, c.diameter_bound), ball_size_closed(BallSpec.from_diameter(dim, c.diameter_bound)))


def check_sandwich(g: MeshSubgraph, c: ConstraintSpec, k_prime: int | None = None) -> bool:
    """True when the order does not exceed the Moore bound or the ball bound in dimension ``k_prime``."""
    k_prime = g.dim if k_prime is None else k_prime
    return g.order <= sandwich_bound(k_prime, c)
