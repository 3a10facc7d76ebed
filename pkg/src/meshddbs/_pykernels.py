"""Pure-Python reference kernels.

Both functions mirror ``_ckernels`` exactly, including the order in which the
edge-deletion search visits its nodes, so node counts agree across backends.
"""

from __future__ import annotations

from collections.abc import Sequence

FEASIBLE = 1
INFEASIBLE = 0
ABORTED = -1


def all_pairs_diameter(n: int, indptr: Sequence[int], indices: Sequence[int]) -> tuple[int, int, int]:
    """BFS from every vertex of a CSR graph.

    Returns ``(diameter, u, v)`` where ``u``-``v`` is the first pair found at
    maximum distance. If the graph is disconnected the result is ``(-1, u, v)``
    with ``v`` unreachable from ``u``.
    """
    best = (0, 0, 0)
    dist = [-1] * n
    queue = [0] * n
    for src in range(n):
        for i in range(n):
            dist[i] = -1
        dist[src] = 0
        queue[0] = src
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = du
                    queue[tail] = w
                    tail += 1
        if tail < n:
            for v in range(n):
                if dist[v] < 0:
                    return (-1, src, v)
        last = queue[tail - 1]
        if dist[last] > best[0]:
            best = (dist[last], src, last)
    return best


class _Abort(Exception):
    pass


def subgraph_search(
    n: int,
    eu: Sequence[int],
    ev: Sequence[int],
    max_degree: int,
    diameter_bound: int,
    node_cap: int,
) -> tuple[int, int, list[bool]]:
    """Decide whether some spanning edge subset has degree <= max_degree and diameter <= bound.

    Edges are only ever deleted, and deleting an edge never shortens a path, so
    every node first checks the diameter bound on the current edge set and
    prunes when it fails. Branching is on the first over-degree vertex: try
    deleting each of its undecided edges in turn, marking the earlier ones as
    kept, which enumerates each minimal deletion set once.

    Returns ``(status, nodes, alive)`` with status FEASIBLE, INFEASIBLE or
    ABORTED (node cap reached). ``alive`` is the surviving edge mask for a
    feasible answer.
    """
    m = len(eu)
    nbr = [0] * n
    deg = [0] * n
    inc: list[list[int]] = [[] for _ in range(n)]
    for e in range(m):
        u, v = eu[e], ev[e]
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
        deg[u] += 1
        deg[v] += 1
        inc[u].append(e)
        inc[v].append(e)
    alive = [True] * m
    kept = [False] * m
    full = (1 << n) - 1
    nodes = 0

    def within_bound() -> bool:
        for src in range(n):
            reached = frontier = 1 << src
            for _ in range(diameter_bound):
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= nbr[low.bit_length() - 1]
                    f ^= low
                nxt &= ~reached
                if not nxt:
                    break
                reached |= nxt
                frontier = nxt
            if reached != full:
                return False
        return True

    def delete(e: int) -> None:
        u, v = eu[e], ev[e]
        alive[e] = False
        nbr[u] &= ~(1 << v)
        nbr[v] &= ~(1 << u)
        deg[u] -= 1
        deg[v] -= 1

    def restore(e: int) -> None:
        u, v = eu[e], ev[e]
        alive[e] = True
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
        deg[u] += 1
        deg[v] += 1

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise _Abort
        if not within_bound():
            return False
        v = -1
        for w in range(n):
            if deg[w] > max_degree:
                v = w
                break
        if v < 0:
            return True
        need = deg[v] - max_degree
        cands = [e for e in inc[v] if alive[e] and not kept[e]]
        if len(cands) < need:
            return False
        marked = []
        found = False
        for i, e in enumerate(cands):
            if len(cands) - i < need:
                break
            delete(e)
            if rec():
                found = True
                break
            restore(e)
            kept[e] = True
            marked.append(e)
        for e in marked:
            kept[e] = False
        return found

    try:
        ok = rec()
    except _Abort:
        return ABORTED, nodes, list(alive)
    return (FEASIBLE if ok else INFEASIBLE), nodes, list(alive)
