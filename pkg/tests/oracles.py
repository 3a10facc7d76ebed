"""Frozen expected values and implementation-independent oracles.

Nothing here imports from meshddbs: the oracles count points by scanning
bounding boxes with doubled coordinates, and measure graphs with networkx.
"""

from __future__ import annotations

import itertools

import networkx as nx

# |B_k(p)| for k = 0..4 (rows) and p = 0..8 (columns)
EVEN_TABLE = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 3, 5, 7, 9, 11, 13, 15, 17],
    [1, 5, 13, 25, 41, 61, 85, 113, 145],
    [1, 7, 25, 63, 129, 231, 377, 575, 833],
    [1, 9, 41, 129, 321, 681, 1289, 2241, 3649],
]
ODD_TABLE = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [2, 4, 6, 8, 10, 12, 14, 16, 18],
    [2, 8, 18, 32, 50, 72, 98, 128, 162],
    [2, 12, 38, 88, 170, 292, 462, 688, 978],
    [2, 16, 66, 192, 450, 912, 1666, 2816, 4482],
]

# k = 2, max degree 3: diameter -> (largest known order, upper bound)
K2_DELTA3_LITERATURE = {
    2: (4, 4), 3: (6, 6), 4: (10, 10), 5: (14, 14), 6: (22, 22),
    7: (28, 32), 8: (37, 41), 9: (44, 50), 10: (52, 61), 11: (68, 72),
    12: (77, 85), 13: (90, 98), 14: (104, 113), 15: (124, 128), 16: (135, 145),
}

# Closed-form orders of the four families, evaluated by hand for small p.
H3_ORDERS = {2: 19, 3: 53, 4: 115, 5: 213}
Q3_ORDERS = {2: 28, 3: 74, 4: 152}
DELTA3_EVEN_ORDERS = {3: 13, 4: 25, 5: 41}
DELTA3_ODD_ORDERS = {2: 10, 3: 24, 4: 36}


def brute_ball_count(k: int, p: int, odd: bool) -> int:
    """Lattice points x with sum |2x_i - c_i| <= 2p (+1 when odd), c = (1, 0, ...) when odd."""
    if k == 0:
        return 1
    limit = 2 * p + (1 if odd else 0)
    count = 0
    for x in itertools.product(range(-p - 1, p + 2), repeat=k):
        twice = abs(2 * x[0] - (1 if odd else 0)) + sum(2 * abs(c) for c in x[1:])
        if twice <= limit:
            count += 1
    return count


def delannoy(m: int, n: int) -> int:
    """Delannoy number by its own defining recurrence (lattice paths with diagonal steps)."""
    table = [[1] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            table[i][j] = table[i - 1][j] + table[i][j - 1] + table[i - 1][j - 1]
    return table[m][n]


def nx_graph(vertices, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(len(vertices)))
    g.add_edges_from(edges)
    return g


def nx_facts(vertices, edges) -> dict:
    """Connectivity, diameter, max degree and unit-edge check, independently of meshddbs."""
    g = nx_graph(vertices, edges)
    connected = nx.is_connected(g)
    return {
        "connected": connected,
        "diameter": nx.diameter(g) if connected else None,
        "max_degree": max((d for _, d in g.degree()), default=0),
        "unit_edges": all(sum(abs(a - b) for a, b in zip(vertices[i], vertices[j])) == 1 for i, j in edges),
    }
