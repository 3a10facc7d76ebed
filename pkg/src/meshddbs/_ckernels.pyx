# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: all-source BFS diameter and the edge-deletion search.

Semantics and visiting order match ``meshddbs._pykernels`` exactly.
``subgraph_search`` runs on 64-bit adjacency bitsets and delegates graphs
with more than 64 vertices to the pure-Python version.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free

from meshddbs import _pykernels

cdef enum:
    MAXV = 64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def all_pairs_diameter(int n, indptr, indices):
    cdef int m = len(indices)
    cdef int *ptr = <int *> calloc(n + 1, sizeof(int))
    cdef int *idx = <int *> calloc(m + 1, sizeof(int))
    cdef int *dist = <int *> calloc(n + 1, sizeof(int))
    cdef int *queue = <int *> calloc(n + 1, sizeof(int))
    cdef int i, j, src, u, w, du, head, tail, last
    cdef int best_d = 0, best_u = 0, best_v = 0
    cdef int bad_src = -1, bad_v = -1
    if ptr == NULL or idx == NULL or dist == NULL or queue == NULL:
        free(ptr); free(idx); free(dist); free(queue)
        raise MemoryError()
    for i in range(n + 1):
        ptr[i] = indptr[i]
    for i in range(m):
        idx[i] = indices[i]
    with nogil:
        for src in range(n):
            for i in range(n):
                dist[i] = -1
            dist[src] = 0
            queue[0] = src
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u] + 1
                for j in range(ptr[u], ptr[u + 1]):
                    w = idx[j]
                    if dist[w] < 0:
                        dist[w] = du
                        queue[tail] = w
                        tail += 1
            if tail < n:
                bad_src = src
                for i in range(n):
                    if dist[i] < 0:
                        bad_v = i
                        break
                break
            last = queue[tail - 1]
            if dist[last] > best_d:
                best_d = dist[last]
                best_u = src
                best_v = last
    free(ptr); free(idx); free(dist); free(queue)
    if bad_src >= 0:
        return (-1, bad_src, bad_v)
    return (best_d, best_u, best_v)


cdef struct Search:
    int n
    int m
    int max_degree
    int bound
    long long cap
    long long nodes
    int aborted
    uint64_t full
    uint64_t nbr[MAXV]
    int deg[MAXV]
    int *eu
    int *ev
    char *alive
    char *kept
    int *inc_ptr
    int *inc
    int *scratch


cdef bint _within_bound(Search *s) noexcept nogil:
    cdef int src, d, b
    cdef uint64_t reached, frontier, nxt, f
    for src in range(s.n):
        reached = (<uint64_t> 1) << src
        frontier = reached
        for d in range(s.bound):
            nxt = 0
            f = frontier
            while f:
                b = __builtin_ctzll(f)
                f &= f - 1
                nxt |= s.nbr[b]
            nxt &= ~reached
            if nxt == 0:
                break
            reached |= nxt
            frontier = nxt
        if reached != s.full:
            return False
    return True


cdef inline void _delete(Search *s, int e) noexcept nogil:
    cdef int u = s.eu[e]
    cdef int v = s.ev[e]
    s.alive[e] = 0
    s.nbr[u] &= ~((<uint64_t> 1) << v)
    s.nbr[v] &= ~((<uint64_t> 1) << u)
    s.deg[u] -= 1
    s.deg[v] -= 1


cdef inline void _restore(Search *s, int e) noexcept nogil:
    cdef int u = s.eu[e]
    cdef int v = s.ev[e]
    s.alive[e] = 1
    s.nbr[u] |= (<uint64_t> 1) << v
    s.nbr[v] |= (<uint64_t> 1) << u
    s.deg[u] += 1
    s.deg[v] += 1


cdef bint _rec(Search *s, int depth) noexcept nogil:
    cdef int v = -1, w, j, e, i, need, ncand
    cdef int *cands
    cdef bint found = False
    s.nodes += 1
    if s.nodes > s.cap:
        s.aborted = 1
        return False
    if not _within_bound(s):
        return False
    for w in range(s.n):
        if s.deg[w] > s.max_degree:
            v = w
            break
    if v < 0:
        return True
    need = s.deg[v] - s.max_degree
    # each recursion level owns a window of 8 slots (mesh degree <= 2k <= 8 here)
    cands = s.scratch + depth * 8
    ncand = 0
    for j in range(s.inc_ptr[v], s.inc_ptr[v + 1]):
        e = s.inc[j]
        if s.alive[e] and not s.kept[e]:
            cands[ncand] = e
            ncand += 1
    if ncand < need:
        return False
    i = 0
    while i < ncand:
        if ncand - i < need:
            break
        e = cands[i]
        _delete(s, e)
        if _rec(s, depth + 1):
            found = True
            break
        if s.aborted:
            return False
        _restore(s, e)
        s.kept[e] = 1
        i += 1
    for j in range(i):
        s.kept[cands[j]] = 0
    return found


def subgraph_search(int n, eu, ev, int max_degree, int diameter_bound, long long node_cap):
    cdef int m = len(eu)
    cdef int i, u, v
    cdef int maxdeg = 0
    cdef Search *s
    cdef bint ok
    if n > MAXV:
        return _pykernels.subgraph_search(n, eu, ev, max_degree, diameter_bound, node_cap)
    s = <Search *> calloc(1, sizeof(Search))
    if s == NULL:
        raise MemoryError()
    s.n = n
    s.m = m
    s.max_degree = max_degree
    s.bound = diameter_bound
    s.cap = node_cap
    s.full = (~(<uint64_t> 0)) if n == 64 else (((<uint64_t> 1) << n) - 1)
    s.eu = <int *> calloc(m + 1, sizeof(int))
    s.ev = <int *> calloc(m + 1, sizeof(int))
    s.alive = <char *> calloc(m + 1, sizeof(char))
    s.kept = <char *> calloc(m + 1, sizeof(char))
    s.inc_ptr = <int *> calloc(n + 1, sizeof(int))
    s.inc = <int *> calloc(2 * m + 1, sizeof(int))
    s.scratch = <int *> calloc(8 * (m + 2) + n + 1, sizeof(int))
    try:
        if (s.eu == NULL or s.ev == NULL or s.alive == NULL or s.kept == NULL
                or s.inc_ptr == NULL or s.inc == NULL or s.scratch == NULL):
            raise MemoryError()
        for i in range(m):
            u = eu[i]
            v = ev[i]
            s.eu[i] = u
            s.ev[i] = v
            s.alive[i] = 1
            s.nbr[u] |= (<uint64_t> 1) << v
            s.nbr[v] |= (<uint64_t> 1) << u
            s.deg[u] += 1
            s.deg[v] += 1
        for i in range(n):
            if s.deg[i] > maxdeg:
                maxdeg = s.deg[i]
            s.inc_ptr[i + 1] = s.inc_ptr[i] + s.deg[i]
        if maxdeg > 8:
            return _pykernels.subgraph_search(n, eu, ev, max_degree, diameter_bound, node_cap)
        # incidence lists in edge order, as in the Python version
        for i in range(n):
            s.scratch[i] = s.inc_ptr[i]
        for i in range(m):
            u = s.eu[i]
            v = s.ev[i]
            s.inc[s.scratch[u]] = i
            s.scratch[u] += 1
            s.inc[s.scratch[v]] = i
            s.scratch[v] += 1
        with nogil:
            ok = _rec(s, 0)
        alive = [bool(s.alive[i]) for i in range(m)]
        if s.aborted:
            return (_pykernels.ABORTED, s.nodes, alive)
        return ((_pykernels.FEASIBLE if ok else _pykernels.INFEASIBLE), s.nodes, alive)
    finally:
        free(s.eu); free(s.ev); free(s.alive); free(s.kept)
        free(s.inc_ptr); free(s.inc); free(s.scratch)
        free(s)
