import heapq
import numpy as np
from graphbench.errors import DomainError
from graphbench.bfs import _index_array, _check_root

__all__ = ['SsspResult', 'sssp_dijkstra', 'relax', 'SSSP_METHODS']

SSSP_METHODS = ('heap', 'linear')

INF = float('inf')


class SsspResult(object):
    """ Distance and predecessor arrays of a single-source shortest path search

    Parameters
    ----------
    source: int
        start vertex
    dist: array_like of float
        total weight of a shortest path from `source`, ``inf`` for unreachable vertices
    prev: array_like of int
        predecessor on that path, -1 for unreachable vertices and for the source
    """

    kind = 'sssp'

    def __init__(self, source, dist, prev):
        self.source = int(source)
        self.dist = np.asarray(dist, dtype=np.float64)
        self.prev = _index_array('prev', prev)

    # Shared name with BfsResult.root for code handling both kinds
    @property
    def root(self):
        return self.source

    @property
    def num_vertices(self):
        return len(self.dist)

    @property
    def reached(self):
        return np.isfinite(self.dist)

    @property
    def num_reached(self):
        return int(np.count_nonzero(self.reached))

    def __str__(self):
        return self.__class__.__name__ + f'{{source: {self.source}, reached: {self.num_reached}/{self.num_vertices}}}'


def relax(u, v, w, dist, prev):
    """ Relax the edge ``(u, v)`` of weight `w`

    Parameters
    ----------
    u, v: int
        endpoints, ``dist[u]`` must be finite
    w: float
        edge weight
    dist, prev: list or numpy.ndarray
        distance and predecessor arrays, updated in place

    Returns
    -------
    bool
        whether ``dist[v]`` decreased. A tie keeps the current predecessor.
    """
    alt = dist[u] + w
    if alt < dist[v]:
        dist[v] = alt
        prev[v] = u
        return True
    return False


def _check_weights(w, u):
    if len(w) > 0 and w.min() < 0.:
        raise DomainError(f'sssp_dijkstra(...) negative edge weight {w.min()!r} at vertex {u}')


def _dijkstra_heap(g, source):
    n = g.num_vertices
    dist = [INF] * n
    prev = [-1] * n
    settled = [False] * n
    dist[source] = 0.
    queue = [(0., source)]
    while queue:
        d, u = heapq.heappop(queue)
        # Stale entry of an already improved vertex
        if settled[u] or d > dist[u]:
            continue
        settled[u] = True
        w = g.neighbor_weights(u)
        _check_weights(w, u)
        for v, wv in zip(g.neighbor_ids(u).tolist(), w.tolist()):
            if relax(u, v, wv, dist, prev):
                heapq.heappush(queue, (dist[v], v))
    return dist, prev


def _dijkstra_linear(g, source):
    n = g.num_vertices
    dist = np.full(n, INF)
    prev = np.full(n, -1, dtype=np.int64)
    unsettled = np.ones(n, dtype=bool)
    dist[source] = 0.
    for _ in range(n):
        u = int(np.argmin(np.where(unsettled, dist, INF)))
        if not unsettled[u] or dist[u] == INF:
            break
        unsettled[u] = False
        w = g.neighbor_weights(u)
        _check_weights(w, u)
        for v, wv in zip(g.neighbor_ids(u).tolist(), w.tolist()):
            if unsettled[v]:
                relax(u, v, wv, dist, prev)
    return dist, prev


def sssp_dijkstra(g, source, method='heap'):
    """ Kernel 3: Dijkstra single-source shortest paths over non-negative weights

    Both methods settle vertices in the same order (smallest distance first, ties by
    smallest vertex id) and therefore return identical arrays:

    - ``'heap'``: binary heap with lazy deletion, popped entries whose key exceeds the
      current distance of their vertex are skipped.
    - ``'linear'``: the minimum unsettled vertex is found by a linear scan, O(N^2).

    Parameters
    ----------
    g: Graph
        the graph
    source: int
        start vertex
    method: {'heap', 'linear'}
        min-extraction strategy

    Raises
    ------
    VertexBoundsError
        if `source` is out of range
    DomainError
        if a negative weight is met, or for an unknown `method`

    Returns
    -------
    SsspResult
    """
    if method not in SSSP_METHODS:
        raise DomainError(f'sssp_dijkstra(...) unknown method {method!r}, expected one of {SSSP_METHODS}')
    source = _check_root(g, source, 'source')
    if method == 'heap':
        dist, prev = _dijkstra_heap(g, source)
    else:
        dist, prev = _dijkstra_linear(g, source)
    return SsspResult(source, dist, prev)
