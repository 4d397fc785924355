import operator
import types
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from graphbench.errors import GraphValidationError, VertexBoundsError, DomainError, ConsistencyError

__all__ = ['Graph', 'CsrGraph', 'AdjMapGraph', 'CsrFragment', 'REPRESENTATIONS',
           'build', 'neighbors', 'parallel_partition_bounds', 'csr_fragment', 'merge_boundary_rows']

REPRESENTATIONS = ('adjmap', 'csr')

_EMPTY_IDS = np.empty(0, dtype=np.int64)
_EMPTY_IDS.flags.writeable = False
_EMPTY_WEIGHTS = np.empty(0, dtype=np.float64)
_EMPTY_WEIGHTS.flags.writeable = False


def _readonly(arr, dtype):
    arr = np.array(arr, dtype=dtype)
    arr.flags.writeable = False
    return arr


class Graph(object):
    """ Immutable undirected weighted graph

    Every undirected edge ``(u, v, w)`` with ``u != v`` is stored in both directions,
    a self-loop is stored once. Repeated edges are kept as repeated entries.
    Within a row the entries are sorted by (neighbor id, weight), identically for all
    representations, so neighbor enumeration is deterministic.

    The representations only differ in how the neighbors of a vertex are looked up,
    see `CsrGraph` and `AdjMapGraph`. No method modifies the graph once it is built.
    """

    representation = None

    def __init__(self, num_vertices, num_edges_input):
        self._num_vertices = int(num_vertices)
        self._num_edges_input = int(num_edges_input)

    @property
    def num_vertices(self):
        """ Number of vertices N """
        return self._num_vertices

    @property
    def num_edges_input(self):
        """ Number of undirected input edges M, before mirroring """
        return self._num_edges_input

    @property
    def num_entries(self):
        """ Total number of adjacency entries (mirrored edges) """
        return int(self.degrees().sum())

    def _check_vertex(self, u):
        try:
            v = operator.index(u)
        except TypeError:
            raise VertexBoundsError(self.__class__.__name__ + f' vertex {u!r} is not an integer vertex id') from None
        if not 0 <= v < self._num_vertices:
            raise VertexBoundsError(self.__class__.__name__ + f' vertex {u} outside [0, {self._num_vertices})')
        return v

    def _row(self, u):
        raise NotImplementedError

    def neighbor_ids(self, u):
        """ Read-only array of the neighbor ids of `u`, ascending """
        u = self._check_vertex(u)
        return self._row(u)[0]

    def neighbor_weights(self, u):
        """ Read-only array of the weights matching `neighbor_ids` """
        u = self._check_vertex(u)
        return self._row(u)[1]

    def neighbors(self, u):
        """ All adjacency entries of vertex `u`

        Parameters
        ----------
        u: int
            vertex id in ``[0, N)``

        Raises
        ------
        VertexBoundsError
            if `u` is out of range

        Returns
        -------
        list of (int, float)
            ``(neighbor, weight)`` pairs in ascending neighbor order, empty for isolated vertices
        """
        u = self._check_vertex(u)
        ids, w = self._row(u)
        return list(zip(ids.tolist(), w.tolist()))

    def degree(self, u):
        """ Number of adjacency entries of `u` """
        u = self._check_vertex(u)
        return len(self._row(u)[0])

    def degrees(self):
        """ Array of the number of adjacency entries of every vertex """
        raise NotImplementedError

    def gather(self, vertices):
        """ Collect the adjacency entries of many vertices at once

        Parameters
        ----------
        vertices: array_like of int
            vertex ids (assumed in range)

        Returns
        -------
        sources: numpy.ndarray
            the vertex each entry belongs to
        targets: numpy.ndarray
            the neighbor id of each entry
        """
        raise NotImplementedError

    def __str__(self):
        return self.__class__.__name__ + f'{{N: {self.num_vertices}, M: {self.num_edges_input}, ' \
            f'entries: {self.num_entries}}}'


class CsrGraph(Graph):
    """ Graph stored in compressed sparse row (CSR) format

    The neighbors of vertex ``u`` are ``col_indices[row_offsets[u]:row_offsets[u+1]]``.
    An empty row repeats the previous offset, and ``row_offsets[N]`` is stored explicitly
    so trailing empty rows remain representable.

    Parameters
    ----------
    num_vertices: int
        number of vertices N
    row_offsets: array_like of int
        N+1 non-decreasing offsets starting at 0
    col_indices: array_like of int
        neighbor ids, ascending within each row
    edge_weights: array_like of float
        weight of each entry of `col_indices`
    num_edges_input: int, optional
        number of undirected input edges before mirroring
    """

    representation = 'csr'

    def __init__(self, num_vertices, row_offsets, col_indices, edge_weights, num_edges_input=0):
        super().__init__(num_vertices, num_edges_input)
        self._row_offsets = _readonly(row_offsets, np.int64)
        self._col_indices = _readonly(col_indices, np.int64)
        self._edge_weights = _readonly(edge_weights, np.float64)

        ro = self._row_offsets
        if len(ro) != self.num_vertices + 1:
            raise GraphValidationError(self.__class__.__name__ + f' requires {self.num_vertices + 1} row offsets, got {len(ro)}')
        if ro[0] != 0 or ro[-1] != len(self._col_indices) or np.any(np.diff(ro) < 0):
            raise GraphValidationError(self.__class__.__name__ + ' row offsets must be non-decreasing from 0 to len(col_indices)')
        if len(self._edge_weights) != len(self._col_indices):
            raise GraphValidationError(self.__class__.__name__ + ' requires one weight per column index')

    @property
    def row_offsets(self):
        return self._row_offsets

    @property
    def col_indices(self):
        return self._col_indices

    @property
    def edge_weights(self):
        return self._edge_weights

    def _row(self, u):
        lo, hi = self._row_offsets[u], self._row_offsets[u + 1]
        return self._col_indices[lo:hi], self._edge_weights[lo:hi]

    def degrees(self):
        return np.diff(self._row_offsets)

    def gather(self, vertices):
        vs = np.asarray(vertices, dtype=np.int64)
        starts = self._row_offsets[vs]
        counts = self._row_offsets[vs + 1] - starts
        total = int(counts.sum())
        if total == 0:
            return _EMPTY_IDS, _EMPTY_IDS
        # Position of every entry: row start plus its rank inside the row
        shift = starts - (np.cumsum(counts) - counts)
        idx = np.repeat(shift, counts) + np.arange(total)
        return np.repeat(vs, counts), self._col_indices[idx]

    def __eq__(self, other):
        if not isinstance(other, CsrGraph):
            return NotImplemented
        return (self.num_vertices == other.num_vertices
                and self.num_edges_input == other.num_edges_input
                and np.array_equal(self._row_offsets, other._row_offsets)
                and np.array_equal(self._col_indices, other._col_indices)
                and np.array_equal(self._edge_weights, other._edge_weights))

    __hash__ = None


class AdjMapGraph(Graph):
    """ Graph stored as a map from vertex id to its neighbor list

    Vertices without neighbors may be absent from the map; lookups treat an absent vertex
    and an empty neighbor list identically.

    Parameters
    ----------
    num_vertices: int
        number of vertices N
    adjacency: dict
        mapping ``u -> (ids, weights)`` of equally long arrays, sorted by (id, weight)
    num_edges_input: int, optional
        number of undirected input edges before mirroring
    """

    representation = 'adjmap'

    def __init__(self, num_vertices, adjacency, num_edges_input=0):
        super().__init__(num_vertices, num_edges_input)
        adj = {}
        for u, (ids, w) in adjacency.items():
            u = self._check_vertex(u)
            ids = _readonly(ids, np.int64)
            w = _readonly(w, np.float64)
            if len(ids) != len(w):
                raise GraphValidationError(self.__class__.__name__ + f' vertex {u} has {len(ids)} neighbors and {len(w)} weights')
            if len(ids) > 0:
                adj[u] = (ids, w)
        self._adj = adj
        deg = np.zeros(self.num_vertices, dtype=np.int64)
        for u, (ids, _) in adj.items():
            deg[u] = len(ids)
        deg.flags.writeable = False
        self._degrees = deg

    @property
    def adjacency(self):
        """ Read-only view of the underlying map """
        return types.MappingProxyType(self._adj)

    def _row(self, u):
        return self._adj.get(u, (_EMPTY_IDS, _EMPTY_WEIGHTS))

    def degrees(self):
        return self._degrees

    def gather(self, vertices):
        srcs = []
        dsts = []
        for u in np.asarray(vertices, dtype=np.int64).tolist():
            ids = self._adj.get(u)
            if ids is not None:
                ids = ids[0]
                srcs.append(np.full(len(ids), u, dtype=np.int64))
                dsts.append(ids)
        if not dsts:
            return _EMPTY_IDS, _EMPTY_IDS
        return np.concatenate(srcs), np.concatenate(dsts)

    def __eq__(self, other):
        if not isinstance(other, AdjMapGraph):
            return NotImplemented
        if (self.num_vertices, self.num_edges_input) != (other.num_vertices, other.num_edges_input):
            return False
        if self._adj.keys() != other._adj.keys():
            return False
        for u, (ids, w) in self._adj.items():
            oids, ow = other._adj[u]
            if not (np.array_equal(ids, oids) and np.array_equal(w, ow)):
                return False
        return True

    __hash__ = None


class CsrFragment(object):
    """ Part of a CSR graph computed by one worker over a slice of the sorted entries

    Parameters
    ----------
    start: int
        first global entry index of the slice
    stop: int
        one past the last global entry index of the slice
    rows: array_like of int
        ascending ids of the rows that have entries in the slice
    row_ends: array_like of int
        global index one past the last entry of each row, *as seen from this slice*.
        A row continuing into the next slice is claimed to end at `stop`
    col_indices: array_like of int
        neighbor ids of the slice
    edge_weights: array_like of float
        weights of the slice
    num_vertices: int
        number of vertices of the whole graph
    """

    def __init__(self, start, stop, rows, row_ends, col_indices, edge_weights, num_vertices):
        self.start = int(start)
        self.stop = int(stop)
        self.rows = np.asarray(rows, dtype=np.int64)
        self.row_ends = np.asarray(row_ends, dtype=np.int64)
        self.col_indices = np.asarray(col_indices, dtype=np.int64)
        self.edge_weights = np.asarray(edge_weights, dtype=np.float64)
        self.num_vertices = int(num_vertices)

    def __str__(self):
        return self.__class__.__name__ + f'{{[{self.start}, {self.stop}), rows: {len(self.rows)}}}'


def neighbors(g, u):
    """ Adjacency entries ``(neighbor, weight)`` of vertex `u` in graph `g`, see `Graph.neighbors` """
    return g.neighbors(u)


def parallel_partition_bounds(m, workers):
    """ Split ``[0, m)`` into `workers` contiguous half-open ranges

    Range sizes differ by at most one; the first ``m % workers`` ranges get the extra item.

    Parameters
    ----------
    m: int
        number of items
    workers: int
        number of ranges, ``>= 1``

    Returns
    -------
    list of (int, int)
        ``(lo, hi)`` pairs covering ``[0, m)`` in order, some possibly empty
    """
    if workers < 1:
        raise DomainError(f'parallel_partition_bounds(...) requires workers >= 1, got {workers}')
    q, r = divmod(int(m), int(workers))
    bounds = []
    lo = 0
    for i in range(workers):
        hi = lo + q + (1 if i < r else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def csr_fragment(src, dst, w, lo, hi, num_vertices):
    """ Compute the `CsrFragment` of the sorted entries ``[lo, hi)``

    Parameters
    ----------
    src, dst, w: numpy.ndarray
        mirrored entries sorted by (source, target, weight)
    lo, hi: int
        slice handled by this worker
    num_vertices: int
        number of vertices
    """
    seg = src[lo:hi]
    if len(seg) == 0:
        rows = _EMPTY_IDS
        row_ends = _EMPTY_IDS
    else:
        # Last entry of every run of equal sources
        change = np.flatnonzero(seg[1:] != seg[:-1])
        rows = np.append(seg[change], seg[-1])
        row_ends = lo + np.append(change + 1, len(seg))
    return CsrFragment(lo, hi, rows, row_ends, dst[lo:hi], w[lo:hi], num_vertices)


def merge_boundary_rows(partials, num_edges_input=0):
    """ Merge per-worker CSR fragments into one `CsrGraph`

    Two consecutive fragments may both claim the row on their shared boundary; each
    then reports a different end offset for it and the larger one is kept.
    Rows claimed by no fragment repeat the previous offset.

    Parameters
    ----------
    partials: list of CsrFragment
        fragments over contiguous slices of the same sorted entries
    num_edges_input: int, optional
        number of undirected input edges, stored on the result

    Raises
    ------
    ConsistencyError
        if the fragments do not tile the entries contiguously, or two fragments
        overlap in more than the shared boundary row

    Returns
    -------
    CsrGraph
    """
    if len(partials) == 0:
        raise ConsistencyError('merge_boundary_rows(...) requires at least one fragment')
    frags = sorted(partials, key=lambda f: (f.start, f.stop))
    n = frags[0].num_vertices

    if frags[0].start != 0:
        raise ConsistencyError('merge_boundary_rows(...) fragments must start at entry 0')
    pos = 0
    last_row = -1
    for f in frags:
        if f.num_vertices != n:
            raise ConsistencyError('merge_boundary_rows(...) fragments disagree on the number of vertices')
        if f.start != pos or f.stop - f.start != len(f.col_indices) or len(f.rows) != len(f.row_ends):
            raise ConsistencyError(f'merge_boundary_rows(...) fragment {f} does not continue at entry {pos}')
        if len(f.rows) > 0:
            if f.rows[0] < last_row:
                raise ConsistencyError(f'merge_boundary_rows(...) fragment {f} reaches back beyond the shared '
                                       f'boundary row {last_row}')
            last_row = f.rows[-1]
        pos = f.stop

    row_end = np.zeros(n, dtype=np.int64)
    for f in frags:
        if len(f.rows) > 0:
            row_end[f.rows] = np.maximum(row_end[f.rows], f.row_ends)

    row_offsets = np.zeros(n + 1, dtype=np.int64)
    # Empty rows repeat the previous offset
    row_offsets[1:] = np.maximum.accumulate(row_end)
    col = np.concatenate([f.col_indices for f in frags])
    w = np.concatenate([f.edge_weights for f in frags])
    if row_offsets[-1] != len(col):
        raise ConsistencyError(f'merge_boundary_rows(...) last offset {row_offsets[-1]} does not match '
                               f'{len(col)} entries')
    return CsrGraph(n, row_offsets, col, w, num_edges_input=num_edges_input)


def _mirror(src, dst, w):
    """ Store every non-loop edge in both directions """
    keep = src != dst
    return (np.concatenate((src, dst[keep])),
            np.concatenate((dst, src[keep])),
            np.concatenate((w, w[keep])))


def _sorted_entries(src, dst, w):
    """ Mirror and sort the entries by (source, target, weight) """
    src, dst, w = _mirror(src, dst, w)
    order = np.lexsort((w, dst, src))
    return src[order], dst[order], w[order]


def _build_csr(edges, workers, pool):
    n = edges.num_vertices
    src, dst, w = _sorted_entries(edges.sources, edges.targets, edges.weights)
    if pool is None:
        row_offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=row_offsets[1:])
        return CsrGraph(n, row_offsets, dst, w, num_edges_input=edges.count)

    bounds = parallel_partition_bounds(len(src), workers)
    frags = list(pool.map(lambda b: csr_fragment(src, dst, w, b[0], b[1], n), bounds))
    return merge_boundary_rows(frags, num_edges_input=edges.count)


def _adjmap_bucket(edges, lo, hi):
    """ Private per-worker map ``u -> (ids, weights)`` over the input edges ``[lo, hi)`` """
    src, dst, w = _sorted_entries(edges.sources[lo:hi], edges.targets[lo:hi], edges.weights[lo:hi])
    if len(src) == 0:
        return {}
    keys, starts = np.unique(src, return_index=True)
    ends = np.append(starts[1:], len(src))
    return {u: (dst[s:e], w[s:e]) for u, s, e in zip(keys.tolist(), starts.tolist(), ends.tolist())}


def _merge_buckets(buckets):
    """ Deterministic merge: by vertex id, then by partition index, then canonical sort """
    adj = {}
    for u in sorted(set().union(*buckets)):
        parts = [b[u] for b in buckets if u in b]
        if len(parts) == 1:
            adj[u] = parts[0]
            continue
        ids = np.concatenate([p[0] for p in parts])
        w = np.concatenate([p[1] for p in parts])
        order = np.lexsort((w, ids))
        adj[u] = (ids[order], w[order])
    return adj


def _build_adjmap(edges, workers, pool):
    if pool is None:
        buckets = [_adjmap_bucket(edges, 0, edges.count)]
    else:
        bounds = parallel_partition_bounds(edges.count, workers)
        buckets = list(pool.map(lambda b: _adjmap_bucket(edges, b[0], b[1]), bounds))
    return AdjMapGraph(edges.num_vertices, _merge_buckets(buckets), num_edges_input=edges.count)


def build(edges, repr='adjmap', workers=1):
    """ Kernel 1: construct an undirected graph from an edge list

    Each input edge ``(u, v, w)`` with ``u != v`` is added to the rows of both ``u`` and ``v``;
    a self-loop is added once. Repeated edges give repeated entries. Rows are sorted by
    (neighbor id, weight), which makes the result independent of `workers`.

    With ``workers > 1`` the work is split over a thread pool:

    - ``'csr'``: the mirrored entries are sorted by (source, target) first (the sort is part
      of the construction cost), then each worker computes the row offsets of one slice and
      `merge_boundary_rows` resolves rows shared by neighboring slices.
    - ``'adjmap'``: each worker accumulates private per-vertex buckets for one slice of the
      input edges; the buckets are merged by vertex id and partition index. No map is shared
      between threads while they run.

    Parameters
    ----------
    edges: EdgeList
        input edge list
    repr: {'adjmap', 'csr'}
        graph representation
    workers: int, optional
        number of worker threads, ``>= 1``

    Raises
    ------
    GraphValidationError
        if an endpoint is outside ``[0, N)``
    DomainError
        for an unknown representation or ``workers < 1``

    Returns
    -------
    AdjMapGraph or CsrGraph
    """
    if repr not in REPRESENTATIONS:
        raise DomainError(f'build(...) unknown representation {repr!r}, expected one of {REPRESENTATIONS}')
    workers = int(workers)
    if workers < 1:
        raise DomainError(f'build(...) requires workers >= 1, got {workers}')
    n = edges.num_vertices
    for arr in (edges.sources, edges.targets):
        if len(arr) > 0 and (arr.min() < 0 or arr.max() >= n):
            raise GraphValidationError(f'build(...) edge endpoint outside [0, {n})')

    builder = _build_csr if repr == 'csr' else _build_adjmap
    if workers == 1:
        return builder(edges, 1, None)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return builder(edges, workers, pool)
