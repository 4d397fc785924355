""" Graph500-style validation of BFS and SSSP results

Validation only reads the original `EdgeList` and the result arrays, never the
`Graph` the kernels ran on, so a construction bug cannot hide a kernel bug.

Cycle safety of the parent array is not checked separately: ``level`` strictly
decreases along parent edges (check ``parent_levels``) so following parents always
ends at the root. SSSP distances may tie along zero weight edges, so the
predecessor chains are followed explicitly (check ``prev_chain``).
"""
import csv
from collections import namedtuple
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order
from graphbench.errors import GraphValidationError, EdgeFileError

__all__ = ['CheckResult', 'ValidationReport', 'validate_bfs', 'validate_sssp', 'validate', 'DIST_TOL']

# Absolute tolerance of distance comparisons
DIST_TOL = 1e-9

# Key of a pair with an endpoint that never occurs in the edge list
_ABSENT = np.uint64(np.iinfo(np.uint64).max)

CheckResult = namedtuple('CheckResult', ['name', 'passed', 'detail'])


class ValidationReport(object):
    """ Outcome of all checks run on one result

    Parameters
    ----------
    kind: {'bfs', 'sssp'}
        kind of the validated result
    root: int
        root (BFS) or source (SSSP) of the validated result
    checks: list of CheckResult
        the individual checks in the order they ran
    """

    def __init__(self, kind, root, checks):
        self.kind = kind
        self.root = int(root)
        self.checks = list(checks)

    @property
    def passed(self):
        """ True only if every check passed """
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def failed_checks(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        """ Human-readable lines, one per check and a final verdict """
        out = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks]
        out.append(f"{self.kind} root {self.root}: {'valid' if self.passed else 'INVALID'}")
        return out

    def write_csv(self, path):
        """ Write the checks as CSV with header ``check_name,pass,detail`` """
        try:
            with open(path, 'w', newline='') as fh:
                writer = csv.writer(fh)
                writer.writerow(['check_name', 'pass', 'detail'])
                for c in self.checks:
                    writer.writerow([c.name, 'true' if c.passed else 'false', c.detail])
        except OSError as e:
            raise EdgeFileError(path, e.strerror or str(e)) from e

    def __str__(self):
        return self.__class__.__name__ + f'{{{self.kind}, root: {self.root}, passed: {self.passed}, ' \
            f'failed: {[c.name for c in self.failed_checks()]}}}'


def _check(name, bad, what):
    """ Check passing if the boolean mask (or index array) `bad` selects nothing """
    idx = np.flatnonzero(bad) if np.asarray(bad).dtype == bool else np.asarray(bad)
    if len(idx) == 0:
        return CheckResult(name, True, 'ok')
    return CheckResult(name, False, f'{len(idx)} {what}, first at {idx[0]}')


class _EdgeIndex(object):
    """ Sorted undirected keys of the input edges, with their weights

    Endpoints are renumbered among the distinct endpoint ids first, so the keys
    ``min(u, v) * K + max(u, v)`` stay within 64 bits whatever the number of vertices.
    """

    def __init__(self, edges):
        lo = np.minimum(edges.sources, edges.targets)
        hi = np.maximum(edges.sources, edges.targets)
        self.ids = np.unique(np.concatenate((lo, hi)))
        self.k = np.uint64(max(len(self.ids), 1))
        keys = self._keys(lo, hi)
        order = np.lexsort((edges.weights, keys))
        self.keys = keys[order]
        self.weights = edges.weights[order]

    def _keys(self, lo, hi):
        """ Keys of the pairs ``(lo, hi)``, `_ABSENT` where one is not an input endpoint """
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        if len(self.ids) == 0:
            return np.full(lo.shape, _ABSENT, dtype=np.uint64)
        last = len(self.ids) - 1
        i = np.minimum(np.searchsorted(self.ids, lo), last)
        j = np.minimum(np.searchsorted(self.ids, hi), last)
        keys = i.astype(np.uint64) * self.k + j.astype(np.uint64)
        return np.where((self.ids[i] == lo) & (self.ids[j] == hi), keys, _ABSENT)

    def bounds(self, a, b):
        """ Ranges ``[lo, hi)`` of the index entries between `a` and `b` """
        k = self._keys(np.minimum(a, b), np.maximum(a, b))
        return np.searchsorted(self.keys, k, side='left'), np.searchsorted(self.keys, k, side='right')

    def contains(self, a, b):
        lo, hi = self.bounds(a, b)
        return hi > lo


def _check_lengths(edges, what, *arrays):
    n = edges.num_vertices
    for arr in arrays:
        if len(arr) != n:
            raise GraphValidationError(f'{what} result arrays have length {len(arr)}, the edge list has {n} vertices')


def validate_bfs(edges, result):
    """ Validate a BFS result against the input edge list

    Checks, by name:

    - ``root``: the root has level 0 and is its own parent
    - ``reach_consistency``: ``level[v] == -1`` exactly when ``parent[v] == -1`` (v not the root),
      parents are valid vertex ids
    - ``tree_edges``: every tree edge ``(parent[v], v)`` is an input edge (either direction)
    - ``parent_levels``: ``level[v] == level[parent[v]] + 1`` for every reached ``v`` but the root
    - ``edge_level_span``: levels of the endpoints of an input edge differ by at most one
    - ``connected_reach``: an input edge never joins a reached and an unreached vertex

    Parameters
    ----------
    edges: EdgeList
        edge list the graph was built from
    result: BfsResult
        result to validate

    Raises
    ------
    GraphValidationError
        if the result arrays do not have one entry per vertex

    Returns
    -------
    ValidationReport
    """
    level, parent, root = result.level, result.parent, result.root
    _check_lengths(edges, 'validate_bfs(...)', level, parent)
    n = edges.num_vertices
    if not 0 <= root < n:
        return ValidationReport('bfs', root, [CheckResult('root', False, f'root {root} outside [0, {n})')])

    checks = []
    ok = level[root] == 0 and parent[root] == root
    checks.append(CheckResult('root', bool(ok), 'ok' if ok else
                              f'level[root] = {level[root]}, parent[root] = {parent[root]}'))

    others = np.arange(n) != root
    bad = others & ((level == -1) != (parent == -1))
    bad |= (parent < -1) | (parent >= n) | (level < -1)
    checks.append(_check('reach_consistency', bad, 'vertices with inconsistent level/parent'))

    # Remaining vertex checks only look at reached vertices with a usable parent
    v = np.flatnonzero(others & (level >= 0) & (parent >= 0) & (parent < n))
    p = parent[v]
    index = _EdgeIndex(edges)
    checks.append(_check('tree_edges', v[~index.contains(v, p)], 'tree edges missing from the edge list'))
    checks.append(_check('parent_levels', v[level[v] != level[p] + 1],
                         'vertices violating level[v] = level[parent[v]] + 1'))

    src, dst = edges.sources, edges.targets
    reached = level >= 0
    both = reached[src] & reached[dst]
    checks.append(_check('edge_level_span', both & (np.abs(level[src] - level[dst]) > 1),
                         'edges spanning more than one level'))
    checks.append(_check('connected_reach', reached[src] != reached[dst],
                         'edges joining a reached and an unreached vertex'))
    return ValidationReport('bfs', root, checks)


def _reachable(edges, source):
    """ Vertices connected to `source`, from scipy's breadth-first order """
    n = edges.num_vertices
    adj = csr_matrix((np.ones(edges.count), (edges.sources, edges.targets)), shape=(n, n))
    mask = np.zeros(n, dtype=bool)
    mask[breadth_first_order(adj, source, directed=False, return_predecessors=False)] = True
    return mask


def _leads_to(prev, source):
    """ Mask of the vertices whose chain of `prev` pointers ends at `source`

    Pointer doubling: after k rounds every entry points 2**k steps up its chain. Invalid
    and -1 pointers go to an extra sink entry that points to itself.
    """
    n = len(prev)
    up = np.where((prev >= 0) & (prev < n), prev, n)
    up = np.append(up, n)
    up[source] = source
    for _ in range(max(1, n).bit_length()):
        up = up[up]
    return up[:n] == source


def validate_sssp(edges, result):
    """ Validate an SSSP result against the input edge list

    Checks, by name:

    - ``source``: ``dist[source] == 0`` and ``prev[source] == -1``
    - ``reach_consistency``: ``dist[v]`` is finite exactly when ``prev[v] != -1`` (v not the source),
      distances are non-negative and predecessors valid vertex ids
    - ``tree_edges``: for every reached ``v`` but the source, some input edge of weight ``w``
      joins ``prev[v]`` and ``v`` with ``dist[v] == dist[prev[v]] + w`` within `DIST_TOL`
    - ``relaxed_edges``: no input edge ``(u, v, w)`` has ``dist[v] > dist[u] + w + DIST_TOL``
      in either direction
    - ``prev_chain``: following ``prev`` from every reached vertex ends at the source
    - ``connected_reach``: the reached set equals the set connected to the source

    Parameters
    ----------
    edges: EdgeList
        edge list the graph was built from
    result: SsspResult
        result to validate

    Raises
    ------
    GraphValidationError
        if the result arrays do not have one entry per vertex

    Returns
    -------
    ValidationReport
    """
    dist, prev, source = result.dist, result.prev, result.source
    _check_lengths(edges, 'validate_sssp(...)', dist, prev)
    n = edges.num_vertices
    if not 0 <= source < n:
        return ValidationReport('sssp', source, [CheckResult('source', False, f'source {source} outside [0, {n})')])

    checks = []
    ok = dist[source] == 0. and prev[source] == -1
    checks.append(CheckResult('source', bool(ok), 'ok' if ok else
                              f'dist[source] = {dist[source]!r}, prev[source] = {prev[source]}'))

    reached = np.isfinite(dist)
    others = np.arange(n) != source
    bad = others & (reached != (prev != -1))
    bad |= (prev < -1) | (prev >= n) | np.isnan(dist) | (dist < 0.)
    checks.append(_check('reach_consistency', bad, 'vertices with inconsistent dist/prev'))

    v = np.flatnonzero(others & reached & (prev >= 0) & (prev < n))
    p = prev[v]
    index = _EdgeIndex(edges)
    lo, hi = index.bounds(v, p)
    counts = hi - lo
    total = int(counts.sum())
    owner = np.repeat(np.arange(len(v)), counts)
    pos = np.repeat(lo - (np.cumsum(counts) - counts), counts) + np.arange(total)
    with np.errstate(invalid='ignore'):
        match = np.abs(dist[p][owner] + index.weights[pos] - dist[v][owner]) <= DIST_TOL
    ok = np.bincount(owner, weights=match.astype(np.float64), minlength=len(v)) > 0
    checks.append(_check('tree_edges', v[~ok], 'vertices without a matching tree edge'))

    src, dst, w = edges.sources, edges.targets, edges.weights
    with np.errstate(invalid='ignore'):
        tense = (dist[dst] > dist[src] + w + DIST_TOL) | (dist[src] > dist[dst] + w + DIST_TOL)
    checks.append(_check('relaxed_edges', tense, 'edges that can still be relaxed'))

    checks.append(_check('prev_chain', reached & ~_leads_to(prev, source),
                         'vertices whose predecessors do not lead to the source'))

    expect = _reachable(edges, source)
    checks.append(_check('connected_reach', expect != reached, 'vertices whose reachability is wrong'))
    return ValidationReport('sssp', source, checks)


def validate(edges, result):
    """ Dispatch to `validate_bfs` or `validate_sssp` on ``result.kind`` """
    if result.kind == 'bfs':
        return validate_bfs(edges, result)
    return validate_sssp(edges, result)
