import numpy as np
import pytest
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from graphbench.kronecker import GenParams, EdgeList, generate


def _bellman_ford(edges, source):
    """ Shortest distances by repeated relaxation of every edge in both directions """
    n = edges.num_vertices
    src = np.concatenate((edges.sources, edges.targets))
    dst = np.concatenate((edges.targets, edges.sources))
    w = np.concatenate((edges.weights, edges.weights))
    dist = np.full(n, np.inf)
    dist[source] = 0.
    for _ in range(n):
        new = dist.copy()
        np.minimum.at(new, dst, dist[src] + w)
        if np.array_equal(new, dist):
            break
        dist = new
    return dist


def _unweighted_levels(edges, root):
    """ BFS levels from scipy's unweighted shortest paths, -1 if unreachable """
    n = edges.num_vertices
    adj = csr_matrix((np.ones(edges.count), (edges.sources, edges.targets)), shape=(n, n))
    d = shortest_path(adj, directed=False, unweighted=True, indices=root)
    level = np.full(n, -1, dtype=np.int64)
    finite = np.isfinite(d)
    level[finite] = d[finite].astype(np.int64)
    return level


@pytest.fixture
def bellman_ford():
    return _bellman_ford


@pytest.fixture
def unweighted_levels():
    return _unweighted_levels


@pytest.fixture
def kronecker():
    """ Cached generator of Kronecker edge lists keyed by (scale, edgefactor, seed) """
    cache = {}

    def get(scale, edgefactor=8, seed=0):
        key = (scale, edgefactor, seed)
        if key not in cache:
            cache[key] = generate(GenParams(scale, edgefactor, seed))
        return cache[key]
    return get


@pytest.fixture
def star():
    return EdgeList(4, [0, 0, 0], [1, 2, 3], [1., 1., 1.])


@pytest.fixture
def path_isolated():
    """ Path 0-1-2 and the isolated vertex 3 """
    return EdgeList(4, [0, 1], [1, 2], [1., 1.])


@pytest.fixture
def triangle():
    return EdgeList(3, [0, 1, 0], [1, 2, 2], [1., 1., 3.])


@pytest.fixture
def messy():
    """ Small graph with self-loops, repeated edges and an isolated vertex """
    return EdgeList(7, [0, 1, 1, 2, 2, 3, 0, 4, 3, 1],
                    [1, 2, 2, 2, 3, 4, 1, 4, 0, 5],
                    [0.5, 0.25, 0.75, 0.1, 1., 0.3, 0.2, 0.9, 2.5, 0.4])


def random_edge_list(rng, n, m):
    """ Uniform random edge list, self-loops and repeated edges included """
    src = rng.integers(0, n, m)
    dst = rng.integers(0, n, m)
    # Force a few self-loops and repeats
    if m >= 4:
        dst[0] = src[0]
        src[1], dst[1] = src[2], dst[2]
    return EdgeList(n, src, dst, rng.random(m))


@pytest.fixture
def random_edges():
    return random_edge_list
