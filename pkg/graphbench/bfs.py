import math
import operator
import threading
import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from graphbench.errors import VertexBoundsError, DomainError

__all__ = ['BfsResult', 'Frontier', 'LevelArray', 'bfs_sequential', 'bfs_parallel', 'expand_level']

UNREACHED = -1


def _check_root(g, root, what='root'):
    try:
        v = operator.index(root)
    except TypeError:
        raise VertexBoundsError(f'{what} {root!r} is not an integer vertex id') from None
    if not 0 <= v < g.num_vertices:
        raise VertexBoundsError(f'{what} {root} outside [0, {g.num_vertices})')
    return v


def _index_array(name, a):
    """ `a` as an int64 array, warning when a non-integer array is truncated """
    a = np.asarray(a)
    if a.size > 0 and a.dtype.kind not in 'iu':
        warnings.warn(f'{name} array of dtype {a.dtype} converted to int64')
    return a.astype(np.int64, copy=False)


class BfsResult(object):
    """ Level and parent arrays of a breadth-first search

    ``level[v]`` is the number of edges on a shortest path from `root` to ``v`` and
    ``parent[v]`` the vertex ``v`` was discovered from. Both are -1 for unreached vertices.
    The root is its own parent.

    Parameters
    ----------
    root: int
        start vertex
    level: array_like of int
        level of every vertex
    parent: array_like of int
        parent of every vertex
    claims: numpy.ndarray, optional
        number of times each level entry was written (only recorded on request)
    """

    kind = 'bfs'

    def __init__(self, root, level, parent, claims=None):
        self.root = int(root)
        self.level = _index_array('level', level)
        self.parent = _index_array('parent', parent)
        self.claims = claims

    @property
    def num_vertices(self):
        return len(self.level)

    @property
    def reached(self):
        """ Boolean mask of the vertices reached from the root """
        return self.level != UNREACHED

    @property
    def num_reached(self):
        return int(np.count_nonzero(self.reached))

    @property
    def depth(self):
        """ Largest level in the search tree """
        return int(self.level.max()) if len(self.level) > 0 else 0

    def __str__(self):
        return self.__class__.__name__ + f'{{root: {self.root}, reached: {self.num_reached}/{self.num_vertices}, ' \
            f'depth: {self.depth}}}'


class Frontier(object):
    """ Vertices of one BFS level

    Parameters
    ----------
    current: array_like of int
        vertices whose level equals `depth` (Q)
    depth: int, optional
        level of the `current` vertices (l)

    Attributes
    ----------
    next: numpy.ndarray
        vertices claimed for level ``depth + 1`` (Q'), filled by `expand_level`
    """

    def __init__(self, current, depth=0):
        self.current = np.asarray(current, dtype=np.int64)
        self.next = np.empty(0, dtype=np.int64)
        self.depth = int(depth)

    def __len__(self):
        return len(self.current)

    def __str__(self):
        return self.__class__.__name__ + f'{{depth: {self.depth}, size: {len(self.current)}}}'


class LevelArray(object):
    """ Level and parent arrays shared by the workers of a parallel BFS

    Entries are only written through `claim`, which performs a compare-and-set of
    the level entry from -1 to the new level, so every vertex is claimed exactly once.

    Parameters
    ----------
    level: numpy.ndarray
        level array, updated in place
    parent: numpy.ndarray, optional
        parent array, updated in place. A new one filled with -1 is created if not given
    track_claims: bool, optional
        count the writes to each entry in `claims`
    """

    def __init__(self, level, parent=None, track_claims=False):
        self.level = np.asarray(level, dtype=np.int64)
        if parent is None:
            parent = np.full(len(self.level), UNREACHED, dtype=np.int64)
        self.parent = np.asarray(parent, dtype=np.int64)
        self.claims = np.zeros(len(self.level), dtype=np.int64) if track_claims else None
        self._lock = threading.Lock()

    @classmethod
    def unvisited(cls, num_vertices, track_claims=False):
        """ Arrays with every vertex unreached """
        return cls(np.full(num_vertices, UNREACHED, dtype=np.int64), track_claims=track_claims)

    def set_root(self, root):
        with self._lock:
            self.level[root] = 0
            self.parent[root] = root
            if self.claims is not None:
                self.claims[root] += 1

    def claim(self, vertices, parents, new_level):
        """ Atomically claim every still unreached vertex of `vertices`

        A vertex listed several times is claimed once, with the parent of its first occurrence.

        Parameters
        ----------
        vertices: numpy.ndarray
            candidate vertices
        parents: numpy.ndarray
            frontier vertex each candidate was reached from
        new_level: int
            level written into the claimed entries

        Returns
        -------
        numpy.ndarray
            the vertices won by this call, ascending
        """
        vertices, first = np.unique(np.asarray(vertices, dtype=np.int64), return_index=True)
        parents = np.asarray(parents, dtype=np.int64)[first]
        with self._lock:
            free = self.level[vertices] == UNREACHED
            won = vertices[free]
            self.level[won] = new_level
            self.parent[won] = parents[free]
            if self.claims is not None:
                self.claims[won] += 1
        return won


def bfs_sequential(g, root):
    """ Kernel 2, sequential: queue based breadth-first search

    Parameters
    ----------
    g: Graph
        the graph
    root: int
        start vertex

    Raises
    ------
    VertexBoundsError
        if `root` is out of range

    Returns
    -------
    BfsResult
    """
    root = _check_root(g, root)
    n = g.num_vertices
    level = [UNREACHED] * n
    parent = [UNREACHED] * n
    level[root] = 0
    parent[root] = root

    queue = deque([root])
    while queue:
        node = queue.popleft()
        nl = level[node] + 1
        for u in g.neighbor_ids(node).tolist():
            if level[u] == UNREACHED:
                level[u] = nl
                parent[u] = node
                queue.append(u)
    return BfsResult(root, level, parent)


def _chunks(vertices, workers, chunk_size):
    if chunk_size is None:
        chunk_size = max(64, math.ceil(len(vertices) / (4 * workers)))
    return [vertices[i:i + chunk_size] for i in range(0, len(vertices), chunk_size)]


def expand_level(g, frontier, level, workers=1, pool=None, chunk_size=None):
    """ Expand one BFS level

    The `frontier` is split into chunks. For every chunk the neighbors of its vertices
    are gathered and the unreached ones are claimed for level ``frontier.depth + 1``
    through `LevelArray.claim`. The call returns only after every chunk is done, which is
    the barrier between two levels.

    Parameters
    ----------
    g: Graph
        the graph
    frontier: Frontier
        vertices of the current level; its `next` attribute is filled by this call
    level: LevelArray or numpy.ndarray
        shared level (and parent) arrays. A bare level array is updated in place,
        also when it is not of integer type ``int64``
    workers: int, optional
        number of workers used for sizing the chunks
    pool: concurrent.futures.Executor, optional
        executor running the chunks, chunks run in the calling thread if not given
    chunk_size: int, optional
        vertices per chunk, defaults to ``max(64, len(frontier) / (4 * workers))``

    Returns
    -------
    Frontier
        the next level, empty when the search is finished
    """
    target = None
    if not isinstance(level, LevelArray):
        target, level = level, LevelArray(level)
    new_level = frontier.depth + 1

    def work(chunk):
        sources, targets = g.gather(chunk)
        # Unlocked pre-filter: entries only ever change from -1 to a level
        keep = level.level[targets] == UNREACHED
        return level.claim(targets[keep], sources[keep], new_level)

    chunks = _chunks(frontier.current, workers, chunk_size)
    if pool is None or len(chunks) <= 1:
        won = [work(c) for c in chunks]
    else:
        won = list(pool.map(work, chunks))

    nxt = np.concatenate(won) if won else np.empty(0, dtype=np.int64)
    if isinstance(target, np.ndarray) and level.level is not target:
        target[nxt] = new_level
    frontier.next = nxt
    return Frontier(nxt, new_level)


def bfs_parallel(g, root, workers=1, chunk_size=None, track_claims=False):
    """ Kernel 2, level-synchronized parallel breadth-first search

    All vertices of one level are expanded in parallel by a pool of `workers` threads,
    created once per search and reused for every level. The next level starts only after
    the current one has been fully expanded, so every vertex receives its minimal level.
    The level array equals the one of `bfs_sequential`; the parent array may differ but is
    always a valid BFS tree.

    Parameters
    ----------
    g: Graph
        the graph
    root: int
        start vertex
    workers: int, optional
        number of worker threads, ``>= 1``
    chunk_size: int, optional
        frontier vertices per task, see `expand_level`
    track_claims: bool, optional
        record how often each level entry was written in `BfsResult.claims`

    Raises
    ------
    VertexBoundsError
        if `root` is out of range

    Returns
    -------
    BfsResult
    """
    root = _check_root(g, root)
    workers = int(workers)
    if workers < 1:
        raise DomainError(f'bfs_parallel(...) requires workers >= 1, got {workers}')

    level = LevelArray.unvisited(g.num_vertices, track_claims=track_claims)
    level.set_root(root)
    frontier = Frontier([root], 0)

    if workers == 1:
        while len(frontier) > 0:
            frontier = expand_level(g, frontier, level, chunk_size=chunk_size)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            while len(frontier) > 0:
                frontier = expand_level(g, frontier, level, workers=workers, pool=pool, chunk_size=chunk_size)
    return BfsResult(root, level.level, level.parent, claims=level.claims)
