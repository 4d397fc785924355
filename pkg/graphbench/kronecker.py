import hashlib
import numpy as np
from graphbench.errors import CapacityError, DomainError, GraphValidationError

__all__ = ['GenParams', 'EdgeList', 'generate', 'degree_histogram']

# Graph500 reference initiator
_INITIATOR = (0.57, 0.19, 0.19, 0.05)

_INT64_MAX = np.iinfo(np.int64).max


class GenParams(object):
    """ Parameters of the Kronecker (R-MAT) edge-list generator

    The generated graph has ``2**scale`` vertices and ``2**scale * edgefactor`` edges.

    Random numbers come from `numpy.random.Generator` with the PCG64 bit generator.
    ``numpy.random.SeedSequence(seed).spawn(4)`` provides four independent streams,
    used in this order: quadrant selection, vertex permutation, edge shuffle and weights.
    Reproducing an edge list bit by bit therefore requires PCG64 and this spawn order,
    not only the seed.

    Parameters
    ----------
    scale: int
        base-2 logarithm of the number of vertices, ``scale >= 1``
    edgefactor: int, optional
        number of edges per vertex, ``edgefactor >= 1``
    seed: int, optional
        64-bit unsigned seed for all random streams
    initiator: array_like, optional
        the four quadrant probabilities ``(a, b, c, d)``, each in [0, 1] and summing to 1.
        Defaults to the Graph500 values ``(0.57, 0.19, 0.19, 0.05)``
    permutation_seed: int, optional
        seed of the vertex relabelling permutation only. If not given, the permutation
        stream derived from `seed` is used
    """

    def __init__(self, scale, edgefactor=16, seed=0, initiator=_INITIATOR, permutation_seed=None):
        """ Initialize GenParams """
        scale = int(scale)
        edgefactor = int(edgefactor)
        if scale < 1:
            raise DomainError(self.__class__.__name__ + f' requires scale >= 1, got {scale}')
        if edgefactor < 1:
            raise DomainError(self.__class__.__name__ + f' requires edgefactor >= 1, got {edgefactor}')
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise DomainError(self.__class__.__name__ + ' requires a 64-bit unsigned seed')

        initiator = tuple(float(p) for p in initiator)
        if len(initiator) != 4:
            raise DomainError(self.__class__.__name__ + ' requires four initiator probabilities (a, b, c, d)')
        if any(p < 0. or p > 1. for p in initiator):
            raise DomainError(self.__class__.__name__ + f' initiator probabilities must lie in [0, 1], got {initiator}')
        if abs(sum(initiator) - 1.) > 1e-12:
            raise DomainError(self.__class__.__name__ + f' initiator probabilities must sum to 1, got {sum(initiator)!r}')

        self.scale = scale
        self.edgefactor = edgefactor
        self.seed = seed
        self.initiator = initiator
        self.permutation_seed = None if permutation_seed is None else int(permutation_seed)

    @property
    def num_vertices(self):
        """ Number of vertices, ``2**scale`` """
        return 1 << self.scale

    def __str__(self):
        """ Representation of the parameters """
        return self.__class__.__name__ + f'{{scale: {self.scale}, edgefactor: {self.edgefactor}, ' \
            f'seed: {self.seed}, initiator: {self.initiator}}}'


class EdgeList(object):
    """ Flat list of undirected, weighted edge tuples ``(start-vertex, end-vertex, weight)``

    This is the only object passed between generation, persistence and graph construction.
    Self-loops and repeated edges are allowed. All arrays are read-only once the list is created.

    Parameters
    ----------
    num_vertices: int
        number of vertices N, every endpoint must lie in ``[0, N)``
    sources: array_like of int
        start vertex of each edge
    targets: array_like of int
        end vertex of each edge
    weights: array_like of float
        weight of each edge
    """

    def __init__(self, num_vertices, sources, targets, weights):
        """ Initialize EdgeList """
        self.num_vertices = int(num_vertices)
        if self.num_vertices < 0:
            raise GraphValidationError(self.__class__.__name__ + ' requires a non-negative number of vertices')

        self.sources = np.array(sources, dtype=np.int64).ravel()
        self.targets = np.array(targets, dtype=np.int64).ravel()
        self.weights = np.array(weights, dtype=np.float64).ravel()
        if not len(self.sources) == len(self.targets) == len(self.weights):
            raise GraphValidationError(self.__class__.__name__ + ' requires sources, targets and weights of equal length, '
                                       f'got {len(self.sources)}, {len(self.targets)}, {len(self.weights)}')

        for name, arr in (('sources', self.sources), ('targets', self.targets)):
            if len(arr) > 0 and (arr.min() < 0 or arr.max() >= self.num_vertices):
                bad = arr[(arr < 0) | (arr >= self.num_vertices)][0]
                raise GraphValidationError(self.__class__.__name__ + f' {name} contains vertex {bad} '
                                           f'outside [0, {self.num_vertices})')

        for arr in (self.sources, self.targets, self.weights):
            arr.flags.writeable = False

    @property
    def count(self):
        """ Number of edges M """
        return len(self.sources)

    def __len__(self):
        return self.count

    def __iter__(self):
        """ Iterate over ``(u, v, w)`` tuples as Python scalars """
        return zip(self.sources.tolist(), self.targets.tolist(), self.weights.tolist())

    def __eq__(self, other):
        """ Bitwise equality, including edge order """
        if not isinstance(other, EdgeList):
            return NotImplemented
        return (self.num_vertices == other.num_vertices
                and np.array_equal(self.sources, other.sources)
                and np.array_equal(self.targets, other.targets)
                and self.weights.tobytes() == other.weights.tobytes())

    __hash__ = None

    def __str__(self):
        return self.__class__.__name__ + f'{{N: {self.num_vertices}, M: {self.count}}}'

    def digest(self):
        """ Short md5 digest of the complete edge list, used to key stored results

        Returns
        -------
        str
        """
        h = hashlib.md5()
        h.update(np.int64(self.num_vertices).tobytes())
        for arr in (self.sources, self.targets, self.weights):
            h.update(arr.tobytes())
        return h.hexdigest()

    def with_weights(self, value):
        """ Return a copy of the edge list where every weight equals `value`

        Parameters
        ----------
        value: float
            the constant weight, e.g. 1.0 to compare shortest paths with BFS levels
        """
        return self.__class__(self.num_vertices, self.sources, self.targets,
                              np.full(self.count, value, dtype=np.float64))


def _quadrant_bits(scale, m, initiator, rng):
    """ Draw ``m`` edges by recursive quadrant selection over `scale` bit levels """
    a, b, c, d = initiator
    ab = a + b
    # Conditional probability of the column bit being 0 given the row bit
    a_norm = a / ab if ab > 0 else 0.
    c_norm = c / (c + d) if c + d > 0 else 0.

    src = np.zeros(m, dtype=np.int64)
    dst = np.zeros(m, dtype=np.int64)
    for ib in range(scale):
        ii_bit = rng.random(m) > ab
        jj_bit = rng.random(m) > np.where(ii_bit, c_norm, a_norm)
        src += ii_bit.astype(np.int64) << ib
        dst += jj_bit.astype(np.int64) << ib
    return src, dst


def generate(params):
    """ Generate a Kronecker (R-MAT) edge list

    Each of the ``M = N * edgefactor`` edges chooses its endpoints bit by bit,
    descending one quadrant of the adjacency matrix per level with the initiator
    probabilities. Vertex labels are then relabelled by a uniform random permutation,
    the edge order is uniformly shuffled and weights are drawn i.i.d. uniform in [0, 1).

    Self-loops and repeated edges are kept: construction and the kernels handle them.
    Generation is single-threaded, and the output is a deterministic function of `params`.

    Parameters
    ----------
    params: GenParams
        generator parameters

    Raises
    ------
    CapacityError
        if ``N * edgefactor`` does not fit in a 64-bit signed integer

    Returns
    -------
    EdgeList
    """
    if params.scale >= 63 or (1 << params.scale) * params.edgefactor > _INT64_MAX:
        raise CapacityError(f'generate(...) scale={params.scale}, edgefactor={params.edgefactor} '
                            'overflows the 64-bit edge count')
    n = params.num_vertices
    m = n * params.edgefactor

    s_bits, s_perm, s_shuffle, s_weight = np.random.SeedSequence(params.seed).spawn(4)
    if params.permutation_seed is not None:
        s_perm = np.random.SeedSequence(params.permutation_seed)

    src, dst = _quadrant_bits(params.scale, m, params.initiator, np.random.Generator(np.random.PCG64(s_bits)))

    # Relabel vertices, then shuffle edges
    perm = np.random.Generator(np.random.PCG64(s_perm)).permutation(n)
    src = perm[src]
    dst = perm[dst]
    order = np.random.Generator(np.random.PCG64(s_shuffle)).permutation(m)
    src = src[order]
    dst = dst[order]

    weights = np.random.Generator(np.random.PCG64(s_weight)).random(m)
    return EdgeList(n, src, dst, weights)


def degree_histogram(edges):
    """ Histogram of undirected vertex degrees

    Each edge adds one to the degree of both endpoints; a self-loop therefore adds 2
    to its vertex. The histogram satisfies ``sum(d * count) == 2 * M``.

    Parameters
    ----------
    edges: EdgeList
        the edge list

    Returns
    -------
    dict
        mapping degree -> number of vertices with that degree
    """
    n = edges.num_vertices
    deg = np.bincount(edges.sources, minlength=n) + np.bincount(edges.targets, minlength=n)
    values, counts = np.unique(deg, return_counts=True)
    return dict(zip(values.tolist(), counts.tolist()))
