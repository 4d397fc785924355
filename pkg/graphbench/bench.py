import csv
import os
import time
import warnings
from collections import namedtuple
import numpy as np
from scipy.stats import hmean

from graphbench.errors import DomainError, EdgeFileError, ParseError, BenchmarkIntegrityError
from graphbench.kronecker import GenParams, EdgeList, generate
from graphbench.edgeio import read_edge_file
from graphbench.graph import REPRESENTATIONS, build
from graphbench.bfs import bfs_sequential, bfs_parallel
from graphbench.sssp import sssp_dijkstra
from graphbench.validation import validate_bfs, validate_sssp

__all__ = ['BenchConfig', 'BenchRecord', 'BenchReport', 'run_bench', 'sample_roots', 'traversed_edges',
           'PHASES', 'CSV_HEADER', 'SUMMARY_HEADER']

PHASES = ('build', 'bfs_seq', 'bfs', 'sssp')
CSV_HEADER = ('phase', 'repr', 'workers', 'root', 'seconds', 'teps')
SUMMARY_HEADER = ('repr', 'workers', 'mean_seconds', 'min_seconds', 'max_seconds', 'speedup', 'hmean_teps')

# Lower bound of a recorded time, keeps TEPS finite on coarse clocks
_MIN_SECONDS = 1e-9

BenchRecord = namedtuple('BenchRecord', CSV_HEADER)
BenchRecord.__doc__ = """ One timed measurement; `root` and `teps` are None for the build phase """


class BenchConfig(object):
    """ Settings of one benchmark run

    Parameters
    ----------
    source: GenParams or EdgeList or str
        generator parameters, an edge list, or the path of an edge file
    repr: {'adjmap', 'csr', 'both'}, optional
        graph representation(s) to benchmark
    workers: int or list of int, optional
        worker counts to sweep. 1 is added if missing since speedups are measured against it
    num_roots: int, optional
        number of sampled BFS/SSSP start vertices
    root_seed: int, optional
        seed of the root sampling
    out: str, optional
        CSV file the report is written to
    reps: int, optional
        timed repetitions per measurement, the minimum is recorded
    warmup: bool, optional
        run one untimed BFS per (representation, workers) pair first
    sssp: bool, optional
        also time Kernel 3 once per root
    archive: str, optional
        netCDF file receiving every validated result
    chunk_size: int, optional
        frontier chunk size passed to `bfs_parallel`
    """

    def __init__(self, source, repr='adjmap', workers=(1,), num_roots=64, root_seed=0, out=None,
                 reps=3, warmup=True, sssp=True, archive=None, chunk_size=None):
        if repr != 'both' and repr not in REPRESENTATIONS:
            raise DomainError(self.__class__.__name__ + f' unknown representation {repr!r}')
        if np.isscalar(workers):
            workers = [workers]
        workers = sorted(set(int(w) for w in workers))
        if len(workers) == 0 or workers[0] < 1:
            raise DomainError(self.__class__.__name__ + f' requires positive worker counts, got {workers}')
        if workers[0] != 1:
            warnings.warn(f'worker counts {workers} do not include 1, adding it as the speedup baseline')
            workers.insert(0, 1)
        if int(num_roots) < 1:
            raise DomainError(self.__class__.__name__ + f' requires num_roots >= 1, got {num_roots}')
        if int(reps) < 1:
            raise DomainError(self.__class__.__name__ + f' requires reps >= 1, got {reps}')

        self.source = source
        self.repr = repr
        self.workers = workers
        self.num_roots = int(num_roots)
        self.root_seed = int(root_seed)
        self.out = out
        self.reps = int(reps)
        self.warmup = bool(warmup)
        self.sssp = bool(sssp)
        self.archive = archive
        self.chunk_size = chunk_size

    @property
    def representations(self):
        return REPRESENTATIONS if self.repr == 'both' else (self.repr,)

    def load_edges(self):
        """ The edge list to benchmark, generated or read as required """
        if isinstance(self.source, EdgeList):
            return self.source
        if isinstance(self.source, GenParams):
            return generate(self.source)
        return read_edge_file(self.source)

    def __str__(self):
        return self.__class__.__name__ + f'{{repr: {self.repr}, workers: {self.workers}, ' \
            f'roots: {self.num_roots}, reps: {self.reps}}}'


def _columns(records, phase, repr=None, workers=None):
    return [r for r in records if r.phase == phase
            and (repr is None or r.repr == repr) and (workers is None or r.workers == workers)]


class BenchReport(object):
    """ All measurements of a benchmark run

    Every BFS and SSSP time belongs to one root and is the minimum over the timed
    repetitions. TEPS of a root is the number of traversed input edges divided by that time,
    where an input edge is traversed if its endpoints are reached. Each undirected edge counts
    once, repeated edges and self-loops count as generated (see `traversed_edges`).

    Parameters
    ----------
    records: list of BenchRecord
        the measurements
    num_vertices: int, optional
        number of vertices of the benchmarked graph
    num_edges: int, optional
        number of input edges of the benchmarked graph
    """

    def __init__(self, records, num_vertices=0, num_edges=0):
        self.records = list(records)
        self.num_vertices = int(num_vertices)
        self.num_edges = int(num_edges)

    def __len__(self):
        return len(self.records)

    @property
    def representations(self):
        return sorted(set(r.repr for r in self.records))

    @property
    def workers(self):
        return sorted(set(r.workers for r in self.records if r.phase == 'bfs'))

    @property
    def roots(self):
        return sorted(set(r.root for r in self.records if r.root is not None))

    def seconds(self, phase, repr=None, workers=None):
        """ Array of the recorded times of one phase """
        return np.array([r.seconds for r in _columns(self.records, phase, repr, workers)], dtype=np.float64)

    def teps(self, phase, repr=None, workers=None):
        return np.array([r.teps for r in _columns(self.records, phase, repr, workers)
                         if r.teps is not None], dtype=np.float64)

    def mean_time(self, repr, workers, phase='bfs'):
        t = self.seconds(phase, repr, workers)
        if len(t) == 0:
            raise DomainError(self.__class__.__name__ + f' has no {phase} times for {repr} with {workers} workers')
        return float(t.mean())

    def speedup(self, repr, workers):
        """ Speedup ``T(1) / T(workers)`` of the parallel BFS, T being the mean time over roots """
        return self.mean_time(repr, 1) / self.mean_time(repr, workers)

    def statistics(self, phase, repr, workers):
        """ Statistics over the per-root times of one configuration

        Parameters
        ----------
        phase: str
            one of `PHASES`
        repr: str
            graph representation
        workers: int
            worker count

        Returns
        -------
        dict
            ``min``, ``firstquartile``, ``median``, ``thirdquartile``, ``max``, ``mean``, ``stddev``
            of the times and ``hmean_teps``, the harmonic mean TEPS (None without TEPS values)
        """
        t = self.seconds(phase, repr, workers)
        if len(t) == 0:
            raise DomainError(self.__class__.__name__ + f' has no {phase} times for {repr} with {workers} workers')
        q1, med, q3 = np.percentile(t, [25, 50, 75])
        teps = self.teps(phase, repr, workers)
        teps = teps[teps > 0]
        return {'min': float(t.min()), 'firstquartile': float(q1), 'median': float(med),
                'thirdquartile': float(q3), 'max': float(t.max()), 'mean': float(t.mean()),
                'stddev': float(t.std(ddof=1)) if len(t) > 1 else 0.,
                'hmean_teps': float(hmean(teps)) if len(teps) > 0 else None}

    def summary(self):
        """ BFS summary per (representation, workers), rows keyed by `SUMMARY_HEADER` """
        rows = []
        for rep in self.representations:
            for w in sorted(set(r.workers for r in _columns(self.records, 'bfs', rep))):
                s = self.statistics('bfs', rep, w)
                rows.append({'repr': rep, 'workers': w, 'mean_seconds': s['mean'], 'min_seconds': s['min'],
                             'max_seconds': s['max'], 'speedup': self.speedup(rep, w),
                             'hmean_teps': s['hmean_teps']})
        return rows

    def write_csv(self, path):
        """ Write all records as CSV with header ``phase,repr,workers,root,seconds,teps`` """
        _write_rows(path, CSV_HEADER, [r._asdict() for r in self.records])

    def write_summary_csv(self, path):
        _write_rows(path, SUMMARY_HEADER, self.summary())

    @classmethod
    def read_csv(cls, path):
        """ Rebuild a report from the CSV written by `write_csv`

        Raises
        ------
        EdgeFileError
            if the file cannot be read
        ParseError
            if the header or a row is malformed
        """
        try:
            with open(path, 'r', newline='') as fh:
                rows = list(csv.reader(fh))
        except OSError as e:
            raise EdgeFileError(path, e.strerror or str(e)) from e
        if not rows or tuple(rows[0]) != CSV_HEADER:
            raise ParseError(path, 1, f'expected header {",".join(CSV_HEADER)}')
        records = []
        for i, row in enumerate(rows[1:]):
            if len(row) != len(CSV_HEADER) or row[0] not in PHASES:
                raise ParseError(path, i + 2, f'malformed row {row}')
            try:
                records.append(BenchRecord(row[0], row[1], int(row[2]),
                                           int(row[3]) if row[3] else None, float(row[4]),
                                           float(row[5]) if row[5] else None))
            except ValueError:
                raise ParseError(path, i + 2, f'malformed row {row}') from None
        return cls(records)

    def __str__(self):
        return self.__class__.__name__ + f'{{records: {len(self.records)}, repr: {self.representations}, ' \
            f'workers: {self.workers}}}'


def _fmt(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(path, header, rows):
    try:
        with open(path, 'w', newline='') as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(row[k]) for k in header])
    except OSError as e:
        raise EdgeFileError(path, e.strerror or str(e)) from e


def sample_roots(g, n, seed):
    """ Sample start vertices among the vertices with at least one neighbor

    Parameters
    ----------
    g: Graph
        the graph
    n: int
        number of roots
    seed: int
        seed of the sampling

    Raises
    ------
    DomainError
        if every vertex is isolated

    Returns
    -------
    list of int
        `n` distinct vertices, or `n` vertices drawn with replacement (with a warning)
        if fewer than `n` vertices have neighbors
    """
    candidates = np.flatnonzero(g.degrees() > 0)
    if len(candidates) == 0:
        raise DomainError('sample_roots(...) every vertex of the graph is isolated')
    rng = np.random.default_rng(seed)
    replace = len(candidates) < n
    if replace:
        warnings.warn(f'only {len(candidates)} non-isolated vertices for {n} roots, sampling with replacement')
    return rng.choice(candidates, size=n, replace=replace).tolist()


def traversed_edges(edges, reached):
    """ Number of input edges with a reached endpoint, each undirected edge counted once

    Both endpoints of an input edge are reached or none is, so checking the source suffices.
    """
    return int(np.count_nonzero(reached[edges.sources]))


def _best_of(fn, reps, check=None):
    """ Minimum wall time of `reps` calls of `fn` and the output of that call

    `check`, if given, is called untimed on the output of every call.
    """
    best = None
    out = None
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        r = fn()
        dt = time.perf_counter_ns() - t0
        if check is not None:
            check(r)
        if best is None or dt < best:
            best, out = dt, r
    return max(best * 1e-9, _MIN_SECONDS), out


def _checker(validate, edges, what):
    def check(result):
        report = validate(edges, result)
        if not report.passed:
            raise BenchmarkIntegrityError(report, what)
    return check


def run_bench(config, print_info=False):
    """ Run the benchmark described by `config`

    For every representation Kernel 1 is timed for each worker count. Roots are then sampled
    once and, for every root, the sequential BFS, the parallel BFS for each worker count and
    (optionally) the SSSP kernel are timed. Each measurement is the minimum of ``config.reps``
    runs, preceded by one untimed warm-up BFS per (representation, workers) pair.
    The output of every repetition is validated against the edge list, and the fastest
    one then enters the report. Generation, file I/O and validation are not timed.

    Parameters
    ----------
    config: BenchConfig
        benchmark settings
    print_info: bool, optional
        print one line per measurement

    Raises
    ------
    BenchmarkIntegrityError
        if a kernel output fails validation

    Returns
    -------
    BenchReport
    """
    edges = config.load_edges()
    records = []
    roots = None
    archive = None
    if config.archive is not None:
        from graphbench.ncsile import open_result_sile
        archive = open_result_sile(config.archive)

    if print_info:
        print(f'   run_bench: N={edges.num_vertices} M={edges.count} {config}')

    def record(phase, rep, w, root, seconds, reached=None):
        teps = None if reached is None else traversed_edges(edges, reached) / seconds
        records.append(BenchRecord(phase, rep, w, root, seconds, teps))
        if print_info:
            msg = f'   {phase:7s} {rep:6s} workers={w:<3d}'
            if root is not None:
                msg += f' root={root:<8d}'
            msg += f' {seconds:.6f} s'
            if teps is not None:
                msg += f' {teps:.4e} TEPS'
            print(msg)

    try:
        for rep in config.representations:
            g = None
            for w in config.workers:
                seconds, g = _best_of(lambda: build(edges, rep, w), config.reps)
                record('build', rep, w, None, seconds)

            if roots is None:
                roots = sample_roots(g, config.num_roots, config.root_seed)

            for root in roots:
                seconds, res = _best_of(lambda: bfs_sequential(g, root), config.reps,
                                        _checker(validate_bfs, edges, f'bfs_sequential({rep}, root={root})'))
                record('bfs_seq', rep, 1, root, seconds, res.reached)

            for w in config.workers:
                if config.warmup:
                    bfs_parallel(g, roots[0], workers=w, chunk_size=config.chunk_size)
                for root in roots:
                    check = _checker(validate_bfs, edges, f'bfs_parallel({rep}, workers={w}, root={root})')
                    seconds, res = _best_of(lambda: bfs_parallel(g, root, workers=w, chunk_size=config.chunk_size),
                                            config.reps, check)
                    record('bfs', rep, w, root, seconds, res.reached)
                    if archive is not None:
                        archive.write_result(edges, res)

            if config.sssp:
                for root in roots:
                    seconds, res = _best_of(lambda: sssp_dijkstra(g, root), config.reps,
                                            _checker(validate_sssp, edges, f'sssp_dijkstra({rep}, source={root})'))
                    record('sssp', rep, 1, root, seconds, res.reached)
                    if archive is not None:
                        archive.write_result(edges, res)
    finally:
        if archive is not None:
            archive.close()

    report = BenchReport(records, edges.num_vertices, edges.count)
    if config.out is not None:
        report.write_csv(config.out)
        if print_info:
            print(f'   run_bench: report written to {os.fspath(config.out)}')
    return report
