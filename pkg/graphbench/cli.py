""" Command line interface: ``graphbench <command> [options]``

The commands follow the benchmark pipeline: ``generate`` an edge file, ``build`` a graph
from it, run ``bfs`` or ``sssp`` from one vertex, ``validate`` a saved result, run the
whole ``bench`` harness and ``plot`` its report.
"""
import argparse
import os
import sys
import time

from graphbench.errors import (GraphbenchError, EdgeFileError, ParseError, VertexBoundsError, DomainError,
                               CapacityError, GraphValidationError, BenchmarkIntegrityError)
from graphbench.kronecker import GenParams, generate
from graphbench.edgeio import DEFAULT_EDGE_FILE, write_edge_file, read_edge_file, read_edge_header
from graphbench.graph import REPRESENTATIONS, build
from graphbench.bfs import bfs_sequential, bfs_parallel
from graphbench.sssp import sssp_dijkstra
from graphbench.validation import validate
from graphbench.results import write_result, read_result
from graphbench.bench import BenchConfig, run_bench

__all__ = ['main', 'EXIT_OK', 'EXIT_ERROR', 'EXIT_USAGE', 'EXIT_FILE', 'EXIT_PARSE', 'EXIT_INPUT',
           'EXIT_INVALID', 'WORKERS_ENV']

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_FILE = 3
EXIT_PARSE = 4
EXIT_INPUT = 5
EXIT_INVALID = 6

WORKERS_ENV = 'GRAPHBENCH_WORKERS'

# First match wins
_STATUS = ((EdgeFileError, EXIT_FILE),
           (ParseError, EXIT_PARSE),
           (BenchmarkIntegrityError, EXIT_INVALID),
           ((VertexBoundsError, DomainError, CapacityError, GraphValidationError), EXIT_INPUT))

_EPILOG = f"""exit status:
  {EXIT_OK}  success
  {EXIT_ERROR}  other error
  {EXIT_USAGE}  usage error (unknown flag, bad value)
  {EXIT_FILE}  file cannot be read or written
  {EXIT_PARSE}  malformed file content
  {EXIT_INPUT}  vertex out of range, invalid parameter or input data
  {EXIT_INVALID}  a result failed validation

environment:
  {WORKERS_ENV}  default for --workers (a comma separated list for bench)
"""


def _version():
    try:
        from graphbench.info import version
    except ImportError:
        version = 'unknown'
    return version


def _int_list(s):
    try:
        values = [int(x) for x in s.split(',') if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a comma separated list of integers, got {s!r}') from None
    if len(values) == 0 or min(values) < 1:
        raise argparse.ArgumentTypeError(f'expected positive integers, got {s!r}')
    return values


def _positive(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected an integer, got {s!r}') from None
    if v < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {s!r}')
    return v


def _initiator(s):
    try:
        values = tuple(float(x) for x in s.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a,b,c,d, got {s!r}') from None
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f'expected four probabilities a,b,c,d, got {s!r}')
    return values


def _env_workers(parser, as_list):
    """ Default of --workers from the environment, None if unset """
    value = os.environ.get(WORKERS_ENV)
    if value is None or value.strip() == '':
        return None
    try:
        workers = _int_list(value)
    except argparse.ArgumentTypeError as e:
        parser.error(f'{WORKERS_ENV}: {e}')
    if not as_list:
        if len(workers) != 1:
            parser.error(f'{WORKERS_ENV}: expected a single worker count, got {value!r}')
        return workers[0]
    return workers


def _print_report(report):
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_INVALID


def _archive(path, edges, result):
    from graphbench.ncsile import open_result_sile
    fh = open_result_sile(path)
    try:
        fh.write_result(edges, result)
    finally:
        fh.close()


def cmd_generate(args):
    params = GenParams(args.scale, args.edgefactor, args.seed, initiator=args.initiator,
                       permutation_seed=args.permutation_seed)
    t0 = time.perf_counter()
    edges = generate(params)
    dt = time.perf_counter() - t0
    write_edge_file(args.out, edges)
    print(f'generated N={edges.num_vertices} M={edges.count} in {dt:.3f} s -> {args.out}')
    return EXIT_OK


def cmd_build(args):
    edges = read_edge_file(args.input)
    t0 = time.perf_counter_ns()
    g = build(edges, args.repr, args.workers)
    dt = (time.perf_counter_ns() - t0) * 1e-9
    deg = g.degrees()
    print(f'{args.repr} graph built with {args.workers} worker(s) in {dt:.6f} s')
    print(f'vertices {g.num_vertices}, input edges {g.num_edges_input}, adjacency entries {g.num_entries}')
    print(f'isolated vertices {int((deg == 0).sum())}, max degree {int(deg.max()) if len(deg) > 0 else 0}')
    return EXIT_OK


def cmd_bfs(args):
    edges = read_edge_file(args.input)
    g = build(edges, args.repr, args.workers)
    t0 = time.perf_counter_ns()
    if args.parallel:
        res = bfs_parallel(g, args.root, workers=args.workers)
    else:
        res = bfs_sequential(g, args.root)
    dt = (time.perf_counter_ns() - t0) * 1e-9
    print(f'bfs root {res.root}: reached {res.num_reached} of {res.num_vertices} vertices, '
          f'depth {res.depth}, {dt:.6f} s')
    if args.out is not None:
        write_result(args.out, res)
    report = validate(edges, res)
    if args.archive is not None and report.passed:
        _archive(args.archive, edges, res)
    return _print_report(report)


def cmd_sssp(args):
    edges = read_edge_file(args.input)
    g = build(edges, args.repr, args.workers)
    t0 = time.perf_counter_ns()
    res = sssp_dijkstra(g, args.source, method='linear' if args.linear else 'heap')
    dt = (time.perf_counter_ns() - t0) * 1e-9
    reached = res.dist[res.reached]
    print(f'sssp source {res.source}: reached {res.num_reached} of {res.num_vertices} vertices, '
          f'max distance {reached.max():.6g}, {dt:.6f} s')
    if args.out is not None:
        write_result(args.out, res)
    report = validate(edges, res)
    if args.archive is not None and report.passed:
        _archive(args.archive, edges, res)
    return _print_report(report)


def cmd_validate(args):
    header = read_edge_header(args.input)
    res = read_result(args.result)
    if res.num_vertices != header.num_vertices:
        raise GraphValidationError(f'result holds {res.num_vertices} vertices, '
                                   f'{args.input} declares {header.num_vertices}')
    edges = read_edge_file(args.input)
    report = validate(edges, res)
    if args.csv is not None:
        report.write_csv(args.csv)
    return _print_report(report)


def cmd_bench(args):
    if args.input is not None:
        source = args.input
    else:
        source = GenParams(args.scale, args.edgefactor, args.seed)
    config = BenchConfig(source, repr=args.repr, workers=args.workers, num_roots=args.roots,
                         root_seed=args.root_seed, out=args.out, reps=args.reps, sssp=not args.no_sssp,
                         archive=args.archive)
    report = run_bench(config, print_info=args.verbose)

    stem, _ = os.path.splitext(args.out)
    summary = stem + '_summary.csv'
    report.write_summary_csv(summary)
    print('repr    workers  mean_seconds  speedup  hmean_teps')
    for row in report.summary():
        teps = '' if row['hmean_teps'] is None else f"{row['hmean_teps']:.4e}"
        print(f"{row['repr']:7s} {row['workers']:7d}  {row['mean_seconds']:12.6f}  {row['speedup']:7.3f}  {teps}")
    print(f'report written to {args.out} and {summary}')
    return EXIT_OK


def cmd_plot(args):
    import matplotlib
    matplotlib.use('Agg')
    from graphbench import plot
    from graphbench.bench import BenchReport

    if args.kind == 'degree':
        p = plot.DegreeDistribution(read_edge_file(args.input))
    elif args.kind == 'speedup':
        p = plot.Speedup(BenchReport.read_csv(args.input))
    else:
        p = plot.ExecutionTime(BenchReport.read_csv(args.input), phase=args.phase)
    p.savefig(args.out)
    p.close()
    print(f'{args.kind} plot written to {args.out}')
    return EXIT_OK


def _parser():
    p = argparse.ArgumentParser(prog='graphbench', description=__doc__.split('\n\n')[0].strip(),
                                epilog=_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--version', action='version', version=f'%(prog)s {_version()}')
    sub = p.add_subparsers(dest='command', metavar='command')
    sub.required = True

    def add(name, func, help):
        s = sub.add_parser(name, help=help, epilog=_EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
        s.set_defaults(func=func)
        return s

    s = add('generate', cmd_generate, 'generate a Kronecker edge file')
    s.add_argument('--scale', type=int, required=True, help='log2 of the number of vertices')
    s.add_argument('--edgefactor', type=int, default=16, help='edges per vertex (default 16)')
    s.add_argument('--seed', type=int, default=0, help='random seed (default 0)')
    s.add_argument('--initiator', type=_initiator, default=(0.57, 0.19, 0.19, 0.05),
                   help='quadrant probabilities a,b,c,d (default 0.57,0.19,0.19,0.05)')
    s.add_argument('--permutation-seed', type=int, default=None, help='separate seed of the vertex permutation')
    s.add_argument('--out', default=DEFAULT_EDGE_FILE, help=f'edge file (default {DEFAULT_EDGE_FILE})')

    def graph_args(s):
        s.add_argument('--in', dest='input', required=True, help='edge file')
        s.add_argument('--repr', choices=REPRESENTATIONS, default='adjmap', help='graph representation (default adjmap)')
        s.add_argument('--workers', type=_positive, default=None, help='worker threads (default 1)')

    s = add('build', cmd_build, 'build a graph and report its statistics')
    graph_args(s)

    s = add('bfs', cmd_bfs, 'breadth-first search from one vertex')
    graph_args(s)
    s.add_argument('--root', type=int, required=True, help='start vertex')
    s.add_argument('--parallel', action='store_true', help='use the level-synchronized parallel kernel')
    s.add_argument('--out', default=None, help='write the result to this text file')
    s.add_argument('--archive', default=None, help='append the validated result to this netCDF file')

    s = add('sssp', cmd_sssp, 'shortest paths from one vertex')
    graph_args(s)
    s.add_argument('--source', type=int, required=True, help='start vertex')
    s.add_argument('--linear', action='store_true', help='linear-scan minimum extraction instead of a heap')
    s.add_argument('--out', default=None, help='write the result to this text file')
    s.add_argument('--archive', default=None, help='append the validated result to this netCDF file')

    s = add('validate', cmd_validate, 'validate a saved bfs/sssp result')
    s.add_argument('--in', dest='input', required=True, help='edge file the result was computed on')
    s.add_argument('--result', required=True, help='result file written by bfs/sssp --out')
    s.add_argument('--csv', default=None, help='write the checks as CSV')

    s = add('bench', cmd_bench, 'run the benchmark harness')
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument('--in', dest='input', default=None, help='edge file')
    src.add_argument('--scale', type=int, default=None, help='generate a graph of this scale instead')
    s.add_argument('--edgefactor', type=int, default=16, help='edges per vertex with --scale (default 16)')
    s.add_argument('--seed', type=int, default=0, help='generator seed with --scale (default 0)')
    s.add_argument('--repr', choices=REPRESENTATIONS + ('both',), default='adjmap',
                   help='graph representation(s) (default adjmap)')
    s.add_argument('--workers', type=_int_list, default=None, help='worker counts, e.g. 1,2,4,8 (default 1)')
    s.add_argument('--roots', type=_positive, default=64, help='number of start vertices (default 64)')
    s.add_argument('--root-seed', type=int, default=0, help='seed of the root sampling (default 0)')
    s.add_argument('--reps', type=_positive, default=3, help='timed repetitions, minimum kept (default 3)')
    s.add_argument('--no-sssp', action='store_true', help='skip the shortest path kernel')
    s.add_argument('--archive', default=None, help='store every validated result in this netCDF file')
    s.add_argument('--out', default='report.csv', help='report CSV (default report.csv)')
    s.add_argument('--verbose', action='store_true', help='print every measurement')

    s = add('plot', cmd_plot, 'plot a benchmark report or a degree distribution')
    s.add_argument('--in', dest='input', required=True, help='report CSV, or an edge file with --kind degree')
    s.add_argument('--out', required=True, help='figure file, format from its extension')
    s.add_argument('--kind', choices=('time', 'speedup', 'degree'), default='time', help='figure (default time)')
    s.add_argument('--phase', choices=('bfs', 'build', 'bfs_seq', 'sssp'), default='bfs',
                   help='phase of the time figure (default bfs)')
    return p


def main(argv=None):
    """ Run the command line interface

    Parameters
    ----------
    argv: list of str, optional
        arguments without the program name, defaults to ``sys.argv[1:]``

    Returns
    -------
    int
        the exit status
    """
    parser = _parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, 'workers', 'unset') is None:
            args.workers = _env_workers(parser, as_list=args.command == 'bench') or (
                [1] if args.command == 'bench' else 1)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        return args.func(args)
    except GraphbenchError as e:
        status = next((s for cls, s in _STATUS if isinstance(e, cls)), EXIT_ERROR)
        print(f'graphbench {args.command}: error: {e}', file=sys.stderr)
        return status
    except Exception as e:
        print(f'graphbench {args.command}: error: {e.__class__.__name__}: {e}', file=sys.stderr)
        return EXIT_ERROR
