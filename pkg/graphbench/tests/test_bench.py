import csv
import time
import numpy as np
import pytest

import graphbench.bench as bench
from graphbench.bfs import BfsResult
from graphbench.graph import build
from graphbench.kronecker import GenParams, EdgeList
from graphbench.errors import DomainError, BenchmarkIntegrityError


def test_sample_roots_single_edge():
    g = build(EdgeList(6, [2], [4], [0.5]))
    assert bench.sample_roots(g, 1, seed=0)[0] in (2, 4)


def test_sample_roots_deterministic(kronecker):
    e = kronecker(10, 16, seed=0)
    g = build(e, 'csr')
    roots = bench.sample_roots(g, 64, seed=5)
    assert roots == bench.sample_roots(g, 64, seed=5)
    assert len(set(roots)) == 64
    assert np.all(g.degrees()[roots] > 0)


def test_sample_roots_few_candidates():
    g = build(EdgeList(6, [2], [4], [0.5]))
    with pytest.warns(UserWarning):
        roots = bench.sample_roots(g, 5, seed=0)
    assert len(roots) == 5
    assert set(roots) <= {2, 4}


def test_sample_roots_isolated():
    with pytest.raises(DomainError):
        bench.sample_roots(build(EdgeList(4, [], [], [])), 1, seed=0)


def test_config():
    with pytest.warns(UserWarning):
        c = bench.BenchConfig(GenParams(4), workers=[4, 2])
    assert c.workers == [1, 2, 4]
    assert bench.BenchConfig(GenParams(4), repr='both').representations == ('adjmap', 'csr')
    with pytest.raises(DomainError):
        bench.BenchConfig(GenParams(4), repr='matrix')
    with pytest.raises(DomainError):
        bench.BenchConfig(GenParams(4), workers=[0, 1])
    with pytest.raises(DomainError):
        bench.BenchConfig(GenParams(4), num_roots=0)


def test_run_bench(tmp_path):
    out = tmp_path / 'report.csv'
    config = bench.BenchConfig(GenParams(7, 8, seed=1), repr='both', workers=[1, 2], num_roots=4,
                               reps=1, out=out)
    report = bench.run_bench(config)

    assert report.representations == ['adjmap', 'csr']
    assert report.workers == [1, 2]
    assert len(report.roots) <= 4
    for rep in report.representations:
        assert report.speedup(rep, 1) == 1.
        assert len(report.seconds('build', rep)) == 2
        assert len(report.seconds('bfs', rep, 2)) == 4
        assert len(report.seconds('sssp', rep)) == 4
        teps = report.teps('bfs', rep)
        assert np.all(np.isfinite(teps)) and np.all(teps > 0)

    with open(out, newline='') as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == list(bench.CSV_HEADER)
    assert len(rows) == len(report) + 1
    build_rows = [r for r in rows[1:] if r[0] == 'build']
    assert all(r[3] == '' and r[5] == '' for r in build_rows)

    back = bench.BenchReport.read_csv(out)
    assert back.records == report.records


def test_summary(tmp_path):
    config = bench.BenchConfig(GenParams(6, 4, seed=2), workers=[1, 2], num_roots=3, reps=2, sssp=False)
    report = bench.run_bench(config)
    assert len(report.seconds('sssp')) == 0
    rows = report.summary()
    assert [(r['repr'], r['workers']) for r in rows] == [('adjmap', 1), ('adjmap', 2)]
    assert rows[0]['speedup'] == 1.
    assert rows[0]['min_seconds'] <= rows[0]['mean_seconds'] <= rows[0]['max_seconds']

    fn = tmp_path / 'summary.csv'
    report.write_summary_csv(fn)
    with open(fn, newline='') as fh:
        lines = list(csv.reader(fh))
    assert lines[0] == ['repr', 'workers', 'mean_seconds', 'min_seconds', 'max_seconds', 'speedup', 'hmean_teps']
    assert float(lines[1][5]) == 1.

    s = report.statistics('bfs', 'adjmap', 2)
    assert s['min'] <= s['firstquartile'] <= s['median'] <= s['thirdquartile'] <= s['max']
    assert s['hmean_teps'] > 0


def test_traversed_edges(messy):
    reached = np.array([True] * 6 + [False])
    assert bench.traversed_edges(messy, reached) == messy.count
    reached[:] = False
    assert bench.traversed_edges(messy, reached) == 0


def test_integrity(monkeypatch):
    def broken(g, root, workers=1, chunk_size=None):
        level = np.zeros(g.num_vertices, dtype=np.int64)
        return BfsResult(root, level, np.full(g.num_vertices, root))

    monkeypatch.setattr(bench, 'bfs_parallel', broken)
    config = bench.BenchConfig(GenParams(5, 4, seed=0), num_roots=2, reps=1, warmup=False)
    with pytest.raises(BenchmarkIntegrityError) as exc:
        bench.run_bench(config)
    assert not exc.value.report.passed


def test_best_of_checks_every_rep():
    seen = []
    seconds, out = bench._best_of(lambda: len(seen), 4, seen.append)
    assert seen == [0, 1, 2, 3]
    assert seconds > 0 and out in seen


def test_integrity_slow_rep(monkeypatch):
    real = bench.bfs_parallel
    calls = []

    def flaky(g, root, workers=1, chunk_size=None):
        calls.append(root)
        r = real(g, root, workers=workers, chunk_size=chunk_size)
        if len(calls) == 2:
            # Slowest repetition, with a wrong level for the root
            time.sleep(0.05)
            level = r.level.copy()
            level[root] = 1
            return BfsResult(root, level, r.parent)
        return r

    monkeypatch.setattr(bench, 'bfs_parallel', flaky)
    config = bench.BenchConfig(GenParams(5, 4, seed=0), num_roots=1, reps=3, warmup=False, sssp=False)
    with pytest.raises(BenchmarkIntegrityError) as exc:
        bench.run_bench(config)
    assert 'bfs_parallel' in str(exc.value)
    assert len(calls) == 2


def test_archive(tmp_path):
    pytest.importorskip('netCDF4')
    pytest.importorskip('sisl')
    from graphbench.ncsile import ncResultSile

    params = GenParams(5, 4, seed=3)
    fn = str(tmp_path / 'bench.nc')
    report = bench.run_bench(bench.BenchConfig(params, num_roots=2, reps=1, archive=fn))
    edges = bench.BenchConfig(params).load_edges()
    fh = ncResultSile(fn, mode='r')
    for root in report.roots:
        assert fh.read_result(edges, 'bfs', root) is not None
        assert fh.read_result(edges, 'sssp', root) is not None
    fh.close()


def test_print_info(capsys):
    bench.run_bench(bench.BenchConfig(GenParams(4, 4, seed=0), num_roots=1, reps=1), print_info=True)
    out = capsys.readouterr().out
    assert 'run_bench' in out
    assert 'TEPS' in out
