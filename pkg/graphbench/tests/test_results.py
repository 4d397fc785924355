import numpy as np
import pytest

from graphbench.results import write_result, read_result
from graphbench.bfs import bfs_sequential
from graphbench.sssp import sssp_dijkstra
from graphbench.graph import build
from graphbench.errors import ParseError, EdgeFileError


def test_bfs_file(tmp_path, path_isolated):
    r = bfs_sequential(build(path_isolated), 1)
    fn = tmp_path / 'bfs.txt'
    write_result(fn, r)
    with open(fn) as fh:
        assert fh.read() == 'bfs 1 4\n1 1\n0 1\n1 1\n-1 -1\n'
    back = read_result(fn)
    assert back.kind == 'bfs' and back.root == 1
    assert np.array_equal(back.level, r.level)
    assert np.array_equal(back.parent, r.parent)


def test_sssp_file(tmp_path, kronecker):
    e = kronecker(6, 4, seed=1)
    r = sssp_dijkstra(build(e), 5)
    fn = tmp_path / 'sssp.txt'
    write_result(fn, r)
    back = read_result(fn)
    assert back.kind == 'sssp' and back.source == 5
    assert back.dist.tobytes() == r.dist.tobytes()
    assert np.array_equal(back.prev, r.prev)


def test_inf(tmp_path, path_isolated):
    fn = tmp_path / 'sssp.txt'
    write_result(fn, sssp_dijkstra(build(path_isolated), 0))
    with open(fn) as fh:
        assert fh.read().splitlines()[-1] == 'inf -1'


@pytest.mark.parametrize('text, lineno', [
    ('', 1),
    ('dfs 0 2\n0 0\n1 0\n', 1),
    ('bfs 0\n0 0\n1 0\n', 1),
    ('bfs 0 3\n0 0\n1 0\n', 4),
    ('bfs 0 2\n0 0\n1 x\n', 3),
    ('sssp 0 2\n0.0 -1\n1.5\n', 3),
])
def test_parse_errors(tmp_path, text, lineno):
    fn = tmp_path / 'bad.txt'
    with open(fn, 'w') as fh:
        fh.write(text)
    with pytest.raises(ParseError) as exc:
        read_result(fn)
    assert exc.value.lineno == lineno


def test_missing(tmp_path):
    with pytest.raises(EdgeFileError):
        read_result(tmp_path / 'none.txt')


def test_invalid_utf8(tmp_path):
    fn = tmp_path / 'bad.txt'
    fn.write_bytes(b'bfs 0 2\n0 0\n1 \xe9\n')
    with pytest.raises(ParseError) as exc:
        read_result(fn)
    assert exc.value.lineno == 3
