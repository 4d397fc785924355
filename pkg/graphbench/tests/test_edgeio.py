import numpy as np
import pytest

from graphbench.kronecker import GenParams, EdgeList, generate
from graphbench.edgeio import write_edge_file, read_edge_file, read_edge_header
from graphbench.errors import EdgeFileError, ParseError, GraphValidationError


def test_round_trip_random(tmp_path, random_edges):
    rng = np.random.default_rng(7)
    fn = tmp_path / 'edges.txt'
    for _ in range(50):
        n = int(rng.integers(1, 200))
        e = random_edges(rng, n, int(rng.integers(0, 500)))
        write_edge_file(fn, e)
        assert read_edge_file(fn) == e


def test_round_trip_awkward_weights(tmp_path):
    w = [0.1, 1e-300, 5e-324, 1. / 3, 0.9999999999999999, 0., 2.5e10]
    e = EdgeList(3, [0] * len(w), [1, 2, 0, 0, 1, 2, 2], w)
    write_edge_file(tmp_path / 'w.txt', e)
    assert read_edge_file(tmp_path / 'w.txt').weights.tobytes() == e.weights.tobytes()


def test_header(tmp_path):
    fn = tmp_path / 'kronecker.txt'
    e = generate(GenParams(4, 16, seed=1))
    write_edge_file(fn, e)
    with open(fn) as fh:
        lines = fh.read().splitlines()
    assert lines[0] == '16 256 1'
    assert len(lines) == 257
    h = read_edge_header(fn)
    assert (h.num_vertices, h.num_edges, h.format_version) == (16, 256, 1)


def test_empty(tmp_path):
    e = EdgeList(3, [], [], [])
    write_edge_file(tmp_path / 'e.txt', e)
    assert read_edge_file(tmp_path / 'e.txt') == e


def _write(path, text):
    with open(path, 'w') as fh:
        fh.write(text)
    return path


@pytest.mark.parametrize('text, lineno', [
    ('', 1),
    ('3 2\n0 1 0.5\n1 2 0.5\n', 1),
    ('3 2 2\n0 1 0.5\n1 2 0.5\n', 1),
    ('a 2 1\n0 1 0.5\n1 2 0.5\n', 1),
    ('3 2 1\n0 1 0.5\n1 2\n', 3),
    ('3 2 1\n0 x 0.5\n1 2 0.5\n', 2),
    ('3 2 1\n0 1 0.5\n1 2 nope\n', 3),
])
def test_parse_errors(tmp_path, text, lineno):
    fn = _write(tmp_path / 'bad.txt', text)
    with pytest.raises(ParseError) as exc:
        read_edge_file(fn)
    assert exc.value.lineno == lineno
    assert f':{lineno}:' in str(exc.value)


def test_count_mismatch(tmp_path):
    fn = _write(tmp_path / 'bad.txt', '3 3 1\n0 1 0.5\n1 2 0.5\n')
    with pytest.raises(GraphValidationError):
        read_edge_file(fn)


def test_endpoint_range(tmp_path):
    fn = _write(tmp_path / 'bad.txt', '3 2 1\n0 1 0.5\n1 3 0.5\n')
    with pytest.raises(GraphValidationError):
        read_edge_file(fn)


def test_missing_file(tmp_path):
    with pytest.raises(EdgeFileError) as exc:
        read_edge_file(tmp_path / 'missing.txt')
    assert isinstance(exc.value, OSError)
    with pytest.raises(EdgeFileError):
        write_edge_file(tmp_path / 'no' / 'such' / 'dir.txt', EdgeList(1, [], [], []))


def test_invalid_utf8(tmp_path):
    fn = tmp_path / 'bad.txt'
    fn.write_bytes(b'2 1 1\n0 1 \xff\xfe\n')
    with pytest.raises(ParseError) as exc:
        read_edge_file(fn)
    assert exc.value.lineno == 2
    assert read_edge_header(fn).num_edges == 1

    fn.write_bytes(b'\xff 1 1\n0 1 0.5\n')
    with pytest.raises(ParseError) as exc:
        read_edge_header(fn)
    assert exc.value.lineno == 1


def test_exact_text(tmp_path):
    fn = tmp_path / 'e.txt'
    write_edge_file(fn, EdgeList(2, [0], [1], [0.5]))
    assert fn.read_text() == '2 1 1\n0 1 0.5\n'
    write_edge_file(fn, EdgeList(4, [], [], []))
    assert fn.read_text() == '4 0 1\n'
    e = read_edge_file(fn)
    assert (e.num_vertices, e.count) == (4, 0)
