""" Text files holding one BFS or SSSP result

The first line is ``kind root N`` with ``kind`` either ``bfs`` or ``sssp``, followed by
exactly N lines: ``level parent`` for a BFS result, ``dist prev`` for an SSSP result.
Distances use the shortest decimal that reads back to the same float and ``inf``
for unreachable vertices.
"""
import numpy as np
from graphbench.errors import EdgeFileError, ParseError
from graphbench.edgeio import _read_lines
from graphbench.bfs import BfsResult
from graphbench.sssp import SsspResult

__all__ = ['write_result', 'read_result']


def write_result(path, result):
    """ Write a `BfsResult` or `SsspResult` to a text file

    Parameters
    ----------
    path: str or os.PathLike
        output file, overwritten if it exists
    result: BfsResult or SsspResult
        the result to store
    """
    if result.kind == 'bfs':
        body = ''.join(f'{l} {p}\n' for l, p in zip(result.level.tolist(), result.parent.tolist()))
    else:
        body = ''.join(f'{d!r} {p}\n' for d, p in zip(result.dist.tolist(), result.prev.tolist()))
    try:
        with open(path, 'w') as fh:
            fh.write(f'{result.kind} {result.root} {result.num_vertices}\n')
            fh.write(body)
    except OSError as e:
        raise EdgeFileError(path, e.strerror or str(e)) from e


def read_result(path):
    """ Read a result written by `write_result`

    Parameters
    ----------
    path: str or os.PathLike
        result file

    Raises
    ------
    EdgeFileError
        if the file cannot be read
    ParseError
        if a line is malformed or the number of lines does not match the header

    Returns
    -------
    BfsResult or SsspResult
    """
    lines = _read_lines(path)
    if not lines:
        raise ParseError(path, 1, 'missing header')

    tokens = lines[0].split()
    if len(tokens) != 3 or tokens[0] not in ('bfs', 'sssp'):
        raise ParseError(path, 1, f'expected "bfs|sssp root N", got {lines[0]!r}')
    kind = tokens[0]
    try:
        root, n = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise ParseError(path, 1, f'expected "bfs|sssp root N", got {lines[0]!r}') from None
    if n < 0:
        raise ParseError(path, 1, 'negative number of vertices')

    body = lines[1:]
    if len(body) != n:
        raise ParseError(path, min(len(body), n) + 2, f'header declares {n} vertices, file holds {len(body)}')

    first = np.empty(n, dtype=np.int64 if kind == 'bfs' else np.float64)
    second = np.empty(n, dtype=np.int64)
    convert = int if kind == 'bfs' else float
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(path, i + 2, f'expected two values, got {line!r}')
        try:
            first[i] = convert(tokens[0])
            second[i] = int(tokens[1])
        except (ValueError, OverflowError):
            raise ParseError(path, i + 2, f'expected two values, got {line!r}') from None

    if kind == 'bfs':
        return BfsResult(root, first, second)
    return SsspResult(root, first, second)
