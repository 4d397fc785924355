import numpy as np
from graphbench.errors import EdgeFileError, ParseError, GraphValidationError
from graphbench.kronecker import EdgeList

__all__ = ['EdgeFileHeader', 'write_edge_file', 'read_edge_file', 'read_edge_header',
           'DEFAULT_EDGE_FILE', 'FORMAT_VERSION']

DEFAULT_EDGE_FILE = 'kronecker.txt'
FORMAT_VERSION = 1


class EdgeFileHeader(object):
    """ First line of an edge file: ``num_vertices num_edges format_version``

    Parameters
    ----------
    num_vertices: int
        number of vertices N
    num_edges: int
        number of edge lines following the header
    format_version: int, optional
        version of the file layout
    """

    def __init__(self, num_vertices, num_edges, format_version=FORMAT_VERSION):
        self.num_vertices = int(num_vertices)
        self.num_edges = int(num_edges)
        self.format_version = int(format_version)

    def __str__(self):
        return f'{self.num_vertices} {self.num_edges} {self.format_version}'

    @classmethod
    def parse(cls, line, path='<string>'):
        """ Parse a header line, raising `ParseError` on line 1 if it is malformed """
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(path, 1, f'header must hold 3 integers, got {line.strip()!r}')
        try:
            n, m, version = (int(t) for t in tokens)
        except ValueError:
            raise ParseError(path, 1, f'header must hold 3 integers, got {line.strip()!r}') from None
        if n < 0 or m < 0:
            raise ParseError(path, 1, 'header counts must be non-negative')
        if version != FORMAT_VERSION:
            raise ParseError(path, 1, f'unsupported format version {version}')
        return cls(n, m, version)


def write_edge_file(path, edges):
    """ Write an edge list to a text file

    The file holds the header line ``N M 1`` followed by exactly M lines ``u v w``.
    Weights are written with the shortest decimal representation that parses back to the
    identical float, so that ``read_edge_file(write_edge_file(e)) == e`` bit by bit.
    Edge order is preserved.

    Parameters
    ----------
    path: str or os.PathLike
        output file, overwritten if it exists
    edges: EdgeList
        edge list to store

    Raises
    ------
    EdgeFileError
        if the file cannot be written
    """
    header = EdgeFileHeader(edges.num_vertices, edges.count)
    # repr(float) is the shortest round-trip representation
    body = ''.join(f'{u} {v} {w!r}\n' for u, v, w in edges)
    try:
        with open(path, 'w') as fh:
            fh.write(f'{header}\n')
            fh.write(body)
    except OSError as e:
        raise EdgeFileError(path, e.strerror or str(e)) from e


def _decode(path, lineno, line):
    try:
        return line.decode('utf-8')
    except UnicodeDecodeError:
        raise ParseError(path, lineno, f'line is not UTF-8 text: {line!r}') from None


def _read_lines(path):
    """ Lines of a text file without line ends, `ParseError` on the first line that is not UTF-8 """
    try:
        with open(path, 'rb') as fh:
            raw = fh.read().split(b'\n')
    except OSError as e:
        raise EdgeFileError(path, e.strerror or str(e)) from e
    # A trailing newline leaves one empty string at the end
    if raw and raw[-1] == b'':
        raw.pop()
    return [_decode(path, i + 1, line) for i, line in enumerate(raw)]


def read_edge_header(path):
    """ Read only the header of an edge file

    Parameters
    ----------
    path: str or os.PathLike
        edge file

    Returns
    -------
    EdgeFileHeader
    """
    try:
        with open(path, 'rb') as fh:
            line = fh.readline()
    except OSError as e:
        raise EdgeFileError(path, e.strerror or str(e)) from e
    return EdgeFileHeader.parse(_decode(path, 1, line), path)


def read_edge_file(path):
    """ Read an edge list written by `write_edge_file`

    Parameters
    ----------
    path: str or os.PathLike
        edge file

    Raises
    ------
    EdgeFileError
        if the file cannot be read
    ParseError
        if a line is malformed or not UTF-8 text (the line number is reported)
    GraphValidationError
        if an endpoint is outside ``[0, N)`` or the number of edge lines differs from the header

    Returns
    -------
    EdgeList
        edges in file order
    """
    lines = _read_lines(path)
    if not lines:
        raise ParseError(path, 1, 'missing header')
    header = EdgeFileHeader.parse(lines[0], path)

    body = lines[1:]
    if len(body) != header.num_edges:
        raise GraphValidationError(f'read_edge_file({path}) header declares {header.num_edges} edges, '
                                   f'file holds {len(body)}')

    m = len(body)
    src = np.empty(m, dtype=np.int64)
    dst = np.empty(m, dtype=np.int64)
    w = np.empty(m, dtype=np.float64)
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(path, i + 2, f'expected "u v w", got {line!r}')
        try:
            src[i] = int(tokens[0])
            dst[i] = int(tokens[1])
            w[i] = float(tokens[2])
        except (ValueError, OverflowError):
            raise ParseError(path, i + 2, f'expected "u v w", got {line!r}') from None

    n = header.num_vertices
    bad = np.flatnonzero((src < 0) | (src >= n) | (dst < 0) | (dst >= n))
    if len(bad) > 0:
        i = bad[0]
        raise GraphValidationError(f'read_edge_file({path}) line {i + 2}: edge ({src[i]}, {dst[i]}) '
                                   f'has an endpoint outside [0, {n})')
    return EdgeList(n, src, dst, w)
