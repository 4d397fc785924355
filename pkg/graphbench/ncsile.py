import os
import hashlib
import numpy as np
import sisl

from graphbench.bfs import BfsResult
from graphbench.sssp import SsspResult

__all__ = ['ncResultSile', 'open_result_sile']

_VARIABLES = {'bfs': (('level', 'i8', 'BFS level, -1 if unreached'),
                      ('parent', 'i8', 'BFS parent, -1 if unreached')),
              'sssp': (('dist', 'f8', 'Shortest path distance, inf if unreachable'),
                       ('prev', 'i8', 'Shortest path predecessor, -1 if unreachable or source'))}


class ncResultSile(sisl.SileCDF):
    """ Read and write `BfsResult` and `SsspResult` objects in binary files (netCDF4 support)

    Every result is stored in its own group, named by a short hash of the result kind,
    its root, and the edge list it was computed on. Storing a result again overwrites it.

    See Also
    ------------
    sisl.io.SileCDF : sisl class
    open_result_sile : open for appending, creating the file if needed
    """

    @staticmethod
    def _get_hash(edges, kind, root):
        s = f'kind={kind} root={int(root)} N={edges.num_vertices} M={edges.count} edges={edges.digest()}'
        return s, hashlib.md5(s.encode('utf-8')).hexdigest()[:7]

    def write_result(self, edges, result):
        """ Store a result computed on `edges`

        Parameters
        ----------
        edges: EdgeList
            edge list the result belongs to
        result: BfsResult or SsspResult
            the result to store
        """
        s, group = self._get_hash(edges, result.kind, result.root)
        g = self._crt_grp(self, group)
        g.info = s
        g.kind = result.kind
        g.root = result.root

        self._crt_dim(g, 'nv', result.num_vertices)
        for name, dtype, info in _VARIABLES[result.kind]:
            v = self._crt_var(g, name, dtype, ('nv',))
            v.info = info
            g.variables[name][:] = getattr(result, name)

    def read_result(self, edges, kind, root):
        """ Read a stored result

        Parameters
        ----------
        edges: EdgeList
            edge list the result belongs to
        kind: {'bfs', 'sssp'}
            result kind
        root: int
            root or source vertex

        Returns
        -------
        BfsResult or SsspResult or None
            ``None`` if no such result is stored
        """
        s, group = self._get_hash(edges, kind, root)
        if group not in self.groups:
            return None
        g = self.groups[group]
        first, second = (np.array(g.variables[name][:]) for name, _, _ in _VARIABLES[kind])
        if kind == 'bfs':
            return BfsResult(root, first, second)
        return SsspResult(root, first, second)


def open_result_sile(fn, mode='a'):
    """ Open `fn` as `ncResultSile`, mode ``'a'`` falls back to ``'w'`` for a new file """
    if mode == 'a' and not os.path.isfile(fn):
        mode = 'w'
    return ncResultSile(fn, mode=mode)
