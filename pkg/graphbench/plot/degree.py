from graphbench.plot import Plot
from graphbench.kronecker import degree_histogram

__all__ = ['DegreeDistribution']


class DegreeDistribution(Plot):
    """ Log-log histogram of the vertex degrees of an edge list

    Isolated vertices are left out.

    Parameters
    ----------
    edges: EdgeList
        the edge list
    """

    def __init__(self, edges, **kwargs):

        super().__init__(**kwargs)
        hist = degree_histogram(edges)
        self.degrees = sorted(d for d in hist if d > 0)
        self.counts = [hist[d] for d in self.degrees]
        self.axes.loglog(self.degrees, self.counts, '.', label=f'N={edges.num_vertices}, M={edges.count}')
        self.set_xlabel('degree')
        self.set_ylabel('number of vertices')
        self.legend()
