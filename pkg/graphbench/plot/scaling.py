import numpy as np
from graphbench.plot import Plot

__all__ = ['ExecutionTime', 'Speedup']


class ExecutionTime(Plot):
    """ Mean time of one phase versus the number of workers, per representation

    Error bars span the fastest and slowest root.

    Parameters
    ----------
    report: BenchReport
        benchmark report, e.g. from `BenchReport.read_csv`
    phase: {'bfs', 'build'}, optional
        the phase to plot
    logy: bool, optional
        logarithmic time axis
    """

    def __init__(self, report, phase='bfs', logy=False, **kwargs):

        super().__init__(**kwargs)
        for rep in report.representations:
            workers = sorted(set(r.workers for r in report.records if r.phase == phase and r.repr == rep))
            if len(workers) == 0:
                continue
            t = [report.seconds(phase, rep, w) for w in workers]
            mean = np.array([x.mean() for x in t])
            lo = mean - np.array([x.min() for x in t])
            hi = np.array([x.max() for x in t]) - mean
            self.axes.errorbar(workers, mean, yerr=[lo, hi], marker='o', capsize=3, label=rep)
        if logy:
            self.axes.set_yscale('log')
        self.axes.set_xscale('log', base=2)
        self.set_xlabel('workers')
        self.set_ylabel(f'{phase} time (s)')
        self.legend()


class Speedup(Plot):
    """ Parallel BFS speedup versus the number of workers, per representation

    The dashed line is the ideal linear speedup.

    Parameters
    ----------
    report: BenchReport
        benchmark report
    """

    def __init__(self, report, **kwargs):

        super().__init__(**kwargs)
        wmax = 1
        for rep in report.representations:
            workers = sorted(set(r.workers for r in report.records if r.phase == 'bfs' and r.repr == rep))
            if len(workers) == 0:
                continue
            self.axes.plot(workers, [report.speedup(rep, w) for w in workers], marker='o', label=rep)
            wmax = max(wmax, workers[-1])
        self.axes.plot([1, wmax], [1, wmax], 'k--', lw=1, label='linear')
        self.set_xlabel('workers')
        self.set_ylabel('speedup')
        self.legend()
