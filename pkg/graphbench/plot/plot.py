import matplotlib.pyplot as plt

__all__ = ['Plot']


plt.rc('font', family='DejaVu Sans', size=14)


class Plot(object):
    """ Base class of the benchmark figures

    Parameters
    ----------
    figsize: tuple, optional
        figure size in inches
    figure: matplotlib.figure.Figure, optional
        draw into an existing figure with at most one axes
    """

    def __init__(self, **kwargs):
        figsize = kwargs.get('figsize', (8, 6))
        if 'figure' in kwargs:
            self.fig = kwargs['figure']
        else:
            self.fig = plt.figure(figsize=figsize)
        axes = self.fig.get_axes()
        if len(axes) == 0:
            self.axes = self.fig.add_subplot(1, 1, 1)
        else:
            self.axes = axes[0]

    def savefig(self, fn):
        """ Save figure to external file

        Parameters
        ----------
        fn: str
            external file name, the format follows its extension

        See Also
        ------------
        matplotlib.pyplot.savefig
        """
        self.fig.tight_layout()
        self.fig.savefig(fn)

    def close(self):
        """ Close figure """
        self.fig.clear()
        plt.close(self.fig)

    def set_title(self, title, fontsize=16):
        self.axes.set_title(title, size=fontsize)

    def set_xlabel(self, label, fontsize=14):
        self.axes.set_xlabel(label, fontsize=fontsize)

    def set_ylabel(self, label, fontsize=14):
        self.axes.set_ylabel(label, fontsize=fontsize)

    def set_xlim(self, xmin, xmax):
        self.axes.set_xlim(xmin, xmax)

    def set_ylim(self, ymin, ymax):
        self.axes.set_ylim(ymin, ymax)

    def legend(self, **kwargs):
        """ Add legend to the axes, repeated labels are shown once """
        handles, labels = self.axes.get_legend_handles_labels()
        first = {}
        for handle, label in zip(handles, labels):
            first.setdefault(label, handle)
        self.axes.legend(list(first.values()), list(first.keys()), **kwargs)
