""" Exceptions raised by the graphbench kernels, file readers and harness

Every error derives from `GraphbenchError` and from the builtin exception
closest in meaning, so callers may catch either one.
"""

__all__ = ['GraphbenchError', 'CapacityError', 'EdgeFileError', 'ParseError',
           'GraphValidationError', 'VertexBoundsError', 'DomainError',
           'ConsistencyError', 'BenchmarkIntegrityError']


class GraphbenchError(Exception):
    """ Base class for all graphbench errors """


class CapacityError(GraphbenchError, OverflowError):
    """ The requested graph does not fit in the edge-count representation """


class EdgeFileError(GraphbenchError, OSError):
    """ Reading or writing a file failed

    Parameters
    ----------
    path: str
        file that could not be accessed
    reason: str, optional
        description of the underlying failure
    """

    def __init__(self, path, reason=''):
        self.path = str(path)
        msg = f'cannot access {self.path}'
        if reason:
            msg += f': {reason}'
        super().__init__(msg)


class ParseError(GraphbenchError, ValueError):
    """ A line of a text file is malformed

    Parameters
    ----------
    path: str
        file being parsed
    lineno: int
        1-based line number of the offending line
    reason: str
        what is wrong with the line
    """

    def __init__(self, path, lineno, reason):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f'{self.path}:{lineno}: {reason}')


class GraphValidationError(GraphbenchError, ValueError):
    """ Input data violates its declared structure (ranges, counts, lengths) """


class VertexBoundsError(GraphbenchError, IndexError):
    """ A vertex id lies outside ``[0, N)`` """


class DomainError(GraphbenchError, ValueError):
    """ A value-level precondition does not hold """


class ConsistencyError(GraphbenchError, RuntimeError):
    """ Partial results computed in parallel disagree with each other """


class BenchmarkIntegrityError(GraphbenchError, RuntimeError):
    """ A timed kernel produced an output that failed validation

    Parameters
    ----------
    report: ValidationReport
        the failing report
    what: str
        description of the run that produced the output
    """

    def __init__(self, report, what=''):
        self.report = report
        failed = ', '.join(c.name for c in report.failed_checks())
        super().__init__(f'{what} failed validation [{failed}]')
