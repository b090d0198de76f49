# stabsim -- Chart output
#
# For license information, see LICENSE.txt

"""
SVG line charts of cell summaries: mean cardinality against graph
size or against density, one line per algorithm.  Charts are
presentational only; the numbers behind them are in the CSV files.
"""

__docformat__ = 'epytext en'

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from stabsim import log
from stabsim.util import OutputError, StabsimError, make_parent_dirs

class ChartError(StabsimError):
    """Raised for empty input or an unknown x axis."""

X_AXES = {
    'size': ('n', 'Graph size (nodes)'),
    'density': ('density', 'Density (edge probability)'),
    }

def chart_series(summaries, x_axis):
    """
    Group C{summaries} into chart series.  There is one series per
    algorithm; if the summaries vary along the other axis too, there
    is one series per algorithm and value of that axis.

    @return: A list of C{(label, xs, ys)} triples, with C{xs}
        ascending and C{ys} the mean cardinalities.
    """
    if x_axis not in X_AXES:
        raise ChartError('unknown x axis %r; expected size or density' %
                         (x_axis,))
    if not summaries:
        raise ChartError('no summaries to chart')
    x_field = X_AXES[x_axis][0]
    other_field = (x_field == 'n') and 'density' or 'n'
    others = sorted(set(getattr(s, other_field) for s in summaries))
    groups = {}
    order = []
    for s in summaries:
        key = (s.algorithm, getattr(s, other_field))
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append((getattr(s, x_field), s.cardinality_mean))
    series = []
    for key in order:
        algorithm, other = key
        label = algorithm
        if len(others) > 1:
            label = '%s (%s=%r)' % (algorithm, other_field, other)
        points = sorted(groups[key])
        series.append((label, [x for (x, y) in points],
                       [y for (x, y) in points]))
    return series

def emit_chart(summaries, x_axis, path, title=None):
    """
    Draw the mean cardinality of C{summaries} against C{x_axis}
    (C{'size'} or C{'density'}) and write the chart to C{path} as SVG.
    A series with a single point is drawn as a marker without a line.
    The output is byte-identical for identical input.

    @return: The series drawn, as returned by L{chart_series}.
    @raise ChartError: If C{summaries} is empty or C{x_axis} is unknown.
    @raise OutputError: If C{path} can not be written.
    """
    series = chart_series(summaries, x_axis)
    matplotlib.rcParams['svg.hashsalt'] = 'stabsim'
    fig, ax = plt.subplots(figsize=(8, 5))
    try:
        for (label, xs, ys) in series:
            if len(xs) == 1:
                ax.plot(xs, ys, marker='o', linestyle='none', label=label)
            else:
                ax.plot(xs, ys, marker='o', markersize=3, label=label)
        ax.set_xlabel(X_AXES[x_axis][1])
        ax.set_ylabel('Cardinality (mean)')
        if title:
            ax.set_title(title)
        ax.legend()
        ax.grid(True, alpha=0.3)
        make_parent_dirs(path)
        try:
            fig.savefig(path, format='svg', metadata={'Date': None})
        except (IOError, OSError) as e:
            raise OutputError(path, e.strerror or e)
    finally:
        plt.close(fig)
    log.info('Wrote %d series to %s' % (len(series), path))
    return series
