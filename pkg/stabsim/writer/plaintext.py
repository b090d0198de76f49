# stabsim -- Plaintext output generation
#
# For license information, see LICENSE.txt

"""
Plaintext rendering of cell summaries.
"""

__docformat__ = 'epytext en'

class TableWriter(object):
    """
    Renders L{CellSummary<stabsim.experiment.CellSummary>}s as a
    fixed-width table with one line per C{(n, density)} and, for each
    algorithm, a cardinality column (mean with its percentage of C{n})
    and a convergence column (mean moves):

        >>> print(format_table(summaries))      # doctest: +SKIP
            n  density  md2is cardinality  md2is moves ...
         1000    0.001     601.8 (60.18%)        400.2 ...
    """
    def write(self, summaries):
        algorithms = []
        cells = {}
        for s in summaries:
            if s.algorithm not in algorithms:
                algorithms.append(s.algorithm)
            cells[s.n, s.density, s.algorithm] = s
        header = ['n', 'density']
        for algo in algorithms:
            header += ['%s cardinality' % algo, '%s moves' % algo]
        lines = [header]
        for (n, density) in sorted(set((s.n, s.density) for s in summaries)):
            line = ['%d' % n, repr(density)]
            for algo in algorithms:
                s = cells.get((n, density, algo))
                if s is None:
                    line += ['-', '-']
                else:
                    line += ['%.1f (%.2f%%)' % (s.cardinality_mean,
                                                s.cardinality_pct),
                             '%.1f' % s.moves_mean]
            lines.append(line)
        widths = [max(len(line[i]) for line in lines)
                  for i in range(len(header))]
        result = []
        out = result.append
        for line in lines:
            out('  '.join([cell.rjust(w) for (cell, w) in zip(line, widths)]))
            out('\n')
        return ''.join(result)

def format_table(summaries):
    """
    @return: The text table for C{summaries}; see L{TableWriter}.
    """
    return TableWriter().write(summaries)
