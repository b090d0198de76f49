# stabsim -- CSV output
#
# For license information, see LICENSE.txt

"""
CSV files for experiment rows, cell summaries and execution traces.

All files are ascii with a header line and one record per line.
Numbers are written without locale formatting: densities and means
with the shortest text that reads back exactly, percentages with two
decimals, and booleans as C{true}/C{false}.  L{parse_csv} reads row
and summary files back into the same records L{emit_csv} wrote.
"""

__docformat__ = 'epytext en'

import csv

from stabsim.experiment import (ROW_FIELDS, SUMMARY_FIELDS, CellSummary,
                                ExperimentRow)
from stabsim.util import OutputError, StabsimError, open_output

class CSVFormatError(StabsimError):
    """
    Raised when a CSV file does not have the expected header or a
    field can not be parsed.
    """
    def __init__(self, message, filename=None, lineno=None):
        if filename is not None and lineno is not None:
            message = '%s, line %d: %s' % (filename, lineno, message)
        elif filename is not None:
            message = '%s: %s' % (filename, message)
        StabsimError.__init__(self, message)
        self.filename = filename
        self.lineno = lineno

TRACE_FIELDS = ('step', 'node', 'rule', 'new_state', 'enabled_count_after')

######################################################################
## Field Formats
######################################################################

def _bool_out(value):
    return value and 'true' or 'false'

def _bool_in(text):
    if text not in ('true', 'false'):
        raise ValueError('expected true or false')
    return text == 'true'

def _pct_out(value):
    return '%.2f' % value

# (formatter, parser) per field; fields not listed are strings.
_INT = (str, int)
_FLOAT = (repr, float)
_FORMATS = {
    'n': _INT, 'trial': _INT, 'seed': _INT, 'cardinality': _INT,
    'moves': _INT, 'rounds': _INT, 'trials': _INT,
    'cardinality_min': _INT, 'cardinality_max': _INT,
    'moves_min': _INT, 'moves_max': _INT,
    'density': _FLOAT, 'cardinality_mean': _FLOAT, 'cardinality_std': _FLOAT,
    'moves_mean': _FLOAT, 'moves_std': _FLOAT, 'rounds_mean': _FLOAT,
    'cardinality_pct': (_pct_out, float),
    }

def _format_field(field, value, record_type):
    if field == 'converged' and record_type is ExperimentRow:
        return _bool_out(value)
    if field == 'converged':
        return str(value)
    formatter = _FORMATS.get(field, (str, str))[0]
    return formatter(value)

def _parse_field(field, text, record_type):
    if field == 'converged' and record_type is ExperimentRow:
        return _bool_in(text)
    if field == 'converged':
        return int(text)
    return _FORMATS.get(field, (str, str))[1](text)

######################################################################
## Writing
######################################################################

def emit_csv(records, path, fields=None):
    """
    Write experiment rows or cell summaries to C{path}.

    @param records: A list of L{ExperimentRow} or of L{CellSummary}.
    @param fields: The header to write when C{records} is empty;
        defaults to the row header.
    @raise OutputError: If C{path} can not be written.
    """
    if records:
        record_type = type(records[0])
        fields = record_type._fields
    else:
        fields = tuple(fields or ROW_FIELDS)
        record_type = (fields == SUMMARY_FIELDS) and CellSummary or \
                      ExperimentRow
    out = open_output(path)
    try:
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(fields)
        for record in records:
            writer.writerow([_format_field(f, getattr(record, f), record_type)
                             for f in fields])
    except (IOError, OSError) as e:
        raise OutputError(path, e.strerror or e)
    finally:
        out.close()

def write_trace_csv(trace, path):
    """
    Write the moves of an L{ExecutionTrace<stabsim.engine.ExecutionTrace>}
    to C{path}, one line per move.
    """
    out = open_output(path)
    try:
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(TRACE_FIELDS)
        for record in trace.moves:
            writer.writerow([record.step, record.node, record.rule.name,
                             record.new_state.name,
                             '' if record.enabled_after is None
                             else record.enabled_after])
    except (IOError, OSError) as e:
        raise OutputError(path, e.strerror or e)
    finally:
        out.close()

######################################################################
## Reading
######################################################################

def parse_csv(path):
    """
    Read a file written by L{emit_csv}.  The header decides whether
    the records are L{ExperimentRow}s or L{CellSummary}s.

    @rtype: C{list}
    @raise CSVFormatError: If the file has an unknown header or a bad
        field.
    """
    try:
        with open(path, 'r', encoding='ascii', newline='') as f:
            lines = list(csv.reader(f))
    except (IOError, OSError, UnicodeDecodeError) as e:
        raise CSVFormatError('can not read file: %s' %
                             (getattr(e, 'strerror', None) or e), path)
    if not lines:
        raise CSVFormatError('empty file', path)
    header = tuple(lines[0])
    if header == ROW_FIELDS:
        record_type = ExperimentRow
    elif header == SUMMARY_FIELDS:
        record_type = CellSummary
    else:
        raise CSVFormatError('unexpected header %s' % ','.join(header),
                             path, 1)
    records = []
    for lineno, values in enumerate(lines[1:], 2):
        if not values: continue
        if len(values) != len(header):
            raise CSVFormatError('expected %d fields, got %d' %
                                 (len(header), len(values)), path, lineno)
        try:
            records.append(record_type(*[
                _parse_field(f, v, record_type)
                for (f, v) in zip(header, values)]))
        except ValueError as e:
            raise CSVFormatError('bad field: %s' % e, path, lineno)
    return records
