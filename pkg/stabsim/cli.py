# stabsim -- Command line interface
#
# For license information, see LICENSE.txt

"""
Command-line interface for stabsim.

Usage::

    stabsim gen --nodes N --density P [--seed S] --out FILE
    stabsim run --graph FILE [--algo md2is|mis|mis-id] [--daemon D]
                [--init PRESET] [--seed S] [--move-cap M] [--trace FILE]
                [--final-state FILE] [--clusters FILE]
    stabsim verify --graph FILE --state FILE --property d2is|mis
    stabsim experiment --sizes A:B:STEP --densities LIST [--trials T]
                [--algos LIST] [--daemon D] [--init PRESET] [--seed S]
                [--jobs J] --out FILE [--summary FILE]
    stabsim plot --in CSV --x size|density --out FILE

Every command also accepts C{--config FILE} (repeatable), C{-v},
C{-q} and C{--debug}.

Configuration files are read with C{ConfigParser}; options go in a
C{[stabsim]} section, named like the long command-line options::

    [stabsim]
    sizes: 1000:5000:1000
    densities: 0.001
    trials: 10
    algos: md2is, mis
    seed: 7

Options given on the command line override configuration files.
Environment variables may be interpolated with C{%(NAME)s}.

Exit codes: 0 on success, 1 when a checked property fails or a run
does not converge, 2 for usage and input errors, 3 for unexpected
internal errors.
"""
__docformat__ = 'epytext en'

import configparser
import os
import shutil
import sys
from optparse import OptionParser, OptionGroup

import stabsim
from stabsim import log
from stabsim.algorithms import ALGORITHMS, get_rules
from stabsim.checker import (PROPERTIES, TraceChecker, assign_clusters,
                             format_clusters)
from stabsim.daemon import DAEMON_TOKENS, parse_daemon
from stabsim.engine import (ConvergenceError, initial_configuration,
                            parse_init, read_state_file, run_to_fixpoint,
                            write_state_file)
from stabsim.graph import (GraphGenSpec, gen_random_graph, read_edgelist,
                           write_edgelist)
from stabsim.util import (StabsimError, derive_seed,
                          open_output, parse_range, str_to_bool,
                          str_to_float, str_to_int, str_to_list)

COMMANDS = ('gen', 'run', 'verify', 'experiment', 'plot')
X_AXES = ('size', 'density')

HELP = """\
Usage: stabsim COMMAND [options]

Commands:
  gen         Write a seeded random graph as an edge list.
  run         Run one algorithm on a graph and report the outcome.
  verify      Check a property of a state file on a graph.
  experiment  Run a parameter sweep and write its rows as CSV.
  plot        Draw the summaries of an experiment CSV as an SVG chart.

Use "stabsim COMMAND --help" for the options of a command.
"""

# Values used when neither the command line nor a config file gives one.
DEFAULTS = {
    'seed': 0, 'algo': 'md2is', 'daemon': 'central-random',
    'init': 'random:0.5', 'trials': 5, 'algos': 'md2is,mis', 'jobs': 1,
    'x': 'size', 'verbosity': 0, 'debug': False, 'check': False,
    'fail_on_warning': False,
    }

######################################################################
#{ Argument Parsing
######################################################################

def _common_options(optparser):
    optparser.add_option('--config',
        action='append', dest='configfiles', metavar='FILE', default=[],
        help=('A configuration file, specifying additional OPTIONS.  '
              'This option may be repeated.'))
    optparser.add_option('--quiet', '-q',
        action='count', dest='quiet', default=0,
        help='Decrease the verbosity.')
    optparser.add_option('--verbose', '-v',
        action='count', dest='verbose', default=0,
        help='Increase the verbosity.')
    optparser.add_option('--debug',
        action='store_true', dest='debug', default=None,
        help=('Show full tracebacks for internal errors, and check the '
              'engine against full recomputations.'))

def _gen_parser(optparser):
    group = OptionGroup(optparser, 'Graph Options')
    optparser.add_option_group(group)
    group.add_option('--nodes', dest='nodes', type='int', metavar='N',
        help='The number of nodes.')
    group.add_option('--density', dest='density', type='float', metavar='P',
        help='The probability of each edge.')
    group.add_option('--seed', dest='seed', type='int', metavar='S',
        help='The generator seed (default: 0).')
    group.add_option('--out', dest='out', metavar='FILE',
        help='The edge-list file to write.')

def _run_options(optparser, group, multi):
    if multi:
        group.add_option('--algos', dest='algos', metavar='LIST',
            help='Comma separated algorithms (default: md2is,mis).  '
            'Choices: %s.' % ', '.join(sorted(ALGORITHMS)))
    else:
        group.add_option('--algo', dest='algo', metavar='ALGO',
            help='The algorithm (default: md2is).  Choices: %s.' %
            ', '.join(sorted(ALGORITHMS)))
    group.add_option('--daemon', dest='daemon', metavar='DAEMON',
        help='The daemon (default: central-random).  Choices: %s.' %
        ', '.join(DAEMON_TOKENS))
    group.add_option('--init', dest='init', metavar='PRESET',
        help='The initial configuration: all-out, all-in or random:P '
        '(default: random:0.5).')
    group.add_option('--seed', dest='seed', type='int', metavar='S',
        help='The base seed (default: 0).')
    group.add_option('--move-cap', dest='move_cap', type='int', metavar='M',
        help='Stop each run after M moves (default: 2n+1 for central '
        'daemons, 10n for subset daemons).')

def _run_parser(optparser):
    group = OptionGroup(optparser, 'Run Options')
    optparser.add_option_group(group)
    group.add_option('--graph', dest='graph', metavar='FILE',
        help='The edge-list file of the graph.')
    _run_options(optparser, group, multi=False)
    group.add_option('--initial-state', dest='initial_state', metavar='FILE',
        help='Start from the configuration in a state file instead of '
        'an --init preset.')
    out_group = OptionGroup(optparser, 'Output Options')
    optparser.add_option_group(out_group)
    out_group.add_option('--trace', dest='trace', metavar='FILE',
        help='Write the moves of the run as CSV.')
    out_group.add_option('--final-state', dest='final_state', metavar='FILE',
        help='Write the final configuration as a state file.')
    out_group.add_option('--clusters', dest='clusters', metavar='FILE',
        help='Write the cluster head of every node, reading the final '
        'set as cluster heads.')
    out_group.add_option('--check', dest='check', action='store_true',
        default=None,
        help='Check the trace invariants; exit 1 if any fails.')

def _verify_parser(optparser):
    group = OptionGroup(optparser, 'Verify Options')
    optparser.add_option_group(group)
    group.add_option('--graph', dest='graph', metavar='FILE',
        help='The edge-list file of the graph.')
    group.add_option('--state', dest='state', metavar='FILE',
        help='The state file to check.')
    group.add_option('--property', dest='property', metavar='PROPERTY',
        help='The property to check: %s.' % ', '.join(sorted(PROPERTIES)))

def _experiment_parser(optparser):
    group = OptionGroup(optparser, 'Sweep Options')
    optparser.add_option_group(group)
    group.add_option('--sizes', dest='sizes', metavar='A:B:STEP',
        help='Graph sizes: a range (both ends included) or a comma '
        'separated list.')
    group.add_option('--densities', dest='densities', metavar='LIST',
        help='Comma separated edge densities.')
    group.add_option('--trials', dest='trials', type='int', metavar='T',
        help='Trials per size and density (default: 5).')
    _run_options(optparser, group, multi=True)
    group.add_option('--jobs', dest='jobs', type='int', metavar='J',
        help='Run trials in J worker processes (default: 1).')
    out_group = OptionGroup(optparser, 'Output Options')
    optparser.add_option_group(out_group)
    out_group.add_option('--out', dest='out', metavar='FILE',
        help='The CSV file for the rows.')
    out_group.add_option('--summary', dest='summary', metavar='FILE',
        help='A CSV file for the per-cell summaries.')
    out_group.add_option('--fail-on-warning', dest='fail_on_warning',
        action='store_true', default=None,
        help='Exit 1 if any warning was reported.')

def _plot_parser(optparser):
    group = OptionGroup(optparser, 'Plot Options')
    optparser.add_option_group(group)
    group.add_option('--in', dest='infile', metavar='CSV',
        help='An experiment CSV (rows or summaries).')
    group.add_option('--x', dest='x', metavar='AXIS',
        help='The x axis: size or density (default: size).')
    group.add_option('--out', dest='out', metavar='FILE',
        help='The SVG file to write.')
    group.add_option('--title', dest='title', metavar='TEXT',
        help='A chart title.')

_PARSERS = {
    'gen': (_gen_parser, ('nodes', 'density', 'out')),
    'run': (_run_parser, ('graph',)),
    'verify': (_verify_parser, ('graph', 'state', 'property')),
    'experiment': (_experiment_parser, ('sizes', 'densities', 'out')),
    'plot': (_plot_parser, ('infile', 'out')),
    }

def parse_arguments(command, args):
    """
    Parse the options of C{command}.  Configuration files fill in the
    options the command line leaves unset, and L{DEFAULTS} the rest.
    Usage errors exit with status 2 through the parser's C{error()}.

    @return: The parsed options, with C{options.verbosity} computed.
    """
    optparser = OptionParser(
        usage='%%prog %s [options]' % command, prog='stabsim',
        version='stabsim, version %s' % stabsim.__version__)
    _common_options(optparser)
    build, required = _PARSERS[command]
    build(optparser)
    options, extra = optparser.parse_args(args)
    if extra:
        optparser.error('unexpected arguments: %s' % ' '.join(extra))

    if options.configfiles:
        try:
            parse_configfiles(options.configfiles, options)
        except (IOError, OSError) as e:
            optparser.error('Error reading config file:\n    %s' % e)
        except (configparser.Error, ValueError) as e:
            optparser.error('Error reading config file:\n    %s' % e)

    for (name, value) in DEFAULTS.items():
        if getattr(options, name, value) is None:
            setattr(options, name, value)
    if getattr(options, 'verbosity', None) is None:
        options.verbosity = 0
    options.verbosity = options.verbosity + options.verbose - options.quiet

    for name in required:
        if getattr(options, name, None) is None:
            optparser.error('--%s is required' % name.replace('infile', 'in'))

    try:
        _check_tokens(command, options)
    except (StabsimError, ValueError) as e:
        optparser.error('%s' % e)
    return options

def _check_tokens(command, options):
    if command in ('run', 'experiment'):
        if command == 'run':
            algos = [options.algo]
        else:
            algos = _algos(options)
        for algo in algos:
            get_rules(algo)
        parse_daemon(options.daemon)
        parse_init(options.init)
        if options.move_cap is not None and options.move_cap < 1:
            raise ValueError('--move-cap must be at least 1')
    if command == 'experiment':
        if not isinstance(options.sizes, list):
            options.sizes = parse_range(options.sizes, 'sizes')
        if not isinstance(options.densities, list):
            options.densities = [str_to_float(p, 'densities')
                                 for p in str_to_list(options.densities)]
        if options.trials < 1:
            raise ValueError('--trials must be at least 1')
        if options.jobs < 1:
            raise ValueError('--jobs must be at least 1')
    if command == 'verify' and options.property not in PROPERTIES:
        raise ValueError('unknown property %r; expected one of: %s' %
                         (options.property, ', '.join(sorted(PROPERTIES))))
    if command == 'plot' and options.x not in X_AXES:
        raise ValueError('unknown x axis %r; expected one of: %s' %
                         (options.x, ', '.join(X_AXES)))

# Config options that hold integers, and the option attribute they set.
_INT_OPTIONS = {'trials': 'trials', 'seed': 'seed', 'move-cap': 'move_cap',
                'jobs': 'jobs', 'verbosity': 'verbosity', 'nodes': 'nodes'}
_STR_OPTIONS = {'algo': 'algo', 'daemon': 'daemon', 'init': 'init',
                'out': 'out', 'summary': 'summary', 'graph': 'graph',
                'state': 'state', 'property': 'property', 'x': 'x',
                'in': 'infile', 'trace': 'trace', 'title': 'title',
                'final-state': 'final_state', 'clusters': 'clusters',
                'initial-state': 'initial_state'}

def parse_configfiles(configfiles, options):
    """
    Read the C{[stabsim]} section of each configuration file into
    C{options}, leaving options already set on the command line alone.

    @raise ValueError: For unknown options or malformed values.
    """
    parser = configparser.ConfigParser()
    # ConfigParser.read() silently ignores missing files, so open the
    # files ourselves.
    for configfile in configfiles:
        with open(configfile, 'r') as fp:
            parser.read_file(fp, configfile)
    if not parser.has_section('stabsim'):
        return
    values = {}
    for optname in parser.options('stabsim'):
        val = parser.get('stabsim', optname, vars=os.environ).strip()
        optname = optname.lower().strip().replace('_', '-')
        if optname in _INT_OPTIONS:
            values[_INT_OPTIONS[optname]] = str_to_int(val, optname)
        elif optname in _STR_OPTIONS:
            values[_STR_OPTIONS[optname]] = val
        elif optname == 'sizes':
            values['sizes'] = parse_range(val, optname)
        elif optname == 'densities':
            values['densities'] = [str_to_float(p, optname)
                                   for p in str_to_list(val)]
        elif optname == 'algos':
            values['algos'] = ','.join(str_to_list(val))
        elif optname == 'density':
            values['density'] = str_to_float(val, optname)
        elif optname == 'debug':
            values['debug'] = str_to_bool(val, optname)
        elif optname in ('fail-on-warning', 'check'):
            values[optname.replace('-', '_')] = str_to_bool(val, optname)
        else:
            raise ValueError('Unknown option %s in config file.' % optname)
    for (name, value) in values.items():
        if getattr(options, name, None) is None:
            setattr(options, name, value)

######################################################################
#{ Commands
######################################################################

def _algos(options):
    if isinstance(options.algos, str):
        options.algos = str_to_list(options.algos)
    return options.algos

def cmd_gen(options):
    spec = GraphGenSpec(options.nodes, options.density, options.seed)
    g = gen_random_graph(spec)
    write_edgelist(g, options.out)
    log.info('Wrote %r: %d nodes, %d edges, mean degree %.2f' %
             (options.out, g.n, g.m, g.mean_degree()))
    return 0

def cmd_run(options):
    from stabsim.writer.csvfile import write_trace_csv
    g = read_edgelist(options.graph)
    rules = get_rules(options.algo)
    daemon = parse_daemon(options.daemon, derive_seed(options.seed, 'daemon'))
    if options.initial_state:
        init = read_state_file(options.initial_state, g.n)
        init_name = 'file:%s' % options.initial_state
    else:
        init = initial_configuration(g, options.init,
                                     derive_seed(options.seed, 'init'))
        init_name = options.init
    trace = run_to_fixpoint(g, rules, daemon, init, options.move_cap)

    if options.trace:
        write_trace_csv(trace, options.trace)
    if options.final_state:
        write_state_file(trace.final, options.final_state)
    if options.clusters:
        out = open_output(options.clusters)
        try:
            out.write(format_clusters(assign_clusters(g, trace.members())))
        finally:
            out.close()

    cardinality = trace.final.cardinality()
    print('algorithm=%s daemon=%s init=%s n=%d converged=%s moves=%d '
          'rounds=%d cardinality=%d (%.2f%%)' %
          (rules.name, daemon.token, init_name, g.n,
           trace.converged and 'true' or 'false', len(trace.moves),
           trace.rounds, cardinality, 100.0 * cardinality / max(g.n, 1)))

    status = 0
    if options.check:
        for report in TraceChecker(g, rules, trace).check():
            print(report)
            if not report.holds: status = 1
    if not trace.converged:
        status = 1
    return status

def cmd_verify(options):
    g = read_edgelist(options.graph)
    c = read_state_file(options.state, g.n)
    report = PROPERTIES[options.property](g, c.members())
    print(report)
    return 0 if report.holds else 1

def cmd_experiment(options, logger=None):
    from stabsim.experiment import ExperimentSpec, run_experiment, summarize
    from stabsim.writer.csvfile import emit_csv
    from stabsim.writer.plaintext import format_table
    spec = ExperimentSpec(options.sizes, options.densities, options.trials,
                          _algos(options), options.daemon, options.init,
                          options.seed, options.move_cap, options.jobs)
    try:
        rows = run_experiment(spec)
    except ConvergenceError as e:
        log.error('%s' % e)
        return 1
    emit_csv(rows, options.out)
    summaries = summarize(rows)
    if options.summary:
        emit_csv(summaries, options.summary)
    if options.verbosity >= 1:
        sys.stdout.write(format_table(summaries))
    log.info('Wrote %d rows to %s' % (len(rows), options.out))
    if (options.fail_on_warning and logger is not None and
        logger.reported_message_levels.intersection(
            [log.WARNING, log.CONVERGENCE_WARNING])):
        return 1
    return 0

def cmd_plot(options):
    from stabsim.experiment import CellSummary, summarize
    from stabsim.writer.chart import emit_chart
    from stabsim.writer.csvfile import parse_csv
    records = parse_csv(options.infile)
    if not records:
        raise StabsimError('%s holds no records to plot' % options.infile)
    if not isinstance(records[0], CellSummary):
        records = summarize(records)
    emit_chart(records, options.x, options.out, options.title)
    return 0

_COMMANDS = {'gen': cmd_gen, 'run': cmd_run, 'verify': cmd_verify,
             'plot': cmd_plot}

######################################################################
#{ Entry Point
######################################################################

def cli(argv=None):
    """
    Run the command given by C{argv} (default: C{sys.argv[1:]}).

    @return: The exit status.
    """
    if argv is None:
        argv = sys.argv[1:]
    if not argv or argv[0] in ('-h', '--help', 'help'):
        sys.stdout.write(HELP)
        return 0 if argv else 2
    if argv[0] == '--version':
        print('stabsim, version %s' % stabsim.__version__)
        return 0
    command = argv[0]
    if command not in COMMANDS:
        sys.stderr.write('stabsim: unknown command %r\n\n' % command)
        sys.stderr.write(HELP)
        return 2
    try:
        options = parse_arguments(command, argv[1:])
    except SystemExit as e:
        return e.code or 0

    if options.debug:
        stabsim.DEBUG = True
    logger = ConsoleLogger(options.verbosity)
    log.register_logger(logger)
    try:
        try:
            if command == 'experiment':
                return cmd_experiment(options, logger)
            return _COMMANDS[command](options)
        finally:
            logger.report_suppressed()
            log.remove_logger(logger)
    except KeyboardInterrupt:
        print('\n\nKeyboard interrupt.', file=sys.stderr)
        return 3
    except ConvergenceError as e:
        if options.debug: raise
        print('Error: %s' % e, file=sys.stderr)
        return 1
    except StabsimError as e:
        if options.debug: raise
        print('Error: %s' % e, file=sys.stderr)
        return 2
    except Exception as e:
        if options.debug: raise
        print('\nUNEXPECTED ERROR:\n%s\n' % (str(e) or e.__class__.__name__),
              file=sys.stderr)
        print('Use --debug to see trace information.', file=sys.stderr)
        return 3

def main():
    sys.exit(cli())

######################################################################
#{ Logger
######################################################################

class ConsoleLogger(log.Logger):
    """
    Reports messages and progress on the console.  Messages go to
    standard error so they do not mix with command output.

    The verbosity decides what is shown: errors always (down to -2),
    warnings from -1, convergence warnings from 0, informational
    messages from 1, and debug messages in debug mode.  Progress is
    listed line by line from verbosity 2, drawn as a dotted bar at
    verbosity 0 and 1 when standard error is a terminal, and hidden
    otherwise.
    """
    def __init__(self, verbosity, progress_mode=None, stream=None):
        self._verbosity = verbosity
        self._stream = stream or sys.stderr
        self._progress = None
        self._message_blocks = []

        self.reported_message_levels = set()
        """The message levels (WARNING, ERROR, ...) reported so far.
        Backs the --fail-on-warning option."""

        self.suppressed_messages = 0
        """Warnings that were reported while the verbosity was too low
        to show them."""

        self._cols = shutil.get_terminal_size((75, 20)).columns
        if progress_mode is not None:
            self._progress_mode = progress_mode
        elif verbosity >= 2:
            self._progress_mode = 'list'
        elif verbosity >= 0 and self._stream.isatty():
            self._progress_mode = 'simple-bar'
        else:
            self._progress_mode = 'hide'

    def start_block(self, header):
        self._message_blocks.append((header, []))

    def end_block(self):
        header, messages = self._message_blocks.pop()
        if messages:
            body = ''.join(['  | %s' % m for m in messages])
            self._report('+- %s\n%s' % (header, body))

    def log(self, level, message):
        self.reported_message_levels.add(level)
        if self._verbosity >= -2 and level >= log.ERROR:
            prefix = '  Error: '
        elif self._verbosity >= -1 and level >= log.WARNING:
            prefix = 'Warning: '
        elif self._verbosity >= 0 and level >= log.CONVERGENCE_WARNING:
            prefix = 'Warning: '
        elif self._verbosity >= 1 and level >= log.INFO:
            prefix = '   Info: '
        elif stabsim.DEBUG and level == log.DEBUG:
            prefix = '  Debug: '
        else:
            if level >= log.CONVERGENCE_WARNING:
                self.suppressed_messages += 1
            return
        self._report(prefix + message)

    def report_suppressed(self):
        """
        Warn about the warnings the verbosity kept off the console.
        """
        if self.suppressed_messages == 1:
            message = '1 warning was not shown'
        elif self.suppressed_messages > 1:
            message = '%d warnings were not shown' % self.suppressed_messages
        else:
            return
        self.log(log.WARNING, '%s.  Use the verbose switch (-v) to '
                 'display warnings.' % message)

    def _report(self, message):
        if not message.endswith('\n'): message += '\n'
        if self._message_blocks:
            self._message_blocks[-1][-1].append(message)
            return
        # Make room for the message below a half-drawn bar.
        if self._progress_mode == 'simple-bar' and self._progress is not None:
            self._stream.write('\n')
            self._progress = None
        self._stream.write(message)
        self._stream.flush()

    def start_progress(self, header=None):
        if self._progress is not None:
            raise ValueError('previous progress bar not ended')
        if self._progress_mode != 'hide' and header:
            self._stream.write(header + '\n')

    def progress(self, percent, message=''):
        percent = min(1.0, percent)
        if self._progress_mode == 'list':
            if message:
                self._stream.write('[%3d%%] %s\n' % (100*percent, message))
                self._stream.flush()
        elif self._progress_mode == 'simple-bar':
            if self._progress is None:
                self._stream.write('  [')
                self._progress = 0.0
            width = self._cols - 5
            dots = int(width*percent)
            progress_dots = int(width*self._progress)
            if dots > progress_dots:
                self._stream.write('.'*(dots-progress_dots))
                self._stream.flush()
                self._progress = percent

    def end_progress(self):
        self.progress(1.)
        if self._progress_mode == 'simple-bar' and self._progress is not None:
            self._stream.write(']\n')
        self._progress = None

if __name__ == '__main__':
    main()
