# stabsim -- Utility functions
#
# For license information, see LICENSE.txt

"""
Miscellaneous utility functions that are used by multiple modules.

@group Errors: StabsimError, OutputError
@group Seeds: derive_seed, SEED_MASK
@group Value parsing: str_to_bool, str_to_int, str_to_float, str_to_list,
    parse_range
"""

__docformat__ = 'epytext en'

import hashlib, os

######################################################################
## Errors
######################################################################

class StabsimError(ValueError):
    """
    Base class for the errors raised by stabsim.  Each module defines
    its own subclasses; the command-line interface reports any
    C{StabsimError} as a user-level error rather than a crash.
    """

class OutputError(StabsimError):
    """
    Raised when an output file can not be written.  The message names
    the offending path.
    """
    def __init__(self, path, reason):
        StabsimError.__init__(self, 'can not write %s: %s' % (path, reason))
        self.path = path
        self.reason = reason

def make_parent_dirs(path):
    """
    Create the missing parent directories of C{path}.

    @raise OutputError: If a directory can not be created.
    """
    parent = os.path.dirname(path)
    try:
        if parent and not os.path.isdir(parent):
            os.makedirs(parent)
    except (IOError, OSError) as e:
        raise OutputError(path, e.strerror or e)

def open_output(path):
    """
    Open C{path} for writing ascii text, creating missing parent
    directories.

    @raise OutputError: If the file can not be opened.
    """
    make_parent_dirs(path)
    try:
        return open(path, 'w', encoding='ascii', newline='')
    except (IOError, OSError) as e:
        raise OutputError(path, e.strerror or e)

######################################################################
## Seeds
######################################################################

SEED_MASK = (1 << 64) - 1
"""Seeds are unsigned 64-bit integers."""

def derive_seed(*parts):
    """
    Derive a 64-bit seed from C{parts}.  The parts are rendered to
    their canonical text (floats with C{repr}, so C{0.1} and C{0.10}
    agree), joined, and hashed with SHA-256; the first 8 bytes of the
    digest form the seed.  Because the result depends only on the
    parts, a seed can be recomputed for any single cell of an
    experiment without replaying the cells before it.

        >>> derive_seed(7, 1000, 0.001, 0) == derive_seed(7, 1000, 0.001, 0)
        True
    """
    text = '|'.join([repr(p) if isinstance(p, float) else '%s' % (p,)
                     for p in parts])
    digest = hashlib.sha256(text.encode('ascii')).digest()
    return int.from_bytes(digest[:8], 'big')

def check_seed(seed):
    seed = int(seed)
    if not 0 <= seed <= SEED_MASK:
        raise StabsimError('seed %d is not an unsigned 64-bit value' % seed)
    return seed

######################################################################
## Value Parsing
######################################################################

def str_to_bool(val, optname):
    if val.lower() in ('0', 'no', 'false', 'n', 'f', 'off'):
        return False
    elif val.lower() in ('1', 'yes', 'true', 'y', 't', 'on'):
        return True
    else:
        raise ValueError('"%s" option expected a boolean' % optname)

def str_to_int(val, optname):
    try:
        return int(val)
    except ValueError:
        raise ValueError('"%s" option expected an int' % optname)

def str_to_float(val, optname):
    try:
        return float(val)
    except ValueError:
        raise ValueError('"%s" option expected a number' % optname)

def str_to_list(val):
    return val.replace(',', ' ').split()

def parse_range(val, optname='sizes'):
    """
    Parse a node-count range.  C{val} is either a single count, a
    comma separated list of counts, or C{A:B:STEP}, which includes
    both ends:

        >>> parse_range('1000:2000:500')
        [1000, 1500, 2000]
        >>> parse_range('10,20')
        [10, 20]

    @raise ValueError: If C{val} is malformed or the range is empty.
    """
    val = val.strip()
    if ':' in val:
        pieces = val.split(':')
        if len(pieces) != 3:
            raise ValueError('"%s" expected A:B:STEP, got %r' % (optname, val))
        start, stop, step = [str_to_int(p, optname) for p in pieces]
        if step <= 0 or stop < start:
            raise ValueError('"%s" range %r is empty' % (optname, val))
        result = list(range(start, stop + 1, step))
    else:
        result = [str_to_int(p, optname) for p in str_to_list(val)]
    if not result:
        raise ValueError('"%s" expected at least one value' % optname)
    return result
