# stabsim -- Regression testing
#
# For license information, see LICENSE.txt

"""
Regression testing.

The example-driven tests are the C{*.doctest} files in this directory;
L{main} runs them with the standard library's doctest runner.  The
property and acceptance tests are pytest modules (C{test_*.py}), and
C{pytest} collects both kinds (see C{setup.cfg}).

A doctest file that needs an optional module declares it on a line of
its own::

    :RequireModule: matplotlib

and is skipped when the module can not be imported.
"""

__docformat__ = 'epytext en'

import doctest, os, os.path, re, unittest

import stabsim

def main(names=None):
    """
    Run the doctest files called C{names} (default: every C{*.doctest}
    file in this directory).

    @return: 0 if every test passed, 1 otherwise.
    """
    # Turn on debugging.
    stabsim.DEBUG = True

    # Options for doctest:
    options = doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE
    doctest.set_unittest_reportflags(doctest.REPORT_UDIFF)

    # Find all test cases.
    tests = []
    here = os.path.dirname(__file__)
    for filename in sorted(names or os.listdir(here)):
        filepath = os.path.join(here, filename)
        if filename.endswith('.doctest') and check_requirements(filepath):
            tests.append(doctest.DocFileSuite(filename, optionflags=options))

    # Run all test cases.
    result = unittest.TextTestRunner(verbosity=2).run(
        unittest.TestSuite(tests))
    return 0 if result.wasSuccessful() else 1

def check_requirements(filename):
    """
    Search for lines of the form::

        :RequireModule: <module>

    If any are found, then try importing the module named <module>.
    If the import fails, then return False.  If all required modules
    are found, return True.  (This includes the case where no
    requirements are listed.)
    """
    with open(filename) as f:
        s = f.read()
    for m in re.finditer(r'(?mi)^[ ]*:RequireModule:(.*)$', s):
        module = m.group(1).strip()
        try:
            __import__(module)
        except ImportError:
            print('Skipping %r (required module %r not found)' %
                  (os.path.split(filename)[-1], module))
            return False
    return True


if __name__ == '__main__':
    import sys
    sys.exit(main())
