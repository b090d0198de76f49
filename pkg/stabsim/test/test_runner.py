#
# stabsim -- Tests for the doctest runner
#

"""
The doctest runner's exit status.
"""

import unittest

import pytest

import stabsim
import stabsim.test

@pytest.fixture(autouse=True)
def restore_debug():
    debug = stabsim.DEBUG
    yield
    stabsim.DEBUG = debug

def test_main_returns_zero_when_every_test_passes():
    assert stabsim.test.main(['algorithms.doctest']) == 0

def test_main_returns_one_when_a_test_fails(monkeypatch):
    def failing_suite(filename, optionflags=0):
        def fail():
            raise AssertionError('expected failure')
        return unittest.FunctionTestCase(fail)
    monkeypatch.setattr(stabsim.test.doctest, 'DocFileSuite', failing_suite)
    assert stabsim.test.main(['algorithms.doctest']) == 1
