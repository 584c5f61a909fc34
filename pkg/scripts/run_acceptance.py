"""Run the acceptance criteria and print one PASS/FAIL line per criterion."""

import pathlib
import sys

import pytest

TESTS = pathlib.Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"

if __name__ == "__main__":
    sys.exit(pytest.main([str(TESTS), "-s", "-q", "-p", "no:cacheprovider"]))
