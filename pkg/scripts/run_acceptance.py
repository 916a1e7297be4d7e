"""Run the nine acceptance criteria and print one PASS/FAIL line each."""

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    here = Path(__file__).resolve().parents[1] / "tests" / "test_acceptance.py"
    sys.exit(pytest.main([str(here), "-q", "-s", *sys.argv[1:]]))
