"""The thirteen acceptance criteria, one test each; a summary line per criterion is printed."""

from __future__ import annotations

import pytest

from aniso_bounds.acceptance import CRITERIA, run_criterion


@pytest.fixture(scope="module")
def context():
    return {}


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[c[1] for c in CRITERIA])
def test_criterion(number, context, record_acceptance):
    result = run_criterion(number, context)
    line = result.line()
    print(line)
    record_acceptance(line)
    assert result.passed, result.detail
