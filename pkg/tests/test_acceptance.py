"""Acceptance gate: each criterion from the requirements runs at its stated
tolerance (exact equality throughout; wall-clock budgets as noted) and
prints one pass/fail line."""

import pytest

from planar_holant.acceptance import CRITERIA, Report


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    rep = Report()
    fn(rep)
    for line in rep.lines:
        print(line)
    assert rep.ok, "\n".join(rep.lines)
