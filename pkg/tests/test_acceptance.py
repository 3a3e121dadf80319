"""One test per acceptance criterion; each prints a single PASS/FAIL summary line."""
import pytest

from nilhecke.acceptance import CRITERIA, run_criterion


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    res = run_criterion(number)
    with capsys.disabled():
        print("\n" + res.summary_line())
        for note in res.notes:
            print(f"    note: {note}")
    assert res.passed, "; ".join(f"{c.name}: {c.detail}" for c in res.failed_checks())
