"""Acceptance criteria, one test each; every run prints a PASS/FAIL line per criterion."""
import pytest

from twindragon import cns, verify

RESULTS: list[verify.CheckResult] = []


def report(res: verify.CheckResult) -> verify.CheckResult:
    RESULTS.append(res)
    print(res.line())
    return res


@pytest.mark.parametrize("check", verify.CHECKS, ids=lambda c: c.__name__)
def test_criterion(check):
    res = report(check())
    assert res.passed, res.detail


def corrupted_values():
    values = [b.value for b in cns.digit_table()]
    values[4], values[5] = values[5], values[4]  # swap -2i and 1-2i
    return values


def test_negative_control_corrupted_table_fails_fifth_line_check():
    with cns.digit_table_override(corrupted_values()):
        res = verify.check_fifth_line_boundary()
        golden = verify.check_digit_table()
    caught = not res.passed and not golden.passed
    report(verify.CheckResult(11, "negative control: corrupted digit table fails checks 1 and 10",
                              caught, res.detail, res.seconds + golden.seconds))
    assert caught
    assert verify.check_fifth_line_boundary().passed


if __name__ == "__main__":
    import sys

    results = [check() for check in verify.CHECKS]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
