import random

import pandas as pd
import pytest

from errors import VerificationFailed
from verify_sweep import (
    CHAR_GATES,
    COLUMNS,
    FATPOINT_SWEEP,
    PAPER_EXAMPLES,
    PRESETS,
    WORKED_EXAMPLES,
    Check,
    char_gate_checks,
    ensure_passed,
    fatpoint_sweep_checks,
    local_grid_checks,
    random_fat_points,
    run_checks,
    run_sweep,
    worked_example_checks,
    write_report,
)


def failed(frame):
    return frame[~frame["ok"]][["check", "expected", "actual"]].to_dict("records")


def test_run_checks_records_every_outcome():
    checks = [
        Check("passes", "4", lambda: 2 + 2),
        Check("fails", "5", lambda: 2 + 2),
    ]
    frame = run_checks("demo", checks, progress=False)
    assert list(frame.columns) == COLUMNS
    assert frame["ok"].tolist() == [True, False]
    assert frame["actual"].tolist() == ["4", "4"]


def test_library_errors_become_failed_rows():
    from errors import CharTooSmall

    def boom():
        raise CharTooSmall("char 2")

    frame = run_checks("demo", [Check("raises", "1", boom)], progress=False)
    assert not frame["ok"].iloc[0]
    assert frame["actual"].iloc[0] == "CharTooSmall: char 2"


def test_ensure_passed():
    ok = pd.DataFrame([("demo", "a", "1", "1", True)], columns=COLUMNS)
    ensure_passed(ok)
    bad = pd.DataFrame([("demo", "a", "1", "1", True), ("demo", "b", "1", "2", False)], columns=COLUMNS)
    with pytest.raises(VerificationFailed) as info:
        ensure_passed(bad)
    assert info.value.failures == [{"check": "b", "expected": "1", "actual": "2"}]


def test_write_report(tmp_path):
    frame = pd.DataFrame([("demo", "a", "1", "1", True)], columns=COLUMNS)
    path = write_report(frame, "demo", tmp_path / "reports")
    assert path.name == "sweep_demo.csv"
    assert pd.read_csv(path)["check"].tolist() == ["a"]


def test_worked_examples_is_an_alias():
    assert PRESETS[WORKED_EXAMPLES] is PRESETS[PAPER_EXAMPLES] is worked_example_checks


def test_unknown_preset():
    with pytest.raises(ValueError):
        run_sweep("everything", progress=False)


def test_small_local_grid_passes():
    frame = run_checks("grid", local_grid_checks(max_n=2, max_k=3), progress=False)
    assert len(frame) > 10
    assert frame["ok"].all(), failed(frame)


def test_random_fat_points_are_reproducible():
    a = random_fat_points(random.Random(7))
    b = random_fat_points(random.Random(7))
    assert a == b
    assert 1 <= a.n <= 3
    assert all(p.coords[0] == a.field.one for p in a.fat_points)


def test_fatpoint_sweep_check_names():
    checks = fatpoint_sweep_checks(max_n=1, max_k=2, samples=2, seed=3)
    names = [c.name for c in checks]
    assert names[: len(local_grid_checks(1, 2))] == [c.name for c in local_grid_checks(1, 2)]
    assert sum("HP Ω^1" in n for n in names) == 2
    assert sum(n.endswith("dim Ω^m_S") and n.startswith("random") for n in names) == 2


def test_worked_example_checks_are_lazy():
    checks = worked_example_checks()
    assert len(checks) > 30
    assert any(c.name.startswith("char3/f3.json") for c in checks)


@pytest.mark.slow
def test_char_gates_pass():
    frame = run_sweep(CHAR_GATES, progress=False)
    assert len(frame) == len(char_gate_checks())
    assert frame["ok"].all(), failed(frame)


@pytest.mark.slow
def test_fatpoint_sweep_passes():
    frame = run_checks(FATPOINT_SWEEP, fatpoint_sweep_checks(max_n=2, max_k=3, samples=2), progress=False)
    assert frame["ok"].all(), failed(frame)


@pytest.mark.slow
def test_worked_examples_pass():
    frame = run_sweep(PAPER_EXAMPLES, progress=False)
    assert frame["ok"].all(), failed(frame)
