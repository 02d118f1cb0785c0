from dataclasses import replace

import numpy as np
import pytest

from laver import verify
from laver.verify import SUITES, Bounds, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_at_default_bounds(name):
    res = run_suite(name)
    assert res.passed, res.summary()
    assert res.checked > 0


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_bounds_override_defaults():
    res = run_suite("left-distributivity", Bounds(n=3))
    assert res.checked == 8 ** 3


@pytest.mark.parametrize("name", ["left-distributivity", "prop25b", "reversal", "increasing", "prop25c"])
def test_suites_catch_a_corrupted_table(name, monkeypatch):
    real = verify.get_table

    def corrupted(n):
        t = real(n)
        if n != 4:
            return t
        vals = np.array(t.values)
        vals[0], vals[1] = vals[1], vals[0]
        return replace(t, values=vals)

    monkeypatch.setattr(verify, "get_table", corrupted)
    assert not run_suite(name, Bounds(n=4)).passed
