import pytest
from hypothesis import given
from hypothesis import strategies as st

from laver.backward import b_period, b_row, bs
from laver.structure import (
    HypothesisError,
    Thm41Params,
    accelerated_bs,
    acceleration_coverage,
    assemble_cor42,
    check_thm41_bundle,
    cor42_split,
    enumerate_thm41_params,
    lemma43_max_period,
    lemma44_shift,
    lemma45_period_bound,
    lemma47_step,
    lemma48_step,
    sweep_dispatcher,
    sweep_lemma43,
    sweep_lemma44,
    sweep_lemma45,
    sweep_lemma46,
    sweep_lemma47,
    sweep_lemma48,
    sweep_thm41,
    thm41_image,
    thm41_row,
    validate_params,
)


def test_validate_examples():
    assert validate_params(0, 1, 1, 1).l == 0
    p = validate_params(4, 1, 1, 1)
    assert p.l == 1


@pytest.mark.parametrize("args,clause", [
    ((0, 1, 1, 3), "n-power-of-two"),
    ((0, 2, 1, 1), "y-range"),
    ((1, 0, 1, 1), "divisibility"),
    ((-4, 0, 1, 1), "nonnegative"),
])
def test_validate_rejects(args, clause):
    with pytest.raises(HypothesisError) as err:
        validate_params(*args)
    assert err.value.clause == clause


def test_period_bound_clause():
    # 7 has period 4 > 2^1
    assert b_period(7) == 4
    with pytest.raises(HypothesisError) as err:
        validate_params(6, 0, 0, 1)
    assert err.value.clause == "period-bound"


def test_image_examples():
    p = validate_params(0, 1, 1, 1)
    assert thm41_image(p, 0) == 0
    assert thm41_image(p, 1) == 2
    assert list(thm41_row(p)) == list(b_row(p.a + 1))


def test_cor42_rows():
    assert assemble_cor42([0], 1, 1) == [0, 2]
    assert assemble_cor42([0, 1], 1, 1) == [0, 2, 1, 3]
    assert list(b_row(3)) == [0, 2]
    assert sorted(b_row(4)) == [0, 1, 2, 3]
    assert list(b_row(13)) == [0, 4, 8, 12]


def test_split_of_twelve():
    x, m, n, l = cor42_split(12)
    assert x + ((1 << n) - 1 << (m * n)) == 12
    assert (b_period(x + 1)).bit_length() - 1 == l


def test_bundle_check_detects_wrong_params():
    good = validate_params(0, 1, 1, 1)
    assert check_thm41_bundle(good) == []
    # a bundle with a lying period exponent must not pass
    fake = Thm41Params(good.x, good.y, good.m, good.n, good.l + 1)
    assert check_thm41_bundle(fake) != []


def test_lemma_examples():
    assert lemma43_max_period(1, 2)
    assert lemma43_max_period(2, 4)
    assert lemma44_shift(0, 2, 0, 3) == 3 == bs(4, 3)
    assert lemma44_shift(0, 1, 0, 1) == 1
    assert lemma45_period_bound(4, 2)
    assert lemma47_step(0, 1, 0, 1, 1) == 0 == bs(2, 2)
    assert lemma47_step(0, 2, 0, 0, 2) == 1 == bs(2, 3)
    assert lemma48_step(2, 2, 0, 1) == 1 == bs(2, 3)


def test_lemma_hypotheses_enforced():
    with pytest.raises(HypothesisError):
        lemma48_step(2, 2, 1, 1)
    with pytest.raises(HypothesisError):
        lemma48_step(5, 2, 0, 1)
    with pytest.raises(HypothesisError):
        lemma45_period_bound(3, 1)
    with pytest.raises(HypothesisError):
        lemma44_shift(1, 1, 0, 0)


def test_accelerated_spot():
    assert accelerated_bs(13, 5) == bs(13, 5) == 4
    assert accelerated_bs(0, 9) == 9


@given(st.integers(0, (1 << 16) - 1), st.integers(0, (1 << 16) - 1))
def test_accelerated_matches_plain(x, y):
    assert accelerated_bs(x, y) == bs(x, y)


def test_enumeration_counts_stable():
    bundles = list(enumerate_thm41_params(8))
    assert all(p.a < 1 << 8 for p in bundles)
    assert len(set(bundles)) == len(bundles)


def test_small_sweeps():
    for res in (sweep_thm41(8), sweep_lemma43(8), sweep_lemma44(8), sweep_lemma45(8),
                sweep_lemma46(8), sweep_lemma47(8), sweep_lemma48(8), sweep_dispatcher(8)):
        assert res.passed, res.summary()
        assert res.checked > 0


def test_coverage_frozen():
    assert acceleration_coverage(12) == {
        "rows": 4095, "split_rows": 1208, "naive_ops": 57856, "fast_ops": 16962}
