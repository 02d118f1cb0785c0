import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from laver.backward import (
    TemplateError,
    attains_bound,
    b_period,
    b_row,
    bs,
    bs_iter,
    naive_b_table,
    subalg,
    subalg_closure,
    template_embed,
)
from laver.core import ElementRangeError


def test_spot_values():
    assert bs(3, 3) == 2
    assert bs(3, 1) == 2
    assert bs(3, 0) == 0
    assert bs(0, 5) == 5
    assert b_period(1) == 1
    assert b_period(3) == 2
    assert b_period(13) == 4


def test_iterated_operation():
    # r counts copies of x: one copy is x itself
    assert bs_iter(2, 1) == 2
    assert bs_iter(2, 2) == 0
    assert bs_iter(3, 2) == 2
    assert bs_iter(3, 3) == 1
    assert bs_iter(0, 4) == 0
    with pytest.raises(ValueError):
        bs_iter(3, 0)


@given(st.integers(0, 300), st.integers(1, 6))
def test_iterated_matches_left_fold(x, r):
    acc = x
    for _ in range(r - 1):
        acc = bs(acc, x)
    assert bs_iter(x, r) == acc


def test_small_subalgebras():
    assert subalg(0).elements == (0,)
    assert set(subalg(2).elements) == {0, 2}
    assert set(subalg(3).elements) == {0, 1, 2, 3}
    assert 1 in subalg(3) and 4 not in subalg(3)


@pytest.mark.parametrize("n", range(0, 6))
def test_naive_b_table_matches_oracle(n):
    t = naive_b_table(n)
    size = 1 << n
    for x in range(size):
        for y in range(size):
            assert t[x, y] == oracles.b_star(n, x, y) == bs(x, y)


@given(st.integers(0, 1023))
def test_subalgebra_is_closure(x):
    if x < 256:
        assert set(subalg(x).elements) == set(subalg_closure(x).elements)
    assert all(y & ~x == 0 for y in subalg(x).elements)


@given(st.integers(0, 4095), st.integers(0, 4095), st.integers(12, 16))
def test_level_independence(x, y, n):
    top = 1 << n
    from laver.core import star_prime

    want = y if x == 0 else top - star_prime(n, top - x, top - y)
    assert bs(x, y) == want


def test_b_row_read_only_and_errors():
    with pytest.raises(ValueError):
        b_row(5)[0] = 1
    with pytest.raises(ElementRangeError):
        b_row(0)
    with pytest.raises(ElementRangeError):
        bs(-1, 0)


def test_template_examples():
    assert attains_bound(3)
    assert template_embed(3, 2) == 2
    assert template_embed(5, 3) == 5
    with pytest.raises(TemplateError):
        template_embed(3, 4)


def test_template_undefined_when_bound_missed():
    x = next(x for x in range(1, 64) if not attains_bound(x))
    with pytest.raises(TemplateError):
        template_embed(x, 0)


@given(st.integers(1, 1023))
def test_template_is_homomorphism(x):
    if not attains_bound(x):
        return
    r = bin(x).count("1")
    for u in range(min(1 << r, 16)):
        for v in range(min(1 << r, 16)):
            assert template_embed(x, bs(u, v)) == bs(template_embed(x, u), template_embed(x, v))
