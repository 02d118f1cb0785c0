import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from laver.core import BudgetExceeded
from laver.crit import ABOVE_CAP, crit_index
from laver.terms import (
    J,
    NotFound,
    Term,
    TermSyntaxError,
    apply,
    compose_terms,
    enumerate_terms,
    eval_term,
    f_of,
    format_term,
    j_sub,
    j_sup,
    lemma28_check,
    lemma29_sweep,
    ld_rewrites,
    left_power,
    one_star_sixteen,
    parse_term,
    random_term,
    search_nonzero,
    theorem31_check,
    tower,
)


def test_parse_and_format():
    t = parse_term("j*(j*(j*j))")
    assert t == tower(3)
    assert format_term(t) == "j*(j*(j*j))"
    assert parse_term("j*j*j") == left_power(3)
    assert parse_term(" ( j o j ) * j ").left.op == "o"


@pytest.mark.parametrize("text,pos", [("", 0), ("j*", 2), ("(j", 2), ("jj", 1), ("j+j", 1)])
def test_parse_errors(text, pos):
    with pytest.raises(TermSyntaxError) as err:
        parse_term(text)
    assert err.value.pos == pos


@given(st.integers(1, 9), st.randoms())
def test_format_round_trip(size, rnd):
    t = random_term(rnd, size)
    assert parse_term(format_term(t)) == t
    assert t.size == size


def test_bad_nodes():
    with pytest.raises(ValueError):
        Term("*", J)
    with pytest.raises(ValueError):
        Term("+", J, J)


def test_eval_examples():
    assert eval_term(J, 3) == 1
    assert eval_term(J, 0) == 0
    assert eval_term(J * J, 2) == 2
    assert eval_term(parse_term("(j*j)*j"), 2) == 3
    assert eval_term(parse_term("j*(j*(j*j))"), 4) == 0
    assert eval_term(compose_terms(J, J), 2) == 3


def test_deep_terms_do_not_recurse():
    t = tower(5000)
    assert eval_term(t, 3) == j_sup(5000, 3)[3]
    assert len(format_term(t)) > 5000
    with pytest.raises(BudgetExceeded):
        eval_term(t, 3, budget=100)


def test_enumeration_counts():
    assert len(enumerate_terms(6)) == 65
    assert len(enumerate_terms(7)) == 197
    assert len(enumerate_terms(3, with_compose=True)) == 1 + 2 + 8


@pytest.mark.parametrize("m,expect", [(1, 0), (2, 1), (12, 2), (96, 5)])
def test_theorem21_values(m, expect):
    assert crit_index(j_sub(m, 10)) == expect


def test_jsub_at_cap_edge():
    assert crit_index(j_sub(1024, 10)) is ABOVE_CAP
    assert crit_index(j_sub(1024, 11)) == 10


@given(st.integers(1, 300), st.integers(0, 6))
def test_jsub_closed_form(m, n):
    assert j_sub(m, n)[n] == eval_term(left_power(m), n)


def test_jsup():
    assert all(r == 0 for r in j_sup(3, 3).residues)
    assert j_sup(0, 3)[3] == 1
    assert j_sup(3, 5)[4] == eval_term(tower(3), 4)


def test_fof_values():
    assert [f_of(n, 10) for n in range(4)] == [0, 1, 2, 4]
    assert f_of(3, 3) is ABOVE_CAP


def test_search_nonzero():
    assert search_nonzero(J, 5) == 1
    assert search_nonzero(left_power(2), 5) == 2
    assert search_nonzero(apply(J, left_power(16)), 12) == NotFound(12)
    assert str(NotFound(12)) == "NOT_FOUND(12)"
    assert one_star_sixteen() == apply(J, left_power(16))


def test_lemma28_examples():
    assert lemma28_check(J, [J], 6)
    assert lemma28_check(left_power(3), [J, J * J], 6)
    with pytest.raises(ValueError):
        lemma28_check(J, [], 4)


@pytest.mark.parametrize("n,triple", [(0, (0, 1, 2)), (1, (0, 2, 4)), (2, (0, 4, 8))])
def test_theorem31(n, triple):
    rep = theorem31_check(n, 8)
    assert rep.passed
    assert rep.c_triple == triple
    if n == 2:
        assert rep.r_images == {1: 5, 2: 6, 3: 7}


def test_lemma29_small():
    res = lemma29_sweep(6, 10)
    assert res.passed
    assert res.info["distinct_residues"] == 28


def test_ld_rewrites_preserve_value():
    rng = random.Random(7)
    for _ in range(60):
        t = random_term(rng, rng.randint(3, 7))
        for u in ld_rewrites(t):
            assert all(eval_term(t, n) == eval_term(u, n) for n in range(7))


def test_fof_stable_in_cap():
    for n in range(3):
        seen = {f_of(n, cap) for cap in range(n + 2, 11)} - {ABOVE_CAP}
        assert len(seen) == 1
