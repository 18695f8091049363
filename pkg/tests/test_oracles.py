"""Brute-force oracles, and production-vs-oracle equivalences."""

import pytest

from coxmorse.errors import CapExceeded
from coxmorse.matchings import build_matching, labeled_interval, matching_from_pairs
from coxmorse.oracles import (
    oracle_bruhat_leq,
    oracle_demazure,
    oracle_reduced_words,
    oracle_reflection_orders,
    oracle_unmatched_scan,
)
from coxmorse.posets import poset_from_covers
from coxmorse.reflection_orders import order_from_reduced_word, validate


def test_bruhat_oracle_trivia(system):
    s = system("A2")
    assert all(oracle_bruhat_leq(s, 0, w) for w in range(s.size))
    assert not oracle_bruhat_leq(s, s.simple(1), s.simple(2))


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_bruhat_oracle_matches_production(system, name):
    s = system(name)
    for v in range(s.size):
        for w in range(s.size):
            assert oracle_bruhat_leq(s, v, w) == s.bruhat_leq(v, w)


def test_demazure_oracle_trivia(system):
    s = system("A2")
    s1 = s.simple(1)
    assert oracle_demazure(s, s1, 0, "star") == s1
    assert oracle_demazure(s, s1, s1, "circ_r") == 0
    with pytest.raises(ValueError):
        oracle_demazure(s, 0, 0, "frobnicate")


def test_demazure_exhaustive_b2(system):
    s = system("B2")
    for x in range(s.size):
        for y in range(s.size):
            assert s.demazure_star(x, y) == oracle_demazure(s, x, y, "star")
            assert s.circ_l(x, y) == oracle_demazure(s, x, y, "circ_l")
            assert s.circ_r(x, y) == oracle_demazure(s, x, y, "circ_r")


def test_circ_l_self_is_not_always_identity(system):
    # folklore trap: x o_l x = e only when x^{-1} <= x (e.g. involutions)
    s = system("A2")
    x = s.parse_word("1.2")
    assert s.circ_l(x, x) == oracle_demazure(s, x, x, "circ_l") == s.simple(2)
    for x in range(s.size):
        if s.bruhat_leq(s.inverse(x), x):
            assert s.circ_l(x, x) == 0


def test_reduced_word_counts(system):
    a2 = system("A2")
    assert sorted(oracle_reduced_words(a2, a2.w0)) == [(1, 2, 1), (2, 1, 2)]
    a3 = system("A3")
    assert len(oracle_reduced_words(a3, a3.w0)) == 16
    b3 = system("B3")
    assert len(oracle_reduced_words(b3, b3.w0)) == 42
    with pytest.raises(CapExceeded):
        oracle_reduced_words(a3, a3.w0, cap=5)


def test_reflection_order_enumeration(system):
    s = system("A3")
    seqs = oracle_reflection_orders(s)
    assert len(seqs) == 16
    for seq in seqs:
        assert sorted(seq) == list(s.reflections)
        assert validate(s, seq).ok


def test_unmatched_scan(system):
    s = system("A2")
    li = labeled_interval(s, 0, s.w0)
    m = build_matching(li, order_from_reduced_word(s, [1, 2, 1]))
    assert oracle_unmatched_scan(li.poset, m) == []
    point = poset_from_covers(["pt"], [0], [])
    assert oracle_unmatched_scan(point, matching_from_pairs(point, [])) == [0]
