"""Generic poset machinery: intervals, chains, thinness, labeled chains."""

import json

import numpy as np
import pytest

from coxmorse.cells import pair_poset
from coxmorse.errors import ELViolation, NotComparable, NotPure
from coxmorse.matchings import labeled_interval
from coxmorse.posets import (
    all_maximal_chains,
    check_el_labeling,
    euler_characteristic,
    interval,
    is_pure,
    is_thin,
    poset_from_covers,
    poset_from_json,
    poset_from_leq,
    poset_to_dot,
    poset_to_json,
)
from coxmorse.reflection_orders import order_from_reduced_word


def chain_poset(n):
    """0 < 1 < ... < n-1."""
    return poset_from_covers([str(i) for i in range(n)], list(range(n)),
                             [(i, i + 1, None) for i in range(n - 1)])


def boolean_2():
    """Four-element diamond."""
    return poset_from_covers(["0", "a", "b", "1"], [0, 1, 1, 2],
                             [(0, 1, None), (0, 2, None), (1, 3, None), (2, 3, None)])


def test_closure_reduction_roundtrip():
    p = boolean_2()
    q = poset_from_leq(p.names, p.dims, p.leq)
    assert q.covers == tuple((lo, hi, None) for lo, hi, _ in p.covers)
    assert np.array_equal(q.leq, p.leq)


def test_interval_basics(system):
    s = system("A2")
    li = labeled_interval(s, 0, s.w0)
    assert li.poset.n == 6 and len(li.poset.covers) == 8
    sub = interval(li.poset, li.index[0], li.index[0])
    assert sub.n == 1
    with pytest.raises(NotComparable):
        interval(li.poset, li.index[s.simple(1)], li.index[s.simple(2)])


def test_fixture_interval_size(system):
    s = system("A3")
    li = labeled_interval(s, s.parse_word("2"), s.parse_word("2.3.1.2"))
    assert li.poset.n == 10 and len(li.poset.covers) == 16


def test_maximal_chains(system):
    s = system("A2")
    li = labeled_interval(s, 0, s.w0)
    chains = all_maximal_chains(li.poset, li.index[0], li.index[s.w0])
    assert len(chains) == 4
    for ch in chains:
        assert len(ch.elements) == 4
        # bottom-up label word multiplies to v w^{-1}
        prod = 0
        for lab in ch.labels_up:
            prod = s.mul(prod, lab)
        assert prod == s.mul(0, s.inverse(s.w0))
    single = all_maximal_chains(li.poset, li.index[0], li.index[s.simple(1)])
    assert len(single) == 1


def test_chain_label_products(system):
    s = system("A3")
    for v, w in s.comparable_pairs(strict=True):
        if s.len_of(w) - s.len_of(v) > 5:
            continue
        li = labeled_interval(s, v, w)
        want = s.mul(v, s.inverse(w))
        for ch in all_maximal_chains(li.poset, li.index[v], li.index[w]):
            prod = 0
            for lab in ch.labels_up:
                prod = s.mul(prod, lab)
            assert prod == want


def test_purity_and_thinness():
    assert is_pure(chain_poset(3))
    assert not is_thin(chain_poset(3))
    assert is_thin(boolean_2())
    # pure fails when one branch is longer
    lop = poset_from_covers(["a", "b", "c", "d"], [0, 1, 2, 3],
                            [(0, 1, None), (1, 2, None), (2, 3, None)])
    assert is_pure(lop)
    uneven = poset_from_leq(
        ["x", "m", "y"], [0, 1, 2],
        np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool))
    # x < m < y and the direct relation x < y: still pure (chains equal)
    assert is_pure(uneven)


def test_bruhat_interval_thin(system):
    s = system("A3")
    li = labeled_interval(s, 0, s.w0)
    assert is_pure(li.poset)
    assert is_thin(li.poset)


def test_not_pure_raises():
    # chains a-b-c-e and a-d-e have different lengths
    impure = poset_from_covers(
        ["a", "b", "c", "d", "e"], [0, 1, 2, 1, 3],
        [(0, 1, None), (1, 2, None), (2, 4, None), (0, 3, None), (3, 4, None)])
    assert not is_pure(impure)
    with pytest.raises(NotPure):
        is_thin(impure)


def test_euler_characteristic(system):
    point = poset_from_covers(["pt"], [0], [])
    assert euler_characteristic(point) == 1
    s = system("A2")
    pairs = s.comparable_pairs()
    pp = pair_poset(s, pairs)
    assert pp.n == 19
    assert euler_characteristic(pp) == 1
    li = labeled_interval(s, 0, s.w0)
    assert euler_characteristic(li.poset) == 0   # balanced interval


def test_el_labeling_a2(system):
    s = system("A2")
    order = order_from_reduced_word(s, [1, 2, 1])
    li = labeled_interval(s, 0, s.w0)
    report = check_el_labeling(li.poset, order, li.index[0], li.index[s.w0])
    assert report.ok and report.chain_count == 4
    # the increasing chain passes through s1 and s1s2
    ids = [li.ids[i] for i in report.increasing_chain.elements]
    assert ids == [s.w0, s.parse_word("1.2"), s.parse_word("1"), 0]
    # rank-1 interval is trivially fine
    tiny = labeled_interval(s, 0, s.simple(1))
    assert check_el_labeling(tiny.poset, order, tiny.index[0], tiny.index[s.simple(1)]).ok


def test_el_labeling_violation_on_bad_ranks(system):
    s = system("A2")
    li = labeled_interval(s, 0, s.w0)
    # ranking that inverts the dihedral middle: 1.2.1 before 1 and after 2
    bad = {s.parse_word("1.2.1"): 0, s.parse_word("1"): 1, s.parse_word("2"): 2}
    with pytest.raises(ELViolation):
        check_el_labeling(li.poset, bad, li.index[0], li.index[s.w0])


def test_json_roundtrip(system):
    s = system("A2")
    li = labeled_interval(s, 0, s.w0)
    doc = poset_to_json(li.poset)
    text = json.dumps(doc, sort_keys=True)
    back = poset_from_json(json.loads(text))
    assert back.names == li.poset.names
    assert back.covers == li.poset.covers
    assert np.array_equal(back.leq, li.poset.leq)


def test_dot_output(system):
    s = system("A2")
    li = labeled_interval(s, 0, s.w0)
    dot = poset_to_dot(li.poset, [(0, 2)], {t: s.word_str(t) for t in s.reflections})
    assert dot.startswith("graph poset {")
    assert "color=red penwidth=2" in dot
    assert dot.count("--") == 8


def test_el_labeling_b3_samples(system):
    # sampled orders on a bigger group, intervals of modest rank
    from coxmorse.verify import check_el_properties, sampled_orders

    s = system("B3")
    rep = check_el_properties(s, sampled_orders(s, 3), max_rank=3)
    assert rep.ok and rep.instances > 0


def test_fixture_bottom_is_not_below_all_figure_elements(system):
    # the 10-element interval of the fixture only exists over bottom 2:
    # over bottom 1 the interval misses 3.2.3 and friends and has 8 elements
    s = system("A3")
    w = s.parse_word("2.3.1.2")
    assert not s.bruhat_leq(s.parse_word("1"), s.parse_word("3.2.3"))
    li = labeled_interval(s, s.parse_word("1"), w)
    assert li.poset.n == 8
