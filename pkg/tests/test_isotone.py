from itertools import product

import pytest
from hypothesis import given, strategies as st

from borelkit.errors import DomainMismatch, GuardExceeded, ParseError, UnrepresentableClass
from borelkit.isotone import (INF, IsotoneMap, box_map, dual, embed_box_map, enumerate_box,
                              join, large, leq, lex_cmp, meet, ne_decode, ne_encode,
                              parse_isotone, small, small_large_convert)


def test_dual_of_worked_example():
    f = large([2, 2, 4, 5, 5, 7])
    g = dual(f)
    assert g.prefix == (1, 3, 3, 4, 6, 6)
    assert g.tail == 7
    assert dual(g) == f


def test_dual_of_all_infinite_is_constant_one():
    g = dual(IsotoneMap((), INF))
    assert g == small([], 1)
    assert g(1) == 1 and g(50) == 1


def test_dual_small_hand_case():
    assert dual(large([2, 3])) == small([1, 2], 3)


def test_canonical_form_trims_constant_tail():
    assert small([2, 2], 2) == small([], 2)
    assert str(small([1, 2, 3, 3], 3)) == "[1,2|3]"


def test_leq_examples():
    assert leq(large([1, 2]), large([1, 3]))
    assert not leq(small([2], 2), small([1], 3))
    f, g = large([1, 1]), large([1, 2])
    assert leq(f, g) and leq(dual(g), dual(f))


def test_lex_cmp_examples():
    f = large([2, 3])
    assert lex_cmp(f, small([2, 2], 2)) == 1
    assert lex_cmp(f, f) == 0


def test_meet_examples():
    assert meet(large([1, 1, 2, 3]), large([1, 2, 2, 2, 3])) == large([1, 1, 2, 2, 3])
    assert meet(small([2], 2), large([1])) == small([1], 2)
    f = large([1, 3, 4])
    assert meet(f, f) == f


def test_small_large_convert():
    assert small_large_convert((2, 3), "small") == small([2], 4)
    assert small_large_convert((2, 3), "large") == large([2, 3])
    assert small_large_convert((1,), "small") == small([], 2)


def test_small_large_are_lex_adjacent():
    # no map sits strictly between f_S and f^L among maps of a slightly larger box
    for f in enumerate_box(3, 3):
        vals = tuple(v for v in f.prefix if v <= 3)
        if not vals:
            continue
        s, l = small_large_convert(vals, "small"), small_large_convert(vals, "large")
        assert lex_cmp(s, l) == 1
        for g in enumerate_box(len(vals) + 1, 5):
            h = embed_box_map(g)
            assert not (lex_cmp(s, h) == 1 and lex_cmp(h, l) == 1)


def test_enumerate_box_counts():
    assert [str(f) for f in enumerate_box(1, 1)] == ["(1;n=1)", "(2;n=1)"]
    assert len(list(enumerate_box(2, 2))) == 6
    assert len(list(enumerate_box(3, 3))) == 20
    with pytest.raises(GuardExceeded):
        list(enumerate_box(12, 12, max_candidates=1000))


def test_box_dual_is_involution_and_swaps_box():
    for m, n in product(range(1, 5), repeat=2):
        for f in enumerate_box(m, n):
            g = dual(f)
            assert (g.length, g.bound) == (n, m)
            assert dual(g) == f


def test_order_and_lex_reversal_exhaustive():
    for m, n in [(2, 3), (3, 3), (4, 4)]:
        maps = list(enumerate_box(m, n))
        duals = {f: dual(f) for f in maps}
        for f in maps:
            for g in maps:
                assert leq(f, g) == leq(duals[g], duals[f])
                assert lex_cmp(f, g) == lex_cmp(duals[g], duals[f])


def test_dual_exchanges_small_and_large():
    for f in enumerate_box(4, 4):
        h = embed_box_map(f)
        if h.is_large:
            assert dual(h).is_small
        assert dual(dual(h)) == h


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        leq(box_map((1, 2), 3), box_map((1, 2, 2), 3))


def test_parse_roundtrip_and_errors():
    for text in ["[2,2,4,5,5,7|inf]", "[1,2|3]", "[|1]", "[|inf]"]:
        assert str(parse_isotone(text)) == text
    with pytest.raises(ParseError):
        parse_isotone("[3,2|inf]")
    with pytest.raises(ParseError):
        parse_isotone("2,3")
    with pytest.raises(UnrepresentableClass):
        parse_isotone("[1,2|unbounded]")


def test_ne_path_codec():
    assert ne_encode((1,)) == ""
    word = ne_encode((2, 2, 3))
    assert word.count("E") == 2 and word.count("N") == 2
    assert ne_decode(word) == (2, 2, 3)
    # fiber over the endpoint (3,3)
    ends = [f for f in enumerate_box(3, 3) if f.prefix[-1] == 3]
    assert len(ends) == 6
    with pytest.raises(ParseError):
        ne_decode("NX")


values = st.lists(st.integers(1, 6), max_size=6).map(sorted)


@given(values, st.one_of(st.just(INF), st.integers(1, 8)))
def test_dual_involution_random(vals, tail):
    if tail is not INF and vals and tail < vals[-1]:
        tail = vals[-1]
    f = IsotoneMap(tuple(vals), tail)
    assert dual(dual(f)) == f


@given(values, values, values)
def test_meet_join_lattice_laws(a, b, c):
    f, g, h = large(a), large(b), large(c)
    assert meet(f, g) == meet(g, f)
    assert meet(meet(f, g), h) == meet(f, meet(g, h))
    assert meet(f, f) == f
    assert leq(meet(f, g), f) and leq(f, join(f, g))
    if leq(f, g):
        assert leq(meet(f, h), meet(g, h))
