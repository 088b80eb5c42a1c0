import random
from collections import Counter

import pytest

from borelkit.errors import DomainMismatch, ParseError
from borelkit.ideal import (SstIdeal, equals, hilbert_function, ideal_sum, intersect, member,
                            monomial_min_gens, random_sst_ideal, sst_minimalize)
from borelkit.monomial import Monomial, parse_monomial as P

from suite import members_upto, property_suite


def mons(*texts):
    return [P(t) for t in texts]


def test_minimalize_drops_dominating_generators():
    # x1^2*x2^3 >=_st x1^2*x2^2*x3
    got = sst_minimalize(mons("x1^2*x2^3", "x1^2*x2^2*x3", "x1^3*x3^2"))
    assert set(got.gens) == set(mons("x1^2*x2^2*x3", "x1^3*x3^2"))
    # here x1^3*x3^2 also lies in <x1^2*x2*x3>
    got = sst_minimalize(mons("x1^2*x2^2", "x1^2*x2*x3", "x1^3*x3^2"))
    assert got.gens == (P("x1^2*x2*x3"),)
    assert sst_minimalize(mons("x1*x3")).gens == (P("x1*x3"),)
    assert set(sst_minimalize(mons("x1^2", "x1*x2", "x2^3")).gens) == set(mons("x1*x2", "x2^3"))


def test_zero_and_unit():
    zero, unit = SstIdeal([]), SstIdeal([Monomial()])
    assert zero.is_zero and not unit.is_zero and unit.is_unit
    assert member(Monomial(), unit) and not member(Monomial(), zero)
    assert str(zero) == "<>" and str(unit) == "<1>"


def test_monomial_min_gens():
    assert monomial_min_gens(SstIdeal(mons("x1*x2"))) == tuple(mons("x1^2", "x1*x2"))
    assert monomial_min_gens(SstIdeal(mons("x1^5"))) == (P("x1^5"),)
    gens = monomial_min_gens(SstIdeal(mons("x1^3*x2^3", "x1^3*x2^2*x3", "x1^4*x3^2")))
    by_top = Counter(u.max_var for u in gens)
    assert by_top == {1: 1, 2: 3, 3: 4}
    assert P("x1^6") in gens


def test_member_examples():
    assert member(P("x1^2*x2"), SstIdeal(mons("x1*x2*x3")))
    assert not member(Monomial(), SstIdeal(mons("x1")))
    assert not member(P("x2^3"), SstIdeal(mons("x1*x2")))


def test_intersect_and_sum_examples():
    i, j = SstIdeal(mons("x1", "x2^3")), SstIdeal(mons("x2^2"))
    assert equals(intersect(i, j), SstIdeal(mons("x1*x2", "x2^3")))
    for d in range(7):
        brute = members_upto(i, 6, 3) & members_upto(j, 6, 3)
        assert brute == members_upto(intersect(i, j), 6, 3)
    assert equals(SstIdeal(mons("x1^2", "x2^2", "x3^2")), SstIdeal(mons("x3^2")))
    assert equals(intersect(i, i), i) and equals(ideal_sum(i, i), i)


def test_hilbert_function_examples():
    assert hilbert_function(SstIdeal(mons("x1")), 3, 2) == (0, 1, 2, 3)
    assert hilbert_function(SstIdeal([Monomial()]), 2, 2) == (1, 2, 3)
    assert hilbert_function(SstIdeal(mons("x1*x2*x3")), 3, 3) == (0, 0, 0, 5)


def test_parse_and_json_roundtrip():
    ideal = SstIdeal.parse("y2*y3, y1^2*y4")
    assert ideal.alphabet == "y"
    again = SstIdeal.from_json(ideal.to_json())
    assert again == ideal and again.alphabet == "y"
    assert SstIdeal.parse(["x1", "x1*x2"]) == SstIdeal.parse("x1")
    with pytest.raises(ParseError):
        SstIdeal.parse("x1, y2")
    with pytest.raises(ParseError):
        SstIdeal.from_json("{bad")


def test_alphabet_mismatch():
    with pytest.raises(DomainMismatch):
        ideal_sum(SstIdeal.parse("x1"), SstIdeal.parse("y1"))


def test_suite_min_gens_generate_the_ideal():
    for ideal in property_suite(20):
        gens = monomial_min_gens(ideal)
        top = ideal.maxdeg + 3
        for u in members_upto(SstIdeal([Monomial()]), top, ideal.maxvar):
            assert member(u, ideal) == any(g.divides(u) for g in gens)


def test_suite_strong_stability_closure():
    for ideal in property_suite(20):
        for u in members_upto(ideal, ideal.maxdeg + 2, ideal.maxvar):
            for j in set(u.factors):
                for i in range(1, j):
                    assert member((u / Monomial({j: 1})) * Monomial({i: 1}), ideal)


def test_lattice_laws_random():
    rng = random.Random(11)
    for _ in range(40):
        i, j, k = (random_sst_ideal(rng, max_gens=3, max_deg=4, max_var=4) for _ in range(3))
        assert equals(intersect(i, j), intersect(j, i))
        assert equals(ideal_sum(i, j), ideal_sum(j, i))
        assert equals(intersect(intersect(i, j), k), intersect(i, intersect(j, k)))
        assert equals(intersect(i, ideal_sum(i, j)), i)
        assert SstIdeal(i.gens).gens == i.gens
