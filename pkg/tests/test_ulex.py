import pytest

from borelkit.duality import dual
from borelkit.errors import InvalidInput
from borelkit.ideal import SstIdeal, equals, member
from borelkit.monomial import parse_monomial as P
from borelkit.ulex import ulex_gamma, ulex_lambda, verify_ulex_duality

from suite import weakly_increasing


def test_gamma_examples():
    assert equals(ulex_gamma((2, 3)), SstIdeal.parse("x1, x2^2, x2*x3"))
    assert ulex_gamma((2, 3)).gens == (P("x1"), P("x2*x3"))
    for n in range(2, 6):
        assert equals(ulex_gamma((n,)), SstIdeal([P(f"x{n - 1}"), P(f"x{n}")]))
    assert ulex_gamma((1,)) == SstIdeal.parse("x1")


def test_lambda_examples():
    assert ulex_lambda((2, 3)) == SstIdeal.parse("x1^2, x1*x2^2")
    for a in range(1, 5):
        assert ulex_lambda((a,)) == SstIdeal([P(f"x1^{a}")])


def test_truncated_identity_prefixes():
    assert set(ulex_gamma((1, 2, 3, 4), truncate=4).gens) == {
        P("x1^2"), P("x1*x2^2"), P("x1*x2*x3^2")}
    got = ulex_lambda((1, 2, 3), truncate=3, alphabet="y")
    assert got == SstIdeal.parse("y1, y2^2, y2*y3^2")


def test_duality_examples():
    assert verify_ulex_duality((2, 3))
    assert verify_ulex_duality((1,))
    assert equals(dual(ulex_gamma((2, 3))), ulex_lambda((2, 3)))


def test_duality_sweep_small():
    for length in range(1, 4):
        for vals in weakly_increasing(length, 5):
            assert verify_ulex_duality(vals)


def test_truncation_is_increasing_chain():
    vals = (1, 2, 4, 4, 6)
    for side in (ulex_gamma, ulex_lambda):
        chain = [side(vals, truncate=r) for r in range(1, len(vals) + 1)]
        for small, big in zip(chain, chain[1:]):
            assert all(member(g, big) for g in small.gens)


def test_extension_stability():
    # the generators do not depend on how many variables the ambient ring has
    ideal = ulex_gamma((2, 3, 5))
    for u in ideal.gens:
        assert u.max_var <= 5
    assert ulex_gamma((2, 3, 5)).gens == SstIdeal(ideal.gens).gens


def test_bad_input():
    with pytest.raises(InvalidInput):
        ulex_gamma((3, 2))
    with pytest.raises(InvalidInput):
        ulex_gamma((0, 2))
    with pytest.raises(InvalidInput):
        ulex_lambda((1, 2), truncate=3)
