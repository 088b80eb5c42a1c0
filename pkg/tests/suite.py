"""Shared seeded inputs and brute-force oracles for the tests."""
import random
from itertools import combinations_with_replacement

from borelkit.ideal import SstIdeal, member, random_sst_ideal
from borelkit.monomial import Monomial

SEED = 7


def property_suite(count=30, seed=SEED, **kw):
    rng = random.Random(seed)
    return [random_sst_ideal(rng, **kw) for _ in range(count)]


def monomials_upto(max_degree, nvars):
    for d in range(max_degree + 1):
        for seq in combinations_with_replacement(range(1, nvars + 1), d):
            yield Monomial.from_factors(seq)


def members_upto(ideal, max_degree, nvars):
    return {u for u in monomials_upto(max_degree, nvars) if member(u, ideal)}


def weakly_increasing(length, top):
    """All weakly increasing sequences in 1..top of the given length."""
    return list(combinations_with_replacement(range(1, top + 1), length))


# generator sets where some map is never the strict unique minimum
CONDITION_FAILURES = [
    ["x1", "x2*x4", "x3*x4^2"],
    ["x1^2*x2", "x1*x2^2*x4", "x1*x2*x3^2"],
    ["x1^2", "x1*x2*x4", "x2^2*x3^2"],
    ["x1", "x2*x4", "x3^2"],
    ["x1*x2*x3", "x1*x3*x4^2", "x2*x3^2*x4"],
]


def ideal(text):
    return SstIdeal.parse(text)
