import random

import pytest

from borelkit.errors import InvalidInput, NonMinimalPresentation, NotRearTorsionFree
from borelkit.ideal import SstIdeal, member
from borelkit.linalg import Field, matmul, rank
from borelkit.monomial import Monomial, degree_map, degree_of, delta_set, parse_monomial as P
from borelkit.shiftmod import (FiniteShiftModule, IdealNormalForm, TableNormalForm, cokernel,
                               direct_sum, dual_module, dual_morphism, expand, expand_morphism,
                               free_rank_one, from_sst_ideal, generators, kernel, projective,
                               projective_support, quotient_module, radical_quotient,
                               random_module, random_presentation, rear_torsion_free_report,
                               sort_generators, presentation_regularity, validate, validate_table)

from suite import property_suite

F = Field(32003)


def _box(ideal):
    return max(ideal.maxvar, 1), max(ideal.maxdeg, 1)


def test_projective_supports():
    assert projective_support((1, 1, 0), 2, 2) == [(2, 0, 0), (1, 1, 0)]
    assert len(projective_support((0, 0, 0, 3), 3, 3)) == len(delta_set(3, 3))
    assert projective_support((3, 0, 0, 0), 3, 3) == [(3, 0, 0, 0)]
    assert validate(projective((1, 1, 0), 2, 2))["valid"]


def test_corrupted_square_is_reported():
    v = from_sst_ideal(SstIdeal.parse("x2"), 2, 2)
    data = v.to_dict()
    # drop s_2 out of (1,0,1); the square at (0,1,1) for p=1, q=2 then breaks
    data["shifts"] = [s for s in data["shifts"] if not (s[0] == [1, 0, 1] and s[1] == 2)]
    bad = FiniteShiftModule.from_dict(data)
    report = validate(bad)
    assert not report["valid"]
    assert {"kind": "square", "degree": [0, 1, 1], "p": 1, "q": 2} in report["violations"]


def test_from_sst_ideal():
    assert validate(from_sst_ideal(SstIdeal.parse("x1*x2"), 2, 2))["valid"]
    assert from_sst_ideal(SstIdeal.parse("x1^2"), 2, 2).support() == [(2, 0, 0)]
    assert from_sst_ideal(SstIdeal([Monomial()]), 2, 3) == projective((0, 0, 3), 2, 3)
    with pytest.raises(InvalidInput):
        from_sst_ideal(SstIdeal.parse("x3"), 2, 2)
    for ideal in property_suite(15):
        m, n = _box(ideal)
        v = from_sst_ideal(ideal, m, n)
        assert validate(v)["valid"]
        assert generators(v) == sorted(degree_of(g, m, n) for g in ideal.gens)


def test_generators_of_sums():
    assert generators(projective((1, 1, 0), 2, 2)) == [(1, 1, 0)]
    v = direct_sum(projective((1, 1, 0), 2, 2), projective((0, 1, 1), 2, 2), projective((1, 1, 0), 2, 2))
    assert generators(v) == [(0, 1, 1), (1, 1, 0), (1, 1, 0)]
    assert radical_quotient(v) == {(0, 1, 1): 1, (1, 1, 0): 2}


def test_dual_of_small_ideal_sits_at_unit():
    w = dual_module(from_sst_ideal(SstIdeal.parse("x1^2"), 2, 2))
    assert w.support() == [(0, 0, 2)]
    assert validate(w)["valid"]


def test_dual_module_random():
    rng = random.Random(4)
    for m, n in [(3, 3), (2, 4), (3, 2)]:
        for _ in range(10):
            v = random_module(rng, m, n, F)
            assert validate(v)["valid"]
            w = dual_module(v)
            assert (w.m, w.n) == (n, m)
            assert validate(w)["valid"]
            assert dual_module(w) == v
            for d in delta_set(m, n):
                assert w.dim(degree_map(d, m, n)) == v.dim(d)


def test_dual_is_exact_on_presentations():
    rng = random.Random(8)
    for _ in range(15):
        phi = random_presentation(rng, 3, 3, F)
        q, proj = cokernel(phi)
        k, inc = kernel(proj)
        # 0 -> K -> P -> Q -> 0, dualized to 0 -> Q* -> P* -> K* -> 0
        pd, qd, kd = dual_module(phi.target), dual_module(q), dual_module(k)
        a = dual_morphism(proj, pd, qd)
        b = dual_morphism(inc, kd, pd)
        assert a.is_morphism() and b.is_morphism()
        for e in delta_set(3, 3):
            dp, dq, dk = pd.dim(e), qd.dim(e), kd.dim(e)
            assert dp == dq + dk
            ra = rank(a.at(e), F) if dq and dp else 0
            rb = rank(b.at(e), F) if dk and dp else 0
            assert ra == dq and rb == dk
            if dq and dk:
                assert all(not x for row in matmul(b.at(e), a.at(e), F, inner=dp) for x in row)


def test_expand_projective_is_principal_ideal():
    table = expand(projective((1, 1, 0), 2, 2), 3)
    ideal = SstIdeal.parse("x1*x2")
    for a in table.degrees():
        assert table.dim(a) == (1 if member(Monomial.from_exponents(a), ideal) else 0)
    assert validate_table(table)["valid"]


def test_expand_zero_module():
    zero = FiniteShiftModule(2, 2, {})
    table = expand(zero, 4)
    assert all(table.dim(a) == 0 for a in table.degrees())


def test_expand_tables_are_consistent():
    rng = random.Random(2)
    for _ in range(15):
        v = random_module(rng, 3, 3, F)
        assert validate_table(expand(v, 5))["valid"]
    for ideal in property_suite(10, max_var=4, max_deg=4):
        m, n = _box(ideal)
        table = expand(from_sst_ideal(ideal, m, n), n + 2)
        for a in table.degrees():
            assert table.dim(a) == (1 if member(Monomial.from_exponents(a), ideal) else 0)
        assert rear_torsion_free_report(table)["rear_torsion_free"]


def test_expand_is_exact():
    rng = random.Random(6)
    for _ in range(10):
        phi = random_presentation(rng, 3, 2, F)
        k, _ = kernel(phi)
        ek = expand(k, 4)
        mats = expand_morphism(phi, 4)
        for a, mat in mats.items():
            src = ek.dim(a)
            full = expand(phi.source, 4).dim(a)
            nullity = full - (rank(mat, F) if mat and mat[0] and expand(phi.target, 4).dim(a) else 0)
            assert src == nullity


def test_free_rank_one_obstruction():
    assert free_rank_one((3, 0, 0), 5).dim((3, 0, 0)) == 1
    for d in [(1, 1, 0), (0, 0, 1), (2, 0, 1), (0, 1)]:
        with pytest.raises(InvalidInput):
            free_rank_one(d, sum(d) + 3)


def test_presentation_regularity():
    rep = presentation_regularity([P("x1^2*x2")], [P("x1*x2")], [[1]])
    assert rep["image_reg"] == 3 and rep["coker_reg"] == 2
    rep = presentation_regularity([], [P("x1*x2")], [[]])
    assert rep["image_reg"] is None and rep["coker_reg"] == 2
    gens = [P("x1^3"), P("x1^2*x2"), P("x2^3")]
    rep = presentation_regularity(gens, [Monomial()], [[1, 1, 1]])
    assert rep["expansion_degree"] == 3
    with pytest.raises(NonMinimalPresentation):
        presentation_regularity([P("x1")], [P("x1")], [[1]])


def test_ideal_normal_form():
    nf = IdealNormalForm(SstIdeal.parse("x1*x2"))
    assert nf.generators == [P("x1^2"), P("x1*x2")]
    j = nf.generators.index(P("x1*x2"))
    assert nf.normal_form(P("x1"), j) == [(1, P("x2"), nf.generators.index(P("x1^2")))]
    assert nf.normal_form(P("x3"), j) == [(1, P("x3"), j)]
    for mult in [P("x1^2*x3"), P("x2*x3"), P("x1")]:
        (c, mono, k), = nf.normal_form(mult, j)
        assert nf.normal_form(mono, k) == [(c, mono, k)]


def test_generator_order():
    gens = [P("x2^2"), P("x1^2"), P("x1*x2"), P("x1")]
    assert sort_generators(gens) == [P("x1"), P("x1^2"), P("x1*x2"), P("x2^2")]


def test_table_normal_form_matches_ideal():
    ideal = SstIdeal.parse("x1*x2^2, x1^2*x3")
    m, n = _box(ideal)
    nf = TableNormalForm(expand(from_sst_ideal(ideal, m, n), n + 3))
    inf = IdealNormalForm(ideal)
    assert [Monomial.from_exponents(d) for d, _ in nf.gens] == inf.generators


def test_quotient_is_not_rear_torsion_free():
    ideal = SstIdeal.parse("x1")
    with pytest.raises(NotRearTorsionFree):
        TableNormalForm(expand(quotient_module(ideal, 2, 2), 4))


def test_module_json_roundtrip():
    rng = random.Random(12)
    for field in (F, Field(None)):
        v = random_module(rng, 2, 3, field)
        assert FiniteShiftModule.from_json(v.to_json()) == v
