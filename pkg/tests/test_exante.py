from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from statdisc.blackwell import Dominates, Tag, classify, mps_dominates
from statdisc.core import ExAnteFirm, UnequalMeans, firm, point_mass, population, skill_distribution
from statdisc.exante import (
    ExAnteScenario,
    ZeroCost,
    classify_ex_ante,
    classify_ex_ante_zero_cost,
    construct_excluding_firm,
    excludes,
    interview_value,
    n_dominates,
    normalize_firm,
)
from statdisc.oracle import InstanceSeed, random_mps_split, random_population, random_population_with_mean

from conftest import FULL_INFO, HALF, MATCH_STATE, THREE_POINT, UNIFORM, WIDE, firms, populations

LINEAR = firm([(1, -1)])


@pytest.mark.parametrize("alpha, pop, expected", [
    (F(1), UNIFORM, 0),
    (F(1), FULL_INFO, HALF),
    (HALF, FULL_INFO, F(1, 4)),
])
def test_interview_value(alpha, pop, expected):
    assert interview_value(ExAnteFirm(LINEAR, alpha), pop) == expected


@pytest.mark.parametrize("cost, pop, expected", [
    (F(1, 4), UNIFORM, True),
    (F(1, 4), FULL_INFO, False),
    (HALF, FULL_INFO, True),  # a tie is not interviewed
])
def test_excludes(cost, pop, expected):
    assert excludes(ExAnteFirm(LINEAR), cost, pop) is expected


def test_negative_cost_rejected():
    with pytest.raises(ValueError):
        excludes(ExAnteFirm(LINEAR), F(-1), UNIFORM)
    with pytest.raises(ValueError):
        ExAnteScenario(F(-1), UNIFORM, FULL_INFO)


@pytest.mark.parametrize("tasks, alpha, expected", [
    ([(1, -1)], HALF, [(HALF, -HALF)]),
    ([(2, 0)], F(1), [(2, 0)]),
    ([(4, -2), (0, 2)], F(1, 4), [(1, -HALF), (0, HALF)]),
])
def test_normalize_firm(tasks, alpha, expected):
    assert normalize_firm(ExAnteFirm(firm(tasks), alpha)) == ExAnteFirm(firm(expected), F(1))


def test_construct_excluding_firm_worked_example():
    result = construct_excluding_firm(MATCH_STATE, FULL_INFO, UNIFORM, F(1, 4))
    assert result == ExAnteFirm(firm([(F(1, 3), 0), (0, F(1, 3))]), F(1))
    assert interview_value(result, UNIFORM) == F(1, 6)
    assert interview_value(result, FULL_INFO) == F(1, 3)


def test_construct_excluding_firm_rejects_tie():
    with pytest.raises(ValueError, match="strictly"):
        construct_excluding_firm(LINEAR, FULL_INFO, UNIFORM, F(1))
    with pytest.raises(ValueError):
        construct_excluding_firm(MATCH_STATE, FULL_INFO, UNIFORM, F(0))


def test_construct_from_unsystematic_witness():
    u = classify(WIDE, THREE_POINT)
    result = construct_excluding_firm(u.witnesses[0], THREE_POINT, WIDE, F(1))
    assert excludes(result, 1, WIDE) and not excludes(result, 1, THREE_POINT)


@pytest.mark.parametrize("cost", [F(1, 4), F(7)])
def test_classify_ex_ante_extreme_pair(cost):
    c = classify_ex_ante(ExAnteScenario(cost, UNIFORM, FULL_INFO))
    assert c.tag is Tag.SYSTEMATIC_AGAINST_FIRST
    (w,) = c.witnesses
    assert excludes(w, cost, UNIFORM) and not excludes(w, cost, FULL_INFO)


def test_classify_ex_ante_unsystematic():
    c = classify_ex_ante(ExAnteScenario(F(1), WIDE, THREE_POINT))
    assert c.tag is Tag.UNSYSTEMATIC
    against_first, against_second = c.witnesses
    assert excludes(against_first, 1, WIDE) and not excludes(against_first, 1, THREE_POINT)
    assert excludes(against_second, 1, THREE_POINT) and not excludes(against_second, 1, WIDE)


def test_classify_ex_ante_refuses_zero_cost():
    with pytest.raises(ZeroCost):
        classify_ex_ante(ExAnteScenario(F(0), UNIFORM, FULL_INFO))


def test_unequal_means():
    with pytest.raises(UnequalMeans):
        ExAnteScenario(F(1), point_mass((1, 0)), UNIFORM)
    with pytest.raises(UnequalMeans):
        n_dominates(point_mass((1, 0)), UNIFORM)


def test_n_dominates_examples():
    assert n_dominates(FULL_INFO, UNIFORM)
    assert not n_dominates(UNIFORM, FULL_INFO)


def test_zero_cost_examples():
    c = classify_ex_ante_zero_cost(UNIFORM, FULL_INFO)
    assert c.tag is Tag.SYSTEMATIC_AGAINST_FIRST and c.regime == "N"
    (w,) = c.witnesses
    assert excludes(w, 0, UNIFORM) and not excludes(w, 0, FULL_INFO)
    same = classify_ex_ante_zero_cost(THREE_POINT, THREE_POINT)
    assert same.tag is Tag.NO_DISCRIMINATION and not same.n_equivalent


def test_same_hull_pair_contrast():
    zero = classify_ex_ante_zero_cost(FULL_INFO, THREE_POINT)
    assert zero.tag is Tag.NO_DISCRIMINATION and zero.n_equivalent
    for key, weights in zero.hull_weights.items():
        assert all(sum(w) == 1 and min(w) >= 0 for w in weights)
    positive = classify_ex_ante(ExAnteScenario(F(1), FULL_INFO, THREE_POINT))
    assert positive.tag is Tag.SYSTEMATIC_AGAINST_SECOND


def test_zero_cost_nested_hulls():
    assert classify_ex_ante_zero_cost(WIDE, UNIFORM).tag is Tag.SYSTEMATIC_AGAINST_SECOND
    inner = population([((F(3, 4), F(1, 4)), HALF), ((F(1, 4), F(3, 4)), HALF)])
    assert classify_ex_ante_zero_cost(inner, THREE_POINT).tag is Tag.SYSTEMATIC_AGAINST_FIRST


def test_zero_cost_unsystematic():
    p = population([((F(3, 4), F(1, 4)), HALF), ((0, 1), F(1, 4)), ((HALF, HALF), F(1, 4))])
    q = population([((1, 0), F(1, 4)), ((F(1, 3), F(2, 3)), F(3, 4))])
    assert skill_distribution(p) == skill_distribution(q)
    u = classify_ex_ante_zero_cost(p, q)
    assert u.tag is Tag.UNSYSTEMATIC
    assert excludes(u.witnesses[0], 0, p) and not excludes(u.witnesses[0], 0, q)
    assert excludes(u.witnesses[1], 0, q) and not excludes(u.witnesses[1], 0, p)


seeds = st.integers(0, 2**32)
costs = st.fractions(0, 20, max_denominator=100)


@settings(max_examples=100, deadline=None)
@given(firms(dim=3), populations(dim=3), costs, st.fractions(0, 1, max_denominator=12).filter(bool))
def test_normalization_preserves_exclusion(f, pop, cost, alpha):
    original = ExAnteFirm(f, alpha)
    assert excludes(normalize_firm(original), cost, pop) == excludes(original, cost, pop)


@settings(max_examples=100, deadline=None)
@given(firms(), populations(), costs, costs)
def test_exclusion_is_monotone_in_cost(f, pop, c1, c2):
    lo, hi = sorted((c1, c2))
    if excludes(ExAnteFirm(f), lo, pop):
        assert excludes(ExAnteFirm(f), hi, pop)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 4), st.sampled_from([F(1, 100), F(1), F(10)]))
def test_ex_ante_tag_matches_pay_tag(seed, dim, cost):
    s = InstanceSeed(seed, skill_count=dim)
    a = random_population(s)
    b = random_population_with_mean(skill_distribution(a), s.child(0))
    ex = classify_ex_ante(ExAnteScenario(cost, a, b))
    assert ex.tag is classify(a, b).tag


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 4))
def test_m_refines_n(seed, dim):
    s = InstanceSeed(seed, skill_count=dim)
    a = random_population(s)
    b = random_population_with_mean(skill_distribution(a), s.child(0))
    for hi, lo in ((a, b), (b, a)):
        if isinstance(mps_dominates(hi, lo), Dominates):
            assert n_dominates(hi, lo)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(2, 4))
def test_n_reflexive_and_transitive(seed, dim):
    s = InstanceSeed(seed, skill_count=dim)
    a = random_population(s)
    b = random_mps_split(a, s.child(0)).population
    c = random_population_with_mean(skill_distribution(a), s.child(1))
    assert n_dominates(a, a)
    if n_dominates(c, b) and n_dominates(b, a):
        assert n_dominates(c, a)
