"""Costly interviews: exclusion, normalization and ex-ante classification.

A firm ``(A, alpha)`` interviews a worker from population ``pi`` only when
``alpha * E_pi[max(v_A, 0)]`` exceeds the interview cost ``c``; a tie means
the population is excluded. For ``c > 0`` the classification coincides with
the pay-discrimination one. At ``c = 0`` the relevant order is coarser: ``hi``
N-dominates ``lo`` iff every belief in the support of ``lo`` lies in the
convex hull of the support of ``hi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .blackwell import Tag, classify
from .core import (
    DomainError,
    ExAnteFirm,
    Firm,
    Population,
    RationalLike,
    as_rational,
    canonicalize,
    dot,
    expected_surplus,
    firm_value,
    format_rational,
    require_equal_means,
)
from .lp import FarkasCertificate, FeasibilitySystem, Feasible, solve_feasibility


class ZeroCost(DomainError):
    def __init__(self):
        super().__init__(
            "interview cost is zero; use classify_ex_ante_zero_cost for the c = 0 regime"
        )


def interview_value(f: ExAnteFirm, pop: Population) -> Fraction:
    total = sum((w * max(firm_value(f.firm, b), Fraction(0)) for b, w in pop.atoms), Fraction(0))
    return f.alpha * total


def excludes(f: ExAnteFirm, cost: RationalLike, pop: Population) -> bool:
    cost = as_rational(cost)
    if cost < 0:
        raise ValueError("interview cost must be non-negative")
    return interview_value(f, pop) <= cost


def normalize_firm(f: ExAnteFirm) -> ExAnteFirm:
    """Fold ``alpha`` into the payoffs, giving an equivalent firm with ``alpha = 1``."""
    return ExAnteFirm(f.firm.scaled(f.alpha), Fraction(1))


def construct_excluding_firm(
    base: Firm, pi: Population, pi_prime: Population, cost: RationalLike
) -> ExAnteFirm:
    """Turn a firm paying ``pi_prime`` strictly less than ``pi`` into one that
    excludes ``pi_prime`` but interviews ``pi`` at the given cost.

    The payoffs are first shifted up until every task-belief product on either
    support is non-negative, then scaled by ``2c / (I + I')`` where ``I`` and
    ``I'`` are the shifted firm's surpluses on ``pi`` and ``pi_prime``.
    """
    cost = as_rational(cost)
    if cost <= 0:
        raise ValueError("construct_excluding_firm needs a positive cost")
    require_equal_means(pi, pi_prime)
    gap = expected_surplus(base, pi) - expected_surplus(base, pi_prime)
    if gap <= 0:
        raise ValueError(
            f"base firm must pay pi strictly more than pi_prime (gap {format_rational(gap)})"
        )
    beliefs = pi.beliefs + pi_prime.beliefs
    lowest = min(dot(task, b.probs) for task in base.tasks for b in beliefs)
    shifted = base.shifted(max(Fraction(0), -lowest))
    high = expected_surplus(shifted, pi)
    low = expected_surplus(shifted, pi_prime)
    result = ExAnteFirm(shifted.scaled(2 * cost / (high + low)), Fraction(1))
    if not (interview_value(result, pi_prime) <= cost < interview_value(result, pi)):
        raise ArithmeticError("constructed firm does not separate the two populations")
    return result


@dataclass(frozen=True)
class ExAnteScenario:
    cost: Fraction
    first: Population
    second: Population

    def __post_init__(self):
        cost = as_rational(self.cost)
        if cost < 0:
            raise ValueError("interview cost must be non-negative")
        object.__setattr__(self, "cost", cost)
        require_equal_means(self.first, self.second)


@dataclass(frozen=True)
class ExAnteClassification:
    """Ex-ante verdict; witnesses follow the same layout as
    :class:`statdisc.blackwell.Classification` but are excluding firms.

    ``regime`` is ``"M"`` for positive cost and ``"N"`` at zero cost. In the
    N regime a no-discrimination verdict between distinct populations carries
    ``hull_weights``: for each ordered direction, the convex weights placing
    every support belief of one population in the hull of the other's.
    """

    tag: Tag
    cost: Fraction
    witnesses: tuple[ExAnteFirm, ...] = ()
    regime: str = "M"
    hull_weights: Optional[dict[str, tuple[tuple[Fraction, ...], ...]]] = None

    @property
    def n_equivalent(self) -> bool:
        return self.hull_weights is not None


def _excluding(base: Firm, excluded: Population, other: Population, cost: Fraction) -> ExAnteFirm:
    return construct_excluding_firm(base, pi=other, pi_prime=excluded, cost=cost)


def classify_ex_ante(scenario: ExAnteScenario) -> ExAnteClassification:
    if scenario.cost == 0:
        raise ZeroCost()
    first, second, c = scenario.first, scenario.second, scenario.cost
    pay = classify(first, second)
    if pay.tag is Tag.SYSTEMATIC_AGAINST_FIRST:
        witnesses = (_excluding(pay.witnesses[0], first, second, c),)
    elif pay.tag is Tag.SYSTEMATIC_AGAINST_SECOND:
        witnesses = (_excluding(pay.witnesses[0], second, first, c),)
    elif pay.tag is Tag.UNSYSTEMATIC:
        witnesses = (
            _excluding(pay.witnesses[0], first, second, c),
            _excluding(pay.witnesses[1], second, first, c),
        )
    else:
        witnesses = ()
    return ExAnteClassification(pay.tag, c, witnesses, "M")


def hull_system(points: Population, target) -> FeasibilitySystem:
    """Convex weights over ``points``' support reproducing ``target``.

    The weights-sum-to-one row is implied because every belief sums to one.
    """
    dim = points.dim
    matrix = tuple(tuple(b[k] for b in points.beliefs) for k in range(dim))
    return FeasibilitySystem(matrix, tuple(target.probs), len(points))


def _hull_memberships(hi: Population, lo: Population):
    """Yield ``(belief, result)`` for each support belief of ``lo``."""
    hi = canonicalize(hi)
    for belief in canonicalize(lo).beliefs:
        yield belief, solve_feasibility(hull_system(hi, belief))


def n_dominates(hi: Population, lo: Population) -> bool:
    require_equal_means(hi, lo)
    return all(isinstance(r, Feasible) for _, r in _hull_memberships(hi, lo))


def _zero_cost_witness(hi: Population, lo: Population) -> ExAnteFirm:
    """Firm excluding ``hi`` but not ``lo`` at zero cost, from a failed hull test.

    A Farkas vector ``y`` for the hull of ``hi`` satisfies ``y.s >= 0`` on that
    support and ``y.s < 0`` at some belief of ``lo``, so the one-task firm
    ``{-y}`` earns nothing on ``hi`` and something on ``lo``.
    """
    for _, result in _hull_memberships(hi, lo):
        if not isinstance(result, Feasible):
            cert: FarkasCertificate = result.certificate
            witness = ExAnteFirm(Firm((tuple(-v for v in cert.y),)), Fraction(1))
            if not (excludes(witness, 0, hi) and not excludes(witness, 0, lo)):
                raise ArithmeticError("hull certificate did not yield an excluding firm")
            return witness
    raise ValueError("every belief of lo lies in the hull of hi")


def classify_ex_ante_zero_cost(first: Population, second: Population) -> ExAnteClassification:
    require_equal_means(first, second)
    first, second = canonicalize(first), canonicalize(second)
    first_n_second = n_dominates(first, second)
    second_n_first = n_dominates(second, first)
    zero = Fraction(0)
    if first_n_second and second_n_first:
        hull_weights = None
        if first != second:
            hull_weights = {
                "second_in_first": tuple(r.point for _, r in _hull_memberships(first, second)),
                "first_in_second": tuple(r.point for _, r in _hull_memberships(second, first)),
            }
        return ExAnteClassification(Tag.NO_DISCRIMINATION, zero, (), "N", hull_weights)
    if second_n_first:
        w = _zero_cost_witness(first, second)
        return ExAnteClassification(Tag.SYSTEMATIC_AGAINST_FIRST, zero, (w,), "N")
    if first_n_second:
        w = _zero_cost_witness(second, first)
        return ExAnteClassification(Tag.SYSTEMATIC_AGAINST_SECOND, zero, (w,), "N")
    witnesses = (_zero_cost_witness(first, second), _zero_cost_witness(second, first))
    return ExAnteClassification(Tag.UNSYSTEMATIC, zero, witnesses, "N")
