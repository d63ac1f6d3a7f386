"""Seeded instance generators and sampling checks independent of the LP.

Everything here is a pure function of an :class:`InstanceSeed`. Sampling can
only refute a dominance claim, never confirm one.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from .blackwell import Coupling, compose, identity_coupling
from .core import (
    Belief,
    Firm,
    Population,
    canonicalize,
    expected_surplus,
    firm_value,
    point_mass,
    require_equal_means,
)


@dataclass(frozen=True)
class InstanceSeed:
    seed: int
    skill_count: int = 2
    support_bound: int = 3
    denominator_bound: int = 8

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ("skill_count", "support_bound", "denominator_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def child(self, k: int) -> "InstanceSeed":
        """A derived seed; distinct ``k`` give independent streams."""
        return replace(self, seed=(self.seed * 1_000_003 + k + 1) % 2**64)


def _rng(seed: InstanceSeed, salt: str) -> random.Random:
    return random.Random(f"{salt}:{seed.seed}:{seed.skill_count}:"
                         f"{seed.support_bound}:{seed.denominator_bound}")


def _rational(rng: random.Random, bound: int, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def random_belief(rng: random.Random, dim: int, max_den: int) -> Belief:
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(dim - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return Belief(tuple(Fraction(p, den) for p in parts))


def _split_atom(rng: random.Random, belief: Belief, max_den: int):
    """Two-point split of ``belief`` along a random direction in its face.

    Returns ``None`` when no split is possible (a vertex of the simplex) or
    the drawn direction is zero.
    """
    support = [k for k, p in enumerate(belief) if p > 0]
    if len(support) < 2:
        return None
    # integer direction summing to zero over the support
    raw = [rng.randint(-max_den, max_den) for _ in support[:-1]]
    direction = [0] * len(belief)
    for k, r in zip(support, raw):
        direction[k] = r
    direction[support[-1]] = -sum(raw)
    if not any(direction):
        return None
    # largest steps keeping s + t*d and s - u*d inside the face
    up = min(-belief[k] / d for k, d in enumerate(direction) if d < 0)
    down = min(belief[k] / d for k, d in enumerate(direction) if d > 0)
    # steps on the grid 1/L keep the new beliefs' denominators dividing L
    grid = math.lcm(*(p.denominator for p in belief)) * rng.randint(1, max_den)
    t = _grid_step(rng, up, grid)
    u = _grid_step(rng, down, grid)
    plus = Belief(tuple(p + t * d for p, d in zip(belief, direction)))
    minus = Belief(tuple(p - u * d for p, d in zip(belief, direction)))
    # weights u/(t+u) and t/(t+u) put the barycenter back at belief
    return (plus, u / (t + u)), (minus, t / (t + u))


def _grid_step(rng: random.Random, limit: Fraction, grid: int) -> Fraction:
    top = int(limit * grid)
    if top < 1:
        return limit
    return Fraction(rng.randint(1, top), grid)


@dataclass(frozen=True)
class Split:
    population: Population
    coupling: Coupling
    degenerate: bool


def random_mps_split(
    pop: Population, seed: InstanceSeed, rounds: int = 1, split_prob: Optional[Fraction] = None
) -> Split:
    """Spread ``pop`` by splitting a random subset of its atoms in two.

    With ``rounds > 1`` the output is split again; the couplings are composed.
    ``split_prob`` defaults to a per-seed random choice, so some seeds leave
    every atom untouched (a degenerate split).
    """
    pop = canonicalize(pop)
    rng = _rng(seed, "split")
    coupling = identity_coupling(pop)
    current = pop
    degenerate = True
    for _ in range(rounds):
        prob = split_prob if split_prob is not None else rng.choice([0, 0.5, 1])
        pieces = []
        for belief, weight in current.atoms:
            parts = _split_atom(rng, belief, seed.denominator_bound) if rng.random() < prob else None
            pieces.append([(belief, Fraction(1))] if parts is None else list(parts))
            degenerate = degenerate and parts is None
        nxt = canonicalize(Population(tuple(
            (b, w * share) for (_, w), part in zip(current.atoms, pieces) for b, share in part
        )))
        index = {b: j for j, b in enumerate(nxt.beliefs)}
        rows = []
        for (_, w), part in zip(current.atoms, pieces):
            row = [Fraction(0)] * len(nxt)
            for b, share in part:
                row[index[b]] += w * share
            rows.append(tuple(row))
        coupling = compose(coupling, Coupling(current, nxt, tuple(rows)))
        current = nxt
    coupling.verify()
    return Split(current, coupling, degenerate)


def random_population(seed: InstanceSeed) -> Population:
    """Beliefs with bounded denominators and random rational weights."""
    rng = _rng(seed, "population")
    size = rng.randint(1, seed.support_bound)
    beliefs = [random_belief(rng, seed.skill_count, seed.denominator_bound) for _ in range(size)]
    raw = [rng.randint(1, seed.denominator_bound) for _ in range(size)]
    total = sum(raw)
    return canonicalize(Population(tuple(
        (b, Fraction(r, total)) for b, r in zip(beliefs, raw)
    )))


def random_population_with_mean(mean: Belief, seed: InstanceSeed, rounds: int = 2) -> Population:
    """Iterated random splits of the point mass at ``mean``."""
    pop = point_mass(mean.probs)
    for r in range(rounds):
        pop = random_mps_split(pop, seed.child(r), split_prob=Fraction(1)).population
        if len(pop) >= seed.support_bound:
            break
    return pop


def sample_random_firm(seed: InstanceSeed, task_count: int, payoff_bound: int) -> Firm:
    if task_count < 1:
        raise ValueError("task_count must be at least 1")
    rng = _rng(seed, f"firm:{task_count}:{payoff_bound}")
    tasks = [
        tuple(_rational(rng, payoff_bound, seed.denominator_bound) for _ in range(seed.skill_count))
        for _ in range(task_count)
    ]
    return Firm(tuple(tasks))


@dataclass(frozen=True)
class Evidence:
    samples: int
    strict_against_first: int
    strict_against_second: int

    @property
    def ties(self) -> int:
        return self.samples - self.strict_against_first - self.strict_against_second

    @property
    def refutes_systematic_against_first(self) -> bool:
        return self.strict_against_second > 0

    @property
    def refutes_systematic_against_second(self) -> bool:
        return self.strict_against_first > 0

    @property
    def refutes_no_discrimination(self) -> bool:
        return self.strict_against_first + self.strict_against_second > 0


def sampled_firms(seed: InstanceSeed, samples: int, payoff_bound: int = 4, max_tasks: int = 4):
    rng = _rng(seed, "firm-batch")
    for k in range(samples):
        yield sample_random_firm(seed.child(k), rng.randint(1, max_tasks), payoff_bound)


def estimate_classification(
    first: Population, second: Population, samples: int, seed: InstanceSeed
) -> Evidence:
    require_equal_means(first, second)
    if samples < 1:
        raise ValueError("samples must be at least 1")
    seed = replace(seed, skill_count=first.dim)
    against_first = against_second = 0
    for f in sampled_firms(seed, samples):
        a, b = expected_surplus(f, first), expected_surplus(f, second)
        against_first += a < b
        against_second += b < a
    return Evidence(samples, against_first, against_second)


class FirmBatch:
    """Many firms with the same task count packed as exact integers.

    Each firm's payoffs are multiplied by their own common denominator. That
    rescales every surplus of the firm by the same positive factor, which
    leaves comparisons between populations unchanged.
    """

    def __init__(self, firms: list[Firm]):
        if not firms:
            raise ValueError("empty batch")
        if len({len(f) for f in firms}) != 1:
            raise ValueError("batch firms must share a task count")
        scaled = []
        for f in firms:
            den = math.lcm(*(x.denominator for t in f.tasks for x in t))
            scaled.append([[int(x * den) for x in t] for t in f.tasks])
        self.firms = firms
        self.tasks = np.array(scaled, dtype=object)  # (firms, tasks, dim)

    def _scaled_surplus(self, pop: Population, den: int) -> np.ndarray:
        atoms = np.array([[int(p * den) for p in b.probs] for b in pop.beliefs], dtype=object)
        weights = np.array([int(w * den) for w in pop.weights], dtype=object)
        values = np.matmul(self.tasks, atoms.T)  # (firms, tasks, atoms)
        return np.matmul(values.max(axis=1), weights)

    def compare(self, first: Population, second: Population) -> list[int]:
        """Sign of ``surplus(firm, first) - surplus(firm, second)`` per firm."""
        den = math.lcm(*(x.denominator for pop in (first, second)
                         for b, w in pop.atoms for x in (*b.probs, w)))
        diff = self._scaled_surplus(first, den) - self._scaled_surplus(second, den)
        return [(d > 0) - (d < 0) for d in diff]

    def nonneg_positive(self, pop: Population) -> list[bool]:
        """Whether ``E_pop[max(v_A, 0)] > 0`` for each firm."""
        atoms = np.array([[int(p * b_den) for p in b.probs]
                          for b, b_den in ((b, math.lcm(*(p.denominator for p in b.probs)))
                                           for b in pop.beliefs)], dtype=object)
        values = np.matmul(self.tasks, atoms.T).max(axis=1)  # (firms, atoms)
        return [any(v > 0 for v in row) for row in values]


def firm_pool(seed: InstanceSeed, count: int, payoff_bound: int = 4,
              max_tasks: int = 4) -> list[FirmBatch]:
    """``count`` sampled firms grouped into batches by task count."""
    groups: dict[int, list[Firm]] = {}
    for f in sampled_firms(seed, count, payoff_bound, max_tasks):
        groups.setdefault(len(f), []).append(f)
    return [FirmBatch(v) for _, v in sorted(groups.items())]


def convex_test_function_check(hi: Population, lo: Population, f: Firm, nonneg: bool = False) -> bool:
    """Test ``h = v_A`` (or ``max(v_A, 0)``) as a convex separating function.

    Returns ``False`` exactly when ``h`` refutes the claim that ``hi``
    dominates ``lo`` in the M order (or the N order when ``nonneg``).
    """
    require_equal_means(hi, lo)
    if not nonneg:
        return expected_surplus(f, hi) >= expected_surplus(f, lo)

    def integral(pop: Population) -> Fraction:
        return sum((w * max(firm_value(f, b), Fraction(0)) for b, w in pop.atoms), Fraction(0))

    return not (integral(lo) > 0 and integral(hi) == 0)
