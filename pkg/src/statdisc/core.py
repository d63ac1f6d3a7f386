"""Skills, beliefs, populations and firms, with exact rational evaluation.

Every number is a :class:`fractions.Fraction`. Floats are refused on input
because the classifications downstream hinge on exact ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]


class DomainError(ValueError):
    """Input is well-formed but outside the model's domain."""


class UnequalMeans(DomainError):
    """Two populations were compared whose skill distributions differ."""

    def __init__(self, first: "SkillDistribution", second: "SkillDistribution"):
        self.first = first
        self.second = second
        super().__init__(
            "populations have different skill distributions: "
            f"{format_vector(first.probs)} vs {format_vector(second.probs)}"
        )


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {type(value).__name__} {value!r}")
    if type(value) is Fraction:
        return value
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(vec: Iterable[Fraction]) -> str:
    return "(" + ", ".join(format_rational(x) for x in vec) + ")"


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    # accumulate over a common denominator and reduce once at the end
    num, den = 0, 1
    for x, y in zip(a, b):
        if x and y:
            d = x.denominator * y.denominator
            num = num * d + x.numerator * y.numerator * den
            den *= d
    return Fraction(num, den)


@dataclass(frozen=True)
class SkillSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError("skill set must be non-empty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"skill labels must be distinct: {self.labels}")

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, order=True)
class Belief:
    """A probability vector over the skill set, compared lexicographically."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(as_rational(p) for p in self.probs)
        if not probs:
            raise ValueError("belief must have at least one entry")
        if any(p < 0 for p in probs):
            raise ValueError(f"belief has a negative entry: {format_vector(probs)}")
        if sum(probs) != 1:
            raise ValueError(f"belief does not sum to 1: {format_vector(probs)}")
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, i):
        return self.probs[i]

    def __str__(self) -> str:
        return format_vector(self.probs)


# The mean of a population is itself a point of the simplex.
SkillDistribution = Belief


@dataclass(frozen=True)
class Population:
    """Finite-support distribution over beliefs.

    Atoms may repeat beliefs and appear in any order; use :func:`canonicalize`
    before comparing two populations for equality.
    """

    atoms: tuple[tuple[Belief, Fraction], ...]

    def __post_init__(self):
        atoms = []
        for belief, weight in self.atoms:
            if not isinstance(belief, Belief):
                belief = Belief(tuple(belief))
            weight = as_rational(weight)
            if weight <= 0:
                raise ValueError(f"atom weight must be positive, got {format_rational(weight)}")
            atoms.append((belief, weight))
        if not atoms:
            raise ValueError("population needs at least one atom")
        dims = {len(b) for b, _ in atoms}
        if len(dims) != 1:
            raise ValueError(f"beliefs indexed by different skill sets (sizes {sorted(dims)})")
        total = sum(w for _, w in atoms)
        if total != 1:
            raise ValueError(f"atom weights sum to {format_rational(total)}, not 1")
        object.__setattr__(self, "atoms", tuple(atoms))

    @property
    def dim(self) -> int:
        return len(self.atoms[0][0])

    @property
    def beliefs(self) -> tuple[Belief, ...]:
        return tuple(b for b, _ in self.atoms)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for _, w in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def is_canonical(self) -> bool:
        beliefs = self.beliefs
        return all(a < b for a, b in zip(beliefs, beliefs[1:]))


def population(atoms: Iterable[tuple[Sequence[RationalLike], RationalLike]]) -> Population:
    """Build a population from ``(belief, weight)`` pairs of plain values."""
    return Population(tuple((Belief(tuple(b)), w) for b, w in atoms))


def point_mass(belief: Sequence[RationalLike]) -> Population:
    return population([(belief, 1)])


def canonicalize(pop: Population) -> Population:
    merged: dict[Belief, Fraction] = {}
    for belief, weight in pop.atoms:
        merged[belief] = merged.get(belief, Fraction(0)) + weight
    return Population(tuple(sorted(merged.items())))


def mixture(lam: RationalLike, first: Population, second: Population) -> Population:
    """The population ``lam * first + (1 - lam) * second``."""
    lam = as_rational(lam)
    if not 0 <= lam <= 1:
        raise ValueError("mixing weight must lie in [0, 1]")
    atoms = [(b, lam * w) for b, w in first.atoms if lam * w > 0]
    atoms += [(b, (1 - lam) * w) for b, w in second.atoms if (1 - lam) * w > 0]
    return canonicalize(Population(tuple(atoms)))


def skill_distribution(pop: Population) -> SkillDistribution:
    weights = pop.weights
    return Belief(tuple(dot(weights, column) for column in zip(*pop.beliefs)))


def same_skill_distribution(first: Population, second: Population) -> bool:
    if first.dim != second.dim:
        raise ValueError("populations are indexed by different skill sets")
    return skill_distribution(first) == skill_distribution(second)


def require_equal_means(first: Population, second: Population) -> None:
    if not same_skill_distribution(first, second):
        raise UnequalMeans(skill_distribution(first), skill_distribution(second))


@dataclass(frozen=True)
class Firm:
    """A non-empty set of task payoff vectors; stored deduplicated and sorted."""

    tasks: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        tasks = {tuple(as_rational(x) for x in task) for task in self.tasks}
        if not tasks:
            raise ValueError("firm needs at least one task")
        if len({len(t) for t in tasks}) != 1:
            raise ValueError("firm tasks indexed by different skill sets")
        object.__setattr__(self, "tasks", tuple(sorted(tasks)))

    @property
    def dim(self) -> int:
        return len(self.tasks[0])

    def __len__(self) -> int:
        return len(self.tasks)

    def shifted(self, beta: RationalLike) -> "Firm":
        """Add ``beta`` to every payoff entry."""
        beta = as_rational(beta)
        return Firm(tuple(tuple(x + beta for x in task) for task in self.tasks))

    def scaled(self, gamma: RationalLike) -> "Firm":
        gamma = as_rational(gamma)
        return Firm(tuple(tuple(gamma * x for x in task) for task in self.tasks))

    def __str__(self) -> str:
        return "{" + ", ".join(format_vector(t) for t in self.tasks) + "}"


def firm(tasks: Iterable[Sequence[RationalLike]]) -> Firm:
    return Firm(tuple(tuple(t) for t in tasks))


@dataclass(frozen=True)
class ExAnteFirm:
    """A firm that keeps share ``alpha`` of the surplus of workers it hires."""

    firm: Firm
    alpha: Fraction = Fraction(1)

    def __post_init__(self):
        alpha = as_rational(self.alpha)
        if not 0 < alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {format_rational(alpha)}")
        object.__setattr__(self, "alpha", alpha)


def firm_value(f: Firm, belief: Belief | Sequence[Fraction]) -> Fraction:
    probs = belief.probs if isinstance(belief, Belief) else tuple(belief)
    if len(probs) != f.dim:
        raise ValueError("firm and belief are indexed by different skill sets")
    return max(dot(task, probs) for task in f.tasks)


def expected_surplus(f: Firm, pop: Population) -> Fraction:
    return sum((w * firm_value(f, b) for b, w in pop.atoms), Fraction(0))
