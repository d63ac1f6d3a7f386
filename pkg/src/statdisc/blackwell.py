"""Mean-preserving-spread dominance and pay-discrimination classification.

For finite supports, ``hi`` is a mean-preserving spread of ``lo`` exactly when
some kernel sends every atom of ``lo`` to a distribution over ``hi``'s atoms
whose barycenter is that atom. That is an LP feasibility question. When it
fails, the Farkas multipliers on the barycenter rows are (up to sign) the
tasks of a firm that pays ``hi`` strictly less than ``lo``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import (
    Firm,
    Population,
    canonicalize,
    expected_surplus,
    require_equal_means,
)
from .lp import FarkasCertificate, FeasibilitySystem, Feasible, InvalidCertificate, solve_feasibility


@dataclass(frozen=True)
class Coupling:
    """Kernel ``weights[i][j]`` from atom ``i`` of ``source`` to atom ``j`` of ``target``.

    A valid coupling witnesses that ``target`` is a mean-preserving spread of
    ``source``.
    """

    source: Population
    target: Population
    weights: tuple[tuple[Fraction, ...], ...]

    def violations(self) -> list[str]:
        src, tgt, w = self.source, self.target, self.weights
        problems = []
        if len(w) != len(src) or any(len(row) != len(tgt) for row in w):
            return ["weight matrix has the wrong shape"]
        if any(x < 0 for row in w for x in row):
            problems.append("negative weight")
        for i, (belief, weight) in enumerate(src.atoms):
            if sum(w[i]) != weight:
                problems.append(f"row {i} does not sum to the source weight")
            for k in range(src.dim):
                bary = sum(w[i][j] * tgt.atoms[j][0][k] for j in range(len(tgt)))
                if bary != weight * belief[k]:
                    problems.append(f"row {i} has the wrong barycenter")
                    break
        for j, (_, weight) in enumerate(tgt.atoms):
            if sum(w[i][j] for i in range(len(src))) != weight:
                problems.append(f"column {j} does not sum to the target weight")
        return problems

    def verify(self) -> None:
        problems = self.violations()
        if problems:
            raise ValueError("invalid coupling: " + "; ".join(problems))


def identity_coupling(pop: Population) -> Coupling:
    pop = canonicalize(pop)
    n = len(pop)
    weights = tuple(
        tuple(pop.weights[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )
    return Coupling(pop, pop, weights)


def compose(first: Coupling, second: Coupling) -> Coupling:
    """Chain ``first: a -> b`` with ``second: b -> c`` into ``a -> c``."""
    if first.target != second.source:
        raise ValueError("couplings do not chain: middle populations differ")
    mid = first.target.weights
    rows = []
    for row in first.weights:
        rows.append(tuple(
            sum((row[j] * second.weights[j][k] / mid[j] for j in range(len(mid)) if row[j]),
                Fraction(0))
            for k in range(len(second.target))
        ))
    return Coupling(first.source, second.target, tuple(rows))


@dataclass(frozen=True)
class Dominates:
    coupling: Coupling


@dataclass(frozen=True)
class NotDominates:
    certificate: FarkasCertificate
    hi: Population
    lo: Population


DominanceResult = Union[Dominates, NotDominates]


@functools.lru_cache(maxsize=4096)
def coupling_system(hi: Population, lo: Population) -> FeasibilitySystem:
    """Constraints on ``w[i][j]`` (flattened row-major, ``i`` over ``lo``).

    Rows: one column-sum per atom of ``hi``, then ``dim`` barycenter rows per
    atom of ``lo``. Row sums are left out; summing a block of barycenter rows
    over the skill set recovers them.
    """
    n_lo, n_hi, dim = len(lo), len(hi), lo.dim
    nvars = n_lo * n_hi
    matrix, rhs = [], []
    for j, (_, weight) in enumerate(hi.atoms):
        row = [Fraction(0)] * nvars
        for i in range(n_lo):
            row[i * n_hi + j] = Fraction(1)
        matrix.append(row)
        rhs.append(weight)
    for i, (belief, weight) in enumerate(lo.atoms):
        for k in range(dim):
            row = [Fraction(0)] * nvars
            for j, (target, _) in enumerate(hi.atoms):
                row[i * n_hi + j] = target[k]
            matrix.append(row)
            rhs.append(weight * belief[k])
    return FeasibilitySystem(tuple(map(tuple, matrix)), tuple(rhs), nvars)


def mps_dominates(hi: Population, lo: Population) -> DominanceResult:
    """Decide whether ``hi`` is a mean-preserving spread of ``lo``."""
    require_equal_means(hi, lo)
    return _dominance(canonicalize(hi), canonicalize(lo))


@functools.lru_cache(maxsize=4096)
def _dominance(hi: Population, lo: Population) -> DominanceResult:
    result = solve_feasibility(coupling_system(hi, lo))
    if isinstance(result, Feasible):
        n_hi = len(hi)
        weights = tuple(
            tuple(result.point[i * n_hi:(i + 1) * n_hi]) for i in range(len(lo))
        )
        coupling = Coupling(lo, hi, weights)
        coupling.verify()
        return Dominates(coupling)
    return NotDominates(result.certificate, hi, lo)


def extract_discriminating_firm(
    certificate: FarkasCertificate, lo: Population, hi: Population
) -> Firm:
    """Firm paying ``hi`` strictly less than ``lo``, read off a failed dominance check.

    With ``y = (v, lambda)`` split into column-sum and barycenter multipliers,
    the firm's tasks are ``-lambda_i`` for each atom ``i`` of ``lo``.
    """
    lo, hi = canonicalize(lo), canonicalize(hi)
    system = coupling_system(hi, lo)
    if system != certificate.system:
        raise InvalidCertificate("certificate was issued for a different pair of populations")
    # re-check the Farkas conditions against the rebuilt system
    FarkasCertificate(certificate.y, system)
    dim, n_hi = lo.dim, len(hi)
    lam = certificate.y[n_hi:]
    tasks = [tuple(-lam[i * dim + k] for k in range(dim)) for i in range(len(lo))]
    witness = Firm(tuple(tasks))
    if not expected_surplus(witness, hi) < expected_surplus(witness, lo):
        raise InvalidCertificate("extracted firm does not discriminate strictly")
    return witness


def discriminates_strictly(f: Firm, against: Population, other: Population) -> bool:
    require_equal_means(against, other)
    return expected_surplus(f, against) < expected_surplus(f, other)


class Tag(enum.Enum):
    SYSTEMATIC_AGAINST_FIRST = "systematic_against_first"
    SYSTEMATIC_AGAINST_SECOND = "systematic_against_second"
    UNSYSTEMATIC = "unsystematic"
    NO_DISCRIMINATION = "no_discrimination"

    def swapped(self) -> "Tag":
        return _SWAP.get(self, self)


_SWAP = {
    Tag.SYSTEMATIC_AGAINST_FIRST: Tag.SYSTEMATIC_AGAINST_SECOND,
    Tag.SYSTEMATIC_AGAINST_SECOND: Tag.SYSTEMATIC_AGAINST_FIRST,
}


@dataclass(frozen=True)
class Classification:
    """Verdict for an ordered pair ``(first, second)``.

    ``witnesses`` holds firms discriminating strictly: one against the
    disadvantaged population for a systematic verdict, and for an
    unsystematic verdict one against ``first`` followed by one against
    ``second``. ``couplings`` holds whichever dominance couplings were found.
    """

    tag: Tag
    witnesses: tuple[Firm, ...] = ()
    couplings: tuple[Coupling, ...] = ()

    def __post_init__(self):
        expected = {
            Tag.SYSTEMATIC_AGAINST_FIRST: 1,
            Tag.SYSTEMATIC_AGAINST_SECOND: 1,
            Tag.UNSYSTEMATIC: 2,
            Tag.NO_DISCRIMINATION: 0,
        }[self.tag]
        if len(self.witnesses) != expected:
            raise ValueError(f"{self.tag.value} needs {expected} witness firm(s)")


def classify(first: Population, second: Population) -> Classification:
    require_equal_means(first, second)
    first, second = canonicalize(first), canonicalize(second)
    if first == second:
        return Classification(Tag.NO_DISCRIMINATION, (), (identity_coupling(first),))

    # second M first  <=>  first is paid weakly less everywhere
    up = mps_dominates(second, first)
    down = mps_dominates(first, second)
    if isinstance(up, Dominates) and isinstance(down, Dominates):
        raise AssertionError("mutual dominance between distinct populations")
    if isinstance(up, Dominates):
        w = extract_discriminating_firm(down.certificate, lo=second, hi=first)
        return Classification(Tag.SYSTEMATIC_AGAINST_FIRST, (w,), (up.coupling,))
    if isinstance(down, Dominates):
        w = extract_discriminating_firm(up.certificate, lo=first, hi=second)
        return Classification(Tag.SYSTEMATIC_AGAINST_SECOND, (w,), (down.coupling,))
    against_first = extract_discriminating_firm(down.certificate, lo=second, hi=first)
    against_second = extract_discriminating_firm(up.certificate, lo=first, hi=second)
    return Classification(Tag.UNSYSTEMATIC, (against_first, against_second))
