"""Exact feasibility for ``M w = b, w >= 0`` by phase-one simplex.

The tableau holds exact rationals (``gmpy2.mpq`` when available, otherwise
:class:`fractions.Fraction`). Entering columns follow the steepest reduced cost
until degenerate pivots pile up, then Bland's rule takes over so the solver
always terminates. It answers with either a feasible point or a Farkas
certificate ``y`` (``y^T M >= 0``, ``y^T b < 0``). Both answers are checked
exactly before they are handed back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .core import as_rational

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

ZERO = Fraction(0)


class InvalidCertificate(ValueError):
    pass


@dataclass(frozen=True)
class FeasibilitySystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]
    num_vars: int = field(default=-1)

    def __post_init__(self):
        matrix = tuple(tuple(as_rational(x) for x in row) for row in self.matrix)
        rhs = tuple(as_rational(x) for x in self.rhs)
        if len(matrix) != len(rhs):
            raise ValueError(f"matrix has {len(matrix)} rows but rhs has {len(rhs)} entries")
        widths = {len(row) for row in matrix}
        if len(widths) > 1:
            raise ValueError(f"ragged matrix, row lengths {sorted(widths)}")
        n = widths.pop() if widths else self.num_vars
        if n < 0 or (self.num_vars >= 0 and n != self.num_vars):
            raise ValueError("number of variables does not match the matrix")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "num_vars", n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rhs), self.num_vars

    def residual(self, point: Sequence[Fraction]) -> list[Fraction]:
        return [sum((a * x for a, x in zip(row, point) if a), ZERO) - b
                for row, b in zip(self.matrix, self.rhs)]

    def is_solution(self, point: Sequence[Fraction]) -> bool:
        return (len(point) == self.num_vars and all(x >= 0 for x in point)
                and not any(self.residual(point)))

    def dual_row(self, y: Sequence[Fraction]) -> list[Fraction]:
        """``y^T M`` as a list over variables."""
        out = [ZERO] * self.num_vars
        for yi, row in zip(y, self.matrix):
            if yi:
                for j, a in enumerate(row):
                    if a:
                        out[j] += yi * a
        return out


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers proving ``M w = b, w >= 0`` has no solution."""

    y: tuple[Fraction, ...]
    system: FeasibilitySystem = field(repr=False, compare=False)

    def __post_init__(self):
        y = tuple(as_rational(v) for v in self.y)
        object.__setattr__(self, "y", y)
        if len(y) != len(self.system.rhs):
            raise InvalidCertificate("certificate length does not match the number of rows")
        if any(v < 0 for v in self.system.dual_row(y)):
            raise InvalidCertificate("y^T M has a negative entry")
        if self.value >= 0:
            raise InvalidCertificate("y^T b is not negative")

    @property
    def value(self) -> Fraction:
        """``y^T b``, strictly negative."""
        return sum((a * b for a, b in zip(self.y, self.system.rhs)), ZERO)


@dataclass(frozen=True)
class Feasible:
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate


FeasibilityResult = Union[Feasible, Infeasible]


def solve_feasibility(system: FeasibilitySystem) -> FeasibilityResult:
    m, n = system.shape
    matrix, rhs = system.matrix, system.rhs

    rows = []
    for i in range(m):
        if any(matrix[i]):
            rows.append(i)
        elif rhs[i]:
            y = [ZERO] * m
            y[i] = Fraction(-1 if rhs[i] > 0 else 1)
            return Infeasible(FarkasCertificate(tuple(y), system))
    cols = [j for j in range(n) if any(matrix[i][j] for i in rows)]

    tableau = _PhaseOne(matrix, rhs, rows, cols)
    tableau.run(degenerate_budget=len(rows) + len(cols))

    if tableau.infeasibility() > 0:
        y = [ZERO] * m
        for local, i in enumerate(rows):
            # dual price of row i in phase one is 1 - (reduced cost of its artificial)
            u = 1 - tableau.reduced.get(len(cols) + local, 0)
            y[i] = -tableau.signs[local] * _to_fraction(u)
        return Infeasible(FarkasCertificate(tuple(y), system))

    point = [ZERO] * n
    for local, var in enumerate(tableau.basis):
        if var < len(cols):
            point[cols[var]] = _to_fraction(tableau.b[local])
    point = tuple(point)
    if not system.is_solution(point):
        raise ArithmeticError("simplex returned a point that does not satisfy the system")
    return Feasible(point)


class _PhaseOne:
    """Sparse phase-one tableau; columns ``0..n'-1`` are the structural
    variables, the rest are one artificial per row."""

    def __init__(self, matrix, rhs, rows, cols):
        self.signs = [-1 if rhs[i] < 0 else 1 for i in rows]
        nc = len(cols)
        self.rows: list[dict] = []
        self.b: list = []
        for local, i in enumerate(rows):
            s = self.signs[local]
            row = {k: s * _from_fraction(matrix[i][j]) for k, j in enumerate(cols) if matrix[i][j]}
            row[nc + local] = _Q(1)
            self.rows.append(row)
            self.b.append(s * _from_fraction(rhs[i]))
        self.basis = [nc + local for local in range(len(rows))]
        self.num_struct = nc
        reduced: dict = {}
        for row in self.rows:
            for k, v in row.items():
                if k < nc:
                    reduced[k] = reduced.get(k, 0) - v
        self.reduced = {k: v for k, v in reduced.items() if v}

    def infeasibility(self) -> Fraction:
        return _to_fraction(sum(
            (self.b[r] for r, var in enumerate(self.basis) if var >= self.num_struct), _Q(0)))

    def run(self, degenerate_budget: int) -> None:
        bland = False
        while True:
            negative = [(v, k) for k, v in self.reduced.items() if v < 0]
            if not negative:
                return
            # steepest reduced cost until degenerate pivots accumulate, then
            # Bland's smallest-index rule for good, which cannot cycle
            col = min(k for _, k in negative) if bland else min(negative)[1]
            best = None
            for r, row in enumerate(self.rows):
                a = row.get(col)
                if a is not None and a > 0:
                    key = (self.b[r] / a, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            # phase one is bounded below by zero, so a pivot row always exists
            if best[0][0] == 0:
                degenerate_budget -= 1
                bland = bland or degenerate_budget <= 0
            self._pivot(best[1], col)

    def _pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            for k in prow:
                prow[k] /= piv
            self.b[r] /= piv
        items = list(prow.items())
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(col)
            if f is None:
                continue
            _eliminate(row, items, f)
            self.b[i] -= f * self.b[r]
        f = self.reduced.get(col)
        if f is not None:
            _eliminate(self.reduced, items, f)
        self.basis[r] = col


def _from_fraction(x: Fraction):
    return _Q(x.numerator, x.denominator)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _eliminate(row: dict, pivot_items, f) -> None:
    for k, v in pivot_items:
        new = row.get(k, 0) - f * v
        if new:
            row[k] = new
        else:
            row.pop(k, None)
