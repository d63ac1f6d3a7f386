from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from statdisc.core import Belief, Firm, Population, canonicalize, point_mass, population

ACCEPTANCE_LINES: list[str] = []

HALF = F(1, 2)
UNIFORM = point_mass((HALF, HALF))
FULL_INFO = canonicalize(population([((1, 0), HALF), ((0, 1), HALF)]))
MATCH_STATE = Firm(((F(1), F(0)), (F(0), F(1))))
# neither of these two is a mean-preserving spread of the other
WIDE = canonicalize(population([((F(1, 10), F(9, 10)), HALF), ((F(9, 10), F(1, 10)), HALF)]))
THREE_POINT = canonicalize(population([((1, 0), F(1, 4)), ((HALF, HALF), HALF), ((0, 1), F(1, 4))]))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record():
    def _record(name: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


@st.composite
def beliefs(draw, dim=2, max_den=12):
    den = draw(st.integers(1, max_den))
    cuts = sorted(draw(st.lists(st.integers(0, den), min_size=dim - 1, max_size=dim - 1)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
    return Belief(tuple(F(p, den) for p in parts))


@st.composite
def populations(draw, dim=2, max_atoms=4):
    bs = draw(st.lists(beliefs(dim), min_size=1, max_size=max_atoms))
    raw = draw(st.lists(st.integers(1, 9), min_size=len(bs), max_size=len(bs)))
    total = sum(raw)
    return canonicalize(Population(tuple((b, F(r, total)) for b, r in zip(bs, raw))))


@st.composite
def firms(draw, dim=2, max_tasks=4, bound=5):
    n = draw(st.integers(1, max_tasks))
    entry = st.fractions(min_value=-bound, max_value=bound, max_denominator=8)
    tasks = draw(st.lists(st.tuples(*[entry] * dim), min_size=n, max_size=n))
    return Firm(tuple(tasks))
