"""Statistical discrimination between worker populations, decided exactly.

Populations are finite distributions over posterior beliefs about a worker's
skill. Pay discrimination between two populations with the same skill
distribution is classified through mean-preserving-spread dominance, decided
by an exact rational LP; failed dominance checks yield explicit firms that
discriminate. The costly-interview variant is handled in :mod:`statdisc.exante`.
"""

from .blackwell import (
    Classification,
    Coupling,
    Dominates,
    NotDominates,
    Tag,
    classify,
    compose,
    discriminates_strictly,
    extract_discriminating_firm,
    identity_coupling,
    mps_dominates,
)
from .core import (
    Belief,
    DomainError,
    ExAnteFirm,
    Firm,
    Population,
    SkillSet,
    UnequalMeans,
    canonicalize,
    expected_surplus,
    firm,
    firm_value,
    point_mass,
    population,
    same_skill_distribution,
    skill_distribution,
)
from .exante import (
    ExAnteClassification,
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
from .lp import FarkasCertificate, Feasible, FeasibilitySystem, Infeasible, solve_feasibility

__version__ = "0.1.0"
