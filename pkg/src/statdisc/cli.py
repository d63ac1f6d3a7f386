"""``statdisc`` command line.

Exit codes: 0 success, 2 input error, 3 domain error (unequal skill
distributions), 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .blackwell import classify, mps_dominates
from .core import DomainError, SkillSet, UnequalMeans, skill_distribution
from .exante import ExAnteScenario, classify_ex_ante, classify_ex_ante_zero_cost
from .oracle import InstanceSeed, random_mps_split, random_population, random_population_with_mean
from .report import classify_report, dominates_report, emit_report, exante_report, render_text
from .serialize import Scenario, ScenarioError, dump_scenario, load_scenario, parse_rational, vector_json

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4


class InputError(Exception):
    pass


def _emit(report, fmt: str, out) -> None:
    out.write(render_text(report) if fmt == "text" else emit_report(report))


def cmd_classify(args, out) -> int:
    scenario = load_scenario(args.scenario)
    p1, p2 = scenario.population(args.first), scenario.population(args.second)
    result = classify(p1, p2)
    _emit(classify_report(scenario.skills.labels, args.first, p1, args.second, p2, result),
          args.format, out)
    return EXIT_OK


def cmd_dominates(args, out) -> int:
    scenario = load_scenario(args.scenario)
    hi, lo = scenario.population(args.first), scenario.population(args.second)
    result = mps_dominates(hi, lo)
    _emit(dominates_report(scenario.skills.labels, args.first, hi, args.second, lo, result),
          args.format, out)
    return EXIT_OK


def cmd_exante(args, out) -> int:
    scenario = load_scenario(args.scenario)
    if args.cost is not None:
        cost = parse_rational(args.cost, "--cost")
    elif scenario.cost is not None:
        cost = scenario.cost
    else:
        raise InputError("no interview cost: pass --cost or set 'cost' in the scenario")
    if cost < 0:
        raise InputError("interview cost must be non-negative")
    p1, p2 = scenario.population(args.first), scenario.population(args.second)
    if cost == 0:
        result = classify_ex_ante_zero_cost(p1, p2)
    else:
        result = classify_ex_ante(ExAnteScenario(cost, p1, p2))
    _emit(exante_report(scenario.skills.labels, args.first, p1, args.second, p2, result),
          args.format, out)
    return EXIT_OK


def generate_scenario(seed: InstanceSeed) -> Scenario:
    """Base population, a random spread of it, and an unrelated population with
    the same skill distribution; ground truth for base vs split is annotated."""
    base = random_population(seed)
    split = random_mps_split(base, seed.child(1))
    other = random_population_with_mean(skill_distribution(base), seed.child(2))
    expected = "no_discrimination" if split.degenerate else "systematic_against: base"
    annotations = {
        "generator": {
            "seed": seed.seed,
            "skill_count": seed.skill_count,
            "support_bound": seed.support_bound,
            "denominator_bound": seed.denominator_bound,
        },
        "ground_truth": {
            "split_dominates_base": True,
            "degenerate_split": split.degenerate,
            "classify_base_split": expected,
            "coupling_base_to_split": [vector_json(row) for row in split.coupling.weights],
            "other_has_same_skill_distribution": True,
        },
    }
    labels = SkillSet(tuple(f"t{k + 1}" for k in range(seed.skill_count)))
    return Scenario(labels, {"base": base, "split": split.population, "other": other},
                    annotations=annotations)


def cmd_gen(args, out) -> int:
    try:
        seed = InstanceSeed(args.seed, args.skills, args.support_bound, args.denominator_bound)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    text = dump_scenario(generate_scenario(seed))
    if args.out is None:
        out.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statdisc",
        description="Classify statistical discrimination between worker populations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_command(name, func, help_text, first_help, second_help):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", required=True, metavar="PATH")
        p.add_argument("--first", required=True, metavar="NAME", help=first_help)
        p.add_argument("--second", required=True, metavar="NAME", help=second_help)
        p.add_argument("--format", choices=["text", "json", "machine-readable"], default="text")
        p.set_defaults(func=func)
        return p

    pair_command("classify", cmd_classify, "classify pay discrimination between two populations",
                 "first population", "second population")
    pair_command("dominates", cmd_dominates, "test whether FIRST is a mean-preserving spread of SECOND",
                 "candidate more-informative population", "candidate less-informative population")
    ex = pair_command("exante", cmd_exante, "classify ex-ante (interview exclusion) discrimination",
                      "first population", "second population")
    ex.add_argument("--cost", metavar="RATIONAL", help="interview cost, e.g. 1/4 (0 selects the N order)")

    gen = sub.add_parser("gen", help="write a random scenario with ground-truth annotations")
    gen.add_argument("--seed", type=int, required=True, metavar="N")
    gen.add_argument("--skills", type=int, default=2, metavar="K")
    gen.add_argument("--support-bound", type=int, default=3, metavar="N")
    gen.add_argument("--denominator-bound", type=int, default=8, metavar="N")
    gen.add_argument("--out", metavar="PATH")
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "format", None) == "machine-readable":
        args.format = "json"
    try:
        return args.func(args, out)
    except UnequalMeans as exc:
        err.write(f"error: {exc}\n")
        err.write(f"  skill distribution of {args.first}: {exc.first}\n")
        err.write(f"  skill distribution of {args.second}: {exc.second}\n")
        return EXIT_DOMAIN
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (ScenarioError, InputError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
