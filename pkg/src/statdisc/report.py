"""Reports for the CLI: verdicts plus the exact values behind them.

A report is a JSON-ready dict. It repeats the populations it talks about, so
:func:`verify_report` can re-check every claimed inequality from the printed
numbers alone, without the scenario file or the solver.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .blackwell import Classification, Coupling, Dominates, DominanceResult, Tag, extract_discriminating_firm
from .core import Population, expected_surplus, skill_distribution
from .exante import ExAnteClassification, interview_value
from .serialize import (
    ScenarioError,
    dumps,
    firm_json,
    parse_firm,
    parse_population,
    parse_rational,
    population_json,
    rational_str,
    vector_json,
)

Report = dict[str, Any]


def _header(command: str, labels, pops: dict[str, Population]) -> Report:
    return {
        "command": command,
        "skill_labels": list(labels),
        "populations": {n: population_json(p) for n, p in pops.items()},
        "skill_distributions": {n: vector_json(skill_distribution(p).probs)
                                for n, p in pops.items()},
    }


def _coupling_json(c: Coupling, source: str, target: str) -> dict[str, Any]:
    return {"source": source, "target": target,
            "weights": [vector_json(row) for row in c.weights]}


def _surplus_witness(firm, against: str, other: str, pops: dict[str, Population]) -> dict[str, Any]:
    return {
        "against": against,
        "firm": firm_json(firm),
        "surplus": {n: rational_str(expected_surplus(firm, pops[n])) for n in (against, other)},
    }


def classify_report(labels, first: str, p1: Population, second: str, p2: Population,
                    result: Classification) -> Report:
    pops = {first: p1, second: p2}
    report = _header("classify", labels, pops)
    if result.tag is Tag.SYSTEMATIC_AGAINST_FIRST:
        verdict = {"tag": "systematic_against", "against": first}
        witnesses = [_surplus_witness(result.witnesses[0], first, second, pops)]
    elif result.tag is Tag.SYSTEMATIC_AGAINST_SECOND:
        verdict = {"tag": "systematic_against", "against": second}
        witnesses = [_surplus_witness(result.witnesses[0], second, first, pops)]
    elif result.tag is Tag.UNSYSTEMATIC:
        verdict = {"tag": "unsystematic"}
        witnesses = [_surplus_witness(result.witnesses[0], first, second, pops),
                     _surplus_witness(result.witnesses[1], second, first, pops)]
    else:
        verdict = {"tag": "no_discrimination"}
        witnesses = []
    report["verdict"] = verdict
    report["witnesses"] = witnesses
    # the coupling runs from the less to the more informative population
    if result.tag is Tag.SYSTEMATIC_AGAINST_SECOND:
        ends = (second, first)
    else:
        ends = (first, second)
    report["couplings"] = [_coupling_json(c, *ends) for c in result.couplings]
    return report


def dominates_report(labels, hi: str, p_hi: Population, lo: str, p_lo: Population,
                     result: DominanceResult) -> Report:
    report = _header("dominates", labels, {hi: p_hi, lo: p_lo})
    report["hi"], report["lo"] = hi, lo
    if isinstance(result, Dominates):
        report["verdict"] = {"tag": "dominates"}
        report["coupling"] = _coupling_json(result.coupling, lo, hi)
    else:
        witness = extract_discriminating_firm(result.certificate, lo=p_lo, hi=p_hi)
        report["verdict"] = {"tag": "not_dominates"}
        report["witness"] = _surplus_witness(witness, hi, lo, {hi: p_hi, lo: p_lo})
    return report


def _exclusion_witness(f, excluded: str, other: str, pops: dict[str, Population]) -> dict[str, Any]:
    return {
        "excludes": excluded,
        "firm": firm_json(f),
        "interview_value": {n: rational_str(interview_value(f, pops[n])) for n in (excluded, other)},
    }


def exante_report(labels, first: str, p1: Population, second: str, p2: Population,
                  result: ExAnteClassification) -> Report:
    pops = {first: p1, second: p2}
    report = _header("exante", labels, pops)
    report["cost"] = rational_str(result.cost)
    report["regime"] = "N-order regime" if result.regime == "N" else "M-order regime"
    if result.tag is Tag.SYSTEMATIC_AGAINST_FIRST:
        verdict = {"tag": "systematic_ex_ante_against", "against": first}
        witnesses = [_exclusion_witness(result.witnesses[0], first, second, pops)]
    elif result.tag is Tag.SYSTEMATIC_AGAINST_SECOND:
        verdict = {"tag": "systematic_ex_ante_against", "against": second}
        witnesses = [_exclusion_witness(result.witnesses[0], second, first, pops)]
    elif result.tag is Tag.UNSYSTEMATIC:
        verdict = {"tag": "unsystematic_ex_ante"}
        witnesses = [_exclusion_witness(result.witnesses[0], first, second, pops),
                     _exclusion_witness(result.witnesses[1], second, first, pops)]
    else:
        verdict = {"tag": "no_ex_ante_discrimination"}
        if result.n_equivalent:
            verdict["n_equivalent"] = True
        witnesses = []
    report["verdict"] = verdict
    report["witnesses"] = witnesses
    if result.hull_weights is not None:
        report["hull_weights"] = [
            {"inner": second, "outer": first,
             "weights": [vector_json(w) for w in result.hull_weights["second_in_first"]]},
            {"inner": first, "outer": second,
             "weights": [vector_json(w) for w in result.hull_weights["first_in_second"]]},
        ]
    return report


def emit_report(report: Report) -> str:
    return dumps(report)


def parse_report(text: str) -> Report:
    try:
        report = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"report is not valid JSON: {exc}") from exc
    if not isinstance(report, dict) or "command" not in report:
        raise ScenarioError("report must be an object with a 'command' field")
    return report


def verdict_line(report: Report) -> str:
    verdict = report["verdict"]
    tag = verdict["tag"]
    if "against" in verdict:
        return f"{tag}: {verdict['against']}"
    if verdict.get("n_equivalent"):
        return f"{tag} (N-equivalent)"
    return tag


def render_text(report: Report) -> str:
    labels = report["skill_labels"]
    lines = [f"command: {report['command']}", f"skills: {', '.join(labels)}"]
    for name, atoms in report["populations"].items():
        body = ", ".join(f"({', '.join(a['belief'])}): {a['weight']}" for a in atoms)
        lines.append(f"population {name}: {{{body}}}")
        lines.append(f"  skill distribution: ({', '.join(report['skill_distributions'][name])})")
    if "cost" in report:
        lines.append(f"cost: {report['cost']}  [{report['regime']}]")
    lines.append(f"verdict: {verdict_line(report)}")
    for w in report.get("witnesses", []) + ([report["witness"]] if "witness" in report else []):
        lines.append("witness firm: " + _firm_text(w["firm"]))
        if "surplus" in w:
            against = w["against"]
            other = next(n for n in w["surplus"] if n != against)
            lines.append(f"  surplus {against} = {w['surplus'][against]}"
                         f" < surplus {other} = {w['surplus'][other]}")
        else:
            ex = w["excludes"]
            other = next(n for n in w["interview_value"] if n != ex)
            lines.append(f"  interview value {ex} = {w['interview_value'][ex]} <= {report['cost']}"
                         f" < interview value {other} = {w['interview_value'][other]}")
    for c in report.get("couplings", []) + ([report["coupling"]] if "coupling" in report else []):
        lines.append(f"coupling {c['source']} -> {c['target']}:")
        for row in c["weights"]:
            lines.append("  [" + ", ".join(row) + "]")
    for h in report.get("hull_weights", []):
        lines.append(f"hull weights placing {h['inner']} inside the hull of {h['outer']}:")
        for row in h["weights"]:
            lines.append("  [" + ", ".join(row) + "]")
    return "\n".join(lines) + "\n"


def _firm_text(doc: dict[str, Any]) -> str:
    tasks = ", ".join("(" + ", ".join(t) + ")" for t in doc["tasks"])
    alpha = f", alpha = {doc['alpha']}" if "alpha" in doc else ""
    return "{" + tasks + "}" + alpha


def verify_report(report: Report) -> list[str]:
    """Recompute every claim in ``report`` from its own printed values.

    Returns a list of problems; empty means the report checks out.
    """
    problems: list[str] = []
    size = len(report["skill_labels"])
    pops = {n: parse_population(a, size, n) for n, a in report["populations"].items()}
    for name, vec in report["skill_distributions"].items():
        printed = tuple(parse_rational(x) for x in vec)
        if skill_distribution(pops[name]).probs != printed:
            problems.append(f"skill distribution of {name} does not match its atoms")

    for w in report.get("witnesses", []) + ([report["witness"]] if "witness" in report else []):
        firm = parse_firm(w["firm"], size, "witness")
        if "surplus" in w:
            against = w["against"]
            (other,) = [n for n in w["surplus"] if n != against]
            printed = {n: parse_rational(v) for n, v in w["surplus"].items()}
            for n, v in printed.items():
                if expected_surplus(firm.firm, pops[n]) != v:
                    problems.append(f"printed surplus of {n} is wrong")
            if not printed[against] < printed[other]:
                problems.append(f"witness does not pay {against} strictly less")
        else:
            cost = parse_rational(report["cost"])
            ex = w["excludes"]
            (other,) = [n for n in w["interview_value"] if n != ex]
            printed = {n: parse_rational(v) for n, v in w["interview_value"].items()}
            for n, v in printed.items():
                if interview_value(firm, pops[n]) != v:
                    problems.append(f"printed interview value of {n} is wrong")
            if not printed[ex] <= cost < printed[other]:
                problems.append(f"witness does not exclude {ex} only")

    for c in report.get("couplings", []) + ([report["coupling"]] if "coupling" in report else []):
        weights = tuple(tuple(parse_rational(x) for x in row) for row in c["weights"])
        coupling = Coupling(pops[c["source"]], pops[c["target"]], weights)
        problems += [f"coupling {c['source']} -> {c['target']}: {p}" for p in coupling.violations()]

    for h in report.get("hull_weights", []):
        inner, outer = h["inner"], h["outer"]
        for belief, row in zip(pops[inner].beliefs, h["weights"]):
            weights = [parse_rational(x) for x in row]
            point = tuple(sum((wt * b[k] for wt, b in zip(weights, pops[outer].beliefs)), Fraction(0))
                          for k in range(size))
            if any(wt < 0 for wt in weights) or sum(weights) != 1 or point != belief.probs:
                problems.append(f"hull weights for {inner} in {outer} do not reproduce {belief}")
    return problems
