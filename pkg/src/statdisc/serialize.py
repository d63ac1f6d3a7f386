"""Scenario files: JSON with every rational written as an ``"num/den"`` string.

Example::

    {
      "skill_labels": ["low", "high"],
      "populations": {
        "A": [{"belief": ["1/2", "1/2"], "weight": "1"}],
        "B": [{"belief": ["1", "0"], "weight": "1/2"},
              {"belief": ["0", "1"], "weight": "1/2"}]
      },
      "firms": {"F": {"tasks": [["1", "-1"]], "alpha": "1/2"}},
      "cost": "1/4"
    }

``firms``, ``cost`` and ``annotations`` are optional. Decimal notation is
rejected so that no value is silently rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .core import (
    ExAnteFirm,
    Firm,
    Population,
    SkillSet,
    canonicalize,
    format_rational,
)

SCENARIO_KEYS = {"skill_labels", "populations", "firms", "cost", "annotations"}


class ScenarioError(ValueError):
    """Malformed scenario or report document."""


def parse_rational(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ScenarioError(f"{where}: expected a rational string like \"3/4\", got {value!r}")
    text = str(value).strip()
    if any(ch in text for ch in ".eE") or not text:
        raise ScenarioError(f"{where}: decimals are not allowed, got {value!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"{where}: not a rational: {value!r}") from exc


def rational_str(value: Fraction) -> str:
    return format_rational(value)


def vector_json(vec) -> list[str]:
    return [rational_str(x) for x in vec]


def parse_vector(value: Any, size: int, where: str) -> tuple[Fraction, ...]:
    if not isinstance(value, list) or len(value) != size:
        raise ScenarioError(f"{where}: expected a list of {size} rationals")
    return tuple(parse_rational(x, f"{where}[{k}]") for k, x in enumerate(value))


def population_json(pop: Population) -> list[dict[str, Any]]:
    return [{"belief": vector_json(b.probs), "weight": rational_str(w)} for b, w in pop.atoms]


def parse_population(value: Any, size: int, where: str) -> Population:
    if not isinstance(value, list) or not value:
        raise ScenarioError(f"{where}: expected a non-empty list of atoms")
    atoms = []
    for i, atom in enumerate(value):
        here = f"{where}[{i}]"
        if not isinstance(atom, dict) or set(atom) != {"belief", "weight"}:
            raise ScenarioError(f"{here}: atom must have exactly the keys belief, weight")
        atoms.append((parse_vector(atom["belief"], size, f"{here}.belief"),
                      parse_rational(atom["weight"], f"{here}.weight")))
    try:
        return canonicalize(Population(tuple(atoms)))
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from exc


def firm_json(f: Firm | ExAnteFirm) -> dict[str, Any]:
    if isinstance(f, ExAnteFirm):
        return {"tasks": [vector_json(t) for t in f.firm.tasks], "alpha": rational_str(f.alpha)}
    return {"tasks": [vector_json(t) for t in f.tasks]}


def parse_firm(value: Any, size: int, where: str) -> ExAnteFirm:
    if not isinstance(value, dict) or "tasks" not in value or set(value) - {"tasks", "alpha"}:
        raise ScenarioError(f"{where}: firm needs 'tasks' and optionally 'alpha'")
    tasks = value["tasks"]
    if not isinstance(tasks, list) or not tasks:
        raise ScenarioError(f"{where}.tasks: expected a non-empty list")
    vectors = tuple(parse_vector(t, size, f"{where}.tasks[{k}]") for k, t in enumerate(tasks))
    alpha = parse_rational(value.get("alpha", "1"), f"{where}.alpha")
    try:
        return ExAnteFirm(Firm(vectors), alpha)
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from exc


@dataclass
class Scenario:
    skills: SkillSet
    populations: dict[str, Population]
    firms: dict[str, ExAnteFirm] = field(default_factory=dict)
    cost: Optional[Fraction] = None
    annotations: Optional[dict[str, Any]] = None

    def population(self, name: str) -> Population:
        try:
            return self.populations[name]
        except KeyError:
            known = ", ".join(sorted(self.populations)) or "none"
            raise ScenarioError(f"no population named {name!r} (known: {known})") from None

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "skill_labels": list(self.skills.labels),
            "populations": {k: population_json(v) for k, v in self.populations.items()},
        }
        if self.firms:
            doc["firms"] = {k: firm_json(v) for k, v in self.firms.items()}
        if self.cost is not None:
            doc["cost"] = rational_str(self.cost)
        if self.annotations is not None:
            doc["annotations"] = self.annotations
        return doc


def dumps(doc: dict[str, Any]) -> str:
    """Stable text form shared by scenarios and machine-readable reports.

    Indented JSON, except that lists of scalars (vectors) stay on one line.
    """
    return _dump(doc, 0) + "\n"


def _dump(value: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_dump(v, depth + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in value) + "]"
        return "[\n" + ",\n".join(inner + _dump(v, depth + 1) for v in value) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def dump_scenario(scenario: Scenario) -> str:
    return dumps(scenario.to_json())


def parse_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = set(doc) - SCENARIO_KEYS
    if unknown:
        raise ScenarioError(f"unknown scenario fields: {', '.join(sorted(unknown))}")
    labels = doc.get("skill_labels")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ScenarioError("skill_labels must be a list of strings")
    try:
        skills = SkillSet(tuple(labels))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    pops = doc.get("populations")
    if not isinstance(pops, dict):
        raise ScenarioError("populations must be an object mapping names to atom lists")
    populations = {name: parse_population(v, skills.size, f"populations.{name}")
                   for name, v in pops.items()}
    firms_doc = doc.get("firms", {})
    if not isinstance(firms_doc, dict):
        raise ScenarioError("firms must be an object mapping names to firms")
    firms = {name: parse_firm(v, skills.size, f"firms.{name}") for name, v in firms_doc.items()}
    cost = None
    if "cost" in doc:
        cost = parse_rational(doc["cost"], "cost")
        if cost < 0:
            raise ScenarioError("cost must be non-negative")
    annotations = doc.get("annotations")
    if annotations is not None and not isinstance(annotations, dict):
        raise ScenarioError("annotations must be an object")
    return Scenario(skills, populations, firms, cost, annotations)


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())
