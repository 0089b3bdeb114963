"""Instance file format: a single parenthesized document per problem.

::

    (instance
      (domain briefcase)
      (concept-instances (object (o1 o2)) (briefcase (b1)) (location (l1 l2 l3)))
      (init (at o1 l1) (at o2 l3) (at b1 l1))
      (goal (at o1 l2)))

Goal entries may be ground facts or quantified templates such as
``(for-all object (at ?x l2))``. Grid instances carry their geometry in an
``(extra grid-w 4 grid-h 4 dest-x 3 dest-y 3)`` section; their goals are
derived from the destination keys, so grid files have no goal section.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .domain import Goal, GroundGoal, ProblemInstance, QuantifiedGoal
from .domains import GRID_DOMAINS, get_domain, grid_goals
from .errors import InstanceError
from .facts import Atom, Fact, Pattern, Variable, WorldState
from .sexpr import Sexpr, format_sexpr, parse_sexprs

_SECTIONS = ("domain", "concept-instances", "init", "goal", "extra")


def parse_instance(text: str) -> ProblemInstance:
    forms = parse_sexprs(text)
    if len(forms) != 1:
        raise InstanceError(f"expected exactly one (instance ...) form, got {len(forms)}")
    return instance_from_form(forms[0])


def load_instance(path: Union[str, Path]) -> ProblemInstance:
    return parse_instance(Path(path).read_text())


def instance_from_form(form: Sexpr) -> ProblemInstance:
    if not (isinstance(form, list) and form and form[0] == "instance"):
        raise InstanceError(f"top-level form must be (instance ...), got {_show(form)}")
    sections: dict[str, list] = {}
    for part in form[1:]:
        if not (isinstance(part, list) and part and isinstance(part[0], str)):
            raise InstanceError(f"bad instance section {_show(part)}")
        head = part[0]
        if head not in _SECTIONS:
            raise InstanceError(f"unknown instance section {_show(part)}")
        if head in sections:
            raise InstanceError(f"duplicate section ({head} ...)")
        sections[head] = part[1:]

    if "domain" not in sections or len(sections["domain"]) != 1:
        raise InstanceError("missing or malformed (domain NAME) section")
    domain_name = sections["domain"][0]
    if not isinstance(domain_name, str):
        raise InstanceError(f"domain name must be a symbol, got {_show(domain_name)}")
    domain = get_domain(domain_name)

    concept_instances = _parse_concepts(sections.get("concept-instances"))
    init_state = WorldState(_parse_fact(f) for f in sections.get("init", []))
    extra = _parse_extra(sections.get("extra", []))

    if domain_name in GRID_DOMAINS:
        if "goal" in sections:
            raise InstanceError(
                f"{domain_name} goals are derived from the extra destination keys; "
                "remove the (goal ...) section"
            )
        robots = concept_instances.get("robot", ())
        if not robots:
            raise InstanceError("concept 'robot' has no instances")
        goals = grid_goals(domain_name, robots, extra)
    else:
        goals = tuple(_parse_goal(g) for g in sections.get("goal", []))

    instance = ProblemInstance(
        domain=domain,
        concept_instances=concept_instances,
        init_state=init_state,
        goals=goals,
        extra=extra,
    )
    instance.validate()
    return instance


def _parse_concepts(forms) -> dict[str, tuple[Atom, ...]]:
    if not forms:
        raise InstanceError("missing (concept-instances ...) section")
    out: dict[str, tuple[Atom, ...]] = {}
    for entry in forms:
        if not (
            isinstance(entry, list)
            and len(entry) == 2
            and isinstance(entry[0], str)
            and isinstance(entry[1], list)
        ):
            raise InstanceError(f"bad concept entry {_show(entry)}")
        concept, names = entry
        if concept in out:
            raise InstanceError(f"duplicate concept entry {_show(entry)}")
        for name in names:
            if not isinstance(name, str) or name.startswith("?"):
                raise InstanceError(f"bad object name {_show(name)} in {_show(entry)}")
        out[concept] = tuple(names)
    return out


def _parse_fact(form) -> Fact:
    if not (isinstance(form, list) and form and isinstance(form[0], str)):
        raise InstanceError(f"bad fact {_show(form)}")
    for a in form[1:]:
        if isinstance(a, list):
            raise InstanceError(f"bad fact {_show(form)}: nested list argument")
        if isinstance(a, str) and a.startswith("?"):
            raise InstanceError(f"variable {a} not allowed in ground fact {_show(form)}")
    return Fact(form[0], tuple(form[1:]))


def _parse_goal(form) -> Goal:
    if isinstance(form, list) and form and form[0] in ("for-all", "exists"):
        if len(form) != 3 or not isinstance(form[1], str) or not isinstance(form[2], list):
            raise InstanceError(f"bad quantified goal {_show(form)}")
        quantifier, concept, tpl = form
        if not tpl or not isinstance(tpl[0], str):
            raise InstanceError(f"bad goal template {_show(tpl)}")
        terms = tuple(
            Variable(t) if isinstance(t, str) and t.startswith("?") else t
            for t in tpl[1:]
        )
        return QuantifiedGoal(quantifier, concept, Pattern(tpl[0], terms))
    return GroundGoal(_parse_fact(form))


def _parse_extra(forms) -> dict[str, Atom]:
    if len(forms) % 2 != 0:
        raise InstanceError(f"extra section needs key/value pairs, got {_show(forms)}")
    out: dict[str, Atom] = {}
    for key, value in zip(forms[::2], forms[1::2]):
        if not isinstance(key, str) or isinstance(value, list):
            raise InstanceError(f"bad extra pair ({_show(key)} {_show(value)})")
        out[key] = value
    return out


def _show(form) -> str:
    return format_sexpr(form) if isinstance(form, list) else str(form)


# -- printing -------------------------------------------------------------------


def format_instance(instance: ProblemInstance) -> str:
    lines = ["(instance", f"  (domain {instance.domain.name})"]
    lines.append("  (concept-instances")
    for concept, names in instance.concept_instances.items():
        lines.append(f"    ({concept} ({' '.join(str(n) for n in names)}))")
    lines[-1] += ")"
    if len(instance.init_state):
        lines.append("  (init")
        for f in instance.init_state:
            lines.append(f"    {f}")
        lines[-1] += ")"
    if instance.goals and instance.domain.name not in GRID_DOMAINS:
        lines.append("  (goal")
        for goal in instance.goals:
            lines.append(f"    {_format_goal(goal)}")
        lines[-1] += ")"
    if instance.extra:
        pairs = " ".join(f"{k} {v}" for k, v in instance.extra.items())
        lines.append(f"  (extra {pairs})")
    return "\n".join(lines) + ")\n"


def _format_goal(goal: Goal) -> str:
    if isinstance(goal, GroundGoal):
        return str(goal.fact)
    return f"({goal.quantifier} {goal.concept} {goal.template})"
