"""Line-oriented assessment files.

    # comment
    atoms A B H K
    constraint A & H & ~K = FALSE
    event e1 = A | H          # consequent | antecedent (or: A given H)
    event e2 = B & K          # no bar: unconditional
    assess e1 = 1/2
    assess e2 = 0.25
    target e1

The conditioning bar is the last '|' outside parentheses, so a consequent
containing a top-level disjunction must be parenthesized or use 'given'.
Decimals are converted to exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .events import (
    EventError,
    Formula,
    FormulaSyntaxError,
    TOP,
    UnknownAtomError,
    Universe,
    parse_formula,
)
from .rationals import RationalParseError, parse_rational
from .trivalent import ConditionalEvent


class FileFormatError(Exception):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass
class AssessmentFile:
    universe: Universe
    events: dict  # name -> ConditionalEvent, insertion ordered
    assessed: list  # names in assessment order
    values: dict  # name -> rational
    target: Optional[str] = None

    def assessed_events(self) -> list:
        return [self.events[name] for name in self.assessed]

    def assessed_values(self) -> list:
        return [self.values[name] for name in self.assessed]


def _split_conditional(text: str, line_number: int):
    if " given " in text:
        consequent, _, antecedent = text.partition(" given ")
        return consequent, antecedent
    depth = 0
    split_at = -1
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FileFormatError(line_number, "unbalanced parentheses")
        elif ch == "|" and depth == 0:
            split_at = i
    if split_at < 0:
        return text, None
    return text[:split_at], text[split_at + 1 :]


def parse_assessment_file(text: str) -> AssessmentFile:
    atoms = None
    constraints = []
    event_sources = []  # (line_number, name, consequent_text, antecedent_text)
    assess_sources = []  # (line_number, name, value_text)
    target = None
    target_line = None

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "atoms":
            if atoms is not None:
                raise FileFormatError(line_number, "duplicate atoms line")
            atoms = rest.split()
            if not atoms:
                raise FileFormatError(line_number, "atoms line declares nothing")
        elif keyword == "constraint":
            if atoms is None:
                raise FileFormatError(line_number, "atoms must be declared first")
            formula_text, _, value_text = rest.rpartition("=")
            value_text = value_text.strip()
            if value_text not in ("TRUE", "FALSE") or not formula_text.strip():
                raise FileFormatError(
                    line_number, "expected: constraint <formula> = TRUE|FALSE"
                )
            constraints.append(
                (line_number, formula_text.strip(), value_text == "TRUE")
            )
        elif keyword == "event":
            if atoms is None:
                raise FileFormatError(line_number, "atoms must be declared first")
            name, eq, expr = rest.partition("=")
            name = name.strip()
            if not eq or not name.isidentifier():
                raise FileFormatError(line_number, "expected: event <name> = <expr>")
            consequent, antecedent = _split_conditional(expr.strip(), line_number)
            event_sources.append((line_number, name, consequent, antecedent))
        elif keyword == "assess":
            name, eq, value_text = rest.partition("=")
            name = name.strip()
            if not eq:
                raise FileFormatError(line_number, "expected: assess <name> = <value>")
            assess_sources.append((line_number, name, value_text.strip()))
        elif keyword == "target":
            if target is not None:
                raise FileFormatError(line_number, "duplicate target line")
            target = rest
            target_line = line_number
            if not target:
                raise FileFormatError(line_number, "target line names nothing")
        else:
            raise FileFormatError(line_number, f"unknown directive {keyword!r}")

    if atoms is None:
        raise FileFormatError(1, "missing atoms line")

    def parse_here(line_number: int, source: str) -> Formula:
        try:
            return parse_formula(source, known_atoms=atoms)
        except FormulaSyntaxError as exc:
            raise FileFormatError(
                line_number, f"syntax error at column {exc.position + 1}"
            ) from exc
        except UnknownAtomError as exc:
            raise FileFormatError(line_number, f"undeclared atom {exc}") from exc

    constraint_formulas = [
        (parse_here(ln, src), value) for ln, src, value in constraints
    ]
    try:
        universe = Universe(atoms, constraint_formulas)
    except EventError as exc:
        raise FileFormatError(1, str(exc)) from exc

    events: dict = {}
    for line_number, name, consequent, antecedent in event_sources:
        if name in events:
            raise FileFormatError(line_number, f"duplicate event {name!r}")
        cons = parse_here(line_number, consequent)
        ante = TOP if antecedent is None else parse_here(line_number, antecedent)
        if not universe.satisfiable(ante):
            raise FileFormatError(
                line_number, f"conditioning event of {name!r} is impossible"
            )
        events[name] = ConditionalEvent(cons, ante)

    assessed = []
    values: dict = {}
    for line_number, name, value_text in assess_sources:
        if name not in events:
            raise FileFormatError(line_number, f"assess of undefined event {name!r}")
        if name in values:
            raise FileFormatError(line_number, f"duplicate assessment of {name!r}")
        try:
            values[name] = parse_rational(value_text)
        except RationalParseError as exc:
            raise FileFormatError(line_number, str(exc)) from exc
        assessed.append(name)

    if target is not None and target not in events:
        raise FileFormatError(target_line, f"target names undefined event {target!r}")

    return AssessmentFile(universe, events, assessed, values, target)
