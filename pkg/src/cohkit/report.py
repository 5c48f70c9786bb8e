"""Structured-text reports.

A report is an ordered tree of key/value entries rendered with two-space
indentation.  Every rational is printed as exact value plus a decimal in
parentheses; parsing recovers the exact value, so rendering and parsing
round-trip losslessly.
"""

from __future__ import annotations

import re
from typing import List, Tuple, Union

from .rationals import format_decimal, format_rational, parse_rational, rat

Entry = Tuple[str, Union[str, int, object, list, "Report"]]


class Report:
    """Ordered key/value tree; values: str, int, rational, list, Report."""

    def __init__(self, entries=None):
        self.entries: List[Entry] = list(entries or [])

    def add(self, key: str, value) -> "Report":
        self.entries.append((key, value))
        return self

    def section(self, key: str) -> "Report":
        sub = Report()
        self.entries.append((key, sub))
        return sub

    def get(self, key: str):
        for k, v in self.entries:
            if k == key:
                return v
        raise KeyError(key)

    def __eq__(self, other):
        return isinstance(other, Report) and self._canonical() == other._canonical()

    def _canonical(self):
        out = []
        for k, v in self.entries:
            if isinstance(v, Report):
                out.append((k, v._canonical()))
            elif isinstance(v, list):
                out.append((k, tuple(_canonical_scalar(x) for x in v)))
            else:
                out.append((k, _canonical_scalar(v)))
        return tuple(out)


def _canonical_scalar(v):
    if isinstance(v, (str, int, bool)):
        return v
    return ("rat", rat(v).numerator, rat(v).denominator)


def format_value(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{format_rational(value)} ({format_decimal(value)})"


_RATIONAL_TEXT = re.compile(r"^(-?\d+(?:/\d+)?) \((-?[\d.]+)\)$")


def parse_value(text: str):
    if text == "yes":
        return True
    if text == "no":
        return False
    m = _RATIONAL_TEXT.match(text)
    if m:
        return parse_rational(m.group(1))
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    return text


def render(report: Report, indent: int = 0) -> str:
    lines = []
    _render_into(report, indent, lines)
    return "\n".join(lines) + "\n"


def _render_into(report: Report, indent: int, lines: list) -> None:
    pad = "  " * indent
    for key, value in report.entries:
        if isinstance(value, Report):
            lines.append(f"{pad}{key}:")
            _render_into(value, indent + 1, lines)
        elif isinstance(value, list):
            rendered = ", ".join(format_value(v) for v in value)
            lines.append(f"{pad}{key}: [{rendered}]")
        else:
            lines.append(f"{pad}{key}: {format_value(value)}")


def parse_report(text: str) -> Report:
    root = Report()
    stack = [(root, -1)]
    for raw in text.splitlines():
        if not raw.strip():
            continue
        indent = (len(raw) - len(raw.lstrip(" "))) // 2
        line = raw.strip()
        key, _, rest = line.partition(":")
        rest = rest.strip()
        while stack and stack[-1][1] >= indent:
            stack.pop()
        parent = stack[-1][0]
        if not rest:
            sub = parent.section(key)
            stack.append((sub, indent))
        elif rest.startswith("[") and rest.endswith("]"):
            body = rest[1:-1].strip()
            items = [parse_value(p.strip()) for p in body.split(",")] if body else []
            parent.add(key, items)
        else:
            parent.add(key, parse_value(rest))
    return root
