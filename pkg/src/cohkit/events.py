"""Boolean event algebra: formulas, constrained worlds, constituents.

Events are boolean formulas over named atoms.  A Universe fixes the atom
list (at most 16) and an optional set of logical constraints; worlds are
the surviving 0/1 assignments, represented as bitmasks, and every formula
evaluates to a bitset over the world list.  Constituents of a family of
conditional events are the nonempty joint truth-pattern classes, ordered
lexicographically with true < false < void per member.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

MAX_ATOMS = 16

# signature codes per family member inside a constituent
SIG_TRUE = 0
SIG_FALSE = 1
SIG_VOID = 2


class EventError(Exception):
    pass


class UnknownAtomError(EventError):
    pass


class EmptyUniverseError(EventError):
    pass


class EmptyConditioningError(EventError):
    """Raised when a conditioning event is impossible in the universe."""


class FormulaSyntaxError(EventError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Formula:
    """Expression tree over atoms with ~, &, | and the constants."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def atoms(self) -> frozenset:
        out = set()
        _collect_atoms(self, out)
        return frozenset(out)

    def __str__(self) -> str:
        return _render(self, 0)


@dataclass(frozen=True)
class Atom(Formula):
    __slots__ = ("name",)
    name: str


@dataclass(frozen=True)
class Not(Formula):
    __slots__ = ("operand",)
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Const(Formula):
    __slots__ = ("value",)
    value: bool


TOP = Const(True)
BOTTOM = Const(False)


def _collect_atoms(f: Formula, out: set) -> None:
    if isinstance(f, Atom):
        out.add(f.name)
    elif isinstance(f, Not):
        _collect_atoms(f.operand, out)
    elif isinstance(f, (And, Or)):
        _collect_atoms(f.left, out)
        _collect_atoms(f.right, out)


def _render(f: Formula, level: int) -> str:
    # precedence levels: | = 0, & = 1, ~ = 2
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "TRUE" if f.value else "FALSE"
    if isinstance(f, Not):
        return "~" + _render(f.operand, 2)
    if isinstance(f, And):
        text = _render(f.left, 1) + " & " + _render(f.right, 1)
        return "(" + text + ")" if level > 1 else text
    if isinstance(f, Or):
        text = _render(f.left, 0) + " | " + _render(f.right, 0)
        return "(" + text + ")" if level > 0 else text
    raise TypeError(f"not a formula: {f!r}")


def eval_formula(f: Formula, world: Mapping[str, bool]) -> bool:
    """Evaluate a formula on an atom assignment."""
    if isinstance(f, Atom):
        try:
            return bool(world[f.name])
        except KeyError:
            raise UnknownAtomError(f.name) from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not eval_formula(f.operand, world)
    if isinstance(f, And):
        return eval_formula(f.left, world) and eval_formula(f.right, world)
    if isinstance(f, Or):
        return eval_formula(f.left, world) or eval_formula(f.right, world)
    raise TypeError(f"not a formula: {f!r}")


_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|([~&|()]))")


def parse_formula(text: str, known_atoms: Optional[Sequence[str]] = None) -> Formula:
    """Parse the text grammar: ~ binds tightest, then &, then |.

    Atoms are identifiers; TRUE and FALSE are constants; whitespace is
    free.  When known_atoms is given, any other identifier raises
    UnknownAtomError.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad)
        name, op = m.group(1), m.group(2)
        tokens.append((name or op, m.start(1) if name else m.start(2)))
        pos = m.end()
    tokens.append((None, len(text)))

    idx = 0

    def peek():
        return tokens[idx][0]

    def advance():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_or() -> Formula:
        node = parse_and()
        while peek() == "|":
            advance()
            node = Or(node, parse_and())
        return node

    def parse_and() -> Formula:
        node = parse_not()
        while peek() == "&":
            advance()
            node = And(node, parse_not())
        return node

    def parse_not() -> Formula:
        if peek() == "~":
            advance()
            return Not(parse_not())
        return parse_primary()

    def parse_primary() -> Formula:
        tok, at = advance()
        if tok == "(":
            node = parse_or()
            closing, cat = advance()
            if closing != ")":
                raise FormulaSyntaxError("expected ')'", cat)
            return node
        if tok is None or tok in "&|)~":
            raise FormulaSyntaxError("expected an atom, constant or '('", at)
        if tok == "TRUE":
            return TOP
        if tok == "FALSE":
            return BOTTOM
        if known_atoms is not None and tok not in known_atoms:
            raise UnknownAtomError(tok)
        return Atom(tok)

    node = parse_or()
    tok, at = tokens[idx]
    if tok is not None:
        raise FormulaSyntaxError(f"unexpected token {tok!r}", at)
    return node


class Universe:
    """Atom list plus constraints; enumerates the surviving worlds.

    Constraints are (formula, truth) pairs: the formula is asserted
    certain (truth=True) or impossible (truth=False) and worlds violating
    any of them are dropped.  At least one world must survive.
    """

    def __init__(self, atoms: Sequence[str], constraints: Sequence[tuple] = ()):
        atoms = list(atoms)
        if len(atoms) > MAX_ATOMS:
            raise EventError(f"at most {MAX_ATOMS} atoms supported, got {len(atoms)}")
        if len(set(atoms)) != len(atoms):
            raise EventError("duplicate atom names")
        for a in atoms:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", a):
                raise EventError(f"bad atom name {a!r}")
        self.atoms = tuple(atoms)
        self.constraints = tuple((f, bool(v)) for f, v in constraints)
        self._index = {a: i for i, a in enumerate(atoms)}
        self._cache: dict = {}

        worlds = []
        for mask in range(1 << len(atoms)):
            w = {a: bool(mask >> i & 1) for a, i in self._index.items()}
            if all(eval_formula(f, w) == v for f, v in self.constraints):
                worlds.append(mask)
        if not worlds:
            raise EmptyUniverseError("constraints admit no world")
        self.worlds = tuple(worlds)
        self.all_set = (1 << len(worlds)) - 1
        # per-atom bitsets over world positions
        self._atom_sets = {}
        for a, i in self._index.items():
            bits = 0
            for pos, mask in enumerate(worlds):
                if mask >> i & 1:
                    bits |= 1 << pos
            self._atom_sets[a] = bits

    def __len__(self) -> int:
        return len(self.worlds)

    def world_set(self, f: Formula) -> int:
        """Bitset of world positions where the formula holds."""
        cached = self._cache.get(f)
        if cached is not None:
            return cached
        if isinstance(f, Atom):
            try:
                bits = self._atom_sets[f.name]
            except KeyError:
                raise UnknownAtomError(f.name) from None
        elif isinstance(f, Const):
            bits = self.all_set if f.value else 0
        elif isinstance(f, Not):
            bits = self.all_set & ~self.world_set(f.operand)
        elif isinstance(f, And):
            bits = self.world_set(f.left) & self.world_set(f.right)
        elif isinstance(f, Or):
            bits = self.world_set(f.left) | self.world_set(f.right)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._cache[f] = bits
        return bits

    def satisfiable(self, f: Formula) -> bool:
        return self.world_set(f) != 0

    def assignment(self, position: int) -> dict:
        """Atom assignment of the world at a given position."""
        mask = self.worlds[position]
        return {a: bool(mask >> i & 1) for a, i in self._index.items()}

    def assignments(self) -> Iterator[dict]:
        for pos in range(len(self.worlds)):
            yield self.assignment(pos)


def implies(f: Formula, g: Formula, universe: Universe) -> bool:
    """f logically implies g within the universe (f & ~g impossible)."""
    return universe.world_set(f) & ~universe.world_set(g) & universe.all_set == 0


def equivalent(f: Formula, g: Formula, universe: Universe) -> bool:
    return universe.world_set(f) == universe.world_set(g)


@dataclass(frozen=True)
class Constituent:
    """One joint truth-pattern class of a family of conditional events."""

    index: int
    world_bits: int
    signature: tuple
    is_c0: bool

    def worlds(self, universe: Universe) -> list:
        return [
            universe.assignment(pos)
            for pos in range(len(universe))
            if self.world_bits >> pos & 1
        ]


@dataclass(frozen=True)
class ConstituentTable:
    universe: Universe
    family: tuple
    constituents: tuple  # C_1 .. C_m, lexicographic on signatures
    c0: Optional[Constituent]

    def all_constituents(self) -> tuple:
        return self.constituents + ((self.c0,) if self.c0 is not None else ())


def conditional_sets(member, universe: Universe) -> tuple:
    """(true, false, void) world bitsets of a conditional event.

    The member only needs .consequent and .antecedent formulas.  Raises
    EmptyConditioningError when the antecedent is impossible.
    """
    ante = universe.world_set(member.antecedent)
    if ante == 0:
        raise EmptyConditioningError(
            f"empty conditioning event: {member.antecedent}"
        )
    cons = universe.world_set(member.consequent)
    true = cons & ante
    false = ante & ~cons & universe.all_set
    void = universe.all_set & ~ante
    return true, false, void


def enumerate_constituents(family: Sequence, universe: Universe) -> ConstituentTable:
    """Constituents generated by a family of conditional events.

    Members need .consequent/.antecedent attributes.  Truth-pattern
    classes with identical world sets are merged by construction; the
    all-void class, when nonempty, is returned separately as C_0.
    """
    if not family:
        raise EventError("empty family")
    sets = [conditional_sets(m, universe) for m in family]
    groups: dict = {}
    for pos in range(len(universe)):
        bit = 1 << pos
        sig = []
        for true, false, _void in sets:
            if true & bit:
                sig.append(SIG_TRUE)
            elif false & bit:
                sig.append(SIG_FALSE)
            else:
                sig.append(SIG_VOID)
        key = tuple(sig)
        groups[key] = groups.get(key, 0) | bit

    all_void = tuple([SIG_VOID] * len(family))
    c0 = None
    ordered = []
    for sig in sorted(groups):
        if sig == all_void:
            c0 = Constituent(0, groups[sig], sig, True)
        else:
            ordered.append((sig, groups[sig]))
    constituents = tuple(
        Constituent(i + 1, bits, sig, False) for i, (sig, bits) in enumerate(ordered)
    )
    return ConstituentTable(universe, tuple(family), constituents, c0)
