"""Reaction network text format, the N1C check and the stoichiometric matrix.

One reaction per line::

    # comment
    D <-> A + B + C
    2 A + 1/2 B -> 3 C
    X ->              # an empty side (or a lone 0) is allowed on one side

Species are numbered by first appearance, reactions by line order. ``->`` and
``<->`` mean the same thing here; only the sign structure matters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .matrix import StoichMatrix

ARROWS = ("<->", "->")


class NetworkParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class N1CViolationError(ValueError):
    """The network has a species on both sides of some reaction."""

    def __init__(self, violations: list[tuple[str, int]]):
        self.violations = violations
        desc = ", ".join(f"{name} in reaction {j + 1}" for name, j in violations)
        super().__init__(f"network violates N1C (species on both sides of a reaction): {desc}")


@dataclass(frozen=True)
class Species:
    name: str
    index: int


@dataclass(frozen=True)
class Reaction:
    left: Mapping[str, Fraction]
    right: Mapping[str, Fraction]
    index: int
    arrow: str = "<->"

    def __post_init__(self):
        object.__setattr__(self, "left", MappingProxyType(dict(self.left)))
        object.__setattr__(self, "right", MappingProxyType(dict(self.right)))
        if not self.left and not self.right:
            raise ValueError("reaction with both sides empty")
        for side in (self.left, self.right):
            for name, c in side.items():
                if c <= 0:
                    raise ValueError(f"coefficient of {name} must be positive, got {c}")

    def __eq__(self, other):
        if not isinstance(other, Reaction):
            return NotImplemented
        return (dict(self.left), dict(self.right), self.index, self.arrow) == \
            (dict(other.left), dict(other.right), other.index, other.arrow)

    def __hash__(self):
        return hash((tuple(self.left.items()), tuple(self.right.items()), self.index))

    def to_text(self) -> str:
        return f"{_side_text(self.left)} {self.arrow} {_side_text(self.right)}".strip()


@dataclass(frozen=True)
class ReactionNetwork:
    species: tuple[Species, ...]
    reactions: tuple[Reaction, ...]

    def __post_init__(self):
        names = [s.name for s in self.species]
        if len(set(names)) != len(names):
            raise ValueError("duplicate species names")
        if [s.index for s in self.species] != list(range(len(names))):
            raise ValueError("species indices must be 0..n-1 in order")
        known = set(names)
        for r in self.reactions:
            for name in (*r.left, *r.right):
                if name not in known:
                    raise ValueError(f"reaction {r.index + 1} references unknown species {name!r}")

    @property
    def species_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.species)

    def to_text(self) -> str:
        return "".join(r.to_text() + "\n" for r in self.reactions)


def _coef_text(c: Fraction) -> str:
    return "" if c == 1 else f"{c} "


def _side_text(side: Mapping[str, Fraction]) -> str:
    return " + ".join(f"{_coef_text(c)}{name}" for name, c in side.items())


_TERM = re.compile(
    r"\s*(?:(?P<coef>\d+/\d+|\d*\.\d+|\d+)\s*)?(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*"
)
_ZERO_SIDE = re.compile(r"\s*0\s*")


def _parse_side(text: str, lineno: int, offset: int) -> dict[str, Fraction]:
    side: dict[str, Fraction] = {}
    if not text.strip() or _ZERO_SIDE.fullmatch(text):
        return side
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if m is None or not m.group("name"):
            col = offset + pos + (len(text[pos:]) - len(text[pos:].lstrip())) + 1
            raise NetworkParseError("expected a term '[coefficient] species'", lineno, col)
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if coef <= 0:
            raise NetworkParseError("coefficient must be positive", lineno, offset + m.start("coef") + 1)
        name = m.group("name")
        side[name] = side.get(name, Fraction(0)) + coef
        pos = m.end()
        if pos == len(text):
            return side
        if text[pos] != "+":
            raise NetworkParseError(f"unexpected character {text[pos]!r}", lineno, offset + pos + 1)
        pos += 1


def parse_network(text: str) -> ReactionNetwork:
    """Parse reaction-network text into a :class:`ReactionNetwork`.

    Repeated species on one side are merged by summing coefficients. Raises
    :class:`NetworkParseError` with a 1-based line and column on bad input.
    """
    order: dict[str, int] = {}
    reactions: list[Reaction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        for arrow in ARROWS:
            at = line.find(arrow)
            if at >= 0:
                break
        else:
            col = len(raw) - len(raw.lstrip()) + 1
            raise NetworkParseError("missing reaction arrow ('->' or '<->')", lineno, col)
        rest = line[at + len(arrow):]
        if any(a in rest for a in ARROWS):
            raise NetworkParseError("more than one arrow", lineno, at + len(arrow) + rest.find("-") + 1)
        left = _parse_side(line[:at], lineno, 0)
        right = _parse_side(rest, lineno, at + len(arrow))
        if not left and not right:
            raise NetworkParseError("both sides of the reaction are empty", lineno, at + 1)
        for name in (*left, *right):
            order.setdefault(name, len(order))
        reactions.append(Reaction(left, right, len(reactions), arrow))
    if not reactions:
        raise NetworkParseError("empty input: no reactions found", 1, 1)
    species = tuple(Species(name, i) for name, i in order.items())
    return ReactionNetwork(species, tuple(reactions))


def serialize_network(net: ReactionNetwork) -> str:
    return net.to_text()


def validate_n1c(net: ReactionNetwork) -> list[tuple[str, int]]:
    """Return every (species name, reaction index) with the species on both sides."""
    violations = []
    for r in net.reactions:
        for name in r.left:
            if name in r.right:
                violations.append((name, r.index))
    return violations


def stoichiometric_matrix(net: ReactionNetwork) -> StoichMatrix:
    """S[i][j] = (right coefficient) - (left coefficient) of species i in reaction j."""
    violations = validate_n1c(net)
    if violations:
        raise N1CViolationError(violations)
    n, m = len(net.species), len(net.reactions)
    index = {s.name: s.index for s in net.species}
    rows = [[Fraction(0)] * m for _ in range(n)]
    for r in net.reactions:
        for name, c in r.left.items():
            rows[index[name]][r.index] -= c
        for name, c in r.right.items():
            rows[index[name]][r.index] += c
    return StoichMatrix(tuple(map(tuple, rows)), net.species_names,
                        tuple(f"R{j + 1}" for j in range(m)))
