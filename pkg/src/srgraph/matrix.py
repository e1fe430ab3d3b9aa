"""Exact rational matrices used as the common input of every analysis."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class MatrixFormatError(ValueError):
    """Raised when a matrix text file cannot be read."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def to_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point entries are not accepted; use int, Fraction or 'p/q' strings")
    return Fraction(value)


@dataclass(frozen=True)
class StoichMatrix:
    """An n x m matrix of exact rationals.

    Rows are species (S-vertices), columns are reactions (R-vertices). Labels
    are optional and only used for reporting.
    """

    rows: tuple[tuple[Fraction, ...], ...]
    row_labels: tuple[str, ...] = field(default=(), compare=False)
    col_labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError(f"ragged matrix: row lengths {sorted(widths)}")
        for row in self.rows:
            for x in row:
                if not isinstance(x, Fraction):
                    raise TypeError("StoichMatrix entries must be Fraction; use StoichMatrix.from_rows")
        if self.row_labels and len(self.row_labels) != self.n:
            raise ValueError("row_labels length does not match row count")
        if self.col_labels and len(self.col_labels) != self.m:
            raise ValueError("col_labels length does not match column count")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], row_labels: Sequence[str] = (),
                  col_labels: Sequence[str] = ()) -> "StoichMatrix":
        frozen = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        return cls(frozen, tuple(row_labels), tuple(col_labels))

    @classmethod
    def zeros(cls, n: int, m: int) -> "StoichMatrix":
        return cls(tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.m)

    @property
    def is_square(self) -> bool:
        return self.n == self.m

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def row_label(self, i: int) -> str:
        return self.row_labels[i] if self.row_labels else f"S{i + 1}"

    def col_label(self, j: int) -> str:
        return self.col_labels[j] if self.col_labels else f"R{j + 1}"

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def nonzero_count(self) -> int:
        return sum(1 for row in self.rows for x in row if x)

    def sign_pattern(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple((x > 0) - (x < 0) for x in row) for row in self.rows)

    def submatrix(self, gamma: Sequence[int], delta: Sequence[int]) -> "StoichMatrix":
        rl = tuple(self.row_label(i) for i in gamma) if self.row_labels else ()
        cl = tuple(self.col_label(j) for j in delta) if self.col_labels else ()
        return StoichMatrix(tuple(tuple(self.rows[i][j] for j in delta) for i in gamma), rl, cl)

    def permute_rows(self, order: Sequence[int]) -> "StoichMatrix":
        if sorted(order) != list(range(self.n)):
            raise ValueError("order must be a permutation of the row indices")
        rl = tuple(self.row_labels[i] for i in order) if self.row_labels else ()
        return StoichMatrix(tuple(self.rows[i] for i in order), rl, self.col_labels)

    def permute_columns(self, order: Sequence[int]) -> "StoichMatrix":
        if sorted(order) != list(range(self.m)):
            raise ValueError("order must be a permutation of the column indices")
        cl = tuple(self.col_labels[j] for j in order) if self.col_labels else ()
        return StoichMatrix(tuple(tuple(row[j] for j in order) for row in self.rows),
                            self.row_labels, cl)

    def to_text(self) -> str:
        """Serialize in the whitespace grid format read by :func:`parse_matrix`."""
        return "".join(" ".join(str(x) for x in row) + "\n" for row in self.rows)

    def __str__(self) -> str:
        cells = [[str(x) for x in row] for row in self.rows]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def resign_columns(S: StoichMatrix, signs: Sequence[int]) -> StoichMatrix:
    """Multiply column ``j`` of ``S`` by ``signs[j]`` (each +1 or -1)."""
    if len(signs) != S.m:
        raise ValueError(f"expected {S.m} column signs, got {len(signs)}")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("column signs must be +1 or -1")
    rows = tuple(tuple(x * s for x, s in zip(row, signs)) for row in S.rows)
    return StoichMatrix(rows, S.row_labels, S.col_labels)


_TOKEN = re.compile(r"[^\s,;]+")
_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_matrix(text: str) -> StoichMatrix:
    """Read a grid of rationals, one row per line.

    Entries are integers or ``p/q`` and may be separated by whitespace, commas
    or semicolons. Blank lines and ``#`` comments are skipped.
    """
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        row = []
        for tok in _TOKEN.finditer(line):
            if not _RATIONAL.fullmatch(tok.group()):
                raise MatrixFormatError(f"bad entry {tok.group()!r}", lineno, tok.start() + 1)
            try:
                row.append(Fraction(tok.group()))
            except ZeroDivisionError:
                raise MatrixFormatError(f"zero denominator in {tok.group()!r}", lineno, tok.start() + 1)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(f"row has {len(row)} entries, expected {width}", lineno)
        rows.append(tuple(row))
    if not rows:
        raise MatrixFormatError("empty matrix input")
    return StoichMatrix(tuple(rows))
