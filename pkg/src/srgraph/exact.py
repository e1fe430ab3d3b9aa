"""Exact determinants and sign-pattern classification of square submatrices."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from .matrix import StoichMatrix

DEFAULT_SUBMATRIX_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class SubmatrixSelector:
    """Row set ``gamma`` and column set ``delta``, both strictly increasing."""

    gamma: tuple[int, ...]
    delta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(self.gamma))
        object.__setattr__(self, "delta", tuple(self.delta))
        if len(self.gamma) != len(self.delta) or not self.gamma:
            raise ValueError("selector needs equal, nonzero numbers of rows and columns")
        for idx in (self.gamma, self.delta):
            if any(a >= b for a, b in zip(idx, idx[1:])) or idx[0] < 0:
                raise ValueError(f"indices must be strictly increasing and nonnegative: {idx}")

    @property
    def size(self) -> int:
        return len(self.gamma)

    @classmethod
    def full(cls, S: StoichMatrix) -> "SubmatrixSelector":
        if not S.is_square:
            raise ValueError(f"matrix is {S.n}x{S.m}, not square")
        return cls(tuple(range(S.n)), tuple(range(S.m)))

    def check(self, S: StoichMatrix) -> None:
        if self.gamma[-1] >= S.n or self.delta[-1] >= S.m:
            raise IndexError(f"selector {self} out of range for {S.n}x{S.m} matrix")

    def to_dict(self) -> dict:
        return {"rows": list(self.gamma), "cols": list(self.delta)}


class TermTag(enum.Enum):
    NO_NONZERO_TERMS = "NoNonzeroTerms"
    ALL_POSITIVE = "AllPositive"
    ALL_NEGATIVE = "AllNegative"
    MIXED_SIGNS = "MixedSigns"


@dataclass(frozen=True)
class TermClassification:
    """Sign classification of the nonzero terms of a determinant expansion.

    ``witness`` holds up to two column assignments (``alpha[i]`` is the column
    matched to row ``gamma[i]``) whose terms exhibit the tag; for mixed signs
    the first is positive and the second negative.
    """

    tag: TermTag
    witness: tuple[tuple[int, ...], ...] = ()


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def determinant(S: StoichMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    if not S.is_square:
        raise ValueError(f"determinant of a non-square {S.n}x{S.m} matrix")
    a = [list(row) for row in S.rows]
    k = len(a)
    det = Fraction(1)
    for c in range(k):
        p = next((r for r in range(c, k) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for r in range(c + 1, k):
            f = a[r][c]
            if f:
                f /= piv
                row_c, row_r = a[c], a[r]
                for j in range(c + 1, k):
                    row_r[j] -= f * row_c[j]
    return det


def iter_term_assignments(S: StoichMatrix, sel: SubmatrixSelector | None = None) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(alpha, sign)`` for every nonzero term of ``det S(gamma|delta)``.

    ``alpha`` lists actual column indices, row by row, in lexicographic order of
    the position vector. ``sign`` is the sign of the full term (permutation
    parity times entry signs). Rows are only matched to columns where the entry
    is nonzero, so the search never visits zero terms.
    """
    sel = as_selector(S, sel)
    sel.check(S)
    k = sel.size
    support = [[p for p, j in enumerate(sel.delta) if S.rows[i][j]] for i in sel.gamma]
    if any(not s for s in support):
        return
    used = [False] * k
    chosen = [0] * k

    def rec(i: int, sign: int):
        if i == k:
            yield tuple(sel.delta[p] for p in chosen), sign
            return
        row = S.rows[sel.gamma[i]]
        for p in support[i]:
            if used[p]:
                continue
            # inversions contributed by placing position p after the earlier rows
            inv = sum(1 for q in range(p + 1, k) if used[q])
            s = sign * _sign(row[sel.delta[p]]) * (-1 if inv & 1 else 1)
            used[p] = True
            chosen[i] = p
            yield from rec(i + 1, s)
            used[p] = False

    yield from rec(0, 1)


def classify_terms(S: StoichMatrix, sel: SubmatrixSelector | None = None) -> TermClassification:
    """Classify the signs of the nonzero terms; stops at the first opposite-sign pair.

    ``sel`` defaults to the whole (square) matrix.
    """
    pos = neg = None
    for alpha, s in iter_term_assignments(S, sel):
        if s > 0:
            if pos is None:
                pos = [alpha]
            elif len(pos) < 2:
                pos.append(alpha)
        else:
            if neg is None:
                neg = [alpha]
            elif len(neg) < 2:
                neg.append(alpha)
        if pos and neg:
            return TermClassification(TermTag.MIXED_SIGNS, (pos[0], neg[0]))
    if pos:
        return TermClassification(TermTag.ALL_POSITIVE, tuple(pos))
    if neg:
        return TermClassification(TermTag.ALL_NEGATIVE, tuple(neg))
    return TermClassification(TermTag.NO_NONZERO_TERMS)


def is_sign_nonsingular(S: StoichMatrix, sel: SubmatrixSelector | None = None) -> bool:
    return classify_terms(S, sel).tag in (TermTag.ALL_POSITIVE, TermTag.ALL_NEGATIVE)


def is_sign_singular(S: StoichMatrix, sel: SubmatrixSelector | None = None) -> bool:
    return classify_terms(S, sel).tag is TermTag.NO_NONZERO_TERMS


def has_signed_determinant(S: StoichMatrix, sel: SubmatrixSelector | None = None) -> bool:
    return classify_terms(S, sel).tag is not TermTag.MIXED_SIGNS


def submatrix_count(n: int, m: int) -> int:
    return sum(comb(n, k) * comb(m, k) for k in range(1, min(n, m) + 1))


def _guard(S: StoichMatrix, budget: int | None) -> None:
    limit = DEFAULT_SUBMATRIX_BUDGET if budget is None else budget
    total = submatrix_count(S.n, S.m)
    if total > limit:
        raise BudgetExceededError(
            f"{S.n}x{S.m} matrix has {total} square submatrices, over the budget of {limit}; "
            "raise the submatrix budget to analyse it")


def iter_selectors(n: int, m: int) -> Iterator[SubmatrixSelector]:
    """All square selectors: smallest size first, then lexicographic (gamma, delta)."""
    for k in range(1, min(n, m) + 1):
        for gamma in combinations(range(n), k):
            for delta in combinations(range(m), k):
                yield SubmatrixSelector(gamma, delta)


@dataclass(frozen=True)
class SubmatrixVerdict:
    """Outcome of a check over all square submatrices.

    ``counterexample`` is the first failing selector, present iff not ``holds``.
    """

    holds: bool
    counterexample: SubmatrixSelector | None = None

    def __post_init__(self):
        if self.holds == (self.counterexample is not None):
            raise ValueError("counterexample must be present exactly when the check fails")

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "counterexample": None if self.counterexample is None else self.counterexample.to_dict(),
        }


SsdVerdict = SubmatrixVerdict


def is_ssd(S: StoichMatrix, budget: int | None = None) -> SubmatrixVerdict:
    """Check that every square submatrix is sign nonsingular or has determinant 0.

    Singularity is decided on the actual rational entries, not the sign
    pattern. The cost is exponential in min(n, m); matrices with more square
    submatrices than ``budget`` are refused with :class:`BudgetExceededError`.
    """
    _guard(S, budget)
    for sel in iter_selectors(S.n, S.m):
        if sel.size == 1:
            continue
        if classify_terms(S, sel).tag is TermTag.MIXED_SIGNS and determinant(S.submatrix(sel.gamma, sel.delta)) != 0:
            return SubmatrixVerdict(False, sel)
    return SubmatrixVerdict(True)


def all_submatrices_signed_determinant(S: StoichMatrix, budget: int | None = None) -> SubmatrixVerdict:
    """Check that no square submatrix has nonzero terms of both signs."""
    _guard(S, budget)
    for sel in iter_selectors(S.n, S.m):
        if sel.size > 1 and classify_terms(S, sel).tag is TermTag.MIXED_SIGNS:
            return SubmatrixVerdict(False, sel)
    return SubmatrixVerdict(True)


def term_sum(S: StoichMatrix, sel: SubmatrixSelector | None = None) -> Fraction:
    """Sum of the enumerated nonzero terms; equals the determinant."""
    sel = as_selector(S, sel)
    total = Fraction(0)
    for alpha, s in iter_term_assignments(S, sel):
        prod = Fraction(1)
        for i, j in zip(sel.gamma, alpha):
            prod *= abs(S.rows[i][j])
        total += s * prod
    return total


def as_selector(S: StoichMatrix, sel: SubmatrixSelector | None) -> SubmatrixSelector:
    return SubmatrixSelector.full(S) if sel is None else sel
