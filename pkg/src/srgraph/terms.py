"""Permutations, term subgraphs and the cycles formed by pairs of terms.

Permutations act on positions 0..k-1 of the ordered column set ``delta`` of a
selector: ``images[i]`` is the position assigned to row ``gamma[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exact import SubmatrixSelector, as_selector, iter_term_assignments
from .graph import Cycle, Edge, r_vertex, s_vertex
from .matrix import StoichMatrix


class PreconditionError(ValueError):
    """A verification was asked about inputs outside its hypotheses."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation of 0..{len(self.images) - 1}: {self.images}")

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(k)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        if len(other) != len(self):
            raise ValueError("permutations act on sets of different sizes")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    @cached_property
    def cycle_decomposition(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles including fixed points, each starting at its smallest element."""
        seen = [False] * len(self)
        cycles = []
        for i in range(len(self)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            cycles.append(tuple(cyc))
        return tuple(cycles)

    def nontrivial_cycles(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.cycle_decomposition if len(c) > 1)


def permutation_parity(p: Permutation, include_trivial: bool = True) -> int:
    """(-1)^(elements in cycles - number of cycles).

    Fixed points add one element and one cycle, so ``include_trivial`` does not
    change the answer.
    """
    cycles = p.cycle_decomposition if include_trivial else p.nontrivial_cycles()
    return -1 if (sum(map(len, cycles)) - len(cycles)) % 2 else 1


@dataclass(frozen=True)
class TermSubgraph:
    """The matching of one nonzero determinant term of ``S(gamma|delta)``."""

    matrix: StoichMatrix
    selector: SubmatrixSelector
    perm: Permutation

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        sel = self.selector
        return tuple(Edge.from_matrix(self.matrix, sel.gamma[i], sel.delta[p])
                     for i, p in enumerate(self.perm.images))

    @cached_property
    def term_value(self) -> Fraction:
        prod = Fraction(permutation_parity(self.perm))
        for e in self.edges:
            prod *= self.matrix.rows[e.s][e.r]
        return prod

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(self.selector.delta[p] for p in self.perm.images)


def enumerate_term_subgraphs(S: StoichMatrix, sel: SubmatrixSelector | None = None) -> list[TermSubgraph]:
    """One term subgraph per nonzero term, in lexicographic order of ``images``."""
    sel = as_selector(S, sel)
    pos = {j: p for p, j in enumerate(sel.delta)}
    return [TermSubgraph(S, sel, Permutation(tuple(pos[j] for j in alpha)))
            for alpha, _ in iter_term_assignments(S, sel)]


def _check_pair(a: TermSubgraph, b: TermSubgraph) -> None:
    if a.selector != b.selector or a.matrix is not b.matrix and a.matrix != b.matrix:
        raise ValueError("term subgraphs come from different submatrices")
    if a.perm == b.perm:
        raise ValueError("the two term subgraphs are identical")


def union_cycles(a: TermSubgraph, b: TermSubgraph) -> list[Cycle]:
    """Cycles of the union of two term subgraphs, one per nontrivial cycle of b∘a⁻¹.

    For a cycle (b_1 ... b_r) of positions, ``a(j)`` is the row with
    ``alpha[a(j)] = b_j``; the SR-graph cycle then runs
    R[b_1], S[a(1)], R[b_2], S[a(2)], ..., S[a(r)] and back to R[b_1].
    Shared edges (fixed points) are not part of any cycle.
    """
    _check_pair(a, b)
    sel = a.selector
    alpha_inv = a.perm.inverse()
    cycles = []
    for cyc in b.perm.compose(alpha_inv).nontrivial_cycles():
        verts = []
        for bj in cyc:
            verts.append(r_vertex(sel.delta[bj]))
            verts.append(s_vertex(sel.gamma[alpha_inv(bj)]))
        cycles.append(Cycle.from_vertices(a.matrix, verts))
    return cycles


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def verify_prodform(a: TermSubgraph, b: TermSubgraph) -> bool:
    """sign(T_a T_b) == (-1)^(number of e-cycles in the union)."""
    _check_pair(a, b)
    if not a.term_value or not b.term_value:
        raise PreconditionError("both terms must be nonzero")
    lhs = _sign(a.term_value) * _sign(b.term_value)
    e_count = sum(1 for c in union_cycles(a, b) if c.is_e_cycle)
    return lhs == (-1) ** e_count


def cancellation_applies(a: TermSubgraph, b: TermSubgraph) -> bool:
    cycles = union_cycles(a, b)
    return len(cycles) == 1 and cycles[0].is_e_cycle and cycles[0].is_s_cycle


def verify_cancellation(a: TermSubgraph, b: TermSubgraph) -> bool:
    """T_a + T_b == 0 when the union is a single cycle that is both an e- and an s-cycle."""
    if not cancellation_applies(a, b):
        raise PreconditionError("union must contain exactly one cycle, which is an e-cycle and an s-cycle")
    return a.term_value + b.term_value == 0
