"""Analysis reports: run the selected checks on one matrix and serialize the verdicts."""

from __future__ import annotations

import enum
import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .exact import BudgetExceededError, SubmatrixSelector, SubmatrixVerdict, all_submatrices_signed_determinant, is_ssd
from .graph import (
    ConditionStarVerdict,
    Cycle,
    CycleEnumerationTruncated,
    build_sr_graph,
    check_condition_star,
    enumerate_cycles,
    intersection_components,
    to_dot,
    vertex_label,
)
from .matrix import StoichMatrix

SCHEMA = "srgraph.report/1"
CHECKS = ("star", "ssd", "signed-det", "o-cycles")

OUTFLOW_NOTE = (
    "InjectiveWithOutflows refers to the system with inflows and strictly increasing outflows "
    "for every species. Without outflows the same structure only rules out multiple positive "
    "nondegenerate equilibria; that refinement is not computed here."
)


class Conclusion(enum.Enum):
    INJECTIVE_WITH_OUTFLOWS = "InjectiveWithOutflows"
    NO_CONCLUSION = "NoConclusion"


def input_digest(canonical_text: str) -> str:
    return "sha256:" + hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()


@dataclass
class AnalysisReport:
    matrix: StoichMatrix
    input_kind: str
    input_digest: str
    checks: tuple[str, ...]
    n1c_violations: list[tuple[str, int]] = field(default_factory=list)
    condition_star: ConditionStarVerdict | None = None
    ssd: SubmatrixVerdict | None = None
    signed_dets: SubmatrixVerdict | None = None
    all_o_cycles: bool | None = None
    cycles: Sequence[Cycle] | None = None
    error: str | None = None

    @property
    def conclusion(self) -> Conclusion:
        # only a verified SSD verdict supports the claim; Condition (*) alone is not enough here
        if self.error is None and self.ssd is not None and self.ssd.holds:
            return Conclusion.INJECTIVE_WITH_OUTFLOWS
        return Conclusion.NO_CONCLUSION

    def witness_cycles(self) -> list[Cycle]:
        v = self.condition_star
        if v is None:
            return []
        if v.bad_pair is not None:
            return list(v.bad_pair)
        if v.bad_e_cycle is not None:
            return [v.bad_e_cycle]
        return []

    def cycle_summary(self) -> list[dict] | None:
        if self.cycles is None:
            return None
        counts = Counter(("e" if c.is_e_cycle else "o", c.is_s_cycle, c.length) for c in self.cycles)
        return [{"parity": p, "s_cycle": s, "length": L, "count": counts[(p, s, L)]}
                for p, s, L in sorted(counts)]

    # --- serialization ---

    def _selector(self, sel: SubmatrixSelector | None):
        if sel is None:
            return None
        return {"rows": [self.matrix.row_label(i) for i in sel.gamma],
                "cols": [self.matrix.col_label(j) for j in sel.delta]}

    def _subverdict(self, v: SubmatrixVerdict | None):
        if v is None:
            return None
        return {"holds": v.holds, "counterexample": self._selector(v.counterexample)}

    def _cycle(self, c: Cycle) -> dict:
        return {"vertices": c.labels(self.matrix), "length": c.length,
                "parity": "e" if c.is_e_cycle else "o", "stoich": str(c.stoich)}

    def _star(self):
        v = self.condition_star
        if v is None:
            return None
        S = self.matrix
        pair = None
        if v.bad_pair is not None:
            a, b = v.bad_pair
            pair = {
                "cycles": [self._cycle(a), self._cycle(b)],
                "shared_components": [
                    {"vertices": [vertex_label(S, comp.endpoints[0])]
                                 + _walk_labels(S, comp.endpoints[0], comp.edges),
                     "kind": comp.kind.value}
                    for comp in intersection_components(a, b)],
            }
        return {
            "holds": v.holds,
            "bad_e_cycle": None if v.bad_e_cycle is None else self._cycle(v.bad_e_cycle),
            "bad_pair": pair,
            "cycle_count": v.cycle_count,
            "e_cycle_count": v.e_cycle_count,
            "s_to_r_pair_count": None if v.s_to_r_pairs is None else len(v.s_to_r_pairs),
            "edge_disjoint_e_pair_count": v.edge_disjoint_e_pairs,
        }

    def to_dict(self) -> dict:
        S = self.matrix
        return {
            "schema": SCHEMA,
            "input": {"kind": self.input_kind, "digest": self.input_digest,
                      "species": [S.row_label(i) for i in range(S.n)],
                      "reactions": [S.col_label(j) for j in range(S.m)]},
            "matrix": [[str(x) for x in row] for row in S.rows],
            "checks": list(self.checks),
            "n1c": {"holds": not self.n1c_violations,
                    "violations": [{"species": s, "reaction": j + 1} for s, j in self.n1c_violations]},
            "condition_star": self._star(),
            "ssd": self._subverdict(self.ssd),
            "signed_dets": self._subverdict(self.signed_dets),
            "all_o_cycles": self.all_o_cycles,
            "cycle_summary": self.cycle_summary(),
            "conclusion": self.conclusion.value,
            "note": OUTFLOW_NOTE,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        S = self.matrix
        out = [f"input: {self.input_kind} ({S.n} species x {S.m} reactions), {self.input_digest}"]
        if self.cycles is not None:
            n_e = sum(c.is_e_cycle for c in self.cycles)
            out.append(f"cycles: {len(self.cycles)} ({n_e} e-cycles, {len(self.cycles) - n_e} o-cycles)")
        v = self.condition_star
        if v is not None:
            out.append(f"Condition (*): {'holds' if v.holds else 'fails'}")
            if v.bad_e_cycle is not None:
                c = v.bad_e_cycle
                out.append(f"  e-cycle that is not an s-cycle: {c.describe(S)} (stoich {c.stoich})")
            if v.bad_pair is not None:
                a, b = v.bad_pair
                comps = intersection_components(a, b)
                shared = "; ".join("-".join([vertex_label(S, c.endpoints[0])] + _walk_labels(S, c.endpoints[0], c.edges))
                                   for c in comps)
                out.append(f"  e-cycles with S-to-R intersection: {a.describe(S)} and {b.describe(S)} share {shared}")
        for name, sv in (("SSD", self.ssd), ("all square submatrices have signed determinant", self.signed_dets)):
            if sv is not None:
                line = f"{name}: {'yes' if sv.holds else 'no'}"
                if sv.counterexample is not None:
                    ce = self._selector(sv.counterexample)
                    line += f" (rows {', '.join(ce['rows'])}; columns {', '.join(ce['cols'])})"
                out.append(line)
        if self.all_o_cycles is not None:
            out.append(f"all cycles are o-cycles: {'yes' if self.all_o_cycles else 'no'}")
        if self.error:
            out.append(f"error: {self.error}")
        out.append(f"conclusion: {self.conclusion.value}")
        out.append(f"note: {OUTFLOW_NOTE}")
        return "\n".join(out) + "\n"

    def to_dot(self) -> str:
        return to_dot(build_sr_graph(self.matrix), self.witness_cycles())


def _walk_labels(S: StoichMatrix, start, edges) -> list[str]:
    labels = []
    v = start
    for e in edges:
        a, b = e.vertices
        v = b if v == a else a
        labels.append(vertex_label(S, v))
    return labels


def analyze(S: StoichMatrix, checks: Sequence[str] = CHECKS, *, input_kind: str = "matrix",
            digest: str | None = None, n1c_violations: Sequence[tuple[str, int]] = (),
            max_cycle_len: int | None = None, budget: int | None = None) -> AnalysisReport:
    """Run the requested checks and collect them in a report.

    Budget and truncation failures do not raise: they are recorded in
    ``error`` and the conclusion becomes NoConclusion.
    """
    checks = tuple(c for c in CHECKS if c in checks)
    report = AnalysisReport(S, input_kind, digest or input_digest(S.to_text()), checks,
                            list(n1c_violations))
    G = build_sr_graph(S)
    try:
        if "star" in checks or "o-cycles" in checks:
            cycles = enumerate_cycles(G, max_cycle_len)
            if cycles.truncated:
                raise CycleEnumerationTruncated(
                    f"cycle enumeration stopped at length {max_cycle_len}; the cycle list is incomplete")
            report.cycles = cycles
            if "star" in checks:
                report.condition_star = check_condition_star(G, cycles=cycles, exhaustive=True)
            if "o-cycles" in checks:
                report.all_o_cycles = all(c.is_o_cycle for c in cycles)
        if "ssd" in checks:
            report.ssd = is_ssd(S, budget)
        if "signed-det" in checks:
            report.signed_dets = all_submatrices_signed_determinant(S, budget)
    except (CycleEnumerationTruncated, BudgetExceededError) as exc:
        report.error = str(exc)
        return report
    if report.condition_star is not None and report.condition_star.holds and report.ssd is not None:
        assert report.ssd.holds, "Condition (*) holds but the matrix is not SSD"
    return report
