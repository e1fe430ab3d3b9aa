"""Random matrices and brute-force cross-checks of the graph/matrix theorems."""

from __future__ import annotations

import enum
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .exact import (
    BudgetExceededError,
    SubmatrixVerdict,
    all_submatrices_signed_determinant,
    determinant,
    is_ssd,
    iter_selectors,
    term_sum,
)
from .graph import (
    ConditionStarVerdict,
    CycleEnumerationTruncated,
    build_sr_graph,
    check_condition_star,
    enumerate_cycles,
    intersection_components,
)
from .matrix import StoichMatrix, resign_columns
from .terms import cancellation_applies, enumerate_term_subgraphs, verify_cancellation, verify_prodform

DEFAULT_POOL = tuple(Fraction(x) for x in (-2, -1, 0, 1, 2))


@dataclass(frozen=True)
class GeneratorConfig:
    rows: int = 4
    cols: int = 4
    entry_pool: tuple[Fraction, ...] = DEFAULT_POOL
    density: float = 0.6
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.density <= 1:
            raise ValueError("density must lie in [0, 1]")
        if self.rows < 0 or self.cols < 0:
            raise ValueError("dimensions must be nonnegative")
        if not self.entry_pool:
            raise ValueError("entry pool is empty")


def random_matrices(cfg: GeneratorConfig) -> Iterator[StoichMatrix]:
    """Endless reproducible stream of random matrices for ``cfg``.

    Each entry is nonzero with probability ``density``; nonzero entries are
    drawn uniformly from the nonzero members of the pool.
    """
    values = [Fraction(x) for x in cfg.entry_pool if x != 0]
    if not values and cfg.density > 0:
        raise ValueError("entry pool has no nonzero values but density > 0")
    rng = random.Random(cfg.seed)
    while True:
        yield StoichMatrix(tuple(
            tuple(rng.choice(values) if rng.random() < cfg.density else Fraction(0)
                  for _ in range(cfg.cols))
            for _ in range(cfg.rows)))


def random_matrix(cfg: GeneratorConfig) -> StoichMatrix:
    return next(random_matrices(cfg))


class TheoremOutcome(enum.Enum):
    CONDITION_STAR_FAILS = "ConditionStarFails"
    IMPLICATION_HOLDS = "ImplicationHolds"
    VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class TheoremCheck:
    outcome: TheoremOutcome
    condition_star: ConditionStarVerdict
    ssd: SubmatrixVerdict | None = None


def check_theorem_suff(S: StoichMatrix, budget: int | None = None,
                       max_cycle_len: int | None = None) -> TheoremCheck:
    """Condition (*) holds  =>  S is SSD. A VIOLATION carries both verdicts."""
    star = check_condition_star(build_sr_graph(S), max_cycle_len)
    if not star.holds:
        return TheoremCheck(TheoremOutcome.CONDITION_STAR_FAILS, star)
    ssd = is_ssd(S, budget)
    outcome = TheoremOutcome.IMPLICATION_HOLDS if ssd.holds else TheoremOutcome.VIOLATION
    return TheoremCheck(outcome, star, ssd)


def check_corollary_sns2(S: StoichMatrix, budget: int | None = None) -> bool:
    """(all cycles are o-cycles) == (all square submatrices have signed determinant)."""
    graph_side = all(c.is_o_cycle for c in enumerate_cycles(build_sr_graph(S)))
    return graph_side == all_submatrices_signed_determinant(S, budget).holds


def _verdict_key(v: SubmatrixVerdict):
    return (v.holds, v.counterexample)


def _star_key(v: ConditionStarVerdict):
    bad_pair = None
    if v.bad_pair is not None:
        a, b = v.bad_pair
        bad_pair = (a.vertices, b.vertices,
                    tuple((c.endpoints, c.kind) for c in intersection_components(a, b)))
    return (v.holds, v.bad_e_cycle and v.bad_e_cycle.vertices, bad_pair, v.e_cycle_count)


def classification_signature(S: StoichMatrix, budget: int | None = None) -> dict:
    """Everything the analyses say about ``S`` that should survive column re-signing."""
    G = build_sr_graph(S)
    cycles = enumerate_cycles(G)
    return {
        "cycles": {c.vertices: (c.parity, c.stoich) for c in cycles},
        "star": _star_key(check_condition_star(G, cycles=cycles)),
        "ssd": _verdict_key(is_ssd(S, budget)),
        "signed": _verdict_key(all_submatrices_signed_determinant(S, budget)),
        "o_cycles": all(c.is_o_cycle for c in cycles),
    }


def random_signing(m: int, seed: int) -> tuple[int, ...]:
    rng = random.Random(seed)
    return tuple(rng.choice((1, -1)) for _ in range(m))


def check_resign_invariance(S: StoichMatrix, seed: int = 0, signs: Sequence[int] | None = None,
                            budget: int | None = None) -> bool:
    """Re-sign columns at random and compare the full classification before and after."""
    if signs is None:
        signs = random_signing(S.m, seed)
    return classification_signature(S, budget) == classification_signature(resign_columns(S, signs), budget)


def check_prodform_all(S: StoichMatrix, max_size: int = 4) -> tuple[int, int]:
    """Check the product formula on every term pair of every square submatrix.

    Returns ``(pairs_checked, failures)``.
    """
    checked = failures = 0
    for sel in iter_selectors(S.n, S.m):
        if sel.size > max_size:
            break
        terms = enumerate_term_subgraphs(S, sel)
        for a, b in combinations(terms, 2):
            checked += 1
            failures += not verify_prodform(a, b)
    return checked, failures


def check_cancellation_all(S: StoichMatrix, max_size: int = 4) -> tuple[int, int]:
    """Check T_a + T_b = 0 on every term pair meeting the single e-/s-cycle hypothesis.

    Returns ``(pairs_checked, failures)``.
    """
    checked = failures = 0
    for sel in iter_selectors(S.n, S.m):
        if sel.size > max_size:
            break
        terms = enumerate_term_subgraphs(S, sel)
        for a, b in combinations(terms, 2):
            if cancellation_applies(a, b):
                checked += 1
                failures += not verify_cancellation(a, b)
    return checked, failures


def check_term_sums(S: StoichMatrix, max_size: int = 4) -> tuple[int, int]:
    """Compare the sum of enumerated terms with the eliminated determinant."""
    checked = failures = 0
    for sel in iter_selectors(S.n, S.m):
        if sel.size > max_size:
            break
        checked += 1
        failures += term_sum(S, sel) != determinant(S.submatrix(sel.gamma, sel.delta))
    return checked, failures


@dataclass
class OracleSummary:
    seed: int
    instances: int = 0
    skipped: int = 0
    condition_star_holds: int = 0
    theorem_violations: int = 0
    corollary_failures: int = 0
    resign_failures: int = 0
    prodform_pairs: int = 0
    prodform_failures: int = 0
    cancellation_pairs: int = 0
    cancellation_failures: int = 0
    determinant_checks: int = 0
    determinant_failures: int = 0
    anomalies: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.theorem_violations or self.corollary_failures or self.resign_failures
                    or self.prodform_failures or self.cancellation_failures or self.determinant_failures)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["clean"] = self.clean
        return d


def run_oracle(seed: int = 1, count_4x4: int = 10_000, count_5x5: int = 1_000, density: float = 0.6,
               term_checks: int = 1_000, budget: int | None = None) -> OracleSummary:
    """Run every cross-check over a seeded random corpus.

    The theorem, corollary and re-signing checks run on ``count_4x4`` 4x4 and
    ``count_5x5`` 5x5 matrices; the term-level checks (product formula,
    cancellation, determinant) on the first ``term_checks`` 4x4 matrices.
    Instances over the budget are skipped and counted.
    """
    summary = OracleSummary(seed)
    corpora = [(4, count_4x4), (5, count_5x5)]
    for size, count in corpora:
        stream = random_matrices(GeneratorConfig(size, size, density=density, seed=seed))
        for idx in range(count):
            S = next(stream)
            summary.instances += 1
            tag = {"size": size, "index": idx, "seed": seed}
            try:
                thm = check_theorem_suff(S, budget)
                sns2 = check_corollary_sns2(S, budget)
                resign = check_resign_invariance(S, seed=seed * 1_000_003 + size * 100_000 + idx, budget=budget)
            except (BudgetExceededError, CycleEnumerationTruncated):
                summary.skipped += 1
                continue
            if thm.outcome is not TheoremOutcome.CONDITION_STAR_FAILS:
                summary.condition_star_holds += 1
            if thm.outcome is TheoremOutcome.VIOLATION:
                summary.theorem_violations += 1
                summary.anomalies.append({**tag, "check": "theorem", "matrix": S.to_text()})
            if not sns2:
                summary.corollary_failures += 1
                summary.anomalies.append({**tag, "check": "corollary", "matrix": S.to_text()})
            if not resign:
                summary.resign_failures += 1
                summary.anomalies.append({**tag, "check": "resign", "matrix": S.to_text()})
            if size == 4 and idx < term_checks:
                for name, fn in (("prodform", check_prodform_all), ("cancellation", check_cancellation_all),
                                 ("determinant", check_term_sums)):
                    n_checked, n_failed = fn(S)
                    key = "determinant_checks" if name == "determinant" else f"{name}_pairs"
                    setattr(summary, key, getattr(summary, key) + n_checked)
                    setattr(summary, f"{name}_failures", getattr(summary, f"{name}_failures") + n_failed)
                    if n_failed:
                        summary.anomalies.append({**tag, "check": name, "matrix": S.to_text()})
    return summary
