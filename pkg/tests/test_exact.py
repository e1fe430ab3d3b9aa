from fractions import Fraction

import pytest
from hypothesis import given, settings

import oracles
from conftest import o_cycle_3x3, cancelling_3x3, matrices, square_matrices
from srgraph import (
    StoichMatrix,
    SubmatrixSelector,
    TermTag,
    all_submatrices_signed_determinant,
    classify_terms,
    determinant,
    has_signed_determinant,
    is_sign_nonsingular,
    is_sign_singular,
    is_ssd,
    resign_columns,
)
from srgraph.exact import BudgetExceededError, iter_selectors, iter_term_assignments, submatrix_count, term_sum


def M(rows):
    return StoichMatrix.from_rows(rows)


def test_determinant_examples():
    # Leibniz expansion with every symbol 1: ade + bcf = 2
    assert oracles.leibniz_det(o_cycle_3x3().rows) == 2
    assert determinant(o_cycle_3x3()) == 2
    for a, b, c in [(1, 2, 3), (5, 1, 7), (Fraction(1, 2), 3, 4)]:
        assert determinant(cancelling_3x3(a, b, c)) == 0
    assert determinant(M([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 1


def test_determinant_non_square():
    with pytest.raises(ValueError):
        determinant(M([[1, 2]]))


def test_classify_o_cycle():
    cls = classify_terms(o_cycle_3x3())
    assert cls.tag is TermTag.ALL_POSITIVE
    # witnesses: rows -> columns for the ade and bcf matchings
    assert set(cls.witness) == {(0, 2, 1), (1, 0, 2)}


def test_classify_cancelling_and_zero():
    assert classify_terms(cancelling_3x3()).tag is TermTag.MIXED_SIGNS
    assert classify_terms(M([[0, 0], [0, 0]])).tag is TermTag.NO_NONZERO_TERMS


def test_witnesses_reproduce_tag():
    S = cancelling_3x3()
    sel = SubmatrixSelector.full(S)
    pos, neg = classify_terms(S, sel).witness
    terms = dict((tuple(p), v) for p, v in oracles.leibniz_terms(S.rows))
    assert terms[pos] > 0 and terms[neg] < 0


def test_sign_nonsingular_examples():
    assert is_sign_nonsingular(M([[1, 0], [0, 1]]))
    assert is_sign_nonsingular(o_cycle_3x3())
    assert not is_sign_nonsingular(M([[1, 2], [1, 1]]))


def test_sign_singular_examples():
    assert is_sign_singular(M([[0, 0], [0, 0]]))
    assert is_sign_singular(M([[1, 1], [0, 0]]))
    assert not is_sign_singular(cancelling_3x3())
    assert determinant(cancelling_3x3()) == 0


def test_signed_determinant_examples():
    assert has_signed_determinant(o_cycle_3x3())
    assert not has_signed_determinant(cancelling_3x3())
    assert has_signed_determinant(M([[-5]]))


def test_selector_validation():
    with pytest.raises(ValueError):
        SubmatrixSelector((0, 1), (0,))
    with pytest.raises(ValueError):
        SubmatrixSelector((1, 0), (0, 1))
    with pytest.raises(ValueError):
        SubmatrixSelector((), ())
    with pytest.raises(IndexError):
        classify_terms(o_cycle_3x3(), SubmatrixSelector((0, 3), (0, 1)))


def test_ssd_examples(counter_matrix):
    assert is_ssd(counter_matrix).holds
    v = is_ssd(M([[1, 2], [1, 1]]))
    assert not v.holds
    assert v.counterexample == SubmatrixSelector((0, 1), (0, 1))
    assert is_ssd(M([[3, 0, 0], [0, -2, 0], [0, 0, 1]])).holds


def test_signed_det_examples():
    assert all_submatrices_signed_determinant(o_cycle_3x3()).holds
    assert not all_submatrices_signed_determinant(cancelling_3x3()).holds
    assert all_submatrices_signed_determinant(M([[1, -2, 3, 0, 5]])).holds


def test_selector_order_smallest_first():
    sels = list(iter_selectors(2, 3))
    assert [s.size for s in sels] == [1] * 6 + [2] * 3
    assert sels == sorted(sels, key=lambda s: (s.size, s.gamma, s.delta))


def test_budget_guard():
    S = StoichMatrix.zeros(8, 8)
    assert submatrix_count(8, 8) == 12869
    with pytest.raises(BudgetExceededError, match="budget"):
        is_ssd(S, budget=1000)
    with pytest.raises(BudgetExceededError):
        all_submatrices_signed_determinant(S, budget=1000)
    assert is_ssd(S, budget=20000).holds


@given(square_matrices(max_size=5))
def test_determinant_matches_leibniz(S):
    assert determinant(S) == oracles.leibniz_det(S.rows)


@given(square_matrices(max_size=5))
def test_term_enumeration_matches_leibniz(S):
    mine = sorted(alpha for alpha, _ in iter_term_assignments(S))
    ref = sorted(tuple(p) for p, _ in oracles.leibniz_terms(S.rows))
    assert mine == ref
    assert term_sum(S) == determinant(S)


@given(square_matrices(max_size=5))
def test_classification_matches_brute_force(S):
    assert classify_terms(S).tag.value == oracles.brute_tag(S.rows)


@given(square_matrices(max_size=4))
def test_classification_invariants(S):
    tag = classify_terms(S).tag
    if tag is TermTag.NO_NONZERO_TERMS:
        assert determinant(S) == 0
    if is_sign_nonsingular(S):
        assert determinant(S) != 0


@settings(max_examples=60)
@given(matrices())
def test_ssd_and_signed_match_brute_force(S):
    assert is_ssd(S).holds == oracles.brute_ssd(S.rows)
    assert all_submatrices_signed_determinant(S).holds == oracles.brute_signed(S.rows)


@settings(max_examples=60)
@given(matrices())
def test_signed_determinant_implies_ssd(S):
    if all_submatrices_signed_determinant(S).holds:
        assert is_ssd(S).holds


@settings(max_examples=60)
@given(matrices())
def test_counterexample_is_first_failure(S):
    v = is_ssd(S)
    if v.holds:
        return
    ce = v.counterexample
    sub = S.submatrix(ce.gamma, ce.delta)
    assert classify_terms(sub).tag is TermTag.MIXED_SIGNS and determinant(sub) != 0
    for sel in iter_selectors(S.n, S.m):
        if sel == ce:
            break
        assert oracles.brute_tag([[S[i, j] for j in sel.delta] for i in sel.gamma]) != "MixedSigns" \
            or determinant(S.submatrix(sel.gamma, sel.delta)) == 0


@settings(max_examples=60)
@given(matrices())
def test_resigning_preserves_verdicts(S):
    signs = [(-1) ** (j * j + j // 2) for j in range(S.m)]
    T = resign_columns(S, signs)
    assert is_ssd(S) == is_ssd(T)
    assert all_submatrices_signed_determinant(S) == all_submatrices_signed_determinant(T)
    for sel in iter_selectors(S.n, S.m):
        a, b = classify_terms(S, sel).tag, classify_terms(T, sel).tag
        flip = 1
        for j in sel.delta:
            flip *= signs[j]
        if flip == -1:
            swap = {TermTag.ALL_POSITIVE: TermTag.ALL_NEGATIVE, TermTag.ALL_NEGATIVE: TermTag.ALL_POSITIVE}
            a = swap.get(a, a)
        assert a is b
