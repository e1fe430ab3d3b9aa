import re
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import mixed_3x4, o_cycle_3x3, cancelling_3x3, matrices
from srgraph import (
    Cycle,
    PathKind,
    StoichMatrix,
    build_sr_graph,
    check_condition_star,
    cycle_stoich,
    disconnecting_partition,
    enumerate_cycles,
    has_s_to_r_intersection,
    intersection_components,
    parity,
    resign_columns,
    subgraph_sign,
    to_dot,
)
from srgraph.graph import CycleEnumerationTruncated, Edge, r_vertex, s_vertex


def M(rows):
    return StoichMatrix.from_rows(rows)


def cyc(S, *labels):
    """Build a cycle from labels like 'S1', 'R2' or species/reaction names."""
    verts = []
    for lab in labels:
        if lab in S.row_labels or (not S.row_labels and lab.startswith("S")):
            verts.append(s_vertex(S.row_labels.index(lab) if S.row_labels else int(lab[1:]) - 1))
        else:
            verts.append(r_vertex(S.col_labels.index(lab) if S.col_labels else int(lab[1:]) - 1))
    return Cycle.from_vertices(S, verts)


def test_build_mixed_3x4():
    S = mixed_3x4()
    G = build_sr_graph(S)
    assert len(G.edges) == 9
    assert (len(G.s_vertices), len(G.r_vertices)) == (3, 4)
    assert G.edge(0, 0).sign == -1 and G.edge(0, 0).value == 1   # -a
    assert G.edge(0, 1).sign == 1 and G.edge(0, 1).value == 2    # b
    assert sum(e.sign < 0 for e in G.edges) == 4


def test_build_zero_and_counterexample(counter_matrix):
    assert build_sr_graph(StoichMatrix.zeros(2, 3)).edges == ()
    G = build_sr_graph(counter_matrix)
    assert len(G.edges) == 11
    S = counter_matrix
    degree = {S.row_label(i): sum(1 for e in G.edges if e.s == i) for i in range(S.n)}
    assert degree == {"A": 3, "B": 3, "C": 2, "D": 1, "E": 1, "F": 1}


@given(matrices(5, 5))
def test_edge_count_equals_nonzeros(S):
    assert len(build_sr_graph(S).edges) == S.nonzero_count()


def test_cycles_of_small_examples():
    for S in (o_cycle_3x3(), cancelling_3x3()):
        (c,) = enumerate_cycles(build_sr_graph(S))
        assert c.length == 6
    assert enumerate_cycles(build_sr_graph(StoichMatrix.zeros(3, 3))) == []
    tree = M([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert enumerate_cycles(build_sr_graph(tree)) == []


@settings(max_examples=80)
@given(matrices(4, 5))
def test_cycles_match_networkx(S):
    mine = enumerate_cycles(build_sr_graph(S))
    assert not mine.truncated
    assert {c.edge_keys for c in mine} == oracles.nx_cycles(S.rows)
    assert len(mine) == len({c.edge_keys for c in mine})


@settings(max_examples=80)
@given(matrices(4, 4))
def test_cycle_structure(S):
    for c in enumerate_cycles(build_sr_graph(S)):
        assert c.length % 2 == 0 and c.length >= 4
        assert len(set(c.vertices)) == c.length
        assert all(a.side != b.side for a, b in zip(c.vertices, c.vertices[1:] + c.vertices[:1]))
        assert c.parity == oracles.cycle_parity_from_edges(S.rows, c.edge_keys)
        if c.is_e_cycle:
            assert c.sign == (-1) ** (c.length // 2)
        else:
            assert c.sign == (-1) ** (c.length // 2 - 1)


def test_max_len_truncation():
    K33 = M([[1] * 3] * 3)
    full = enumerate_cycles(build_sr_graph(K33))
    assert not full.truncated and {c.length for c in full} == {4, 6}
    short = enumerate_cycles(build_sr_graph(K33), max_len=4)
    assert short.truncated
    assert short == [c for c in full if c.length == 4]
    assert not enumerate_cycles(build_sr_graph(K33), max_len=6).truncated
    with pytest.raises(CycleEnumerationTruncated):
        check_condition_star(build_sr_graph(K33), max_len=4)


def test_subgraph_sign():
    (c2,) = enumerate_cycles(build_sr_graph(o_cycle_3x3()))
    assert sorted(e.sign for e in c2.edges) == [-1, -1, 1, 1, 1, 1]
    assert subgraph_sign(c2.edges) == 1
    (c3,) = enumerate_cycles(build_sr_graph(cancelling_3x3()))
    assert subgraph_sign(c3.edges) == -1
    assert subgraph_sign([Edge(0, 0, 1, Fraction(1))]) == 1
    with pytest.raises(ValueError):
        subgraph_sign([])


def test_parity():
    (c3,) = enumerate_cycles(build_sr_graph(cancelling_3x3()))
    assert parity(c3.edges) == 1 and c3.is_e_cycle
    (c2,) = enumerate_cycles(build_sr_graph(o_cycle_3x3()))
    assert parity(c2.edges) == -1 and c2.is_o_cycle
    two = [Edge(0, 0, 1, Fraction(1)), Edge(1, 0, 1, Fraction(1))]
    assert parity(two) == -1
    with pytest.raises(ValueError):
        parity(two[:1])


def test_cycle_stoich_examples(counter_matrix):
    for a, b, c in [(1, 2, 3), (2, 5, 7)]:
        (c3,) = enumerate_cycles(build_sr_graph(cancelling_3x3(a, b, c)))
        h1, h2 = disconnecting_partition(c3)
        assert sorted(e.value for e in h1) == sorted([a, b, c])  # acb vs bac
        assert cycle_stoich(c3) == 0 and c3.is_s_cycle
    c4 = cyc(counter_matrix, "A", "R2", "B", "R3")
    assert cycle_stoich(c4) == 0
    # values 1, 2, 1, 1 around a 4-cycle
    S = M([[1, 2], [1, 1]])
    (c,) = enumerate_cycles(build_sr_graph(S))
    assert cycle_stoich(c) == 1


@settings(max_examples=50)
@given(matrices(4, 4), st.integers(0, 20), st.booleans())
def test_stoich_rotation_reversal_invariant(S, shift, reverse):
    for c in enumerate_cycles(build_sr_graph(S)):
        edges = list(c.edges)
        k = shift % len(edges)
        edges = edges[k:] + edges[:k]
        if reverse:
            edges.reverse()
        assert cycle_stoich(edges) == c.stoich


def test_cycle_stoich_malformed():
    e = [Edge(0, 0, 1, Fraction(1)), Edge(1, 1, 1, Fraction(1)), Edge(0, 1, 1, Fraction(1)),
         Edge(1, 0, 1, Fraction(1))]
    with pytest.raises(ValueError, match="adjacent"):
        cycle_stoich(e)
    with pytest.raises(ValueError):
        cycle_stoich(e[:2])


def _is_matching(edges):
    verts = [v for e in edges for v in e.vertices]
    return len(verts) == len(set(verts))


def test_disconnecting_partition():
    for S in (o_cycle_3x3(), cancelling_3x3(), M([[1, 1], [1, 1]])):
        for c in enumerate_cycles(build_sr_graph(S)):
            h1, h2 = disconnecting_partition(c)
            assert len(h1) == len(h2) == c.length // 2
            assert set(h1) | set(h2) == set(c.edges) and not set(h1) & set(h2)
            assert _is_matching(h1) and _is_matching(h2)
    (c,) = enumerate_cycles(build_sr_graph(M([[1, 1], [1, 1]])))
    h1, h2 = disconnecting_partition(c)
    assert {e.key for e in h1} in ({(0, 0), (1, 1)}, {(0, 1), (1, 0)})


def test_intersection_counterexample(counter_matrix):
    S = counter_matrix
    c1 = cyc(S, "A", "R2", "B", "R3")
    c2 = cyc(S, "A", "R2", "C", "R1")
    (comp,) = intersection_components(c1, c2)
    assert comp.kind is PathKind.S_TO_R
    assert [e.key for e in comp.edges] == [(S.row_labels.index("A"), 1)]
    assert has_s_to_r_intersection(c1, c2)


def test_intersection_disjoint_and_identical():
    S = M([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]])
    c1, c2 = enumerate_cycles(build_sr_graph(S))
    assert intersection_components(c1, c2) == []
    assert not has_s_to_r_intersection(c1, c2)
    with pytest.raises(ValueError):
        intersection_components(c1, c1)


def test_intersection_s_to_s_path():
    # two 4-cycles on five vertices sharing the path S1-R1-S2
    S = M([[1, 1, 1], [1, 1, 1]])
    c1 = cyc(S, "S1", "R1", "S2", "R2")
    c2 = cyc(S, "S1", "R1", "S2", "R3")
    (comp,) = intersection_components(c1, c2)
    assert comp.kind is PathKind.S_TO_S
    assert comp.endpoints == (s_vertex(0), s_vertex(1))
    assert comp.length == 2
    assert not has_s_to_r_intersection(c1, c2)


def test_intersection_mixed_components():
    # shared edges: path S1-R1-S2 (S-to-S) and the single edge S3-R3 (S-to-R)
    S = M([[1] * 4] * 3)
    c1 = cyc(S, "S1", "R1", "S2", "R2", "S3", "R3")
    c2 = cyc(S, "S1", "R1", "S2", "R3", "S3", "R4")
    comps = intersection_components(c1, c2)
    assert sorted(c.kind.value for c in comps) == ["StoR", "StoS"]
    assert not has_s_to_r_intersection(c1, c2)


def test_condition_star_counterexample(counter_matrix):
    S = counter_matrix
    v = check_condition_star(build_sr_graph(S), exhaustive=True)
    assert not v.holds and v.bad_e_cycle is None
    a, b = v.bad_pair
    (comp,) = intersection_components(a, b)
    assert comp.kind is PathKind.S_TO_R and comp.length == 1
    a_r2 = (cyc(S, "A", "R2", "B", "R3"), cyc(S, "A", "R2", "C", "R1"))
    assert a_r2 in v.s_to_r_pairs or a_r2[::-1] in v.s_to_r_pairs
    assert len(v.s_to_r_pairs) == 4
    quick = check_condition_star(build_sr_graph(S))
    assert quick.bad_pair == v.bad_pair and quick.s_to_r_pairs is None


def test_condition_star_small_examples():
    v3 = check_condition_star(build_sr_graph(cancelling_3x3()))
    assert v3.holds and v3.e_cycle_count == 1 and v3.cycle_count == 1
    v2 = check_condition_star(build_sr_graph(o_cycle_3x3()))
    assert v2.holds and v2.e_cycle_count == 0


def test_condition_star_bad_e_cycle():
    S = M([[1, 2], [1, 1]])
    v = check_condition_star(build_sr_graph(S))
    assert not v.holds and v.bad_e_cycle.stoich == 1


def test_condition_star_disjoint_pair_not_counted():
    block = M([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]])
    v = check_condition_star(build_sr_graph(block), exhaustive=True)
    assert v.holds and v.e_cycle_count == 2 and v.edge_disjoint_e_pairs == 1


@settings(max_examples=60)
@given(matrices(4, 4), st.randoms())
def test_resigning_preserves_cycles(S, rnd):
    signs = [rnd.choice((1, -1)) for _ in range(S.m)]
    before = {c.vertices: (c.parity, c.stoich) for c in enumerate_cycles(build_sr_graph(S))}
    after = {c.vertices: (c.parity, c.stoich) for c in enumerate_cycles(build_sr_graph(resign_columns(S, signs)))}
    assert before == after


def test_dot_mixed_3x4():
    dot = to_dot(build_sr_graph(mixed_3x4()))
    assert dot.startswith("graph ") and dot.rstrip().endswith("}")
    assert len(re.findall(r"shape=circle", dot)) == 3
    assert len(re.findall(r"shape=box", dot)) == 4
    assert len(re.findall(r" -- ", dot)) == 9
    assert len(re.findall(r"style=dashed", dot)) == 4


def test_dot_edgeless():
    dot = to_dot(build_sr_graph(StoichMatrix.zeros(2, 2)))
    assert " -- " not in dot and dot.count("shape=") == 4


def test_dot_highlights(counter_matrix):
    v = check_condition_star(build_sr_graph(counter_matrix))
    dot = to_dot(build_sr_graph(counter_matrix), v.bad_pair)
    shared = [line for line in dot.splitlines() if 'color="red:blue"' in line]
    assert len(shared) == 1 and '"S:A" -- "R:R1"' in shared[0]
    assert dot.count('color="red"') == 3 and dot.count('color="blue"') == 3
