"""Two 3x3 matrices, each with a single cycle in its SR graph.

The first has an o-cycle, so every square submatrix has a signed determinant.
The second has an e-cycle whose two alternating edge products agree; the
determinant terms cancel and the matrix is singular but still SSD.
"""
# %%
from pathlib import Path

from srgraph import (
    all_submatrices_signed_determinant,
    build_sr_graph,
    check_condition_star,
    classify_terms,
    determinant,
    enumerate_cycles,
    is_ssd,
    parse_matrix,
    StoichMatrix,
)
from srgraph.terms import enumerate_term_subgraphs, union_cycles

# %% An o-cycle: both determinant terms have the same sign
A = StoichMatrix.from_rows([[1, 1, 0], [-1, 0, 1], [0, -1, 1]])
print(A)
(cycle,) = enumerate_cycles(build_sr_graph(A))
print("cycle:", cycle.describe(A), "parity", cycle.parity)
print("terms:", classify_terms(A).tag.value, "det", determinant(A))
print("every submatrix signed:", all_submatrices_signed_determinant(A).holds)

# %% An e-cycle that is an s-cycle: the two terms cancel
B = parse_matrix((Path(__file__).parent / "data" / "cancelling.mat").read_text())
print(B)
G = build_sr_graph(B)
(cycle,) = enumerate_cycles(G)
print("cycle:", cycle.describe(B), "parity", cycle.parity, "stoich", cycle.stoich)
t1, t2 = enumerate_term_subgraphs(B)
print("terms:", t1.term_value, t2.term_value, "-> det", determinant(B))

# the union of the two term subgraphs is exactly that cycle
print("union:", [c.describe(B) for c in union_cycles(t1, t2)])
print("condition (*):", check_condition_star(G).holds, " SSD:", is_ssd(B).holds)

# %% Scaling one entry breaks the s-cycle, and with it SSD
C = StoichMatrix.from_rows([[-1, 2, 0], [-3, 0, 2], [0, -3, 5]])
v = check_condition_star(build_sr_graph(C))
print("bad e-cycle:", v.bad_e_cycle.describe(C), "stoich", v.bad_e_cycle.stoich)
print("SSD:", is_ssd(C).holds, "counterexample", is_ssd(C).counterexample)
