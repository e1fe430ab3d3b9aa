"""A network that is SSD although its SR graph fails condition (*).

Three reversible reactions share the species A and B; two of them also share C.
All edge values are 1, so every cycle is an s-cycle, but several pairs of
e-cycles meet along a single S-R edge. The condition is sufficient, not
necessary: the matrix is still SSD.
"""
# %%
from pathlib import Path

from srgraph import (
    analyze,
    build_sr_graph,
    check_condition_star,
    enumerate_cycles,
    intersection_components,
    is_ssd,
    parse_network,
    stoichiometric_matrix,
    to_dot,
)

here = Path(__file__).parent
net = parse_network((here / "data" / "counterexample.rxn").read_text())
S = stoichiometric_matrix(net)
print(net.to_text())
print(S)

# %% Cycles of the SR graph
G = build_sr_graph(S)
for c in enumerate_cycles(G):
    kind = "e" if c.is_e_cycle else "o"
    print(f"{kind}-cycle {c.describe(S):<22} stoich {c.stoich}")

# %% Every pair of e-cycles with S-to-R intersection
v = check_condition_star(G, exhaustive=True)
for a, b in v.s_to_r_pairs:
    shared = [p.endpoints for p in intersection_components(a, b)]
    print(f"{a.describe(S)} & {b.describe(S)} share {[[G.label(x) for x in e] for e in shared]}")
print("edge-disjoint e-cycle pairs:", v.edge_disjoint_e_pairs)

# %% Yet the matrix is SSD
print("SSD:", is_ssd(S).holds)
report = analyze(S, input_kind="network")
print(report.to_text())

# %% DOT output with the witness pair in two colors
out = here / "counterexample.dot"
out.write_text(to_dot(G, highlights=v.bad_pair))
print("wrote", out)
