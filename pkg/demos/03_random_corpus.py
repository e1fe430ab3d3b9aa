"""Cross-check the graph conditions against brute-force matrix checks.

Random seeded matrices go through every check: condition (*) against SSD,
o-cycles against signed determinants, the sign of term products, cancellation,
re-signing columns, and term sums against the determinant. A clean run has
no anomalies.
"""
# %%
import json
import time

from srgraph.oracle import GeneratorConfig, random_matrix, run_oracle

# %% One generated matrix
print(random_matrix(GeneratorConfig(rows=4, cols=4, density=0.6, seed=1)))

# %% A reduced run; the CLI runs the full corpus with `srgraph analyze --oracle`
t0 = time.perf_counter()
summary = run_oracle(seed=1, count_4x4=1000, count_5x5=100, term_checks=200)
print(json.dumps(summary.to_dict(), indent=2))
print(f"{time.perf_counter() - t0:.1f}s, clean={summary.clean}")
