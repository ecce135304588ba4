"""The 2n+1 continuity regions and how queries fall into them.

Queries are labelled by ell = i + j where i and j count the distinct
obstacle-line projections of the start and goal configurations. Constructed
witnesses reach every label in {4, ..., 2n+4}; random queries almost surely
land in the top label because coincident projections have measure zero.
"""

import numpy as np

from paraplan import (
    InstanceSpec,
    classify,
    cp_count,
    generate_queries,
    stratum_witness,
    verify_region_census,
    witness_query,
)
from paraplan.configspace import Configuration

n = 3

print(f"n = {n} robots -> labels ell in 4..{2 * n + 4} ({2 * n + 1} regions)")
print()

print("constructed witnesses, one per stratum:")
for i in range(2, n + 3):
    C = stratum_witness(n, 2, i)
    print(f"  requested {i} distinct projections -> cp_count = {cp_count(C)}")
print()

census = verify_region_census(n, 2, spec=InstanceSpec(d=2, n=n, seed=4, count=60))
print("census over witnesses + a generated batch (label: count):")
for ell in sorted(census):
    print(f"  ell = {ell:2d}: {census[ell]}")
print()

generic = generate_queries(
    InstanceSpec(d=2, n=n, seed=8, count=50), families=("generic",)
)
top = sum(classify(P).ell == 2 * n + 4 for P in generic)
print(f"{top}/50 purely random queries land in the top region ell = {2 * n + 4}")
print()

P = witness_query(n, 2, 2, n + 2)
region = classify(P)
print(f"a mixed witness query classifies as i={region.i}, j={region.j}, ell={region.ell}")

# tiny perturbations can only split coincident projections, never merge distinct ones
rng = np.random.default_rng(0)
C = stratum_witness(n, 2, 2)
before = cp_count(C)
after = [
    cp_count(Configuration(C.obstacles, C.robots + 1e-12 * rng.normal(size=C.robots.shape)))
    for _ in range(200)
]
print(f"200 perturbations of a stratum-2 witness: cp_count stays >= {before} "
      f"(observed min {min(after)})")
