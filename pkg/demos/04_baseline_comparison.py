"""Why a naive planner is not enough: straight lines versus the real planner.

On queries where robots trade places along the obstacle line, interpolating
every entity linearly makes some pair meet head-on. The planner lifts robots
to distinct heights before translating them, so it never collides.
"""

from paraplan import (
    min_separation_exact,
    plan,
    straight_line_plan,
    swap_colinear_queries,
)

queries = swap_colinear_queries(n=3, d=2, count=50, seed=12)

baseline_collisions = 0
planner_collisions = 0
worst_planner_sep = float("inf")

for P in queries:
    base_sep = min_separation_exact(straight_line_plan(P))[0]
    plan_sep = min_separation_exact(plan(P))[0]
    baseline_collisions += base_sep <= 1e-9
    planner_collisions += plan_sep <= 1e-9
    worst_planner_sep = min(worst_planner_sep, plan_sep)

print(f"swap queries:              {len(queries)}")
print(f"straight-line collisions:  {baseline_collisions}")
print(f"planner collisions:        {planner_collisions}")
print(f"planner closest approach:  {worst_planner_sep:.4f}")
print()

P = queries[0]
dist, t, pair = min_separation_exact(straight_line_plan(P))
print(f"example: straight-line moves {pair[0]} and {pair[1]} to distance "
      f"{dist:.1e} at t={t:.3f}")
dist, t, pair = min_separation_exact(plan(P))
print(f"         the planner keeps everything >= {dist:.4f} apart "
      f"(closest: {pair[0]}-{pair[1]} at t={t:.3f})")
