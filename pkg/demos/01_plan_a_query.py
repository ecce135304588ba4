"""Plan a single query end to end and plot the trajectory.

Two robots trade places in the plane while avoiding each other and two
obstacles whose positions are part of the query. The planner outputs an
exact path: we evaluate it on a grid, check separations, and draw it.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from paraplan import (
    Configuration,
    QueryPair,
    min_separation_exact,
    plan,
    sample,
)

obstacles = [[0.0, 0.0], [1.0, 0.0]]
start = Configuration(obstacles, [[-0.5, 0.6], [1.5, -0.4]])
goal = Configuration(obstacles, [[1.5, -0.4], [-0.5, 0.6]])  # swap the robots
query = QueryPair(start, goal)

path = plan(query)
print(f"region label: i={path.region.i} j={path.region.j} ell={path.region.ell}")
print(f"breakpoints:  {[round(b, 4) for b in path.breakpoints]}")

dist, t_min, pair = min_separation_exact(path)
print(f"closest approach: {dist:.4f} between {pair[0]} and {pair[1]} at t={t_min:.4f}")

points = sample(path, 400)
trace = np.array([config.points() for _, config in points])

fig, ax = plt.subplots(figsize=(7, 5))
for robot in range(2):
    xy = trace[:, 2 + robot, :]
    ax.plot(xy[:, 0], xy[:, 1], label=f"robot {robot + 1}")
    ax.plot(*start.robots[robot], "o", color=f"C{robot}")
    ax.plot(*goal.robots[robot], "x", color=f"C{robot}", markersize=10)
ax.plot(trace[0, :2, 0], trace[0, :2, 1], "ks", label="obstacles")
ax.legend()
ax.set_aspect("equal")
ax.set_title("Swap query: o marks starts, x marks goals")
fig.savefig("demo_plan_a_query.png", dpi=120)
print("wrote demo_plan_a_query.png")
