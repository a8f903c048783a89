"""Comparing the exact nearest-neighbor structures on one dataset.

All three answer identically (that is checked first); the only question is
speed. Ball and KD trees prune most of the data per query once the point
count is large, while the brute scan touches everything every time.
"""

import time

import numpy as np

from portcall import BallTree, KDTree, SyntheticConfig, brute_nearest, synth_records
from portcall.embedding import FeatureWeights, embed_arrays


def main() -> None:
    cfg = SyntheticConfig(n_ports=8, routes_per_port=60, seed=3)
    records = synth_records(cfg)
    w = FeatureWeights()
    pts = embed_arrays(np.array([r.lat_deg for r in records]),
                       np.array([r.lon_deg for r in records]),
                       np.array([r.course_deg or 0.0 for r in records]), w)
    print(f"{len(pts)} embedded points")

    rng = np.random.default_rng(0)
    queries = pts[rng.integers(0, len(pts), size=300)] + rng.normal(
        0.0, 0.01, size=(300, 5))

    ball = BallTree(pts, leaf_size=32)
    kd = KDTree(pts, leaf_size=32)
    print(f"ball tree: {ball.node_count} nodes, {ball.leaf_count} leaves, "
          f"containment slack {ball.containment_slack():.2e}")

    # agreement gate before any timing
    for q in queries[:50]:
        want = brute_nearest(pts, q)
        assert ball.nearest(q) == want
        assert kd.nearest(q) == want
    print("agreement: ball == kd == brute on 50 spot checks")

    for name, f in [("balltree", ball.nearest), ("kdtree", kd.nearest),
                    ("brute", lambda q: brute_nearest(pts, q))]:
        t0 = time.perf_counter()
        for q in queries:
            f(q)
        per_query = (time.perf_counter() - t0) / len(queries)
        print(f"{name:<9} {per_query * 1e6:8.1f} us/query")

    # how much work a query actually does
    visited = []
    for q in queries[:100]:
        _, _, stats = ball.nearest_with_stats(q)
        visited.append(stats.leaves_visited)
    print(f"ball tree visits {np.mean(visited):.1f} of {ball.leaf_count} "
          f"leaves on average")


if __name__ == "__main__":
    main()
