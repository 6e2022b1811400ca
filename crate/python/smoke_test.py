"""Smoke test for the bsssp Python module.

Build and install the module first, for example:

    pip install --no-build-isolation ./crates/python
    python3 python/smoke_test.py
"""

import json
import math

import bsssp


def main():
    path = bsssp.Graph(3, [(0, 1, 1.0), (1, 2, 2.0)])
    assert (path.n, path.m) == (3, 2)
    assert bsssp.dijkstra(path, 0) == [0.0, 1.0, 3.0]
    assert bsssp.solve(path, 0).distances == [0.0, 1.0, 3.0]

    again = bsssp.Graph.parse(path.to_dimacs())
    assert again.edges() == path.edges()

    split = bsssp.Graph(4, [(0, 1, 0.5)])
    assert bsssp.solve(split, 0).distances == [0.0, 0.5, math.inf, math.inf]

    g = bsssp.generate("gnm", 500, 1500, weights="exp:1000000", seed=3)
    expected = bsssp.dijkstra(g, 7)
    for construction in ("simple", "improved"):
        for transform in ("cycle3", "none", "cap:4"):
            res = bsssp.solve(g, 7, construction=construction, transform=transform, seed=11, check=True)
            assert res.distances == expected, (construction, transform)
            assert res.violations == []
    res = bsssp.solve(g, 7, r=[7, 10, 20, 30], transform="none")
    assert res.distances == expected

    res = bsssp.solve(g, 7, metered=True, seed=5)
    report = res.report()
    assert report["extract_mins"] == report["size_r"] == res.extract_mins
    assert report["comparisons"] > 0 and report["additions"] > 0
    assert res.checksum == bsssp.checksum(expected) == bsssp.solve(g, 7, seed=5).checksum
    json.dumps(report)

    t = bsssp.transform_graph(g, "cycle3")
    assert t.graph.max_degree() <= 3
    assert t.lift(bsssp.dijkstra(t.graph, t.reps(7)[0])) == expected
    assert all(t.origin(x) == 7 for x in t.reps(7))

    st = bsssp.stats(g, k=4, seed=1)
    assert st["k"] == 4 and st["size_r"] == st["size_r1"] + st["size_r2"]
    assert bsssp.stats(g, k=1)["sum_ball"] == 0

    for bad in (
        lambda: bsssp.Graph(2, [(0, 5, 1.0)]),
        lambda: bsssp.Graph(2, [(0, 1, -1.0)]),
        lambda: bsssp.generate("grid", 7),
        lambda: bsssp.solve(g, 7, construction="fancy"),
        lambda: bsssp.solve(g, 7, r=[1, 2]),
    ):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
