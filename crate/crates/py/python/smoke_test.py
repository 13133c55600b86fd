"""Smoke test for the `optima` extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`,
then run `python crates/py/python/smoke_test.py` from the repository root.
"""

import json
import math
import pathlib
import sys

import optima

ROOT = pathlib.Path(__file__).resolve().parents[3]


def main() -> int:
    region = optima.Region.load(str(ROOT / "data/regions/sample12.json"))
    assert len(region) == 12, region

    plan = optima.build_plan(region, 2, seed=7)
    reference = (ROOT / "data/regions/sample12.plan.json").read_text()
    assert plan.to_json() == reference, "plan differs from the committed reference"
    assert optima.Plan.from_json(reference) == plan
    assert sorted(w for c in plan.clusters for w in c.tour) == plan.warehouses
    assert sum(plan.allocation_integral.values()) == sum(region.populations)

    # Hand-checkable pieces.
    d = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    assert optima.service_cost([1], d) == 2.0
    warehouses, cost, edges = optima.select_warehouses([[0.0, 42.5], [42.5, 0.0]])
    assert len(warehouses) == 1 and cost == 42.5 and len(edges) == 1
    frac, integral = optima.allocate_resources(3, [(0, 1), (1, 2)], [0, 2], [6, 10, 8])
    assert frac == [11.0, 0.0, 13.0] and integral == [11, 0, 13]
    labels, centroids, _, inertia = optima.kmeans([(0, 0), (0, 1), (9, 9), (9, 10)], 2, seed=3)
    assert labels[0] == labels[1] != labels[2] == labels[3] and math.isclose(inertia, 1.0)

    gr17 = optima.TspInstance.load(str(ROOT / "data/tsplib/gr17.tsp"))
    order, cost = gr17.solve("local_search")
    assert sorted(order) == list(range(17)) and 2085 <= cost <= 2085 * 1.03, cost
    _, approx = gr17.solve("two_approx")
    assert approx <= 4170, approx

    square = [[0, 1, math.sqrt(2), 1], [1, 0, 1, math.sqrt(2)], [math.sqrt(2), 1, 0, 1], [1, math.sqrt(2), 1, 0]]
    order, cost = optima.solve_tsp(square)
    assert order[0] == 0 and math.isclose(cost, 4.0)

    try:
        optima.build_plan(region, 99)
    except ValueError as e:
        assert "k_trucks" in str(e)
    else:
        raise AssertionError("expected ValueError for too many trucks")

    print(json.dumps({"warehouses": plan.warehouses, "service_cost_m": plan.service_cost_m,
                      "tours_m": [c.tour_cost_m for c in plan.clusters]}))
    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
