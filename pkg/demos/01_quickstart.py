"""Quickstart: generate a fleet, train a model, predict a live stream.

Walks the full pipeline in one sitting. Everything is seeded, so the
numbers printed here are the numbers you will get.
"""

from portcall import (
    ModelParams,
    RouteState,
    SyntheticConfig,
    classify_point,
    enrich_route,
    partition_routes,
    replay_route,
    score_dataset,
    synth_records,
    train,
)
from portcall.ingest import format_timestamp
from portcall.tuner import split_routes


def main() -> None:
    # 1. A small synthetic world: 4 ports, 15 voyages into each.
    cfg = SyntheticConfig(n_ports=4, routes_per_port=15, seed=7)
    records = synth_records(cfg)
    routes = partition_routes(records)
    for route in routes:
        enrich_route(route)
    print(f"dataset: {len(records)} AIS points in {len(routes)} routes")

    # 2. Hold out 20% of the routes, train on the rest.
    train_routes, holdout = split_routes(routes, 0.8, seed=0)
    model = train(train_routes, ModelParams())
    print(f"model: {model.n_points} points indexed across ports {model.ports}")

    # 3. Stream one held-out route point by point, as live AIS would arrive.
    route = holdout[0]
    state = RouteState()
    print(f"\nreplaying {route.route_id} (truth: {route.arrival_port})")
    for point in route.points[:8]:
        pred = classify_point(model, state, point)
        when = format_timestamp(point.record.timestamp)
        eta = format_timestamp(pred.arrival)
        print(f"  {when}  port={pred.port:<8} raw={pred.raw_port:<8} eta={eta}")

    # 4. Score the whole holdout.
    scores = score_dataset(model, holdout, workers=1)
    print(f"\nholdout: avg earliness {scores.avg_earliness:.4f}, "
          f"arrival MAE {scores.mae_minutes:.1f} min")

    # 5. The replay helper does the same streaming loop in one call.
    predictions = replay_route(model, route)
    correct = sum(p.port == route.arrival_port for p in predictions)
    print(f"route check: {correct}/{len(predictions)} predictions correct")


if __name__ == "__main__":
    main()
