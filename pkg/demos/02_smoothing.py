"""Why the port stream is smoothed, shown on a crafted flip-flop voyage.

A single noisy fix can make the raw nearest-neighbor port jump to the wrong
lane for one step. The smoother emits the port of the longest run seen so
far and never flips on a tie, so one outlier cannot disturb the output, and
the earliness score (the fraction of the voyage for which the final answer
was already being given) shows the difference directly.
"""

from portcall import ModelParams, earliness, enrich_route, partition_routes, replay_route, train
from portcall.ingest import AisRecord


def record(ship, lat, lon, ts, arr_time, arr_port):
    return AisRecord(ship_id=ship, ship_type=70, speed_knots=12.0, lon_deg=lon,
                     lat_deg=lat, course_deg=0.0, heading_deg=None, timestamp=ts,
                     departure_port="SOUTH_CAPE", draught=None,
                     arrival_time=arr_time, arrival_port=arr_port)


def build(recs):
    routes = partition_routes(recs)
    for r in routes:
        enrich_route(r)
    return routes


def main() -> None:
    # Two shipping lanes heading north: one into ALPHA at lon 0, one into
    # BRAVO at lon 5.
    training = []
    for ship, port, lon in [("T1", "ALPHA", 0.0), ("T2", "BRAVO", 5.0)]:
        for k in range(5):
            training.append(record(ship, float(k), lon, k * 3600, 4 * 3600, port))
    train_routes = build(training)

    # An ALPHA-bound voyage whose second fix strays next to BRAVO's lane.
    fixes = [(0.0, 0.01), (1.0, 4.99), (2.0, 0.01), (3.0, 0.01), (4.0, 0.01)]
    query = build([record("Q1", lat, lon, k * 3600, 4 * 3600, "ALPHA")
                   for k, (lat, lon) in enumerate(fixes)])[0]

    for smoothing in (True, False):
        model = train(train_routes, ModelParams(smoothing_enabled=smoothing))
        preds = replay_route(model, query)
        label = "smoothing on " if smoothing else "smoothing off"
        emitted = [p.port for p in preds]
        raw = [p.raw_port for p in preds]
        print(f"{label}: raw={raw}")
        print(f"{label}: out={emitted}  earliness={earliness(preds, 'ALPHA')}")


if __name__ == "__main__":
    main()
