"""Shared fixtures: canonical synthetic dataset and crafted mini-datasets."""

import pytest

from portcall import SyntheticConfig, enrich_route, partition_routes, synth_records


@pytest.fixture(scope="session")
def canonical_records():
    """The seed-fixed 5-port, 40-routes-per-port dataset."""
    return synth_records(SyntheticConfig())


@pytest.fixture(scope="session")
def canonical_routes(canonical_records):
    routes = partition_routes(canonical_records, labeled=True)
    for route in routes:
        enrich_route(route)
    return routes
