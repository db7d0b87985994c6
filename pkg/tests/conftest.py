from types import SimpleNamespace

import pytest

from roleseer import pipeline, synth
from roleseer.embedding import EmbeddingParams
from roleseer.ingest import TimestampGraph
from roleseer.store import Store

FAST_PARAMS = EmbeddingParams(dims=32, walks_per_node=5, walk_length=40, window=5, epochs=3)


def make_graph(edges, extra_nodes=(), index=0):
    nodes = set(extra_nodes)
    emap = {}
    for a, b in edges:
        nodes.update((a, b))
        emap[(a, b) if a < b else (b, a)] = 1.0
    return TimestampGraph(index, (0, 21600), nodes, emap)


@pytest.fixture(scope="session")
def synth_store(tmp_path_factory):
    """Small fully-pipelined synthetic store (2 snapshots, 40 players)."""
    root = tmp_path_factory.mktemp("synthstore")
    scenario = synth.default_scenario(players=40, days=1.5, seed=3, community_size=20)
    events_path, truth_path = synth.write_scenario(scenario, root)
    store = Store(root / "store")
    pipeline.run_ingest(store, events_path)
    pipeline.run_metrics(store, seed=0)
    pipeline.run_embed(store, "struc2vec", FAST_PARAMS, seed=1)
    pipeline.run_align(store, "struc2vec", seed=1)
    pipeline.run_roles(store, "struc2vec", seed=1)
    return SimpleNamespace(
        store=store, events_path=events_path, truth_path=truth_path, scenario=scenario
    )
