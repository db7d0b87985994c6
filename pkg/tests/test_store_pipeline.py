import json

import numpy as np
import pytest

from conftest import FAST_PARAMS
from roleseer import pipeline, synth
from roleseer.store import StageError, Store, canonical_json, config_hash


class TestStore:
    def test_canonical_json_stable(self):
        a = canonical_json({"b": 1, "a": [1, 2]})
        b = canonical_json({"a": [1, 2], "b": 1})
        assert a == b == '{"a":[1,2],"b":1}'

    def test_config_hash_sensitivity(self):
        assert config_hash({"x": 1}) != config_hash({"x": 2})
        assert len(config_hash({"x": 1})) == 16

    def test_missing_stage_error_names_stage(self, tmp_path):
        store = Store(tmp_path)
        with pytest.raises(StageError, match="ingest"):
            store.require_stage("ingest")

    def test_matrix_round_trip(self, tmp_path):
        store = Store(tmp_path)
        mat = np.arange(6, dtype=np.float64).reshape(2, 3)
        store.write_matrix("m/x.bin", mat, ["a", "b"])
        got, players = store.read_matrix("m/x.bin")
        assert players == ["a", "b"]
        assert np.allclose(got, mat)

    def test_read_json_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            Store(tmp_path).read_json("nope.json")

    def test_mark_and_read_stage(self, tmp_path):
        store = Store(tmp_path)
        store.mark_stage("ingest", "abc", {"n_timestamps": 3})
        assert store.stage_hash("ingest") == "abc"
        store.require_stage("ingest")  # no raise


class TestPipelineStages:
    def test_metrics_requires_ingest(self, tmp_path):
        with pytest.raises(StageError, match="ingest"):
            pipeline.run_metrics(Store(tmp_path))

    def test_roles_requires_align(self, tmp_path):
        store = Store(tmp_path)
        store.mark_stage("ingest", "x", {"n_timestamps": 0})
        with pytest.raises(StageError, match="align"):
            pipeline.run_roles(store)

    def test_rerun_is_cache_hit(self, synth_store):
        store = synth_store.store
        target = store.root / "timestamps" / "0.json"
        before = target.stat().st_mtime_ns
        pipeline.run_ingest(store, synth_store.events_path)
        pipeline.run_metrics(store, seed=0)
        assert target.stat().st_mtime_ns == before

    def test_artifacts_present(self, synth_store):
        store = synth_store.store
        n = store.manifest()["stages"]["ingest"]["n_timestamps"]
        assert n == 6  # 1.5 days of events at 6-hour windows
        for t in range(n):
            assert store.has(f"timestamps/{t}.json")
            assert store.has(f"metrics/{t}.json")
            assert store.has(f"embeddings/struc2vec/{t}.bin")
            assert store.has(f"aligned/struc2vec/{t}.bin")
        assert store.has("projection.json")
        assert store.has("flows.json")
        assert store.has("assignments.json")
        assert store.has("overview.json")

    def test_alignment_artifacts_never_worsen(self, synth_store):
        store = synth_store.store
        n = store.manifest()["stages"]["ingest"]["n_timestamps"]
        for t in range(1, n):
            rel = store.read_json(f"alignment/struc2vec/{t-1}_{t}.json")
            assert rel["residual_after"] <= rel["residual_before"] + 1e-9
            assert rel["anchor_count"] > 0

    def test_assignment_keys_cover_projection(self, synth_store):
        store = synth_store.store
        points = store.read_json("projection.json")
        assignments = store.read_json("assignments.json")
        for p in points:
            assert f"{p['player']}@{p['timestamp']}" in assignments

    def test_flow_ratios_valid(self, synth_store):
        flows = synth_store.store.read_json("flows.json")
        assert flows
        for f in flows:
            assert 0.0 < f["ratio"] <= 1.0
            assert f["kind"] in ("interconversion", "transition")
            assert f["players"]

    def test_overview_counts_match_graphs(self, synth_store):
        store = synth_store.store
        overview = store.read_json("overview.json")
        for row in overview["timestamps"]:
            g = store.read_json(f"timestamps/{row['index']}.json")
            assert row["node_count"] == len(g["nodes"])
            assert row["edge_count"] == len(g["edges"])
            assert 0.0 <= row["transition_pct"] <= 100.0

    def test_embedding_dims_consistent(self, synth_store):
        store = synth_store.store
        meta = store.read_json("embeddings/struc2vec/meta.json")
        assert meta["params"]["dims"] == FAST_PARAMS.dims
        mat, players = store.read_matrix("embeddings/struc2vec/0.bin")
        assert mat.shape == (len(players), FAST_PARAMS.dims)


class TestRunSynth:
    def test_writes_scenario(self, tmp_path):
        events_path, truth_path = pipeline.run_synth(tmp_path, players=20, days=0.75, seed=1)
        assert json.loads(open(truth_path).read())["players"]
        assert open(events_path).readline()
