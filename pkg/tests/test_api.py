import concurrent.futures

import jsonschema
import pytest
from fastapi.testclient import TestClient

from roleseer.api.app import create_app
from roleseer.store import Store


@pytest.fixture(scope="module")
def client(synth_store):
    return TestClient(create_app(str(synth_store.store.root)))


@pytest.fixture(scope="module")
def schemas(client):
    return client.get("/schemas").json()


def validate(payload, schema):
    jsonschema.validate(payload, schema)


class TestEndpoints:
    def test_overview(self, client, schemas):
        r = client.get("/overview")
        assert r.status_code == 200
        validate(r.json(), schemas["overview"])

    def test_snapshots(self, client, schemas):
        r = client.get("/snapshots")
        assert r.status_code == 200
        body = r.json()
        validate(body, schemas["snapshots"])
        assert len(body["snapshots"]) == 2
        for col in body["snapshots"]:
            assert col["roles"]

    def test_role_detail(self, client, schemas):
        first = client.get("/snapshots").json()["snapshots"][0]["roles"][0]
        r = client.get(f"/snapshots/0/roles/{first['cluster_id']}")
        assert r.status_code == 200
        body = r.json()
        validate(body, schemas["role_detail"])
        assert body["size"] == len(body["members"])
        for k in ("cash", "grade", "intimacy_total", "combat_score"):
            box = body["ingame_stats"][k]
            assert box["min"] <= box["q1"] <= box["median"] <= box["q3"] <= box["max"]

    def test_role_detail_by_color(self, client):
        first = client.get("/snapshots").json()["snapshots"][0]["roles"][0]
        r = client.get(f"/snapshots/0/roles/{first['color_id']}")
        assert r.status_code == 200

    def test_unknown_role_404(self, client):
        r = client.get("/snapshots/0/roles/never")
        assert r.status_code == 404
        assert "detail" in r.json()

    def test_flow_detail_by_index(self, client, schemas):
        r = client.get("/flows/0")
        assert r.status_code == 200
        body = r.json()
        validate(body, schemas["flow_detail"])
        assert body["flow"]["index"] == 0
        assert body["source_points"]

    def test_flow_detail_by_pair(self, client):
        flows = client.get("/snapshots").json()["flows"]
        trans = next(f for f in flows if f["kind"] == "transition")
        r = client.get(
            "/flows", params={"from": trans["source"], "to": trans["target"]}
        )
        assert r.status_code == 200
        assert r.json()["flow"]["source"] == trans["source"]

    def test_unknown_flow_404(self, client):
        assert client.get("/flows/9999").status_code == 404
        assert client.get("/flows", params={"from": "x", "to": "y"}).status_code == 404

    def test_lasso(self, client, schemas):
        flows = client.get("/snapshots").json()["flows"]
        idx = next(i for i, f in enumerate(flows) if f["player_count"] >= 2)
        detail = client.get(f"/flows/{idx}").json()
        ids = sorted({p["player"] for p in detail["source_points"]})[:3]
        r = client.post(f"/flows/{idx}/lasso", json={"point_ids": ids})
        assert r.status_code == 200
        body = r.json()
        validate(body, schemas["lasso"])
        for p in body["points"]:
            assert sum(p["coxcomb"].values()) > 0

    def test_lasso_empty_region(self, client):
        r = client.post("/flows/0/lasso", json={"point_ids": []})
        assert r.status_code == 200
        assert r.json()["points"] == []

    def test_lasso_malformed_400(self, client):
        r = client.post("/flows/0/lasso", json={"points": "oops"})
        assert r.status_code == 422

    def test_storyline(self, client, schemas, synth_store):
        player = synth_store.scenario.communities[0][0]  # a hub, certainly active
        r = client.get(f"/players/{player}/storyline", params={"snapshot": 0})
        assert r.status_code == 200
        body = r.json()
        validate(body, schemas["storyline"])
        assert body["rounds"]
        round_ids = {r["round_id"] for r in body["rounds"]}
        for slot in body["slots"]:
            assert slot["round_id"] in round_ids

    def test_storyline_unknown_player(self, client):
        assert client.get("/players/ghost/storyline").status_code == 404

    def test_storyline_unknown_snapshot(self, client):
        r = client.get("/players/p0000/storyline", params={"snapshot": 99})
        assert r.status_code == 404

    def test_player_metrics(self, client, schemas):
        r = client.get("/players/p0000/metrics")
        assert r.status_code == 200
        body = r.json()
        validate(body, schemas["player_metrics"])
        assert body["metrics"]
        for row in body["metrics"].values():
            assert set(row) == {
                "degree",
                "pagerank",
                "betweenness",
                "leverage_centrality",
                "within_module_degree",
                "closeness",
            }

    def test_player_metrics_unknown(self, client):
        assert client.get("/players/ghost/metrics").status_code == 404


class TestFlowMassBalance:
    def test_outgoing_mass_equals_surviving_membership(self, client, synth_store):
        store = synth_store.store
        flows = [f for f in store.read_json("flows.json") if f["kind"] == "transition"]
        roles0 = store.read_json("roles/0.json")["clusters"]
        roles1 = store.read_json("roles/1.json")["clusters"]
        present_next = {p for c in roles1 for p, _ in c["members"]}

        def snapshot_players(cluster, snap_idx):
            # a player's snapshot role is held at the last timestamp they appear
            last_t = {}
            for c in (roles0 if snap_idx == 0 else roles1):
                for p, t in c["members"]:
                    if t > last_t.get(p, -1):
                        last_t[p] = t
            return {p for p, t in cluster["members"] if last_t.get(p) == t}

        for cluster in roles0:
            holders = snapshot_players(cluster, 0)
            out_mass = sum(
                len(f["players"]) for f in flows if f["source"] == cluster["cluster_id"]
            )
            assert out_mass == len(holders & present_next)

    def test_incoming_mass_equals_arriving_membership(self, client, synth_store):
        store = synth_store.store
        flows = [f for f in store.read_json("flows.json") if f["kind"] == "transition"]
        roles0 = store.read_json("roles/0.json")["clusters"]
        present_prev = {p for c in roles0 for p, _ in c["members"]}
        roles1 = store.read_json("roles/1.json")["clusters"]
        last_t = {}
        for c in roles1:
            for p, t in c["members"]:
                if t > last_t.get(p, -1):
                    last_t[p] = t
        for cluster in roles1:
            arrivers = {
                p for p, t in cluster["members"] if last_t.get(p) == t and p in present_prev
            }
            in_mass = sum(
                len(f["players"]) for f in flows if f["target"] == cluster["cluster_id"]
            )
            assert in_mass == len(arrivers)


class TestServiceBehavior:
    def test_empty_store_schema_valid_404s(self, tmp_path):
        empty = TestClient(create_app(str(tmp_path)))
        for path in ("/overview", "/snapshots", "/flows/0", "/players/x/metrics"):
            r = empty.get(path)
            assert r.status_code == 404
            assert "detail" in r.json()

    def test_concurrent_burst_identical_bodies(self, client):
        def fetch(_):
            return client.get("/snapshots").content

        with concurrent.futures.ThreadPoolExecutor(max_workers=10) as pool:
            bodies = list(pool.map(fetch, range(50)))
        assert len(set(bodies)) == 1

    def test_lasso_cache_stable(self, client):
        detail = client.get("/flows/0").json()
        ids = sorted({p["player"] for p in detail["source_points"]})[:2]
        r1 = client.post("/flows/0/lasso", json={"point_ids": ids}).content
        r2 = client.post("/flows/0/lasso", json={"point_ids": ids}).content
        assert r1 == r2
