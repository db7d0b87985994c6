import logging

import numpy as np

from roleseer.alignment import align_chain, align_pair


def rand_space(rng, players, dims=8):
    return {p: rng.normal(size=dims) for p in players}


PLAYERS = [f"p{i}" for i in range(12)]


class TestAlignPair:
    def test_identical_spaces_fixed_point(self):
        rng = np.random.default_rng(0)
        e = rand_space(rng, PLAYERS)
        rel, aligned = align_pair(e, dict(e))
        assert np.linalg.norm(rel.translation) < 1e-6
        assert rel.residual_after < 1e-9
        for p in PLAYERS:
            assert np.allclose(aligned[p], e[p])

    def test_single_anchor_closed_form(self):
        rng = np.random.default_rng(1)
        e_t = {"a": rng.normal(size=4)}
        e_t1 = {"a": rng.normal(size=4), "b": rng.normal(size=4)}
        rel, aligned = align_pair(e_t, e_t1)
        assert np.allclose(rel.translation, e_t1["a"] - e_t["a"])
        assert rel.residual_after < 1e-12
        assert np.allclose(aligned["a"], e_t["a"])

    def test_constant_offset_recovered(self):
        rng = np.random.default_rng(2)
        e_t = rand_space(rng, PLAYERS)
        c = rng.normal(size=8) * 3.0
        e_t1 = {p: v + c for p, v in e_t.items()}
        rel, aligned = align_pair(e_t, e_t1)
        assert np.linalg.norm(rel.translation - c) < 1e-3
        assert rel.residual_after <= rel.residual_before + 1e-9
        for p in PLAYERS:
            assert np.linalg.norm(aligned[p] - e_t[p]) < 1e-3

    def test_zero_anchors_identity_with_warning(self, caplog):
        rng = np.random.default_rng(3)
        e_t = rand_space(rng, ["a", "b"])
        e_t1 = rand_space(rng, ["c", "d"])
        with caplog.at_level(logging.WARNING):
            rel, aligned = align_pair(e_t, e_t1)
        assert "no anchors" in caplog.text
        assert not rel.anchors
        assert np.all(rel.translation == 0)
        for p in ("c", "d"):
            assert np.array_equal(aligned[p], e_t1[p])

    def test_never_worsens_on_random_pairs(self):
        rng = np.random.default_rng(4)
        for trial in range(25):
            shared = PLAYERS[: int(rng.integers(1, len(PLAYERS)))]
            e_t = rand_space(rng, shared + ["only_t"])
            e_t1 = rand_space(rng, shared + ["only_t1"])
            rel, _ = align_pair(e_t, e_t1, seed=trial)
            assert rel.residual_after <= rel.residual_before + 1e-9

    def test_translation_preserves_pairwise_distances(self):
        rng = np.random.default_rng(5)
        e_t = rand_space(rng, PLAYERS)
        e_t1 = rand_space(rng, PLAYERS)
        _, aligned = align_pair(e_t, e_t1)
        for i, p in enumerate(PLAYERS):
            for q in PLAYERS[i + 1 :]:
                before = np.linalg.norm(e_t1[p] - e_t1[q])
                after = np.linalg.norm(aligned[p] - aligned[q])
                assert abs(before - after) < 1e-9

    def test_deterministic_under_seed(self):
        rng = np.random.default_rng(6)
        e_t = rand_space(rng, PLAYERS)
        e_t1 = rand_space(rng, PLAYERS)
        r1, a1 = align_pair(e_t, e_t1, seed=9)
        r2, a2 = align_pair(e_t, e_t1, seed=9)
        assert np.array_equal(r1.translation, r2.translation)
        for p in PLAYERS:
            assert np.array_equal(a1[p], a2[p])


class TestAlignChain:
    def test_single_timestamp_unchanged(self):
        rng = np.random.default_rng(7)
        e = rand_space(rng, PLAYERS)
        aligned, relations, breaks = align_chain([e])
        assert relations == [] and breaks == []
        assert aligned[0] is e

    def test_three_identical_spaces(self):
        rng = np.random.default_rng(8)
        e = rand_space(rng, PLAYERS)
        aligned, relations, breaks = align_chain([dict(e), dict(e), dict(e)])
        assert breaks == []
        for rel in relations:
            assert np.linalg.norm(rel.translation) < 1e-6

    def test_cumulative_offsets_recovered(self):
        rng = np.random.default_rng(9)
        e0 = rand_space(rng, PLAYERS)
        c1 = rng.normal(size=8)
        c2 = rng.normal(size=8)
        e1 = {p: v + c1 for p, v in e0.items()}
        e2 = {p: v + c1 + c2 for p, v in e0.items()}
        aligned, relations, breaks = align_chain([e0, e1, e2])
        assert breaks == []
        assert np.linalg.norm(relations[0].translation - c1) < 1e-3
        # the second hop aligns against the already-shifted frame, so its
        # translation carries the cumulative offset
        assert np.linalg.norm(relations[1].translation - (c1 + c2)) < 2e-3
        for p in PLAYERS:
            assert np.linalg.norm(aligned[2][p] - e0[p]) < 2e-3

    def test_anchor_gap_reported(self):
        rng = np.random.default_rng(10)
        spaces = [rand_space(rng, ["a", "b"]), rand_space(rng, ["c", "d"])]
        _, relations, breaks = align_chain(spaces)
        assert breaks == [1]
        assert not relations[0].anchors

    def test_empty(self):
        assert align_chain([]) == ([], [], [])
