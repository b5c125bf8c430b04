"""Candidate enumeration, SVM ranking, Prophet and WV baselines, writers."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

import helpers
import oracles
from helpers import cls, ontology_text, prop, rel, subclass, typed
from relgap.candidates import (
    NO_RESULTS_MARKER,
    PROPHET_THRESHOLD,
    CandidatePair,
    ProphetScore,
    enumerate_candidates,
    prophet_baseline,
    prophet_score,
    rank_candidates,
    write_baseline_csv,
    write_candidates_csv,
    wv_baseline,
)
from relgap.classifier import Scaler, SvmModel
from relgap.errors import InputError
from relgap.features import FeatureVector, extract_features
from relgap.graphs import build_class_graph, build_instance_graph
from relgap.ontology import build_ontology, parse_ntriples

T = helpers.T


def build(text: str):
    return build_ontology(parse_ntriples(text))


def identity_model(weights, bias):
    """Model with an identity scaler, so margins read directly off raw features."""
    return SvmModel(
        weights=np.array(weights, dtype=np.float64),
        bias=float(bias),
        scaler=Scaler(mean=np.zeros(3), std=np.ones(3)),
        c=1.0,
        seed=0,
        n_iter=0,
        objective=0.0,
    )


class TestEnumerateCandidates:
    def four_class_ontology(self):
        return build(ontology_text(cls("A"), cls("B"), cls("C"), cls("D"), prop("p", "A", "B")))

    def test_excludes_connected_pairs(self):
        onto = self.four_class_ontology()
        graph = build_class_graph(onto)
        pairs = enumerate_candidates(onto, graph)
        assert (T + "A", T + "B") not in pairs
        assert len(pairs) == 5

    def test_sorted_lexicographically(self):
        onto = self.four_class_ontology()
        pairs = enumerate_candidates(onto, build_class_graph(onto))
        assert pairs == sorted(pairs)
        assert all(x < y for x, y in pairs)

    def test_direct_subclass_pairs_excluded_by_default(self):
        onto = build(ontology_text(cls("A"), cls("B"), cls("C"), subclass("B", "A")))
        graph = build_class_graph(onto)
        assert (T + "A", T + "B") not in enumerate_candidates(onto, graph)
        assert (T + "A", T + "B") in enumerate_candidates(onto, graph, exclude_subclass=False)

    def test_subclass_exclusion_covers_both_directions(self):
        onto = build(ontology_text(cls("A"), cls("B"), subclass("A", "B")))
        assert enumerate_candidates(onto, build_class_graph(onto)) == []

    def test_partition_of_all_pairs(self):
        onto = build(
            ontology_text(
                cls("A"), cls("B"), cls("C"), cls("D"), cls("E"),
                prop("p", "A", "C"), prop("q", "D", "B"), subclass("E", "A"),
            )
        )
        graph = build_class_graph(onto)
        nodes = sorted(graph.nodes)
        all_pairs = set(itertools.combinations(nodes, 2))
        edges = {tuple(sorted(e)) for e in [(T + "A", T + "C"), (T + "B", T + "D")]}
        sub = {tuple(sorted((T + "E", T + "A")))}
        assert set(enumerate_candidates(onto, graph)) == all_pairs - edges - sub

    def test_max_pairs_guard(self):
        onto = self.four_class_ontology()
        graph = build_class_graph(onto)
        with pytest.raises(InputError, match="raise --max-pairs"):
            enumerate_candidates(onto, graph, max_pairs=5)
        assert len(enumerate_candidates(onto, graph, max_pairs=6)) == 5

    def test_guard_counts_all_pairs_not_candidates(self):
        # 4 classes make 6 pairs; only 5 survive, but the guard fires on 6.
        onto = self.four_class_ontology()
        graph = build_class_graph(onto)
        with pytest.raises(InputError):
            enumerate_candidates(onto, graph, max_pairs=5)


class TestRankCandidates:
    def fixture(self):
        text = ontology_text(
            cls("A"), cls("B"), cls("C"), cls("Hub"),
            prop("p", "A", "Hub"), prop("q", "B", "Hub"), prop("r", "C", "Hub"),
        )
        onto = build(text)
        graph = build_class_graph(onto)
        store = helpers.store(alpha=[1.0, 0.0], beta=[0.0, 1.0])
        labels = {c: onto.display_label(c) for c in onto.classes}
        return onto, graph, store, labels

    def test_keeps_only_positive_margins(self):
        onto, graph, store, labels = self.fixture()
        pairs = enumerate_candidates(onto, graph)
        # margin = cn - 0.5: pairs sharing Hub score 0.5, others -0.5.
        model = identity_model([1.0, 0.0, 0.0], -0.5)
        ranked = rank_candidates(model, graph, store, labels, pairs)
        names = {(p.class_x, p.class_y) for p in ranked}
        assert names == {(T + "A", T + "B"), (T + "A", T + "C"), (T + "B", T + "C")}
        assert all(p.positive and p.margin == 0.5 for p in ranked)

    def test_tied_margins_sort_lexicographically(self):
        onto, graph, store, labels = self.fixture()
        model = identity_model([1.0, 0.0, 0.0], -0.5)
        ranked = rank_candidates(model, graph, store, labels, enumerate_candidates(onto, graph))
        assert [(p.class_x, p.class_y) for p in ranked] == [
            (T + "A", T + "B"),
            (T + "A", T + "C"),
            (T + "B", T + "C"),
        ]

    def test_sorted_by_margin_descending(self):
        text = ontology_text(
            cls("A"), cls("B"), cls("C"), cls("Hub"), cls("Hub2"),
            prop("p", "A", "Hub"), prop("q", "B", "Hub"), prop("r", "C", "Hub"),
            prop("u", "A", "Hub2"), prop("v", "B", "Hub2"),
        )
        onto = build(text)
        graph = build_class_graph(onto)
        store = helpers.store(alpha=[1.0, 0.0])
        labels = {c: onto.display_label(c) for c in onto.classes}
        # margin = cn + 0.5: A-B shares two hubs, A-C and B-C share one.
        model = identity_model([1.0, 0.0, 0.0], 0.5)
        ranked = rank_candidates(model, graph, store, labels, enumerate_candidates(onto, graph))
        margins = [p.margin for p in ranked]
        assert margins == sorted(margins, reverse=True)
        assert len(ranked) == 5
        assert (ranked[0].class_x, ranked[0].class_y, ranked[0].margin) == (T + "A", T + "B", 2.5)

    def test_features_match_scalar_extraction(self):
        onto, graph, store, labels = self.fixture()
        model = identity_model([1.0, 0.0, 0.0], 1.0)
        ranked = rank_candidates(model, graph, store, labels, enumerate_candidates(onto, graph))
        for p in ranked:
            assert p.features == extract_features(graph, store, labels, p.class_x, p.class_y)

    def test_missing_sim_scored_with_raw_zero(self):
        onto, graph, store, labels = self.fixture()
        # No label token is in this vocabulary, so every pair misses glove_sim;
        # weights touch only that feature, leaving margin = bias.
        empty_store = helpers.store(unrelated=[1.0, 0.0])
        model = identity_model([0.0, 0.0, 1.0], 0.25)
        ranked = rank_candidates(model, graph, empty_store, labels, enumerate_candidates(onto, graph))
        assert len(ranked) == 3
        assert all(p.features.glove_sim is None and p.margin == 0.25 for p in ranked)

    def test_empty_pair_list(self):
        onto, graph, store, labels = self.fixture()
        assert rank_candidates(identity_model([1, 0, 0], 0.0), graph, store, labels, []) == []

    def test_no_positive_margins_gives_empty_ranking(self):
        onto, graph, store, labels = self.fixture()
        model = identity_model([1.0, 0.0, 0.0], -100.0)
        assert rank_candidates(model, graph, store, labels, enumerate_candidates(onto, graph)) == []


def hub_sharing_ontology(shared: int, a: str = "A", b: str = "B") -> str:
    """a1 typed A and b1 typed B, both related to `shared` hub individuals."""
    chunks = [cls(a), cls(b), cls("H"), prop("p"), typed("a1", a), typed("b1", b)]
    for k in range(shared):
        chunks.append(typed(f"h{k:02d}", "H"))
        chunks.append(rel("a1", "p", f"h{k:02d}"))
        chunks.append(rel("b1", "p", f"h{k:02d}"))
    return ontology_text(*chunks)


class TestProphetScore:
    def test_single_pair_counts_shared_hubs(self):
        onto = build(hub_sharing_ontology(3))
        ig = build_instance_graph(onto)
        scored = prophet_score(ig, onto, T + "A", T + "B")
        assert scored == ProphetScore(T + "A", T + "B", 3.0, 1)

    def test_no_instances_gives_none(self):
        onto = build(ontology_text(cls("A"), cls("B"), typed("a1", "A")))
        ig = build_instance_graph(onto)
        assert prophet_score(ig, onto, T + "A", T + "B") is None

    def test_shared_instance_excluded_from_pairs(self):
        # i is typed both A and B: ordered cross pairs are |Ix||Iy| minus the
        # overlap, here 2*2 - 1 = 3.
        text = ontology_text(
            cls("A"), cls("B"), cls("H"), prop("p"),
            typed("i", "A"), typed("i", "B"),
            typed("a1", "A"), typed("b1", "B"), typed("h1", "H"),
            rel("a1", "p", "h1"), rel("b1", "p", "h1"),
        )
        onto = build(text)
        scored = prophet_score(build_instance_graph(onto), onto, T + "A", T + "B")
        assert scored.instance_pairs == 3
        assert scored.score == pytest.approx(1.0 / 3.0)

    def test_symmetric_in_class_order(self):
        onto = build(hub_sharing_ontology(4))
        ig = build_instance_graph(onto)
        ab = prophet_score(ig, onto, T + "A", T + "B")
        ba = prophet_score(ig, onto, T + "B", T + "A")
        assert ab.score == ba.score
        assert ab.instance_pairs == ba.instance_pairs

    def test_matches_naive_oracle_on_random_ontologies(self):
        rng = random.Random(61)
        for _ in range(6):
            n = rng.randint(4, 10)
            chunks = [cls("A"), cls("B"), prop("p")]
            names = [f"i{k}" for k in range(n)]
            for name in names:
                if rng.random() < 0.6:
                    chunks.append(typed(name, "A"))
                if rng.random() < 0.6:
                    chunks.append(typed(name, "B"))
            chunks.append(typed(names[0], "A"))
            chunks.append(typed(names[1], "B"))
            for i, j in itertools.combinations(names, 2):
                if rng.random() < 0.4:
                    chunks.append(rel(i, "p", j))
            onto = build(ontology_text(*chunks))
            ig = build_instance_graph(onto)
            by_class = onto.instances_by_class()
            ix = sorted(by_class.get(T + "A", set()))
            iy = sorted(by_class.get(T + "B", set()))
            edges = helpers.edge_list(ig)
            total, pairs = oracles.naive_prophet_total(edges, ix, iy)
            scored = prophet_score(ig, onto, T + "A", T + "B")
            if pairs == 0:
                assert scored is None
            else:
                assert scored.instance_pairs == pairs
                assert scored.score == pytest.approx(total / pairs, rel=1e-12)


class TestProphetBaseline:
    def test_score_equal_to_threshold_excluded(self):
        onto = build(hub_sharing_ontology(10))
        ig = build_instance_graph(onto)
        pairs = [(T + "A", T + "B")]
        assert prophet_baseline(ig, onto, pairs) == []

    def test_score_above_threshold_included(self):
        onto = build(hub_sharing_ontology(11))
        ig = build_instance_graph(onto)
        out = prophet_baseline(ig, onto, [(T + "A", T + "B")])
        assert [s.score for s in out] == [11.0]

    def test_default_threshold_value(self):
        assert PROPHET_THRESHOLD == 10.0

    def test_custom_threshold(self):
        onto = build(hub_sharing_ontology(3))
        ig = build_instance_graph(onto)
        pairs = [(T + "A", T + "B")]
        assert prophet_baseline(ig, onto, pairs, threshold=2.5)[0].score == 3.0
        assert prophet_baseline(ig, onto, pairs, threshold=3.0) == []

    def test_sorted_by_score_then_name(self):
        text = ontology_text(
            hub_sharing_ontology(12).rstrip("\n"),
            cls("C"), cls("D"),
            typed("c1", "C"), typed("d1", "D"),
            rel("c1", "p", "h00"), rel("d1", "p", "h00"),
            rel("c1", "p", "h01"), rel("d1", "p", "h01"),
        )
        onto = build(text)
        ig = build_instance_graph(onto)
        pairs = [(T + "A", T + "B"), (T + "C", T + "D")]
        out = prophet_baseline(ig, onto, pairs, threshold=1.0)
        assert [(s.class_x, s.class_y, s.score) for s in out] == [
            (T + "A", T + "B", 12.0),
            (T + "C", T + "D", 2.0),
        ]

    def test_undefined_scores_dropped(self):
        onto = build(ontology_text(cls("A"), cls("B"), typed("a1", "A")))
        ig = build_instance_graph(onto)
        assert prophet_baseline(ig, onto, [(T + "A", T + "B")], threshold=0.0) == []


class TestWvBaseline:
    def fixture(self):
        store = helpers.store(alpha=[1.0, 0.0], beta=[1.0, 1.0], gamma=[0.0, 1.0])
        labels = {"A": "alpha", "B": "beta", "C": "gamma", "Q": "qzx"}
        return store, labels

    def test_strictly_above_threshold(self):
        store, labels = self.fixture()
        # cos(alpha, beta) = 0.7071...; an equal threshold excludes the pair.
        sim = 0.7071067811865475
        assert wv_baseline(store, labels, [("A", "B")], threshold=sim) == []
        kept = wv_baseline(store, labels, [("A", "B")], threshold=0.707)
        assert kept == [("A", "B", pytest.approx(sim, abs=1e-12))]

    def test_unembeddable_pair_skipped_with_warning(self, caplog):
        store, labels = self.fixture()
        with caplog.at_level("WARNING"):
            out = wv_baseline(store, labels, [("A", "Q"), ("A", "B")], threshold=0.0)
        assert [(x, y) for x, y, _ in out] == [("A", "B")]
        assert any("skipping pair" in m for m in caplog.messages)

    def test_sorted_by_similarity_then_name(self):
        store, labels = self.fixture()
        pairs = [("A", "C"), ("A", "B"), ("B", "C")]
        out = wv_baseline(store, labels, pairs, threshold=-1.0)
        sims = [s for _, _, s in out]
        assert sims == sorted(sims, reverse=True)
        assert out[0][:2] == ("A", "B")

    @pytest.mark.parametrize("threshold", [1.5, -1.01, float("nan")])
    def test_threshold_outside_unit_interval_rejected(self, threshold):
        store, labels = self.fixture()
        with pytest.raises(InputError, match="threshold"):
            wv_baseline(store, labels, [("A", "B")], threshold=threshold)

    def test_threshold_minus_one_keeps_everything_embeddable(self):
        store, labels = self.fixture()
        pairs = [("A", "B"), ("A", "C"), ("B", "C")]
        assert len(wv_baseline(store, labels, pairs, threshold=-1.0)) == 3


class TestWriters:
    def test_candidates_csv_exact(self, tmp_path):
        path = tmp_path / "out.csv"
        ranked = [
            CandidatePair("http://t/A", "http://t/B", FeatureVector(2, 1.5, 0.5), 0.75, True),
            CandidatePair("http://t/A", "http://t/C", FeatureVector(1, 1.0, None), 0.25, True),
        ]
        write_candidates_csv(path, ranked)
        assert path.read_text() == (
            "rank,class_x,class_y,cn,aa,glove_sim,margin\n"
            "1,http://t/A,http://t/B,2,1.5,0.5,0.75\n"
            "2,http://t/A,http://t/C,1,1.0,,0.25\n"
        )

    def test_candidates_csv_empty_is_header_only(self, tmp_path):
        path = tmp_path / "out.csv"
        write_candidates_csv(path, [])
        assert path.read_text() == "rank,class_x,class_y,cn,aa,glove_sim,margin\n"

    def test_baseline_csv_exact(self, tmp_path):
        path = tmp_path / "out.csv"
        write_baseline_csv(path, [("http://t/A", "http://t/B", 12.0)])
        assert path.read_text() == (
            "rank,class_x,class_y,score\n"
            "1,http://t/A,http://t/B,12.0\n"
        )

    def test_baseline_csv_empty_writes_marker(self, tmp_path):
        path = tmp_path / "out.csv"
        write_baseline_csv(path, [])
        assert path.read_text() == "rank,class_x,class_y,score\n" + NO_RESULTS_MARKER + "\n"
