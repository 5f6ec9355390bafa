import os

import pytest

import propseg

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")

ZOO = "Alice and Bob went to the Zoo .".split()


def test_jaccard_and_order():
    assert propseg.jaccard([0, 1, 2], [1, 2, 3]) == pytest.approx(0.5)
    assert propseg.canonical_order([[3, 4], [0, 1], [3, 4]]) == [[0, 1], [3, 4]]


def test_match_sets_prefers_full_cardinality():
    left = [list(range(11)), list(range(9)), [20, 21]]
    right = [list(range(8)), list(range(10)), [20, 21]]
    result = propseg.match_sets(left, right, theta=0.8)
    assert [(l, r) for l, r, _ in result["pairs"]] == [(0, 1), (1, 0), (2, 2)]
    assert propseg.match_sets([[0, 1]], [[0, 1, 2]], matcher="exact")["pairs"] == []


def test_codec_round_trip():
    props = [[2, 3, 4, 5, 6, 7], [0, 3, 4, 5, 6]]
    text = propseg.encode(ZOO, props)
    assert text.count("[TARGET]") == 1
    assert propseg.decode(text, ZOO)["propositions"] == propseg.canonical_order(props)
    with pytest.raises(propseg.TokenDriftError):
        propseg.decode("[M] Alice and Rob [/M]", ZOO)


def test_file_metrics():
    seg = propseg.score_segmentation_files(
        os.path.join(DATA, "seg_pred.jsonl"), os.path.join(DATA, "seg_gold.jsonl"))
    assert seg["exact"]["f1"] < seg["jaccard"]["f1"] <= 1.0
    ent = propseg.score_entailment_files(
        os.path.join(DATA, "ent_const_entail.jsonl"), os.path.join(DATA, "ent_gold.jsonl"))
    assert ent["balanced_accuracy"] == 0.5
    with pytest.raises(propseg.ParseError):
        propseg.score_segmentation_files("missing.jsonl", "missing.jsonl")


def test_labels_and_kappa():
    s = propseg.score_labels(["entailment", "neutral", "contradiction"],
                             ["entailment"] * 3)
    assert s["accuracy"] == pytest.approx(1 / 3)
    assert propseg.fleiss_kappa([[3, 0], [0, 3]], 3)["kappa"] == 1.0


def test_hallucinated_spans_and_buckets():
    tokens = ("A man has been taken to hospital following a one-vehicle crash "
              "on the A96 in Aberdeenshire .").split()
    spans = propseg.hallucinated_spans(
        tokens,
        [list(range(7)), list(range(11)), [9, 10, 11, 12, 13], [9, 10, 14, 15]],
        [True, False, False, False])
    assert spans["verdict"] == "hallucinated"
    assert " ".join(tokens[i] for i in spans["hallucinated"]) == \
        "following a one-vehicle crash on the A96 in Aberdeenshire"
    rows = propseg.length_buckets(
        [(5, True), (6, True), (7, True), (8, False), (10, True), (12, False)], [5, 10])
    assert [(r["n"], r["accuracy"]) for r in rows] == [(4, 0.75), (2, 0.5)]
