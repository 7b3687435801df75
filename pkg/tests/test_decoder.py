import json
import math

import pytest

from jointspan import (EMPTY_LABEL, DependencyGraph, ScoreSet, binarize, build_joint, decode,
                       enumerate_joint_trees, oracle_scores, parse_bracketed)
from jointspan.decoder import (count_joint_trees, dumps_scores, read_scores, scoreset_from_record,
                               scoreset_to_record, tree_score)
from jointspan.errors import EmptyScoreSet, NonFiniteScore, NTooLarge, UnknownLabel
from jointspan.treebank_io import emit_bracketed
from generators import random_binary_joint, random_scoreset, rng_for


def zeros(n, vocab=(EMPTY_LABEL,)):
    return ScoreSet(n, vocab, {}, tuple((0.0,) * n for _ in range(n + 1)))


def test_single_token():
    scores = ScoreSet(1, (EMPTY_LABEL, "S"), {(1, 1, 1): 2.0}, ((0.5,), (0.0,)))
    res = decode(scores, 0.9)
    assert res.joint.graph.heads == (0,)
    assert emit_bracketed(res.joint) == "(S (_ _))"
    assert res.total == 0.9 * 2.0 + (1 - 0.9) * 0.5


def test_all_zero_tie_break():
    res = decode(zeros(3), 0.5)
    assert emit_bracketed(res.binary) == "(∅ (_ _) (∅ (_ _) (_ _)))"
    assert res.binary.graph.heads == (0, 1, 2)
    assert res.total == 0.0


def test_result_scores_add_up():
    for k in range(30):
        rng = rng_for("parts", k)
        scores = random_scoreset(rng, rng.randint(1, 7))
        lam = rng.random()
        res = decode(scores, lam)
        assert math.isclose(res.total, lam * res.const_score + (1 - lam) * res.dep_score,
                            abs_tol=1e-9)
        assert tree_score(res.binary, scores, lam) == res.total


def test_decode_is_optimal_on_small_inputs():
    for k in range(20):
        rng = rng_for("small", k)
        n = rng.randint(1, 4)
        scores = random_scoreset(rng, n, integers=k % 2 == 0)
        best = max(tree_score(t, scores, 0.7) for t in enumerate_joint_trees(n))
        assert decode(scores, 0.7).total == best


def test_oracle_recovers_three_token_gold():
    [tree] = parse_bracketed("(S (NP (N a) (ADJ b)) (V c))")
    gold = build_joint(tree, DependencyGraph.unlabeled((3, 1, 0)))
    res = decode(oracle_scores(gold, ["S", "NP"]), 0.5)
    assert res.joint == gold


def test_oracle_single_token():
    [tree] = parse_bracketed("(S (N a))")
    gold = build_joint(tree, DependencyGraph.unlabeled((0,)))
    scores = oracle_scores(gold, ["S"])
    assert scores.span_scores == {(1, 1, 1): 1.0}
    assert scores.arc_scores == ((1.0,), (0.0,))
    assert decode(scores, 0.5).joint == gold


def test_oracle_unknown_label():
    [tree] = parse_bracketed("(S (N a))")
    gold = build_joint(tree, DependencyGraph.unlabeled((0,)))
    with pytest.raises(UnknownLabel):
        oracle_scores(gold, ["NP"])


def test_oracle_recovers_sibling_arcs():
    for k in range(40):
        rng = rng_for("oracle", k)
        gold = random_binary_joint(rng, rng.randint(1, 9))
        vocab = sorted({n.label for n in binarize(gold).nodes()} - {EMPTY_LABEL})
        res = decode(oracle_scores(gold, vocab), 0.5)
        assert res.joint == gold


def test_enumeration_counts():
    assert [count_joint_trees(n) for n in range(1, 6)] == [1, 2, 8, 40, 224]
    for n in range(1, 6):
        trees = list(enumerate_joint_trees(n))
        assert len(trees) == count_joint_trees(n)
        assert len({(emit_bracketed(t), t.graph.heads, tuple(x.head for x in t.nodes()))
                    for t in trees}) == len(trees)


def test_enumeration_limits():
    with pytest.raises(EmptyScoreSet):
        list(enumerate_joint_trees(0))
    with pytest.raises(NTooLarge):
        list(enumerate_joint_trees(8))


def test_bad_inputs():
    with pytest.raises(ValueError):
        decode(zeros(2), 1.5)
    with pytest.raises(EmptyScoreSet):
        decode(ScoreSet(0, (EMPTY_LABEL,), {}, ((),)), 0.5)
    bad = ScoreSet(1, (EMPTY_LABEL,), {(1, 1, 0): float("nan")}, ((0.0,), (0.0,)))
    with pytest.raises(NonFiniteScore):
        decode(bad, 0.5)
    with pytest.raises(ValueError):
        decode(ScoreSet(2, (EMPTY_LABEL,), {}, ((0.0, 0.0),)), 0.5)


def test_label_ties_prefer_empty():
    scores = ScoreSet(2, (EMPTY_LABEL, "NP", "VP"),
                      {(1, 2, 0): 1.0, (1, 2, 1): 1.0, (1, 2, 2): 1.0},
                      ((0.0, 0.0), (0.0, 0.0), (0.0, 0.0)))
    assert decode(scores, 0.5).binary.root.label == EMPTY_LABEL
    scores = ScoreSet(2, (EMPTY_LABEL, "NP", "VP"), {(1, 2, 1): 1.0, (1, 2, 2): 1.0},
                      ((0.0, 0.0), (0.0, 0.0), (0.0, 0.0)))
    assert decode(scores, 0.5).binary.root.label == "NP"


def test_score_file_roundtrip():
    rng = rng_for("io", 0)
    scores = random_scoreset(rng, 4)
    scores = ScoreSet(scores.n, scores.label_vocab, scores.span_scores, scores.arc_scores,
                      ("a", "b", "c", "d"), ("N", "V", "N", "PUNC"))
    line = dumps_scores(scores)
    [back] = list(read_scores([line, "\n"]))
    assert back == scores
    assert scoreset_from_record(scoreset_to_record(scores)) == scores


def test_score_file_rejects_nan_and_bad_shapes():
    with pytest.raises(NonFiniteScore):
        list(read_scores(['{"n": 1, "labels": ["∅"], "arcs": [NaN, 0]}']))
    with pytest.raises(ValueError):
        scoreset_from_record({"n": 2, "labels": ["∅"], "arcs": [0, 0]})
    record = json.loads(dumps_scores(zeros(1)))
    assert record == {"n": 1, "labels": ["∅"], "spans": [], "arcs": [0.0, 0.0]}
