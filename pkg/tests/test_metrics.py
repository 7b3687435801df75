from collections import Counter
from fractions import Fraction

import pytest

from jointspan import (DependencyGraph, Sentence, attachment_scores, corpus_stats,
                       parse_bracketed, parseval, pos_accuracy)
from jointspan.errors import AlignmentMismatch, LengthMismatch
from jointspan.metrics import EMPTY_PARSEVAL, CorpusStats, brackets, score_brackets


def tree(text):
    return parse_bracketed(text)[0]


def test_worked_bracket_example():
    gold = Counter({("S", 1, 3): 1, ("NP", 1, 2): 1})
    pred = Counter({("S", 1, 3): 1, ("VP", 2, 3): 1, ("NP", 1, 2): 1})
    r = score_brackets(gold, pred)
    assert r.matched == 2
    assert r.precision == float(Fraction(2, 3)) and r.recall == 1.0 and r.f1 == 0.8


def test_worked_example_on_trees():
    gold = tree("(S (NP (N a) (N b)) (V c))")
    pred = tree("(S (X (NP (AP (N a)) (N b))) (V c))")
    # the width-1 AP bracket is filtered out
    assert brackets(pred, include_root=True) == Counter(
        {("S", 1, 3): 1, ("X", 1, 2): 1, ("NP", 1, 2): 1})
    r = parseval(gold, pred, include_root=True)
    assert r.precision == float(Fraction(2, 3)) and r.recall == 1.0 and r.f1 == 0.8


def test_default_filters():
    t = tree("(S (NP-SUB (N a) (N b)) (VP (V c)))")
    assert brackets(t) == Counter({("NP", 1, 2): 1})
    assert brackets(t, strip_function_tags=False) == Counter({("NP-SUB", 1, 2): 1})
    assert brackets(t, include_preterminals=True) == Counter(
        {("NP", 1, 2): 1, ("VP", 3, 3): 1, ("N", 1, 1): 1, ("N", 2, 2): 1, ("V", 3, 3): 1})


def test_empty_label_nodes_never_count():
    t = tree("(S (∅ (N a) (N b)) (V c))")
    assert brackets(t, include_root=True) == Counter({("S", 1, 3): 1})


def test_identical_and_disjoint():
    t = tree("(S (NP (N a) (N b)) (VP (V c) (N d)))")
    r = parseval(t, t)
    assert r.precision == r.recall == r.f1 == 1.0
    u = tree("(S (AP (N a) (N b)) (PP (V c) (N d)))")
    r = parseval(t, u)
    assert r.precision == r.recall == r.f1 == 0.0


def test_vacuous_parseval_is_perfect():
    t = tree("(S (N a) (N b))")
    assert parseval(t, t).f1 == 1.0
    assert EMPTY_PARSEVAL.f1 == 1.0


def test_parseval_length_mismatch():
    with pytest.raises(LengthMismatch):
        parseval(tree("(S (N a))"), tree("(S (N a) (N b))"))


def test_per_label_sums_and_corpus_addition():
    a = parseval(tree("(S (NP (N a) (N b)) (VP (V c) (N d)))"),
                 tree("(S (NP (N a) (N b)) (V c) (N d))"))
    assert sum(s.matched for s in a.per_label.values()) == a.matched
    total = a + a + EMPTY_PARSEVAL
    assert (total.matched, total.gold_total, total.pred_total) == (2, 4, 2)
    assert total.per_label["NP"].gold == 2


def test_attachment_example():
    gold = DependencyGraph((2, 0, 2, 3, 2), ("a", "root", "b", "c", "d"))
    pred = DependencyGraph((2, 0, 2, 3, 1), ("a", "root", "x", "c", "d"))
    r = attachment_scores(gold, pred)
    assert (r.total, r.head_correct, r.both_correct) == (5, 4, 3)
    assert r.uas == 0.8 and r.las == 0.6


def test_attachment_identical_and_all_wrong():
    g = DependencyGraph((2, 0), ("a", "root"))
    assert attachment_scores(g, g).las == 1.0
    r = attachment_scores(g, DependencyGraph((0, 1), ("a", "root")))
    assert r.uas == r.las == 0.0


def test_attachment_punctuation_exclusion():
    gold = DependencyGraph((2, 0, 2), ("a", "root", "punct"))
    pred = DependencyGraph((2, 0, 1), ("a", "root", "punct"))
    assert attachment_scores(gold, pred).uas == float(Fraction(2, 3))
    r = attachment_scores(gold, pred, exclude_punct=True, gold_tags=["N", "V", "PUNC"])
    assert r.total == 2 and r.uas == 1.0
    r = attachment_scores(gold, pred, exclude_punct=True, punct_pos_set={"V"},
                          gold_tags=["N", "V", "PUNC"])
    assert r.total == 2 and r.uas == 0.5
    with pytest.raises(ValueError):
        attachment_scores(gold, pred, exclude_punct=True)
    with pytest.raises(LengthMismatch):
        attachment_scores(gold, DependencyGraph((0,), ("root",)))


def test_labels_compare_after_nfc():
    composed = "quan_hệ"
    decomposed = "quan_hệ"
    gold = DependencyGraph((0,), (composed,))
    pred = DependencyGraph((0,), (decomposed,))
    assert attachment_scores(gold, pred).las == 1.0


def test_pos_accuracy_example():
    gold = [Sentence.from_words(["a", "b", "c"], ["N", "N", "V"])]
    pred = [Sentence.from_words(["a", "b", "c"], ["N", "V", "V"])]
    r = pos_accuracy(gold, pred)
    assert r.accuracy == float(Fraction(2, 3))
    assert r.tag_accuracy("N") == 0.5 and r.tag_accuracy("V") == 1.0


def test_pos_accuracy_never_predicted_tag():
    gold = [Sentence.from_words(["a"], ["Nby"])]
    pred = [Sentence.from_words(["a"], ["N"])]
    assert pos_accuracy(gold, pred).tag_accuracy("Nby") == 0.0


def test_pos_accuracy_alignment():
    gold = [Sentence.from_words(["a"], ["N"])]
    with pytest.raises(AlignmentMismatch):
        pos_accuracy(gold, [])
    with pytest.raises(AlignmentMismatch):
        pos_accuracy(gold, [Sentence.from_words(["b"], ["N"])])
    with pytest.raises(AlignmentMismatch):
        pos_accuracy(gold, [Sentence.from_words(["a", "b"], ["N", "N"])])


def test_pos_accuracy_adds():
    a = pos_accuracy([Sentence.from_words(["a"], ["N"])], [Sentence.from_words(["a"], ["V"])])
    b = pos_accuracy([Sentence.from_words(["b"], ["N"])], [Sentence.from_words(["b"], ["N"])])
    total = a + b
    assert total.accuracy == 0.5 and total.per_tag["N"] == (1, 2)


def test_corpus_stats_examples():
    stats = corpus_stats([tree("(S (N a) (V b))"), tree("(S (N c))")])
    assert stats.pos_counts == Counter({"N": 2, "V": 1})
    assert corpus_stats([]).pos_counts == Counter()
    chain = corpus_stats([tree("(S (NP (N a)))")])
    assert chain.constituent_counts == Counter({"S": 1, "NP": 1})


def test_ranked_order():
    counts = Counter({"V": 2, "N": 5, "A": 2, "P": 1})
    assert CorpusStats.ranked(counts) == [("N", 5), ("A", 2), ("V", 2), ("P", 1)]


def test_corpus_stats_order_invariant():
    trees = [tree("(S (N a) (V b))"), tree("(NP (N c) (Nc d))"), tree("(S (VP (V e)))")]
    assert corpus_stats(trees) == corpus_stats(trees[::-1])
