"""Evaluation: Parseval brackets, attachment scores, tagging accuracy, corpus counts.

Every result keeps integer counts; ratios are computed from them on demand,
so corpus-level scores are exact sums of sentence-level results.
"""
from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlignmentMismatch, LengthMismatch
from .tree import EMPTY_LABEL, ConstituencyTree, DependencyGraph

DEFAULT_PUNCT_TAGS = frozenset({"CH", "PUNCT", "PUNC"})


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _ratio(num: int, den: int, vacuous: float) -> float:
    return float(Fraction(num, den)) if den else vacuous


def _f1(matched: int, gold: int, pred: int) -> float:
    # 2PR / (P + R) == 2m / (g + p)
    return _ratio(2 * matched, gold + pred, 1.0)


@dataclass(frozen=True)
class LabelScore:
    gold: int
    predicted: int
    matched: int

    @property
    def f1(self) -> float:
        return _f1(self.matched, self.gold, self.predicted)


@dataclass(frozen=True)
class ParsevalResult:
    matched: int
    gold_total: int
    pred_total: int
    per_label: dict = field(default_factory=dict)

    @property
    def precision(self) -> float:
        # no predicted brackets: perfect only if there was nothing to find
        return _ratio(self.matched, self.pred_total, 1.0 if self.gold_total == 0 else 0.0)

    @property
    def recall(self) -> float:
        return _ratio(self.matched, self.gold_total, 1.0 if self.pred_total == 0 else 0.0)

    @property
    def f1(self) -> float:
        return _f1(self.matched, self.gold_total, self.pred_total)

    def __add__(self, other: "ParsevalResult") -> "ParsevalResult":
        labels = {}
        for lab in set(self.per_label) | set(other.per_label):
            a = self.per_label.get(lab, LabelScore(0, 0, 0))
            b = other.per_label.get(lab, LabelScore(0, 0, 0))
            labels[lab] = LabelScore(a.gold + b.gold, a.predicted + b.predicted,
                                     a.matched + b.matched)
        return ParsevalResult(self.matched + other.matched, self.gold_total + other.gold_total,
                              self.pred_total + other.pred_total, labels)


EMPTY_PARSEVAL = ParsevalResult(0, 0, 0, {})


def brackets(tree: ConstituencyTree, include_root: bool = False,
             include_preterminals: bool = False, strip_function_tags: bool = True) -> Counter:
    """Multiset of ``(label, lo, hi)`` brackets after filtering.

    With ``include_preterminals`` off, width-1 brackets are dropped; with it
    on, they are kept and each token also contributes ``(pos, i, i)``.
    """
    out = Counter()
    for node in tree.nodes():
        if node is tree.root and not include_root:
            continue
        if node.label == EMPTY_LABEL:
            continue
        if node.lo == node.hi and not include_preterminals:
            continue
        label = node.label if strip_function_tags else node.full_label
        out[(nfc(label), node.lo, node.hi)] += 1
    if include_preterminals:
        for tok in tree.tokens:
            out[(nfc(tok.pos), tok.index, tok.index)] += 1
    return out


def score_brackets(gold: Counter, pred: Counter) -> ParsevalResult:
    """Parseval counts for two ``(label, lo, hi)`` multisets."""
    common = gold & pred
    per_label = {}
    for lab in {b[0] for b in gold} | {b[0] for b in pred}:
        per_label[lab] = LabelScore(
            sum(c for b, c in gold.items() if b[0] == lab),
            sum(c for b, c in pred.items() if b[0] == lab),
            sum(c for b, c in common.items() if b[0] == lab))
    return ParsevalResult(sum(common.values()), sum(gold.values()), sum(pred.values()),
                          per_label)


def parseval(gold: ConstituencyTree, pred: ConstituencyTree, include_root: bool = False,
             include_preterminals: bool = False, strip_function_tags: bool = True) -> ParsevalResult:
    if gold.n != pred.n:
        raise LengthMismatch(f"gold has {gold.n} tokens, prediction has {pred.n}")
    opts = (include_root, include_preterminals, strip_function_tags)
    return score_brackets(brackets(gold, *opts), brackets(pred, *opts))


@dataclass(frozen=True)
class AttachmentResult:
    total: int
    head_correct: int
    both_correct: int

    @property
    def uas(self) -> float:
        return _ratio(self.head_correct, self.total, 1.0)

    @property
    def las(self) -> float:
        return _ratio(self.both_correct, self.total, 1.0)

    def __add__(self, other: "AttachmentResult") -> "AttachmentResult":
        return AttachmentResult(self.total + other.total, self.head_correct + other.head_correct,
                                self.both_correct + other.both_correct)


def attachment_scores(gold: DependencyGraph, pred: DependencyGraph, exclude_punct: bool = False,
                      punct_pos_set=DEFAULT_PUNCT_TAGS, gold_tags=None) -> AttachmentResult:
    """UAS/LAS counts.  Punctuation exclusion needs the gold POS tags."""
    if gold.n != pred.n:
        raise LengthMismatch(f"gold has {gold.n} tokens, prediction has {pred.n}")
    if exclude_punct and gold_tags is None:
        raise ValueError("exclude_punct requires gold_tags")
    total = heads_ok = both_ok = 0
    for i in range(gold.n):
        if exclude_punct and gold_tags[i] in punct_pos_set:
            continue
        total += 1
        if gold.heads[i] == pred.heads[i]:
            heads_ok += 1
            if nfc(gold.labels[i]) == nfc(pred.labels[i]):
                both_ok += 1
    return AttachmentResult(total, heads_ok, both_ok)


@dataclass(frozen=True)
class PosAccuracy:
    correct: int
    total: int
    per_tag: dict  # gold tag -> (correct, gold count)

    @property
    def accuracy(self) -> float:
        return _ratio(self.correct, self.total, 1.0)

    def tag_accuracy(self, tag: str) -> float:
        ok, count = self.per_tag[tag]
        return _ratio(ok, count, 0.0)

    def __add__(self, other: "PosAccuracy") -> "PosAccuracy":
        per_tag = dict(self.per_tag)
        for tag, (ok, count) in other.per_tag.items():
            a, b = per_tag.get(tag, (0, 0))
            per_tag[tag] = (a + ok, b + count)
        return PosAccuracy(self.correct + other.correct, self.total + other.total, per_tag)


def pos_accuracy(gold, pred) -> PosAccuracy:
    """Token-level tagging accuracy over aligned corpora of sentences."""
    gold = list(gold)
    pred = list(pred)
    if len(gold) != len(pred):
        raise AlignmentMismatch(f"{len(gold)} gold sentences vs {len(pred)} predicted")
    correct = total = 0
    per_tag = {}
    for s, (gs, ps) in enumerate(zip(gold, pred)):
        if len(gs) != len(ps):
            raise AlignmentMismatch(f"sentence {s}: {len(gs)} vs {len(ps)} tokens")
        for gt, pt in zip(gs, ps):
            if nfc(gt.form) != nfc(pt.form):
                raise AlignmentMismatch(
                    f"sentence {s}, token {gt.index}: {gt.form!r} vs {pt.form!r}")
            tag = nfc(gt.pos)
            ok = tag == nfc(pt.pos)
            c, k = per_tag.get(tag, (0, 0))
            per_tag[tag] = (c + ok, k + 1)
            correct += ok
            total += 1
    return PosAccuracy(correct, total, per_tag)


@dataclass(frozen=True)
class CorpusStats:
    pos_counts: Counter
    constituent_counts: Counter

    @staticmethod
    def ranked(counts: Counter) -> list:
        """Descending by count, ties alphabetical."""
        return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))


def corpus_stats(trees) -> CorpusStats:
    pos = Counter()
    const = Counter()
    for tree in trees:
        for tok in tree.tokens:
            pos[nfc(tok.pos)] += 1
        for node in tree.nodes():
            const[nfc(node.label)] += 1
    return CorpusStats(pos, const)

