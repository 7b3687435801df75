"""Joint span decoding from span-label and head-arc score tables.

The objective of a binarized joint tree is

    lam * sum(best label score of each span) + (1 - lam) * sum(arc score of each token)

where the root arc ``arcs[0][h]`` of the sentence head is included.  Labels
factor out of the search: each span takes its argmax label (index 0, the
empty label, wins ties) independently of the tree.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .binarize import binarize, debinarize
from .chart import chart_decode
from .errors import EmptyScoreSet, NonFiniteScore, NTooLarge, UnknownLabel
from .tree import EMPTY_LABEL, DependencyGraph, JointSpanTree, Node, Token

DEFAULT_LAMBDA = 0.9
MAX_ENUMERATE = 7


@dataclass(frozen=True)
class ScoreSet:
    """Scores for one sentence.

    ``span_scores`` maps ``(lo, hi, label_index)`` to a score, absent keys
    scoring 0.  ``arc_scores[h][d - 1]`` scores head ``h`` (0 = root) over
    dependent ``d``.  ``label_vocab[0]`` is always the empty label.
    """
    n: int
    label_vocab: tuple
    span_scores: dict
    arc_scores: tuple
    words: Optional[tuple] = None
    tags: Optional[tuple] = None

    def check(self) -> None:
        if self.n < 1:
            raise EmptyScoreSet("score set has no tokens")
        if len(self.arc_scores) != self.n + 1 or any(len(r) != self.n for r in self.arc_scores):
            raise ValueError(f"arc scores must be {self.n + 1} x {self.n}")
        for row in self.arc_scores:
            for x in row:
                if not math.isfinite(x):
                    raise NonFiniteScore(f"arc score {x!r}")
        nlabels = len(self.label_vocab)
        for (lo, hi, lab), x in self.span_scores.items():
            if not 1 <= lo <= hi <= self.n or not 0 <= lab < nlabels:
                raise ValueError(f"bad span key {(lo, hi, lab)}")
            if not math.isfinite(x):
                raise NonFiniteScore(f"span score {x!r} at {(lo, hi, lab)}")

    def best_labels(self) -> tuple:
        """Flat ``(best score, best label index)`` tables indexed ``(lo-1)*n + (hi-1)``."""
        n = self.n
        nlabels = len(self.label_vocab)
        grouped = {}
        for (lo, hi, lab), x in self.span_scores.items():
            grouped.setdefault((lo, hi), {})[lab] = x
        best = [0.0] * (n * n)
        which = [0] * (n * n)
        for (lo, hi), present in grouped.items():
            bv = present.get(0, 0.0)
            bl = 0
            for lab in range(1, nlabels):
                x = present.get(lab, 0.0)
                if x > bv:
                    bv = x
                    bl = lab
            best[(lo - 1) * n + hi - 1] = bv
            which[(lo - 1) * n + hi - 1] = bl
        return best, which

    def flat_arcs(self) -> list:
        return [x for row in self.arc_scores for x in row]

    def tokens(self) -> list:
        words = self.words or ("_",) * self.n
        tags = self.tags or ("_",) * self.n
        return [Token(i, w, t) for i, (w, t) in enumerate(zip(words, tags), 1)]


@dataclass(frozen=True)
class DecodeResult:
    joint: JointSpanTree
    binary: JointSpanTree
    const_score: float
    dep_score: float
    total: float
    lam: float


def decode(scores: ScoreSet, lam: float = DEFAULT_LAMBDA, backend: Optional[str] = None) -> DecodeResult:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    scores.check()
    n = scores.n
    best, which = scores.best_labels()
    total, root, split, other = chart_decode(n, best, scores.flat_arcs(), lam, backend=backend)
    tokens = scores.tokens()
    vocab = scores.label_vocab
    heads = [0] * n

    def build(i, j, h):
        cell = (i * n + j) * n + h
        lab = which[i * n + j]
        if i == j:
            tok = tokens[i]
            return tok if lab == 0 else Node(vocab[lab], (tok,), None, i + 1)
        k = split[cell]
        o = other[cell]
        heads[o] = h + 1
        if h <= k:
            left, right = build(i, k, h), build(k + 1, j, o)
        else:
            left, right = build(i, k, o), build(k + 1, j, h)
        return Node(EMPTY_LABEL if lab == 0 else vocab[lab], (left, right), None, h + 1)

    top = build(0, n - 1, root)
    if isinstance(top, Token):
        top = Node(EMPTY_LABEL, (top,), None, top.index)
    graph = DependencyGraph.unlabeled(heads)
    binary = JointSpanTree(top, graph)
    const = sum(best[(node.lo - 1) * n + node.hi - 1] for node in _spans(top))
    dep = sum(scores.arc_scores[h][d] for d, h in enumerate(heads))
    return DecodeResult(debinarize(binary), binary, const, dep, total, lam)


def _spans(item) -> Iterator:
    """Every span of a binarized tree, including bare-token width-1 spans."""
    yield item
    if isinstance(item, Node) and item.lo != item.hi:
        for child in item.children:
            yield from _spans(child)


def tree_score(binary: JointSpanTree, scores: ScoreSet, lam: float) -> float:
    """Objective of a binarized joint tree, summed in the same order as the chart."""
    n = scores.n
    best, _ = scores.best_labels()
    arcs = scores.arc_scores
    w = 1.0 - lam

    def value(item):
        if isinstance(item, Token) or item.lo == item.hi:
            return lam * best[(item.lo - 1) * n + item.lo - 1]
        left, right = item.children
        h = item.head
        if left.lo <= h <= left.hi:
            hv, ov, o = value(left), value(right), _head(right)
        else:
            hv, ov, o = value(right), value(left), _head(left)
        return lam * best[(item.lo - 1) * n + item.hi - 1] + (hv + (ov + w * arcs[h][o - 1]))

    root = binary.root
    return value(root) + w * arcs[0][root.head - 1]


def _head(item) -> int:
    return item.index if isinstance(item, Token) else item.head


def oracle_scores(joint: JointSpanTree, vocab: Iterable[str]) -> ScoreSet:
    """Scores under which ``joint`` is the unique optimum for any 0 < lam < 1."""
    vocab = tuple(vocab)
    if not vocab or vocab[0] != EMPTY_LABEL:
        vocab = (EMPTY_LABEL,) + vocab
    index = {lab: i for i, lab in enumerate(vocab)}
    n = joint.n
    spans = {}
    covered = set()
    for node in binarize(joint).nodes():
        if node.label not in index:
            raise UnknownLabel(f"label {node.label!r} not in vocabulary")
        spans[(node.lo, node.hi, index[node.label])] = 1.0
        covered.add((node.lo, node.hi))
    for i in range(1, n + 1):
        if (i, i) not in covered:
            spans[(i, i, 0)] = 1.0
    arcs = [[0.0] * n for _ in range(n + 1)]
    for d, h in enumerate(joint.graph.heads, 1):
        arcs[h][d - 1] = 1.0
    toks = joint.tokens
    return ScoreSet(n, vocab, spans, tuple(tuple(r) for r in arcs),
                    tuple(t.form for t in toks), tuple(t.pos for t in toks))


def count_joint_trees(n: int) -> int:
    """T(1) = 1, T(n) = 2 * sum_k T(k) T(n - k)."""
    t = [0, 1]
    for m in range(2, n + 1):
        t.append(2 * sum(t[k] * t[m - k] for k in range(1, m)))
    return t[n]


def enumerate_joint_trees(n: int) -> Iterator[JointSpanTree]:
    """Every binarized joint tree over ``n`` tokens; label slots hold the empty label."""
    if n < 1:
        raise EmptyScoreSet("n must be at least 1")
    if n > MAX_ENUMERATE:
        raise NTooLarge(f"refusing to enumerate trees over {n} > {MAX_ENUMERATE} tokens")
    tokens = [Token(i, "_", "_") for i in range(1, n + 1)]

    def gen(lo, hi):
        if lo == hi:
            yield tokens[lo - 1], ()
            return
        for k in range(lo, hi):
            for left, larcs in gen(lo, k):
                for right, rarcs in gen(k + 1, hi):
                    lh, rh = _head(left), _head(right)
                    yield Node(EMPTY_LABEL, (left, right), None, lh), larcs + rarcs + ((rh, lh),)
                    yield Node(EMPTY_LABEL, (left, right), None, rh), larcs + rarcs + ((lh, rh),)

    for item, arcs in gen(1, n):
        heads = [0] * n
        for d, h in arcs:
            heads[d - 1] = h
        if isinstance(item, Token):
            item = Node(EMPTY_LABEL, (item,), None, item.index)
        yield JointSpanTree(item, DependencyGraph.unlabeled(heads))


# -- score files -------------------------------------------------------------

def _reject_constant(name):
    raise NonFiniteScore(f"non-finite number {name!r} in score file")


def scoreset_from_record(record: dict) -> ScoreSet:
    n = int(record["n"])
    labels = tuple(record["labels"])
    spans = {}
    for lo, hi, lab, x in record.get("spans", []):
        spans[(int(lo), int(hi), int(lab))] = float(x)
    flat = [float(x) for x in record["arcs"]]
    if len(flat) != (n + 1) * n:
        raise ValueError(f"expected {(n + 1) * n} arc scores, got {len(flat)}")
    arcs = tuple(tuple(flat[h * n:(h + 1) * n]) for h in range(n + 1))
    words = tuple(record["words"]) if record.get("words") else None
    tags = tuple(record["tags"]) if record.get("tags") else None
    scores = ScoreSet(n, labels, spans, arcs, words, tags)
    scores.check()
    return scores


def scoreset_to_record(scores: ScoreSet) -> dict:
    record = {
        "n": scores.n,
        "labels": list(scores.label_vocab),
        "spans": [[lo, hi, lab, x] for (lo, hi, lab), x in sorted(scores.span_scores.items())],
        "arcs": scores.flat_arcs(),
    }
    if scores.words:
        record["words"] = list(scores.words)
    if scores.tags:
        record["tags"] = list(scores.tags)
    return record


def loads_record(line: str) -> dict:
    return json.loads(line, parse_constant=_reject_constant)


def read_scores(lines: Iterable[str]) -> Iterator[ScoreSet]:
    for line in lines:
        if line.strip():
            yield scoreset_from_record(loads_record(line))


def dumps_scores(scores: ScoreSet) -> str:
    return json.dumps(scoreset_to_record(scores), ensure_ascii=False, allow_nan=False)
