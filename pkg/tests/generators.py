"""Random structures shared by the unit and acceptance tests."""
import random

from jointspan import (EMPTY_LABEL, DependencyGraph, JointSpanTree, Node, ScoreSet, Sentence,
                       Token, build_joint, debinarize, parse_rules, to_dependency)
from jointspan.tree import ConstituencyTree

LABELS = ("S", "NP", "VP", "PP", "AP", "QP", "SBAR", "ADVP", "MDP", "UCP")
TAGS = ("N", "Nc", "V", "ADJ", "PREP", "PRO:per", "NUM", "ADV", "PUNC", "CONJ")
FUNCTIONS = ("SUB", "DOB", "TMP", "LOC")
FORMS = ("tôi", "đọc", "sách", "mưa", "Hà_Nội", "người", "(", ")", ".", ",", "năm_2023",
         "x", "Ông", "đẹp", "không")


def random_tokens(rng, n):
    return [Token(i, rng.choice(FORMS), rng.choice(TAGS)) for i in range(1, n + 1)]


def random_tree(rng, n, unary=0.15, functions=0.15, wrap=0.2):
    """n-ary tree over ``n`` tokens with optional unary chains and function tags."""
    tokens = random_tokens(rng, n)

    def label():
        lab = rng.choice(LABELS)
        fn = rng.choice(FUNCTIONS) if rng.random() < functions else None
        return lab, fn

    def build(lo, hi):
        if lo == hi:
            children = (tokens[lo - 1],)
        else:
            k = rng.randint(2, min(4, hi - lo + 1))
            cuts = sorted(rng.sample(range(lo + 1, hi + 1), k - 1))
            bounds = [lo] + cuts + [hi + 1]
            children = []
            for a, b in zip(bounds, bounds[1:]):
                if a == b - 1 and rng.random() >= wrap:
                    children.append(tokens[a - 1])
                else:
                    children.append(build(a, b - 1))
        lab, fn = label()
        node = Node(lab, tuple(children), fn)
        while rng.random() < unary:
            lab, fn = label()
            node = Node(lab, (node,), fn)
        return node

    return ConstituencyTree(build(1, n))


def random_heads(rng, n):
    """Any in-range head array without self loops (usually not a tree)."""
    return [rng.choice([h for h in range(n + 1) if h != d]) for d in range(1, n + 1)]


def random_dep_tree(rng, n):
    """Uniform-ish random well-formed dependency tree (not necessarily projective)."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = [0] * n
    for i, t in enumerate(order[1:], 1):
        heads[t - 1] = rng.choice(order[:i])
    return heads


def random_rule_text(rng, nrules=None):
    items = list(LABELS) + list(TAGS) + ["N*", "V*", "P*", "A*"]
    lines = [f"@default {rng.choice('lr')}"]
    labels = rng.sample(LABELS, nrules if nrules is not None else rng.randint(0, len(LABELS)))
    for lab in labels:
        tiers = []
        for _ in range(rng.randint(1, 4)):
            tiers.append("|".join(rng.sample(items, rng.randint(1, 3))))
        lines.append(f"{lab}\t{rng.choice('lr')}\t{';'.join(tiers)}")
    return "\n".join(lines) + "\n"


def random_rules(rng):
    return parse_rules(random_rule_text(rng))


def percolated_joint(rng, n):
    tree = random_tree(rng, n)
    return build_joint(tree, to_dependency(tree, random_rules(rng)))


def random_binary_joint(rng, n, empty=0.4):
    """Random binarized joint tree, debinarized: arcs between siblings included."""
    tokens = random_tokens(rng, n)
    heads = [0] * n

    def label():
        if rng.random() < empty:
            return EMPTY_LABEL
        lab = rng.choice(LABELS)
        if rng.random() < 0.15:
            lab += "+" + rng.choice(LABELS)
        return lab

    def build(lo, hi):
        if lo == hi:
            tok = tokens[lo - 1]
            lab = label()
            return tok if lab == EMPTY_LABEL else Node(lab, (tok,), None, lo)
        k = rng.randint(lo, hi - 1)
        left, right = build(lo, k), build(k + 1, hi)
        lh, rh = _head(left), _head(right)
        if rng.random() < 0.5:
            head, dep = lh, rh
        else:
            head, dep = rh, lh
        heads[dep - 1] = head
        return Node(label(), (left, right), None, head)

    top = build(1, n)
    if isinstance(top, Token):
        top = Node(EMPTY_LABEL, (top,), None, top.index)
    binary = JointSpanTree(top, DependencyGraph.unlabeled(heads))
    return debinarize(binary)


def _head(item):
    return item.index if isinstance(item, Token) else item.head


def random_scoreset(rng, n, nlabels=4, density=0.6, integers=False):
    vocab = (EMPTY_LABEL,) + LABELS[:nlabels]

    def value():
        return float(rng.randint(-3, 3)) if integers else rng.gauss(0.0, 1.0)

    spans = {}
    for lo in range(1, n + 1):
        for hi in range(lo, n + 1):
            for lab in range(len(vocab)):
                if rng.random() < density:
                    spans[(lo, hi, lab)] = value()
    arcs = tuple(tuple(value() for _ in range(n)) for _ in range(n + 1))
    return ScoreSet(n, vocab, spans, arcs)


def random_sentence(rng, n):
    return Sentence(tuple(random_tokens(rng, n)))


def rng_for(*key):
    return random.Random("/".join(map(str, key)))


def brute_force_compliant(tree, heads):
    """Straight from the definition: one root, every token reaches it, and each
    constituent interval has exactly one token headed from outside."""
    n = len(heads)
    if heads.count(0) != 1:
        return False
    for t in range(1, n + 1):
        steps = 0
        while t != 0 and steps <= n:
            t = heads[t - 1]
            steps += 1
        if t != 0:
            return False
    spans = set()

    def collect(node):
        spans.add((node.lo, node.hi))
        for c in node.children:
            if isinstance(c, Node):
                collect(c)

    collect(tree.root)
    for lo, hi in spans:
        outside = sum(1 for t in range(lo, hi + 1) if not lo <= heads[t - 1] <= hi)
        if outside != 1:
            return False
    return True
