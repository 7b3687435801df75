"""Joint span construction and the simplified-HPSG compatibility check.

A (constituency, dependency) pair is compatible when the dependency graph is
a tree and every constituent interval contains exactly one token whose head
lies outside the interval.  That token is the constituent's head word.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IntervalOutOfRange, LengthMismatch, NotATree, NotCompliant
from .tree import ConstituencyTree, DependencyGraph, JointSpanTree, Node, Token


@dataclass(frozen=True)
class Violation:
    lo: int
    hi: int
    external_tokens: tuple

    @property
    def interval(self):
        return (self.lo, self.hi)


@dataclass(frozen=True)
class ValidationReport:
    well_formed_tree: bool
    projective: bool
    violations: tuple = ()
    compliant: bool = False
    # unique external-headed token per compliant interval
    span_heads: dict = field(default_factory=dict, compare=False, repr=False)


def external_heads(graph: DependencyGraph, lo: int, hi: int) -> list:
    """Tokens of ``[lo, hi]`` whose head is outside it; the root 0 is always outside."""
    if not 1 <= lo <= hi <= graph.n:
        raise IntervalOutOfRange(f"[{lo},{hi}] not within [1,{graph.n}]")
    heads = graph.heads
    return [t for t in range(lo, hi + 1) if not lo <= heads[t - 1] <= hi]


def is_well_formed(graph: DependencyGraph) -> bool:
    """Exactly one root and no cycles."""
    heads = graph.heads
    if sum(1 for h in heads if h == 0) != 1:
        return False
    state = [0] * (graph.n + 1)  # 0 unseen, 1 on current path, 2 reaches root
    state[0] = 2
    for start in range(1, graph.n + 1):
        path = []
        t = start
        while state[t] == 0:
            state[t] = 1
            path.append(t)
            t = heads[t - 1]
        if state[t] == 1:
            return False
        for p in path:
            state[p] = 2
    return True


def is_projective(graph: DependencyGraph) -> bool:
    """True iff no two arcs cross; every token under an arc descends from its head."""
    if not is_well_formed(graph):
        raise NotATree("projectivity is only defined for well-formed trees")
    heads = graph.heads
    for d in range(1, graph.n + 1):
        h = heads[d - 1]
        if h == 0:
            continue
        for t in range(min(h, d) + 1, max(h, d)):
            a = t
            while a != h and a != 0:
                a = heads[a - 1]
            if a != h:
                return False
    return True


def validate_pair(tree: ConstituencyTree, graph: DependencyGraph,
                  check_projectivity: bool = False) -> ValidationReport:
    if tree.n != graph.n:
        raise LengthMismatch(f"tree has {tree.n} tokens, graph has {graph.n}")
    well_formed = is_well_formed(graph)
    projective = well_formed and is_projective(graph)
    violations = []
    span_heads = {}
    for lo, hi in tree.intervals():
        ext = external_heads(graph, lo, hi)
        if len(ext) == 1:
            span_heads[(lo, hi)] = ext[0]
        else:
            violations.append(Violation(lo, hi, tuple(ext)))
    compliant = well_formed and not violations
    if check_projectivity:
        compliant = compliant and projective
    return ValidationReport(well_formed, projective, tuple(violations), compliant, span_heads)


def build_joint(tree: ConstituencyTree, graph: DependencyGraph) -> JointSpanTree:
    """Annotate every node with its head word; raises NotCompliant otherwise."""
    report = validate_pair(tree, graph)
    if not report.compliant:
        raise NotCompliant(report)
    return JointSpanTree(_annotate(tree.root, report.span_heads), graph)


def _annotate(node: Node, span_heads) -> Node:
    children = tuple(_annotate(c, span_heads) if isinstance(c, Node) else c
                     for c in node.children)
    return Node(node.label, children, node.function, span_heads[node.interval])


def read_off_heads(joint: JointSpanTree) -> list:
    """Head of each token as the head of the lowest node not headed by it.

    This recovers the graph only when every arc links a node's head to the
    head of one of its child phrases (as head percolation produces); arcs
    between two non-head siblings are invisible to per-node heads.
    """
    n = joint.n
    found = [0] * (n + 1)

    def walk(node, inherited):
        for child in node.children:
            if isinstance(child, Token):
                if child.index != node.head:
                    found[child.index] = node.head
            else:
                walk(child, node.head)
        if inherited is not None and node.head != inherited and not found[node.head]:
            found[node.head] = inherited

    walk(joint.root, None)
    return found[1:]
