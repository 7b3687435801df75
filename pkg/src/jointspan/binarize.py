"""Binarization for span-based decoding, and its exact inverse.

Unary chains collapse into one node labelled ``A+B``; phrases with more than
two children gain intermediate nodes labelled ``∅``.  Plain trees branch to
the right.  Joint span trees are binarized around their heads instead, so
every intermediate node contains the head of its parent and each binary
split corresponds to exactly one dependency arc.
"""
from __future__ import annotations

from .errors import NotBinarizable
from .tree import EMPTY_LABEL, ConstituencyTree, JointSpanTree, Node, Token, split_label

UNARY_JOIN = "+"


def binarize(tree: ConstituencyTree) -> ConstituencyTree:
    if isinstance(tree, JointSpanTree):
        heads = tree.graph.heads if tree.graph is not None else None
        return JointSpanTree(_bin(tree.root, heads), tree.graph)
    return ConstituencyTree(_bin(tree.root, None))


def debinarize(tree: ConstituencyTree) -> ConstituencyTree:
    root = tree.root
    children = tuple(x for c in root.children for x in _debin(c))
    if root.label == EMPTY_LABEL:
        new_root = Node(EMPTY_LABEL, children, None, root.head)
    else:
        new_root = _chain(root.label, children, root.head)
    if isinstance(tree, JointSpanTree):
        return JointSpanTree(new_root, tree.graph)
    return ConstituencyTree(new_root)


def _head_of(item):
    return item.index if isinstance(item, Token) else item.head


def _bin(node: Node, heads):
    children = node.children
    if len(children) == 1:
        child = children[0]
        if isinstance(child, Token):
            return Node(node.full_label, (child,), None, node.head)
        inner = _bin(child, heads)
        return Node(node.full_label + UNARY_JOIN + inner.label, inner.children, None, node.head)
    units = [c if isinstance(c, Token) else _bin(c, heads) for c in children]
    k = len(units)
    if heads is None or node.head is None:
        top = k - 1
        parent = [top] * k
    else:
        unit_of = {}
        for u, c in enumerate(children):
            for t in range(c.lo, c.hi + 1):
                unit_of[t] = u
        top = unit_of[node.head]
        parent = [unit_of.get(heads[_head_of(c) - 1], -1) for c in children]
    parent[top] = None
    deps = [[] for _ in range(k)]
    for u, p in enumerate(parent):
        if p is not None:
            if p == -1 or p == u:
                raise NotBinarizable(
                    f"phrase [{node.lo},{node.hi}] has a second external head")
            deps[p].append(u)

    used = [0]

    def build(u):
        used[0] += 1
        if used[0] > k:
            raise NotBinarizable(f"cyclic arcs inside phrase [{node.lo},{node.hi}]")
        cur = units[u]
        head = _head_of(cur)
        for r in sorted(d for d in deps[u] if d > u):
            cur = _join(cur, build(r), head, node)
        for left in sorted((d for d in deps[u] if d < u), reverse=True):
            cur = _join(build(left), cur, head, node)
        return cur

    out = build(top)
    if used[0] != k:
        raise NotBinarizable(f"cyclic arcs inside phrase [{node.lo},{node.hi}]")
    return Node(node.full_label, out.children, None, node.head)


def _join(left, right, head, node):
    if left.hi + 1 != right.lo:
        raise NotBinarizable(
            f"non-projective arcs between the children of [{node.lo},{node.hi}]")
    return Node(EMPTY_LABEL, (left, right), None, head)


def _debin(item) -> list:
    if isinstance(item, Token):
        return [item]
    children = tuple(x for c in item.children for x in _debin(c))
    if item.label == EMPTY_LABEL:
        return list(children)
    return [_chain(item.label, children, item.head)]


def _chain(label: str, children, head) -> Node:
    parts = label.split(UNARY_JOIN)
    name, function = split_label(parts[-1])
    cur = Node(name, children, function, head)
    for part in reversed(parts[:-1]):
        name, function = split_label(part)
        cur = Node(name, (cur,), function, head)
    return cur
