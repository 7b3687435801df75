"""Core data types: tokens, constituency trees, dependency graphs, joint span trees.

Token indices are 1-based and shared by both views of a sentence; head
index 0 denotes the virtual root.  All types are immutable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence, Union

EMPTY_LABEL = "∅"  # label of intermediate nodes introduced by binarization


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    pos: str = "_"

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if not self.form or not self.pos:
            raise ValueError("token form and pos must be non-empty")

    @property
    def lo(self) -> int:
        return self.index

    @property
    def hi(self) -> int:
        return self.index


@dataclass(frozen=True)
class Sentence:
    """A tokenized sentence.

    ``rows`` optionally keeps the raw tabular columns of each token so that
    columns this package does not interpret survive a parse/emit cycle.
    """
    tokens: tuple
    rows: Optional[tuple] = field(default=None, compare=False)
    comments: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        for i, tok in enumerate(self.tokens, 1):
            if tok.index != i:
                raise ValueError(f"token {i} has index {tok.index}")

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    @property
    def forms(self) -> list:
        return [t.form for t in self.tokens]

    @property
    def tags(self) -> list:
        return [t.pos for t in self.tokens]

    @classmethod
    def from_words(cls, words, tags=None) -> "Sentence":
        tags = tags if tags is not None else ["_"] * len(words)
        return cls(tuple(Token(i, w, p) for i, (w, p) in enumerate(zip(words, tags), 1)))


@dataclass(frozen=True)
class Node:
    """Internal constituency node; children are Nodes or Tokens.

    The interval ``[lo, hi]`` is derived from the children.  ``head`` is only
    set on joint span trees.
    """
    label: str
    children: tuple
    function: Optional[str] = None
    head: Optional[int] = None
    lo: int = field(default=0, compare=False)
    hi: int = field(default=0, compare=False)

    def __post_init__(self):
        children = tuple(self.children)
        if not children:
            raise ValueError(f"node {self.label!r} has no children")
        for left, right in zip(children, children[1:]):
            if right.lo != left.hi + 1:
                raise ValueError(
                    f"children of {self.label!r} are not adjacent: "
                    f"[{left.lo},{left.hi}] then [{right.lo},{right.hi}]")
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "lo", children[0].lo)
        object.__setattr__(self, "hi", children[-1].hi)
        if self.head is not None and not self.lo <= self.head <= self.hi:
            raise ValueError(f"head {self.head} outside [{self.lo},{self.hi}]")

    @property
    def categ(self) -> str:
        return self.label

    @property
    def full_label(self) -> str:
        return f"{self.label}-{self.function}" if self.function else self.label

    @property
    def interval(self) -> tuple:
        return (self.lo, self.hi)

    def iter_nodes(self) -> Iterator["Node"]:
        """Internal nodes in pre-order."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(c for c in reversed(node.children) if isinstance(c, Node))

    def postorder(self) -> Iterator["Node"]:
        """Internal nodes, children before parents."""
        for child in self.children:
            if isinstance(child, Node):
                yield from child.postorder()
        yield self

    def leaves(self) -> list:
        out = []
        stack = [self]
        while stack:
            item = stack.pop()
            if isinstance(item, Token):
                out.append(item)
            else:
                stack.extend(reversed(item.children))
        return out


Child = Union[Node, Token]


def split_label(text: str) -> tuple:
    """Split ``"NP-SUB"`` into ``("NP", "SUB")`` at the first hyphen.

    A leading hyphen (``"-LRB-"``-style labels) is part of the label.
    """
    cut = text.find("-", 1)
    if cut == -1 or cut == len(text) - 1:
        return text, None
    return text[:cut], text[cut + 1:]


@dataclass(frozen=True)
class ConstituencyTree:
    root: Node

    @cached_property
    def tokens(self) -> tuple:
        return tuple(self.root.leaves())

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def sentence(self) -> Sentence:
        return Sentence(self.tokens)

    def nodes(self) -> Iterator[Node]:
        return self.root.iter_nodes()

    def postorder(self) -> Iterator[Node]:
        return self.root.postorder()

    def intervals(self) -> list:
        """Distinct internal-node intervals, bottom-up (children first)."""
        seen = set()
        out = []
        for node in self.postorder():
            if node.interval not in seen:
                seen.add(node.interval)
                out.append(node.interval)
        return out

    def strip_heads(self) -> "ConstituencyTree":
        return ConstituencyTree(_strip(self.root))


def _strip(node: Node) -> Node:
    return Node(node.label,
                tuple(_strip(c) if isinstance(c, Node) else c for c in node.children),
                node.function)


@dataclass(frozen=True)
class DependencyGraph:
    """Per-token heads (0 = virtual root) and relation labels.

    Only the raw-form invariants are enforced on construction; whether the
    graph is a tree is checked by :mod:`jointspan.joint_span`.
    """
    heads: tuple
    labels: tuple

    def __post_init__(self):
        heads = tuple(int(h) for h in self.heads)
        labels = tuple(self.labels)
        if len(heads) != len(labels):
            raise ValueError("heads and labels differ in length")
        n = len(heads)
        for d, h in enumerate(heads, 1):
            if not 0 <= h <= n:
                raise ValueError(f"head {h} of token {d} out of range [0, {n}]")
            if h == d:
                raise ValueError(f"token {d} is its own head")
        object.__setattr__(self, "heads", heads)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.heads)

    def head(self, token: int) -> int:
        return self.heads[token - 1]

    def with_heads(self, heads: Sequence[int]) -> "DependencyGraph":
        return DependencyGraph(tuple(heads), self.labels)

    @classmethod
    def unlabeled(cls, heads, label="dep", root_label="root") -> "DependencyGraph":
        return cls(tuple(heads), tuple(root_label if h == 0 else label for h in heads))


@dataclass(frozen=True)
class JointSpanTree(ConstituencyTree):
    """Constituency tree whose nodes carry their head token, plus the arcs.

    The graph holds every dependency arc, including arcs between sibling
    phrases that the per-node heads alone cannot express.
    """
    graph: Optional[DependencyGraph] = None

    def dependency(self) -> DependencyGraph:
        return self.graph

    def constituency(self) -> ConstituencyTree:
        return self.strip_heads()
