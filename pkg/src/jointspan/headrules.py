"""Head-percolation rules and constituency-to-dependency conversion.

Rule file format, one rule per line::

    # comment
    @default r
    @root root
    NP<TAB>l<TAB>N*|Nc;PRO*

The third column lists priority tiers separated by ``;``; each tier is an
alternation of literal labels or ``prefix*`` wildcards separated by ``|``.
Token children match on their POS tag, phrase children on their category.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .errors import BadDirection, DuplicateLabel, EmptyPattern
from .tree import ConstituencyTree, DependencyGraph, Node, Token

LEFTWARD = "l"
RIGHTWARD = "r"
DEFAULT_RELATION = "dep"


@dataclass(frozen=True)
class Pattern:
    literals: frozenset
    prefixes: tuple

    def matches(self, label: str) -> bool:
        return label in self.literals or any(label.startswith(p) for p in self.prefixes)

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        items = text.split("|")
        if any(not item or item == "*" for item in items):
            raise ValueError(text)
        literals = frozenset(i for i in items if not i.endswith("*"))
        prefixes = tuple(i[:-1] for i in items if i.endswith("*"))
        return cls(literals, prefixes)


@dataclass(frozen=True)
class HeadRule:
    direction: str
    priority: tuple  # of Pattern


@dataclass(frozen=True)
class HeadRuleTable:
    rules: dict = field(default_factory=dict)
    default_direction: str = LEFTWARD
    root_label: str = "root"


def parse_rules(text: str) -> HeadRuleTable:
    rules = {}
    default = LEFTWARD
    root_label = "root"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            key, _, value = line.partition(" ")
            value = value.strip()
            if key == "@default":
                if value not in (LEFTWARD, RIGHTWARD):
                    raise BadDirection(f"direction must be 'l' or 'r', got {value!r}", lineno)
                default = value
            elif key == "@root":
                if not value:
                    raise EmptyPattern("@root needs a relation label", lineno)
                root_label = value
            else:
                raise EmptyPattern(f"unknown directive {key!r}", lineno)
            continue
        cols = raw.rstrip("\r\n").split("\t")
        if len(cols) != 3:
            raise EmptyPattern(f"expected LABEL<TAB>DIR<TAB>PATTERNS, got {raw!r}", lineno)
        label, direction, patterns = (c.strip() for c in cols)
        if direction not in (LEFTWARD, RIGHTWARD):
            raise BadDirection(f"direction must be 'l' or 'r', got {direction!r}", lineno)
        if label in rules:
            raise DuplicateLabel(f"second rule for {label!r}", lineno)
        tiers = []
        for tier in patterns.split(";"):
            try:
                tiers.append(Pattern.parse(tier.strip()))
            except ValueError:
                raise EmptyPattern(f"empty pattern item in {patterns!r}", lineno) from None
        rules[label] = HeadRule(direction, tuple(tiers))
    return HeadRuleTable(rules, default, root_label)


def load_default_rules() -> HeadRuleTable:
    """The bundled Vietnamese rule table (an engineering attempt, not a gold standard)."""
    text = resources.files("jointspan").joinpath("data/vi_headrules.tsv").read_text("utf-8")
    return parse_rules(text)


def _child_label(child) -> str:
    return child.pos if isinstance(child, Token) else child.label


def find_head_child(node: Node, table: HeadRuleTable) -> int:
    children = node.children
    if len(children) == 1:
        return 0
    rule = table.rules.get(node.label)
    if rule is not None:
        if rule.direction == LEFTWARD:
            order = range(len(children))
        else:
            order = range(len(children) - 1, -1, -1)
        labels = [_child_label(c) for c in children]
        for pattern in rule.priority:
            for i in order:
                if pattern.matches(labels[i]):
                    return i
    return 0 if table.default_direction == LEFTWARD else len(children) - 1


def to_dependency(tree: ConstituencyTree, table: HeadRuleTable) -> DependencyGraph:
    n = tree.n
    heads = [0] * n
    labels = [DEFAULT_RELATION] * n

    def percolate(node: Node) -> int:
        lexical = [c.index if isinstance(c, Token) else percolate(c) for c in node.children]
        k = find_head_child(node, table)
        head = lexical[k]
        for i, child in enumerate(node.children):
            if i == k:
                continue
            dep = lexical[i]
            heads[dep - 1] = head
            if isinstance(child, Node) and child.function:
                labels[dep - 1] = child.function.lower()
        return head

    top = percolate(tree.root)
    heads[top - 1] = 0
    labels[top - 1] = table.root_label
    return DependencyGraph(tuple(heads), tuple(labels))
