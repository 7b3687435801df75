"""Readers and writers for bracketed constituency files and tabular dependency files."""
from __future__ import annotations

import re
from typing import Iterable, Iterator, TextIO

from .errors import (BadColumnCount, EmptyNode, HeadOutOfRange, LeafWithoutTag,
                     LengthMismatch, NonContiguousIds, SelfLoop, UnbalancedParens)
from .tree import ConstituencyTree, DependencyGraph, Node, Sentence, Token, split_label

ESCAPES = (("(", "-LRB-"), (")", "-RRB-"))
_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL = range(8)
N_CORE_COLUMNS = 8
N_CONLLU_COLUMNS = 10


def escape(text: str) -> str:
    for raw, esc in ESCAPES:
        text = text.replace(raw, esc)
    return text


def unescape(text: str) -> str:
    for raw, esc in ESCAPES:
        text = text.replace(esc, raw)
    return text


# -- bracketed trees ---------------------------------------------------------

class _Tokens:
    """Cursor over the lexical tokens of a bracketed string."""

    def __init__(self, text: str, base: int = 0):
        self.text = text
        self.base = base
        self.items = [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else (None, len(self.text))

    def next(self):
        item = self.peek()
        self.i += 1
        return item

    def offset(self, pos: int) -> int:
        """Byte offset of character position ``pos``."""
        return self.base + len(self.text[:pos].encode("utf-8"))


def parse_bracketed(text: str, _base: int = 0) -> list:
    """Parse one or more S-expression trees.

    Errors carry the byte offset of the fault.

    >>> [t.root.label for t in parse_bracketed("(S (N a)) (S (V b))")]
    ['S', 'S']
    """
    toks = _Tokens(text, _base)
    trees = []
    while toks.peek()[0] is not None:
        tok, pos = toks.peek()
        if tok != "(":
            if tok == ")":
                raise UnbalancedParens("unexpected ')'", toks.offset(pos))
            raise LeafWithoutTag(f"bare token {tok!r} outside a tree", toks.offset(pos))
        counter = [0]
        root = _parse_top(toks, counter)
        trees.append(ConstituencyTree(root))
    return trees


def _parse_top(toks: _Tokens, counter) -> Node:
    _, start = toks.next()  # "("
    tok, pos = toks.peek()
    if tok == "(":
        # PTB-style unlabeled wrapper: "( (S ...) )"
        inner = _parse_node(toks, counter)
        tok, pos = toks.next()
        if tok is None:
            raise UnbalancedParens("missing ')'", toks.offset(pos))
        if tok != ")":
            raise EmptyNode("unlabeled wrapper with more than one child", toks.offset(start))
        if isinstance(inner, Token):
            return Node("ROOT", (inner,))
        return inner
    toks.i -= 1
    node = _parse_node(toks, counter)
    if isinstance(node, Token):
        raise LeafWithoutTag(f"token {node.form!r} sits directly under the top node",
                             toks.offset(start))
    return node


def _parse_node(toks: _Tokens, counter):
    tok, start = toks.next()
    if tok is None:
        raise UnbalancedParens("missing ')'", toks.offset(start))
    if tok != "(":
        raise LeafWithoutTag(f"token {tok!r} has no preterminal", toks.offset(start))
    label, pos = toks.next()
    if label is None:
        raise UnbalancedParens("missing ')'", toks.offset(pos))
    if label == ")":
        raise EmptyNode("empty node '()'", toks.offset(start))
    if label == "(":
        raise EmptyNode("node without label", toks.offset(start))
    tok, pos = toks.peek()
    if tok is None:
        raise UnbalancedParens("missing ')'", toks.offset(pos))
    if tok == ")":
        raise EmptyNode(f"node {label!r} has no children", toks.offset(start))
    if tok != "(":
        # preterminal: (POS form)
        toks.next()
        close, cpos = toks.next()
        if close is None:
            raise UnbalancedParens("missing ')'", toks.offset(cpos))
        if close != ")":
            raise LeafWithoutTag(f"token {close!r} has no preterminal", toks.offset(cpos))
        counter[0] += 1
        return Token(counter[0], unescape(tok), unescape(label))
    children = []
    while True:
        tok, pos = toks.peek()
        if tok is None:
            raise UnbalancedParens("missing ')'", toks.offset(pos))
        if tok == ")":
            toks.next()
            break
        children.append(_parse_node(toks, counter))
    name, function = split_label(unescape(label))
    return Node(name, tuple(children), function)


def emit_bracketed(tree) -> str:
    """Single-line S-expression for a tree (or a bare root node)."""
    root = tree.root if isinstance(tree, ConstituencyTree) else tree
    parts = []
    _emit(root, parts)
    return "".join(parts)


def _emit(item, parts):
    if isinstance(item, Token):
        parts.append(f"({escape(item.pos)} {escape(item.form)})")
        return
    parts.append("(" + escape(item.full_label))
    for child in item.children:
        parts.append(" ")
        _emit(child, parts)
    parts.append(")")


def iter_bracketed(lines: Iterable[str]) -> Iterator[ConstituencyTree]:
    """Stream trees from a line iterable; only one tree is buffered at a time."""
    buf = []
    depth = 0
    offset = 0  # byte offset of the start of ``buf``
    consumed = 0
    for line in lines:
        size = len(line.encode("utf-8"))
        if not buf and not line.strip():
            consumed += size
            continue
        if not buf:
            offset = consumed
        buf.append(line)
        consumed += size
        for ch in line:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    # the parser locates the stray paren and raises
                    parse_bracketed("".join(buf), offset)
                    raise UnbalancedParens("unexpected ')'", offset)
        if depth == 0:
            yield from parse_bracketed("".join(buf), offset)
            buf = []
    if buf:
        yield from parse_bracketed("".join(buf), offset)


def write_bracketed(trees: Iterable, fp: TextIO) -> None:
    for tree in trees:
        fp.write(emit_bracketed(tree) + "\n")


# -- tabular dependency files ------------------------------------------------

def parse_conll(text: str) -> list:
    """Parse blank-line separated tab-separated blocks into (Sentence, DependencyGraph)."""
    return list(iter_conll(text.splitlines()))


def iter_conll(lines: Iterable[str]) -> Iterator[tuple]:
    block = []
    comments = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            if block:
                yield _conll_block(block, comments)
            block, comments = [], []
            continue
        if line.startswith("#"):
            if block:
                # a comment after rows starts a new sentence's header
                yield _conll_block(block, comments)
                block = []
                comments = []
            comments.append(line)
            continue
        block.append((lineno, line))
    if block:
        yield _conll_block(block, comments)


def _conll_block(block, comments) -> tuple:
    rows = []
    for lineno, line in block:
        cols = line.split("\t")
        if len(cols) < N_CORE_COLUMNS:
            raise BadColumnCount(
                f"expected at least {N_CORE_COLUMNS} columns, got {len(cols)}", lineno)
        if "-" in cols[ID] or "." in cols[ID]:
            continue  # multiword ranges and empty nodes are not tokens
        rows.append((lineno, cols))
    n = len(rows)
    tokens, heads, labels = [], [], []
    for i, (lineno, cols) in enumerate(rows, 1):
        if cols[ID] != str(i):
            raise NonContiguousIds(f"expected ID {i}, got {cols[ID]!r}", lineno)
        try:
            head = int(cols[HEAD])
        except ValueError:
            raise HeadOutOfRange(f"HEAD {cols[HEAD]!r} is not an integer", lineno) from None
        if not 0 <= head <= n:
            raise HeadOutOfRange(f"HEAD {head} outside [0, {n}]", lineno)
        if head == i:
            raise SelfLoop(f"token {i} is its own head", lineno)
        pos = cols[XPOS] if cols[XPOS] != "_" else cols[UPOS]
        tokens.append(Token(i, cols[FORM], pos or "_"))
        heads.append(head)
        labels.append(cols[DEPREL])
    sentence = Sentence(tuple(tokens), rows=tuple(tuple(c) for _, c in rows),
                        comments=tuple(comments))
    return sentence, DependencyGraph(tuple(heads), tuple(labels))


def emit_conll(sentence: Sentence, graph: DependencyGraph) -> str:
    """One sentence block, newline-terminated, without the trailing blank line."""
    if len(sentence) != graph.n:
        raise LengthMismatch(f"sentence has {len(sentence)} tokens, graph has {graph.n}")
    lines = list(sentence.comments)
    rows = sentence.rows
    for i, tok in enumerate(sentence.tokens):
        if rows is not None and i < len(rows):
            cols = list(rows[i])
        else:
            cols = ["_"] * N_CONLLU_COLUMNS
        cols[ID] = str(tok.index)
        cols[FORM] = tok.form
        if not (cols[XPOS] == "_" and cols[UPOS] == tok.pos):
            cols[XPOS] = tok.pos
        cols[HEAD] = str(graph.heads[i])
        cols[DEPREL] = graph.labels[i]
        lines.append("\t".join(cols))
    return "\n".join(lines) + "\n"


def write_conll(pairs: Iterable[tuple], fp: TextIO) -> None:
    for sentence, graph in pairs:
        fp.write(emit_conll(sentence, graph) + "\n")
