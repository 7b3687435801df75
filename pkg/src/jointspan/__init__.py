"""Treebank toolkit for simplified-HPSG joint span structures."""

__version__ = "0.1.0"

from .tree import (EMPTY_LABEL, ConstituencyTree, DependencyGraph, JointSpanTree, Node,
                   Sentence, Token)
from .treebank_io import emit_bracketed, emit_conll, parse_bracketed, parse_conll
from .joint_span import (ValidationReport, build_joint, external_heads, is_projective,
                         validate_pair)
from .repair import repair_corpus, repair_pair
from .headrules import find_head_child, load_default_rules, parse_rules, to_dependency
from .binarize import binarize, debinarize
from .decoder import (DecodeResult, ScoreSet, decode, enumerate_joint_trees, oracle_scores)
from .metrics import attachment_scores, corpus_stats, parseval, pos_accuracy

__all__ = [
    "EMPTY_LABEL", "ConstituencyTree", "DependencyGraph", "JointSpanTree", "Node", "Sentence",
    "Token", "emit_bracketed", "emit_conll", "parse_bracketed", "parse_conll",
    "ValidationReport", "build_joint", "external_heads", "is_projective", "validate_pair",
    "repair_corpus", "repair_pair", "find_head_child", "load_default_rules", "parse_rules",
    "to_dependency", "binarize", "debinarize", "DecodeResult", "ScoreSet", "decode",
    "enumerate_joint_trees", "oracle_scores", "attachment_scores", "corpus_stats", "parseval",
    "pos_accuracy",
]
