"""Command-line entry point: ``jointspan <subcommand> ...``.

Options resolve in this order: command-line flag, environment variable
``JOINTSPAN_<KEY>`` (key upper-cased, hyphens as underscores), config file
given with ``--config`` (``key = value`` lines), built-in default.

Exit status: 0 on success, 1 if any sentence failed, 2 on usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import zip_longest

from . import __version__
from .decoder import DEFAULT_LAMBDA, decode, read_scores
from .errors import ConfigError, FormatError, JointSpanError
from .headrules import load_default_rules, parse_rules, to_dependency
from .joint_span import validate_pair
from .metrics import (DEFAULT_PUNCT_TAGS, EMPTY_PARSEVAL, AttachmentResult, CorpusStats,
                      PosAccuracy, attachment_scores, corpus_stats, parseval, pos_accuracy)
from .repair import repair_pair
from .rng import DEFAULT_SEED, pair_seed
from .tree import Sentence
from .treebank_io import emit_bracketed, emit_conll, iter_bracketed, iter_conll

ENV_PREFIX = "JOINTSPAN_"


def _bool(text):
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _tags(text):
    if isinstance(text, frozenset):
        return text
    return frozenset(t for t in str(text).split(",") if t)


def _lambda(text):
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {value}")
    return value


# key -> (converter, default); every option settable by flag, env or config file
OPTIONS = {
    "seed": (int, DEFAULT_SEED),
    "lambda": (_lambda, DEFAULT_LAMBDA),
    "strict_forms": (_bool, False),
    "check_projectivity": (_bool, False),
    "rules": (str, None),
    "backend": (str, None),
    "include_root": (_bool, False),
    "include_preterminals": (_bool, False),
    "strip_function_tags": (_bool, True),
    "exclude_punct": (_bool, False),
    "punct_tags": (_tags, DEFAULT_PUNCT_TAGS),
    "format": (str, "conll"),
}


def read_config(path):
    values = {}
    with open(path, encoding="utf-8") as fp:
        for lineno, raw in enumerate(fp, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            if key not in OPTIONS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def resolve(args, config):
    """Fill every option on ``args`` not given as a flag."""
    for key, (convert, default) in OPTIONS.items():
        if getattr(args, key, None) is not None:
            value = getattr(args, key)
            source = f"--{key.replace('_', '-')}"
        elif ENV_PREFIX + key.upper() in os.environ:
            value = os.environ[ENV_PREFIX + key.upper()]
            source = ENV_PREFIX + key.upper()
        elif key in config:
            value = config[key]
            source = f"config key {key!r}"
        else:
            setattr(args, key, default)
            continue
        try:
            setattr(args, key, convert(value))
        except ValueError as exc:
            raise ConfigError(f"{source}: {exc}") from None
    return args


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jointspan",
        description="Joint span treebank toolkit: validate, repair, convert, decode, evaluate.",
        epilog=f"Options also read from {ENV_PREFIX}<KEY> environment variables and --config.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="key = value option file")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def flag(p, name, **kw):
        p.add_argument(name, default=None, **kw)

    def switch(p, name, help):
        key = name[2:].replace("-", "_")
        p.add_argument(name, dest=key, action="store_const", const=True, default=None, help=help)
        p.add_argument("--no-" + name[2:], dest=key, action="store_const", const=False,
                       help=argparse.SUPPRESS)

    p = sub.add_parser("validate", help="check simplified-HPSG compatibility of tree pairs")
    p.add_argument("--const", required=True, help="bracketed constituency file")
    p.add_argument("--dep", required=True, help="tabular dependency file")
    switch(p, "--strict-forms", "require identical token forms in both files")
    switch(p, "--check-projectivity", "count non-projective pairs as non-compliant")
    p.add_argument("--report", help="write a JSON report here")

    p = sub.add_parser("repair", help="re-point arcs so every pair becomes compatible")
    p.add_argument("--const", required=True)
    p.add_argument("--dep", required=True)
    p.add_argument("--out", required=True, help="repaired dependency file")
    p.add_argument("--log", required=True, help="one line per changed arc")
    flag(p, "--seed", help=f"base seed (default {DEFAULT_SEED})")
    switch(p, "--strict-forms", "require identical token forms in both files")

    p = sub.add_parser("to-deps", help="convert constituency trees with head rules")
    p.add_argument("--const", required=True)
    flag(p, "--rules", help="head rule file (default: bundled Vietnamese rules)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("decode", help="decode joint trees from a score file")
    p.add_argument("--scores", required=True, help="JSON-lines score file")
    flag(p, "--lambda", dest="lambda", help=f"constituency weight (default {DEFAULT_LAMBDA})")
    p.add_argument("--out-const", required=True)
    p.add_argument("--out-dep", required=True)
    flag(p, "--backend", choices=("cython", "python"), help="chart kernel")

    p = sub.add_parser("eval-const", help="Parseval precision/recall/F1")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    switch(p, "--include-root", "count the root bracket")
    switch(p, "--include-preterminals", "count width-1 and POS brackets")
    switch(p, "--strip-function-tags", "compare labels without function tags (default)")
    p.add_argument("--report")

    p = sub.add_parser("eval-dep", help="UAS/LAS")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    switch(p, "--exclude-punct", "skip tokens whose gold tag is punctuation")
    flag(p, "--punct-tags", help="comma-separated punctuation tags")
    p.add_argument("--report")

    p = sub.add_parser("eval-pos", help="tagging accuracy, overall and per tag")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    flag(p, "--format", choices=("conll", "bracketed"), help="input format (default conll)")
    p.add_argument("--report")

    p = sub.add_parser("stats", help="POS and constituent counts")
    p.add_argument("--const", required=True)
    p.add_argument("--report")
    return parser


def _open(path):
    return open(path, encoding="utf-8")


def _pairs(const_path, dep_path, strict_forms, errors):
    """Yield ``(index, tree, sentence, graph)``; alignment failures go to ``errors``."""
    with _open(const_path) as cf, _open(dep_path) as df:
        for i, (tree, dep) in enumerate(zip_longest(iter_bracketed(cf), iter_conll(df))):
            if tree is None or dep is None:
                errors.append((i, "files hold different numbers of sentences"))
                return
            sentence, graph = dep
            if tree.n != graph.n:
                errors.append((i, f"{tree.n} tokens in tree, {graph.n} in dependency file"))
                continue
            if strict_forms and [t.form for t in tree.tokens] != sentence.forms:
                errors.append((i, "token forms differ"))
                continue
            yield i, tree, sentence, graph


def _report(path, record):
    if path:
        with open(path, "w", encoding="utf-8") as fp:
            fp.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def cmd_validate(args, errors):
    total = compliant = 0
    lines = []
    per_sentence = []
    for i, tree, _, graph in _pairs(args.const, args.dep, args.strict_forms, errors):
        report = validate_pair(tree, graph, args.check_projectivity)
        total += 1
        compliant += report.compliant
        if not report.well_formed_tree:
            lines.append(f"sentence {i}: not a well-formed tree")
        elif args.check_projectivity and not report.projective:
            lines.append(f"sentence {i}: non-projective")
        for v in report.violations:
            ext = ",".join(map(str, v.external_tokens)) or "none"
            lines.append(f"sentence {i}: violation [{v.lo},{v.hi}] external {ext}")
        per_sentence.append({"index": i, "compliant": report.compliant,
                             "violations": [[v.lo, v.hi, list(v.external_tokens)]
                                            for v in report.violations]})
    pct = 100.0 * compliant / total if total else 100.0
    print(f"compliant {compliant}/{total} ({pct:.1f}%)")
    for line in lines:
        print(line)
    _report(args.report, {"total": total, "compliant": compliant, "sentences": per_sentence})


def cmd_repair(args, errors):
    pairs = arcs = 0
    with open(args.out, "w", encoding="utf-8") as out, open(args.log, "w", encoding="utf-8") as log:
        for i, tree, sentence, graph in _pairs(args.const, args.dep, args.strict_forms, errors):
            try:
                repaired, rlog = repair_pair(tree, graph, pair_seed(args.seed, i))
            except JointSpanError as exc:
                errors.append((i, str(exc)))
                continue
            out.write(emit_conll(sentence, repaired) + "\n")
            for ch in rlog.changed_arcs:
                log.write(f"{i}\t{ch.token}\t{ch.old_head}\t{ch.new_head}\n")
            pairs += bool(rlog.changed_arcs)
            arcs += len(rlog.changed_arcs)
    print(f"repaired {pairs} sentences, {arcs} arcs changed (seed {args.seed})")


def cmd_to_deps(args, errors):
    if args.rules:
        with _open(args.rules) as fp:
            table = parse_rules(fp.read())
    else:
        table = load_default_rules()
    count = 0
    with _open(args.const) as cf, open(args.out, "w", encoding="utf-8") as out:
        for tree in iter_bracketed(cf):
            out.write(emit_conll(tree.sentence, to_dependency(tree, table)) + "\n")
            count += 1
    print(f"converted {count} trees")


def cmd_decode(args, errors):
    count = 0
    with _open(args.scores) as sf, \
            open(args.out_const, "w", encoding="utf-8") as oc, \
            open(args.out_dep, "w", encoding="utf-8") as od:
        for i, scores in enumerate(read_scores(sf)):
            try:
                result = decode(scores, args.__dict__["lambda"], backend=args.backend)
            except JointSpanError as exc:
                errors.append((i, str(exc)))
                continue
            joint = result.joint
            oc.write(emit_bracketed(joint.strip_heads()) + "\n")
            od.write(emit_conll(Sentence(joint.tokens), joint.graph) + "\n")
            count += 1
    print(f"decoded {count} sentences (lambda {args.__dict__['lambda']})")


def cmd_eval_const(args, errors):
    result = EMPTY_PARSEVAL
    with _open(args.gold) as gf, _open(args.pred) as pf:
        for i, (gold, pred) in enumerate(zip_longest(iter_bracketed(gf), iter_bracketed(pf))):
            if gold is None or pred is None:
                errors.append((i, "files hold different numbers of trees"))
                break
            try:
                result = result + parseval(gold, pred, args.include_root,
                                           args.include_preterminals, args.strip_function_tags)
            except JointSpanError as exc:
                errors.append((i, str(exc)))
    print(f"brackets gold {result.gold_total} pred {result.pred_total} matched {result.matched}")
    print(f"precision {result.precision:.4f}  recall {result.recall:.4f}  f1 {result.f1:.4f}")
    rows = sorted(result.per_label.items(), key=lambda kv: (-kv[1].gold, kv[0]))
    for label, s in rows:
        print(f"{label}\t{s.gold}\t{s.predicted}\t{s.matched}\t{s.f1:.4f}")
    _report(args.report, {
        "matched": result.matched, "gold": result.gold_total, "pred": result.pred_total,
        "precision": result.precision, "recall": result.recall, "f1": result.f1,
        "per_label": {k: [s.gold, s.predicted, s.matched, s.f1] for k, s in rows}})


def cmd_eval_dep(args, errors):
    result = AttachmentResult(0, 0, 0)
    with _open(args.gold) as gf, _open(args.pred) as pf:
        for i, (gold, pred) in enumerate(zip_longest(iter_conll(gf), iter_conll(pf))):
            if gold is None or pred is None:
                errors.append((i, "files hold different numbers of sentences"))
                break
            try:
                result = result + attachment_scores(gold[1], pred[1], args.exclude_punct,
                                                    args.punct_tags, gold[0].tags)
            except JointSpanError as exc:
                errors.append((i, str(exc)))
    print(f"tokens {result.total}  UAS {result.uas:.4f}  LAS {result.las:.4f}")
    _report(args.report, {"total": result.total, "head_correct": result.head_correct,
                          "both_correct": result.both_correct,
                          "uas": result.uas, "las": result.las})


def cmd_eval_pos(args, errors):
    if args.format == "bracketed":
        def read(fp):
            return (t.sentence for t in iter_bracketed(fp))
    else:
        def read(fp):
            return (s for s, _ in iter_conll(fp))
    result = PosAccuracy(0, 0, {})
    with _open(args.gold) as gf, _open(args.pred) as pf:
        for i, (gold, pred) in enumerate(zip_longest(read(gf), read(pf))):
            if gold is None or pred is None:
                errors.append((i, "files hold different numbers of sentences"))
                break
            try:
                result = result + pos_accuracy([gold], [pred])
            except JointSpanError as exc:
                errors.append((i, str(exc)))
    print(f"tokens {result.total}  accuracy {result.accuracy:.4f}")
    rows = sorted(result.per_tag.items(), key=lambda kv: (-kv[1][1], kv[0]))
    for tag, (ok, count) in rows:
        print(f"{tag}\t{count}\t{result.tag_accuracy(tag):.4f}")
    _report(args.report, {"correct": result.correct, "total": result.total,
                          "accuracy": result.accuracy,
                          "per_tag": {t: [ok, c, result.tag_accuracy(t)] for t, (ok, c) in rows}})


def cmd_stats(args, errors):
    with _open(args.const) as cf:
        stats = corpus_stats(iter_bracketed(cf))
    pos = CorpusStats.ranked(stats.pos_counts)
    const = CorpusStats.ranked(stats.constituent_counts)
    print("# pos")
    for tag, count in pos:
        print(f"{tag}\t{count}")
    print("# constituents")
    for label, count in const:
        print(f"{label}\t{count}")
    _report(args.report, {"pos_counts": [[t, c] for t, c in pos],
                          "constituent_counts": [[t, c] for t, c in const]})


COMMANDS = {
    "validate": cmd_validate,
    "repair": cmd_repair,
    "to-deps": cmd_to_deps,
    "decode": cmd_decode,
    "eval-const": cmd_eval_const,
    "eval-dep": cmd_eval_dep,
    "eval-pos": cmd_eval_pos,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = read_config(args.config) if args.config else {}
        resolve(args, config)
    except (ConfigError, OSError) as exc:
        print(f"jointspan: error: {exc}", file=sys.stderr)
        return 2
    errors = []
    try:
        COMMANDS[args.command](args, errors)
    except FormatError as exc:
        errors.append(("-", f"{type(exc).__name__}: {exc}"))
    except OSError as exc:
        print(f"jointspan: error: {exc}", file=sys.stderr)
        return 2
    for index, message in errors:
        print(f"sentence {index}: {message}", file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
