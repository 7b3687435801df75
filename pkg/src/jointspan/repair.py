"""Seeded, label-preserving arc re-pointing that makes a pair compatible.

Constituents are processed bottom-up.  Inside a constituent every child
phrase is already compatible, so it exposes exactly one external token (its
representative).  If several representatives head out of the constituent,
one is drawn uniformly as the constituent head and the others are attached
to it.  The draw prefers representatives whose head chain reaches the root,
and avoids ones whose chain leads back into the constituent, since attaching
to one of those would close a new cycle.
Representatives caught in a cycle of child phrases are attached to the same
head; when no representative leaves the constituent at all, a cycle member is
drawn and detached to the virtual root; ancestors attach it elsewhere in
preference to moving an untouched arc.
Labels are never touched.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import JointSpanError
from .joint_span import validate_pair
from .rng import DEFAULT_SEED, SplitMix64, pair_seed
from .tree import ConstituencyTree, DependencyGraph, Node, Token


@dataclass(frozen=True)
class ArcChange:
    token: int
    old_head: int
    new_head: int


@dataclass(frozen=True)
class RepairLog:
    changed_arcs: tuple
    violations_fixed: int
    seed: int


@dataclass
class CorpusRepairStats:
    total: int = 0
    non_compliant: int = 0
    arcs_changed: int = 0
    errors: list = field(default_factory=list)  # (sentence index, exception)

    @property
    def fraction_repaired(self) -> float:
        return self.non_compliant / self.total if self.total else 0.0


def repair_pair(tree: ConstituencyTree, graph: DependencyGraph,
                seed: int = DEFAULT_SEED) -> tuple:
    """Return ``(repaired_graph, RepairLog)``; a compliant pair is a fixed point."""
    report = validate_pair(tree, graph)
    if report.compliant:
        return graph, RepairLog((), 0, seed)
    rng = SplitMix64(seed)
    heads = list(graph.heads)
    original = list(graph.heads)
    done = set()
    detached = set()  # cycle members moved to the virtual root so far
    for node in tree.postorder():
        if node.interval in done:
            continue  # upper links of a unary chain share the interval
        done.add(node.interval)
        _repair_span(node, heads, rng, detached)
    changes = tuple(ArcChange(t, original[t - 1], heads[t - 1])
                    for t in range(1, graph.n + 1) if heads[t - 1] != original[t - 1])
    return graph.with_heads(heads), RepairLog(changes, len(report.violations), seed)


def _repair_span(node: Node, heads: list, rng: SplitMix64, detached: set) -> None:
    lo, hi = node.lo, node.hi
    unit_of = {}
    reps = []
    for u, child in enumerate(node.children):
        if isinstance(child, Token):
            reps.append(child.index)
            unit_of[child.index] = u
        else:
            # children are already repaired: exactly one token leaves them
            inside = [t for t in range(child.lo, child.hi + 1)
                      if not child.lo <= heads[t - 1] <= child.hi]
            assert len(inside) == 1, (child.interval, inside)
            reps.append(inside[0])
            for t in range(child.lo, child.hi + 1):
                unit_of[t] = u
    OUT = -1
    target = [unit_of[heads[r - 1]] if lo <= heads[r - 1] <= hi else OUT for r in reps]
    exits = [r for r, tgt in zip(reps, target) if tgt == OUT]

    cycle_reps = sorted(reps[u] for u in _cycle_units(target))

    if exits:
        if len(exits) > 1:
            # an exit whose chain comes back into the span would close a cycle
            # through its new dependents; draw among the best-ranked exits
            kinds = [_exit_kind(t, lo, hi, heads) for t in exits]
            safe = [t for t, k in zip(exits, kinds) if k == min(kinds)]
            # keep an original arc rather than a detached cycle member's
            safe = [t for t in safe if t not in detached] or safe
            head = safe[rng.below(len(safe))] if len(safe) > 1 else safe[0]
        else:
            head = exits[0]
        movers = [t for t in exits if t != head] + cycle_reps
    else:
        head = cycle_reps[rng.below(len(cycle_reps))] if len(cycle_reps) > 1 else cycle_reps[0]
        heads[head - 1] = 0
        detached.add(head)
        movers = [t for t in cycle_reps if t != head]
    for t in movers:
        heads[t - 1] = head


def _exit_kind(token: int, lo: int, hi: int, heads: list) -> int:
    """Where the head chain above ``token`` ends: 0 at the root, 1 in a cycle
    outside ``[lo, hi]``, 2 back inside ``[lo, hi]``."""
    seen = set()
    t = heads[token - 1]
    while t != 0:
        if lo <= t <= hi:
            return 2
        if t in seen:
            return 1
        seen.add(t)
        t = heads[t - 1]
    return 0


def _cycle_units(target) -> list:
    """Units lying on a cycle of the unit graph (not merely leading into one)."""
    state = [0] * len(target)  # 0 unseen, 1 on current walk, 2 finished
    members = []
    for u in range(len(target)):
        path = []
        v = u
        while v != -1 and state[v] == 0:
            state[v] = 1
            path.append(v)
            v = target[v]
        if v != -1 and state[v] == 1:
            members.extend(path[path.index(v):])
        for p in path:
            state[p] = 2
    return members


def repair_corpus(pairs, seed: int = DEFAULT_SEED) -> tuple:
    """Repair every pair with seed ``seed ^ index``; returns (pairs, stats).

    Pairs that raise are passed through unchanged and recorded in
    ``stats.errors`` with their index.
    """
    stats = CorpusRepairStats()
    out = []
    for i, (tree, graph) in enumerate(pairs):
        stats.total += 1
        try:
            repaired, log = repair_pair(tree, graph, pair_seed(seed, i))
        except JointSpanError as exc:
            stats.errors.append((i, exc))
            out.append((tree, graph))
            continue
        if log.changed_arcs:
            stats.non_compliant += 1
        stats.arcs_changed += len(log.changed_arcs)
        out.append((tree, repaired))
    return out, stats
