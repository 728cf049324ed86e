"""Level orders and the vip constraint system.

A level order on a finite tree lists each level (nodes of one length) in
order; concatenating the levels by increasing length gives a total order
extending the length order.  The vip conditions single out, per level, the
member of a designated transverse set as least and sort the rest of the
level by how early they branch away from it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .nodes import (
    NodeError,
    is_diagonal,
    is_transverse,
    meet,
    meet_closure,
    node_key,
    nodes_up_to,
    sorted_nodes,
)


@dataclass(frozen=True)
class LevelOrder:
    """An explicit total order on a finite carrier, level by level."""

    levels: tuple

    def __post_init__(self):
        seen = set()
        last_len = -1
        for level in self.levels:
            if not level:
                raise NodeError("empty level in level order")
            lengths = {len(u) for u in level}
            if len(lengths) != 1:
                raise NodeError(f"mixed lengths in level {level!r}")
            (length,) = lengths
            if length <= last_len:
                raise NodeError("levels not in increasing length order")
            last_len = length
            for u in level:
                if u in seen:
                    raise NodeError(f"duplicate node {u!r} in level order")
                seen.add(u)

    @classmethod
    def from_levels(cls, levels):
        return cls(tuple(tuple(level) for level in levels))

    @classmethod
    def lenlex(cls, depth):
        """Length-then-lex order on the full binary tree of the given depth."""
        return cls.lenlex_over(nodes_up_to(depth))

    @classmethod
    def lenlex_over(cls, nodes):
        """Length-then-lex order on an arbitrary carrier."""
        by_len = {}
        for u in sorted_nodes(nodes):
            by_len.setdefault(len(u), []).append(u)
        return cls(tuple(tuple(by_len[n]) for n in sorted(by_len)))

    def key(self, node):
        """Sort key of a carrier node; raises NodeError off the carrier."""
        pos = self.positions().get(node)
        if pos is None:
            raise NodeError(f"node {node!r} not covered by the level order")
        return pos

    def positions(self):
        cache = getattr(self, "_positions", None)
        if cache is None:
            cache = {}
            for level in self.levels:
                for i, u in enumerate(level):
                    cache[u] = (len(u), i)
            object.__setattr__(self, "_positions", cache)
        return cache

    def nodes(self):
        return tuple(u for level in self.levels for u in level)

    def before(self, s, t):
        return self.key(s) < self.key(t)

    def to_json(self):
        return [list(level) for level in self.levels]


class PreVipOrder:
    """Lazy pre-vip comparator over the full binary tree.

    Built from a transverse designated set: on each level the designated
    node (if any) comes first, the rest are sorted by the length of their
    meet with it (earlier branch-off first) and ties fall back to lex
    order.  Levels without a designated node are in lex order.  Used as
    the ambient order for classification scans, where materializing the
    relevant levels is impossible.
    """

    def __init__(self, designated):
        designated = sorted_nodes(designated)
        if not is_transverse(designated):
            raise NodeError("designated set must be transverse")
        self._by_len = {len(d): d for d in designated}

    def key(self, node):
        d = self._by_len.get(len(node))
        if d is None or node == d:
            rank, branch = (0, 0) if node == d else (1, 0)
            return (len(node), 0 if node == d else 1, 0, node)
        return (len(node), 1, len(meet(d, node)), node)

    def before(self, s, t):
        return self.key(s) < self.key(t)


def make_pre_vip(base, designated):
    """Adjust a level order so the designated nodes become vip.

    On each level holding a designated node d, d moves first and the rest
    of the level is sorted by the length of its meet with d, ties broken
    by the base order.  The designated set must be transverse.
    """
    designated = sorted_nodes(designated)
    if not is_transverse(designated):
        raise NodeError("designated set must be transverse")
    by_len = {len(d): d for d in designated}
    out = []
    for level in base.levels:
        d = by_len.get(len(level[0]))
        if d is None:
            out.append(tuple(level))
            continue
        if d not in level:
            raise NodeError(f"designated node {d!r} missing from its level")
        rest = sorted(
            (u for u in level if u != d),
            key=lambda u: (len(meet(d, u)), base.key(u)),
        )
        out.append((d, *rest))
    return LevelOrder(tuple(out))


def is_pre_vip(tree, designated, order):
    """Check the pre-vip conditions on a similarity tree.

    For every designated node d: d is first on its level, and members of
    the level that branch off d earlier precede those that branch off
    later.
    """
    designated = sorted_nodes(designated)
    if not is_transverse(designated):
        return False
    node_set = set(tree.nodes)
    for d in designated:
        if d not in node_set:
            raise NodeError(f"designated node {d!r} not in the tree")
        level = tree.level_of_length(len(d))
        keys = {u: order.key(u) for u in level}
        if any(keys[u] < keys[d] for u in level if u != d):
            return False
        for u in level:
            for v in level:
                if u == d or v == d or u == v:
                    continue
                if len(meet(d, u)) < len(meet(d, v)) and not keys[u] < keys[v]:
                    return False
    return True


def _clause_two_pairs(leaves, closure):
    """Pairs (u, v) of distinct set members forced u-before-v by clause 2:
    equal meets with some closure node d, passing 0 vs 1 over d."""
    for d in closure:
        for u in leaves:
            for v in leaves:
                if u == v or u == d or v == d:
                    continue
                if len(u) <= len(d) or len(v) <= len(d):
                    continue
                mu = meet(d, u)
                if mu == d or mu != meet(d, v):
                    continue
                if u[len(d)] < v[len(d)]:
                    yield u, v


def is_vip(tree, diagonal_set, order):
    """Check the full vip conditions for a diagonal set on a tree.

    Pre-vip must hold for the meet closure, and whenever two set members
    branch away from a closure node at the same point, the one passing 0
    over it must come first.
    """
    diagonal_set = sorted_nodes(diagonal_set)
    if not is_diagonal(diagonal_set):
        raise NodeError("vip conditions need a diagonal set")
    closure = meet_closure(diagonal_set)
    if not is_pre_vip(tree, closure, order):
        return False
    for u, v in _clause_two_pairs(diagonal_set, closure):
        if not order.key(u) < order.key(v):
            return False
    return True


def clause_two_compatible(leaves):
    """Whether the passing-number clause can coexist with the length order.

    Set members have pairwise distinct lengths, so any level order puts
    them in length order; the clause is satisfiable exactly when every
    forced pair is already increasing in length.
    """
    leaves = sorted_nodes(leaves)
    closure = meet_closure(leaves)
    return all(len(u) < len(v) for u, v in _clause_two_pairs(leaves, closure))


def _level_orderings(level, closure_node):
    """All orderings of one level consistent with the vip constraints."""
    rest = [u for u in level if u != closure_node]
    buckets = {}
    for u in rest:
        buckets.setdefault(len(meet(closure_node, u)), []).append(u)
    chunks = [sorted(buckets[g], key=node_key) for g in sorted(buckets)]
    for parts in itertools.product(
        *(itertools.permutations(chunk) for chunk in chunks)
    ):
        yield (closure_node, *itertools.chain.from_iterable(parts))


def enumerate_vip_orders(tree):
    """All vip level orders of an m-type, in a canonical order.

    The leaves of the tree must form a strongly diagonal set occupying
    one closure node per level.  The result may be empty when the
    passing-number clause conflicts with the length order.
    """
    leaves = tree.leaves
    if not tree.is_m_type():
        raise NodeError("vip enumeration needs an m-type")
    if not clause_two_compatible(leaves):
        return []
    closure_by_len = {len(c): c for c in meet_closure(leaves)}
    per_level = [
        list(_level_orderings(level, closure_by_len[len(level[0])]))
        for level in tree.levels
    ]
    return [
        LevelOrder(tuple(combo)) for combo in itertools.product(*per_level)
    ]


def count_vip_orders(tree):
    """Number of vip level orders of an m-type, without materializing them."""
    leaves = tree.leaves
    if not tree.is_m_type():
        raise NodeError("vip counting needs an m-type")
    if not clause_two_compatible(leaves):
        return 0
    closure_by_len = {len(c): c for c in meet_closure(leaves)}
    total = 1
    for level in tree.levels:
        c = closure_by_len[len(level[0])]
        buckets = {}
        for u in level:
            if u == c:
                continue
            g = len(meet(c, u))
            buckets[g] = buckets.get(g, 0) + 1
        for size in buckets.values():
            total *= math.factorial(size)
    return total
