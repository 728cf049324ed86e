"""Collapse of finite antichains to similarity types.

The collapse of a diagonal antichain compresses its meet closure onto
consecutive levels: the closure element of k-th smallest length lands on
level k, keeping only the bits read at closure lengths.  The result is
the minimal-height prefix-closed tree strongly embedded onto the closure,
and serves as the canonical representative (similarity type) of the set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import (
    NodeError,
    comparable,
    meet,
    meet_closure,
    node_key,
    profile,
    sorted_nodes,
)
from .viporders import LevelOrder

TYPE_ID_SEPARATOR = ";"


@dataclass(frozen=True)
class SimilarityTree:
    """A finite prefix-closed tree, identified by its sorted leaf list."""

    leaves: tuple

    def __post_init__(self):
        object.__setattr__(self, "leaves", sorted_nodes(self.leaves))

    @classmethod
    def from_leaves(cls, leaves):
        return cls(tuple(leaves))

    @classmethod
    def from_type_id(cls, type_id):
        if type_id == "":
            return cls(("",))
        parts = type_id.split(TYPE_ID_SEPARATOR)
        return cls(tuple("" if p == "-" else p for p in parts))

    @property
    def type_id(self):
        return TYPE_ID_SEPARATOR.join(
            "-" if leaf == "" else leaf for leaf in self.leaves
        )

    @property
    def nodes(self):
        cache = getattr(self, "_nodes", None)
        if cache is None:
            cache = sorted_nodes(
                leaf[:i] for leaf in self.leaves for i in range(len(leaf) + 1)
            )
            object.__setattr__(self, "_nodes", cache)
        return cache

    @property
    def levels(self):
        cache = getattr(self, "_levels", None)
        if cache is None:
            by_len = {}
            for u in self.nodes:
                by_len.setdefault(len(u), []).append(u)
            cache = tuple(tuple(by_len[n]) for n in sorted(by_len))
            object.__setattr__(self, "_levels", cache)
        return cache

    def level_of_length(self, length):
        for level in self.levels:
            if len(level[0]) == length:
                return level
        raise NodeError(f"no level of length {length}")

    @property
    def height(self):
        return max(len(leaf) for leaf in self.leaves) + 1

    def level_sizes(self):
        return tuple(len(level) for level in self.levels)

    def is_m_type(self):
        """Leaves strongly diagonal with closure hitting every level once."""
        m = len(self.leaves)
        if not profile(self.leaves).strongly_diagonal:
            return False
        closure = meet_closure(self.leaves)
        return sorted(len(c) for c in closure) == list(range(2 * m - 1))

    def is_sparse_type(self):
        return self.is_m_type() and profile(self.leaves).sparse


@dataclass(frozen=True)
class EmbeddingWitness:
    """A finite map of nodes, recorded as collapsed node -> original node."""

    pairs: dict

    def __hash__(self):
        return hash(tuple(sorted(self.pairs.items())))


def is_strong_embedding(witness):
    """Check the three strong-embedding clauses on all pairs of the domain.

    Extension and relative level order must be preserved in both
    directions, and the image of a longer node must pass over the image
    of a shorter one with the original passing number.
    """
    pairs = witness.pairs
    items = list(pairs.items())
    if len(set(pairs.values())) != len(items):
        return False
    for s, es in items:
        for t, et in items:
            if s == t:
                continue
            if t.startswith(s) != et.startswith(es):
                return False
            if (len(s) < len(t)) != (len(es) < len(et)):
                return False
            if (len(s) == len(t)) != (len(es) == len(et)):
                return False
            if len(s) < len(t) and et[len(es)] != t[len(s)]:
                return False
    return True


def clp(nodes):
    """Collapse a diagonal antichain to its similarity type.

    Returns the similarity tree together with the witness sending each
    collapsed closure node back to the closure element it came from.  The
    closure element of k-th smallest length lands on level k; its
    collapsed word reads off the original bits at closure lengths only.
    """
    nodes = sorted_nodes(nodes)
    if not profile(nodes).diagonal:
        raise NodeError("collapse is defined for diagonal antichains only")
    closure = sorted(meet_closure(nodes), key=len)
    lengths = [len(c) for c in closure]
    collapsed = {
        c: "".join(c[lengths[j]] for j in range(k) if lengths[j] < len(c))
        for k, c in enumerate(closure)
    }
    witness = EmbeddingWitness({collapsed[c]: c for c in closure})
    tree = SimilarityTree.from_leaves(collapsed[a] for a in nodes)
    return tree, witness


def induced_order(nodes, ambient):
    """Transport an ambient level order onto the collapse of a set.

    Each collapsed node corresponds, through the witness, to a prefix of
    an original closure element cut at the ambient length of its level;
    levels of the collapsed tree are sorted by comparing those prefixes
    in the ambient order.  The ambient order must cover every prefix the
    transport needs (levels with a single node need no comparison).
    """
    tree, witness = clp(nodes)
    originals = witness.pairs
    closure_by_level = {len(c): orig for c, orig in originals.items()}
    ordered_levels = []
    for level in tree.levels:
        k = len(level[0])
        ambient_length = len(closure_by_level[k])
        if len(level) == 1:
            ordered_levels.append(level)
            continue

        def transported(u, _k=k, _len=ambient_length):
            for c, orig in originals.items():
                if c.startswith(u) and len(c) >= _k:
                    return orig[:_len]
            raise NodeError(f"no closure extension for {u!r}")

        ordered_levels.append(
            tuple(sorted(level, key=lambda u: ambient.key(transported(u))))
        )
    return LevelOrder(tuple(ordered_levels))


def same_ordered_type(x, y, ambient):
    """Whether two sets collapse to the same tree with the same order."""
    tree_x, _ = clp(x)
    tree_y, _ = clp(y)
    if tree_x.leaves != tree_y.leaves:
        return False
    return induced_order(x, ambient) == induced_order(y, ambient)
