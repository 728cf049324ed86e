"""Binary words and the basic tree orders.

A node is a finite binary word represented as a ``str`` of ``'0'``/``'1'``
characters; the empty string is the root.  All operations here are pure
functions on such strings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

# Ordering results for q_cmp.
LT = -1
EQ = 0
GT = 1

_BITS = frozenset("01")


class NodeError(ValueError):
    """Raised when a precondition on node arguments is violated."""


def check_node(s):
    """Validate a node string, returning it unchanged."""
    if not isinstance(s, str) or not set(s) <= _BITS:
        raise NodeError(f"not a binary word: {s!r}")
    return s


def node_key(s):
    """Canonical sort key: length, then bits numerically."""
    return (len(s), s)


def sorted_nodes(nodes):
    """Nodes in canonical order (length, then bits), deduplicated."""
    return tuple(sorted(set(nodes), key=node_key))


def meet(s, t):
    """Longest common prefix of two nodes."""
    i = 0
    n = min(len(s), len(t))
    while i < n and s[i] == t[i]:
        i += 1
    return s[:i]


def is_prefix(s, t):
    """True iff s is an initial segment of t (possibly s == t)."""
    return t.startswith(s)


def comparable(s, t):
    """True iff one node end-extends the other."""
    return t.startswith(s) or s.startswith(t)


def lex_lt(s, t):
    """Strict lexicographic order on incomparable nodes.

    True iff s takes the 0-branch and t the 1-branch at their meet.
    """
    if comparable(s, t):
        raise NodeError(f"lex order undefined on comparable nodes {s!r}, {t!r}")
    m = len(meet(s, t))
    return s[m] == "0"


def q_cmp(s, t):
    """Compare two nodes in the dense linear order on the binary tree.

    Returns LT/EQ/GT.  s is below t exactly when t branches 0 inside s,
    s branches 1 inside t, or the two are incomparable with s
    lexicographically first.
    """
    if s == t:
        return EQ
    if s.startswith(t):
        return LT if s[len(t)] == "0" else GT
    if t.startswith(s):
        return LT if t[len(s)] == "1" else GT
    return LT if lex_lt(s, t) else GT


def passing_number(t, s):
    """The bit of the longer node t at the length of the shorter node s."""
    if len(s) >= len(t):
        raise NodeError(
            f"passing number needs lg(s) < lg(t); got {len(s)} >= {len(t)}"
        )
    return int(t[len(s)])


def meet_closure(nodes):
    """All pairwise meets of a node set (contains the set itself)."""
    nodes = list(nodes)
    out = set(nodes)
    for i, s in enumerate(nodes):
        for t in nodes[i + 1 :]:
            out.add(meet(s, t))
    return sorted_nodes(out)


def is_antichain(nodes):
    nodes = list(nodes)
    return all(
        not comparable(s, t)
        for i, s in enumerate(nodes)
        for t in nodes[i + 1 :]
    )


def is_transverse(nodes):
    nodes = list(nodes)
    return len({len(s) for s in nodes}) == len(set(nodes))


def is_diagonal(nodes):
    """Antichain whose meet closure is transverse."""
    return is_antichain(nodes) and is_transverse(meet_closure(nodes))


@dataclass(frozen=True)
class SetProfile:
    """Structural flags of a finite node set.

    sparse implies strongly_diagonal implies diagonal implies
    antichain and a transverse closure.
    """

    antichain: bool
    transverse: bool
    diagonal: bool
    strongly_diagonal: bool
    sparse: bool


def profile(nodes):
    """Compute all structural flags of a node set.

    Strong diagonality reads "no extension" as *proper* extension, so a
    passing number of 1 over a member of the antichain itself is allowed.
    """
    nodes = sorted_nodes(nodes)
    anti = is_antichain(nodes)
    trans = is_transverse(nodes)
    closure = meet_closure(nodes)
    diag = anti and is_transverse(closure)
    strong = diag
    sparse = diag
    if diag:
        members = set(nodes)
        for t in nodes:
            for s in closure:
                if s == t or len(s) >= len(t):
                    continue
                if t[len(s)] == "1" and not t.startswith(s):
                    sparse = False
                    if s not in members:
                        strong = False
        sparse = sparse and strong
    return SetProfile(anti, trans, diag, strong, sparse)


def nodes_of_length(n):
    """All binary words of length exactly n, lexicographically."""
    return ["".join(bits) for bits in itertools.product("01", repeat=n)]


def nodes_up_to(depth):
    """All binary words of length at most depth, in canonical order."""
    out = []
    for n in range(depth + 1):
        out.extend(nodes_of_length(n))
    return out


def density_witness(lower, upper):
    """A node strictly between two finite sets in the dense linear order.

    Every element of ``lower`` must be strictly below every element of
    ``upper``.  The witness is built bit by bit: it takes the 0-branch
    exactly when its prefix so far sits below some element of ``upper``
    (either equal to one, or an upper element branches 0 there), and the
    1-branch otherwise.  With both sets empty the root is returned.
    """
    lower = sorted_nodes(lower)
    upper = sorted_nodes(upper)
    for a in lower:
        for b in upper:
            if q_cmp(a, b) is not LT:
                raise NodeError(
                    f"bounds not separated: {a!r} is not below {b!r}"
                )
    all_nodes = lower + upper
    gamma = max((len(s) for s in all_nodes), default=-1) + 1
    upper_set = set(upper)
    zero_branches = {
        b[:i] for b in upper for i in range(len(b)) if b[i] == "0"
    }
    bits = []
    for _ in range(gamma):
        prefix = "".join(bits)
        bits.append("0" if prefix in upper_set or prefix in zero_branches else "1")
    return "".join(bits)
