"""Enumeration of m-types and the critical-value census.

Types are enumerated leaf-set-first: a length skeleton (an alternating
permutation recording leaf lengths and consecutive-meet lengths) fixes the
closure tree, and the remaining passing bits range over the assignments
allowed by strong diagonality.  Sparse types are the all-zero assignments,
one per skeleton, so their count is the tangent number.

The per-type number of vip orders depends only on the skeleton (the level
classes and their branch-off points are length data); this is exploited
for the large censuses and cross-checked against the generic order
enumeration in the tests.
"""

from __future__ import annotations

import itertools
import math
import multiprocessing
from dataclasses import dataclass

from .collapse import SimilarityTree
from .nodes import NodeError, meet_closure, profile, sorted_nodes
from .viporders import count_vip_orders


def tangent(n):
    """The n-th tangent number: alternating permutations of 2n-1 points."""
    if n < 1:
        raise NodeError("tangent numbers start at index 1")
    values = [0, 1]
    for k in range(2, n + 1):
        total = 0
        for i in range(1, k):
            total += math.comb(2 * k - 2, 2 * i - 1) * values[i] * values[k - i]
        values.append(total)
    return values[n]


@dataclass(frozen=True)
class AltPerm:
    """An alternating permutation of {0..2m-2}: down-up from the start."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        v = self.values
        n = len(v)
        if n % 2 == 0 or sorted(v) != list(range(n)):
            raise NodeError(f"not a permutation of an odd range: {v}")
        for i in range(n - 1):
            if (i % 2 == 0) != (v[i] > v[i + 1]):
                raise NodeError(f"not alternating: {v}")

    @property
    def arity(self):
        return (len(self.values) + 1) // 2


def alternating_permutations(m):
    """All alternating permutations of {0..2m-2}, lexicographically."""
    n = 2 * m - 1
    if m < 1:
        raise NodeError("arity must be at least 1")
    if n == 1:
        yield (0,)
        return

    def extend(prefix, remaining):
        i = len(prefix) - 1
        if not remaining:
            yield tuple(prefix)
            return
        for v in sorted(remaining):
            if (i % 2 == 0 and v < prefix[-1]) or (i % 2 == 1 and v > prefix[-1]):
                prefix.append(v)
                yield from extend(prefix, remaining - {v})
                prefix.pop()

    for first in range(1, n):
        yield from extend([first], set(range(n)) - {first})


def perm_of_type(tree):
    """The length skeleton of a sparse type, read off its leaves.

    With leaves in lexicographic order, even positions carry leaf lengths
    and odd positions the lengths of consecutive meets.
    """
    if not tree.is_sparse_type():
        raise NodeError("length skeletons are defined for sparse types")
    leaves = sorted(tree.leaves)
    values = []
    for i, leaf in enumerate(leaves):
        values.append(len(leaf))
        if i + 1 < len(leaves):
            j = 0
            while j < min(len(leaf), len(leaves[i + 1])) and leaf[j] == leaves[i + 1][j]:
                j += 1
            values.append(j)
    return AltPerm(tuple(values))


def type_of_perm(perm):
    """The unique sparse type with a given length skeleton.

    The lexicographically first leaf is all zeros; each next leaf branches
    1 off the previous one at the recorded meet length and continues with
    zeros.
    """
    if not isinstance(perm, AltPerm):
        perm = AltPerm(tuple(perm))
    p = perm.values
    leaves = ["0" * p[0]]
    for i in range(perm.arity - 1):
        prev = leaves[-1]
        stem = prev[: p[2 * i + 1]] + "1"
        leaves.append(stem + "0" * (p[2 * i + 2] - len(stem)))
    return SimilarityTree.from_leaves(leaves)


def level_sizes(nodes):
    """Level cardinalities of the collapse, one count per closure length.

    The set must be an m-element diagonal subset of the tree of height
    2m-1 whose closure hits every length below 2m-1; then the collapse is
    the identity and the sizes are plain prefix counts.
    """
    nodes = sorted_nodes(nodes)
    m = len(nodes)
    if not profile(nodes).diagonal:
        raise NodeError("level sizes need a diagonal set")
    closure = meet_closure(nodes)
    if sorted(len(c) for c in closure) != list(range(2 * m - 1)):
        raise NodeError("closure must occupy every length below 2m-1")
    return tuple(
        len({c[:i] for c in closure if len(c) >= i}) for i in range(2 * m - 1)
    )


def level_size_formulas(nodes):
    """Diagnostic: the level sizes next to both displayed closed forms.

    Returns one row per length i with the direct prefix count, the
    as-printed count i+1-2|{j<i: internal}|, the variant counting set
    members instead, and the top-down form (2m-1)-i-2|{j>=i: internal}|.
    """
    nodes = sorted_nodes(nodes)
    direct = level_sizes(nodes)
    closure = sorted(meet_closure(nodes), key=len)
    members = set(nodes)
    internal = [c not in members for c in closure]
    rows = []
    n = len(closure)
    for i in range(n):
        as_printed = i + 1 - 2 * sum(1 for j in range(i) if internal[j])
        member_variant = i + 1 - 2 * sum(1 for j in range(i) if not internal[j])
        top_down = n - i - 2 * sum(1 for j in range(i, n) if internal[j])
        rows.append(
            {
                "length": i,
                "direct": direct[i],
                "as_printed": as_printed,
                "member_count_variant": member_variant,
                "top_down": top_down,
            }
        )
    return rows


class _Skeleton:
    """Closure-tree structure determined by a length skeleton.

    Everything is indexed by closure-element length (0..2m-2): kind
    (leaf/meet), tree parent, leaf spans, and the derived free-bit
    structure used to enumerate passing-bit assignments.
    """

    __slots__ = (
        "m",
        "perm",
        "leaf_lens",
        "meet_lens",
        "is_leaf",
        "parent",
        "span",
        "hang",
        "vip_count",
        "groups",
        "free_positions",
    )

    def __init__(self, perm):
        p = tuple(perm)
        self.perm = p
        m = (len(p) + 1) // 2
        self.m = m
        n = 2 * m - 1
        self.leaf_lens = [p[2 * i] for i in range(m)]
        self.meet_lens = [p[2 * i + 1] for i in range(m - 1)]
        self.is_leaf = [False] * n
        for length in self.leaf_lens:
            self.is_leaf[length] = True

        # Tree parent of each closure element: for leaf i it is the longer
        # of its neighbouring consecutive meets; for a meet it is the
        # longer of the nearest shorter meets on either side.
        parent = [-1] * n
        for i in range(m):
            cands = []
            if i > 0:
                cands.append(self.meet_lens[i - 1])
            if i < m - 1:
                cands.append(self.meet_lens[i])
            parent[self.leaf_lens[i]] = max(cands, default=-1)
        for k in range(m - 1):
            v = self.meet_lens[k]
            best = -1
            for j in range(k - 1, -1, -1):
                if self.meet_lens[j] < v:
                    best = max(best, self.meet_lens[j])
                    break
            for j in range(k + 1, m - 1):
                if self.meet_lens[j] < v:
                    best = max(best, self.meet_lens[j])
                    break
            parent[v] = best
        self.parent = parent

        # Leaf interval (in lex position) covered by each element.
        span = [None] * n
        for i in range(m):
            span[self.leaf_lens[i]] = (i, i)
        for k in range(m - 1):
            lo, hi = k, k + 1
            v = self.meet_lens[k]
            while lo - 1 >= 0 and self.meet_lens[lo - 1] > v:
                lo -= 1
            while hi < m - 1 and self.meet_lens[hi] > v:
                hi += 1
            span[v] = (lo, hi)
        self.span = span

        # Side on which each non-root element hangs off its parent meet.
        hang = [None] * n
        for length in range(n):
            par = parent[length]
            if par < 0:
                continue
            k = self.meet_lens.index(par)
            hang[length] = "0" if span[length][1] <= k else "1"
        self.hang = hang

        self.vip_count = self._vip_count()
        self.free_positions, self.groups = self._free_structure()

    def _lca(self, a, b):
        (alo, ahi), (blo, bhi) = self.span[a], self.span[b]
        if alo >= blo and ahi <= bhi:
            return b
        if blo >= alo and bhi <= ahi:
            return a
        lo, hi = min(alo, blo), max(ahi, bhi)
        return min(self.meet_lens[k] for k in range(lo, hi))

    def _vip_count(self):
        """Product over levels of factorials of branch-off classes.

        The level-i nodes of any type over this skeleton are the closure
        elements crossing level i (length >= i, parent below i); classes
        other than the level's own closure element are bucketed by where
        they branch off it.
        """
        n = 2 * self.m - 1
        total = 1
        for i in range(n):
            buckets = {}
            for length in range(n):
                if length >= i and self.parent[length] < i and length != i:
                    g = self._lca(length, i)
                    buckets[g] = buckets.get(g, 0) + 1
            for size in buckets.values():
                total *= math.factorial(size)
        return total

    def level_sizes(self):
        n = 2 * self.m - 1
        return tuple(
            sum(1 for length in range(n) if length >= i and self.parent[length] < i)
            for i in range(n)
        )

    def _free_structure(self):
        """Free passing-bit positions and their constraint groups.

        A position (a, h) is free when h sits strictly between a's parent
        and a and the closure element of length h is a leaf.  Positions
        sharing the observed leaf d and the branch point with d form a
        group; within a group, an assignment is consistent with the
        length order exactly when no leaf passing 1 over d is shorter
        than a leaf passing 0.
        """
        n = 2 * self.m - 1
        free_positions = []
        group_map = {}
        for a in range(n):
            for h in range(self.parent[a] + 1, a):
                if not self.is_leaf[h]:
                    continue
                g = self._lca(h, a)
                idx = len(free_positions)
                free_positions.append((a, h))
                lo, hi = self.span[a]
                covered = [self.leaf_lens[i] for i in range(lo, hi + 1)]
                group_map.setdefault((h, g), []).append(
                    (idx, min(covered), max(covered))
                )
        groups = []
        for key in sorted(group_map):
            classes = group_map[key]
            assignments = []
            for bits in itertools.product((0, 1), repeat=len(classes)):
                max0 = max(
                    (classes[i][2] for i in range(len(classes)) if bits[i] == 0),
                    default=-1,
                )
                min1 = min(
                    (classes[i][1] for i in range(len(classes)) if bits[i] == 1),
                    default=n,
                )
                assignments.append((bits, max0 < min1))
            groups.append(([c[0] for c in classes], assignments))
        return free_positions, groups

    def assignments(self):
        """All passing-bit assignments with their length-order consistency.

        Yields (bits, compatible) where bits maps free-position index to
        a bit.  One assignment per type over this skeleton; the all-zero
        assignment is the sparse one.
        """
        if not self.groups:
            yield {}, True
            return
        index_lists = [g[0] for g in self.groups]
        for choice in itertools.product(*(g[1] for g in self.groups)):
            bits = {}
            ok = True
            for (indices, _), (assignment, valid) in zip(self.groups, choice):
                if not valid:
                    ok = False
                for idx, bit in zip(indices, assignment):
                    bits[idx] = bit
            yield bits, ok

    def count_types(self):
        """(#types, #length-order-consistent types) over this skeleton."""
        total = 1
        consistent = 1
        for _, assignments in self.groups:
            total *= len(assignments)
            consistent *= sum(1 for _, valid in assignments if valid)
        return total, consistent

    def build_leaves(self, bits):
        """Concrete leaf words for one passing-bit assignment."""
        n = 2 * self.m - 1
        pos_bit = {
            (a, h): str(bits.get(idx, 0))
            for idx, (a, h) in enumerate(self.free_positions)
        }
        words = [None] * n
        for length in sorted(range(n), key=lambda L: (self.parent[L], L)):
            par = self.parent[length]
            stem = "" if par < 0 else words[par] + self.hang[length]
            tail = "".join(
                pos_bit.get((length, h), "0") for h in range(len(stem), length)
            )
            words[length] = stem + tail
        return tuple(words[L] for L in sorted(self.leaf_lens))


def enumerate_types(m, sparse_only=False):
    """All m-types (or sparse m-types), canonically ordered by type id."""
    trees = []
    for perm in alternating_permutations(m):
        skeleton = _Skeleton(perm)
        if sparse_only:
            trees.append(SimilarityTree.from_leaves(skeleton.build_leaves({})))
            continue
        for bits, _ in skeleton.assignments():
            trees.append(SimilarityTree.from_leaves(skeleton.build_leaves(bits)))
    trees.sort(key=lambda t: t.type_id)
    return trees


@dataclass(frozen=True)
class BoundsRecord:
    """Closed-form bounds evaluated against a census."""

    m: int
    larson_lower: int
    upper: int
    upper_intro_variant: int
    lower_ok: bool
    upper_ok: bool
    upper_intro_ok: bool
    per_type_ok: bool | None
    per_type_failures: tuple

    def all_ok(self):
        checks = [self.lower_ok, self.upper_ok, self.upper_intro_ok]
        if self.per_type_ok is not None:
            checks.append(self.per_type_ok)
        return all(checks)

    def to_json(self):
        return {
            "m": self.m,
            "larson_lower": self.larson_lower,
            "upper": self.upper,
            "upper_intro_variant": self.upper_intro_variant,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
            "upper_intro_ok": self.upper_intro_ok,
            "per_type_ok": self.per_type_ok,
            "per_type_failures": list(self.per_type_failures),
        }


@dataclass(frozen=True)
class CensusReport:
    """Counts of types and vip types for one arity."""

    m: int
    type_count: int
    vip_count: int
    sparse_type_count: int
    sparse_vip_count: int
    per_type: dict | None
    bounds: BoundsRecord | None

    def to_json(self):
        return {
            "m": self.m,
            "r": self.type_count,
            "r_plus": self.vip_count,
            "t": self.sparse_type_count,
            "t_plus": self.sparse_vip_count,
            "per_type": self.per_type,
            "bounds": self.bounds.to_json() if self.bounds else None,
        }

    def tsv_row(self):
        return "\t".join(
            str(v)
            for v in (
                self.m,
                self.type_count,
                self.vip_count,
                self.sparse_type_count,
                self.sparse_vip_count,
            )
        )


def _census_chunk(args):
    perms, want_per_type = args
    r = r_plus = t = t_plus = 0
    per_type = {} if want_per_type else None
    for perm in perms:
        skeleton = _Skeleton(perm)
        v = skeleton.vip_count
        t += 1
        t_plus += v
        if want_per_type:
            for bits, compatible in skeleton.assignments():
                r += 1
                count = v if compatible else 0
                r_plus += count
                tree = SimilarityTree.from_leaves(skeleton.build_leaves(bits))
                per_type[tree.type_id] = count
        else:
            for _, compatible in skeleton.assignments():
                r += 1
                if compatible:
                    r_plus += v
    return r, r_plus, t, t_plus, per_type


def census(m, include_per_type=None, jobs=1, with_bounds=True):
    """Full census for one arity.

    Per-type tallies are collected by default up to m = 4; at m = 5 the
    four totals are still exact but the tally dict (4.4M entries) is
    skipped unless explicitly requested.
    """
    if m < 1:
        raise NodeError("census arity must be at least 1")
    if include_per_type is None:
        include_per_type = m <= 4
    perms = list(alternating_permutations(m))
    if jobs and jobs > 1 and len(perms) >= 64:
        chunks = [
            (perms[i::jobs], include_per_type) for i in range(jobs)
        ]
        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_census_chunk, chunks)
    else:
        results = [_census_chunk((perms, include_per_type))]
    r = sum(x[0] for x in results)
    r_plus = sum(x[1] for x in results)
    t = sum(x[2] for x in results)
    t_plus = sum(x[3] for x in results)
    per_type = None
    if include_per_type:
        per_type = {}
        for x in results:
            per_type.update(x[4])
        per_type = dict(sorted(per_type.items()))
    report = CensusReport(m, r, r_plus, t, t_plus, per_type, None)
    if with_bounds:
        report = CensusReport(
            m, r, r_plus, t, t_plus, per_type, bounds_check(report)
        )
    return report


def bounds_check(report):
    """Evaluate the closed-form bounds against a census report.

    Checks the Larson lower bound and both stated upper-bound products
    (the in-text variant is the tighter one; both are asserted).  When
    per-type tallies are present, each tally is also checked against the
    per-type product of factorials of level sizes less one.
    """
    m = report.m
    t = report.sparse_type_count
    t_plus = report.sparse_vip_count
    prod_fact = math.prod(math.factorial(i) for i in range(m))
    lower = t + 2 ** (m - 1) * (-1 + prod_fact)
    upper = t * math.factorial(m - 1) * math.prod(
        math.factorial(i) ** 2 for i in range(m)
    )
    upper_intro = t * math.factorial(m - 1) * math.prod(
        math.factorial(i) ** 2 for i in range(m - 1)
    )
    per_type_ok = None
    failures = []
    if report.per_type is not None:
        per_type_ok = True
        for type_id, count in report.per_type.items():
            tree = SimilarityTree.from_type_id(type_id)
            sizes = tree.level_sizes()
            bound = math.prod(
                math.factorial(sizes[i] - 1) for i in range(1, 2 * m - 2)
            ) if m >= 2 else 1
            if count > bound:
                per_type_ok = False
                failures.append(type_id)
    if m == 1:
        lower = t
    return BoundsRecord(
        m=m,
        larson_lower=lower,
        upper=upper,
        upper_intro_variant=upper_intro,
        lower_ok=lower <= t_plus,
        upper_ok=t_plus <= upper,
        upper_intro_ok=t_plus <= upper_intro,
        per_type_ok=per_type_ok,
        per_type_failures=tuple(failures[:5]),
    )


def skeleton_vip_count(perm):
    """Vip-order count shared by every type over one skeleton."""
    return _Skeleton(perm).vip_count


def skeleton_level_sizes(perm):
    return _Skeleton(perm).level_sizes()


def generic_vip_count(tree):
    """Per-type vip count via the generic order machinery (for checks)."""
    return count_vip_orders(tree)
