"""The two diagonalization recursions and their verification predicates.

Both recursions send every domain node t to a chain of three fresh nodes
phi0(t) < phi1(t) < phi(t) drawn from a transverse supply: phi1 extends
phi0 followed by 1, phi extends phi1 followed by 0.  Meets of images are
then companion values, so the image is an antichain whose closure stays
inside the supply.  The sparse recursion processes nodes one at a time in
a fixed level order; the graph-coding one processes each level in two
passes (companions first, then the main values) and plants passing bits
so the main map preserves passing numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .collapse import clp
from .nodes import (
    NodeError,
    comparable,
    lex_lt,
    meet,
    meet_closure,
    node_key,
    nodes_up_to,
    profile,
    q_cmp,
    sorted_nodes,
)
from .viporders import LevelOrder


@dataclass
class GreedyTransverseRule:
    """Deterministic transverse node supply.

    Keeps a global next-free-length counter; every request pads its stem
    with zeros out to the counter (or the requested minimum length) and
    bumps it, so all outputs across one run have distinct lengths.
    """

    counter: int = 0
    emissions: list = field(default_factory=list)

    def extend(self, stem, min_length=0):
        target = max(self.counter, min_length, len(stem))
        out = stem + "0" * (target - len(stem))
        self.counter = target + 1
        self.emissions.append(out)
        return out


@dataclass(frozen=True)
class DiagMap:
    """A finite diagonalization with its companion maps."""

    kind: str
    domain: tuple
    phi: dict
    phi0: dict
    phi1: dict
    emissions: tuple

    @property
    def domain_depth(self):
        return max(len(t) for t in self.domain)

    def image(self):
        return sorted_nodes(self.phi.values())

    def interior(self):
        """Domain nodes with both children in the domain."""
        members = set(self.domain)
        return tuple(
            t for t in self.domain if t + "0" in members and t + "1" in members
        )

    def phi_hat(self, t):
        """Meet of the images of t's two children."""
        return meet(self.phi[t + "0"], self.phi[t + "1"])

    def to_json(self):
        pairs = lambda d: [[k, d[k]] for k in sorted(d, key=node_key)]
        return {
            "kind": self.kind,
            "domain_depth": self.domain_depth,
            "phi": pairs(self.phi),
            "phi0": pairs(self.phi0),
            "phi1": pairs(self.phi1),
        }

    def __hash__(self):
        return hash((self.kind, self.domain))


def _prepare_domain(domain_depth, domain):
    if domain is None:
        domain = nodes_up_to(domain_depth)
    domain = sorted_nodes(domain)
    members = set(domain)
    for t in domain:
        if t and t[:-1] not in members:
            raise NodeError(f"domain not prefix closed at {t!r}")
    return domain


def sparse_diagonalize(domain_depth, enum_order=None, rule=None, domain=None):
    """Diagonalize a finite prefix-closed domain onto a sparse image.

    Nodes are processed in the enumeration order (default length-lex).
    The root's first companion is the supply's minimal element; for
    t = s followed by bit b, the first companion extends the zero-padding
    of (b-companion of s) followed by b out to one past every image
    length so far.
    """
    domain = _prepare_domain(domain_depth, domain)
    if enum_order is None:
        enum_order = LevelOrder.lenlex_over(domain)
    if rule is None:
        rule = GreedyTransverseRule()
    order = sorted(domain, key=enum_order.key)
    phi0, phi1, phi = {}, {}, {}
    max_phi_len = -1
    for t in order:
        if t == "":
            phi0[t] = rule.extend("", 0)
        else:
            parent, bit = t[:-1], t[-1]
            gamma = max_phi_len + 1
            stem = (phi1 if bit == "1" else phi0)[parent] + bit
            stem = stem + "0" * (gamma - len(stem))
            phi0[t] = rule.extend(stem, gamma)
        phi1[t] = rule.extend(phi0[t] + "1")
        phi[t] = rule.extend(phi1[t] + "0")
        max_phi_len = max(max_phi_len, len(phi[t]))
    return DiagMap("sparse", domain, phi, phi0, phi1, tuple(rule.emissions))


def pnp_diagonalize(domain_depth, enum_order=None, rule=None, domain=None):
    """Diagonalize with passing numbers preserved by the main map.

    Levels are processed bottom up, companions for the whole level before
    any main value.  A first companion on level a extends its parent's
    companion by its last bit and is padded so that at each position
    holding a previous-level main value it repeats that last bit (the
    planted passing numbers), with zeros elsewhere.
    """
    domain = _prepare_domain(domain_depth, domain)
    if enum_order is None:
        enum_order = LevelOrder.lenlex_over(domain)
    if rule is None:
        rule = GreedyTransverseRule()
    by_level = {}
    for t in domain:
        by_level.setdefault(len(t), []).append(t)
    phi0, phi1, phi = {}, {}, {}
    prev_phi_lengths = set()
    for alpha in sorted(by_level):
        level = sorted(by_level[alpha], key=enum_order.key)
        previous = None
        for t in level:
            if alpha == 0:
                stem = ""
                gamma = 0
            else:
                parent, bit = t[:-1], t[-1]
                stem = (phi1 if bit == "1" else phi0)[parent] + bit
                if previous is None:
                    gamma = 1 + max(
                        (len(phi[s]) for s in phi if len(s) < alpha), default=-1
                    )
                else:
                    gamma = len(phi1[previous]) + 1
                filler = "".join(
                    bit if h in prev_phi_lengths else "0"
                    for h in range(len(stem), gamma)
                )
                stem = stem + filler
            phi0[t] = rule.extend(stem, gamma)
            phi1[t] = rule.extend(phi0[t] + "1")
            previous = t
        previous = None
        for t in level:
            if previous is None:
                gamma = 1 + max(len(phi1[s]) for s in phi1)
            else:
                gamma = len(phi[previous]) + 1
            stem = phi1[t] + "0"
            phi[t] = rule.extend(stem + "0" * (gamma - len(stem)), gamma)
            previous = t
        prev_phi_lengths = {len(phi[t]) for t in level}
    return DiagMap("pnp", domain, phi, phi0, phi1, tuple(rule.emissions))


def _mapping_of(f):
    return f.phi if isinstance(f, DiagMap) else dict(f)


def is_pnp(f):
    """Length order preserved and passing numbers carried to the images."""
    phi = _mapping_of(f)
    items = sorted(phi.items(), key=lambda kv: node_key(kv[0]))
    for s, fs in items:
        for t, ft in items:
            if len(s) >= len(t):
                continue
            if len(fs) >= len(ft):
                return False
            if ft[len(fs)] != t[len(s)]:
                return False
    return True


def is_polite(f, strongly_diagonal_only=False):
    """Check lex preservation, meet regularity, and meet length order.

    The restricted variant checks the clauses only on tuples forming
    strongly diagonal sets (and requires the map to preserve passing
    numbers), matching the weaker notion sufficient for collapses.
    """
    phi = _mapping_of(f)
    nodes = sorted(phi, key=node_key)
    if strongly_diagonal_only and not is_pnp(f):
        return False

    sd_cache = {}

    def strongly_diagonal(*points):
        key = frozenset(points)
        if key not in sd_cache:
            sd_cache[key] = profile(key).strongly_diagonal
        return sd_cache[key]

    for x, y in itertools.permutations(nodes, 2):
        if comparable(x, y):
            continue
        if strongly_diagonal_only and not strongly_diagonal(x, y):
            continue
        if lex_lt(x, y):
            fx, fy = phi[x], phi[y]
            if comparable(fx, fy) or not lex_lt(fx, fy):
                return False
    for x, u, v in itertools.permutations(nodes, 3):
        if not profile((x, u, v)).diagonal:
            continue
        if strongly_diagonal_only and not strongly_diagonal(x, u, v):
            continue
        if meet(x, u) == meet(x, v):
            if meet(phi[x], phi[u]) != meet(phi[x], phi[v]):
                return False
    for x, y, u, v in itertools.product(nodes, repeat=4):
        if strongly_diagonal_only and not strongly_diagonal(x, y, u, v):
            continue
        if len(meet(x, y)) < len(meet(u, v)):
            if not len(meet(phi[x], phi[y])) < len(meet(phi[u], phi[v])):
                return False
    return True


def has_level_harmony(f):
    """Check the interleaving of the child-meet map with the main map.

    The child-meet map must preserve extension and lex order, sit
    strictly below the main value, and its lengths must separate the
    main lengths level by level: main values of shorter nodes come below
    child-meets of longer ones, and child-meets come below main values
    across one level.  Nodes whose children leave the domain are skipped.
    """
    if not isinstance(f, DiagMap):
        raise NodeError("level harmony needs companion data (a DiagMap)")
    interior = f.interior()
    hat = {s: f.phi_hat(s) for s in interior}
    for s in interior:
        if not len(hat[s]) < len(f.phi[s]) or not f.phi[s].startswith(hat[s]):
            return False
    for s, t in itertools.permutations(interior, 2):
        if s != t and t.startswith(s):
            if not (hat[t].startswith(hat[s]) and len(hat[s]) < len(hat[t])):
                return False
        if not comparable(s, t) and lex_lt(s, t):
            hs, ht = hat[s], hat[t]
            if comparable(hs, ht) or not lex_lt(hs, ht):
                return False
    for s in f.domain:
        for t in interior:
            if len(s) < len(t) and not len(f.phi[s]) < len(hat[t]):
                return False
    for s in interior:
        for t in f.domain:
            if len(s) == len(t) and s != t and not len(hat[s]) < len(f.phi[t]):
                return False
    return True


@dataclass(frozen=True)
class ContractReport:
    """Itemized verdicts for the diagonalization contract."""

    kind: str
    items: tuple  # (name, passed, witness-or-None)

    def passed(self):
        return all(ok for _, ok, _ in self.items)

    def failures(self):
        return [(name, witness) for name, ok, witness in self.items if not ok]

    def to_json(self):
        return {
            "kind": self.kind,
            "passed": self.passed(),
            "items": [
                {"clause": name, "passed": ok, "witness": witness}
                for name, ok, witness in self.items
            ],
        }


def verify_diag_contract(f, subset_limit=3):
    """Audit a DiagMap against every clause of the diagonalization contract.

    Checks injectivity, order preservation, the image profile (sparse
    for the sparse recursion, strongly diagonal for the graph-coding
    one), closure containment in the supply, the meet-lift and
    meet-length clauses, and collapse preservation over the appropriate
    diagonal subsets up to the given size.
    """
    phi = f.phi
    nodes = sorted(phi, key=node_key)
    items = []

    injective = len(set(phi.values())) == len(phi)
    items.append(("injective", injective, None))

    witness = None
    for s, t in itertools.combinations(nodes, 2):
        if q_cmp(s, t) != q_cmp(phi[s], phi[t]):
            witness = (s, t)
            break
    items.append(("order_preserving", witness is None, witness))

    image = f.image()
    prof = profile(image)
    if f.kind == "sparse":
        items.append(("image_sparse_diagonal", prof.sparse, None))
    else:
        items.append(("image_strongly_diagonal", prof.strongly_diagonal, None))

    supply = set(phi.values()) | set(f.phi0.values()) | set(f.phi1.values())
    closure_ok = all(c in supply for c in meet_closure(image))
    items.append(("closure_in_supply", closure_ok, None))

    witness = None
    for x, u, v in itertools.combinations(nodes, 3):
        if not profile((x, u, v)).diagonal:
            continue
        for a, b, c in ((x, u, v), (u, x, v), (v, x, u)):
            if meet(a, b) == meet(a, c):
                if meet(phi[a], phi[b]) != meet(phi[a], phi[c]):
                    witness = (a, b, c)
                    break
        if witness:
            break
    items.append(("meet_lift", witness is None, witness))

    witness = None
    for x, y, u, v in itertools.product(nodes, repeat=4):
        if len(meet(x, y)) < len(meet(u, v)):
            if not len(meet(phi[x], phi[y])) < len(meet(phi[u], phi[v])):
                witness = (x, y, u, v)
                break
    items.append(("meet_length_order", witness is None, witness))

    wanted = "sparse" if f.kind == "sparse" else "strongly_diagonal"
    witness = None
    for size in range(1, subset_limit + 1):
        for subset in itertools.combinations(nodes, size):
            if not getattr(profile(subset), wanted):
                continue
            tree, _ = clp(subset)
            image_tree, _ = clp([phi[s] for s in subset])
            if tree.leaves != image_tree.leaves:
                witness = subset
                break
        if witness:
            break
    items.append(("collapse_preserved", witness is None, witness))

    return ContractReport(f.kind, tuple(items))
