"""Type-classifying colorings and realization search.

A coloring classifies an m-set by the ordered similarity type of its
image under a diagonalization: collapse the image, transport the ambient
level order, and look the pair up in the census palette.  Color 0 doubles
as the absorbing class for collapses that miss the palette.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .census import enumerate_types
from .collapse import clp, induced_order
from .nodes import NodeError, sorted_nodes
from .rado import tree_embed
from .viporders import enumerate_vip_orders


@dataclass(frozen=True)
class OrderedType:
    """A similarity tree together with a level order on its nodes."""

    tree: object
    order: object

    def __post_init__(self):
        if sorted_nodes(self.order.nodes()) != self.tree.nodes:
            raise NodeError("order carrier does not match the tree")

    @property
    def key(self):
        return (self.tree.type_id, self.order.levels)


@dataclass(frozen=True)
class Coloring:
    """A palette of ordered types with an absorbing class at color 0."""

    m: int
    kind: str  # "sparse" for the linear-order side, "full" for graphs
    palette: tuple

    @classmethod
    def build(cls, m, kind):
        if kind not in ("sparse", "full"):
            raise NodeError(f"unknown palette kind {kind!r}")
        entries = []
        for tree in enumerate_types(m, sparse_only=kind == "sparse"):
            for order in enumerate_vip_orders(tree):
                entries.append(OrderedType(tree, order))
        return cls(m, kind, tuple(entries))

    def index_of(self, ordered_type):
        lookup = getattr(self, "_lookup", None)
        if lookup is None:
            lookup = {entry.key: i for i, entry in enumerate(self.palette)}
            object.__setattr__(self, "_lookup", lookup)
        return lookup.get(ordered_type.key)

    def __len__(self):
        return len(self.palette)


def _classify_image(image, ambient, palette):
    tree, _ = clp(image)
    order = induced_order(image, ambient)
    hit = palette.index_of(OrderedType(tree, order))
    if hit is None:
        return 0, False
    return hit, True


def classify_linear(subset, diag_map, ambient, palette):
    """Color of an m-set of domain nodes on the linear-order side."""
    subset = sorted_nodes(subset)
    if len(subset) != palette.m:
        raise NodeError(f"need {palette.m} distinct nodes")
    missing = [t for t in subset if t not in diag_map.phi]
    if missing:
        raise NodeError(f"outside the diagonalization domain: {missing}")
    image = [diag_map.phi[t] for t in subset]
    return _classify_image(image, ambient, palette)[0]


def classify_graph(vertex_set, graph, diag_map, ambient, palette):
    """Color of an m-set of graph vertices through the tree coding."""
    vertex_set = sorted(set(vertex_set))
    if len(vertex_set) != palette.m:
        raise NodeError(f"need {palette.m} distinct vertices")
    sigma = tree_embed(graph)
    coded = []
    for v in vertex_set:
        if v not in sigma:
            raise NodeError(f"vertex {v} outside the graph")
        node = sigma[v]
        if node not in diag_map.phi:
            raise NodeError(f"coding of vertex {v} outside the domain")
        coded.append(node)
    image = [diag_map.phi[s] for s in coded]
    return _classify_image(image, ambient, palette)[0]


@dataclass(frozen=True)
class RealizationAudit:
    """Which palette entries a scan hit, and how far it looked."""

    m: int
    palette_size: int
    realized: tuple
    missing: tuple
    overflow_hits: int
    scanned: int
    budget: int | None

    def complete(self):
        return not self.missing

    def to_json(self):
        return {
            "m": self.m,
            "palette_size": self.palette_size,
            "realized": list(self.realized),
            "missing": list(self.missing),
            "overflow_hits": self.overflow_hits,
            "scanned": self.scanned,
            "budget": self.budget,
        }


def _iter_subsets(universe, m, exhaustive_limit, seed, budget):
    universe = list(universe)
    total = 1
    for i in range(m):
        total = total * (len(universe) - i) // (i + 1)
    if total <= exhaustive_limit:
        yield from itertools.combinations(universe, m)
        return
    rng = random.Random(seed)
    cap = budget if budget is not None else exhaustive_limit
    for _ in range(cap):
        yield tuple(rng.sample(universe, m))


def realized_colors(
    universe,
    palette,
    classify,
    exhaustive_limit=2_000_000,
    seed=1729,
    budget=None,
):
    """Audit which palette entries a classifier hits over a universe.

    Exhaustive below the limit, seeded sampling above it.  The classifier
    is called on each m-subset and overflow hits (color 0 without an
    exact palette match) are tallied separately from true color-0 hits.
    """
    realized = set()
    overflow = 0
    scanned = 0
    for subset in _iter_subsets(
        universe, palette.m, exhaustive_limit, seed, budget
    ):
        color, exact = classify(subset)
        scanned += 1
        if exact:
            realized.add(color)
        else:
            overflow += 1
        if budget is not None and scanned >= budget:
            break
    missing = tuple(i for i in range(len(palette)) if i not in realized)
    return RealizationAudit(
        m=palette.m,
        palette_size=len(palette),
        realized=tuple(sorted(realized)),
        missing=missing,
        overflow_hits=overflow,
        scanned=scanned,
        budget=budget,
    )


def linear_scan_audit(diag_map, palette, ambient, budget=None):
    """Full-scan audit of the linear-side classifier over a domain."""

    def classify(subset):
        image = [diag_map.phi[t] for t in subset]
        return _classify_image(image, ambient, palette)

    return realized_colors(diag_map.domain, palette, classify, budget=budget)


def graph_scan_audit(graph, diag_map, palette, ambient, budget=None):
    """Full-scan audit of the graph-side classifier over the vertices."""
    sigma = tree_embed(graph)

    def classify(vertices):
        image = [diag_map.phi[sigma[v]] for v in vertices]
        return _classify_image(image, ambient, palette)

    return realized_colors(
        list(graph.vertices()), palette, classify, budget=budget
    )


def realize_type(target, diag_map, ambient, palette, budget=None):
    """Search the domain for an m-set whose image realizes a target.

    The target must be a palette entry.  Its own leaf set is tried first
    (the collapse-preserving contract makes it land on the right tree),
    then m-subsets of the domain are scanned in canonical order up to the
    budget.  Returns the witness image or None if the budget runs out.
    """
    if palette.index_of(target) is None:
        raise NodeError("target is not in the palette")
    m = palette.m
    domain = set(diag_map.phi)

    def matches(subset):
        image = [diag_map.phi[t] for t in subset]
        tree, _ = clp(image)
        if tree.leaves != target.tree.leaves:
            return None
        if induced_order(image, ambient) != target.order:
            return None
        return sorted_nodes(image)

    guess = target.tree.leaves
    if set(guess) <= domain:
        witness = matches(guess)
        if witness:
            return witness
    scanned = 0
    for subset in itertools.combinations(sorted_nodes(domain), m):
        witness = matches(subset)
        if witness:
            return witness
        scanned += 1
        if budget is not None and scanned >= budget:
            return None
    return None
