"""Finite graphs, their tree codings, and the translation to pnp maps.

A graph on vertices 0..n-1 is coded into the binary tree by sending each
vertex to its adjacency word over the earlier vertices; edge bits become
passing numbers, so increasing graph embeddings and passing-number
preserving maps are two views of the same data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .nodes import NodeError


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on vertices 0..n-1."""

    n: int
    edges: frozenset

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise NodeError(f"bad edge ({i}, {j}) for {self.n} vertices")

    @classmethod
    def from_edges(cls, n, edges):
        normalized = frozenset(
            (min(i, j), max(i, j)) for i, j in edges if i != j
        )
        return cls(n, normalized)

    def adjacent(self, i, j):
        if i == j:
            return False
        return (min(i, j), max(i, j)) in self.edges

    def vertices(self):
        return range(self.n)

    def to_json(self):
        return {"n": self.n, "edges": sorted(map(list, self.edges))}

    @classmethod
    def from_json(cls, data):
        return cls.from_edges(int(data["n"]), data["edges"])


def bit_graph(n):
    """The BIT graph: i < j adjacent iff bit i of j is set.

    Deterministic finite stand-in for the Rado graph; vertex j's
    adjacency word over earlier vertices is just j's binary expansion.
    """
    if n < 1:
        raise NodeError("bit graph needs at least one vertex")
    edges = {
        (i, j) for j in range(n) for i in range(j) if (j >> i) & 1
    }
    return Graph.from_edges(n, edges)


def random_graph(n, seed=0):
    """An Erdos-Renyi graph with edge probability one half, seeded."""
    rng = random.Random(seed)
    edges = {
        (i, j) for j in range(n) for i in range(j) if rng.random() < 0.5
    }
    return Graph.from_edges(n, edges)


def tree_embed(graph):
    """Code each vertex as its adjacency word over the earlier vertices.

    Vertex 0 maps to the root; the word of vertex a has length a and
    carries a 1 at position b exactly when {a, b} is an edge.  The range
    is transverse (one node per length) and recovers the graph through
    passing numbers.
    """
    return {
        a: "".join(
            "1" if graph.adjacent(a, b) else "0" for b in range(a)
        )
        for a in graph.vertices()
    }


def embedding_to_pnp(vertex_map, graph):
    """Translate an increasing partial graph embedding to a node map.

    The vertex map must be strictly increasing and preserve adjacency in
    both directions on its domain; the result conjugates it through the
    tree coding.
    """
    items = sorted(vertex_map.items())
    for (a, ga), (b, gb) in zip(items, items[1:]):
        if not ga < gb:
            raise NodeError(f"not increasing at vertices {a}, {b}")
    for a, ga in items:
        for b, gb in items:
            if a < b and graph.adjacent(a, b) != graph.adjacent(ga, gb):
                raise NodeError(f"edge not preserved on pair ({a}, {b})")
    sigma = tree_embed(graph)
    return {sigma[a]: sigma[ga] for a, ga in items}


def pnp_to_embedding(node_map, graph):
    """Translate a node map on the coding range back to a vertex map.

    Both sides must lie in the coding range; the translation is audited
    to be strictly increasing and edge-preserving in both directions,
    which any passing-number preserving map guarantees.
    """
    sigma = tree_embed(graph)
    inverse = {node: a for a, node in sigma.items()}
    vertex_map = {}
    for s, fs in node_map.items():
        if s not in inverse or fs not in inverse:
            raise NodeError(f"map escapes the coding range at {s!r} -> {fs!r}")
        vertex_map[inverse[s]] = inverse[fs]
    items = sorted(vertex_map.items())
    for (a, ga), (b, gb) in zip(items, items[1:]):
        if not ga < gb:
            raise NodeError("translated map is not increasing")
    for a, ga in items:
        for b, gb in items:
            if a < b and graph.adjacent(a, b) != graph.adjacent(ga, gb):
                raise NodeError(f"translated map breaks edge ({a}, {b})")
    return vertex_map


def extension_witness(graph, joined, avoided):
    """Least vertex adjacent to all of one set and none of the other.

    Returns None when the graph is too small to contain a witness.
    """
    joined = set(joined)
    avoided = set(avoided)
    if joined & avoided:
        raise NodeError("witness sets must be disjoint")
    for c in graph.vertices():
        if c in joined or c in avoided:
            continue
        if all(graph.adjacent(c, a) for a in joined) and not any(
            graph.adjacent(c, b) for b in avoided
        ):
            return c
    return None


def increasing_embeddings(graph, size, limit=None):
    """All strictly increasing induced embeddings of {0..size-1}.

    Depth-first search for vertex maps g with g(0) < ... < g(size-1)
    preserving adjacency (both directions) against the induced pattern
    on the initial segment.  Bounded by ``limit`` when given.
    """
    out = []

    def extend(partial):
        if limit is not None and len(out) >= limit:
            return
        k = len(partial)
        if k == size:
            out.append(dict(enumerate(partial)))
            return
        start = partial[-1] + 1 if partial else 0
        for cand in range(start, graph.n):
            if all(
                graph.adjacent(partial[i], cand) == graph.adjacent(i, k)
                for i in range(k)
            ):
                extend(partial + [cand])

    extend([])
    return out


def longest_increasing_embedding(graph):
    """Greedy increasing self-embedding, reported as far as it reaches."""
    partial = []
    for k in range(graph.n):
        start = partial[-1] + 1 if partial else 0
        for cand in range(start, graph.n):
            if all(
                graph.adjacent(partial[i], cand) == graph.adjacent(i, k)
                for i in range(k)
            ):
                partial.append(cand)
                break
        else:
            break
    return dict(enumerate(partial))
