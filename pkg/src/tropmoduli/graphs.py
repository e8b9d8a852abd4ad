"""Vertex-weighted, n-marked multigraphs and their exact combinatorics.

A combinatorial type is stored with vertices 0..nv-1, a weight per vertex, a
tuple of edges (unordered endpoint pairs, loops and parallel edges allowed)
and a marking tuple sending each marked point 1..n to a vertex.  Everything
is immutable; operations return new graphs.

The two nontrivial algorithms live here:

* canonical labeling by color refinement plus individualization, giving a
  certificate whose encoding is equal for two graphs iff they are isomorphic
  (weights preserved, markings matched pointwise);
* the edge-permutation image of the automorphism group, computed exactly by
  enumerating admissible vertex bijections within refinement classes and all
  compatible matchings of parallel edges.

Loops deserve care throughout: a loop counts twice toward valence, a loop
flip is an automorphism whose induced edge permutation is the identity, and
contracting a loop raises the base vertex's weight by one.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import GraphError

Edge = tuple[int, int]


def perm_sign(perm) -> int:
    """Sign of a permutation given as a tuple of images of 0..k-1."""
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class WeightedMarkedGraph:
    """A connected multigraph with vertex weights and n labeled markings.

    weights[v] is the weight of vertex v; edges are (u, v) with u <= v and
    (v, v) for loops; markings[k] is the vertex carrying marked point k+1.
    """

    weights: tuple[int, ...]
    edges: tuple[Edge, ...]
    markings: tuple[int, ...]

    def __post_init__(self):
        nv = len(self.weights)
        if nv == 0:
            raise GraphError("graph needs at least one vertex")
        if any(w < 0 for w in self.weights):
            raise GraphError("vertex weights must be nonnegative")
        for e in self.edges:
            if not (0 <= e[0] <= e[1] < nv):
                raise GraphError(f"edge {e} does not fit {nv} vertices")
        for k, v in enumerate(self.markings):
            if not 0 <= v < nv:
                raise GraphError(f"marking {k + 1} points at missing vertex {v}")
        if not self._connected():
            raise GraphError("graph is not connected")

    def _connected(self) -> bool:
        nv = len(self.weights)
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        root = find(0)
        return all(find(v) == root for v in range(nv))

    # -- basic invariants ---------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.weights)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_markings(self) -> int:
        return len(self.markings)

    def genus(self) -> int:
        """First Betti number plus total vertex weight."""
        return len(self.edges) - len(self.weights) + 1 + sum(self.weights)

    def valences(self) -> tuple[int, ...]:
        """Half-edge count at each vertex; a loop contributes 2."""
        val = [0] * len(self.weights)
        for u, v in self.edges:
            val[u] += 1
            val[v] += 1
        return tuple(val)

    def marks_at(self) -> tuple[tuple[int, ...], ...]:
        """Sorted marked-point labels (1-based) carried by each vertex."""
        marks = [[] for _ in self.weights]
        for k, v in enumerate(self.markings):
            marks[v].append(k + 1)
        return tuple(tuple(m) for m in marks)

    def is_stable(self) -> bool:
        """2w(v) - 2 + val(v) + #marks(v) > 0 at every vertex."""
        val = self.valences()
        nmarks = [0] * len(self.weights)
        for v in self.markings:
            nmarks[v] += 1
        return all(
            2 * self.weights[v] - 2 + val[v] + nmarks[v] > 0
            for v in range(len(self.weights))
        )

    def unstable_vertices(self) -> tuple[int, ...]:
        val = self.valences()
        nmarks = [0] * len(self.weights)
        for v in self.markings:
            nmarks[v] += 1
        return tuple(
            v
            for v in range(len(self.weights))
            if 2 * self.weights[v] - 2 + val[v] + nmarks[v] <= 0
        )

    # -- contraction ----------------------------------------------------------

    def contract(self, edge_index: int) -> "WeightedMarkedGraph":
        """Contract one edge, preserving genus and markings.

        A loop is deleted and its base weight raised by 1; a non-loop edge is
        deleted and its endpoints merged with added weights.  The surviving
        edges keep their relative order, so boundary maps can track them.
        """
        if not 0 <= edge_index < len(self.edges):
            raise GraphError(f"no edge with index {edge_index}")
        u, v = self.edges[edge_index]
        rest = self.edges[:edge_index] + self.edges[edge_index + 1:]
        if u == v:
            weights = list(self.weights)
            weights[u] += 1
            return WeightedMarkedGraph(tuple(weights), rest, self.markings)
        # merge v into u; vertices above v shift down
        remap = [x - 1 if x > v else (u if x == v else x) for x in range(len(self.weights))]
        weights = [w for x, w in enumerate(self.weights) if x != v]
        weights[remap[u]] += self.weights[v]
        edges = tuple(
            (remap[a], remap[b]) if remap[a] <= remap[b] else (remap[b], remap[a])
            for a, b in rest
        )
        markings = tuple(remap[m] for m in self.markings)
        return WeightedMarkedGraph(tuple(weights), edges, markings)

    def contract_set(self, edge_indices) -> "WeightedMarkedGraph":
        """Contract a set of edges (order does not matter up to isomorphism)."""
        g = self
        for i in sorted(set(edge_indices), reverse=True):
            g = g.contract(i)
        return g

    # -- canonical form -------------------------------------------------------

    def canonical_certificate(self) -> "GraphIsoCertificate":
        """Canonical form: equal encodings iff isomorphic graphs."""
        key, order = _canonical_data(self)
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        # canonical edge order: sort relabeled pairs, ties broken by original index
        tagged = sorted(
            (_relabeled_pair(e, pos), idx) for idx, e in enumerate(self.edges)
        )
        edge_relabeling = [0] * len(self.edges)
        for new_idx, (_, old_idx) in enumerate(tagged):
            edge_relabeling[old_idx] = new_idx
        return GraphIsoCertificate(
            encoding=repr(key).encode("ascii"),
            vertex_relabeling=tuple(pos),
            edge_relabeling=tuple(edge_relabeling),
        )

    def canonical_key(self):
        """Hashable canonical invariant (the tuple behind the encoding)."""
        return _canonical_data(self)[0]

    def canonical(self) -> "WeightedMarkedGraph":
        """The canonical representative of this isomorphism class."""
        weights, edges, markings = self.canonical_key()
        return WeightedMarkedGraph(weights, edges, markings)

    # -- automorphisms ----------------------------------------------------------

    def automorphisms(self) -> "EdgeAutomorphismGroup":
        """Image of the automorphism group in the symmetric group on edges.

        Automorphisms preserve weights and fix every marking pointwise.  The
        image is computed exactly: every admissible vertex bijection is
        combined with every matching of parallel edge classes, and the
        resulting edge permutations are collected.  Loop flips induce the
        identity and hence never appear as nontrivial permutations.
        """
        elements = _edge_permutation_image(self)
        order = len(elements)
        has_odd = any(perm_sign(p) == -1 for p in elements)
        generators = _greedy_generators(elements)
        return EdgeAutomorphismGroup(
            generators=generators, order=order, has_odd_element=has_odd
        )

    # -- serialization ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"id": v, "weight": w} for v, w in enumerate(self.weights)
            ],
            "edges": [[u, v] for u, v in self.edges],
            "markings": list(self.markings),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "WeightedMarkedGraph":
        try:
            vertices = data["vertices"]
            raw_edges = data["edges"]
            raw_markings = data["markings"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"graph JSON missing field: {exc}") from exc
        index = {}
        weights = []
        for entry in vertices:
            vid = entry["id"]
            if vid in index:
                raise GraphError(f"duplicate vertex id {vid!r}")
            index[vid] = len(weights)
            weights.append(int(entry["weight"]))
        edges = []
        for pair in raw_edges:
            if len(pair) != 2 or pair[0] not in index or pair[1] not in index:
                raise GraphError(f"edge {pair!r} references unknown vertex")
            a, b = index[pair[0]], index[pair[1]]
            edges.append((min(a, b), max(a, b)))
        markings = []
        for vid in raw_markings:
            if vid not in index:
                raise GraphError(f"marking references unknown vertex {vid!r}")
            markings.append(index[vid])
        return cls(tuple(weights), tuple(edges), tuple(markings))

    def to_dot(self, name: str = "G") -> str:
        """Graphviz source; weights label vertices, markings hang as rays."""
        lines = [f"graph {name} {{"]
        for v, w in enumerate(self.weights):
            lines.append(f'  v{v} [shape=circle, label="{w}"];')
        for k, v in enumerate(self.markings):
            lines.append(
                f'  m{k + 1} [shape=none, label="{k + 1}"];\n  v{v} -- m{k + 1} [style=dashed];'
            )
        for u, v in self.edges:
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GraphIsoCertificate:
    """Canonical encoding plus a relabeling that realizes it."""

    encoding: bytes
    vertex_relabeling: tuple[int, ...]  # old vertex -> canonical vertex
    edge_relabeling: tuple[int, ...]  # old edge index -> canonical edge index


@dataclass(frozen=True)
class EdgeAutomorphismGroup:
    """Edge permutations induced by automorphisms of (G, m, w)."""

    generators: tuple[tuple[int, ...], ...]
    order: int
    has_odd_element: bool


# ---------------------------------------------------------------------------
# canonical labeling machinery
#
# The raw functions below work on bare (weights, edges, markings) tuples so
# the enumeration hot path can canonicalize millions of candidates without
# constructing (and re-validating) graph objects.
# ---------------------------------------------------------------------------


def _relabeled_pair(edge: Edge, pos) -> Edge:
    a, b = pos[edge[0]], pos[edge[1]]
    return (a, b) if a <= b else (b, a)


def _adjacency(nv: int, edges) -> list[list[int]]:
    """Neighbor lists with multiplicity; a loop lists its vertex twice."""
    adj: list[list[int]] = [[] for _ in range(nv)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _initial_keys(nv, adj, weights, edges, markings) -> list:
    """Per-vertex start colors: (weight, marking set, valence, loop count).

    Returned as comparable tuples; the first refinement round turns them
    into integer ranks.
    """
    marks = [0] * nv
    for k, v in enumerate(markings):
        marks[v] |= 1 << k
    loops = [0] * nv
    for u, v in edges:
        if u == v:
            loops[u] += 1
    return [(weights[v], marks[v], len(adj[v]), loops[v]) for v in range(nv)]


def _refine_ranks(nv, adj, colors: list) -> list[int]:
    """Stable color refinement: split classes by the multiset of neighbor
    colors (a loop contributes the vertex's own color twice).  Accepts any
    comparable start colors and returns integer ranks."""
    while True:
        keys = [
            (colors[v], tuple(sorted([colors[u] for u in adj[v]])))
            for v in range(nv)
        ]
        rank = {k: i for i, k in enumerate(sorted(set(keys)))}
        new_colors = [rank[k] for k in keys]
        if new_colors == colors:
            return colors
        colors = new_colors


def _encode_raw(weights, edges, markings, order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    new_edges = []
    for u, v in edges:
        a, b = pos[u], pos[v]
        new_edges.append((a, b) if a <= b else (b, a))
    new_edges.sort()
    return (
        tuple(weights[v] for v in order),
        tuple(new_edges),
        tuple(pos[m] for m in markings),
    )


def _canonical_raw(weights, edges, markings):
    """Minimal encoding over all admissible labelings, via refinement plus
    individualization of the first non-singleton class.  Returns the key
    (the canonically relabeled triple) and one vertex order realizing it."""
    nv = len(weights)
    if nv == 1:
        return (weights, tuple(sorted(edges)), markings), (0,)
    adj = _adjacency(nv, edges)
    best: list = [None, None]

    def search(colors: list[int]):
        colors = _refine_ranks(nv, adj, colors)
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            classes.setdefault(c, []).append(v)
        branch = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                branch = classes[c]
                break
        if branch is None:
            order = sorted(range(nv), key=colors.__getitem__)
            key = _encode_raw(weights, edges, markings, order)
            if best[0] is None or key < best[0]:
                best[0] = key
                best[1] = order
            return
        fresh = nv  # strictly larger than any refined rank
        for v in branch:
            child = list(colors)
            child[v] = fresh
            search(child)

    search(_initial_keys(nv, adj, weights, edges, markings))
    return best[0], tuple(best[1])


@lru_cache(maxsize=1 << 18)
def _canonical_data(g: WeightedMarkedGraph):
    return _canonical_raw(g.weights, g.edges, g.markings)


# ---------------------------------------------------------------------------
# automorphism machinery
# ---------------------------------------------------------------------------


def _admissible_vertex_maps(g: WeightedMarkedGraph):
    """All vertex bijections preserving weights, markings pointwise, and the
    edge multiset; the search is restricted to refinement classes."""
    nv = g.num_vertices
    adj = _adjacency(nv, g.edges)
    colors = _refine_ranks(
        nv, adj, _initial_keys(nv, adj, g.weights, g.edges, g.markings)
    )
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    class_list = [classes[c] for c in sorted(classes)]
    edge_counter = Counter(g.edges)
    maps = []
    for images in itertools.product(
        *[itertools.permutations(cls) for cls in class_list]
    ):
        sigma = [0] * g.num_vertices
        for cls, img in zip(class_list, images):
            for v, w in zip(cls, img):
                sigma[v] = w
        if any(sigma[m] != m for m in g.markings):
            continue
        mapped = Counter(
            (sigma[u], sigma[v]) if sigma[u] <= sigma[v] else (sigma[v], sigma[u])
            for u, v in g.edges
        )
        if mapped == edge_counter:
            maps.append(tuple(sigma))
    return maps


def _edge_permutation_image(g: WeightedMarkedGraph) -> frozenset:
    """All edge permutations arising from some automorphism."""
    by_pair: dict[Edge, list[int]] = {}
    for idx, e in enumerate(g.edges):
        by_pair.setdefault(e, []).append(idx)
    pairs = sorted(by_pair)
    elements = set()
    for sigma in _admissible_vertex_maps(g):
        target_lists = []
        for pair in pairs:
            u, v = sigma[pair[0]], sigma[pair[1]]
            image = (u, v) if u <= v else (v, u)
            target_lists.append(by_pair[image])
        for assignment in itertools.product(
            *[itertools.permutations(t) for t in target_lists]
        ):
            phi = [0] * g.num_edges
            for pair, images in zip(pairs, assignment):
                for src, dst in zip(by_pair[pair], images):
                    phi[src] = dst
            elements.add(tuple(phi))
    return frozenset(elements)


def _compose(p, q):
    return tuple(p[x] for x in q)


def _closure(generators, identity):
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for gen in generators:
                b = _compose(gen, a)
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
    return group


def _greedy_generators(elements: frozenset) -> tuple:
    if not elements:
        return ()
    k = len(next(iter(elements)))
    identity = tuple(range(k))
    generators: list = []
    generated = {identity}
    for p in sorted(elements):
        if p in generated:
            continue
        generators.append(p)
        generated = _closure(generators, identity)
        if len(generated) == len(elements):
            break
    return tuple(generators)
