"""Independent brute-force oracles.

Everything here is deliberately written from the definitions, without the
package's canonical-labeling or refinement machinery, so that agreement
between the two routes is meaningful:

* generate-and-filter enumeration of stable types (all connected edge
  multisets, all weight vectors, all marking functions), deduplicated by
  trying every vertex bijection;
* exhaustive edge-permutation search over all vertex bijections and all
  matchings of parallel edges.

Graphs are plain tuples (weights, edges, markings) in the same convention
as the package: edges are sorted pairs, markings map label k to a vertex.
"""

from __future__ import annotations

import itertools
from collections import Counter


def is_connected(num_vertices, edges) -> bool:
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    root = find(0)
    return all(find(v) == root for v in range(num_vertices))


def valences(num_vertices, edges):
    val = [0] * num_vertices
    for u, v in edges:
        val[u] += 1
        val[v] += 1
    return val


def is_stable_tuple(weights, edges, markings) -> bool:
    val = valences(len(weights), edges)
    marks = [0] * len(weights)
    for v in markings:
        marks[v] += 1
    return all(
        2 * w - 2 + val[i] + marks[i] > 0 for i, w in enumerate(weights)
    )


def are_isomorphic(a, b) -> bool:
    """Naive isomorphism: try every vertex bijection."""
    wa, ea, ma = a
    wb, eb, mb = b
    if len(wa) != len(wb) or len(ea) != len(eb) or len(ma) != len(mb):
        return False
    if sorted(wa) != sorted(wb):
        return False
    eb_counter = Counter(eb)
    for sigma in itertools.permutations(range(len(wa))):
        if any(wb[sigma[v]] != wa[v] for v in range(len(wa))):
            continue
        if any(sigma[ma[k]] != mb[k] for k in range(len(ma))):
            continue
        mapped = Counter(
            (sigma[u], sigma[v]) if sigma[u] <= sigma[v] else (sigma[v], sigma[u])
            for u, v in ea
        )
        if mapped == eb_counter:
            return True
    return False


def _invariant_key(weights, edges, markings):
    """Cheap isomorphism invariant used only to bucket candidates."""
    val = valences(len(weights), edges)
    labels = [[] for _ in weights]
    for k, v in enumerate(markings):
        labels[v].append(k + 1)
    per_vertex = sorted(
        (weights[v], val[v], tuple(labels[v])) for v in range(len(weights))
    )
    return (len(weights), len(edges), tuple(per_vertex))


def _weak_compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _marking_functions(n, counts):
    """All marking tuples with the given number of labels per vertex."""
    multiset = []
    for v, c in enumerate(counts):
        multiset.extend([v] * c)
    if len(multiset) != n:
        return
    yield from set(itertools.permutations(multiset))


def brute_force_catalog(g, n):
    """All stable (g, n) types by generate-and-filter, up to naive isomorphism.

    Returns one representative tuple (weights, edges, markings) per class.
    """
    assert 2 * g - 2 + n > 0
    max_v = 2 * g - 2 + n
    max_e = 3 * g - 3 + n
    buckets: dict = {}
    reps = []
    for nv in range(1, max_v + 1):
        vertex_pairs = [
            (u, v) for u in range(nv) for v in range(u, nv)
        ]
        for ne in range(nv - 1, max_e + 1):
            betti = ne - nv + 1
            weight_total = g - betti
            if weight_total < 0:
                continue
            for edges in itertools.combinations_with_replacement(vertex_pairs, ne):
                if not is_connected(nv, edges):
                    continue
                val = valences(nv, edges)
                for weights in _weak_compositions(weight_total, nv):
                    # stability screen on marking counts before labeling
                    for counts in _weak_compositions(n, nv):
                        if any(
                            2 * weights[v] - 2 + val[v] + counts[v] <= 0
                            for v in range(nv)
                        ):
                            continue
                        for markings in _marking_functions(n, counts):
                            cand = (tuple(weights), tuple(edges), tuple(markings))
                            key = _invariant_key(*cand)
                            bucket = buckets.setdefault(key, [])
                            if not any(are_isomorphic(cand, old) for old in bucket):
                                bucket.append(cand)
                                reps.append(cand)
    return reps


def exhaustive_edge_permutations(weights, edges, markings):
    """All edge permutations induced by automorphisms, by trying every
    vertex bijection and every matching of parallel edges."""
    nv = len(weights)
    by_pair: dict = {}
    for idx, e in enumerate(edges):
        by_pair.setdefault(e, []).append(idx)
    pairs = sorted(by_pair)
    edge_counter = Counter(edges)
    result = set()
    for sigma in itertools.permutations(range(nv)):
        if any(weights[sigma[v]] != weights[v] for v in range(nv)):
            continue
        if any(sigma[m] != m for m in markings):
            continue
        mapped = Counter(
            (sigma[u], sigma[v]) if sigma[u] <= sigma[v] else (sigma[v], sigma[u])
            for u, v in edges
        )
        if mapped != edge_counter:
            continue
        target_lists = []
        for u, v in pairs:
            image = (sigma[u], sigma[v])
            if image[0] > image[1]:
                image = (image[1], image[0])
            target_lists.append(by_pair[image])
        for assignment in itertools.product(
            *[itertools.permutations(t) for t in target_lists]
        ):
            phi = [0] * len(edges)
            for pair, images in zip(pairs, assignment):
                for src, dst in zip(by_pair[pair], images):
                    phi[src] = dst
            result.add(tuple(phi))
    return result
