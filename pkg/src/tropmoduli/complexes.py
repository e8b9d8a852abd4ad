"""The tropical moduli space as cells glued along contractions.

Each combinatorial type spans a quotient cone (the nonnegative orthant on its
edges modulo the edge-permutation group); the face poset records which type
arises from which by contraction.  Dropping the cone point and cutting at
volume one turns cones of dimension d into link cells of dimension d - 1.

The self-gluing of a symmetric cone is not stored geometrically: it is
carried entirely by the edge group on each cell, which is exactly what the
homology of the link consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .enumeration import TypeCatalog, enumerate_types, has_expansion, max_edges
from .errors import InternalConsistencyError
from .graphs import EdgeAutomorphismGroup, WeightedMarkedGraph
from .parallel import parallel_map


@dataclass(frozen=True)
class Cone:
    """Quotient cone of one combinatorial type."""

    graph: WeightedMarkedGraph
    dimension: int  # = number of edges
    edge_group: EdgeAutomorphismGroup


@dataclass(frozen=True)
class FacePoset:
    """Types ordered by contraction; covers witness single-edge contractions.

    covers holds (parent, child, edge) triples: contracting that edge of the
    parent type lands on the child type.  Isomorphic children reached through
    different edges are recorded once per edge, because boundary coefficients
    need the multiplicity.  The full order is the transitive closure.
    """

    g: int
    n: int
    types: tuple[WeightedMarkedGraph, ...]
    covers: tuple[tuple[int, int, int], ...]

    def relations(self):
        """All (parent, child, witness edge set) triples, witnesses separate."""
        index = {t.canonical_key(): i for i, t in enumerate(self.types)}
        for i, t in enumerate(self.types):
            for mask in range(1, 1 << t.num_edges):
                subset = frozenset(
                    e for e in range(t.num_edges) if mask >> e & 1
                )
                child = t.contract_set(subset).canonical_key()
                yield (i, index[child], subset)

    def maximal_types(self) -> tuple[int, ...]:
        contracted_from = {child for _, child, _ in self.covers}
        return tuple(
            i for i in range(len(self.types)) if i not in contracted_from
        )


@dataclass(frozen=True)
class LinkComplex:
    """Cells of the volume-1 link: one per type with at least one edge.

    A type with d edges gives a cell of dimension d - 1.  faces holds
    (cell, face cell or -1, contracted edge) triples; -1 means the
    contraction reached the edgeless cone point.
    """

    g: int
    n: int
    cells: tuple[Cone, ...]
    faces: tuple[tuple[int, int, int], ...]

    def dimension(self) -> int:
        return max((c.dimension - 1 for c in self.cells), default=-1)

    def cells_of_dimension(self, p: int) -> tuple[int, ...]:
        return tuple(
            i for i, c in enumerate(self.cells) if c.dimension - 1 == p
        )


def build_poset(g: int, n: int, threads: int = 1, catalog: TypeCatalog | None = None) -> FacePoset:
    """Face poset of the moduli cone complex for (g, n)."""
    if catalog is None:
        catalog = enumerate_types(g, n, threads=threads)
    index = {t.canonical_key(): i for i, t in enumerate(catalog.strata)}

    def covers_of(item):
        i, t = item
        return [
            (i, index[t.contract(e).canonical_key()], e)
            for e in range(t.num_edges)
        ]

    batches = parallel_map(covers_of, enumerate(catalog.strata), threads=threads)
    covers = tuple(c for batch in batches for c in batch)
    return FacePoset(g=g, n=n, types=catalog.strata, covers=covers)


def link_cells(g: int, n: int, threads: int = 1, catalog: TypeCatalog | None = None) -> LinkComplex:
    """Cell structure of the link, with edge groups, from the face poset."""
    poset = build_poset(g, n, threads=threads, catalog=catalog)
    with_edges = [i for i, t in enumerate(poset.types) if t.num_edges > 0]
    renumber = {old: new for new, old in enumerate(with_edges)}
    cones = parallel_map(
        lambda i: Cone(
            graph=poset.types[i],
            dimension=poset.types[i].num_edges,
            edge_group=poset.types[i].automorphisms(),
        ),
        with_edges,
        threads=threads,
    )
    faces = tuple(
        (renumber[parent], renumber.get(child, -1), edge)
        for parent, child, edge in poset.covers
    )
    return LinkComplex(g=g, n=n, cells=tuple(cones), faces=faces)


def complex_dimension(g: int, n: int, threads: int = 1, catalog: TypeCatalog | None = None) -> int:
    """Dimension 3g - 4 + n of the link, after verifying purity.

    Every contraction-maximal type must have exactly 3g - 3 + n edges; a
    violation would contradict the structure of the moduli space and raises
    an internal consistency error naming the offending type.  A type is
    maximal exactly when it admits no stable one-edge expansion, so the
    check scans the catalog without building the face poset.
    """
    if catalog is None:
        catalog = enumerate_types(g, n, threads=threads)
    top = max_edges(g, n)
    if catalog.f_vector[top] == 0:
        raise InternalConsistencyError(
            f"purity violation at (g, n) = ({g}, {n}): no type attains "
            f"{top} edges"
        )
    for t in catalog.strata:
        if t.num_edges < top and not has_expansion(t):
            raise InternalConsistencyError(
                f"purity violation at (g, n) = ({g}, {n}): maximal type "
                f"{t.canonical_key()} has {t.num_edges} edges, expected {top}"
            )
    return top - 1


def hasse_dot(poset: FacePoset) -> str:
    """Graphviz source for the Hasse diagram of the face poset."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i, t in enumerate(poset.types):
        lines.append(
            f'  t{i} [shape=box, label="#{i}: {t.num_edges}e g{t.genus()}"];'
        )
    seen = set()
    for parent, child, _ in poset.covers:
        if (parent, child) not in seen:
            seen.add((parent, child))
            lines.append(f"  t{child} -> t{parent};")
    lines.append("}")
    return "\n".join(lines) + "\n"
