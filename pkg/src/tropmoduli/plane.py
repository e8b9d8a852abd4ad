"""Tropical plane curves: the min-plus corner locus of a polynomial.

A tropical polynomial is a finite map from exponent pairs to exact rational
valuations; its curve is the locus where the minimum of v(c) + i*z + j*w is
achieved at least twice.  The curve is computed by two independent routes
that must agree cell for cell:

* a bisector arrangement: for every pair of terms, the locus where both
  achieve the global minimum is cut out of their bisector line by the other
  terms' inequalities;
* Newton duality: the lower convex hull of the lifted support induces a
  regular subdivision of the Newton polygon, whose 2-cells, interior edges
  and boundary edges are dual to the curve's vertices, segments and rays.

Everything is exact; the only floating point in this file is in the SVG
renderer, which is a drawing concern.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import GraphError, InternalConsistencyError
from .rationals import format_rational, parse_rational

Point = tuple[Fraction, Fraction]
ExponentPair = tuple[int, int]


@dataclass(frozen=True)
class TropicalPolynomial:
    """Finite support in Z^2 with a rational valuation per term."""

    terms: tuple[tuple[ExponentPair, Fraction], ...]  # sorted by exponent

    def __post_init__(self):
        if not self.terms:
            raise GraphError("a tropical polynomial needs at least one term")
        exponents = [e for e, _ in self.terms]
        if len(set(exponents)) != len(exponents):
            raise GraphError("duplicate exponent pair in support")

    @classmethod
    def from_terms(cls, items) -> "TropicalPolynomial":
        cleaned = sorted(
            ((int(i), int(j)), parse_rational(v)) for (i, j), v in items
        )
        return cls(terms=tuple(cleaned))

    @classmethod
    def from_json_dict(cls, data: dict) -> "TropicalPolynomial":
        try:
            items = [
                ((entry["i"], entry["j"]), entry["val"]) for entry in data["terms"]
            ]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"bad polynomial JSON: {exc}") from exc
        return cls.from_terms(items)

    def evaluate(self, p: Point):
        """Tropical value at p and the set of exponents achieving it."""
        z, w = Fraction(p[0]), Fraction(p[1])
        best = None
        achievers = []
        for (i, j), v in self.terms:
            value = v + i * z + j * w
            if best is None or value < best:
                best = value
                achievers = [(i, j)]
            elif value == best:
                achievers.append((i, j))
        return best, frozenset(achievers)

    def contains(self, p: Point) -> bool:
        """Kapranov membership: the minimum occurs at least twice."""
        _, achievers = self.evaluate(p)
        return len(achievers) >= 2


@dataclass(frozen=True)
class Ray:
    base: Point
    direction: tuple[int, int]  # primitive integer vector
    base_vertex: int | None  # index into the curve's vertices, if any


@dataclass(frozen=True)
class TropicalPlaneCurve:
    """Corner locus as a 1-dimensional polyhedral complex, byte-stable."""

    vertices: tuple[Point, ...]  # sorted
    segments: tuple[tuple[int, int], ...]  # sorted index pairs into vertices
    rays: tuple[Ray, ...]  # sorted by (base, direction)

    def is_empty(self) -> bool:
        return not (self.vertices or self.segments or self.rays)

    def to_json_dict(self) -> dict:
        def point(p):
            return [format_rational(p[0]), format_rational(p[1])]

        return {
            "vertices": [point(p) for p in self.vertices],
            "segments": [[a, b] for a, b in self.segments],
            "rays": [
                {
                    "base": point(r.base),
                    "base_vertex": r.base_vertex,
                    "dir": list(r.direction),
                }
                for r in self.rays
            ],
        }


@dataclass(frozen=True)
class NewtonSubdivision:
    """Regular subdivision of the Newton polygon from the lifted support.

    faces lists the maximal coplanar sets of the lower hull (2-dimensional
    cells); segments lists the 1-cells, each a pair of support indices.  For
    a support of affine dimension 1 there are no faces and the segments form
    the lower-hull chain.
    """

    support: tuple[ExponentPair, ...]
    heights: tuple[Fraction, ...]
    faces: tuple[tuple[int, ...], ...]
    segments: tuple[tuple[int, int], ...]


# ---------------------------------------------------------------------------
# small exact-geometry helpers
# ---------------------------------------------------------------------------


def _primitive(dx, dy) -> tuple[int, int]:
    dx, dy = Fraction(dx), Fraction(dy)
    if dx == 0 and dy == 0:
        raise ValueError("zero direction")
    scale = dx.denominator * dy.denominator // gcd(dx.denominator, dy.denominator)
    ix, iy = int(dx * scale), int(dy * scale)
    g = gcd(abs(ix), abs(iy))
    return ix // g, iy // g


def _canonical_line(p: Point, dx: int, dy: int):
    """Canonical (base, direction) for a full line through p: the direction
    has positive leading entry and the base sits on a coordinate axis."""
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    z, w = p
    if dx != 0:
        t = -z / dx
        base = (Fraction(0), w + t * dy)
    else:
        t = -w / dy
        base = (z + t * dx, Fraction(0))
    return base, (dx, dy)


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(points):
    """Andrew monotone chain; returns hull vertices counterclockwise.

    Collinear points interior to hull edges are dropped, which is exactly
    the marked-point convention the duality counting relies on.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


# ---------------------------------------------------------------------------
# route 1: bisector arrangement
# ---------------------------------------------------------------------------


def _curve_by_bisectors(f: TropicalPolynomial) -> TropicalPlaneCurve:
    terms = f.terms
    m = len(terms)
    if m < 2:
        return TropicalPlaneCurve((), (), ())

    def term_value(idx, p):
        (i, j), v = terms[idx]
        return v + i * p[0] + j * p[1]

    def global_min(p):
        return min(term_value(k, p) for k in range(m))

    # vertices: equality points of affinely independent triples that reach
    # the global minimum
    vertex_set = set()
    for a, b, c in itertools.combinations(range(m), 3):
        (ia, ja), va = terms[a]
        (ib, jb), vb = terms[b]
        (ic, jc), vc = terms[c]
        det = (ia - ib) * (ja - jc) - (ia - ic) * (ja - jb)
        if det == 0:
            continue
        r1, r2 = vb - va, vc - va
        z = Fraction(r1 * (ja - jc) - r2 * (ja - jb), det)
        w = Fraction((ia - ib) * r2 - (ia - ic) * r1, det)
        p = (z, w)
        if term_value(a, p) == global_min(p):
            vertex_set.add(p)

    segments = set()
    rays = set()
    for a, b in itertools.combinations(range(m), 2):
        (ia, ja), va = terms[a]
        (ib, jb), vb = terms[b]
        di, dj = ia - ib, ja - jb
        rhs = vb - va
        # a point on the bisector and its direction
        if di != 0:
            p0 = (Fraction(rhs, di), Fraction(0))
        else:
            p0 = (Fraction(0), Fraction(rhs, dj))
        dx, dy = -dj, di
        lo, hi = None, None  # parameter bounds along p0 + t*(dx, dy)
        empty = False
        for c in range(m):
            if c in (a, b):
                continue
            (ic, jc), vc = terms[c]
            alpha = (ic - ia) * dx + (jc - ja) * dy
            beta = (vc - va) + (ic - ia) * p0[0] + (jc - ja) * p0[1]
            if alpha == 0:
                if beta < 0:
                    empty = True
                    break
            elif alpha > 0:
                bound = Fraction(-beta, alpha)
                if lo is None or bound > lo:
                    lo = bound
            else:
                bound = Fraction(-beta, alpha)
                if hi is None or bound < hi:
                    hi = bound
        if empty or (lo is not None and hi is not None and lo >= hi):
            continue

        def at(t):
            return (p0[0] + t * dx, p0[1] + t * dy)

        if lo is not None and hi is not None:
            p, q = at(lo), at(hi)
            segments.add((min(p, q), max(p, q)))
        elif lo is not None:
            rays.add((at(lo), _primitive(dx, dy)))
        elif hi is not None:
            rays.add((at(hi), _primitive(-dx, -dy)))
        else:
            base, direction = _canonical_line(p0, *_primitive(dx, dy))
            rays.add((base, direction))
            rays.add((base, (-direction[0], -direction[1])))
    return _assemble(vertex_set, segments, rays)


# ---------------------------------------------------------------------------
# route 2: Newton duality
# ---------------------------------------------------------------------------


def newton_subdivision(f: TropicalPolynomial) -> NewtonSubdivision:
    """Lower convex hull of the lifted support, exactly."""
    support = tuple(e for e, _ in f.terms)
    heights = tuple(v for _, v in f.terms)
    m = len(support)
    faces: list[tuple[int, ...]] = []
    segments: set[tuple[int, int]] = set()

    if m >= 3:
        seen = set()
        for a, b, c in itertools.combinations(range(m), 3):
            (xa, ya), (xb, yb), (xc, yc) = support[a], support[b], support[c]
            det = (xb - xa) * (yc - ya) - (xc - xa) * (yb - ya)
            if det == 0:
                continue
            ha, hb, hc = heights[a], heights[b], heights[c]
            # plane h = lam*x + mu*y + nu through the three lifted points
            lam = Fraction((hb - ha) * (yc - ya) - (hc - ha) * (yb - ya), det)
            mu = Fraction((xb - xa) * (hc - ha) - (xc - xa) * (hb - ha), det)
            nu = ha - lam * xa - mu * ya
            below = False
            on_plane = []
            for k in range(m):
                gap = heights[k] - (lam * support[k][0] + mu * support[k][1] + nu)
                if gap < 0:
                    below = True
                    break
                if gap == 0:
                    on_plane.append(k)
            if below:
                continue
            face = tuple(on_plane)
            if face not in seen:
                seen.add(face)
                faces.append(face)
        for face in faces:
            hull = _convex_hull([support[k] for k in face])
            idx = {support[k]: k for k in face}
            for t in range(len(hull)):
                u, v = idx[hull[t]], idx[hull[(t + 1) % len(hull)]]
                segments.add((min(u, v), max(u, v)))

    if not faces and m >= 2:
        # support of affine dimension 1: univariate-style lower hull along
        # the line, parametrized by whichever coordinate varies
        coord = 0 if len({x for x, _ in support}) > 1 else 1
        order = sorted(range(m), key=lambda k: support[k][coord])
        chain: list[int] = []
        for k in order:
            while len(chain) >= 2:
                p1, p2 = chain[-2], chain[-1]
                t1 = Fraction(support[p1][coord])
                t2 = Fraction(support[p2][coord])
                t3 = Fraction(support[k][coord])
                turn = (t2 - t1) * (heights[k] - heights[p1]) - (
                    t3 - t1
                ) * (heights[p2] - heights[p1])
                if turn <= 0:
                    chain.pop()
                else:
                    break
            chain.append(k)
        for t in range(len(chain) - 1):
            u, v = chain[t], chain[t + 1]
            segments.add((min(u, v), max(u, v)))

    faces.sort()
    return NewtonSubdivision(
        support=support,
        heights=heights,
        faces=tuple(faces),
        segments=tuple(sorted(segments)),
    )


def _dual_vertex(sub: NewtonSubdivision, face) -> Point:
    """Point where all terms of a 2-face achieve the minimum: (-lam, -mu)."""
    pts = [sub.support[k] for k in face]
    hts = [sub.heights[k] for k in face]
    for a, b, c in itertools.combinations(range(len(pts)), 3):
        det = (pts[b][0] - pts[a][0]) * (pts[c][1] - pts[a][1]) - (
            pts[c][0] - pts[a][0]
        ) * (pts[b][1] - pts[a][1])
        if det == 0:
            continue
        lam = Fraction(
            (hts[b] - hts[a]) * (pts[c][1] - pts[a][1])
            - (hts[c] - hts[a]) * (pts[b][1] - pts[a][1]),
            det,
        )
        mu = Fraction(
            (pts[b][0] - pts[a][0]) * (hts[c] - hts[a])
            - (pts[c][0] - pts[a][0]) * (hts[b] - hts[a]),
            det,
        )
        return (-lam, -mu)
    raise InternalConsistencyError("degenerate 2-face in Newton subdivision")


def _curve_by_duality(f: TropicalPolynomial) -> TropicalPlaneCurve:
    if len(f.terms) < 2:
        return TropicalPlaneCurve((), (), ())
    sub = newton_subdivision(f)
    duals = [_dual_vertex(sub, face) for face in sub.faces]
    vertex_set = set(duals)

    adjacency: dict[tuple[int, int], list[int]] = {s: [] for s in sub.segments}
    for fi, face in enumerate(sub.faces):
        hull = _convex_hull([sub.support[k] for k in face])
        idx = {sub.support[k]: k for k in face}
        for t in range(len(hull)):
            u, v = idx[hull[t]], idx[hull[(t + 1) % len(hull)]]
            adjacency[(min(u, v), max(u, v))].append(fi)

    segments = set()
    rays = set()
    for (u, v), touching in adjacency.items():
        if len(touching) == 2:
            p, q = duals[touching[0]], duals[touching[1]]
            segments.add((min(p, q), max(p, q)))
        elif len(touching) == 1:
            face = sub.faces[touching[0]]
            base = duals[touching[0]]
            pu, pv = sub.support[u], sub.support[v]
            dx, dy = -(pv[1] - pu[1]), pv[0] - pu[0]
            pts = [sub.support[k] for k in face]
            cx = Fraction(sum(x for x, _ in pts), len(pts))
            cy = Fraction(sum(y for _, y in pts), len(pts))
            mid = (Fraction(pu[0] + pv[0], 2), Fraction(pu[1] + pv[1], 2))
            # min convention: the dual ray points along the inward normal
            # of the boundary edge (terms off the edge must stay larger)
            inward = dx * (cx - mid[0]) + dy * (cy - mid[1])
            if inward < 0:
                dx, dy = -dx, -dy
            rays.add((base, _primitive(dx, dy)))
        else:
            # no adjacent 2-face: 1-dimensional support, dual is a full line
            (iu, ju), vu = f.terms[u]
            (iv, jv), vv = f.terms[v]
            di, dj = iu - iv, ju - jv
            rhs = vv - vu
            if di != 0:
                p0 = (Fraction(rhs, di), Fraction(0))
            else:
                p0 = (Fraction(0), Fraction(rhs, dj))
            base, direction = _canonical_line(p0, *_primitive(-dj, di))
            rays.add((base, direction))
            rays.add((base, (-direction[0], -direction[1])))
    return _assemble(vertex_set, segments, rays)


# ---------------------------------------------------------------------------
# assembly and the public entry point
# ---------------------------------------------------------------------------


def _assemble(vertex_set, segment_set, ray_set) -> TropicalPlaneCurve:
    vertices = tuple(sorted(vertex_set))
    index = {p: i for i, p in enumerate(vertices)}
    segments = []
    for p, q in segment_set:
        if p not in index or q not in index:
            raise InternalConsistencyError(
                f"segment endpoint {p if p not in index else q} is not a vertex"
            )
        a, b = index[p], index[q]
        segments.append((min(a, b), max(a, b)))
    rays = tuple(
        Ray(base=base, direction=direction, base_vertex=index.get(base))
        for base, direction in sorted(ray_set)
    )
    return TropicalPlaneCurve(
        vertices=vertices, segments=tuple(sorted(segments)), rays=rays
    )


def tropical_curve(f: TropicalPolynomial) -> TropicalPlaneCurve:
    """Corner locus of f, computed by both routes and cross-validated."""
    by_bisectors = _curve_by_bisectors(f)
    by_duality = _curve_by_duality(f)
    if by_bisectors != by_duality:
        raise InternalConsistencyError(
            "bisector arrangement and Newton duality disagree: "
            f"{by_bisectors} vs {by_duality}"
        )
    return by_bisectors


# ---------------------------------------------------------------------------
# SVG rendering (visualization only; floats are fine here)
# ---------------------------------------------------------------------------


def render_svg(
    curve: TropicalPlaneCurve,
    viewport: tuple[float, float, float, float] = (-5.0, -5.0, 5.0, 5.0),
    size: int = 400,
) -> str:
    xmin, ymin, xmax, ymax = (float(v) for v in viewport)
    span_x, span_y = xmax - xmin, ymax - ymin
    scale = size / max(span_x, span_y)

    def to_px(p):
        x = (float(p[0]) - xmin) * scale
        y = size - (float(p[1]) - ymin) * scale
        return f"{x:.3f}", f"{y:.3f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for a, b in curve.segments:
        (x1, y1), (x2, y2) = to_px(curve.vertices[a]), to_px(curve.vertices[b])
        lines.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            'stroke="black" stroke-width="2"/>'
        )
    reach = 2.0 * max(span_x, span_y)
    for ray in curve.rays:
        bx, by = float(ray.base[0]), float(ray.base[1])
        dx, dy = ray.direction
        norm = (dx * dx + dy * dy) ** 0.5
        end = (bx + dx / norm * reach, by + dy / norm * reach)
        (x1, y1), (x2, y2) = to_px((bx, by)), to_px(end)
        lines.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            'stroke="black" stroke-width="2"/>'
        )
    for p in curve.vertices:
        x, y = to_px(p)
        lines.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
