"""Unimodular triangulations of the junior simplex and their toric geometry.

A triangulation is stored against the fixed vertex list of all junior
points plus the three corners, r-scaled (see groups).  Triangles are sorted
index triples; the triangle list is kept sorted, which makes the triple
list itself the canonical key used for fan deduplication.

The toric dictionary used throughout: vertices of the triangulation are
rays of the fan (divisors of the resolution), edges are two-dimensional
cones (curves; compact exactly when the edge is interior to the simplex),
triangles are three-dimensional cones (chart fixed points).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapError, DegenerateEdgeError, InternalError, InvalidFlipError, UserError
from .groups import GroupSpec, junior_points
from .intlin import det3, integer_kernel, primitive, sub


@dataclass(frozen=True)
class Edge:
    """An edge of a triangulation, with the triangles adjacent to it."""

    endpoints: tuple[int, int]  # vertex indices, sorted
    triangles: tuple[int, ...]  # adjacent triangle indices (1 or 2)

    @property
    def interior(self) -> bool:
        return len(self.triangles) == 2


class Triangulation:
    """A basic (unimodular) triangulation of the junior simplex."""

    def __init__(self, group: GroupSpec, triangles, validate: bool = True):
        self.group = group
        self.vertices = tuple(p.c for p in junior_points(group))
        self.vertex_kind = tuple(p.kind for p in junior_points(group))
        self.vindex = {c: i for i, c in enumerate(self.vertices)}
        tris = sorted(tuple(sorted(t)) for t in triangles)
        self.triangles = tuple(tris)
        self._build_edges()
        if validate:
            self._validate()

    def _build_edges(self):
        edge_map: dict[tuple[int, int], list[int]] = {}
        for ti, t in enumerate(self.triangles):
            for a, b in ((0, 1), (0, 2), (1, 2)):
                key = (t[a], t[b])
                edge_map.setdefault(key, []).append(ti)
        self.edges = tuple(
            Edge(k, tuple(v)) for k, v in sorted(edge_map.items())
        )
        self.edge_map = {e.endpoints: e for e in self.edges}
        self.interior_edges = tuple(e for e in self.edges if e.interior)

    def _on_boundary(self, i: int, j: int) -> bool:
        a, b = self.vertices[i], self.vertices[j]
        return any(a[k] == 0 and b[k] == 0 for k in range(3))

    def _validate(self):
        r = self.group.r
        if len(self.triangles) != r:
            raise InternalError(
                f"expected {r} triangles, got {len(self.triangles)}"
            )
        for t in self.triangles:
            d = abs(det3(*(self.vertices[i] for i in t)))
            if d != r * r:
                raise InternalError(f"triangle {t} is not basic (det {d} != r^2)")
        used = set()
        for t in self.triangles:
            used.update(t)
        if used != set(range(len(self.vertices))):
            raise InternalError("triangulation does not use every junior point")
        for e in self.edges:
            if len(e.triangles) > 2:
                raise InternalError(f"edge {e.endpoints} lies in >2 triangles")
            boundary = self._on_boundary(*e.endpoints)
            if boundary and len(e.triangles) != 1:
                raise InternalError(f"boundary edge {e.endpoints} not on exactly 1 triangle")
            if not boundary and len(e.triangles) != 2:
                raise InternalError(f"interior edge {e.endpoints} not shared by 2 triangles")

    @property
    def key(self):
        return self.triangles

    def interior_vertices(self):
        return tuple(i for i, k in enumerate(self.vertex_kind) if k == "interior")

    def edge(self, i: int, j: int) -> Edge:
        key = (i, j) if i < j else (j, i)
        try:
            return self.edge_map[key]
        except KeyError:
            raise UserError(f"no edge {key} in this triangulation") from None

    def opposite_vertices(self, e: Edge) -> tuple[int, ...]:
        """For each adjacent triangle, the vertex opposite e."""
        out = []
        for ti in e.triangles:
            t = self.triangles[ti]
            out.append(next(i for i in t if i not in e.endpoints))
        return tuple(out)

    def triangles_at_vertex(self, v: int) -> tuple[int, ...]:
        return tuple(ti for ti, t in enumerate(self.triangles) if v in t)

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.group == other.group
            and self.triangles == other.triangles
        )

    def __hash__(self):
        return hash((self.group, self.triangles))


def edge_relation(t: Triangulation, e: Edge) -> tuple[int, int]:
    """Integers (a, b) with v1 + v2 + a*w1 + b*w2 = 0 in N, in endpoint order.

    Here (w1, w2) = e.endpoints and v1, v2 are the opposite vertices of the
    two adjacent triangles.  The normal bundle of the edge's curve is
    O(a) + O(b) and crepancy forces a + b = -2.
    """
    if not e.interior:
        raise DegenerateEdgeError(f"edge {e.endpoints} is a boundary edge")
    w1, w2 = (t.vertices[i] for i in e.endpoints)
    v1, v2 = (t.vertices[i] for i in t.opposite_vertices(e))
    rhs = [-(v1[k] + v2[k]) for k in range(3)]
    # Solve a*w1 + b*w2 = rhs from two independent rows, then verify.
    a = b = None
    for i in range(3):
        for j in range(i + 1, 3):
            d = w1[i] * w2[j] - w1[j] * w2[i]
            if d:
                a_f = Fraction(rhs[i] * w2[j] - rhs[j] * w2[i], d)
                b_f = Fraction(w1[i] * rhs[j] - w1[j] * rhs[i], d)
                a, b = a_f, b_f
                break
        if a is not None:
            break
    if a is None or a.denominator != 1 or b.denominator != 1:
        raise InternalError(f"no integral relation at edge {e.endpoints}")
    a, b = int(a), int(b)
    for k in range(3):
        if v1[k] + v2[k] + a * w1[k] + b * w2[k] != 0:
            raise InternalError(f"relation check failed at edge {e.endpoints}")
    if a + b != -2:
        raise InternalError(f"edge {e.endpoints} violates crepancy: a+b = {a + b}")
    return a, b


def curve_degrees(t: Triangulation, e: Edge) -> tuple[int, int]:
    """Normal degrees (a, b) of the curve of an interior edge, sorted a <= b."""
    a, b = edge_relation(t, e)
    return (a, b) if a <= b else (b, a)


def flip(t: Triangulation, e: Edge) -> Triangulation:
    """Flip a (-1,-1) edge: exchange the diagonal of its quadrilateral."""
    a, b = edge_relation(t, e)
    if (a, b) != (-1, -1):
        raise InvalidFlipError(
            f"edge {e.endpoints} has degrees {tuple(sorted((a, b)))}, not (-1,-1)"
        )
    w1, w2 = e.endpoints
    v1, v2 = t.opposite_vertices(e)
    tris = [list(tr) for ti, tr in enumerate(t.triangles) if ti not in e.triangles]
    tris.append([v1, v2, w1])
    tris.append([v1, v2, w2])
    return Triangulation(t.group, tris)


def line_ratio(t: Triangulation, e: Edge, g: GroupSpec):
    """Invariant monomial ratio (m1, m2) cutting out an interior edge's line.

    m1 - m2 is the primitive invariant Laurent exponent vanishing on both
    endpoints of the edge; the common character of the two monomials is
    returned with them.
    """
    if not e.interior:
        raise DegenerateEdgeError(f"edge {e.endpoints} is a boundary edge")
    w1, w2 = (t.vertices[i] for i in e.endpoints)
    kern = integer_kernel([list(w1), list(w2)])
    if len(kern) != 1:
        raise InternalError(f"edge {e.endpoints} kernel has rank {len(kern)}")
    k = primitive(kern[0])
    m = tuple(x * g.char_order(g.weight(k)) for x in k)
    m1 = tuple(max(x, 0) for x in m)
    m2 = tuple(max(-x, 0) for x in m)

    def pure_power(v):
        return sum(1 for x in v if x) == 1

    if (pure_power(m2) and not pure_power(m1)) or (
        pure_power(m1) == pure_power(m2) and m2 > m1
    ):
        m1, m2 = m2, m1
    rho = g.weight(m1)
    if rho != g.weight(m2):
        raise InternalError("ratio sides have different weights")
    return m1, m2, rho


def _plane_coords(d):
    # Linear iso of the plane {sum = 0} onto Z^2, orientation fixed.
    return (d[0] - d[2], d[1] - d[2])


def _angle_key(p):
    """Exact sort key for ccw angle from the positive x-axis."""
    x, y = p
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return (half, 0 if y == 0 else 1, Fraction(-x, y) if y else Fraction(0))


def _ccw_sorted(points):
    # points: list of (tag, (x, y)) with pairwise distinct directions
    return [tag for tag, p in sorted(points, key=lambda tp: _angle_key(tp[1]))]


def star_neighbors_cyclic(t: Triangulation, v: int) -> list[int]:
    """Neighbor vertices of an interior vertex in cyclic (ccw) order."""
    nbrs = set()
    for ti in t.triangles_at_vertex(v):
        for i in t.triangles[ti]:
            if i != v:
                nbrs.add(i)
    c_v = t.vertices[v]
    tagged = [(i, _plane_coords(sub(t.vertices[i], c_v))) for i in nbrs]
    return _ccw_sorted(tagged)


@dataclass(frozen=True)
class StarSurface:
    """The complete toric surface fan of a compact divisor.

    rays lists the neighbor vertices of the center in cyclic order; selfint
    holds the integer b_i with u_{i-1} + u_{i+1} + b_i u_i = 0 modulo the
    center direction, which is the self-intersection of the i-th boundary
    curve on the surface.
    """

    center: int
    rays: tuple[int, ...]
    selfint: tuple[int, ...]


def star_surface(t: Triangulation, v: int) -> StarSurface:
    if t.vertex_kind[v] != "interior":
        raise UserError(f"vertex {t.vertices[v]} is not interior to the simplex")
    rays = star_neighbors_cyclic(t, v)
    n = len(rays)
    c_v = t.vertices[v]
    b = []
    for i in range(n):
        u_prev = t.vertices[rays[(i - 1) % n]]
        u_i = t.vertices[rays[i]]
        u_next = t.vertices[rays[(i + 1) % n]]
        rhs = [-(u_prev[k] + u_next[k]) for k in range(3)]
        # Solve b*u_i + s*v = rhs.
        sol = None
        for p in range(3):
            for q in range(p + 1, 3):
                d = u_i[p] * c_v[q] - u_i[q] * c_v[p]
                if d:
                    b_f = Fraction(rhs[p] * c_v[q] - rhs[q] * c_v[p], d)
                    s_f = Fraction(u_i[p] * rhs[q] - u_i[q] * rhs[p], d)
                    sol = (b_f, s_f)
                    break
            if sol:
                break
        if sol is None or sol[0].denominator != 1:
            raise InternalError(f"no integral wall relation at star of {c_v}")
        b_i = int(sol[0])
        for k in range(3):
            if u_prev[k] + u_next[k] + b_i * u_i[k] + sol[1] * c_v[k] != 0:
                raise InternalError(f"wall relation check failed at star of {c_v}")
        b.append(b_i)
    # Every edge at an interior vertex is interior, so each consecutive ray
    # pair spans a triangle; sanity-check that.
    for i in range(n):
        pair = tuple(sorted((rays[i], rays[(i + 1) % n])))
        found = any(
            set(pair) | {v} == set(t.triangles[ti]) for ti in t.triangles_at_vertex(v)
        )
        if not found:
            raise InternalError(f"star of {c_v} is not a closed fan")
    return StarSurface(v, tuple(rays), tuple(b))


def flip_reachable_fans(t0: Triangulation, cap: int = 100_000) -> dict:
    """BFS closure of a triangulation under flips of (-1,-1) interior edges.

    Returns {canonical key: Triangulation}; raises CapError above cap fans.
    """
    seen = {t0.key: t0}
    frontier = [t0]
    while frontier:
        nxt = []
        for t in frontier:
            for e in t.interior_edges:
                if curve_degrees(t, e) != (-1, -1):
                    continue
                t2 = flip(t, e)
                if t2.key not in seen:
                    if len(seen) >= cap:
                        raise CapError(f"flip closure exceeded cap of {cap} fans")
                    seen[t2.key] = t2
                    nxt.append(t2)
        frontier = nxt
    return seen
