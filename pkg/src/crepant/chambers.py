"""The chamber engine: inequalities, facets, wall types, crossings, graphs.

A chamber of the stability space is presented by a moduli state: a fan
(triangulation) plus its tautological bundle.  The defining inequalities
come in three families: one per exceptional curve (interior edge), and two
per (character, nonempty set of interior vertices) pair, from restricting
the inverse tautological bundle to the reduced divisor and from twisting
by its canonical sheaf.  Exact LP reduces them to the irredundant facet
set; each facet is classified by the curves its wall contracts (none: type
0, isolated rigid curves: type I, ruling fibers of a divisor: type III;
type II cannot occur and raises), and crossing a facet produces the
adjacent state with the matching tautological update.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bundles import TautBundle, divisor_pl, ghilb_taut, star_restriction
from .errors import (
    AmbiguousSplittingError,
    CapError,
    EmptyChamberError,
    InternalError,
    TypeIIWallError,
    UserError,
)
from .fans import Triangulation, edge_relation, flip, star_surface
from .ggraphs import ghilb_fan
from .groups import Character, GroupSpec
from .intlin import primitive
from .lp import LPCounter, cone_membership, find_point
from .recipe import mark_divisors


# ---------------------------------------------------------------------------
# Inequalities


@dataclass(frozen=True)
class Inequality:
    """A defining inequality theta(cls) > 0 (sense '<' classes are negated
    on normalisation, so func always points into the chamber)."""

    raw: tuple  # R(G)-class as generated, before sense normalisation
    sense: str  # ">" or "<" as generated
    source: tuple  # ("curve", endpoints) | ("sub", char, verts) | ("quot", char, verts)

    def functional(self):
        """Functional on nontrivial-character coordinates, > 0 form."""
        c = self.raw if self.sense == ">" else tuple(-x for x in self.raw)
        return tuple(c[i] - c[0] for i in range(1, len(c)))


@dataclass(frozen=True)
class Facet:
    """A facet of a chamber: primitive supporting functional plus the
    classification data of the wall it spans."""

    normal: tuple  # primitive functional, > 0 into the chamber
    wall_type: str  # "0" | "I" | "III"
    tight: tuple  # indices into the chamber's inequality list
    contracted: tuple  # interior-edge endpoint pairs with degree 0 on the wall
    splitting: tuple | None = None  # (r1 chars, r2 chars) for type 0
    divisor: tuple | None = None  # unstable-divisor vertex indices (type 0)
    swept: int | None = None  # swept divisor vertex (type III)


@dataclass(frozen=True)
class ChamberState:
    """A moduli state: fan, tautological bundle, crossing provenance."""

    group: GroupSpec
    fan: Triangulation
    taut: TautBundle
    provenance: tuple = ()

    @property
    def key(self):
        return (self.fan.key, self.taut.key)


def ghilb_state(g: GroupSpec) -> ChamberState:
    gh = ghilb_fan(g)
    return ChamberState(g, gh.fan, ghilb_taut(g, gh))


# ---------------------------------------------------------------------------
# Fast class assembly per state


class FanGeometry:
    """Tautological-bundle-independent data of a fan, cached per fan key:
    star surfaces, divisor restrictions and incidence tables."""

    _cache: dict = {}

    @classmethod
    def of(cls, fan: Triangulation):
        key = (fan.group, fan.key)
        hit = cls._cache.get(key)
        if hit is None:
            hit = cls(fan)
            cls._cache[key] = hit
        return hit

    def __init__(self, fan: Triangulation):
        self.fan = fan
        self.interior = fan.interior_vertices()
        self.stars = {v: star_surface(fan, v) for v in self.interior}
        self.edges = fan.interior_edges
        self.edge_idx = {e.endpoints: i for i, e in enumerate(self.edges)}
        self.tri_sets = [frozenset(t) for t in fan.triangles]
        div_pl = {v: divisor_pl(fan, frozenset([v])) for v in self.interior}
        self.div_star_coeffs = {
            v: {u: star_restriction(div_pl[u], self.stars[v]) for u in self.interior}
            for v in self.interior
        }
        self.div_edge_deg = {
            u: [div_pl[u].degree(e) for e in self.edges] for u in self.interior
        }
    def apply_op(self, v, c):
        # Intersection operator of a star: (M c)_i = c_{i-1} + b_i c_i + c_{i+1}.
        b = self.stars[v].selfint
        n = len(b)
        return [c[(i - 1) % n] + b[i] * c[i] + c[(i + 1) % n] for i in range(n)]


class ClassTable:
    """Per-state tables for assembling R(G)-classes of restricted bundles.

    Euler characteristics on star surfaces expand quadratically in the ray
    coefficients, so the divisor twists needed for the canonical classes
    reduce to precomputed linear corrections: with M the star's
    intersection operator, chi(c) = 1 + (c.Mc + 1.Mc)/2 and
    chi(base + t) = chi(base) + base.Mt + (t.Mt + 1.Mt)/2.
    """

    def __init__(self, state: ChamberState):
        g = state.group
        fan = state.fan
        taut = state.taut
        self.state = state
        geo = FanGeometry.of(fan)
        self.geo = geo
        self.interior = geo.interior
        self.stars = geo.stars
        self.edges = geo.edges
        self.edge_idx = geo.edge_idx
        self.tri_sets = geo.tri_sets
        self.div_edge_deg = geo.div_edge_deg
        r = g.r
        # Per-edge degree data: pairing the chart-generator difference with
        # the opposite vertex of the second chart.
        edge_geo = []
        for e in self.edges:
            t1, t2 = e.triangles
            v2 = fan.opposite_vertices(e)[1]
            edge_geo.append((t1, t2, fan.vertices[v2]))
        self.edge_deg = []
        for k in range(r):
            gens = taut.gens[k]
            row = []
            for t1, t2, c2 in edge_geo:
                a, b = gens[t1], gens[t2]
                row.append(
                    ((a[0] - b[0]) * c2[0] + (a[1] - b[1]) * c2[1] + (a[2] - b[2]) * c2[2])
                    // r
                )
            self.edge_deg.append(row)
        self.star_coeffs = {
            v: [star_restriction(taut.pl(rho), geo.stars[v]) for rho in g.characters]
            for v in self.interior
        }
        # chi of T_sigma tensor T_rho^(-1) on each star.
        self._chi_base = {}
        self._mc = {}  # v -> per character sigma: M . c_sigma
        for v in self.interior:
            mcs = [geo.apply_op(v, self.star_coeffs[v][k]) for k in range(r)]
            self._mc[v] = mcs
            tablev = [[0] * r for _ in range(r)]
            for ks in range(r):
                cs = self.star_coeffs[v][ks]
                for kr in range(r):
                    c = [a - b for a, b in zip(cs, self.star_coeffs[v][kr])]
                    mc = [a - b for a, b in zip(mcs[ks], mcs[kr])]
                    num = sum(x * y for x, y in zip(c, mc)) + sum(mc)
                    if num % 2:
                        raise InternalError("odd Riemann-Roch numerator on a star")
                    tablev[ks][kr] = 1 + num // 2
            self._chi_base[v] = tablev
        # Divisor-twist corrections per (v, u): M . tvec and the quadratic
        # constant; combined per subset on demand.
        self._mt = {
            v: {u: geo.apply_op(v, geo.div_star_coeffs[v][u]) for u in self.interior}
            for v in self.interior
        }

    def curve_class(self, e_idx: int):
        return tuple(self.edge_deg[k][e_idx] + 1 for k in range(self.state.group.r))

    def _subset_data(self, verts: frozenset):
        """Per-vertex twist corrections and edge/triangle sums for a subset."""
        geo = self.geo
        data = {}
        for v in verts:
            t = None
            mt = None
            for u in verts:
                tv = geo.div_star_coeffs[v][u]
                mtv = self._mt[v][u]
                if t is None:
                    t = list(tv)
                    mt = list(mtv)
                else:
                    t = [a + b for a, b in zip(t, tv)]
                    mt = [a + b for a, b in zip(mt, mtv)]
            q2 = sum(a * b for a, b in zip(t, mt)) + sum(mt)
            if q2 % 2:
                raise InternalError("odd quadratic correction in chi expansion")
            # chi(base + t) = chi(base) + base . Mt + (t.Mt + 1.Mt)/2
            data[v] = (mt, q2 // 2)
        edges_inside = [
            ei for (p, q), ei in self.edge_idx.items() if p in verts and q in verts
        ]
        edge_div = {
            ei: sum(self.div_edge_deg[u][ei] for u in verts) for ei in edges_inside
        }
        ntri = sum(1 for ts in self.tri_sets if ts <= verts)
        return data, edges_inside, edge_div, ntri

    def classes_for_subset(self, verts: frozenset):
        """All restriction and canonical classes of a divisor subset, as
        {(kind, kr): class tuple} with kind in {'sub', 'quot'}."""
        g = self.state.group
        r = g.r
        twist, edges_inside, edge_div, ntri = self._subset_data(verts)
        # Component chi table summed over the subset.
        chis = [[0] * r for _ in range(r)]
        for v in verts:
            tv = self._chi_base[v]
            for ks in range(r):
                row = tv[ks]
                target = chis[ks]
                for kr in range(r):
                    target[kr] += row[kr]
        # Edge sums: sum of degrees over interior double curves, per character.
        esum = [sum(self.edge_deg[k][ei] for ei in edges_inside) for k in range(r)]
        nedges = len(edges_inside)
        ediv_total = sum(edge_div[ei] for ei in edges_inside)
        # Twist linear term per character: sum over components of c_k . Mt.
        p = [0] * r
        q_total = 0
        for v in verts:
            mt, q2 = twist[v]
            q_total += q2
            sc = self.star_coeffs[v]
            for k in range(r):
                p[k] += sum(a * m for a, m in zip(sc[k], mt))
        out = {}
        for kr in range(r):
            sub = []
            quot = []
            for ks in range(r):
                chi0 = chis[ks][kr] - (esum[ks] - esum[kr] + nedges) + ntri
                sub.append(chi0)
                quot.append(chi0 + p[ks] - p[kr] + q_total - ediv_total)
            out[("sub", kr)] = tuple(sub)
            out[("quot", kr)] = tuple(quot)
        return out

    def restriction_class(self, kr: int, verts: frozenset):
        return self.classes_for_subset(frozenset(verts))[("sub", kr)]

    def canonical_class(self, kr: int, verts: frozenset):
        return self.classes_for_subset(frozenset(verts))[("quot", kr)]


def _subsets(items):
    items = list(items)
    n = len(items)
    for mask in range(1, 1 << n):
        yield frozenset(items[i] for i in range(n) if (mask >> i) & 1)


def generate_inequalities(state: ChamberState, table: ClassTable | None = None):
    """The defining inequality family of a state, before redundancy work."""
    table = table or ClassTable(state)
    g = state.group
    out = []
    for i, e in enumerate(table.edges):
        out.append(Inequality(table.curve_class(i), ">", ("curve", e.endpoints)))
    for verts in _subsets(table.interior):
        vs = tuple(sorted(verts))
        classes = table.classes_for_subset(verts)
        for k, rho in enumerate(g.characters):
            out.append(Inequality(classes[("sub", k)], ">", ("sub", rho, vs)))
            out.append(Inequality(classes[("quot", k)], "<", ("quot", rho, vs)))
    return out


# ---------------------------------------------------------------------------
# Facet extraction


def indicator_compatible(func) -> bool:
    """Can this functional support a wall?  Wall hyperplanes are cut out by
    proper subrepresentations, whose classes take exactly the values 0 and
    1; with the trivial character's coefficient eliminated, the primitive
    functional of a wall is a 0/1 or -1/0 vector."""
    p = primitive(func)
    vals = set(p)
    vals.add(0)
    return vals <= {0, 1} or vals <= {-1, 0}


def _two_term_sum(f, pool: set):
    """Is f = a + b for two distinct members of the pool (conic combos of
    other valid inequalities are never extreme, hence never facets)?"""
    for a in pool:
        if a is f:
            continue
        b = tuple(x - y for x, y in zip(f, a))
        if any(b) and b != f and b in pool:
            return True
    return False


def _foot_certificate(f, others):
    """Facet certificate without LP: the orthogonal foot of the origin ray
    through f on the hyperplane {f = 0} is q = <f,f> t0 - ... ; here we use
    q = (f.f) e - (f.e) f for a probe point e strictly inside the others,
    scaled to stay integral.  Returns True when a point on the hyperplane
    strictly satisfies every other candidate, which certifies a facet."""
    ff = sum(x * x for x in f)
    for probe in others.get("probes", ()):
        fe = sum(a * b for a, b in zip(f, probe))
        q = tuple(ff * e - fe * x for e, x in zip(probe, f))
        if not any(q):
            continue
        ok = True
        for g in others["candidates"]:
            if g is f:
                continue
            s = sum(a * b for a, b in zip(g, q))
            if s <= 0:
                ok = False
                break
        if ok:
            return True
    return False


def _facet_normals(prims, counter: LPCounter, prune_non_walls: bool = True):
    """Irredundant primitive functionals among the given ones.

    Candidates that cannot span a wall (non-indicator classes) are implied
    by the wall-compatible ones whenever the system cuts out a chamber, so
    they are excluded up front unless prune_non_walls is False.  Cheap
    exact certificates go first: a candidate equal to the sum of two
    others is never extreme, and a point on a candidate's hyperplane
    strictly inside all other candidates certifies a facet.  Exact LP
    settles the remainder (conic membership in the kept set), and a final
    prune leaves precisely the facet set.
    """
    cands = {f for f in prims if any(f)}
    if prune_non_walls:
        # inputs are primitive, so the 0/1-up-to-complement test is a
        # plain value check
        cands = {
            f
            for f in cands
            if set(f) | {0} <= {0, 1} or set(f) | {0} <= {-1, 0}
        }
    uniq = sorted(
        cands,
        key=lambda f: (sum(1 for x in f if x), sum(abs(x) for x in f), f),
    )
    pool = set(uniq)
    kept: list = []
    undecided: list = []
    for f in uniq:
        if _two_term_sum(f, pool):
            continue
        undecided.append(f)
    # Probe points for foot certificates: an exact interior point of the
    # undecided system would do, but any strictly-positive point works as
    # a heuristic; verification is exact either way.
    ctx = {"candidates": undecided}
    probes = []
    if undecided:
        d = len(undecided[0])
        total = [sum(g[i] for g in undecided) for i in range(d)]
        probes.append(tuple(total))
    ctx["probes"] = probes
    need_lp = []
    for f in undecided:
        if _foot_certificate(f, ctx):
            kept.append(f)
        else:
            need_lp.append(f)
    foot_certified = set(kept)
    for f in need_lp:
        ok, _ = cone_membership(f, kept, counter)
        if not ok:
            kept.append(f)
    i = 0
    while i < len(kept):
        f = kept.pop(i)
        if f in foot_certified:
            # certified a facet against the full candidate set already
            kept.insert(i, f)
            i += 1
            continue
        if _two_term_sum(f, set(kept)):
            continue
        ok, _ = cone_membership(f, kept, counter)
        if not ok:
            kept.insert(i, f)
            i += 1
    return sorted(kept)


@dataclass
class Chamber:
    """A computed chamber: inequalities, facets and an interior point."""

    state: ChamberState
    inequalities: list
    facets: list
    interior_point: tuple
    redundant: list = field(default_factory=list)

    def facet_by_normal(self, normal):
        for f in self.facets:
            if f.normal == tuple(normal):
                return f
        raise UserError(f"no facet with normal {normal}")


def chamber_cone(
    state: ChamberState, ineqs, counter: LPCounter, prune_non_walls: bool = True
) -> Chamber:
    """Facets, tight inequality sets and a rational interior point."""
    funcs = [iq.functional() for iq in ineqs]
    for f, iq in zip(funcs, ineqs):
        if not any(f):
            raise InternalError(f"vanishing inequality functional from {iq.source}")
    prims = [primitive(f) for f in funcs]
    normals = _facet_normals(prims, counter, prune_non_walls)
    pt = find_point(normals, [1] * len(normals), counter)
    if pt is None:
        raise EmptyChamberError(
            "inequality system has empty interior; inconsistent state"
        )
    # Exactness guard: every generated inequality, including any excluded
    # from the facet scan, must hold strictly at the interior point.
    from math import lcm

    den = lcm(*(x.denominator for x in pt)) if pt else 1
    ipt = [int(x * den) for x in pt]
    for f, iq in zip(funcs, ineqs):
        if sum(a * b for a, b in zip(f, ipt)) <= 0:
            raise InternalError(
                f"inequality from {iq.source} violated at the interior point"
            )
    facets = []
    normal_set = set(normals)
    curve_prims = [
        (state.fan.edge_map[iq.source[1]], prims[i])
        for i, iq in enumerate(ineqs)
        if iq.source[0] == "curve"
    ]
    for nrm in normals:
        tight = tuple(i for i, p in enumerate(prims) if p == nrm)
        facets.append(_classify(state, nrm, ineqs, tight, curve_prims))
    redundant = [i for i, p in enumerate(prims) if p not in normal_set]
    return Chamber(state, list(ineqs), facets, pt, redundant)


# ---------------------------------------------------------------------------
# Wall classification


def _classify(state: ChamberState, normal, ineqs, tight, curve_prims) -> Facet:
    """Classify the wall spanned by a facet via its contracted curves."""
    fan = state.fan
    g = state.group
    contracted = [e for e, p in curve_prims if p == normal]
    if not contracted:
        r1, r2 = _splitting_from_normal(g, normal)
        divisor = _unstable_divisor(state, normal, ineqs, tight, r1, r2)
        return Facet(
            normal,
            "0",
            tight,
            (),
            splitting=(tuple(sorted(c.index for c in r1)), tuple(sorted(c.index for c in r2))),
            divisor=divisor,
        )
    fiber_edges = []
    flop_edges = []
    swept = set()
    for e in contracted:
        a, b = edge_relation(fan, e)
        if (a, b) == (-1, -1):
            flop_edges.append(e)
        elif 0 in (a, b):
            fiber_edges.append(e)
            swept.add(e.endpoints[0] if b == 0 else e.endpoints[1])
        else:
            raise TypeIIWallError(
                f"wall contracts a curve with degrees {(a, b)}; the"
                " contraction would drop a divisor to a point"
            )
    for v in set(fan.interior_vertices()):
        at_v = [
            e for e in fan.interior_edges if v in e.endpoints
        ]
        if at_v and all(e in contracted for e in at_v):
            raise TypeIIWallError(
                f"wall contracts every curve at vertex {fan.vertices[v]}"
            )
    if fiber_edges:
        if flop_edges:
            raise InternalError(
                "wall contracts both rigid curves and ruling fibers"
            )
        if len(swept) != 1:
            raise InternalError(
                f"wall sweeps {len(swept)} divisors; expected exactly one"
            )
        return Facet(
            normal,
            "III",
            tight,
            tuple(e.endpoints for e in fiber_edges),
            swept=next(iter(swept)),
        )
    # Simultaneous flops must not share a triangle.
    tris = [set(e.triangles) for e in flop_edges]
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            if tris[i] & tris[j]:
                raise InternalError("flop curves of one wall share a chart")
    return Facet(normal, "I", tight, tuple(e.endpoints for e in flop_edges))


def _splitting_from_normal(g: GroupSpec, normal):
    """Recover the sub/quotient character split from a type-0 facet normal.

    The normal, as a class with zero coefficient at the trivial character,
    is the indicator of R1 (trivial character outside R1) or minus the
    indicator of R2 (trivial character inside R1)."""
    cls = (0,) + tuple(normal)
    values = set(cls)
    if values <= {0, 1}:
        r1 = frozenset(c for c, x in zip(g.characters, cls) if x == 1)
        r2 = frozenset(g.characters) - r1
    elif values <= {-1, 0}:
        r2 = frozenset(c for c, x in zip(g.characters, cls) if x == -1)
        r1 = frozenset(g.characters) - r2
    else:
        raise AmbiguousSplittingError(
            f"type-0 facet normal {normal} is not a 0/1 class up to complement"
        )
    if not r1 or not r2:
        raise AmbiguousSplittingError("degenerate character split at a type-0 wall")
    return r1, r2


def _tautbundles_agree_on(state: ChamberState, chars, verts) -> bool:
    """Do the bundles of the given characters restrict isomorphically to
    every component of the divisor of the given vertices?  Tested via
    degrees on all torus curves at each component (faithful on Pic)."""
    taut = state.taut
    fan = state.fan
    chars = sorted(chars, key=lambda c: c.index)
    base = chars[0]
    edges = [
        e
        for e in fan.interior_edges
        if any(v in e.endpoints for v in verts)
    ]
    for c in chars[1:]:
        for e in edges:
            if taut.degree(c, e) != taut.degree(base, e):
                return False
    return True


def _unstable_divisor(state, normal, ineqs, tight, r1, r2):
    """Recover the unstable divisor of a type-0 wall from tight divisor
    inequalities whose class is exactly the sub/quotient indicator."""
    g = state.group
    ind_r1 = tuple(1 if c in r1 else 0 for c in g.characters)
    ind_r2 = tuple(1 if c in r2 else 0 for c in g.characters)
    candidates = set()
    for i in tight:
        iq = ineqs[i]
        kind = iq.source[0]
        if kind == "sub" and iq.raw == ind_r1:
            candidates.add(("sub", iq.source[2]))
        elif kind == "quot" and iq.raw == ind_r2:
            candidates.add(("quot", iq.source[2]))
    valid = set()
    for kind, verts in candidates:
        side = r1 if kind == "sub" else r2
        if _tautbundles_agree_on(state, side, verts):
            valid.add(verts)
    if len(valid) != 1:
        raise AmbiguousSplittingError(
            f"type-0 wall with {len(valid)} candidate unstable divisors"
        )
    return next(iter(valid))


# ---------------------------------------------------------------------------
# Crossing


def classify_wall(chamber: Chamber, facet: Facet) -> str:
    """Re-derive a facet's wall type from scratch (cross-check entry
    point); facets returned by chamber_cone already carry this."""
    prims = [primitive(iq.functional()) for iq in chamber.inequalities]
    curve_prims = [
        (chamber.state.fan.edge_map[iq.source[1]], prims[i])
        for i, iq in enumerate(chamber.inequalities)
        if iq.source[0] == "curve"
    ]
    tight = tuple(i for i, p in enumerate(prims) if p == facet.normal)
    redone = _classify(
        chamber.state, facet.normal, chamber.inequalities, tight, curve_prims
    )
    if redone.wall_type != facet.wall_type:
        raise InternalError("wall type changed on reclassification")
    return redone.wall_type


def cross_wall(state: ChamberState, facet: Facet) -> ChamberState:
    """The adjacent state across a classified facet."""
    g = state.group
    prov = state.provenance + ((facet.wall_type, facet.normal),)
    if facet.wall_type == "0":
        r2 = frozenset(Character(i) for i in facet.splitting[1])
        taut = state.taut.twist_by_divisor(facet.divisor, r2)
        return ChamberState(g, state.fan, taut, prov)
    if facet.wall_type == "I":
        fan = state.fan
        for endpoints in facet.contracted:
            fan = flip(fan, fan.edge(*endpoints))
        taut = state.taut.proper_transform(fan)
        return ChamberState(g, fan, taut, prov)
    if facet.wall_type == "III":
        fiber_edges = [state.fan.edge(*ep) for ep in facet.contracted]
        taut = state.taut.typeIII_twist(facet.swept, fiber_edges)
        return ChamberState(g, state.fan, taut, prov)
    raise InternalError(f"unknown wall type {facet.wall_type}")


def compute_chamber(
    state: ChamberState, counter: LPCounter, prune_non_walls: bool = True
) -> Chamber:
    table = ClassTable(state)
    ineqs = generate_inequalities(state, table)
    return chamber_cone(state, ineqs, counter, prune_non_walls)


# ---------------------------------------------------------------------------
# Enumeration


@dataclass
class ChamberGraph:
    """BFS result: canonical states, their facet data, typed adjacency.

    Nodes are sorted by canonical state key, so identical inputs give
    identical graphs regardless of traversal order.
    """

    group: GroupSpec
    nodes: list  # list of (state, facets tuple, interior point)
    edges: list  # sorted (from_id, to_id, facet normal, wall type)
    node_ids: dict  # state key -> id
    lp_count: int

    def fans(self):
        return {st.fan.key for st, _, _ in self.nodes}


def _expand_state(state: ChamberState, counter: LPCounter):
    """One BFS step: the chamber of a state and all its crossings."""
    chamber = compute_chamber(state, counter)
    crossings = []
    for facet in chamber.facets:
        crossings.append((facet, cross_wall(state, facet)))
    return chamber, crossings


_WORKER_GROUP = None


def _worker_expand(payload):
    state = payload
    wcounter = LPCounter()
    chamber, crossings = _expand_state(state, wcounter)
    return (
        state.key,
        tuple(chamber.facets),
        chamber.interior_point,
        [(f.normal, f.wall_type, ns) for f, ns in crossings],
        wcounter.count,
    )


def enumerate_chambers(
    g: GroupSpec,
    max_chambers: int = 10_000,
    max_lp: int = 100_000,
    verify_crossings: bool = True,
    workers: int = 1,
) -> ChamberGraph:
    """BFS over chambers from the G-Hilb chamber across all facets.

    With workers > 1 the frontier is expanded by a process pool; results
    are merged on canonical state keys, and the output is canonically
    sorted either way.
    """
    counter = LPCounter(max_lp)
    s0 = ghilb_state(g)
    data = {}  # key -> (state, facets, interior point)
    raw_edges = []  # (from_key, to_key, normal, type)
    seen = {s0.key: s0}

    def merge(key, facets, pt, crossings):
        new_states = []
        data[key] = (seen[key], facets, pt)
        for normal, wtype, nstate in crossings:
            raw_edges.append((key, nstate.key, normal, wtype))
            if nstate.key not in seen:
                if len(seen) >= max_chambers:
                    raise CapError(f"chamber cap of {max_chambers} exceeded")
                seen[nstate.key] = nstate
                new_states.append(nstate)
        return new_states

    if workers > 1:
        import multiprocessing as mp
        import queue as _queue
        from collections import deque

        pending = deque([s0])
        results: _queue.SimpleQueue = _queue.SimpleQueue()
        outstanding = 0
        with mp.get_context("fork").Pool(workers) as pool:
            while pending or outstanding:
                while pending and outstanding < 16 * workers:
                    pool.apply_async(
                        _worker_expand,
                        (pending.popleft(),),
                        callback=results.put,
                        error_callback=results.put,
                    )
                    outstanding += 1
                res = results.get()
                outstanding -= 1
                if isinstance(res, BaseException):
                    raise res
                key, facets, pt, crossings, nlp = res
                counter.count += nlp
                if counter.cap and counter.count > counter.cap:
                    raise CapError(f"LP solve cap of {counter.cap} exceeded")
                pending.extend(merge(key, facets, pt, crossings))
    else:
        queue = [s0]
        qi = 0
        while qi < len(queue):
            state = queue[qi]
            qi += 1
            chamber, crossings = _expand_state(state, counter)
            queue.extend(
                merge(
                    state.key,
                    tuple(chamber.facets),
                    chamber.interior_point,
                    [(f.normal, f.wall_type, ns) for f, ns in crossings],
                )
            )
    # Canonical ids by sorted state key.
    keys = sorted(data.keys())
    node_ids = {k: i for i, k in enumerate(keys)}
    nodes = [data[k] for k in keys]
    edges = sorted(
        (node_ids[a], node_ids[b], normal, wtype)
        for a, b, normal, wtype in raw_edges
    )
    graph = ChamberGraph(g, nodes, edges, node_ids, counter.count)
    if verify_crossings:
        _verify_graph(graph)
    return graph


def _verify_graph(graph: ChamberGraph):
    """Wall-crossing coherence from the completed graph: every directed
    edge has its reverse with the negated facet normal and the same wall
    type.  Because the reverse edge was produced by actually crossing the
    adjacent chamber's facet, its presence certifies both the shared-facet
    condition and the double-crossing identity."""
    edge_set = {(a, b, n, t) for a, b, n, t in graph.edges}
    for a, b, normal, wtype in graph.edges:
        neg = tuple(-x for x in normal)
        if (b, a, neg, wtype) not in edge_set:
            raise InternalError(
                f"missing reverse crossing for wall {normal} of type {wtype}"
            )


# ---------------------------------------------------------------------------
# The G-Hilb chamber, with its specialised inequality family


def ghilb_chamber(
    g: GroupSpec, counter: LPCounter | None = None, prune_non_walls: bool = True
):
    """The chamber of the G-Hilbert scheme, computed twice: once from the
    generic inequality family and once from the specialised one (curve
    classes, a plain positivity per marked character, quotient inequalities
    at the trivial character only).  The two facet systems must agree."""
    counter = counter or LPCounter()
    gh = ghilb_fan(g)
    state = ChamberState(g, gh.fan, ghilb_taut(g, gh))
    table = ClassTable(state)
    generic = chamber_cone(
        state, generate_inequalities(state, table), counter, prune_non_walls
    )

    marks = mark_divisors(gh, g)
    special = []
    for i, e in enumerate(table.edges):
        special.append(Inequality(table.curve_class(i), ">", ("curve", e.endpoints)))
    for v, chars in sorted(marks.items()):
        for rho in sorted(chars, key=lambda c: c.index):
            cls = tuple(1 if c == rho else 0 for c in g.characters)
            special.append(Inequality(cls, ">", ("sub", rho, (v,))))
    k0 = g.char_index[g.trivial]
    for verts in _subsets(table.interior):
        vs = tuple(sorted(verts))
        special.append(
            Inequality(table.canonical_class(k0, verts), "<", ("quot", g.trivial, vs))
        )
    specialised = chamber_cone(state, special, counter)
    if {f.normal for f in generic.facets} != {f.normal for f in specialised.facets}:
        raise InternalError(
            "specialised G-Hilb walls disagree with the generic chamber"
        )
    return generic
