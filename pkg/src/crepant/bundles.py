"""Tautological line bundles on toric crepant resolutions, exactly.

A line bundle on the resolution is piecewise-linear data: one Laurent
exponent per triangle of the fan, the local generator of the bundle on
that chart.  Pairing the generator against the triangle's vertices gives
r-scaled integer ray coefficients; agreement of these at shared vertices
is the gluing (PL-consistency) condition.  The tautological bundle T_rho
of the G-Hilbert scheme has the G-graph monomial of weight rho as its
chart generator; wall crossings move the coefficients by divisor twists
and the generators are re-solved per chart.

Degrees, Euler characteristics on star surfaces and the R(G)-valued
classes of restricted bundles are all integer computations on this data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalError, PreconditionError, UserError
from .fans import StarSurface, Triangulation, star_surface
from .groups import Character, GroupSpec, invariant_lattice_basis
from .intlin import dot, hnf_rows, solve3_int, sub

Exponent = tuple[int, int, int]

# ---------------------------------------------------------------------------
# R(G)-valued classes and stability parameters


def rclass_zero(g: GroupSpec):
    return tuple(0 for _ in g.characters)


def rclass_of_char(g: GroupSpec, rho: Character):
    return tuple(1 if c == rho else 0 for c in g.characters)


def rclass_regular(g: GroupSpec):
    return tuple(1 for _ in g.characters)


def normalize_mod_regular(cls):
    """Canonical representative of a class modulo the regular class [R].

    Shifts by multiples of (1,...,1) so the first coefficient (the trivial
    character) is zero.
    """
    t = cls[0]
    return tuple(c - t for c in cls)


@dataclass(frozen=True)
class ThetaVector:
    """A stability parameter: one rational per character, summing to zero."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(self.values) != 0:
            raise UserError("stability parameter does not sum to zero")

    def __call__(self, rho_index: int) -> Fraction:
        return self.values[rho_index]


def theta_from_nontrivial(g: GroupSpec, vals) -> ThetaVector:
    """Build a ThetaVector from values on the nontrivial characters."""
    vals = [Fraction(v) for v in vals]
    return ThetaVector(tuple([-sum(vals)] + vals))


# ---------------------------------------------------------------------------
# Piecewise-linear bundle data


class PLData:
    """Per-triangle Laurent exponents of a line bundle's chart generators."""

    __slots__ = ("fan", "per_tri")

    def __init__(self, fan: Triangulation, per_tri):
        self.fan = fan
        self.per_tri = tuple(tuple(m) for m in per_tri)

    def degree(self, e) -> int:
        """Degree of the bundle on the curve of an interior edge."""
        t1, t2 = e.triangles
        v2 = self.fan.opposite_vertices(e)[1]
        d = sub(self.per_tri[t1], self.per_tri[t2])
        num = dot(d, self.fan.vertices[v2])
        r = self.fan.group.r
        if num % r:
            raise InternalError("non-integral degree; PL data inconsistent")
        return num // r


def divisor_pl(fan: Triangulation, vertices: frozenset[int]) -> PLData:
    """PL data of O(D) for D the sum of the divisors of the given vertices."""
    r = fan.group.r
    per_tri = []
    for t in fan.triangles:
        rows = [list(fan.vertices[i]) for i in t]
        rhs = [-r if i in vertices else 0 for i in t]
        per_tri.append(solve3_int(rows, rhs))
    return PLData(fan, per_tri)


def star_restriction(pl: PLData, star: StarSurface) -> tuple[int, ...]:
    """Ray coefficients of the bundle restricted to a star surface.

    Normalises the PL data to vanish on a base chart at the center; the
    coefficient on the i-th ray is then read off from any chart containing
    both the center and that ray.
    """
    fan = pl.fan
    r = fan.group.r
    v = star.center
    tris_at_v = fan.triangles_at_vertex(v)
    base = tris_at_v[0]
    m0 = pl.per_tri[base]
    coeffs = []
    for u in star.rays:
        ti = next(
            t for t in tris_at_v if u in fan.triangles[t]
        )
        d = sub(pl.per_tri[ti], m0)
        num = -dot(d, fan.vertices[u])
        if num % r:
            raise InternalError("non-Cartier restriction data on a smooth fan")
        coeffs.append(num // r)
    return tuple(coeffs)


def euler_char_surface(star: StarSurface, coeffs) -> int:
    """Euler characteristic of a line bundle on a complete smooth toric
    surface, from its ray coefficients and the surface's self-intersections.

    Uses chi(L) = chi(O) + (L.L - L.K)/2 with the intersection form read
    off the cyclic fan: adjacent boundary curves meet once and the i-th
    has self-intersection b_i.
    """
    b = star.selfint
    n = len(b)
    if len(coeffs) != n:
        raise UserError("coefficient data does not match the star's rays")
    degs = [
        coeffs[(i - 1) % n] + b[i] * coeffs[i] + coeffs[(i + 1) % n]
        for i in range(n)
    ]
    l2 = sum(c * d for c, d in zip(coeffs, degs))
    lk = -sum(degs)  # K = -sum of boundary curves
    num = l2 - lk
    if num % 2:
        raise InternalError("odd Riemann-Roch numerator on a smooth surface")
    return 1 + num // 2


# ---------------------------------------------------------------------------
# The tautological bundle


class TautBundle:
    """One line bundle per character, with trivial bundle at the trivial
    character; immutable and canonicalised.

    gens[k][t] is the chart generator exponent of the k-th character's
    bundle on triangle t; coeffs[k][w] is the r-scaled ray coefficient at
    vertex w (equal to minus the pairing of any adjacent chart generator
    against the vertex).
    """

    def __init__(
        self,
        group: GroupSpec,
        fan: Triangulation,
        gens,
        canonicalize=True,
        _trusted=False,
        _coeffs=None,
    ):
        self.group = group
        self.fan = fan
        gens = [list(map(tuple, row)) for row in gens]
        if _coeffs is not None and not _trusted:
            raise InternalError("precomputed coefficients require a trusted source")
        if canonicalize:
            reducer = _principal_reducer(group, fan)
            coeff_rows = _coeffs if _coeffs is not None else [None] * group.r
            for k in range(group.r):
                shift = reducer(gens[k], coeff_rows[k])
                if shift != (0, 0, 0):
                    gens[k] = [
                        tuple(m[j] + shift[j] for j in range(3)) for m in gens[k]
                    ]
                    if _coeffs is not None:
                        verts = fan.vertices
                        coeff_rows[k] = tuple(
                            a - dot(shift, verts[w])
                            for w, a in enumerate(coeff_rows[k])
                        )
            if _coeffs is not None:
                _coeffs = coeff_rows
        self.gens = tuple(tuple(row) for row in gens)
        if _coeffs is not None:
            self.coeffs = tuple(tuple(row) for row in _coeffs)
        else:
            self.coeffs = tuple(self._coeff_row(row) for row in self.gens)
        if not _trusted:
            self._validate()
        else:
            triv = group.char_index[group.trivial]
            if any(c != 0 for c in self.coeffs[triv]):
                raise InternalError(
                    "tautological bundle of the trivial character not trivial"
                )

    def _coeff_row(self, row):
        # Coefficients are r-scaled: the honest rational coefficient of the
        # fractional divisor is this integer divided by r.
        fan = self.fan
        out = [None] * len(fan.vertices)
        for ti, t in enumerate(fan.triangles):
            m = row[ti]
            for w in t:
                val = -dot(m, fan.vertices[w])
                if out[w] is None:
                    out[w] = val
                elif out[w] != val:
                    raise InternalError(
                        f"PL-inconsistent chart generators at vertex {fan.vertices[w]}"
                    )
        return tuple(out)

    def _validate(self):
        g = self.group
        for k, rho in enumerate(g.characters):
            for m in self.gens[k]:
                if g.weight(m) != rho:
                    raise InternalError("chart generator has wrong character")
        triv = g.char_index[g.trivial]
        if any(c != 0 for c in self.coeffs[triv]):
            raise InternalError("tautological bundle of the trivial character not trivial")

    # -- basic data ---------------------------------------------------------

    def pl(self, rho: Character) -> PLData:
        return PLData(self.fan, self.gens[self.group.char_index[rho]])

    def pl_diff(self, sigma: Character, rho: Character) -> PLData:
        """PL data of T_sigma tensor T_rho^{-1}."""
        ks, kr = self.group.char_index[sigma], self.group.char_index[rho]
        return PLData(
            self.fan,
            [sub(a, b) for a, b in zip(self.gens[ks], self.gens[kr])],
        )

    def degree(self, rho: Character, e) -> int:
        """Degree of T_rho on the curve of an interior edge."""
        return self.pl(rho).degree(e)

    @property
    def key(self):
        return self.coeffs

    # -- R(G)-valued classes -------------------------------------------------

    def curve_class(self, e):
        """Class of the structure sheaf of an interior edge's curve."""
        return tuple(self.degree(rho, e) + 1 for rho in self.group.characters)

    def _star_cache(self):
        if not hasattr(self, "_stars"):
            self._stars = {
                v: star_surface(self.fan, v) for v in self.fan.interior_vertices()
            }
        return self._stars

    def _chi_on_component(self, pl: PLData, v: int) -> int:
        star = self._star_cache()[v]
        return euler_char_surface(star, star_restriction(pl, star))

    def _chi_on_divisor(self, pl: PLData, vertices: frozenset[int]) -> int:
        """chi of a bundle on a reduced normal-crossing union of star
        surfaces, by inclusion-exclusion over components, double curves and
        triple points."""
        fan = self.fan
        total = sum(self._chi_on_component(pl, v) for v in vertices)
        for e in fan.interior_edges:
            a, b = e.endpoints
            if a in vertices and b in vertices:
                total -= pl.degree(e) + 1
        for t in fan.triangles:
            if all(i in vertices for i in t):
                total += 1
        return total

    def restriction_class(self, rho: Character, vertices):
        """Class of T_rho^{-1} restricted to the reduced divisor of the
        given interior vertices: sum over sigma of chi(T_sigma tensor
        T_rho^{-1} restricted), as a vector over characters."""
        vertices = frozenset(vertices)
        if not vertices:
            raise UserError("empty divisor")
        return tuple(
            self._chi_on_divisor(self.pl_diff(sigma, rho), vertices)
            for sigma in self.group.characters
        )

    def canonical_class(self, rho: Character, vertices):
        """Class of T_rho^{-1} tensor omega_D on the reduced divisor D of
        the given vertices, with omega_D = O(D)|_D by adjunction on the
        crepant resolution."""
        vertices = frozenset(vertices)
        if not vertices:
            raise UserError("empty divisor")
        dv = divisor_pl(self.fan, vertices)
        kr = self.group.char_index[rho]
        out = []
        for ks in range(self.group.r):
            per_tri = [
                tuple(a[j] - b[j] + d[j] for j in range(3))
                for a, b, d in zip(self.gens[ks], self.gens[kr], dv.per_tri)
            ]
            out.append(self._chi_on_divisor(PLData(self.fan, per_tri), vertices))
        return tuple(out)

    # -- wall-crossing updates ----------------------------------------------

    def twist_by_divisor(self, vertices, r2_chars, rho0_side=None) -> "TautBundle":
        """Type-0 update: R1/R2 partition the characters; the side away
        from the trivial character is twisted by the unstable divisor.

        With the trivial character on the sub side R1, bundles of R2 become
        T(-D); with it on the quotient side R2, bundles of R1 become T(D).
        """
        g = self.group
        r2 = frozenset(r2_chars)
        if r2 - set(g.characters):
            raise PreconditionError("R2 contains unknown characters")
        r1 = frozenset(g.characters) - r2
        rho0_in_r2 = g.trivial in r2
        if rho0_side is not None and (rho0_side == "r2") != rho0_in_r2:
            raise PreconditionError("side flag contradicts the partition")
        if rho0_in_r2:
            twisted, sign = r1, +1
        else:
            twisted, sign = r2, -1
        return self._twist(vertices, twisted, sign)

    def _twist(self, vertices, twisted_chars, sign) -> "TautBundle":
        # Twisting by an invariant divisor preserves PL-consistency and
        # chart-generator characters, so the result skips revalidation; the
        # scaled ray coefficients shift by a constant on the divisor.
        vertices = frozenset(vertices)
        dv = divisor_pl(self.fan, vertices)
        r = self.group.r
        shift = [sign * r if w in vertices else 0 for w in range(len(self.fan.vertices))]
        gens = []
        coeffs = []
        for k, rho in enumerate(self.group.characters):
            if rho in twisted_chars:
                gens.append(
                    [
                        tuple(m[j] + sign * d[j] for j in range(3))
                        for m, d in zip(self.gens[k], dv.per_tri)
                    ]
                )
                coeffs.append([a + s for a, s in zip(self.coeffs[k], shift)])
            else:
                gens.append(list(self.gens[k]))
                coeffs.append(list(self.coeffs[k]))
        return TautBundle(
            self.group, self.fan, gens, _trusted=True, _coeffs=coeffs
        )

    def typeIII_twist(self, divisor_vertex: int, fiber_edges) -> "TautBundle":
        """Type-III update: twist by the swept divisor according to the
        fiber degrees, which must all lie in {0,1} or all in {0,-1}."""
        g = self.group
        degs = {}
        for rho in g.characters:
            vals = {self.degree(rho, e) for e in fiber_edges}
            if len(vals) != 1:
                raise InternalError("fiber degrees disagree on homologous fibers")
            degs[rho] = vals.pop()
        values = set(degs.values())
        if values <= {0, 1}:
            sign = +1
        elif values <= {0, -1}:
            sign = -1
        else:
            raise PreconditionError(
                f"fiber degrees {sorted(values)} not within {{0,1}} or {{0,-1}}"
            )
        twisted = {rho for rho, d in degs.items() if d == sign}
        return self._twist([divisor_vertex], twisted, sign)

    def proper_transform(self, new_fan: Triangulation) -> "TautBundle":
        """Type-I update: ray coefficients are unchanged by a flop; chart
        generators are re-solved on the new triangles."""
        return TautBundle.from_coeffs(self.group, new_fan, self.coeffs)

    @staticmethod
    def from_coeffs(group: GroupSpec, fan: Triangulation, coeffs) -> "TautBundle":
        """Rebuild chart generators from ray coefficients.

        Solving the 3x3 pairing system on each basic triangle yields the
        unique exponent; integrality and the character of the result are
        validated by the constructor.
        """
        gens = []
        for k in range(group.r):
            row = []
            for t in fan.triangles:
                rows = [list(fan.vertices[i]) for i in t]
                rhs = [-coeffs[k][i] for i in t]
                row.append(solve3_int(rows, rhs))
            gens.append(row)
        return TautBundle(group, fan, gens)


def ghilb_taut(g: GroupSpec, gh) -> TautBundle:
    """Tautological bundle of the G-Hilbert scheme: the chart generator of
    T_rho on a triangle is the G-graph monomial of weight rho."""
    fan = gh.fan
    gens = [[None] * len(fan.triangles) for _ in range(g.r)]
    for ti, t in enumerate(fan.triangles):
        gamma = gh.by_triangle[t]
        for k in range(g.r):
            gens[k][ti] = gamma.gens[k]
    return TautBundle(g, fan, gens)


def line_bundle_of_theta(taut: TautBundle, theta: ThetaVector):
    """Rational ray-coefficient data of the fractional bundle attached to a
    stability parameter: the theta-weighted sum of the tautological
    bundles' coefficients."""
    g = taut.group
    nv = len(taut.fan.vertices)
    out = [Fraction(0)] * nv
    for k in range(g.r):
        th = theta.values[k]
        if th:
            for w in range(nv):
                out[w] += th * taut.coeffs[k][w]
    return tuple(out)


def theta_degree(taut: TautBundle, theta: ThetaVector, e) -> Fraction:
    """Degree of the theta line bundle on an interior edge's curve."""
    return sum(
        theta.values[k] * taut.degree(rho, e)
        for k, rho in enumerate(taut.group.characters)
    )


# ---------------------------------------------------------------------------
# Canonical form against the principal sublattice

_REDUCER_CACHE: dict = {}


def _principal_reducer(group: GroupSpec, fan: Triangulation):
    """Returns a function computing the canonical shift for a generator row.

    The principal sublattice is the image of the invariant exponent lattice
    under pairing against all vertices; reduction is by Hermite normal form
    with the three corner vertices' columns first, so canonical
    representatives are pinned at the corners in a deterministic way.
    """
    cache_key = (group, fan.vertices)
    if cache_key in _REDUCER_CACHE:
        return _REDUCER_CACHE[cache_key]
    verts = fan.vertices
    r = group.r
    corners = [verts.index((r, 0, 0)), verts.index((0, r, 0)), verts.index((0, 0, r))]
    rest = [i for i in range(len(verts)) if i not in corners]
    order = corners + rest
    basis = invariant_lattice_basis(group)
    rows = []
    for b in basis:
        paired = [dot(b, verts[i]) for i in order]  # r-scaled pairings
        rows.append(paired + list(b))
    nv = len(verts)
    hnf = hnf_rows(rows)

    def reduce_row(gen_row, coeff_row=None):
        # r-scaled coefficient vector in permuted order, read off the first
        # chart containing each vertex (consistency is validated later).
        if coeff_row is None:
            a = [None] * nv
            for ti, t in enumerate(fan.triangles):
                m = gen_row[ti]
                for w in t:
                    if a[w] is None:
                        a[w] = -dot(m, verts[w])
        else:
            a = list(coeff_row)
        a = [a[i] for i in order]
        shift = [0, 0, 0]
        for row in hnf:
            pcol = next(j for j, x in enumerate(row[:nv]) if x != 0)
            q = a[pcol] // row[pcol]
            if q:
                for j in range(nv):
                    a[j] -= q * row[j]
                for j in range(3):
                    shift[j] += q * row[nv + j]
        return tuple(shift)

    _REDUCER_CACHE[cache_key] = reduce_row
    return reduce_row
