"""Finite abelian subgroups of SL(3,C) given by diagonal weights.

A group is entered as a sum of cyclic factors ``1/n(a,b,c)`` meaning the
diagonal action ``(x,y,z) -> (e^a x, e^b y, e^c z)`` for ``e`` a primitive
n-th root of unity; the SL(3) condition is ``a+b+c = 0 mod n`` per factor.
Characters of G are tuples of residues, one per factor, and the weight of a
Laurent monomial x^e1 y^e2 z^e3 is the character by which G scales it.

Lattice conventions: N is the overlattice of Z^3 generated by the vectors
(1/r)(age data) of group elements.  All points of N are stored r-scaled as
integer triples, so the corner e1 of the junior simplex is (r,0,0) and a
group element g = diag(e^a1, e^a2, e^a3) of age 1 is the triple (a1,a2,a3).
The dual lattice M of G-invariant Laurent exponents pairs integrally with
N, i.e. dot(m, c) = 0 mod r for every stored point c.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, lcm

from .errors import GroupParseError, GroupValidationError
from .intlin import det3, dot, hnf_rows, integer_kernel

Exponent = tuple[int, int, int]


@dataclass(frozen=True)
class Character:
    """A character of G as a tuple of residues, one per cyclic factor."""

    index: tuple[int, ...]

    def __str__(self):
        if len(self.index) == 1:
            return f"rho{self.index[0]}"
        return "rho(" + ",".join(str(i) for i in self.index) + ")"


class GroupSpec:
    """An abelian subgroup of SL(3,C) acting diagonally.

    Attributes:
        factors: list of (order, (w1,w2,w3)) cyclic factors, weights reduced
            mod order.
        r: the group order (product of factor orders).
        characters: all characters in lexicographic index order; the trivial
            character is first.
    """

    def __init__(self, factors):
        cleaned = []
        for order, weights in factors:
            if order < 1:
                raise GroupValidationError(f"factor order must be >= 1, got {order}")
            w = tuple(x % order for x in weights)
            if sum(w) % order != 0:
                raise GroupValidationError(
                    f"weights {weights} do not sum to 0 mod {order}; not in SL(3)"
                )
            cleaned.append((order, w))
        self.factors = tuple(cleaned)
        self.r = 1
        for order, _ in self.factors:
            self.r *= order
        self.orders = tuple(order for order, _ in self.factors)
        # Coordinate weights: weight of x, y, z as characters.
        self.coord_weights = tuple(
            Character(tuple(w[i] % n for n, w in self.factors)) for i in range(3)
        )
        self.characters = tuple(
            Character(idx) for idx in product(*(range(n) for n in self.orders))
        )
        self.char_index = {c: i for i, c in enumerate(self.characters)}
        if len(set(self._weights_of_cube())) != self.r:
            raise GroupValidationError(
                "coordinate weights do not generate all characters; "
                "the diagonal action is not faithful for the stated order"
            )

    def _weights_of_cube(self):
        seen = {self.trivial}
        frontier = [self.trivial]
        while frontier:
            nxt = []
            for c in frontier:
                for w in self.coord_weights:
                    d = self.char_add(c, w)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        return seen

    @property
    def trivial(self) -> Character:
        return Character(tuple(0 for _ in self.orders))

    def char_add(self, a: Character, b: Character) -> Character:
        return Character(tuple((x + y) % n for x, y, n in zip(a.index, b.index, self.orders)))

    def char_neg(self, a: Character) -> Character:
        return Character(tuple((-x) % n for x, n in zip(a.index, self.orders)))

    def char_order(self, a: Character) -> int:
        return lcm(*(n // gcd(x, n) for x, n in zip(a.index, self.orders))) if a.index else 1

    def weight(self, e: Exponent) -> Character:
        """Character by which G scales the monomial x^e1 y^e2 z^e3."""
        return Character(
            tuple(
                (e[0] * w[0] + e[1] * w[1] + e[2] * w[2]) % n
                for n, w in self.factors
            )
        )

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __str__(self):
        return "+".join(
            f"1/{n}({w[0]},{w[1]},{w[2]})" for n, w in self.factors
        )

    __repr__ = __str__


_TERM = re.compile(r"^1/(\d+)\((\d+),(\d+),(\d+)\)$")


def parse_group(text: str) -> GroupSpec:
    """Parse ``1/n(a,b,c)`` terms joined by '+' into a GroupSpec."""
    squeezed = re.sub(r"\s+", "", text)
    if not squeezed:
        raise GroupParseError("empty group spec")
    factors = []
    for term in squeezed.split("+"):
        m = _TERM.match(term)
        if not m:
            raise GroupParseError(f"malformed term {term!r}; expected 1/INT(INT,INT,INT)")
        n, a, b, c = (int(x) for x in m.groups())
        if n == 0:
            raise GroupValidationError("factor order must be >= 1, got 0")
        factors.append((n, (a, b, c)))
    return GroupSpec(factors)


def weight(e: Exponent, g: GroupSpec) -> Character:
    return g.weight(e)


def invariant_lattice_basis(g: GroupSpec) -> list[Exponent]:
    """Basis of the lattice M of G-invariant Laurent exponents.

    M is the kernel of the weight map Z^3 -> G*, computed as an integer
    kernel after clearing the factor moduli.  The basis spans a sublattice
    of index r in Z^3 and contains (1,1,1) in its span.
    """
    if g.r == 1:
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    rows = []
    nf = len(g.factors)
    for k, (n, w) in enumerate(g.factors):
        rows.append(list(w) + [n if j == k else 0 for j in range(nf)])
    kern = integer_kernel(rows)
    basis = [tuple(v[:3]) for v in kern]
    basis = [tuple(r[:3]) for r in hnf_rows([list(b) for b in basis])]
    if len(basis) != 3:
        raise GroupValidationError("invariant lattice does not have rank 3")
    d = abs(det3(*basis))
    if d != g.r:
        raise GroupValidationError(f"invariant lattice index {d} != group order {g.r}")
    for b in basis:
        if g.weight(b) != g.trivial:
            raise GroupValidationError(f"basis vector {b} is not invariant")
    return basis


@dataclass(frozen=True)
class LatticePointN:
    """A point of the overlattice N stored r-scaled as an integer triple."""

    c: tuple[int, int, int]
    kind: str  # "corner" | "edge" | "interior"

    @property
    def age_scaled(self) -> int:
        return sum(self.c)


def group_elements_scaled(g: GroupSpec):
    """All group elements as r-scaled N-points (entries in [0, r))."""
    out = []
    for idx in product(*(range(n) for n in g.orders)):
        v = [0, 0, 0]
        for (n, w), i in zip(g.factors, idx):
            step = g.r // n
            for j in range(3):
                v[j] += i * w[j] * step
        out.append(tuple(x % g.r for x in v))
    return out


@lru_cache(maxsize=None)
def _junior_cache(g: GroupSpec):
    r = g.r
    pts = []
    corners = [
        (r, 0, 0),
        (0, r, 0),
        (0, 0, r),
    ]
    for c in corners:
        pts.append(LatticePointN(c, "corner"))
    seen = set(corners)
    for v in group_elements_scaled(g):
        if sum(v) == r and v not in seen:
            seen.add(v)
            kind = "interior" if all(x > 0 for x in v) else "edge"
            pts.append(LatticePointN(v, kind))
    pts.sort(key=lambda p: p.c)
    return tuple(pts)


def junior_points(g: GroupSpec) -> list[LatticePointN]:
    """Lattice points of the junior simplex: age-1 elements plus corners.

    Each point is flagged corner / edge / interior relative to the simplex.
    """
    return list(_junior_cache(g))


def pairing_scaled(m: Exponent, c: tuple[int, int, int], r: int):
    """Pairing <m, v> for v = c/r, exact; integer iff m is G-invariant."""
    num = dot(m, c)
    if num % r:
        from fractions import Fraction

        return Fraction(num, r)
    return num // r
