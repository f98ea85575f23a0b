"""Exact rational linear programming for cone computations.

Everything runs over Fractions with Bland's rule, so results are exact and
termination is guaranteed.  Two entry points matter: feasibility of a
system of inequalities (used for interior and wall sample points), and
membership of a vector in the conic hull of others (used for redundancy
elimination).  Cone membership returns a Farkas witness on failure: an
exact point weakly inside the cone's dual and strictly negative on the
tested vector, which doubles as a separation certificate.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CapError, InternalError


class LPCounter:
    """Counts simplex solves against a cap (0 or None disables the cap)."""

    def __init__(self, cap=None):
        self.cap = cap
        self.count = 0

    def tick(self):
        self.count += 1
        if self.cap and self.count > self.cap:
            raise CapError(f"LP solve cap of {self.cap} exceeded")


def _phase1(A, b, counter=None):
    """Phase-I simplex for {A x = b, x >= 0} with b >= 0 and integer data.

    Fraction-free integer pivoting: the tableau stays integral with a
    single positive denominator (the previous pivot), so every entry is an
    exact minor ratio.  Bland's rule guarantees termination.

    Returns (True, x) on feasibility or (False, y) with the dual vector y
    satisfying y . A_j <= 0 for every column j and y . b > 0.
    """
    if counter is not None:
        counter.tick()
    m = len(A)
    n = len(A[0]) if m else 0
    ncols = n + m
    rhs = ncols
    # Integer tableau [A | I_art | b], denominator D = 1, basis = artificials.
    T = [list(map(int, A[i])) + [1 if k == i else 0 for k in range(m)] + [int(b[i])] for i in range(m)]
    obj = [0] * (ncols + 1)
    for j in range(n):
        obj[j] = -sum(T[i][j] for i in range(m))
    # artificial columns have reduced cost 0 initially (c_j = 1, basic)
    obj[rhs] = -sum(T[i][rhs] for i in range(m))
    D = 1
    basis = [n + i for i in range(m)]
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        for i in range(m):
            tic = T[i][enter]
            if tic > 0:
                if leave < 0:
                    leave = i
                else:
                    lhs = T[i][rhs] * T[leave][enter]
                    rhs_v = T[leave][rhs] * tic
                    if lhs < rhs_v or (lhs == rhs_v and basis[i] < basis[leave]):
                        leave = i
        if leave < 0:
            raise InternalError("phase-I objective unbounded below")
        piv_row = T[leave]
        piv = piv_row[enter]
        for i in range(m):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            if f:
                for j in range(ncols + 1):
                    row[j] = (row[j] * piv - f * piv_row[j]) // D
            else:
                for j in range(ncols + 1):
                    row[j] = (row[j] * piv) // D
        f = obj[enter]
        if f:
            for j in range(ncols + 1):
                obj[j] = (obj[j] * piv - f * piv_row[j]) // D
        else:
            for j in range(ncols + 1):
                obj[j] = (obj[j] * piv) // D
        D = piv
        basis[leave] = enter
    # Real objective value is obj[rhs] / D (negated).
    if obj[rhs] == 0:
        x = [Fraction(0)] * n
        for i, bi in enumerate(basis):
            if bi < n:
                x[bi] = Fraction(T[i][rhs], D)
        return True, x
    # Dual vector from the artificial columns' reduced costs:
    # y_i = 1 - obj_real[art_i] = (D - obj[art_i]) / D with D > 0.
    return False, ([D - obj[n + i] for i in range(m)], D)


def find_point(rows, rhs, counter=None):
    """Exact rational x with rows . x >= rhs, or None.

    Free variables are split into positive parts; slack variables complete
    the standard form.
    """
    m = len(rows)
    if m == 0:
        return ()
    d = len(rows[0])
    A = []
    b = []
    for row, t in zip(rows, rhs):
        sign = 1 if t >= 0 else -1
        arow = [sign * v for v in row] + [-sign * v for v in row]
        # a.x - s = t (after sign normalisation)
        A.append(arow + [0] * m)
        b.append(sign * t)
    for i in range(m):
        A[i][2 * d + i] = -1 if rhs[i] >= 0 else 1
    ok, res = _phase1(A, b, counter)
    if not ok:
        return None
    return tuple(res[j] - res[d + j] for j in range(d))


def cone_membership(c, gens, counter=None):
    """Is c a nonnegative rational combination of gens?

    Returns (True, None) or (False, witness) where the witness t is an
    integer vector with dot(g, t) >= 0 for every generator and
    dot(c, t) < 0, all verified exactly.
    """
    d = len(c)
    if not gens:
        if any(c):
            t = tuple(-v for v in c)
            return False, t
        return True, None
    sign = [1 if v >= 0 else -1 for v in c]
    A = [[sign[i] * g[i] for g in gens] for i in range(d)]
    b = [sign[i] * c[i] for i in range(d)]
    ok, res = _phase1(A, b, counter)
    if ok:
        return True, None
    # res = (numerators, positive denominator) of the dual vector; the
    # witness only matters up to positive scale, so stay integral.
    nums, den = res
    t = tuple(-sign[i] * nums[i] for i in range(d))
    # Exactness paranoia: verify the Farkas certificate.
    for g in gens:
        if sum(a * v for a, v in zip(g, t)) < 0:
            raise InternalError("invalid Farkas witness (generator side)")
    if sum(a * v for a, v in zip(c, t)) >= 0:
        raise InternalError("invalid Farkas witness (target side)")
    return False, t
