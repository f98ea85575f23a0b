import random

import pytest

from crepant.intlin import (
    det3,
    hnf_rows,
    integer_kernel,
    primitive,
    reduce_mod_lattice,
    solve3,
    solve3_int,
)


def test_det3():
    assert det3((1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1
    assert det3((2, 0, 0), (0, 3, 0), (0, 0, 4)) == 24
    assert det3((1, 2, 3), (4, 5, 6), (7, 8, 9)) == 0


def test_solve3_matches_cramer():
    rng = random.Random(1)
    for _ in range(100):
        rows = [tuple(rng.randrange(-5, 6) for _ in range(3)) for _ in range(3)]
        if det3(*rows) == 0:
            continue
        x = tuple(rng.randrange(-7, 8) for _ in range(3))
        rhs = [sum(r[i] * x[i] for i in range(3)) for r in rows]
        assert solve3_int(rows, rhs) == x
        assert tuple(solve3(rows, rhs)) == x


def test_solve3_int_rejects_fractional():
    with pytest.raises(ValueError):
        solve3_int([(2, 0, 0), (0, 1, 0), (0, 0, 1)], [1, 0, 0])


def test_primitive():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((0, 0, 0)) == (0, 0, 0)
    assert primitive((5,)) == (1,)


def test_hnf_rows_and_reduce():
    rows = hnf_rows([[2, 0], [0, 3], [2, 3]])
    # lattice is 2Z x 3Z... plus (2,3): gcd structure gives full index 6 sublattice?
    # the span of (2,0),(0,3),(2,3) is 2Z x 3Z
    assert len(rows) == 2
    v = reduce_mod_lattice([5, 7], rows)
    assert v == (1, 1)
    # reduction is idempotent
    assert reduce_mod_lattice(list(v), rows) == v


def test_integer_kernel():
    # kernel of (1, 1, 1) is rank 2
    k = integer_kernel([[1, 1, 1]])
    assert len(k) == 2
    for v in k:
        assert sum(v) == 0
    # kernel of an invertible map is trivial
    assert integer_kernel([[1, 0], [0, 1]]) == []
    # mixed example: x + 2y = 0 over Z
    k2 = integer_kernel([[1, 2]])
    assert len(k2) == 1
    assert primitive(k2[0]) in ((2, -1), (-2, 1))


def test_hnf_randomized_span_preserved():
    rng = random.Random(9)
    for _ in range(50):
        rows = [[rng.randrange(-4, 5) for _ in range(4)] for _ in range(3)]
        h = hnf_rows(rows)
        # every original row reduces to zero against the HNF
        for r in rows:
            assert reduce_mod_lattice(list(r), h) == (0, 0, 0, 0)
