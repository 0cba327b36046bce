import random
from fractions import Fraction

import pytest

from resloc.arrangement import (
    Arrangement,
    NoVertices,
    affine_vertices,
    form,
    greatest_broken_circuit,
    is_independent,
    is_orthogonal_basis,
    nbc_bases,
    point_order,
    toric_vertices,
)
from resloc.lattice import Lattice


def central(*linears):
    return Arrangement(tuple(form(l) for l in linears), central=True)


XY = central((1, 0), (0, 1))
XYZ = central((1, 0), (0, 1), (1, 1))
B2 = central((1, 0), (0, 1), (1, 1), (1, -1))


def test_is_independent():
    assert is_independent(XY, (0, 1))
    assert not is_independent(XYZ, (0, 1, 2))
    affine = Arrangement((form((1, 1), -1), form((1, -1))))
    assert is_independent(affine, (0, 1))


def test_nbc_two_dim_shape():
    # in dimension 2 the NBC tuples are (H1, Hi)
    for arr in (XYZ, B2):
        got = nbc_bases(arr)
        assert got == [(0, i) for i in range(1, len(arr.forms))]


def test_nbc_xyz():
    assert nbc_bases(XYZ) == [(0, 1), (0, 2)]


def test_nbc_b2_central():
    assert nbc_bases(B2) == [(0, 1), (0, 2), (0, 3)]


def test_nbc_count_order_invariant():
    rng = random.Random(21)
    pool = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)]
    for _ in range(10):
        k = rng.randint(2, 5)
        linears = rng.sample(pool, k)
        if len({tuple(l) for l in linears}) < 2:
            continue
        try:
            arr = central(*linears)
        except ValueError:
            continue
        base = len(nbc_bases(arr))
        for _ in range(3):
            order = list(range(k))
            rng.shuffle(order)
            assert len(nbc_bases(arr, order=order)) == base


def test_orthogonal_basis_checks():
    assert is_orthogonal_basis(XYZ, nbc_bases(XYZ))
    # same flags under permutation: rejected
    assert not is_orthogonal_basis(XYZ, [(0, 1), (1, 0)])
    # the other ordering's NBC family is also orthogonal
    assert is_orthogonal_basis(XYZ, [(1, 0), (1, 2)])
    assert is_orthogonal_basis(B2, nbc_bases(B2))


def test_greatest_broken_circuit():
    assert greatest_broken_circuit(XYZ, {1, 2}) == (1, 2)
    assert greatest_broken_circuit(XYZ, {0, 1}) is None
    # support {y, x+y, x-y}: broken circuits are (1,2), (1,3), (2,3); the
    # tail-first comparison ranks (2,3) greatest.
    assert greatest_broken_circuit(B2, {1, 2, 3}) == (2, 3)


def test_broken_circuit_members():
    from resloc.arrangement import _is_broken_circuit

    assert _is_broken_circuit(B2, (1, 2))
    assert _is_broken_circuit(B2, (1, 3))
    assert _is_broken_circuit(B2, (2, 3))
    assert not _is_broken_circuit(B2, (0, 1))


def test_bc_order_longer_with_equal_tail_is_smaller():
    from resloc.arrangement import _bc_less

    assert _bc_less((0, 1, 2), (1, 2))
    assert not _bc_less((1, 2), (0, 1, 2))
    assert _bc_less((1, 2), (2, 3))
    assert _bc_less((1, 3), (2, 3))


def test_affine_vertices_examples():
    arr = Arrangement((form((1, 0)), form((0, 1)), form((2, 1), -1)))
    verts = affine_vertices(arr)
    assert len(verts) == 3
    points = {p for p, _ in verts}
    assert (Fraction(0), Fraction(0)) in points
    assert (Fraction(0), Fraction(1)) in points
    assert (Fraction(1, 2), Fraction(0)) in points

    assert len(affine_vertices(XY)) == 1

    line = Arrangement((form((1,)), form((1,), -1)))
    verts = affine_vertices(line)
    assert {p for p, _ in verts} == {(Fraction(0),), (Fraction(1),)}

    with pytest.raises(NoVertices):
        affine_vertices(Arrangement((form((1, 0)), form((1, 0), -1))))


def test_toric_vertices_b2():
    theta = Lattice.standard(2)
    verts = toric_vertices(B2, theta)
    points = {v.point for v in verts}
    assert points == {(Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(1, 2))}
    half = next(v for v in verts if v.point == (Fraction(1, 2), Fraction(1, 2)))
    # local forms: x+y shifted by 1 and x-y shifted by 0
    assert half.local_forms == ((2, 1), (3, 0))


def test_toric_vertices_single_form():
    theta = Lattice.standard(1)
    arr = Arrangement((form((1,)),))
    verts = toric_vertices(arr, theta)
    assert len(verts) == 1 and verts[0].point == (Fraction(0),)


def test_toric_vertices_translation_invariance():
    theta = Lattice.standard(2)
    shifted = Arrangement((form((1, 0), 2), form((0, 1), -3), form((1, 1), 1), form((1, -1), -2)))
    verts = toric_vertices(shifted, theta)
    assert {v.point for v in verts} == {(Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(1, 2))}


def test_vertex_order_divides_local_determinant():
    theta = Lattice.standard(2)
    for v in toric_vertices(B2, theta):
        rows = [list(B2.forms[i].linear) for i, _ in v.local_forms]
        from resloc.linalg import det
        import itertools

        orders = point_order(v.point, theta)
        dets = []
        for combo in itertools.combinations(range(len(rows)), 2):
            d = det([rows[combo[0]], rows[combo[1]]])
            if d:
                dets.append(abs(d))
        assert any(Fraction(orders, 1) <= d or d % orders == 0 for d in dets)
