import random
from fractions import Fraction

import pytest

from resloc.lattice import (
    BoundaryHit,
    BoxSpec,
    Character,
    Lattice,
    box_characters,
    dual_lattice,
    is_special,
    lattice_index,
    minimal_multiple,
    quotient_representatives,
    volume,
)


def F(a, b=1):
    return Fraction(a, b)


def test_dual_standard():
    z2 = Lattice.standard(2)
    assert dual_lattice(z2).basis == z2.basis


def test_dual_scaling():
    for k in (2, 3, 5):
        L = Lattice.scaled(3, Fraction(1, k))
        D = dual_lattice(L)
        assert D.basis == Lattice.scaled(3, k).basis


def test_dual_from_derived_example():
    L = Lattice(((F(1), F(1)), (F(0), F(2))))
    D = dual_lattice(L)
    assert D.covolume() == Fraction(1, 2)
    for g in D.basis:
        for v in L.basis:
            assert sum(a * b for a, b in zip(g, v)).denominator == 1


def test_dual_involution_random():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(1, 3)
        while True:
            basis = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
            try:
                L = Lattice(tuple(tuple(r) for r in basis))
                break
            except ValueError:
                continue
        DD = dual_lattice(dual_lattice(L))
        # same lattice: mutual containment
        assert all(L.contains(row) for row in DD.basis)
        assert all(DD.contains(row) for row in L.basis)


def test_quotient_representatives_counts():
    z2 = Lattice.standard(2)
    half = Lattice.scaled(2, Fraction(1, 2))
    reps = quotient_representatives(z2, half)
    assert len(reps) == 4
    assert len({tuple(r) for r in reps}) == 4
    for k in (2, 3):
        fine = Lattice.scaled(2, Fraction(1, k))
        assert len(quotient_representatives(z2, fine)) == k * k
    assert quotient_representatives(z2, z2) == [(0, 0)]


def test_quotient_distinct_mod_sub():
    sub = Lattice(((F(2), F(0)), (F(1), F(3))))
    sup = Lattice.standard(2)
    reps = quotient_representatives(sub, sup)
    assert len(reps) == lattice_index(sub, sup) == 6
    seen = {tuple(sub.reduce(r)) for r in reps}
    assert len(seen) == 6


def test_minimal_multiple():
    z2 = Lattice.standard(2)
    assert minimal_multiple((1, 0), z2) == 1
    half = Lattice.scaled(2, Fraction(1, 2))  # dual = 2 Z^2
    assert minimal_multiple((1, 0), half) == 2
    # root alpha with beta0 * alpha in Gamma*, then Gamma[k]* = k Gamma*
    gamma = Lattice(((F(1, 2), F(1, 2)), (F(1, 2), F(-1, 2))))  # dual: (1,1),(1,-1)
    assert minimal_multiple((1, 0), gamma) == 2
    k = 3
    gamma_k = gamma.rescale(k)
    assert minimal_multiple((1, 0), gamma_k) == 2 * k


def test_is_special_paper_point():
    z2 = Lattice.standard(2)
    forms = [(1, 0), (0, 1), (1, 1)]
    assert not is_special((F(1, 2), F(1, 3)), z2, forms)
    assert is_special((0, 0), z2, forms)
    assert is_special((F(1, 2), F(1, 2)), z2, forms)


def test_is_special_translation_and_scaling_invariance():
    rng = random.Random(4)
    z2 = Lattice.standard(2)
    forms = [(1, 0), (0, 1), (1, 1), (1, -1)]
    for _ in range(20):
        t = (Fraction(rng.randint(-5, 5), rng.randint(1, 5)),
             Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
        shift = (rng.randint(-3, 3), rng.randint(-3, 3))
        t2 = (t[0] + shift[0], t[1] + shift[1])
        assert is_special(t, z2, forms) == is_special(t2, z2, forms)
        c = rng.choice([2, 3, Fraction(1, 2), -1])
        scaled = [tuple(c * x for x in forms[0])] + forms[1:]
        assert is_special(t, z2, forms) == is_special(t, z2, scaled)


def test_box_characters_dim1():
    z1 = Lattice.standard(1)
    tau = Character(z1, (0,))
    chars = box_characters(BoxSpec(((F(1),),)), z1, tau, (F(-1, 10),))
    assert chars == [(0,)]
    chars = box_characters(BoxSpec(((F(2),),)), z1, tau, (F(-1, 10),))
    assert sorted(chars) == [(0,), (1,)]
    assert volume(BoxSpec(((F(2),),)), z1) == 2


def test_box_characters_boundary():
    z1 = Lattice.standard(1)
    tau = Character(z1, (0,))
    with pytest.raises(BoundaryHit):
        box_characters(BoxSpec(((F(1),),)), z1, tau, (F(0),))


def test_box_characters_witten_tuple():
    # tuple (x, x+y) over Z^2 with tau = e_(u,v): single character
    # {u-v} x + {v} (x+y)
    z2 = Lattice.standard(2)
    u, v = F(1, 3), F(2, 5)
    tau = Character(z2, (u, v))
    mu = (F(-1, 101), F(-1, 103))
    box = BoxSpec(((F(1), F(0)), (F(1), F(1))))
    assert volume(box, z2) == 1
    chars = box_characters(box, z2, tau, mu)
    assert len(chars) == 1

    def frac(x):
        return x - x.__floor__()

    # {u-v} x + {v} (x+y), exponents as in the worked two-variable sum
    expect = (frac(u - v) + frac(v), frac(v))
    assert chars[0] == expect


def test_box_character_count_random():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(1, 2)
        k = rng.randint(1, 3)
        gamma = Lattice.scaled(n, Fraction(1, k))
        while True:
            forms = tuple(tuple(Fraction(k * rng.randint(-2, 2)) for _ in range(n)) for _ in range(n))
            try:
                box = BoxSpec(forms)
                break
            except ValueError:
                continue
        t = tuple(Fraction(rng.randint(0, 5), 7) for _ in range(n))
        tau = Character(gamma, t)
        mu = tuple(Fraction(rng.randint(1, 20), 101 + 2 * i) for i in range(n))
        try:
            chars = box_characters(box, gamma, tau, mu)
        except BoundaryHit:
            continue
        assert len(chars) == volume(box, gamma)
        dual = dual_lattice(gamma)
        for c in chars:
            diff = tuple(a - b for a, b in zip(c, t))
            assert dual.contains(diff)
