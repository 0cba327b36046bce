import random
from fractions import Fraction

import pytest

from resloc.cyclotomic import CyclotomicNumber, cyclotomic_polynomial, euler_phi
from resloc.scalar import Scalar
from resloc.linalg import det, kernel_basis, mat_inv, mat_mul, rank, smith_normal_form, solve
from resloc.lp import lp_strict_feasible
from resloc.series import bernoulli_number


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity_relations():
    for n in range(1, 25):
        z = CyclotomicNumber.zeta(n)
        assert z**n == 1
        total = CyclotomicNumber.from_rational(0)
        for j in range(n):
            total = total + CyclotomicNumber.zeta(n, j)
        if n == 1:
            assert total == 1
        else:
            assert total.is_zero()


def test_cyclotomic_field_axioms_random():
    rng = random.Random(7)

    def rand_cyc():
        n = rng.choice([1, 2, 3, 4, 5, 6, 8, 12])
        d = euler_phi(n)
        return CyclotomicNumber(n, [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(d)])

    for _ in range(40):
        a, b = rand_cyc(), rand_cyc()
        assert (a + b) - b == a
        if not a.is_zero():
            assert a * a.inverse() == 1
        assert a * b == b * a


def test_cyclotomic_cross_order_equality():
    # zeta_3 written in Q(zeta_6)
    z3 = CyclotomicNumber.zeta(3)
    z6 = CyclotomicNumber.zeta(6)
    assert z6 * z6 == z3
    assert CyclotomicNumber.root_of_unity(Fraction(1, 2)) == -1
    assert CyclotomicNumber.root_of_unity(Fraction(7, 3)) == z3


def test_conjugate_and_complex():
    z5 = CyclotomicNumber.zeta(5)
    prod = z5 * z5.conjugate()
    assert prod == 1
    val = (z5 + z5.conjugate()).to_complex()
    assert abs(val.imag) < 1e-12


def test_scalar_embedding_commutes():
    rng = random.Random(11)
    for _ in range(20):
        p = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        assert Scalar.from_rational(p) + Scalar.from_rational(q) == Scalar.from_rational(p + q)
        assert Scalar.from_rational(p) * Scalar.from_rational(q) == Scalar.from_rational(p * q)


def test_scalar_laurent_ops():
    u = Scalar.u_power(1)
    s = u * u * Fraction(-1, 4)
    assert s == Scalar.u_power(2, Fraction(-1, 4))
    assert s.pretty() == "pi^2"
    t = s - Fraction(8)
    assert t.pretty() == "pi^2 - 8"
    assert (t / Scalar.u_power(3)).u_shift(3) == t
    assert Scalar.from_json(t.to_json()) == t


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(3) == 0
    assert bernoulli_number(8) == Fraction(-1, 30)


def test_linalg_basics():
    m = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(2)]]
    assert det(m) == 2
    inv = mat_inv(m)
    assert mat_mul(m, inv) == [[1, 0], [0, 1]]
    assert rank([[1, 2], [2, 4]]) == 1
    assert solve([[1, 1], [0, 2]], [3, 4]) == (1, 2)
    ker = kernel_basis([[1, 2, 3]])
    assert len(ker) == 2


def test_smith_normal_form_examples():
    snf = smith_normal_form([[1, 0], [0, 1]])
    assert snf.diagonal() == [1, 1]
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert snf.diagonal() == [1, 6]
    # [[2,4],[0,4]]: d1 = gcd of entries = 2, d1*d2 = |det| = 8
    snf = smith_normal_form([[2, 4], [0, 4]])
    assert snf.diagonal() == [2, 4]


def test_smith_normal_form_random_vs_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    rng = random.Random(3)
    for _ in range(15):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        snf = smith_normal_form(m)
        # transforms are unimodular and recompose
        assert abs(round(det(snf.U))) == 1
        assert abs(round(det(snf.V))) == 1
        assert mat_mul(mat_mul(snf.U, m), snf.V) == snf.D
        d = [x for x in snf.diagonal() if x != 0]
        for a, b in zip(d, d[1:]):
            assert b % a == 0
        expected = sympy_snf(sympy.Matrix(m))
        got = [snf.D[i][i] for i in range(min(rows, cols))]
        want = sorted(abs(expected[i, i]) for i in range(min(rows, cols)))
        assert sorted(abs(x) for x in got) == want


def test_snf_det_preserved():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        snf = smith_normal_form(m)
        prod = 1
        for x in snf.diagonal():
            prod *= x
        assert abs(prod) == abs(round(det(m)))


def test_lp_open_interval():
    x = lp_strict_feasible(1, [], [((1,), 1, "<"), ((1,), 0, ">")])
    assert x == (Fraction(1, 2),)


def test_lp_infeasible():
    assert lp_strict_feasible(1, [], [((1,), 0, "<"), ((1,), 1, ">")]) is None


def test_lp_simplex_symmetric():
    x = lp_strict_feasible(
        2,
        [((1, 1), 1)],
        [((1, 0), 0, ">"), ((1, 0), 1, "<"), ((0, 1), 0, ">"), ((0, 1), 1, "<")],
    )
    assert x == (Fraction(1, 2), Fraction(1, 2))


def test_lp_exactness_random():
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(1, 3)
        strict = []
        for _ in range(rng.randint(1, 4)):
            coeffs = tuple(rng.randint(-3, 3) for _ in range(n))
            if all(c == 0 for c in coeffs):
                continue
            strict.append((coeffs, Fraction(rng.randint(-4, 4)), rng.choice("<>")))
        x = lp_strict_feasible(n, [], strict)
        if x is not None:
            for coeffs, rhs, sense in strict:
                val = sum(Fraction(c) * xv for c, xv in zip(coeffs, x))
                assert val < rhs if sense == "<" else val > rhs
