"""Full-rank rational lattices, their duals and quotients, characters, and
the box-character enumeration behind the Todd deformation.

Points and covectors are Fraction tuples paired by the standard dot product.
A Lattice stores its generators as rows of a basis matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import (
    Vec,
    canonical_subspace,
    det,
    dot,
    mat_inv,
    mat_vec,
    rank,
    smith_normal_form,
    transpose,
    vec,
)


class BoundaryHit(Exception):
    """A box-character candidate landed on the boundary: the shift vector
    is not generic for this box and must be perturbed by the caller."""


@dataclass(frozen=True)
class Lattice:
    """Rank-n lattice in Q^n; rows of `basis` are the generators."""

    basis: tuple[Vec, ...]

    def __post_init__(self):
        rows = tuple(vec(r) for r in self.basis)
        object.__setattr__(self, "basis", rows)
        if rank([list(r) for r in rows]) != len(rows):
            raise ValueError("lattice basis must have full rank")

    @staticmethod
    def standard(n: int) -> "Lattice":
        return Lattice(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @staticmethod
    def scaled(n: int, c) -> "Lattice":
        c = Fraction(c)
        return Lattice(tuple(tuple(c * Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self):
        return [list(r) for r in self.basis]

    def inv_basis(self):
        return mat_inv(self.basis_matrix())

    def coords(self, v) -> Vec:
        """Coordinates of v in this basis (v = coords @ basis)."""
        inv = self.inv_basis()
        return tuple(dot(v, col) for col in zip(*inv))

    def from_coords(self, c) -> Vec:
        n = self.dim
        out = [Fraction(0)] * n
        for ci, row in zip(c, self.basis):
            if ci:
                out = [o + Fraction(ci) * r for o, r in zip(out, row)]
        return tuple(out)

    def contains(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coords(v))

    def reduce(self, v) -> Vec:
        """Representative of v modulo the lattice, in the half-open cell."""
        c = self.coords(v)
        frac = tuple(x - x.__floor__() for x in c)
        return self.from_coords(frac)

    def covolume(self) -> Fraction:
        return abs(det(self.basis_matrix()))

    def rescale(self, k) -> "Lattice":
        """The lattice (1/k) L = {v : k v in L}."""
        k = Fraction(k)
        return Lattice(tuple(tuple(x / k for x in row) for row in self.basis))


def dual_lattice(L: Lattice) -> Lattice:
    """{xi : xi(v) in Z for all v in L}; generators are the rows of the
    inverse transpose of the basis matrix."""
    return Lattice(tuple(tuple(r) for r in transpose(mat_inv(L.basis_matrix()))))


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """[sup : sub] for sub a sublattice of sup."""
    m = _integral_coords(sub, sup)
    idx = abs(det(m))
    assert idx.denominator == 1 and idx > 0
    return int(idx)


def _integral_coords(sub: Lattice, sup: Lattice):
    m = []
    for row in sub.basis:
        c = sup.coords(row)
        if any(x.denominator != 1 for x in c):
            raise ValueError("not a sublattice")
        m.append([int(x) for x in c])
    return m


def quotient_representatives(sub: Lattice, sup: Lattice) -> list[Vec]:
    """Exactly [sup : sub] points of sup, pairwise distinct mod sub, each
    reduced into the fundamental cell of sub."""
    m = _integral_coords(sub, sup)
    snf = smith_normal_form(m)
    # sub (in sup coordinates) = Z^n M = Z^n D V^{-1}; in y = x V coordinates
    # sub is Z^n D, so a transversal is 0 <= y_i < d_i, mapped back by V^{-1}.
    vinv = mat_inv([[Fraction(x) for x in row] for row in snf.V])
    diag = snf.diagonal()
    reps = []
    counters = [0] * len(diag)
    while True:
        y = [Fraction(c) for c in counters]
        x = mat_vec(transpose(vinv), y)  # y V^{-1} as row vector
        point = sup.from_coords(x)
        reps.append(sub.reduce(point))
        for i in range(len(diag)):
            counters[i] += 1
            if counters[i] < abs(diag[i]):
                break
            counters[i] = 0
        else:
            break
    assert len(reps) == lattice_index(sub, sup)
    return reps


def minimal_multiple(x, L: Lattice) -> int:
    """Smallest beta > 0 with beta*x in the dual lattice of L."""
    if is_zero(x):
        raise ValueError("x must be nonzero")
    dual = dual_lattice(L)
    c = dual.coords(vec(x))
    beta = 1
    for q in c:
        beta = beta * q.denominator // gcd(beta, q.denominator)
    return beta


def is_zero(v) -> bool:
    return all(Fraction(x) == 0 for x in v)


def in_lattice_plus_span(t, L: Lattice, spans) -> bool:
    """Exact test of t in L + span_R(spans), for rational spanning vectors.

    Works in L-coordinates: after an SNF change of basis the span becomes a
    coordinate subspace and membership is an integrality check on the
    complementary coordinates.
    """
    n = L.dim
    t_c = L.coords(vec(t))
    rows = []
    for s in spans:
        c = L.coords(vec(s))
        lcm = 1
        for x in c:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        rows.append([int(x * lcm) for x in c])
    if not rows:
        return all(x.denominator == 1 for x in t_c)
    snf = smith_normal_form(rows)
    d = sum(1 for x in snf.diagonal() if x != 0)
    v = [[Fraction(x) for x in row] for row in snf.V]
    y = mat_vec(transpose(v), t_c)  # t_c V
    return all(y[i].denominator == 1 for i in range(d, n))


def is_special(t, gamma: Lattice, forms) -> bool:
    """True iff t lies in dual(gamma) + span(S) for some subset S of the
    forms with dim span(S) <= n-1.

    Only maximal spans need checking; each check reduces to an exact
    integrality test in adapted coordinates.
    """
    n = gamma.dim
    dual = dual_lattice(gamma)
    directions = []
    seen = set()
    for f in forms:
        f = vec(f)
        key = _primitive_key(f)
        if key not in seen:
            seen.add(key)
            directions.append(f)
    spans = _maximal_proper_spans(directions, n)
    for span in spans:
        if in_lattice_plus_span(t, dual, span):
            return True
    return False


def _primitive_key(f):
    nz = next((x for x in f if x != 0), None)
    if nz is None:
        return ("zero",)
    return tuple(x / nz for x in f)


def _maximal_proper_spans(directions, n):
    """All maximal subsets of the directions whose span has dim <= n-1,
    returned as lists of vectors (the empty span included when maximal)."""
    from itertools import combinations

    closures = {}
    m = len(directions)
    for size in range(0, n):
        for subset in combinations(range(m), size):
            rows = [list(directions[i]) for i in subset]
            if rows and rank(rows) < len(rows):
                continue
            member = [i for i in range(m)
                      if rank(rows + [list(directions[i])]) == len(rows)]
            if rows:
                key = canonical_subspace(rows)
            else:
                key = ()
            closures[tuple(member)] = key
    keys = list(closures)
    maximal = []
    for k in keys:
        if not any(set(k) < set(other) for other in keys):
            maximal.append([directions[i] for i in k])
    if not maximal:
        maximal = [[]]
    return maximal


@dataclass(frozen=True)
class Character:
    """A character of the lattice, tau = e_t restricted to it; t is
    canonicalized into the fundamental cell of the dual lattice."""

    lattice: Lattice
    t: Vec

    def __post_init__(self):
        object.__setattr__(self, "t", vec(self.t))

    def canonical_t(self) -> Vec:
        return dual_lattice(self.lattice).reduce(self.t)

    def __eq__(self, other):
        return (self.lattice == other.lattice
                and self.canonical_t() == other.canonical_t())

    def value_exponent(self, v) -> Fraction:
        """q with tau(v) = e^(2 pi i q)."""
        return dot(self.t, vec(v))


@dataclass(frozen=True)
class BoxSpec:
    """Open parallelepiped Box(forms) = {sum nu_i forms_i : 0 < nu_i < 1}."""

    forms: tuple[Vec, ...]

    def __post_init__(self):
        rows = tuple(vec(f) for f in self.forms)
        object.__setattr__(self, "forms", rows)
        if rank([list(r) for r in rows]) != len(rows):
            raise ValueError("box forms must be independent")


def volume(box: BoxSpec, gamma: Lattice) -> int:
    """Index of the sublattice spanned by the box forms in dual(gamma)."""
    dual = dual_lattice(gamma)
    return lattice_index(Lattice(box.forms), dual)


def box_characters(box: BoxSpec, gamma: Lattice, tau: Character, mu) -> list[Vec]:
    """All covectors t~ with e_{t~}|_gamma = tau and t~ - mu in the open box.

    The box forms span a finite-index sublattice L of dual(gamma); the open
    box is a fundamental cell of L, so each coset of L contributes exactly one
    candidate, steered into the box by dropping fractional parts.  A candidate
    with an integral box coordinate sits on the boundary: BoundaryHit.
    """
    dual = dual_lattice(gamma)
    sub = Lattice(box.forms)
    mu = vec(mu)
    t0 = vec(tau.t)
    box_mat_inv = mat_inv(sub.basis_matrix())
    cols = list(zip(*box_mat_inv))

    def box_coords(v):
        return tuple(dot(v, col) for col in cols)

    out = []
    for r in quotient_representatives(sub, dual):
        base = tuple(a + b - c for a, b, c in zip(t0, r, mu))
        nu = box_coords(base)
        if any(x.denominator == 1 for x in nu):
            raise BoundaryHit("box boundary hit at coset representative %s" % (r,))
        frac = tuple(x - x.__floor__() for x in nu)
        t_tilde = tuple(m + s for m, s in zip(mu, sub.from_coords(frac)))
        out.append(t_tilde)
    assert len(out) == volume(box, gamma)
    return out
