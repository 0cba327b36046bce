"""Ordered hyperplane arrangements: independence, no-broken-circuit bases,
orthogonal bases via flags, affine vertices, and toric vertex enumeration.

The ordering used by every construction is the index order of the forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import gcd

from .lattice import Lattice, dual_lattice, quotient_representatives
from .linalg import (
    Vec,
    canonical_subspace,
    dot,
    is_zero_vec,
    kernel_basis,
    mat_inv,
    rank,
    solve,
    vec,
)


class NoVertices(Exception):
    pass


@dataclass(frozen=True)
class AffineForm:
    """x = x0 + c: a rational covector plus a constant."""

    linear: Vec
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "linear", vec(self.linear))
        object.__setattr__(self, "constant", Fraction(self.constant))
        if is_zero_vec(self.linear):
            raise ValueError("affine form needs a nonzero linear part")

    def value(self, p) -> Fraction:
        return dot(self.linear, vec(p)) + self.constant

    def shifted(self, s) -> "AffineForm":
        return AffineForm(self.linear, self.constant - Fraction(s))

    def scaled(self, c) -> "AffineForm":
        c = Fraction(c)
        if c == 0:
            raise ValueError("scale must be nonzero")
        return AffineForm(tuple(c * x for x in self.linear), c * self.constant)

    def is_central(self) -> bool:
        return self.constant == 0

    def direction_key(self) -> tuple:
        """Scale-invariant key of the linear direction."""
        pivot = next(x for x in self.linear if x != 0)
        return tuple(x / pivot for x in self.linear)

    def hyperplane_key(self) -> tuple:
        pivot = next(x for x in self.linear if x != 0)
        return tuple(x / pivot for x in self.linear) + (self.constant / pivot,)


def form(linear, constant=0) -> AffineForm:
    return AffineForm(vec(linear), Fraction(constant))


@dataclass(frozen=True)
class Arrangement:
    """Ordered list of affine forms; `central` asserts constants vanish and
    the common zero set is the origin alone (essential)."""

    forms: tuple[AffineForm, ...]
    central: bool = False

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        keys = [f.hyperplane_key() for f in self.forms]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate hyperplanes in arrangement")
        if self.central:
            if any(not f.is_central() for f in self.forms):
                raise ValueError("central arrangement with nonzero constants")
            if rank(self.linear_matrix()) != self.dim:
                raise ValueError("central arrangement must be essential")

    @property
    def dim(self) -> int:
        return len(self.forms[0].linear)

    def linear_matrix(self):
        return [list(f.linear) for f in self.forms]

    def linear_parts(self):
        return [f.linear for f in self.forms]


def is_independent(arr: Arrangement, indices) -> bool:
    rows = [list(arr.forms[i].linear) for i in indices]
    return rank(rows) == len(rows)


def _tuple_independent(forms) -> bool:
    rows = [list(f.linear) for f in forms]
    return rank(rows) == len(rows)


def nbc_bases(arr: Arrangement, order=None) -> list[tuple[int, ...]]:
    """All no-broken-circuit n-tuples: order-consistent independent n-tuples
    such that prepending any earlier form keeps {earlier} + {later members}
    independent.  The forms must pass through a common point.

    `order` optionally permutes the precedence (a list of indices, most
    significant first); output tuples still carry original indices.
    """
    n = arr.dim
    idx = list(range(len(arr.forms))) if order is None else list(order)
    pos = {j: i for i, j in enumerate(idx)}
    out = []
    for combo in combinations(idx, n):
        if not is_independent(arr, combo):
            continue
        good = True
        for h in idx:
            if h in combo:
                continue
            tail = [g for g in combo if pos[h] < pos[g]]
            if not is_independent(arr, [h] + tail):
                good = False
                break
        if good:
            out.append(tuple(combo))
    return out


def _flag_key(forms) -> tuple:
    """Flag of subspaces ker(f_j,...,f_n) for j = n..1, canonicalized."""
    keys = []
    for j in range(len(forms), 0, -1):
        rows = [list(f.linear) for f in forms[j - 1:]]
        kernel = kernel_basis(rows)
        keys.append(canonical_subspace([list(v) for v in kernel]) if kernel else ())
    return tuple(keys)


def is_orthogonal_basis(arr: Arrangement, tuples) -> bool:
    """|B| = r(A) and no two members share a flag up to permutation."""
    n = arr.dim
    tuples = [tuple(t) for t in tuples]
    if len(set(tuples)) != len(tuples):
        return False
    for t in tuples:
        if len(t) != n or not is_independent(arr, t):
            return False
    if len(tuples) != len(nbc_bases(arr)):
        return False
    id_flags = {}
    for t in tuples:
        id_flags[t] = _flag_key([arr.forms[i] for i in t])
    for t in tuples:
        forms_t = [arr.forms[i] for i in t]
        for perm in permutations(range(n)):
            fk = _flag_key([forms_t[p] for p in perm])
            for s in tuples:
                if s != t and id_flags[s] == fk:
                    return False
    return True


def greatest_broken_circuit(arr: Arrangement, support) -> tuple[int, ...] | None:
    """The lexicographically greatest broken circuit inside `support`, under
    the tail-first comparison (longer-with-equal-tail counts as smaller), or
    None when the support is broken-circuit free.

    A broken circuit is an order-consistent independent tuple that becomes
    minimally dependent after prepending some strictly earlier form.
    """
    support = sorted(set(support))
    best = None
    for size in range(1, len(support) + 1):
        for combo in combinations(support, size):
            if not is_independent(arr, combo):
                continue
            if _is_broken_circuit(arr, combo):
                if best is None or _bc_less(best, combo):
                    best = combo
    return best


def _is_broken_circuit(arr: Arrangement, combo) -> bool:
    rows = [list(arr.forms[i].linear) for i in combo]
    for h in range(combo[0]):
        if h in combo:
            continue
        target = list(arr.forms[h].linear)
        coeffs = solve([list(col) for col in zip(*rows)], target)
        if coeffs is not None and all(c != 0 for c in coeffs):
            return True
    return False


def _bc_less(a, b) -> bool:
    """a < b in the tail-first order: compare from the last element; if one
    is a tail of the other, the longer is smaller."""
    i, j = len(a) - 1, len(b) - 1
    while i >= 0 and j >= 0:
        if a[i] != b[j]:
            return a[i] < b[j]
        i -= 1
        j -= 1
    return i >= 0  # a longer with equal tail -> a smaller


def affine_vertices(arr: Arrangement) -> list[tuple[Vec, tuple[int, ...]]]:
    """All points where the incident forms cut out exactly that point,
    paired with the incident form indices."""
    n = arr.dim
    seen = {}
    for combo in combinations(range(len(arr.forms)), n):
        if not is_independent(arr, combo):
            continue
        m = [list(arr.forms[i].linear) for i in combo]
        b = [-arr.forms[i].constant for i in combo]
        p = solve(m, b)
        if p is None:
            continue
        seen.setdefault(tuple(p), None)
    out = []
    for p in seen:
        incident = tuple(i for i, f in enumerate(arr.forms) if f.value(p) == 0)
        out.append((p, incident))
    if not out:
        raise NoVertices("arrangement has no vertices")
    out.sort(key=lambda pair: pair[0])
    return out


@dataclass(frozen=True)
class ToricVertex:
    """A vertex class of the toric arrangement: a canonical representative
    point and, per incident periodic family, the integer shift making the
    form vanish there."""

    point: Vec
    local_forms: tuple[tuple[int, int], ...]  # (form index, shift)

    def local_arrangement(self, arr: Arrangement) -> list[AffineForm]:
        return [arr.forms[i].shifted(s) for i, s in self.local_forms]


def is_primitive(covector, theta: Lattice) -> bool:
    dual = dual_lattice(theta)
    c = dual.coords(vec(covector))
    if any(x.denominator != 1 for x in c):
        return False
    g = 0
    for x in c:
        g = gcd(g, abs(int(x)))
    return g == 1


def toric_vertices(arr: Arrangement, theta: Lattice) -> list[ToricVertex]:
    """One canonical representative per Theta-class of vertices of the
    periodic arrangement {form = integer}.

    For each independent n-subset, the solutions of M p = c + m form a coset
    family indexed by m in Z^n / M Theta, enumerated through a quotient
    transversal; representatives are reduced into the fundamental cell of
    Theta and deduplicated.
    """
    n = arr.dim
    for f in arr.forms:
        if not is_primitive(f.linear, theta):
            raise ValueError("form %s is not primitive in the dual of the lattice" % (f,))
    classes: dict[tuple, Vec] = {}
    for combo in combinations(range(len(arr.forms)), n):
        if not is_independent(arr, combo):
            continue
        m = [list(arr.forms[i].linear) for i in combo]
        minv = mat_inv(m)
        c = [-arr.forms[i].constant for i in combo]
        # M Theta is a sublattice of Z^n; enumerate Z^n / M Theta
        m_theta = Lattice(tuple(tuple(dot(row, g) for row in m) for g in theta.basis))
        for rep in quotient_representatives(m_theta, Lattice.standard(n)):
            rhs = [ci + ri for ci, ri in zip(c, rep)]
            p = tuple(sum(minv[i][j] * rhs[j] for j in range(n)) for i in range(n))
            p = theta.reduce(p)
            classes.setdefault(tuple(p), p)
    out = []
    for p in classes.values():
        local = []
        for i, f in enumerate(arr.forms):
            v = f.value(p)
            if v.denominator == 1:
                local.append((i, int(v)))
        rows = [list(arr.forms[i].linear) for i, _ in local]
        if rank(rows) == n:
            out.append(ToricVertex(point=tuple(p), local_forms=tuple(local)))
    out.sort(key=lambda tv: tv.point)
    return out


def point_order(p, lattice: Lattice) -> int:
    """min m > 0 with m p in the lattice."""
    c = lattice.coords(vec(p))
    m = 1
    for x in c:
        m = m * x.denominator // gcd(m, x.denominator)
    return m
