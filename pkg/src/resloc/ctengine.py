"""Iterated constant terms of meromorphic factor products.

A FunctionExpr is a sum of products of three atom kinds:

  FormPower(y, m)    y(.)^m                    (y an affine form)
  Exponential(t, c)  e^(U (t(.) + c))           (U = 2 pi i, formal)
  ExpFrac(y, m)      (1 - e^(U y(.)))^(-m)

The iterated constant term along an ordered independent tuple of affine
forms vanishing at a base point expands every atom in the tuple coordinates
w_1, ..., w_n under the regime |w_1| >> ... >> |w_n| (last form innermost)
and extracts the total constant coefficient.

Internally each atom splits, at the base point, into a homogeneous Laurent
factor (a power of a linear form in w) times an entire series univariate in
one direction.  The entire part only needs terms up to the total pole order
T; the homogeneous part is paired against the degree-T slice.  Homogeneous
factors are multiplied in dominance order, pinning each variable once its
group is done, inside a conservative per-variable window; widening the
window must never change a result (property-tested).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import AffineForm, Arrangement, nbc_bases
from .lattice import BoxSpec, Character, Lattice, box_characters, minimal_multiple
from .linalg import Vec, mat_inv, rank, vec
from .scalar import Scalar
from .series import bern_series, series_inverse, series_mul, series_pow
from .cyclotomic import CyclotomicNumber


class DependentTuple(Exception):
    pass


@dataclass(frozen=True)
class FormPower:
    form: AffineForm
    power: int


@dataclass(frozen=True)
class Exponential:
    covector: Vec
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "covector", vec(self.covector))
        object.__setattr__(self, "phase", Fraction(self.phase))


@dataclass(frozen=True)
class ExpFrac:
    form: AffineForm
    power: int


class FunctionExpr:
    """Sum of (Scalar coefficient, atom tuple) products."""

    __slots__ = ("products",)

    def __init__(self, products):
        self.products = [(c, tuple(atoms)) for c, atoms in products]

    @staticmethod
    def one() -> "FunctionExpr":
        return FunctionExpr([(Scalar.one(), ())])

    @staticmethod
    def from_product(coeff, atoms) -> "FunctionExpr":
        if not isinstance(coeff, Scalar):
            coeff = Scalar.from_rational(coeff)
        return FunctionExpr([(coeff, tuple(atoms))])

    def __add__(self, other: "FunctionExpr") -> "FunctionExpr":
        return FunctionExpr(self.products + other.products)

    def __mul__(self, other: "FunctionExpr") -> "FunctionExpr":
        out = []
        for c1, a1 in self.products:
            for c2, a2 in other.products:
                out.append((c1 * c2, a1 + a2))
        return FunctionExpr(out)

    def scale(self, c) -> "FunctionExpr":
        if not isinstance(c, Scalar):
            c = Scalar.from_rational(c)
        return FunctionExpr([(c * coeff, atoms) for coeff, atoms in self.products])

    def to_json(self) -> list:
        out = []
        for coeff, atoms in self.products:
            entry = {"coeff": coeff.to_json(), "atoms": []}
            for a in atoms:
                if isinstance(a, FormPower):
                    entry["atoms"].append({
                        "kind": "form_power",
                        "linear": [str(x) for x in a.form.linear],
                        "constant": str(a.form.constant),
                        "power": a.power,
                    })
                elif isinstance(a, Exponential):
                    entry["atoms"].append({
                        "kind": "exponential",
                        "covector": [str(x) for x in a.covector],
                        "phase": str(a.phase),
                    })
                else:
                    entry["atoms"].append({
                        "kind": "exp_frac",
                        "linear": [str(x) for x in a.form.linear],
                        "constant": str(a.form.constant),
                        "power": a.power,
                    })
            out.append(entry)
        return out

    @staticmethod
    def from_json(data) -> "FunctionExpr":
        products = []
        for entry in data:
            atoms = []
            for a in entry["atoms"]:
                if a["kind"] == "form_power":
                    atoms.append(FormPower(
                        AffineForm(vec(Fraction(x) for x in a["linear"]), Fraction(a["constant"])),
                        int(a["power"])))
                elif a["kind"] == "exponential":
                    atoms.append(Exponential(vec(Fraction(x) for x in a["covector"]), Fraction(a["phase"])))
                else:
                    atoms.append(ExpFrac(
                        AffineForm(vec(Fraction(x) for x in a["linear"]), Fraction(a["constant"])),
                        int(a["power"])))
            products.append((Scalar.from_json(entry["coeff"]), tuple(atoms)))
        return FunctionExpr(products)


# -- multivariate truncated polynomials: dict[exponent tuple -> Scalar] ----


def _poly_mul(a, b, cap):
    out = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) > cap:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            prod = ca * cb
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return {k: v for k, v in out.items() if not v.is_zero()}


def _lin_poly(lvec, n):
    return {tuple(int(i == j) for j in range(n)): Scalar.from_rational(c)
            for i, c in enumerate(lvec) if c}


def _substitute_series(series, lvec, n, cap):
    """sum_k series[k] * l(w)^k as a truncated polynomial; the coefficients
    are Scalars with any U powers already folded in."""
    lin = _lin_poly(lvec, n)
    out = {}
    power = {tuple([0] * n): Scalar.one()}
    for k, coeff in enumerate(series):
        if k > cap:
            break
        if k:
            power = _poly_mul(power, lin, cap)
            if not power:
                break
        if coeff.is_zero():
            continue
        for e, c in power.items():
            add = c * coeff
            if e in out:
                out[e] = out[e] + add
            else:
                out[e] = add
    return {k: v for k, v in out.items() if not v.is_zero()}


# -- atom decomposition at a base point ------------------------------------


class _Decomposition:
    __slots__ = ("coeff", "homog", "series", "zero")

    def __init__(self):
        self.coeff = Scalar.one()
        self.homog = []   # (lvec, power) with power != 0
        self.series = []  # (lvec, [Scalar coefficients]) entire univariate parts
        self.zero = False


def _to_w(covector, minv):
    n = len(minv)
    return tuple(sum(Fraction(covector[i]) * minv[i][j] for i in range(n)) for j in range(n))


def _binomial_series(value, power, length):
    """(value + z)^power as a series in z: sum_k C(power,k) value^(power-k) z^k."""
    value = Fraction(value)
    out = [value**power]
    c = out[0]
    for k in range(1, length + 1):
        c = c * Fraction(power - k + 1) / (k * value)
        out.append(c)
    return out


def _decompose(atoms, point, minv, budget_hint=None):
    """Split atoms into homogeneous parts and entire univariate series."""
    dec = _Decomposition()
    for atom in atoms:
        if isinstance(atom, FormPower):
            if atom.power == 0:
                continue
            value = atom.form.value(point)
            lvec = _to_w(atom.form.linear, minv)
            if value == 0:
                dec.homog.append((lvec, atom.power))
            else:
                dec.series.append((lvec, None, ("binom", value, atom.power)))
        elif isinstance(atom, Exponential):
            q = sum(Fraction(a) * Fraction(b) for a, b in zip(atom.covector, point)) + atom.phase
            dec.coeff = dec.coeff * Scalar.root_of_unity(q)
            lvec = _to_w(atom.covector, minv)
            if any(lvec):
                dec.series.append((lvec, None, ("exp",)))
        elif isinstance(atom, ExpFrac):
            if atom.power == 0:
                continue
            value = atom.form.value(point)
            lvec = _to_w(atom.form.linear, minv)
            if not any(lvec):
                # constant factor (1 - e^{U value})^{-power}
                if value.denominator == 1:
                    raise ZeroDivisionError("ExpFrac of an integer constant form")
                z = CyclotomicNumber.root_of_unity(value)
                dec.coeff = dec.coeff * Scalar.from_cyclotomic(
                    (CyclotomicNumber.from_rational(1) - z).inverse() ** atom.power
                    if atom.power > 0 else
                    (CyclotomicNumber.from_rational(1) - z) ** (-atom.power))
                continue
            if value.denominator == 1:
                m = atom.power
                if m > 0:
                    # (1 - e^{U l})^{-m} = (-1)^m U^{-m} l^{-m} g(U l)^m
                    dec.coeff = dec.coeff * Scalar.u_power(-m, Fraction(-1) ** m)
                    dec.homog.append((lvec, -m))
                    dec.series.append((lvec, None, ("bern", m)))
                else:
                    # (1 - e^{U l})^{|m|} = (-U)^{|m|} l^{|m|} h(U l)^{|m|}
                    k = -m
                    dec.coeff = dec.coeff * Scalar.u_power(k, Fraction(-1) ** k)
                    dec.homog.append((lvec, k))
                    dec.series.append((lvec, None, ("expm1", k)))
            else:
                zeta = CyclotomicNumber.root_of_unity(value)
                dec.series.append((lvec, None, ("unit", zeta, atom.power)))
        else:
            raise TypeError("unknown atom %r" % (atom,))
    return dec


def _series_coeffs(spec, length):
    """Instantiate a named univariate series up to `length`.  Returns plain
    coefficients and a flag telling whether the series variable is U*l
    (so degree k carries U^k) or plain l."""
    kind = spec[0]
    if kind == "exp":
        out = [Fraction(1)]
        fact = 1
        for k in range(1, length + 1):
            fact *= k
            out.append(Fraction(1, fact))
        return out, True
    if kind == "bern":
        return series_pow(bern_series(length), spec[1], length), True
    if kind == "expm1":
        base = [Fraction(1, _factorial(k + 1)) for k in range(length + 1)]
        return series_pow(base, spec[1], length), True
    if kind == "binom":
        return _binomial_series(spec[1], spec[2], length), False
    if kind == "unit":
        zeta, m = spec[1], spec[2]
        one = CyclotomicNumber.from_rational(1)
        fact = 1
        coeffs = [one - zeta]
        for k in range(1, length + 1):
            fact *= k
            coeffs.append(-zeta * Fraction(1, fact))
        if m > 0:
            inv = series_inverse(coeffs, length)
            return series_pow(inv, m, length), True
        return series_pow(coeffs, -m, length), True
    raise ValueError(spec)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


# -- homogeneous expansion --------------------------------------------------


def _gen_binom(d, k):
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(d - i, i + 1)
    return out


def _homog_factor_terms(lvec, d, n, window):
    """Expansion of l(w)^d in the dominance regime, clipped to exponents in
    [-window, window] per variable: dict of exponent tuple -> Fraction."""
    j = next(i for i, c in enumerate(lvec) if c != 0)
    cj = lvec[j]
    tail = [(i, c) for i, c in enumerate(lvec) if i > j and c != 0]
    out = {}
    if d >= 0 and not tail:
        e = [0] * n
        e[j] = d
        return {tuple(e): cj**d}
    if d >= 0:
        # plain polynomial expansion
        poly = {tuple([0] * n): Fraction(1)}
        lin = {}
        base = [0] * n
        base[j] = 1
        lin[tuple(base)] = cj
        for i, c in tail:
            e = [0] * n
            e[i] = 1
            lin[tuple(e)] = c
        for _ in range(d):
            new = {}
            for ea, ca in poly.items():
                for eb, cb in lin.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    new[key] = new.get(key, Fraction(0)) + ca * cb
            poly = new
        return poly
    # d < 0: c_j^d w_j^(d-k) * binom(d,k) * tail(w)^k, k = 0, 1, ...
    k_max = window + d  # ensures w_j exponent d - k >= -window
    tail_pow = {tuple([0] * n): Fraction(1)}
    lin = {}
    for i, c in tail:
        e = [0] * n
        e[i] = 1
        lin[tuple(e)] = Fraction(c, cj)
    for k in range(0, max(k_max, 0) + 1):
        if k:
            new = {}
            for ea, ca in tail_pow.items():
                for eb, cb in lin.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    if any(x > window for x in key):
                        continue
                    new[key] = new.get(key, Fraction(0)) + ca * cb
            tail_pow = new
            if not tail_pow:
                break
        coeff = _gen_binom(d, k) * cj**d
        for e, c in tail_pow.items():
            key = list(e)
            key[j] += d - k
            out[tuple(key)] = out.get(tuple(key), Fraction(0)) + coeff * c
    return out


def _homog_coefficients(homog, targets, n, window):
    """Coefficients of the product of homogeneous factors at the requested
    exponent tuples.  Factors are multiplied dominance-group by group; a
    variable is pinned to its target range once its group is complete."""
    if not targets:
        return {}
    if not homog:
        zero = tuple([0] * n)
        return {t: (Fraction(1) if t == zero else Fraction(0)) for t in targets}
    lo = [min(t[i] for t in targets) for i in range(n)]
    hi = [max(t[i] for t in targets) for i in range(n)]
    groups: dict[int, list] = {}
    for lvec, d in homog:
        j = next(i for i, c in enumerate(lvec) if c != 0)
        groups.setdefault(j, []).append((lvec, d))
    poly = {tuple([0] * n): Fraction(1)}
    for j in range(n):
        for lvec, d in groups.get(j, []):
            factor = _homog_factor_terms(lvec, d, n, window)
            new = {}
            for ea, ca in poly.items():
                for eb, cb in factor.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    if any(abs(x) > window for x in key):
                        continue
                    ok = True
                    for i in range(j):
                        if not (lo[i] <= key[i] <= hi[i]):
                            ok = False
                            break
                    if not ok:
                        continue
                    new[key] = new.get(key, Fraction(0)) + ca * cb
            poly = new
        # pin variable j
        poly = {e: c for e, c in poly.items() if lo[j] <= e[j] <= hi[j]}
    return {t: poly.get(t, Fraction(0)) for t in targets}


# -- the iterated constant term --------------------------------------------


def iterated_ct(tuple_forms, point, f: FunctionExpr, widen: int = 0) -> Scalar:
    """CT along the ordered tuple (last form innermost) at the base point.

    Every form of the tuple must vanish at the point and their linear parts
    must be independent.
    """
    tuple_forms = list(tuple_forms)
    n = len(tuple_forms)
    m = [list(g.linear) for g in tuple_forms]
    if rank(m) != n:
        raise DependentTuple("tuple forms are dependent")
    point = vec(point)
    for g in tuple_forms:
        if g.value(point) != 0:
            raise ValueError("tuple form %s does not vanish at %s" % (g, point))
    minv = mat_inv(m)

    # group products sharing non-exponential atoms; exponentials merge
    groups: dict[tuple, list] = {}
    order: list[tuple] = []
    for coeff, atoms in f.products:
        tvec = [Fraction(0)] * n
        phase = Fraction(0)
        rest = []
        for a in atoms:
            if isinstance(a, Exponential):
                tvec = [x + y for x, y in zip(tvec, a.covector)]
                phase += a.phase
            else:
                rest.append(a)
        key = tuple(sorted(rest, key=repr))
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append((coeff, tuple(tvec), phase))
    total = Scalar.zero()
    for key in order:
        total = total + _ct_group(list(key), groups[key], point, minv, n, widen)
    return total


def _ct_group(shared_atoms, exp_entries, point, minv, n, widen):
    dec = _decompose(shared_atoms, point, minv)
    degree = sum(d for _, d in dec.homog)
    cap = -degree
    if cap < 0:
        return Scalar.zero()
    cap_w = cap + widen

    # entire part: per-direction univariate products, then substitution
    by_dir: dict[tuple, list] = {}
    for lvec, _, spec in dec.series:
        key, scale = _direction_key(lvec)
        by_dir.setdefault(key, []).append((scale, spec))
    entire = {tuple([0] * n): Scalar.one()}
    for key, entries in by_dir.items():
        uni = [Scalar.one()] + [Scalar.zero()] * cap_w
        for scale, spec in entries:
            coeffs, with_u = _series_coeffs(spec, cap_w)
            folded = []
            for k, c in enumerate(coeffs):
                s = Scalar({k if with_u else 0: c * scale**k})
                folded.append(s)
            uni = series_mul(uni, folded, cap_w)
        entire = _poly_mul(entire, _substitute_series(uni, key, n, cap_w), cap_w)

    # exponential sum
    exp_series_plain, _ = _series_coeffs(("exp",), cap_w)
    exp_poly = {}
    for coeff, tvec, phase in exp_entries:
        q = sum(Fraction(a) * Fraction(b) for a, b in zip(tvec, point)) + phase
        c = coeff * Scalar.root_of_unity(q)
        lvec = _to_w(tvec, minv)
        if any(lvec):
            folded = [Scalar({k: ck}) for k, ck in enumerate(exp_series_plain)]
            term = _substitute_series(folded, lvec, n, cap_w)
        else:
            term = {tuple([0] * n): Scalar.one()}
        for e, v in term.items():
            add = c * v
            if e in exp_poly:
                exp_poly[e] = exp_poly[e] + add
            else:
                exp_poly[e] = add
    entire = _poly_mul(entire, exp_poly, cap_w)

    targets = []
    slice_coeffs = []
    for e, c in entire.items():
        if sum(e) == cap:
            targets.append(tuple(-x for x in e))
            slice_coeffs.append(c)
    window = cap + sum(abs(d) for _, d in dec.homog) + 5 + widen
    homog = _homog_coefficients(dec.homog, targets, n, window)
    total = Scalar.zero()
    for t, c in zip(targets, slice_coeffs):
        h = homog[t]
        if h:
            total = total + c * Fraction(h)
    return dec.coeff * total


def _direction_key(lvec):
    pivot = next(c for c in lvec if c != 0)
    return tuple(x / pivot for x in lvec), pivot


# -- public operations -------------------------------------------------------


def ct_univariate(f: FunctionExpr, widen: int = 0) -> Scalar:
    """Constant term of the Laurent expansion at 0 for a one-variable f."""
    x = AffineForm((Fraction(1),), Fraction(0))
    return iterated_ct([x], (Fraction(0),), f, widen)


def ct_arrangement(arr: Arrangement, f: FunctionExpr, basis=None, widen: int = 0) -> Scalar:
    """CT^A f = sum of iterated constant terms over an orthogonal basis
    (default: the no-broken-circuit basis in index order)."""
    if basis is None:
        basis = nbc_bases(arr)
    origin = tuple(Fraction(0) for _ in range(arr.dim))
    total = Scalar.zero()
    for t in basis:
        forms = [arr.forms[i] for i in t]
        total = total + iterated_ct(forms, origin, f, widen)
    return total


def rescale_into_dual(forms, gamma: Lattice):
    """Scale each affine form by the minimal positive integer putting its
    linear part in dual(gamma)."""
    return [g.scaled(minimal_multiple(g.linear, gamma)) for g in forms]


def todd_factor(gamma: Lattice, tuple_forms, tau: Character, mu) -> FunctionExpr:
    """The lattice/character deformation attached to an independent tuple:
    box-character exponential sum over vol, times U x_i / (1 - e^(U x_i^0))
    per tuple direction (affine form in the numerator, linear part in the
    denominator)."""
    tuple_forms = list(tuple_forms)
    n = len(tuple_forms)
    box = BoxSpec(tuple(g.linear for g in tuple_forms))
    chars = box_characters(box, gamma, tau, mu)
    vol = len(chars)
    base = [FormPower(g, 1) for g in tuple_forms]
    base += [ExpFrac(AffineForm(g.linear, Fraction(0)), 1) for g in tuple_forms]
    coeff = Scalar.u_power(n, Fraction(1, vol))
    products = [(coeff, tuple([Exponential(t, Fraction(0))] + base)) for t in chars]
    return FunctionExpr(products)


def deformed_ct(local_forms, point, gamma: Lattice, f: FunctionExpr,
                tau: Character, mu, widen: int = 0) -> Scalar:
    """Deformed constant term of the (local) arrangement at a vertex:
    sum over its NBC tuples of ICT(todd * f)."""
    arr = Arrangement(tuple(local_forms))
    point = vec(point)
    total = Scalar.zero()
    for t in nbc_bases(arr):
        forms = rescale_into_dual([arr.forms[i] for i in t], gamma)
        td = todd_factor(gamma, forms, tau, mu)
        total = total + iterated_ct(forms, point, td * f, widen)
    return total
