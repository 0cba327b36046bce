"""Evaluators for rational trigonometric lattice sums and rational Bernoulli
sums: brute force, residue localization, shift regions, unit splitting, and
the two partial-fraction algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arrangement import AffineForm, Arrangement, affine_vertices, form, greatest_broken_circuit, toric_vertices
from .ctengine import ExpFrac, Exponential, FormPower, FunctionExpr, deformed_ct
from .cyclotomic import CyclotomicNumber
from .lattice import (
    BoundaryHit,
    Character,
    Lattice,
    dual_lattice,
    is_special,
    lattice_index,
    quotient_representatives,
)
from .linalg import Vec, dot, rank, solve, vec, vsub
from .lp import lp_strict_feasible
from .scalar import Scalar


class TooLarge(Exception):
    pass


class ShiftNotAdmissible(Exception):
    pass


class SpecialCharacter(Exception):
    pass


class SpecialBasePoint(Exception):
    pass


class CannotSplit(Exception):
    pass


# -- function types ----------------------------------------------------------


class TrigRationalFunction:
    """numerator: finite map weight -> Scalar; denominator: map from
    AffineForm to a positive exponent, representing
    sum lambda_w e_w / prod (1 - e_y)^eps(y)."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator):
        self.numerator: dict[Vec, Scalar] = {}
        for w, c in numerator.items():
            if not isinstance(c, Scalar):
                c = Scalar.from_rational(c)
            if not c.is_zero():
                self.numerator[vec(w)] = c
        self.denominator: dict[AffineForm, int] = {}
        for y, e in denominator.items():
            if e < 0:
                raise ValueError("denominator exponents must be nonnegative")
            if e:
                self.denominator[y] = self.denominator.get(y, 0) + int(e)

    @property
    def dim(self) -> int:
        if self.numerator:
            return len(next(iter(self.numerator)))
        return len(next(iter(self.denominator)).linear)

    def to_expr(self) -> FunctionExpr:
        products = []
        denom_atoms = tuple(ExpFrac(y, e) for y, e in self.denominator.items())
        for w, c in self.numerator.items():
            products.append((c, (Exponential(w),) + denom_atoms))
        if not self.numerator:
            products.append((Scalar.one(), denom_atoms))
        return FunctionExpr(products)

    def value_at(self, point) -> Scalar:
        point = vec(point)
        denom = CyclotomicNumber.from_rational(1)
        for y, e in self.denominator.items():
            factor = CyclotomicNumber.from_rational(1) - CyclotomicNumber.root_of_unity(y.value(point))
            if factor.is_zero():
                raise ZeroDivisionError("pole at %s" % (point,))
            denom = denom * factor**e
        num = Scalar.zero()
        for w, c in self.numerator.items():
            num = num + c * Scalar.root_of_unity(dot(w, point))
        if not self.numerator:
            num = Scalar.one()
        return num * Scalar.from_cyclotomic(denom.inverse())

    def scaled(self, c) -> "TrigRationalFunction":
        if not isinstance(c, Scalar):
            c = Scalar.from_rational(c)
        return TrigRationalFunction({w: c * v for w, v in self.numerator.items()},
                                    dict(self.denominator))

    def single_weight_pieces(self) -> list["TrigRationalFunction"]:
        if not self.numerator:
            return [TrigRationalFunction({tuple([Fraction(0)] * self.dim): Scalar.one()},
                                         dict(self.denominator))]
        return [TrigRationalFunction({w: c}, dict(self.denominator))
                for w, c in self.numerator.items()]


class RationalSummand:
    """numerator: polynomial as {exponent tuple: Fraction} in the ambient
    coordinates; denominator: map from arrangement form index to exponent."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator):
        if isinstance(numerator, (int, Fraction)):
            numerator = {None: Fraction(numerator)}
        self.numerator: dict = {}
        for e, c in numerator.items():
            c = Fraction(c)
            if c:
                key = None if e is None or all(x == 0 for x in e) else tuple(int(x) for x in e)
                self.numerator[key] = self.numerator.get(key, Fraction(0)) + c
        self.denominator: dict[int, int] = {int(i): int(e) for i, e in denominator.items() if e}

    def to_expr(self, arr: Arrangement, underlined: bool = True) -> FunctionExpr:
        n = arr.dim
        denom_atoms = []
        denom_degree = 0
        for i, e in self.denominator.items():
            denom_atoms.append(FormPower(arr.forms[i], -e))
            denom_degree += e
        products = []
        for e, c in self.numerator.items():
            atoms = list(denom_atoms)
            num_degree = 0
            if e is not None:
                for j, m in enumerate(e):
                    if m:
                        coord = AffineForm(tuple(Fraction(int(j == i)) for i in range(n)), Fraction(0))
                        atoms.append(FormPower(coord, m))
                        num_degree += m
            shift = num_degree - denom_degree if underlined else 0
            products.append((Scalar.u_power(shift, c), tuple(atoms)))
        return FunctionExpr(products)

    def value_at(self, arr: Arrangement, point) -> Fraction:
        point = vec(point)
        num = Fraction(0)
        for e, c in self.numerator.items():
            term = Fraction(c)
            if e is not None:
                for j, m in enumerate(e):
                    term *= point[j] ** m
            num += term
        den = Fraction(1)
        for i, ee in self.denominator.items():
            v = arr.forms[i].value(point)
            if v == 0:
                raise ZeroDivisionError("pole")
            den *= v**ee
        return num / den

    def scaled(self, c) -> "RationalSummand":
        c = Fraction(c)
        return RationalSummand({e: c * v for e, v in self.numerator.items()}, dict(self.denominator))


# -- shift regions -----------------------------------------------------------


@dataclass
class ShiftRegion:
    """The admissible-shift data of a function: zonotope generators
    eps(y) * y0 and the numerator weight set."""

    generators: list[tuple[Vec, int]]  # (linear part, exponent)
    weights: list[Vec]

    @staticmethod
    def of(f: TrigRationalFunction) -> "ShiftRegion":
        gens = [(y.linear, e) for y, e in f.denominator.items()]
        weights = list(f.numerator) or [tuple([Fraction(0)] * f.dim)]
        return ShiftRegion(gens, weights)

    @property
    def dim(self) -> int:
        return len(self.generators[0][0]) if self.generators else len(self.weights[0])

    def is_open(self) -> bool:
        if not self.generators:
            return False
        return rank([list(g) for g, _ in self.generators]) == self.dim

    def contains(self, mu, require_open: bool = True) -> bool:
        """mu + w in D_eps strictly, for every numerator weight w."""
        if not self.generators:
            return False
        if require_open and not self.is_open():
            return False
        n = self.dim
        mu = vec(mu)
        for w in self.weights:
            target = [m + x for m, x in zip(mu, w)]
            if not self._zonotope_point(target):
                return False
        return True

    def _zonotope_point(self, target):
        m = len(self.generators)
        cols = [[Fraction(e) * g[i] for g, e in self.generators] for i in range(self.dim)]
        eqs = [(tuple(cols[i]), target[i]) for i in range(self.dim)]
        strict = []
        for k in range(m):
            unit = tuple(Fraction(int(j == k)) for j in range(m))
            strict.append((unit, Fraction(0), ">"))
            strict.append((unit, Fraction(1), "<"))
        return lp_strict_feasible(m, eqs, strict) is not None

    def interior_point(self):
        """Some mu with contains(mu), via a margin LP over (mu, nu), or None."""
        if not self.is_open():
            return None
        n = self.dim
        m = len(self.generators)
        # variables: mu (n), then nu blocks, one per weight
        nvars = n + m * len(self.weights)
        eqs = []
        strict = []
        for bi, w in enumerate(self.weights):
            base = n + bi * m
            for i in range(self.dim):
                row = [Fraction(0)] * nvars
                row[i] = Fraction(-1)
                for k, (g, e) in enumerate(self.generators):
                    row[base + k] = Fraction(e) * g[i]
                eqs.append((tuple(row), Fraction(w[i])))
            for k in range(m):
                unit = [Fraction(0)] * nvars
                unit[base + k] = Fraction(1)
                strict.append((tuple(unit), Fraction(0), ">"))
                strict.append((tuple(unit), Fraction(1), "<"))
        x = lp_strict_feasible(nvars, eqs, strict)
        if x is None:
            return None
        return tuple(x[:n])


def delta_contains(f: TrigRationalFunction, mu) -> bool:
    return ShiftRegion.of(f).contains(mu)


def delta0_contains(f: TrigRationalFunction, mu) -> bool:
    """Relative-interior membership: no full-dimensionality requirement."""
    return ShiftRegion.of(f).contains(mu, require_open=False)


def choose_shift(f: TrigRationalFunction, arr: Arrangement | None = None,
                 lattices=(), attempt: int = 0):
    """An admissible shift for f, nudged to be nonspecial for the given
    lattices (w.r.t. the arrangement directions) and generically placed;
    None when the admissible region is empty.  Increasing `attempt` walks a
    deterministic sequence of perturbations."""
    region = ShiftRegion.of(f)
    mu0 = region.interior_point()
    if mu0 is None:
        return None
    n = len(mu0)
    primes = [101, 103, 107, 109, 113, 127, 131, 137]
    for step in range(attempt, attempt + 40):
        scale = Fraction(1, 2 ** (step + 1))
        nudge = tuple(scale * Fraction(1, primes[(step + i) % len(primes)] ** (i + 1)) for i in range(n))
        mu = tuple(a + b for a, b in zip(mu0, nudge))
        if not region.contains(mu):
            continue
        if arr is not None and any(
                is_special(mu, lat, [g.linear for g in arr.forms]) for lat in lattices):
            continue
        return mu
    return None


# -- brute force and localized trig sums -------------------------------------


def _covered_by(arr: Arrangement, y: AffineForm) -> bool:
    for a in arr.forms:
        ratio = None
        ok = True
        for ya, aa in zip(y.linear, a.linear):
            if aa == 0:
                if ya != 0:
                    ok = False
                    break
                continue
            r = ya / aa
            if ratio is None:
                ratio = r
            elif r != ratio:
                ok = False
                break
        if not ok or ratio is None or ratio == 0:
            continue
        if abs(ratio) == 1 and (y.constant - ratio * a.constant).denominator == 1:
            return True
    return False


def validate_poles_covered(arr: Arrangement, f: TrigRationalFunction):
    for y in f.denominator:
        if not _covered_by(arr, y):
            raise ValueError("denominator form %s not covered by the arrangement" % (y,))


def regular_points(arr: Arrangement, theta: Lattice, gamma: Lattice, guard: int = 10**6):
    index = lattice_index(theta, gamma)
    if index > guard:
        raise TooLarge("quotient has %d points" % index)
    for p in quotient_representatives(theta, gamma):
        if all(f.value(p).denominator != 1 for f in arr.forms):
            yield p


def trig_sum_bruteforce(arr: Arrangement, theta: Lattice, gamma: Lattice,
                        f: TrigRationalFunction, tau: Character,
                        guard: int = 10**6) -> Scalar:
    """Exact sum of tau(gamma) f(gamma) over regular lattice classes."""
    validate_poles_covered(arr, f)
    total = Scalar.zero()
    for p in regular_points(arr, theta, gamma, guard):
        total = total + Scalar.root_of_unity(tau.value_exponent(p)) * f.value_at(p)
    return total


def trig_sum_localized(arr: Arrangement, theta: Lattice, gamma: Lattice,
                       f: TrigRationalFunction, tau: Character, mu,
                       widen: int = 0) -> Scalar:
    """Residue localization: sum over toric vertices of the deformed
    constant terms of todd * f along local NBC tuples."""
    validate_poles_covered(arr, f)
    mu = vec(mu)
    if not delta_contains(f, mu):
        raise ShiftNotAdmissible("mu=%s is not an admissible shift" % (mu,))
    directions = [g.linear for g in arr.forms]
    if is_special(vsub(tau.t, mu), gamma, directions):
        raise SpecialCharacter("t - mu is special; perturb mu")
    expr = f.to_expr()
    total = Scalar.zero()
    for v in toric_vertices(arr, theta):
        local = v.local_arrangement(arr)
        total = total + deformed_ct(local, v.point, gamma, expr, tau, mu, widen)
    return total


def trig_sum_auto(arr: Arrangement, theta: Lattice, gamma: Lattice,
                  f: TrigRationalFunction, tau: Character,
                  mu=None, widen: int = 0):
    """Localized evaluation with unit splitting and automatic shifts.
    Returns (value, pieces) where pieces records (summand, mu) pairs."""
    pieces = []
    total = Scalar.zero()
    for g in split_unit(f, arr):
        attempt = 0
        while True:
            m = vec(mu) if mu is not None else choose_shift(g, arr, (gamma,), attempt)
            if m is None:
                raise ShiftNotAdmissible("no admissible shift found")
            try:
                val = trig_sum_localized(arr, theta, gamma, g, tau, m, widen)
                break
            except (BoundaryHit, SpecialCharacter):
                if mu is not None:
                    raise
                attempt += 1
                if attempt > 40:
                    raise
        pieces.append((g, m, val))
        total = total + val
    return total, pieces


# -- unit splitting -----------------------------------------------------------


def split_unit(f: TrigRationalFunction, arr: Arrangement) -> list[TrigRationalFunction]:
    """Write f as a sum of pieces with nonempty admissible regions, using
    1 = 1/(1-e_y) + 1/(1-e_{-y}) along arrangement directions to complete
    the denominator span and splitting the numerator into single weights."""
    if ShiftRegion.of(f).interior_point() is not None:
        return [f]
    out = []
    n = f.dim
    for piece in f.single_weight_pieces():
        spanned = [list(y.linear) for y in piece.denominator]
        extend = []
        for a in arr.forms:
            if rank(spanned) == n:
                break
            if rank(spanned + [list(a.linear)]) > rank(spanned):
                spanned.append(list(a.linear))
                extend.append(a)
        if rank(spanned) < n:
            raise CannotSplit("arrangement directions do not span")
        parts = [piece]
        for a in extend:
            new_parts = []
            for p in parts:
                for sign in (1, -1):
                    y = a if sign == 1 else AffineForm(tuple(-x for x in a.linear), -a.constant)
                    den = dict(p.denominator)
                    den[y] = den.get(y, 0) + 1
                    new_parts.append(TrigRationalFunction(dict(p.numerator), den))
            parts = new_parts
        out.extend(parts)
    return out


# -- rational partial fractions ------------------------------------------------


def rational_partial_fractions(arr: Arrangement, f: RationalSummand,
                               max_steps: int = 100000) -> list[RationalSummand]:
    """Rewrite f as a sum of fractions whose denominator supports contain no
    broken circuit, by repeatedly applying the circuit identity to the
    greatest broken circuit."""
    work = [(Fraction(1), f.numerator, dict(f.denominator))]
    done: dict[tuple, dict] = {}
    steps = 0
    while work:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("partial fraction expansion did not terminate")
        coeff, numer, eps = work.pop()
        support = [i for i, e in eps.items() if e > 0]
        bc = greatest_broken_circuit(arr, support)
        if bc is None:
            key = tuple(sorted((i, e) for i, e in eps.items() if e > 0))
            bucket = done.setdefault(key, {})
            for e, c in numer.items():
                bucket[e] = bucket.get(e, Fraction(0)) + coeff * c
            continue
        y0, lam = _circuit_relation(arr, bc)
        # 1/prod(y_bc) = -sum_i (lam_i/lam_0) / (y0 * prod_{j != i} y_j)
        for i, idx in enumerate(bc):
            new_eps = dict(eps)
            new_eps[y0] = new_eps.get(y0, 0) + 1
            new_eps[idx] -= 1
            if new_eps[idx] == 0:
                del new_eps[idx]
            work.append((-coeff * lam[i + 1] / lam[0], numer, new_eps))
    out = []
    for key, numer in done.items():
        numer = {e: c for e, c in numer.items() if c}
        if numer:
            out.append(RationalSummand(numer, dict(key)))
    return out


def _circuit_relation(arr: Arrangement, bc):
    """Find y0 preceding bc with sum_j lam_j y_j = 0 (j = 0 paired with y0),
    all lam_j nonzero."""
    rows = [list(arr.forms[i].linear) for i in bc]
    for h in range(bc[0]):
        if h in bc:
            continue
        target = list(arr.forms[h].linear)
        coeffs = solve([list(col) for col in zip(*rows)], target)
        if coeffs is not None and all(c != 0 for c in coeffs):
            # y_h = sum_i coeffs_i y_{bc_i}:  y_h - sum coeffs y = 0
            return h, [Fraction(1)] + [-c for c in coeffs]
    raise ValueError("not a broken circuit")


# -- trigonometric partial fractions -------------------------------------------


class _TrigTerm:
    __slots__ = ("coeff", "weight", "eps")

    def __init__(self, coeff: Scalar, weight: Vec, eps: dict[AffineForm, int]):
        self.coeff = coeff
        self.weight = weight
        self.eps = {y: e for y, e in eps.items() if e}

    def to_function(self) -> TrigRationalFunction:
        return TrigRationalFunction({self.weight: self.coeff}, dict(self.eps))

    def absorb_exponential(self, y: AffineForm, multiple: int):
        """Multiply by e_{multiple * y}: shifts the weight, the constant part
        becomes a root-of-unity coefficient."""
        self.weight = tuple(w + multiple * x for w, x in zip(self.weight, y.linear))
        self.coeff = self.coeff * Scalar.root_of_unity(Fraction(multiple) * y.constant)


def _direction_class(y: AffineForm):
    return y.direction_key()


def trig_partial_fractions(arr: Arrangement, theta: Lattice,
                           f: TrigRationalFunction, mu,
                           max_steps: int = 20000):
    """Eliminate broken circuits among denominator directions, keeping mu in
    every output term's admissible region.  Returns (terms, forms) where
    `forms` collects all affine forms used by the output denominators (an
    arrangement with the same central part as the input's)."""
    mu = vec(mu)
    if is_special(mu, theta, [g.linear for g in arr.forms]):
        raise SpecialCharacter("mu must be nonspecial for the central arrangement")
    direction_index = {}
    for i, g in enumerate(arr.forms):
        direction_index.setdefault(_direction_class(g), len(direction_index))
    central = Arrangement(
        tuple(form(key) for key in sorted(direction_index, key=direction_index.get)),
        central=False)

    work = []
    for piece in f.single_weight_pieces():
        (w, c), = piece.numerator.items()
        work.append(_TrigTerm(c, w, piece.denominator))
    out = []
    steps = 0
    while work:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("trig partial fractions did not terminate")
        term = work.pop()
        by_dir: dict[int, list[AffineForm]] = {}
        for y in term.eps:
            key = _direction_class(y)
            if key not in direction_index:
                direction_index[key] = len(direction_index)
                central = Arrangement(central.forms + (form(key),), central=False)
            by_dir.setdefault(direction_index[key], []).append(y)
        bc = greatest_broken_circuit(central, sorted(by_dir))
        if bc is None:
            out.append(term)
            continue
        _eliminate_circuit(term, bc, by_dir, central, mu, work)
    forms = sorted({y for t in out for y in t.eps}, key=lambda y: (y.direction_key(), y.constant))
    return [t.to_function() for t in out], forms


def _eliminate_circuit(term: _TrigTerm, bc, by_dir, central, mu, work):
    # one representative translate per circuit direction
    chosen = [sorted(by_dir[d], key=lambda y: (y.constant,))[0] for d in bc]
    h = _circuit_y0_direction(central, bc)
    y0_lin = central.forms[h].linear
    rows = [list(y.linear) for y in chosen]
    coeffs = solve([list(col) for col in zip(*rows)], list(y0_lin))
    # y0 + sum_i lam_i y_i = 0 after clearing denominators
    lams = [Fraction(-1)] + list(coeffs)
    mul = 1
    for c in lams:
        mul = mul * c.denominator // gcd(mul, c.denominator)
    lam = [int(c * mul) for c in lams]
    g = 0
    for c in lam:
        g = gcd(g, abs(c))
    lam = [c // g for c in lam]
    lam_circuit = lam[1:]  # relation coefficients on the chosen forms
    # scaled forms: yt_i = lam_i * y_i; yt_0 = -sum yt_i
    yt = [chosen[i].scaled(lam_circuit[i]) for i in range(len(chosen))]
    lin0 = tuple(-sum(y.linear[j] for y in yt) for j in range(len(mu)))
    const0 = -sum((y.constant for y in yt), Fraction(0))
    yt0 = AffineForm(lin0, const0)

    base = _TrigTerm(term.coeff, term.weight, term.eps)
    for y in chosen:
        base.eps[y] -= 1
        if base.eps[y] == 0:
            del base.eps[y]

    # geometric progressions against the scaled circuit forms
    expanded = [base]
    for i, y in enumerate(chosen):
        lam_i = lam_circuit[i]
        shifts = range(0, lam_i) if lam_i > 0 else range(-1, lam_i - 1, -1)
        sign = 1 if lam_i > 0 else -1
        new = []
        for t in expanded:
            for j in shifts:
                nt = _TrigTerm(t.coeff * Fraction(sign), t.weight, t.eps)
                nt.absorb_exponential(y, j)
                new.append(nt)
        expanded = new

    # order the circuit by the alpha-coefficients of a mu-decomposition
    alphas = _mu_alphas(term, chosen, lam_circuit, mu)
    order = sorted(range(len(yt)), key=lambda i: alphas[i])
    z = [yt0] + [yt[i] for i in order]

    # obv-trig: 1/prod_{j>=1}(1-e_{z_j}) = -sum_{i>=1} prod_{j<i} e_{z_j}
    #                                            / prod_{j != i} (1-e_{z_j})
    for t in expanded:
        for i in range(1, len(z)):
            nt = _TrigTerm(t.coeff * Fraction(-1), t.weight, t.eps)
            for j in range(i):
                nt.absorb_exponential(z[j], 1)
            for j in range(len(z)):
                if j != i:
                    _add_translates(nt, z[j])
            work.append(nt)


def _add_translates(term: _TrigTerm, y: AffineForm):
    """Multiply the denominator by (1 - e_y) factored into primitive-direction
    translates: 1 - e_{d b} = prod_j (1 - e_{b + j/d}) for y = d b."""
    pivot = next(x for x in y.linear if x != 0)
    # direction in lowest terms: find the largest d with y = d * b, b having
    # the same rational direction but 1/d of the magnitude; here forms are
    # integer multiples of primitive translates by construction
    d = _content(y.linear)
    if d == 1:
        term.eps[y] = term.eps.get(y, 0) + 1
        return
    b = AffineForm(tuple(x / d for x in y.linear), y.constant / d)
    for j in range(d):
        t = AffineForm(b.linear, b.constant + Fraction(j, d))
        term.eps[t] = term.eps.get(t, 0) + 1


def _content(linear) -> int:
    """Positive integer content relative to the primitive direction: the
    factor d such that linear = d * primitive (primitive has coprime integer
    coordinates after clearing one global denominator)."""
    lcm = 1
    for x in linear:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in linear]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    d = Fraction(g, lcm)
    return int(d) if d.denominator == 1 and d >= 1 else 1


def _circuit_y0_direction(central: Arrangement, bc):
    rows = [list(central.forms[i].linear) for i in bc]
    for h in range(bc[0]):
        if h in bc:
            continue
        target = list(central.forms[h].linear)
        coeffs = solve([list(col) for col in zip(*rows)], target)
        if coeffs is not None and all(c != 0 for c in coeffs):
            return h
    raise ValueError("not a broken circuit")


def _mu_alphas(term: _TrigTerm, chosen, lam_circuit, mu):
    """Coefficients ordering the circuit forms: from a strictly feasible
    decomposition mu + w = sum nu_y eps'(y) y0 + sum beta_i y_i0."""
    n = len(mu)
    rest = [(y, e) for y, e in term.eps.items()]
    m = len(chosen)
    nvars = len(rest) + m
    target = [mu[i] + term.weight[i] for i in range(n)]
    eqs = []
    for i in range(n):
        row = []
        for y, e in rest:
            row.append(Fraction(e) * y.linear[i])
        for y in chosen:
            row.append(y.linear[i])
        eqs.append((tuple(row), target[i]))
    strict = []
    for k in range(nvars):
        unit = tuple(Fraction(int(j == k)) for j in range(nvars))
        strict.append((unit, Fraction(0), ">"))
        strict.append((unit, Fraction(1), "<"))
    x = lp_strict_feasible(nvars, eqs, strict)
    if x is None:
        # fall back to a deterministic ordering; identity stays valid
        return [Fraction(i + 1, len(chosen) + 2) for i in range(m)]
    betas = x[len(rest):]
    alphas = []
    for beta, lam in zip(betas, lam_circuit):
        if lam > 0:
            alphas.append(beta / lam)
        else:
            alphas.append((1 - beta) / (-lam))
    return alphas


# -- Bernoulli sums -------------------------------------------------------------


def bernoulli_value(arr: Arrangement, gamma: Lattice, f: RationalSummand,
                    t, mu, rescaled: bool = True, widen: int = 0) -> Scalar:
    """Exact value of the lattice sum sum_{gamma} tau(gamma) f(gamma) by
    residue localization over the arrangement vertices.

    With rescaled=True every form factor of f is underlined (multiplied by
    U); the convergent even sums then come out as pure rationals."""
    t = vec(t)
    mu = vec(mu)
    if is_special(vsub(t, mu), gamma, [g.linear for g in arr.forms]):
        raise SpecialBasePoint("t - mu is special; perturb mu")
    tau = Character(gamma, t)
    expr = f.to_expr(arr, underlined=rescaled)
    if arr.central:
        vertices = [(tuple(Fraction(0) for _ in range(arr.dim)),
                     tuple(range(len(arr.forms))))]
    else:
        vertices = affine_vertices(arr)
    total = Scalar.zero()
    for p, incident in vertices:
        local = [arr.forms[i] for i in incident]
        total = total + deformed_ct(local, p, gamma, expr, tau, mu, widen)
    return total


def bernoulli_numeric_oracle(arr: Arrangement, gamma: Lattice, f: RationalSummand,
                             t, cutoff: int, rescaled: bool = False) -> complex:
    """Truncated float sum over lattice points with coefficient sup-norm at
    most `cutoff`, skipping the arrangement; the absolutely convergent cases
    approximate the exact value."""
    import numpy as np

    n = arr.dim
    basis = gamma.basis
    t = vec(t)
    # integer form tables: value = (introw . c + intconst) / scale
    tables = []
    for g in arr.forms:
        vals = [dot(g.linear, b) for b in basis]
        scale = 1
        for x in vals + [g.constant]:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        tables.append((np.array([int(x * scale) for x in vals], dtype=np.int64),
                       int(g.constant * scale), float(scale)))
    t_dot = np.array([float(dot(t, b)) for b in basis])
    amb = np.array([[float(b[j]) for j in range(n)] for b in basis])

    ranges = [np.arange(-cutoff, cutoff + 1, dtype=np.int64) for _ in range(n)]
    total = 0.0 + 0.0j
    two_pi_i = 2j * np.pi
    block = max(1, 10**7 // max(1, (2 * cutoff + 1) ** (n - 1)))
    first = ranges[0]
    for start in range(0, len(first), block):
        chunk = first[start:start + block]
        grids = np.meshgrid(chunk, *ranges[1:], indexing="ij")
        coords = np.stack([g.reshape(-1) for g in grids], axis=1)
        mask = np.ones(coords.shape[0], dtype=bool)
        vals = []
        for introw, intconst, scale in tables:
            iv = coords @ introw + intconst
            mask &= iv != 0
            vals.append(iv.astype(np.float64) / scale)
        if not mask.any():
            continue
        coords = coords[mask]
        vals = [v[mask] for v in vals]
        ambient = coords.astype(np.float64) @ amb
        num = np.zeros(coords.shape[0], dtype=np.complex128)
        for e, c in f.numerator.items():
            mono = np.full(coords.shape[0], float(c), dtype=np.complex128)
            deg = 0
            if e is not None:
                for j, m in enumerate(e):
                    if m:
                        mono *= ambient[:, j] ** m
                        deg += m
            if rescaled:
                mono *= two_pi_i**deg
            num += mono
        den = np.ones(coords.shape[0], dtype=np.complex128)
        denom_degree = 0
        for i, e in f.denominator.items():
            den *= vals[i] ** e
            denom_degree += e
        if rescaled:
            den *= two_pi_i**denom_degree
        phases = np.exp(two_pi_i * (coords.astype(np.float64) @ t_dot))
        total += np.sum(phases * num / den)
    return complex(total)
