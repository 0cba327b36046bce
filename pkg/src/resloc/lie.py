"""Root systems of the classical families and G2, the Verlinde sum by brute
force and by residue localization, hull-of-Weyl-orbit membership, and the
quasipolynomial level dependence.

Covectors (roots, weights) are stored in simple-root coordinates; points of
the Cartan live in the dual coordinates, so the natural pairing is the
coordinate dot product and the basic inner product (long roots of square
length 2) is given by the Gram matrix of the simple roots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arrangement import AffineForm, Arrangement, toric_vertices, point_order
from .lattice import Character, Lattice, dual_lattice, lattice_index
from .linalg import Vec, det, dot, mat_inv, smith_normal_form, vec
from .quasipoly import Quasipolynomial, interpolate_quasipolynomial
from .scalar import Scalar
from .cyclotomic import CyclotomicNumber
from .sums import TrigRationalFunction, choose_shift, quotient_representatives, trig_sum_localized
from .lattice import BoundaryHit
from .sums import SpecialCharacter


class UnsupportedFamily(Exception):
    pass


def _family_data(family: str, rank: int):
    family = family.upper()
    if family == "A" and rank >= 1:
        lengths = [Fraction(2)] * rank
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif family == "B" and rank >= 2:
        lengths = [Fraction(2)] * (rank - 1) + [Fraction(1)]
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif family == "C" and rank >= 2:
        lengths = [Fraction(1)] * (rank - 1) + [Fraction(2)]
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif family == "D" and rank >= 3:
        lengths = [Fraction(2)] * rank
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    elif family in ("G", "G2") and rank == 2:
        lengths = [Fraction(2, 3), Fraction(2)]
        edges = [(0, 1)]
    else:
        raise UnsupportedFamily("unsupported family/rank %s_%d" % (family, rank))
    return lengths, edges


@dataclass
class RootSystem:
    family: str
    rank: int
    gram: list
    positive_roots: list[Vec]
    simple_lengths2: list[Fraction]
    rho: Vec
    theta: Vec
    h: int
    fundamental_weights: list[Vec]
    coroot_lattice: Lattice
    weight_lattice: Lattice
    gamma_lattice: Lattice
    weyl: list = field(repr=False)  # (matrix rows, sign)
    _cache: dict = field(default_factory=dict, repr=False)

    # -- inner product and reflections ---------------------------------

    def ip(self, x, y) -> Fraction:
        gx = [dot(row, x) for row in self.gram]
        return dot(gx, y)

    def reflect(self, i: int, x) -> Vec:
        c = 2 * dot(self.gram[i], x) / self.gram[i][i]
        return tuple(xv - c * Fraction(int(j == i)) for j, xv in enumerate(x))

    def apply(self, w, x) -> Vec:
        return tuple(dot(row, x) for row in w)

    def is_dominant(self, x) -> bool:
        return all(dot(self.gram[i], x) >= 0 for i in range(self.rank))

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def index_gamma_theta(self) -> int:
        return lattice_index(self.coroot_lattice, self.gamma_lattice)

    # -- toric root arrangement ------------------------------------------

    def toric_arrangement(self) -> Arrangement:
        """One affine family per translate class: each positive root alpha of
        content d in the weight lattice contributes (1 - e_{-alpha}) =
        prod_{j<d} (1 - e_{-alpha/d + j/d})."""
        if "arr" in self._cache:
            return self._cache["arr"]
        wdual = dual_lattice(self.coroot_lattice)  # = weight lattice as covectors
        forms = []
        for alpha in self.positive_roots:
            c = wdual.coords(alpha)
            d = 0
            for x in c:
                assert x.denominator == 1
                d = gcd(d, abs(int(x)))
            beta = tuple(-x / d for x in alpha)
            for j in range(d):
                forms.append(AffineForm(beta, Fraction(j, d)))
        arr = Arrangement(tuple(forms))
        self._cache["arr"] = arr
        return arr


def _lattice_from_covectors(gens, n) -> Lattice:
    scale = 1
    for g in gens:
        for x in g:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    m = [[int(x * scale) for x in g] for g in gens]
    snf = smith_normal_form(m)
    vinv = mat_inv([[Fraction(x) for x in row] for row in snf.V])
    rows = []
    for i in range(n):
        d = snf.D[i][i]
        rows.append(tuple(Fraction(d, scale) * vinv[i][j] for j in range(n)))
    return Lattice(tuple(rows))


_ROOT_SYSTEMS: dict = {}


def build_root_system(family: str, rank: int) -> RootSystem:
    key = (family.upper().rstrip("2") or "G", rank)
    if key in _ROOT_SYSTEMS:
        return _ROOT_SYSTEMS[key]
    lengths, edges = _family_data(family, rank)
    n = rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = lengths[i]
    for i, j in edges:
        # (alpha_i, alpha_j) = -max(len_i^2, len_j^2)/2 on a Dynkin edge
        gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) / 2

    # roots: closure of the simple roots under the simple reflections
    simples = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]

    def reflect(i, x):
        c = 2 * dot(gram[i], x) / gram[i][i]
        return tuple(xv - c * Fraction(int(j == i)) for j, xv in enumerate(x))

    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for r in frontier:
            for i in range(n):
                s = reflect(i, r)
                if s not in roots:
                    roots.add(s)
                    new.append(s)
        frontier = new
    positive = sorted((r for r in roots if all(x >= 0 for x in r)),
                      key=lambda r: (sum(r), r))
    rho = tuple(sum(r[i] for r in positive) / 2 for i in range(n))

    def ip(x, y):
        return dot([dot(row, x) for row in gram], y)

    theta = max(positive, key=lambda r: sum(r))
    assert ip(theta, theta) == 2
    h_val = ip(theta, rho) + 1
    assert h_val.denominator == 1
    h = int(h_val)

    ginv = mat_inv(gram)
    fw = []
    for i in range(n):
        target = [Fraction(0)] * n
        target[i] = gram[i][i] / 2
        fw.append(tuple(dot(row, target) for row in ginv))
    assert rho == tuple(sum(w[i] for w in fw) for i in range(n))

    # lattices: coroots as points (pairing with a covector = coordinate dot)
    coroot_rows = tuple(tuple(2 * gram[j][i] / gram[j][j] for i in range(n)) for j in range(n))
    coroot_lattice = Lattice(coroot_rows)
    weight_lattice = dual_lattice(coroot_lattice)  # covectors
    long_roots = [r for r in positive if ip(r, r) == 2]
    gamma_star = _lattice_from_covectors(long_roots, n)
    gamma_lattice = dual_lattice(gamma_star)

    # Weyl group as matrices on covector coordinates, with signs
    gens = []
    for i in range(n):
        rows = []
        for a in range(n):
            base = [Fraction(int(a == b)) for b in range(n)]
            rows.append(base)
        for b in range(n):
            rows[i][b] -= 2 * gram[i][b] / gram[i][i]
        gens.append(tuple(tuple(r) for r in rows))
    ident = tuple(tuple(Fraction(int(a == b)) for b in range(n)) for a in range(n))
    seen = {ident: 1}
    frontier = [ident]
    while frontier:
        new = []
        for w in frontier:
            for gmat in gens:
                prod = tuple(tuple(sum(gmat[a][c] * w[c][b] for c in range(n))
                                   for b in range(n)) for a in range(n))
                if prod not in seen:
                    seen[prod] = -seen[w]
                    new.append(prod)
        frontier = new
    weyl = [(w, s) for w, s in seen.items()]

    rs = RootSystem(
        family=key[0], rank=rank, gram=gram, positive_roots=list(positive),
        simple_lengths2=lengths, rho=rho, theta=theta, h=h,
        fundamental_weights=fw, coroot_lattice=coroot_lattice,
        weight_lattice=weight_lattice, gamma_lattice=gamma_lattice, weyl=weyl)
    _ROOT_SYSTEMS[key] = rs
    return rs


# -- Weyl denominator and Verlinde sums --------------------------------------


def weyl_denominator_power(rs: RootSystem, m: int) -> TrigRationalFunction:
    """delta^(-m) in normal form: numerator weight -m rho over the translate
    factorization of prod (1 - e_{-alpha})^m."""
    arr = rs.toric_arrangement()
    denom = {y: m for y in arr.forms}
    weight = tuple(-m * x for x in rs.rho)
    return TrigRationalFunction({weight: 1}, denom)


def weyl_denominator_value(rs: RootSystem, point) -> CyclotomicNumber:
    """delta(point) = prod 2 i sin(pi alpha(point)), exactly."""
    out = CyclotomicNumber.from_rational(1)
    for alpha in rs.positive_roots:
        q = dot(alpha, point)
        out = out * (CyclotomicNumber.root_of_unity(q / 2)
                     - CyclotomicNumber.root_of_unity(-q / 2))
    return out


def _verlinde_prefactor(rs: RootSystem, g: int, k: int) -> Fraction:
    base = Fraction((-1) ** rs.num_positive * rs.index_gamma_theta() * (k + rs.h) ** rs.rank)
    return base ** (g - 1)


def _in_root_lattice(rs: RootSystem, lam) -> bool:
    return all(Fraction(x).denominator == 1 for x in lam)


def _brute_points(rs: RootSystem, kh: int):
    key = ("pts", kh)
    if key not in rs._cache:
        lat = rs.gamma_lattice.rescale(kh)
        pts = []
        for p in quotient_representatives(rs.coroot_lattice, lat):
            d = weyl_denominator_value(rs, p)
            if not d.is_zero():
                pts.append((p, d))
        rs._cache[key] = pts
    return rs._cache[key]


def verlinde_bruteforce(rs: RootSystem, g: int, k: int, lam,
                        guard: int = 10**6) -> Fraction:
    """The finite character sum over regular points of Gamma[k+h]/Theta."""
    lam = vec(lam)
    if g < 1:
        raise ValueError("genus must be >= 1")
    if rs.ip(rs.theta, lam) > k:
        raise ValueError("level too small for the weight: (theta, lambda) > k")
    if not _in_root_lattice(rs, lam):
        return Fraction(0)
    kh = k + rs.h
    if lattice_index(rs.coroot_lattice, rs.gamma_lattice.rescale(kh)) > guard:
        raise TooLargeError(kh)
    lr = tuple(a + b for a, b in zip(lam, rs.rho))
    total = CyclotomicNumber.from_rational(0)
    for p, d in _brute_points(rs, kh):
        numer = CyclotomicNumber.from_rational(0)
        for w, sign in rs.weyl:
            q = dot(rs.apply(w, lr), p)
            numer = numer + sign * CyclotomicNumber.root_of_unity(q)
        if numer.is_zero():
            continue
        total = total + numer * d.inverse() ** (2 * g - 1)
    val = _verlinde_prefactor(rs, g, k) * total.as_rational() / len(rs.weyl)
    assert val.denominator == 1 and val >= 0, "Verlinde value %s is not a nonnegative integer" % val
    return val


class TooLargeError(Exception):
    pass


def verlinde_localized(rs: RootSystem, g: int, k: int, lam, widen: int = 0) -> Fraction:
    """Verlinde number through the residue localization of the trigonometric
    sum of delta^(1-2g) over Gamma[k+h]/Theta with character e_{lambda+rho}."""
    lam = vec(lam)
    if g < 1:
        raise ValueError("genus must be >= 1")
    if rs.ip(rs.theta, lam) > k:
        raise ValueError("level too small for the weight: (theta, lambda) > k")
    if not _in_root_lattice(rs, lam):
        return Fraction(0)
    kh = k + rs.h
    arr = rs.toric_arrangement()
    f = weyl_denominator_power(rs, 2 * g - 1)
    gamma_k = rs.gamma_lattice.rescale(kh)
    tau = Character(gamma_k, tuple(a + b for a, b in zip(lam, rs.rho)))
    attempt = 0
    while True:
        mu = choose_shift(f, arr, (gamma_k,), attempt)
        if mu is None:
            raise RuntimeError("no admissible shift for delta^(1-2g)")
        try:
            z = trig_sum_localized(arr, rs.coroot_lattice, gamma_k, f, tau, mu, widen)
            break
        except (BoundaryHit, SpecialCharacter):
            attempt += 1
            if attempt > 60:
                raise
    val = _verlinde_prefactor(rs, g, k) * z.as_rational()
    assert val.denominator == 1
    return val


# -- dominant chamber and the hull of the Weyl orbit of rho --------------------


def dominant_representative(rs: RootSystem, v) -> Vec:
    """The dominant-chamber representative of the Weyl orbit of v."""
    v = vec(v)
    while True:
        i = next((i for i in range(rs.rank) if dot(rs.gram[i], v) < 0), None)
        if i is None:
            return v
        v = rs.reflect(i, v)


def in_delta(rs: RootSystem, v, strict: bool = False) -> bool:
    """Membership of v in the convex hull of the Weyl orbit of rho, via the
    fundamental-weight inequalities on the dominant representative."""
    vh = dominant_representative(rs, v)
    for w in rs.fundamental_weights:
        margin = rs.ip(w, rs.rho) - rs.ip(w, vh)
        if margin < 0 or (strict and margin == 0):
            return False
    return True


def check_rho_condition(rs: RootSystem) -> bool:
    """rho - omega_i lies in the hull for every vertex omega_i of the
    rescaled fundamental simplex ((theta, omega_i) = h)."""
    for w in rs.fundamental_weights:
        c = rs.ip(w, rs.theta)
        scaled = tuple(Fraction(rs.h) / c * x for x in w)
        if not in_delta(rs, tuple(r - s for r, s in zip(rs.rho, scaled))):
            return False
    return True


# -- quasipolynomial level dependence -----------------------------------------


def verlinde_period(rs: RootSystem, k0: int, lam_dir) -> int:
    """lcm over toric vertices of the order needed to bring m*k0*p into Gamma
    and m*lambda(p) into Z."""
    lam_dir = vec(lam_dir)
    arr = rs.toric_arrangement()
    period = 1
    for v in toric_vertices(arr, rs.coroot_lattice):
        kp = tuple(Fraction(k0) * x for x in v.point)
        m = point_order(kp, rs.gamma_lattice)
        lp = dot(lam_dir, v.point)
        m = m * lp.denominator // gcd(m, lp.denominator)
        period = period * m // gcd(period, m)
    return period


def verlinde_quasipolynomial(rs: RootSystem, g: int, lam_dir, k0: int,
                             extra: int = 2, use_bruteforce: bool = False) -> Quasipolynomial:
    """Exact interpolation of m -> ver_g(m lam_dir; m k0) as a
    quasipolynomial with the vertex-order period."""
    lam_dir = vec(lam_dir)
    period = verlinde_period(rs, k0, lam_dir)
    degree = (2 * g - 1) * rs.num_positive + rs.rank * (g - 1)

    def evaluate(m):
        lam = tuple(m * x for x in lam_dir)
        if use_bruteforce:
            return verlinde_bruteforce(rs, g, m * k0, lam)
        return verlinde_localized(rs, g, m * k0, lam)

    return interpolate_quasipolynomial(evaluate, period, degree, start=1, extra=extra)
