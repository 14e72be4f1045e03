"""Content products and the character sums that control them.

Three families of weight functions ``r`` are supported: parametrization I
(``r(x) = exp sum zeta_m h^m x^m / m``), parametrization II
(``r(x) = t^{x xi0} exp sum_{m != 0} xi_m t^{m x} / m``) and plain rational
functions of x (tables, Pochhammer-type factors).  Every identity that relates
a content product to characters is computed by at least two routes.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Mapping

from .characters import phi
from .core import GradedPoly, Ring, as_fraction, exp_truncated
from .errors import ConsistencyError, DomainError
from .partitions import Partition, partitions_of
from .symfun import Specialization, schur


# -- sums of normalized characters ---------------------------------------------

def phi_k(lam, k: int) -> Fraction:
    """Sum of phi_lam(delta) over classes of colength k."""
    lam = Partition(lam)
    d = lam.weight
    if not 0 <= k <= max(d - 1, 0):
        raise DomainError(f"k={k} outside [0, {d - 1}]")
    return sum((phi(lam, delta) for delta in partitions_of(d) if delta.colength == k), Fraction(0))


def phi_ks(lam) -> list[Fraction]:
    lam = Partition(lam)
    return [phi_k(lam, k) for k in range(max(lam.weight, 1))]


def Phi_direct(lam, m: int) -> int:
    return sum(c ** m for c in Partition(lam).contents())


def Phi_from_characters(lam, m: int) -> Fraction:
    """m * sum_{|mu|=m} (-1)^{colength mu} (len(mu)-1)! phi_mu(lam) / Aut(mu), for m >= 1."""
    lam = Partition(lam)
    if m < 1:
        raise DomainError("the character expansion holds for m >= 1")
    ks = phi_ks(lam)
    d = lam.weight
    total = Fraction(0)
    for mu in partitions_of(m):
        if mu[0] >= d:
            continue  # phi_k vanishes for k >= d
        aut = 1
        for mult in mu.multiplicities().values():
            aut *= factorial(mult)
        val = Fraction(1)
        for part in mu:
            val *= ks[part]
        total += (-1) ** mu.colength * factorial(mu.length - 1) * val / aut
    return m * total


def Phi_m(lam, m: int) -> Fraction:
    """Power sum of contents; the direct sum and the character formula must agree."""
    lam = Partition(lam)
    if m < 0:
        raise DomainError("m must be nonnegative")
    direct = Fraction(Phi_direct(lam, m))
    if m == 0:
        return direct  # = |lam|; the character expansion starts at m = 1
    other = Phi_from_characters(lam, m)
    if other != direct:
        raise ConsistencyError(f"Phi_{m}({lam}): contents give {direct}, characters give {other}")
    return direct


def content_poly_identity(lam) -> tuple[list[int], list[Fraction]]:
    """Coefficients (highest power of a first) of prod(a + c) and of a^d(1 + sum phi_k a^-k)."""
    lam = Partition(lam)
    lhs = [1]
    for c in lam.contents():
        nxt = lhs + [0]
        for i, x in enumerate(lhs):
            nxt[i + 1] += c * x
        lhs = nxt
    d = lam.weight
    rhs = [Fraction(1)] + [phi_k(lam, k) for k in range(1, d)] + ([Fraction(0)] if d else [])
    if [Fraction(x) for x in lhs] != rhs:
        raise ConsistencyError(f"content polynomial of {lam}: {lhs} != {rhs}")
    return lhs, rhs


def content_polynomial_value(lam, a) -> Fraction:
    a = as_fraction(a)
    out = Fraction(1)
    for c in Partition(lam).contents():
        out *= a + c
    return out


# -- quantum contents -----------------------------------------------------------

def _t_power(t: Fraction, m: int) -> Fraction:
    if not t and m <= 0:
        raise DomainError("t = 0 cannot be raised to a nonpositive power")
    return t ** m


def T_direct(lam, t, m: int = 1) -> Fraction:
    t = as_fraction(t)
    return sum((_t_power(t, m * c) for c in Partition(lam).contents()), Fraction(0))


def T_rows(lam, t, m: int = 1) -> Fraction:
    """sum_i u^{1-i} (1-u^{lam_i})/(1-u) with u = t^m."""
    u = _t_power(as_fraction(t), m)
    if u == 1:
        raise DomainError("t^m = 1 is a pole of the row formula")
    return sum((_t_power(u, 1 - i) * (1 - u ** part) / (1 - u)
                for i, part in enumerate(Partition(lam), start=1)), Fraction(0))


def T_log_derivative(lam, t, m: int = 1) -> Fraction:
    """(p_1 ds/dp_1) / s evaluated at p_k = 1/(1 - t^{mk})."""
    lam = Partition(lam)
    u = _t_power(as_fraction(t), m)
    spec = Specialization.qt(0, u)
    s = schur(lam)
    num = Fraction(0)
    den = Fraction(0)
    for delta, c in s.coeffs.items():
        val = c
        for part in delta:
            val *= spec(part)
        den += val
        num += val * delta.count(1)
    if not den:
        raise DomainError(f"s_{list(lam)} vanishes at p(0,t)")
    return num / den


def T_A_q(lam, t) -> Fraction:
    """(d + sum' m_1(delta) A_delta) / (1 + sum' A_delta)."""
    lam = Partition(lam)
    t = as_fraction(t)
    d = lam.weight
    num, den = Fraction(d), Fraction(1)
    for delta in partitions_of(d):
        if delta.colength == 0:
            continue
        prodden = Fraction(1)
        for part in delta:
            if t ** part == 1:
                raise DomainError("t^k = 1 is a pole of A_delta")
            prodden *= 1 - t ** part
        A = phi(lam, delta) * (1 - t) ** d / prodden
        num += delta.count(1) * A
        den += A
    return num / den


def T_lambda(lam, t, m: int = 1) -> Fraction:
    """Power sum of quantum contents; three routes must agree."""
    a = T_direct(lam, t, m)
    b = T_rows(lam, t, m)
    c = T_log_derivative(lam, t, m)
    if not a == b == c:
        raise ConsistencyError(f"T_{lam}(t^{m}) at t={t}: {a}, {b}, {c}")
    return a


def _expm1_over(poly: GradedPoly) -> GradedPoly:
    """(e^y - 1)/y as a truncated series in the nilpotent y."""
    ring = poly.ring
    out = ring.one()
    power = ring.one()
    k = 1
    while True:
        k += 1
        power = (power * poly).scale(Fraction(1, k))
        if not power:
            return out
        out = out + power


def T_series_at_one(lam, order: int) -> GradedPoly:
    """T_lam(e^u) as a series in u through u^order, from the row formula."""
    lam = Partition(lam)
    ring = Ring([("u", "u", 1)], {"u": order})
    u = ring.gen("u")
    total = ring.zero()
    den = _expm1_over(u).inverse()
    for i, part in enumerate(lam, start=1):
        # t^{1-i} (1 - t^{part}) / (1 - t) = e^{(1-i)u} * part * E(part u)/E(u)
        shift = exp_truncated(u.scale(1 - i)) if i > 1 else ring.one()
        total = total + shift * _expm1_over(u.scale(part)).scale(part) * den
    return total


# -- ramification weights --------------------------------------------------------

def ramification_weight(delta, q, t) -> Fraction:
    delta = Partition(delta)
    q, t = as_fraction(q), as_fraction(t)
    d = delta.weight
    if q == 1:
        raise DomainError("q = 1 is a pole of the ramification weight")
    out = (1 - t) ** d / (1 - q) ** d
    for part in delta:
        den = 1 - t ** part
        if not den:
            raise DomainError(f"t^{part} = 1 is a pole of the ramification weight")
        out *= (1 - q ** part) / den
    return out


def ramification_weight_series(delta, a, order: int) -> GradedPoly:
    """w(delta, e^{a h}, e^h) as a series in h through h^order."""
    delta = Partition(delta)
    a = as_fraction(a)
    if not a:
        raise DomainError("a = 0 makes 1 - q vanish identically")
    ring = Ring([("h", "h", 1)], {"h": order})
    h = ring.gen("h")
    out = ring.const(a ** delta.length / a ** delta.weight)
    ratio = _expm1_over(h) * _expm1_over(h.scale(a)).inverse()
    out = out * ratio ** delta.weight
    for part in delta:
        out = out * _expm1_over(h.scale(a * part)) * _expm1_over(h.scale(part)).inverse()
    return out


def schur_at_qt(lam, q, t) -> Fraction:
    return schur(lam).evaluate(Specialization.qt(q, t))


def content_ratio_direct(lam, q, qt, t) -> Fraction:
    q, qt, t = as_fraction(q), as_fraction(qt), as_fraction(t)
    out = Fraction(1)
    for c in Partition(lam).contents():
        den = 1 - qt * _t_power(t, c)
        if not den:
            raise DomainError(f"1 - q~ t^{c} vanishes")
        out *= (1 - q * _t_power(t, c)) / den
    return out


def content_ratio_characters(lam, q, qt, t) -> Fraction:
    """((1-q)/(1-q~))^d (1 + sum' phi w(q)) / (1 + sum' phi w(q~))."""
    lam = Partition(lam)
    d = lam.weight
    q, qt = as_fraction(q), as_fraction(qt)
    num = den = Fraction(1)
    for delta in partitions_of(d):
        if delta.colength == 0:
            continue
        f = phi(lam, delta)
        if f:
            num += f * ramification_weight(delta, q, t)
            den += f * ramification_weight(delta, qt, t)
    if not den:
        raise DomainError("the character sum at q~ vanishes")
    return ((1 - q) / (1 - qt)) ** d * num / den


def content_ratio_qt(lam, q, qt, t) -> Fraction:
    """prod (1 - q t^c)/(1 - q~ t^c) = s_lam(p(q,t)) / s_lam(p(q~,t)); all routes agree."""
    lam = Partition(lam)
    direct = content_ratio_direct(lam, q, qt, t)
    den = schur_at_qt(lam, qt, t)
    if not den:
        raise DomainError(f"s_{list(lam)}(p(q~={qt}, t={t})) vanishes")
    via_schur = schur_at_qt(lam, q, t) / den
    if direct != via_schur:
        raise ConsistencyError(f"content ratio {lam}: {direct} != {via_schur}")
    if as_fraction(q) != 1 and as_fraction(qt) != 1:
        via_chars = content_ratio_characters(lam, q, qt, t)
        if via_chars != direct:
            raise ConsistencyError(f"content ratio {lam}: {direct} != {via_chars} (characters)")
    return direct


# -- weight functions ----------------------------------------------------------------

def _lift(v, ring: Ring) -> GradedPoly:
    if isinstance(v, GradedPoly):
        if v.ring != ring:
            return v.to_ring(ring)
        return v
    return ring.const(v)


class Weight:
    """A content weight r(x); subclasses supply ``r`` (and possibly ``log_r``)."""

    def r(self, x: int, ring: Ring) -> GradedPoly:
        raise NotImplementedError

    def content_product(self, lam, n: int, ring: Ring) -> GradedPoly:
        out = ring.one()
        for c in Partition(lam).contents():
            out = out * self.r(n + c, ring)
        return out


class RationalWeight(Weight):
    """r given by a rational-valued function (or a finite table) of the content."""

    def __init__(self, func: Callable[[int], object] | Mapping[int, object], name: str = "r"):
        self.func = func
        self.name = name

    def value(self, x: int) -> Fraction:
        if callable(self.func):
            return as_fraction(self.func(x))
        try:
            return as_fraction(self.func[x])
        except KeyError:
            raise DomainError(f"{self.name}({x}) is not tabulated") from None

    def r(self, x, ring):
        return ring.const(self.value(x))


class ExpWeight(Weight):
    """r = exp(log_r) with log_r a nilpotent series in the parameters."""

    def log_r(self, x: int, ring: Ring) -> GradedPoly:
        raise NotImplementedError

    def r(self, x, ring):
        return exp_truncated(self.log_r(x, ring))

    def node_product(self, lam, n: int, ring: Ring) -> GradedPoly:
        """prod over nodes of exp(log r(n + c)), multiplied factor by factor."""
        return Weight.content_product(self, lam, n, ring)


class WeightSpecI(ExpWeight):
    """r(x) = exp sum_m zeta_m h^m x^m / m.

    ``zeta`` lists zeta_1, zeta_2, ...; entries and ``h`` may be rationals or
    (nilpotent) GradedPolys.
    """

    def __init__(self, zeta, h=1):
        self.zeta = list(zeta)
        self.h = h

    def scaled(self, ring: Ring) -> list[GradedPoly]:
        h = _lift(self.h, ring)
        out = []
        hp = ring.one()
        for z in self.zeta:
            hp = hp * h
            out.append(_lift(z, ring) * hp)
        return out

    def log_r(self, x, ring):
        acc = ring.zero()
        for m, zh in enumerate(self.scaled(ring), start=1):
            if x:
                acc = acc + zh.scale(Fraction(x ** m, m))
        return acc

    def exponent_via_Phi(self, lam, n: int, ring: Ring) -> GradedPoly:
        """sum_m zeta_m h^m/m * sum_nodes (n+c)^m with the node sums re-expanded
        binomially in Phi_k (taken from the character formula)."""
        lam = Partition(lam)
        d = lam.weight
        Phis = [Fraction(d)] + [Phi_from_characters(lam, k) if d else Fraction(0)
                                for k in range(1, len(self.zeta) + 1)]
        acc = ring.zero()
        for m, zh in enumerate(self.scaled(ring), start=1):
            s = sum((comb(m, k) * Fraction(n) ** (m - k) * Phis[k] for k in range(m + 1)), Fraction(0))
            acc = acc + zh.scale(s / m)
        return acc

    def exponent_via_pstar(self, lam, n: int, ring: Ring) -> GradedPoly:
        """sum_i V(p*, n - i) - V(p*, n + lam_i - i) with p* from the triangle transform."""
        lam = Partition(lam)
        pstar = triangle_transform_I(self.scaled(ring))

        def V(x):
            acc = ring.zero()
            for m, pm in enumerate(pstar, start=1):
                if x:
                    acc = acc + _lift(pm, ring).scale(Fraction(x ** m, m))
            return acc

        acc = ring.zero()
        for i, part in enumerate(lam, start=1):
            acc = acc + V(n - i) - V(n + part - i)
        return acc


class WeightSpecII(ExpWeight):
    """r(x) = t^{x xi0} exp sum_{m != 0} xi_m t^{m x} / m.

    ``xi`` maps nonzero integers m to xi_m.  The factor t^{x xi0} is carried
    as exp(x * xi0_log_t) where ``xi0_log_t`` stands for the product xi0 log t
    (supply it as a formal generator; t itself must be a nonzero rational).
    """

    def __init__(self, xi: Mapping[int, object] | None = None, t=2, xi0_log_t=0):
        self.xi = {int(m): v for m, v in (xi or {}).items()}
        if 0 in self.xi:
            raise DomainError("xi_0 enters only through xi0_log_t")
        self.t = as_fraction(t)
        if not self.t:
            raise DomainError("t must be nonzero")
        self.xi0_log_t = xi0_log_t

    @classmethod
    def from_lists(cls, xi_plus=(), xi_minus=(), t=2, xi0_log_t=0):
        xi = {m: v for m, v in enumerate(xi_plus, start=1)}
        xi.update({-m: v for m, v in enumerate(xi_minus, start=1)})
        return cls(xi, t, xi0_log_t)

    def log_r(self, x, ring):
        acc = _lift(self.xi0_log_t, ring).scale(x)
        for m, v in self.xi.items():
            acc = acc + _lift(v, ring).scale(self.t ** (m * x) / m)
        return acc

    def exponent_via_T(self, lam, x: int, ring: Ring) -> GradedPoly:
        """xi0 log t (phi_lam(Gamma) + |lam| x) + sum xi_m t^{mx} T_lam(t^m) / m."""
        lam = Partition(lam)
        d = lam.weight
        gamma_val = Phi_from_characters(lam, 1) if d else Fraction(0)
        acc = _lift(self.xi0_log_t, ring).scale(gamma_val + d * x)
        for m, v in self.xi.items():
            acc = acc + _lift(v, ring).scale(self.t ** (m * x) * T_A_q_power(lam, self.t, m) / m)
        return acc

    def pstar(self) -> dict[int, Fraction]:
        return triangle_transform_II(self.xi, self.t)

    def exponent_via_pstar(self, lam, x: int, ring: Ring) -> GradedPoly:
        lam = Partition(lam)
        t = self.t
        quad = Fraction(0)
        acc = ring.zero()
        pst = self.pstar()
        for i, part in enumerate(lam, start=1):
            a, b = x + part - i, x - i
            quad += Fraction(a * a + a - b * b - b, 2)
            for m, pm in pst.items():
                acc = acc + _lift(pm, ring).scale((t ** (a * m) - t ** (b * m)) / m)
        return acc + _lift(self.xi0_log_t, ring).scale(quad)


def T_A_q_power(lam, t, m: int) -> Fraction:
    """T_lam(t^m) from the character (A-q) formula."""
    u = _t_power(as_fraction(t), m)
    if Partition(lam).weight == 0:
        return Fraction(0)
    return T_A_q(lam, u)


def _agree(routes: dict[str, GradedPoly], what: str) -> GradedPoly:
    items = list(routes.items())
    name0, v0 = items[0]
    for name, v in items[1:]:
        if v != v0:
            raise ConsistencyError(f"{what}: route {name0} gives {v0}, route {name} gives {v}")
    return v0


def content_product_I(lam, spec: WeightSpecI, n: int, ring: Ring) -> GradedPoly:
    """prod r(n + c) for parametrization I; node product, Phi form and p* form must agree."""
    lam = Partition(lam)
    return _agree({
        "nodes": spec.node_product(lam, n, ring),
        "Phi": exp_truncated(spec.exponent_via_Phi(lam, n, ring)),
        "p*": exp_truncated(spec.exponent_via_pstar(lam, n, ring)),
    }, f"content product I of {lam}")


def content_product_II(lam, spec: WeightSpecII, x: int, ring: Ring) -> GradedPoly:
    """prod r(x + c) for parametrization II; node product, T form and p* form must agree."""
    lam = Partition(lam)
    return _agree({
        "nodes": spec.node_product(lam, x, ring),
        "T": exp_truncated(spec.exponent_via_T(lam, x, ring)),
        "p*": exp_truncated(spec.exponent_via_pstar(lam, x, ring)),
    }, f"content product II of {lam}")


# -- triangle transforms ------------------------------------------------------------------

def triangle_transform_I(zeta) -> list:
    """p* with V(zeta, x) = V(p*, x-1) - V(p*, x) for V(a, x) = sum a_m x^m / m.

    ``zeta`` (already multiplied by h^m if needed) has length L; the answer has
    length L+1.  Entries may be rationals or GradedPolys.
    """
    zeta = list(zeta)
    L = len(zeta)
    P: list = [Fraction(0)] * (L + 2)  # P[m] = p*_m
    for k in range(L, -1, -1):
        rhs = zeta[k - 1] * Fraction(1, k) if k >= 1 else Fraction(0)
        for m in range(k + 2, L + 2):
            rhs = rhs - P[m] * (Fraction(comb(m, k) * (-1) ** (m - k), m))
        # coefficient of P[k+1] in the x^k equation is -1
        P[k + 1] = -rhs
    return P[1:]


def triangle_transform_II(xi: Mapping[int, object], t) -> dict:
    t = as_fraction(t)
    out = {}
    for m, v in xi.items():
        den = t ** m - 1
        if not den:
            raise DomainError(f"t^{m} = 1 is a pole of the transform")
        out[m] = v * (t ** m / den)
    return out


def V_poly(coeffs, x) -> object:
    """V(a, x) = sum_m a_m x^m / m for a finite list a_1, a_2, ..."""
    x = as_fraction(x)
    total = Fraction(0)
    for m, a in enumerate(coeffs, start=1):
        total = total + a * (x ** m / m)
    return total
