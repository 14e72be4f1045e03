"""Hypergeometric BKP (and 2KP) tau functions as truncated power-sum series.

A tau function here is

    tau(N, n, p) = sum_{l(lam) <= N} c^{|lam|} r_lam(n) s_lam(p),
    r_lam(n) = prod_{(i,j) in lam} r(n + j - i),

cut off at total p-degree ``D``.  ``N >= D`` stands for N = infinity.  The
module extracts weighted Hurwitz numbers from such series, relates BKP and 2KP
series through the heat operator, implements the vertex operators h(n, t) and
the cut-and-join operator, and checks the bilinear (Hirota) equations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Mapping

from .characters import at_zero, char_map_schur, heat_operator
from .contentprod import (Phi_direct, RationalWeight, Weight, WeightSpecI, WeightSpecII,
                          T_lambda, _lift, content_product_I, content_product_II)
from .core import GradedPoly, LaurentZ, Ring, as_fraction, exp_truncated, residue_z, substitute
from .errors import ConsistencyError, DomainError
from .partitions import Partition, partitions_of, partitions_up_to, z_of

__all__ = [
    "RTable", "CallableWeight", "PochhammerWeight", "TrigPochhammerWeight",
    "TauSeries", "HurwitzCoefficients", "tau_ring", "build_tau", "extract_hurwitz",
    "tau_2kp", "heat_reduce", "e0_reduce", "closed_form_r1", "check_scaling",
    "g_factor", "TauFamily", "hirota_ring", "hirota_elementary", "hirota_full",
    "linear_term", "vertex_h", "vertex_expansion", "cut_and_join", "cut_and_join_kappa",
    "apply_exp", "example_vertex", "example_tau", "jack_cauchy_check",
    "macdonald_cauchy_check", "tau_hurwitz_themselves", "weighted_sum_from_tau",
    "F_prefactor",
]


# -- weights --------------------------------------------------------------------------

class RTable(RationalWeight):
    """r tabulated on a finite window of integers."""

    def __init__(self, values: Mapping[int, object], name: str = "r"):
        table = {int(x): as_fraction(v) for x, v in values.items()}
        super().__init__(table, name)
        self.values = table

    @classmethod
    def random(cls, lo: int, hi: int, seed=None, size: int = 9) -> "RTable":
        """Nonzero random rationals num/den with |num| <= size, 1 <= den <= size."""
        rng = random.Random(seed)
        vals = {}
        for x in range(lo, hi + 1):
            num = 0
            while not num:
                num = rng.randint(-size, size)
            vals[x] = Fraction(num, rng.randint(1, size))
        return cls(vals)

    @property
    def window(self) -> tuple[int, int]:
        return min(self.values), max(self.values)

    def require(self, xs: Iterable[int]) -> None:
        missing = sorted(set(xs) - set(self.values))
        if missing:
            raise DomainError(f"r-table has no values at {missing}")


class CallableWeight(Weight):
    """r(x, ring) given by an arbitrary function returning scalars or GradedPolys."""

    def __init__(self, func: Callable[[int, Ring], object], name: str = "r"):
        self.func = func
        self.name = name

    def r(self, x, ring):
        return _lift(self.func(x, ring), ring)


class PochhammerWeight(Weight):
    """r(x) = prod_s (1 + h x / a_s)^(-n_s).

    Rational a_s, h and integer n_s give rational values; a nilpotent GradedPoly
    ``h`` allows arbitrary rational exponents through exp(-n log(1 + ...)).
    """

    def __init__(self, a, n, h=1):
        self.a = [as_fraction(x) for x in a]
        self.n = [as_fraction(x) for x in n]
        if len(self.a) != len(self.n):
            raise DomainError("need one exponent per parameter a_s")
        if any(not x for x in self.a):
            raise DomainError("a_s = 0 is a pole")
        self.h = h

    def r(self, x, ring):
        out = ring.one()
        if isinstance(self.h, GradedPoly):
            h = _lift(self.h, ring)
            for a, n in zip(self.a, self.n):
                if n and x:
                    out = out * exp_truncated(h.scale(Fraction(x) / a).log1p().scale(-n))
            return out
        h = as_fraction(self.h)
        for a, n in zip(self.a, self.n):
            if not n:
                continue
            if n.denominator != 1:
                raise DomainError("fractional exponents need a formal (nilpotent) h")
            base = 1 + h * x / a
            if not base and n > 0:
                raise DomainError(f"pole of r at x={x}")
            out = out.scale(base ** -int(n))
        return out


class TrigPochhammerWeight(Weight):
    """r(x) = prod_s (1 - q_s t_s^x)^(-n_s); q_s may be a nilpotent GradedPoly."""

    def __init__(self, q, t, n):
        self.q = list(q)
        self.t = [as_fraction(x) for x in t]
        self.n = [int(x) for x in n]
        if not len(self.q) == len(self.t) == len(self.n):
            raise DomainError("q, t and n must have equal length")
        if any(not x for x in self.t):
            raise DomainError("t_s must be nonzero")

    def r(self, x, ring):
        out = ring.one()
        for q, t, n in zip(self.q, self.t, self.n):
            base = 1 - _lift(q, ring).scale(t ** x)
            if base.is_zero() or (base.is_constant() and not base.constant_term()):
                if n > 0:
                    raise DomainError(f"pole of r at x={x}")
            out = out * base ** (-n) if n else out
        return out


def macdonald_weight_II(q, t, y_names: list[str], bound: int, xi0_log_t=0) -> WeightSpecII:
    """xi_m = (1 - t^m)/(1 - q^m) * sum_i y_i^m for m <= bound (parametrization II)."""
    q, t = as_fraction(q), as_fraction(t)

    xi = {}
    for m in range(1, bound + 1):
        if q ** m == 1:
            raise DomainError(f"q^{m} = 1 is a pole")
        xi[m] = _PowerSumOfGens(y_names, m, (1 - t ** m) / (1 - q ** m))
    return _LazyWeightII(xi, t, xi0_log_t)


class _PowerSumOfGens:
    """c * sum_i y_i^m, realized in whatever ring it is lifted to."""

    def __init__(self, names, m, c):
        self.names, self.m, self.c = list(names), m, c

    def realize(self, ring: Ring) -> GradedPoly:
        acc = ring.zero()
        for y in self.names:
            acc = acc + ring.gen(y) ** self.m
        return acc.scale(self.c)


class _LazyWeightII(WeightSpecII):
    """WeightSpecII whose xi_m are built inside the target ring on demand."""

    def __init__(self, xi, t, xi0_log_t=0):
        self._lazy = xi
        super().__init__({}, t, xi0_log_t)
        self.xi = xi

    def log_r(self, x, ring):
        acc = _lift(self.xi0_log_t, ring).scale(x)
        for m, v in self._lazy.items():
            acc = acc + v.realize(ring).scale(self.t ** (m * x) / m)
        return acc


# -- series ---------------------------------------------------------------------------

def tau_ring(D: int, prefix: str = "p", extra: Iterable = (), bounds: Mapping | None = None,
             c: str | None = None) -> Ring:
    """Power sums p1..pD (weight m, group "degree", bound D) plus ``extra`` generators."""
    extra = list(extra)
    b = dict(bounds or {})
    if c is not None:
        extra.append((c, c, 1))
        b.setdefault(c, D)
    return Ring.power_sums(D, prefix, extra=extra, bounds=b)


@lru_cache(maxsize=None)
def _schur(lam: Partition, ring: Ring, prefix: str) -> GradedPoly:
    return char_map_schur(lam, ring, prefix)


def _content_window(N: int, n: int, D: int) -> set[int]:
    xs = set()
    for lam in partitions_up_to(D, max_length=max(N, 0)):
        xs.update(n + c for c in lam.contents())
    return xs


def _content_product(weight, lam: Partition, n: int, ring: Ring) -> GradedPoly:
    if isinstance(weight, WeightSpecI) and not isinstance(weight, _LazyWeightII):
        return content_product_I(lam, weight, n, ring)
    if isinstance(weight, WeightSpecII) and not isinstance(weight, _LazyWeightII):
        return content_product_II(lam, weight, n, ring)
    return weight.content_product(lam, n, ring)


def _resolve_weight(weight):
    if weight is None:
        return RationalWeight(lambda x: 1, name="1")
    if isinstance(weight, Mapping):
        return RTable(weight)
    return weight


@dataclass
class TauSeries:
    """Truncated tau series together with the data it was built from."""

    N: int
    n: int
    weight: object
    D: int
    ring: Ring
    series: GradedPoly
    prefix: str = "p"
    c: object = 1
    kind: str = "BKP"
    bar_prefix: str | None = None

    @property
    def infinite(self) -> bool:
        return self.N >= self.D

    @property
    def p_names(self) -> list[str]:
        return [f"{self.prefix}{m}" for m in range(1, self.D + 1)]

    def coefficient(self, delta, bar=None) -> GradedPoly:
        powers = _powers(self.prefix, delta)
        names = list(self.p_names)
        if bar is not None:
            powers.update(_powers(self.bar_prefix, bar))
            names += [f"{self.bar_prefix}{m}" for m in range(1, self.D + 1)]
        return self.series.coefficient_of(powers, names)


def _powers(prefix: str, delta) -> dict:
    out: dict[str, int] = {}
    for part in delta:
        out[f"{prefix}{part}"] = out.get(f"{prefix}{part}", 0) + 1
    return out


def _c_power(c, d: int, ring: Ring) -> GradedPoly:
    if isinstance(c, str):
        return ring.gen(c) ** d
    return _lift(c, ring) ** d


def build_tau(N: int, n: int, weight=None, D: int = 4, ring: Ring | None = None,
              prefix: str = "p", c=1) -> TauSeries:
    """sum_{l(lam) <= N, |lam| <= D} c^|lam| r_lam(n) s_lam(p).

    ``weight`` is a Weight (WeightSpecI/II, RTable, ...), a dict x -> r(x), or None
    for r = 1.  ``c`` is a scalar, a GradedPoly or the name of a generator.
    """
    weight = _resolve_weight(weight)
    if ring is None:
        ring = tau_ring(D, prefix, c=c if isinstance(c, str) else None)
    if isinstance(weight, RTable):
        weight.require(_content_window(N, n, D))
    out = ring.zero()
    if N >= 0:
        for lam in partitions_up_to(D, max_length=N):
            r = _content_product(weight, lam, n, ring)
            if r.is_zero():
                continue
            out = out + _schur(lam, ring, prefix) * r * _c_power(c, lam.weight, ring)
    return TauSeries(N, n, weight, D, ring, out, prefix, c)


def closed_form_r1(D: int, ring: Ring | None = None, prefix: str = "p", c=1) -> GradedPoly:
    """exp(sum_m c^{2m} p_m^2/(2m) + sum_m c^{2m-1} p_{2m-1}/(2m-1)) through degree D."""
    ring = ring or tau_ring(D, prefix, c=c if isinstance(c, str) else None)
    ex = ring.zero()
    for m in range(1, D + 1):
        p = ring.gen(f"{prefix}{m}")
        ex = ex + (p * p * _c_power(c, 2 * m, ring)).scale(Fraction(1, 2 * m))
        if m % 2:
            ex = ex + (p * _c_power(c, m, ring)).scale(Fraction(1, m))
    return exp_truncated(ex)


class HurwitzCoefficients(dict):
    """{(d, Delta): coefficient}; ``flagged`` lists degrees d > N, where the
    length cut-off makes the coefficients differ from Hurwitz numbers."""

    def __init__(self, data, flagged):
        super().__init__(data)
        self.flagged = sorted(flagged)


def _scalar(poly: GradedPoly):
    return poly.constant_term() if poly.is_constant() else poly


def extract_hurwitz(tau: TauSeries) -> HurwitzCoefficients:
    """Coefficient of c^d p_Delta for every Delta with |Delta| <= D."""
    names = tau.p_names
    cname = tau.c if isinstance(tau.c, str) else None
    split = tau.series.split(names + ([cname] if cname else []))
    out, flagged = {}, set()
    for d in range(tau.D + 1):
        for delta in partitions_of(d):
            key = tuple(_powers(tau.prefix, delta).get(nm, 0) for nm in names)
            if cname:
                coeff = split.get(key + (d,), tau.ring.zero())
            else:
                coeff = split.get(key, tau.ring.zero())
                if d:
                    coeff = coeff * _c_power(tau.c, d, tau.ring).inverse()
            if coeff.is_zero():
                continue
            out[(d, delta)] = _scalar(coeff)
            if d > tau.N:
                flagged.add(d)
    return HurwitzCoefficients(out, flagged)


def tau_2kp(N: int, n: int, weight=None, D: int = 4, ring: Ring | None = None,
            prefix: str = "p", bar_prefix: str = "pb", c=1) -> TauSeries:
    """sum_{l(lam) <= N} c^|lam| r_lam(n) s_lam(p) s_lam(pbar)."""
    weight = _resolve_weight(weight)
    if ring is None:
        extra = [(f"{bar_prefix}{m}", "bar", m) for m in range(1, D + 1)]
        ring = tau_ring(D, prefix, extra=extra, bounds={"bar": D},
                        c=c if isinstance(c, str) else None)
    if isinstance(weight, RTable):
        weight.require(_content_window(N, n, D))
    out = ring.zero()
    if N >= 0:
        for lam in partitions_up_to(D, max_length=N):
            r = _content_product(weight, lam, n, ring)
            if r.is_zero():
                continue
            out = out + (_schur(lam, ring, prefix) * _schur(lam, ring, bar_prefix)
                         * r * _c_power(c, lam.weight, ring))
    return TauSeries(N, n, weight, D, ring, out, prefix, c, kind="2KP", bar_prefix=bar_prefix)


def heat_reduce(tau2: TauSeries, check: bool = True) -> TauSeries:
    """Apply exp(sum (i/2) d^2/dpbar_i^2 + sum_odd d/dpbar_i) and set pbar = 0.

    The result is compared with :func:`build_tau` for the same data.
    """
    if tau2.kind != "2KP":
        raise DomainError("heat_reduce needs a two-set (2KP) series")
    bars = [f"{tau2.bar_prefix}{m}" for m in range(1, tau2.D + 1)]
    reduced = at_zero(heat_operator(tau2.series, bars), bars)
    out = TauSeries(tau2.N, tau2.n, tau2.weight, tau2.D, tau2.ring, reduced, tau2.prefix, tau2.c)
    if check:
        direct = build_tau(tau2.N, tau2.n, tau2.weight, tau2.D, tau2.ring, tau2.prefix, tau2.c)
        if direct.series != reduced:
            diff = reduced - direct.series
            raise ConsistencyError(f"heat reduction differs from the BKP series by {diff}")
    return out


def e0_reduce(tau: TauSeries, check: bool = True, cname: str = "c") -> GradedPoly:
    """Heat operator in p, then p = 0, degree by degree; returns a series in ``cname``
    (and the weight parameters): sum_{l(lam) <= N} c^|lam| r_lam(n)."""
    names = tau.p_names
    base = tau.ring
    if cname in base:
        ring = base
    else:
        ring = base.extend([(cname, "_c", 1)], {"_c": tau.D})
    cgen = ring.gen(cname)
    out = ring.zero()
    for d in range(tau.D + 1):
        part = tau.series.homogeneous_part("degree", d)
        if part.is_zero():
            continue
        val = at_zero(heat_operator(part, names), names)
        if not isinstance(tau.c, str):
            if d:
                val = val * _c_power(tau.c, d, base).inverse()
            out = out + val.to_ring(ring) * cgen ** d
        else:
            out = out + val.to_ring(ring)
    if check:
        direct = ring.zero()
        weight = tau.weight
        for lam in partitions_up_to(tau.D, max_length=max(tau.N, 0)) if tau.N >= 0 else ():
            direct = direct + _content_product(weight, lam, tau.n, ring) * cgen ** lam.weight
        if direct != out:
            raise ConsistencyError(f"E=0 reduction: heat route {out} != direct sum {direct}")
    return out


def check_scaling(tau: TauSeries, a) -> bool:
    """r_lam -> a^{-|lam|} r_lam together with p_m -> a^m p_m leaves tau unchanged.

    (Each s_lam is homogeneous of weighted degree |lam|, so p_m is scaled by a^m.)
    """
    a = as_fraction(a)
    if not a:
        raise DomainError("a must be nonzero")
    base = tau.weight

    scaled = CallableWeight(lambda x, ring: base.r(x, ring).scale(1 / a), name="r/a")
    t2 = build_tau(tau.N, tau.n, scaled, tau.D, tau.ring, tau.prefix, tau.c)
    back = substitute(t2.series, {nm: tau.ring.gen(nm).scale(a ** m)
                                  for m, nm in enumerate(tau.p_names, start=1)})
    return back == tau.series


# -- bilinear equations ------------------------------------------------------------------

def g_factor(weight, n: int, ring: Ring) -> GradedPoly:
    """g(n) for the anchor U_0 = 0: prod_{i=1}^{n-1} r(i)^{n-i} (n > 0),
    prod_{i=n+1}^{0} r(i)^{i-n} (n < 0), g(0) = 1."""
    weight = _resolve_weight(weight)
    out = ring.one()
    if n > 0:
        for i in range(1, n):
            out = out * weight.r(i, ring) ** (n - i)
    elif n < 0:
        for i in range(n + 1, 1):
            out = out * weight.r(i, ring) ** (i - n)
    return out


def hirota_ring(D: int, extra: Iterable = (), bounds: Mapping | None = None,
                prefix: str = "p", prime: str = "pp") -> Ring:
    """Two power-sum families p, p' in one grading group ("degree") plus extras."""
    gens = [(f"{prefix}{m}", "degree", m) for m in range(1, D + 1)]
    gens += [(f"{prime}{m}", "degree", m) for m in range(1, D + 1)]
    gens += list(extra)
    b = {"degree": D}
    b.update(bounds or {})
    return Ring(gens, b)


class TauFamily:
    """n -> g(n) tau(N, n, p) for one weight, built lazily and cached.

    ``use_g=False`` drops g(n); such families generally fail the bilinear
    equations but still obey every algebraic identity between them.
    """

    def __init__(self, weight=None, use_g: bool = True, c=1):
        self.weight = _resolve_weight(weight)
        self.use_g = use_g
        self.c = c
        self._cache: dict = {}

    def __call__(self, N: int, n: int, ring: Ring, prefix: str = "p") -> GradedPoly:
        key = (N, n, ring, prefix)
        v = self._cache.get(key)
        if v is None:
            if N < 0:
                v = ring.zero()
            else:
                D = ring.bound("degree")
                v = build_tau(N, n, self.weight, D, ring, prefix, self.c).series
                if self.use_g:
                    v = v * g_factor(self.weight, n, ring)
            self._cache[key] = v
        return v


def _d(f: GradedPoly, prefix: str, k: int, times: int = 1) -> GradedPoly:
    return f.diff(f"{prefix}{k}", times)


def _lowdeg(poly: GradedPoly, D: int) -> GradedPoly:
    g = poly.ring.group_names.index("degree")
    return GradedPoly(poly.ring, {e: c for e, c in poly.terms.items()
                                  if poly.ring.weight(e)[g] <= D}, _clean=True)


def hirota_elementary(family: TauFamily, N: int, n: int, D: int = 4, which: int = 1,
                      form: str = "corrected", extra: Iterable = (),
                      bounds: Mapping | None = None, ring: Ring | None = None) -> GradedPoly:
    """Residual (left minus right) of the first (which=1) or second (which=2)
    elementary bilinear equation, through p-degree D.

    ``form="corrected"`` is the form that holds identically (derivatives in
    t_2 = p_2/2 and, for which=2, the t_2 terms plus the right-hand sign);
    ``form="printed"`` keeps the other normalization for comparison.
    """
    R = ring or tau_ring(D + 2, extra=extra, bounds=bounds)
    T = lambda a, b: family(a, b, R)  # noqa: E731
    half = Fraction(1, 2)
    if which == 1:
        F, G = T(N, n), T(N + 1, n + 1)
        k2 = 1 if form == "corrected" else half
        lhs = ((_d(F, "p", 2) * G - F * _d(G, "p", 2)).scale(k2)
               + (_d(F, "p", 1, 2) * G + F * _d(G, "p", 1, 2)).scale(half)
               - _d(F, "p", 1) * _d(G, "p", 1))
        rhs = T(N + 2, n + 2) * T(N - 1, n - 1)
    elif which == 2:
        F, G = T(N, n + 1), T(N + 1, n + 1)
        lhs = (F * _d(G, "p", 1, 2) - _d(F, "p", 1, 2) * G).scale(half)
        a = _d(T(N + 1, n + 2), "p", 1) * T(N, n)
        b = _d(T(N + 2, n + 2), "p", 1) * T(N - 1, n)
        if form == "corrected":
            lhs = lhs + F * _d(G, "p", 2) - _d(F, "p", 2) * G
            rhs = a - b
        else:
            rhs = b - a
    else:
        raise DomainError("which must be 1 or 2")
    return _lowdeg(lhs - rhs, D)


def _exp_V(ring: Ring, zring: Ring, sign: int, prefix: str, prime: str, D: int,
           zmin: int, zmax: int) -> LaurentZ:
    """exp(sign * sum_m (p'_m - p_m) z^m / m) as a Laurent series."""
    y = zring.gen("_z")
    ex = zring.zero()
    for m in range(1, D + 1):
        diff = zring.gen(f"{prime}{m}") - zring.gen(f"{prefix}{m}")
        ex = ex + (diff * y ** m).scale(Fraction(sign, m))
    return LaurentZ.from_poly(exp_truncated(ex), "_z", ring, 1, zmin, zmax)


def _shift(poly: GradedPoly, prefix: str, sign: int, D: int, zring: Ring, ring: Ring,
           zmin: int, zmax: int) -> LaurentZ:
    """poly with p_k -> p_k + sign * z^{-k}."""
    w = zring.gen("_w")
    assignment = {f"{prefix}{k}": zring.gen(f"{prefix}{k}") + (w ** k).scale(sign)
                  for k in range(1, D + 1)}
    return LaurentZ.from_poly(substitute(poly.to_ring(zring), assignment), "_w", ring, -1, zmin, zmax)


def _contour(k: int, eV: LaurentZ, a: LaurentZ, b: LaurentZ) -> GradedPoly:
    """(1/2 pi i) oint dz z^k eV a b."""
    return residue_z((eV * a * b).shift(k))


def hirota_full(family: TauFamily, N: int, Np: int, n: int, D: int = 3, which: str = "A1",
                extra: Iterable = (), bounds: Mapping | None = None,
                prefix: str = "p", prime: str = "pp") -> GradedPoly:
    """Residual of the two-point bilinear identities through total p-degree D.

    Both use n' = n + N' - N for the p' family.  "A1" relates neighbouring n:

      oint z^{N'-N-1} e^{V(p'-p,z)} tau(N'-1,n',p'-[z^-1]) tau(N+1,n+1,p+[z^-1])
    + oint z^{N-N'-3} e^{V(p-p',z)} tau(N'+1,n'+2,p'+[z^-1]) tau(N-1,n-1,p-[z^-1])
    = (-1)^{N+N'} tau(N'+1,n'+1,p') tau(N-1,n,p)
      + (1-(-1)^{N+N'})/2 tau(N',n'+1,p') tau(N,n,p)

    and "A2" keeps n fixed:

      oint z^{N'-N-2} e^{V(p'-p,z)} tau(N'-1,n'-1,p'-[z^-1]) tau(N+1,n+1,p+[z^-1])
    + oint z^{N-N'-2} e^{V(p-p',z)} tau(N'+1,n'+1,p'+[z^-1]) tau(N-1,n-1,p-[z^-1])
    = (1-(-1)^{N+N'})/2 tau(N',n',p') tau(N,n,p).
    """
    if which == "A1":
        ka, kb = Np - N - 1, N - Np - 3
    elif which == "A2":
        ka, kb = Np - N - 2, N - Np - 2
    else:
        raise DomainError("which must be 'A1' or 'A2'")
    DT = D + max(0, ka + 1, kb + 1)
    ring = hirota_ring(DT, extra, bounds, prefix, prime)
    zring = ring.extend([("_z", "_z", 1), ("_w", "_w", 1)], {"_z": DT, "_w": DT})
    zmin, zmax = -2 * DT - abs(ka) - abs(kb) - 4, 2 * DT + abs(ka) + abs(kb) + 4
    npr = n + Np - N
    T = lambda a, b, pre: family(a, b, ring, pre)  # noqa: E731
    sh = lambda f, pre, s: _shift(f, pre, s, DT, zring, ring, zmin, zmax)  # noqa: E731
    odd = (N + Np) % 2
    if which == "A1":
        lhs = (_contour(ka, _exp_V(ring, zring, 1, prefix, prime, DT, zmin, zmax),
                        sh(T(Np - 1, npr, prime), prime, -1), sh(T(N + 1, n + 1, prefix), prefix, 1))
               + _contour(kb, _exp_V(ring, zring, -1, prefix, prime, DT, zmin, zmax),
                          sh(T(Np + 1, npr + 2, prime), prime, 1), sh(T(N - 1, n - 1, prefix), prefix, -1)))
        rhs = (T(Np + 1, npr + 1, prime) * T(N - 1, n, prefix)).scale(-1 if odd else 1)
        if odd:
            rhs = rhs + T(Np, npr + 1, prime) * T(N, n, prefix)
    else:
        lhs = (_contour(ka, _exp_V(ring, zring, 1, prefix, prime, DT, zmin, zmax),
                        sh(T(Np - 1, npr - 1, prime), prime, -1), sh(T(N + 1, n + 1, prefix), prefix, 1))
               + _contour(kb, _exp_V(ring, zring, -1, prefix, prime, DT, zmin, zmax),
                          sh(T(Np + 1, npr + 1, prime), prime, 1), sh(T(N - 1, n - 1, prefix), prefix, -1)))
        rhs = T(Np, npr, prime) * T(N, n, prefix) if odd else ring.zero()
    return _lowdeg(lhs - rhs, D)


def linear_term(family: TauFamily, N: int, n: int, D: int = 3, which: str = "A2",
                extra: Iterable = (), bounds: Mapping | None = None) -> tuple[GradedPoly, GradedPoly]:
    """Specialize the two-point identity to N' = N+1, p'_i = p_i except
    p'_k = p_k + eps (k = 2 for A2, k = 1 for A1) and take the eps-linear part.

    Returns ``(linear part, elementary residual)``; the identities force
    linear part = elementary residual / 2 (A2, first equation) and
    linear part = elementary residual (A1, second equation), for any family.
    """
    k = 2 if which == "A2" else 1
    full = hirota_full(family, N, N + 1, n, D + k, which, extra, bounds)
    R = full.ring
    ering = R.extend([("_eps", "_eps", k)], {"_eps": D + k})
    target = tau_ring(D + k, extra=extra, bounds=bounds).extend([("_eps", "_eps", k)], {"_eps": D + k})
    assignment = {}
    for m in range(1, D + k + 1):
        v = ering.gen(f"p{m}")
        if m == k:
            v = v + ering.gen("_eps")
        assignment[f"pp{m}"] = v
    spec = substitute(full.to_ring(ering), assignment)
    lin = spec.coefficient_of({"_eps": 1}, ["_eps"])
    lin = lin.to_ring(target)
    g = target.group_names.index("degree")
    lin = GradedPoly(target, {e: c for e, c in lin.terms.items()
                              if target.weight(e)[g] <= D}, _clean=True)
    elem = hirota_elementary(family, N, n, D, 2 if which == "A1" else 1,
                             extra=extra, bounds=bounds,
                             ring=tau_ring(D + 2 + k, extra=extra, bounds=bounds))
    base = tau_ring(D + 2 + k, extra=extra, bounds=bounds)
    lin = lin.to_ring(base)
    return _lowdeg(lin, D), elem


# -- vertex operators -------------------------------------------------------------------

def vertex_h(poly: GradedPoly, n: int, t, prefix: str = "p", zrange: int | None = None) -> GradedPoly:
    """h(n,t) f = t^n res_z dz/z exp(sum (t^i-1) z^i p_i/i) exp(-sum (t^-i - 1) z^-i d/dp_i) f.

    ``t`` is a nonzero rational or a GradedPoly in poly's ring with invertible
    constant term (e.g. exp(eps)).  The annihilation part acts as the shift
    p_i -> p_i + (1 - t^-i) z^-i.
    """
    ring = poly.ring
    D = ring.bound("degree")
    if D is None:
        raise DomainError("vertex operators need a bounded degree group")
    zrange = D + 1 if zrange is None else zrange
    t = _lift(t, ring)
    tinv = t.inverse()
    names = [f"{prefix}{m}" for m in range(1, D + 1) if f"{prefix}{m}" in ring]
    zring = ring.extend([("_z", "_z", 1), ("_w", "_w", 1)], {"_z": D, "_w": D})
    zt, ztinv = t.to_ring(zring), tinv.to_ring(zring)
    y, w = zring.gen("_z"), zring.gen("_w")
    ex = zring.zero()
    tp, tip = zring.one(), zring.one()
    assignment = {}
    for i, nm in enumerate(names, start=1):
        tp, tip = tp * zt, tip * ztinv
        ex = ex + ((tp - 1) * y ** i * zring.gen(nm)).scale(Fraction(1, i))
        assignment[nm] = zring.gen(nm) + (1 - tip) * w ** i
    create = LaurentZ.from_poly(exp_truncated(ex), "_z", ring, 1, -zrange, zrange)
    annihilate = LaurentZ.from_poly(substitute(poly.to_ring(zring), assignment), "_w", ring, -1,
                                    -zrange, zrange)
    return (t ** n) * residue_z((create * annihilate).shift(-1))


def vertex_expansion(poly: GradedPoly, n: int, order: int, prefix: str = "p") -> list[GradedPoly]:
    """[h_0(n) f, h_1(n) f, ...] from h(n, e^eps) = 1 + sum_i eps^{i+1}/(i+1)! h_i(n)."""
    ring = poly.ring
    ering = ring.extend([("_eps", "_eps", 1)], {"_eps": order + 1})
    eps = ering.gen("_eps")
    val = vertex_h(poly.to_ring(ering), n, exp_truncated(eps), prefix)
    out = []
    for i in range(order):
        part = val.coefficient_of({"_eps": i + 1}, ["_eps"])
        out.append(part.to_ring(ring).scale(factorial(i + 1)))
    return out


def cut_and_join(poly: GradedPoly, n: int = 0, prefix: str = "p") -> GradedPoly:
    """n^3 f + sum_{i,j} ((i+j) p_i p_j d/dp_{i+j} + i j p_{i+j} d^2/dp_i dp_j) f."""
    ring = poly.ring
    D = ring.bound("degree")
    names = {m: f"{prefix}{m}" for m in range(1, D + 1) if f"{prefix}{m}" in ring}
    out = poly.scale(n ** 3)
    for i in names:
        for j in names:
            if i + j not in names:
                continue
            pi, pj, pij = ring.gen(names[i]), ring.gen(names[j]), ring.gen(names[i + j])
            out = out + (pi * pj * poly.diff(names[i + j])).scale(i + j)
            out = out + (pij * poly.diff(names[i]).diff(names[j])).scale(i * j)
    return out


def cut_and_join_kappa(max_size: int = 6) -> Fraction:
    """The single constant kappa with cut_and_join(s_lam) = kappa phi_lam(Gamma) s_lam.

    Raises ConsistencyError if some s_lam is not an eigenvector or kappa is not global.
    """
    ring = tau_ring(max(max_size, 2))
    kappa = None
    for lam in partitions_up_to(max_size):
        if not lam.weight:
            continue
        s = _schur(lam, ring, "p")
        image = cut_and_join(s, 0)
        ratio = _eigenvalue(image, s)
        if ratio is None:
            raise ConsistencyError(f"s_{list(lam)} is not an eigenvector of the cut-and-join operator")
        gamma = Fraction(Phi_direct(lam, 1))
        if gamma:
            k = ratio / gamma
            if kappa is None:
                kappa = k
            elif k != kappa:
                raise ConsistencyError(f"eigenvalue ratio {k} at {list(lam)} differs from {kappa}")
        elif ratio:
            raise ConsistencyError(f"nonzero eigenvalue {ratio} where phi(Gamma) = 0 at {list(lam)}")
    return kappa


def _eigenvalue(image: GradedPoly, vec: GradedPoly):
    e0, c0 = next(iter(vec.terms.items()))
    lam = image.terms.get(e0, Fraction(0)) / c0
    return lam if image == vec.scale(lam) else None


def apply_exp(op: Callable[[GradedPoly], GradedPoly], poly: GradedPoly, coeff: GradedPoly) -> GradedPoly:
    """exp(coeff * op) poly, with ``coeff`` nilpotent (the series then terminates)."""
    result, term, k = poly, poly, 0
    while True:
        k += 1
        term = (coeff * op(term)).scale(Fraction(1, k))
        if term.is_zero():
            return result
        result = result + term


def example_vertex(D: int = 5, order: int = 3) -> tuple[GradedPoly, GradedPoly]:
    """(exp(zeta_1 C/kappa) tau_1, sum_lam e^{zeta_1 phi_lam(Gamma)} s_lam) with C the
    cut-and-join operator at n = 0; zeta_1 is a generator truncated at ``order``."""
    kappa = cut_and_join_kappa(D)
    ring = tau_ring(D, extra=[("zeta1", "zeta", 1)], bounds={"zeta": order})
    z = ring.gen("zeta1")
    lhs = apply_exp(lambda f: cut_and_join(f, 0).scale(1 / kappa), closed_form_r1(D, ring), z)
    rhs = build_tau(D, 0, WeightSpecI([z]), D, ring).series
    return lhs, rhs


# -- examples ---------------------------------------------------------------------------

def _bernoulli_factor(eps: GradedPoly) -> GradedPoly:
    """eps/(e^eps - 1) as a series."""
    ring = eps.ring
    acc, power, k = ring.one(), ring.one(), 1
    while True:
        k += 1
        power = (power * eps).scale(Fraction(1, k))
        if power.is_zero():
            break
        acc = acc + power
    return acc.inverse()


class FWeight(Weight):
    """r(x) = (a + x) prod_s (a_s + x)(1 - q_s t_s^x)/(1 - e^{eps_s} t_s^x).

    At t_s^x = 1 the factor 1/(1 - e^eps) is written as -ieps * eps/(e^eps - 1)
    with ``ieps`` a generator standing for 1/eps.
    """

    def __init__(self, a: str, a_s: list[str], q, t, eps: list[str], ieps: list[str]):
        self.a, self.a_s = a, list(a_s)
        self.q = [as_fraction(x) for x in q]
        self.t = [as_fraction(x) for x in t]
        self.eps, self.ieps = list(eps), list(ieps)

    def r(self, x, ring):
        out = ring.gen(self.a) + x
        for a_s, q, t, e, ie in zip(self.a_s, self.q, self.t, self.eps, self.ieps):
            out = out * (ring.gen(a_s) + x)
            tx = t ** x
            E = exp_truncated(ring.gen(e))
            if tx == 1:
                out = out * (-(1 - q * tx)) * ring.gen(ie) * _bernoulli_factor(ring.gen(e))
            else:
                out = out * (1 - q * tx) * (1 - E.scale(tx)).inverse()
        return out


def F_prefactor(d: int, t) -> Fraction:
    """Per-s factor relating the a*prod(a_s/eps_s) coefficient to F."""
    t = as_fraction(t)
    return -(1 - t ** d) / d


def example_tau(example: str, params: Mapping | None = None, D: int = 4, N: int | None = None,
                n: int = 0, ring: Ring | None = None) -> TauSeries:
    """Tau series of the named example family.

    "0": r = 1.  "I": zeta (list), h.  "Ia": a, n_s, h.  "Ib": a, alpha, h (h is
    made a generator when not given).  "II": xi (dict m -> value), t, xi0_log_t.
    "IIa": xi0_log_t (defaults to a generator), t.  "IIb": q, t, n_s.
    "IId": q, t, y (number of variables), bound, xi0_log_t.  "III": q, t (lists).
    """
    params = dict(params or {})
    N = D if N is None else N
    extra, bounds = [], {}
    if example == "0":
        weight = RationalWeight(lambda x: 1, name="1")
    elif example == "I":
        weight = WeightSpecI(params.get("zeta", []), params.get("h", 1))
    elif example == "Ia":
        weight = PochhammerWeight(params["a"], params.get("n_s", [1] * len(params["a"])),
                                  params.get("h", 1))
    elif example == "Ib":
        alpha = as_fraction(params.get("alpha", 1))
        a = params["a"]
        h = params.get("h")
        if h is None:
            order = params.get("order", 3)
            extra.append(("h", "h", 1))
            bounds["h"] = order
            h = "h"
        weight = _deferred_pochhammer(a, [1 / alpha] * len(a), h)
    elif example == "II":
        weight = WeightSpecII(params.get("xi", {}), params.get("t", 2), params.get("xi0_log_t", 0))
    elif example == "IIa":
        x0 = params.get("xi0_log_t")
        if x0 is None:
            extra.append(("xi0", "xi0", 1))
            bounds["xi0"] = params.get("order", 3)
            x0 = "xi0"
        weight = _deferred_II({}, params.get("t", 2), x0)
    elif example == "IIb":
        weight = TrigPochhammerWeight(params["q"], params["t"], params.get("n_s", [1] * len(params["q"])))
    elif example == "IId":
        k = params.get("y", 1)
        bound = params.get("bound", 3)
        ys = [f"y{i}" for i in range(1, k + 1)]
        extra += [(y, "y", 1) for y in ys]
        bounds["y"] = bound
        weight = macdonald_weight_II(params["q"], params["t"], ys, bound, params.get("xi0_log_t", 0))
    elif example == "III":
        q, t = list(params["q"]), list(params["t"])
        k = len(q)
        a_s = [f"a{s}" for s in range(1, k + 1)]
        eps = [f"eps{s}" for s in range(1, k + 1)]
        ieps = [f"ieps{s}" for s in range(1, k + 1)]
        extra += [("a", "a", 1)] + [(x, "a", 1) for x in a_s]
        extra += [(e, "eps", 1) for e in eps] + [(e, "ieps", 0) for e in ieps]
        bounds["a"] = k + 1
        bounds["eps"] = params.get("order", D)
        weight = FWeight("a", a_s, q, t, eps, ieps)
    else:
        raise DomainError(f"unknown example {example!r}")
    if ring is None:
        ring = tau_ring(D, extra=extra, bounds=bounds)
    return build_tau(N, n, weight, D, ring)


class _deferred_pochhammer(Weight):
    """PochhammerWeight whose h may be the name of a ring generator."""

    def __init__(self, a, n, h):
        self.a, self.n, self.h = a, n, h

    def r(self, x, ring):
        h = ring.gen(self.h) if isinstance(self.h, str) else self.h
        return PochhammerWeight(self.a, self.n, h).r(x, ring)


class _deferred_II(Weight):
    """Parametrization II with xi0_log_t possibly a generator name."""

    def __init__(self, xi, t, xi0_log_t):
        self.xi, self.t, self.x0 = xi, t, xi0_log_t

    def _spec(self, ring):
        x0 = ring.gen(self.x0) if isinstance(self.x0, str) else self.x0
        return WeightSpecII(self.xi, self.t, x0)

    def r(self, x, ring):
        return self._spec(ring).r(x, ring)

    def content_product(self, lam, n, ring):
        return content_product_II(lam, self._spec(ring), n, ring)


def jack_cauchy_check(a, alpha, n: int = 0, max_size: int = 4, order: int = 3) -> int:
    """Example Ib: prod_nodes prod_s (1 + h(n+c)/a_s)^{-1/alpha} equals
    sum_mu h^|mu| P^alpha_mu(x) Q^alpha_mu(y) with x_s = -1/a_s and y the power sums
    sum_nodes (n+c)^m.  Returns the number of diagrams checked."""
    from .symfun import jack_P, jack_Q
    alpha = as_fraction(alpha)
    a = [as_fraction(x) for x in a]
    ring = Ring([("h", "h", 1)], {"h": order})
    h = ring.gen("h")
    weight = PochhammerWeight(a, [1 / alpha] * len(a), h)
    px = lambda m: sum(((-1 / x) ** m for x in a), Fraction(0))  # noqa: E731
    checked = 0
    for lam in partitions_up_to(max_size):
        lhs = weight.content_product(lam, n, ring)
        py = lambda m: Fraction(sum((n + c) ** m for c in lam.contents()))  # noqa: E731
        rhs = ring.zero()
        for mu in partitions_up_to(order):
            val = jack_P(mu, alpha).evaluate(px) * jack_Q(mu, alpha).evaluate(py) if mu.weight else 1
            rhs = rhs + (h ** mu.weight).scale(val)
        if lhs != rhs:
            raise ConsistencyError(f"Jack dual-pair expansion fails at {list(lam)}: {lhs} != {rhs}")
        checked += 1
    return checked


def macdonald_cauchy_check(q, t, n: int = 0, max_size: int = 4, order: int = 4, nvars: int = 1) -> int:
    """Example IId: sum_mu t^{n|mu|} P_mu(Y) Q_mu(T_lam,t) equals the exponential form
    exp(sum_m (1/m)(1-t^m)/(1-q^m) t^{mn} T_lam(t^m) p_m(Y)) for each lam."""
    from .symfun import macdonald_P, macdonald_Q
    q, t = as_fraction(q), as_fraction(t)
    ys = [f"y{i}" for i in range(1, nvars + 1)]
    ring = Ring([(y, "y", 1) for y in ys], {"y": order})
    py = lambda m: sum((ring.gen(y) ** m for y in ys), ring.zero())  # noqa: E731
    weight = macdonald_weight_II(q, t, ys, order)
    checked = 0
    for lam in partitions_up_to(max_size):
        ex = ring.zero()
        for m in range(1, order + 1):
            Tm = T_lambda(lam, t, m) if lam.weight else Fraction(0)
            ex = ex + py(m).scale((1 - t ** m) / (1 - q ** m) * t ** (m * n) * Tm / m)
        expo = exp_truncated(ex)
        nodes = weight.content_product(lam, n, ring)
        rhs = ring.zero()
        for mu in partitions_up_to(order):
            if not mu.weight:
                rhs = rhs + ring.one()
                continue
            Qv = macdonald_Q(mu, q, t).evaluate(lambda m: T_lambda(lam, t, m) if lam.weight else Fraction(0))
            if not Qv:
                continue
            rhs = rhs + macdonald_P(mu, q, t).evaluate(py).scale(t ** (n * mu.weight) * Qv)
        if not expo == nodes == rhs:
            raise ConsistencyError(f"Macdonald dual-pair expansion fails at {list(lam)}")
        checked += 1
    return checked


# -- Hurwitz numbers and weighted sums from tau series -------------------------------------

def tau_hurwitz_themselves(b: int, m: int, delta) -> Fraction:
    """Coefficient of p_Delta beta^b prod_i u_i^{d-1} in tau(N=inf, 0 | zeta) with
    zeta_k = (-1)^{k+1} sum u_i^k (+ beta for k = 1), i.e. r(x) = e^{beta x} prod (1 + x u_i),
    multiplied by b!.  It equals H^{1,b+m+1}(d; Gamma x b, (d) x m, Delta)."""
    delta = Partition(delta)
    d = delta.weight
    us = [f"u{i}" for i in range(1, m + 1)]
    extra = [("beta", "beta", 1)] + [(u, u, 1) for u in us]
    bounds = {"beta": b}
    bounds.update({u: d - 1 for u in us})
    ring = tau_ring(d, extra=extra, bounds=bounds)

    def r(x, R):
        out = exp_truncated(R.gen("beta").scale(x)) if b else R.one()
        for u in us:
            out = out * (1 + R.gen(u).scale(x))
        return out

    tau = build_tau(d, 0, CallableWeight(r), d, ring)
    powers = _powers("p", delta)
    powers["beta"] = b
    powers.update({u: d - 1 for u in us})
    names = [f"p{k}" for k in range(1, d + 1)] + ["beta"] + us
    coeff = tau.series.coefficient_of(powers, names)
    return coeff.constant_term() * factorial(b)


def _gens(prefix: str, k: int, group: str, weighted: bool = True):
    return [(f"{prefix}{m}", group, m if weighted else 1) for m in range(1, k + 1)]


@lru_cache(maxsize=64)
def _zeta_tau(d: int, B: int) -> TauSeries:
    ring = tau_ring(d, extra=_gens("zeta", B, "zeta"), bounds={"zeta": B})
    weight = WeightSpecI([ring.gen(f"zeta{m}") for m in range(1, B + 1)])
    return build_tau(d, 0, weight, d, ring)


@lru_cache(maxsize=64)
def _xi_tau(d: int, B: int, t: Fraction) -> TauSeries:
    ring = tau_ring(d, extra=_gens("xi", B, "xi"), bounds={"xi": B})
    weight = WeightSpecII({m: ring.gen(f"xi{m}") for m in range(1, B + 1)}, t, 0)
    return build_tau(d, 0, weight, d, ring)


@lru_cache(maxsize=64)
def _linear_tau(d: int, k: int) -> TauSeries:
    """r(x) = prod_{s<=k} (a_s + x) with generators a_s."""
    names = [f"a{s}" for s in range(1, k + 1)]
    ring = tau_ring(d, extra=[(a, a, 1) for a in names], bounds={a: d for a in names})

    def r(x, R):
        out = R.one()
        for a in names:
            out = out * (R.gen(a) + x)
        return out

    return build_tau(d, 0, CallableWeight(r), d, ring)


@lru_cache(maxsize=64)
def _example_cached(example: str, params: tuple, d: int) -> TauSeries:
    return example_tau(example, dict(params), D=d, N=d)


def weighted_sum_from_tau(spec, d: int, delta) -> Fraction:
    """Read C_mu, S_mu, K_mu, M_mu or F off the matching tau series (coefficient of
    c^d p_Delta times the parameter monomial), normalized to be comparable with
    the direct weighted sums."""
    from .symfun import macdonald_P, monomial_expansion
    delta = Partition(delta)
    mu = spec.mu
    fam = spec.family
    p = spec.params
    pnames = [f"p{k}" for k in range(1, d + 1)]
    if fam == "C":
        B = max(mu.weight, 1)
        tau = _zeta_tau(d, B)
        powers = _powers("p", delta)
        powers.update(_powers("zeta", mu))
        c = tau.series.coefficient_of(powers, pnames + [f"zeta{m}" for m in range(1, B + 1)])
        return c.constant_term() * z_of(mu)
    if fam == "S":
        k = len(mu)
        names = [f"a{s}" for s in range(1, k + 1)]
        tau = _linear_tau(d, k)
        powers = _powers("p", delta)
        powers.update({a: d - part for a, part in zip(names, mu)})
        return tau.series.coefficient_of(powers, pnames + names).constant_term()
    if fam == "K":
        B = max(mu.weight, 1)
        tau = _xi_tau(d, B, as_fraction(p["t"]))
        powers = _powers("p", delta)
        powers.update(_powers("xi", mu))
        c = tau.series.coefficient_of(powers, pnames + [f"xi{m}" for m in range(1, B + 1)])
        return c.constant_term() * z_of(mu)
    if fam == "M":
        B = max(mu.weight, 1)
        q, t = as_fraction(p["q"]), as_fraction(p["t"])
        tau = _example_cached("IId", (("q", q), ("t", t), ("y", B), ("bound", B)), d)
        ys = [f"y{i}" for i in range(1, B + 1)]
        coeff = tau.series.coefficient_of(_powers("p", delta), pnames)
        coeff = coeff.homogeneous_part("y", mu.weight)
        # coefficient of the monomial y^rho is sum_{nu >= rho} M_nu [m_rho] P_nu
        order = sorted(partitions_of(mu.weight), reverse=True)
        solved: dict = {}
        for rho in order:
            mono = {y: e for y, e in zip(ys, rho)}
            val = coeff.coefficient_of(mono, ys).constant_term()
            for nu, Mnu in solved.items():
                val -= Mnu * monomial_expansion(macdonald_P(nu, q, t), mu.weight).get(rho, 0)
            solved[rho] = val
            if rho == mu:
                return val
        raise DomainError(f"{mu} was not reached")
    if fam == "F":
        qt = [(as_fraction(a), as_fraction(b)) for a, b in p["qt"]]
        tau = _example_cached("III", (("q", tuple(a for a, _ in qt)), ("t", tuple(b for _, b in qt))), d)
        k = len(qt)
        names = pnames + ["a"] + [f"a{s}" for s in range(1, k + 1)]
        powers = _powers("p", delta)
        powers["a"] = 1
        powers.update({f"a{s}": 1 for s in range(1, k + 1)})
        c = tau.series.coefficient_of(powers, names)
        # Laurent coefficient eps_s^{-1}: sum over eps^j ieps^{j+1}
        eps = [f"eps{s}" for s in range(1, k + 1)]
        ieps = [f"ieps{s}" for s in range(1, k + 1)]
        total = Fraction(0)
        for e, v in c.terms.items():
            ok = True
            for s in range(k):
                if e[c.ring.index(ieps[s])] - e[c.ring.index(eps[s])] != 1:
                    ok = False
            if ok:
                total += v
        for _, t in qt:
            total /= F_prefactor(d, t)
        return total
    raise DomainError(f"no tau series for family {fam!r}")
