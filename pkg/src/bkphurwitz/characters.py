"""Symmetric-group characters (Murnaghan-Nakayama), normalized characters and the
characteristic map between Schur functions and power sums."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .core import GradedPoly, Ring
from .errors import ConsistencyError, DomainError
from .partitions import Partition, class_size, partitions_of, z_of


def _beta_set(lam) -> tuple[int, ...]:
    n = len(lam)
    return tuple(lam[i] + n - 1 - i for i in range(n))


def _from_beta(beta) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    n = len(beta)
    return tuple(x for x in (beta[i] - (n - 1 - i) for i in range(n)) if x > 0)


def rim_hooks(lam, k: int):
    """Yield (sign, mu) for every border strip of size k removable from lam."""
    beta = _beta_set(lam)
    present = set(beta)
    for b in beta:
        if b - k >= 0 and (b - k) not in present:
            height = sum(1 for c in beta if b - k < c < b)
            rest = [c for c in beta if c != b] + [b - k]
            yield (-1) ** height, _from_beta(rest)


@lru_cache(maxsize=None)
def _mn(lam: tuple, delta: tuple) -> int:
    if not delta:
        return 1 if not lam else 0
    k, rest = delta[0], delta[1:]
    return sum(sign * _mn(mu, rest) for sign, mu in rim_hooks(lam, k))


def character(lam, delta) -> int:
    """chi_lam evaluated on the class of cycle type delta."""
    lam, delta = Partition(lam), Partition(delta)
    if lam.weight != delta.weight:
        raise DomainError(f"weights differ: |{lam}| != |{delta}|")
    return _mn(tuple(lam), tuple(delta))


def dim(lam) -> int:
    lam = Partition(lam)
    return factorial(lam.weight) // prod(lam.hook_lengths())


def phi(lam, delta) -> Fraction:
    """|C_delta| chi_lam(delta) / dim lam; zero when the weights differ."""
    lam, delta = Partition(lam), Partition(delta)
    if lam.weight != delta.weight:
        return Fraction(0)
    return Fraction(class_size(delta) * _mn(tuple(lam), tuple(delta)), dim(lam))


class CharTable:
    """Full character table of S_d; rows are irreps, columns are classes."""

    def __init__(self, d: int):
        self.d = d
        self.partitions = partitions_of(d)
        self.values = {(lam, delta): _mn(tuple(lam), tuple(delta))
                       for lam in self.partitions for delta in self.partitions}

    def __getitem__(self, key) -> int:
        lam, delta = key
        return self.values[Partition(lam), Partition(delta)]

    def row(self, lam):
        lam = Partition(lam)
        return [self.values[lam, delta] for delta in self.partitions]

    def rows(self):
        return [self.row(lam) for lam in self.partitions]


@lru_cache(maxsize=None)
def char_table(d: int) -> CharTable:
    return CharTable(d)


# -- characteristic map -----------------------------------------------------

def p_monomial(ring: Ring, delta, prefix: str = "p", coeff=1) -> GradedPoly:
    powers: dict[str, int] = {}
    for part in delta:
        name = f"{prefix}{part}"
        powers[name] = powers.get(name, 0) + 1
    return ring.monomial(powers, coeff)


@lru_cache(maxsize=None)
def schur_power_coeffs(lam) -> dict:
    """{delta: coefficient of p_delta in s_lam}, i.e. chi_lam(delta)/z_delta."""
    lam = Partition(lam)
    out = {}
    for delta in partitions_of(lam.weight):
        c = _mn(tuple(lam), tuple(delta))
        if c:
            out[delta] = Fraction(c, z_of(delta))
    return out


def char_map_schur(lam, ring: Ring | None = None, prefix: str = "p") -> GradedPoly:
    """s_lam = (dim lam/d!)(p_1^d + sum_{delta != 1^d} phi_lam(delta) p_delta)."""
    lam = Partition(lam)
    d = lam.weight
    ring = ring or Ring.power_sums(max(d, 1))
    scale = Fraction(dim(lam), factorial(d))
    out = ring.zero()
    for delta in partitions_of(d):
        c = phi(lam, delta)
        if c:
            out = out + p_monomial(ring, delta, prefix, scale * c)
    return out


def pdelta_in_schur(delta) -> dict:
    """p_delta = sum_lam chi_lam(delta) s_lam, as {lam: chi}."""
    delta = Partition(delta)
    out = {}
    for lam in partitions_of(delta.weight):
        c = _mn(tuple(lam), tuple(delta))
        if c:
            out[lam] = c
    return out


# -- heat operator ----------------------------------------------------------

def heat_operator(poly: GradedPoly, names: list[str]) -> GradedPoly:
    """exp(sum_i (i/2) d^2/dp_i^2 + sum_{i odd} d/dp_i) applied to poly.

    ``names[i-1]`` is the generator playing the role of p_i.
    """
    def gen_step(a):
        acc = a.ring.zero()
        for i, name in enumerate(names, start=1):
            acc = acc + a.diff(name, 2).scale(Fraction(i, 2))
            if i % 2:
                acc = acc + a.diff(name)
        return acc

    result = poly
    term = poly
    k = 0
    while True:
        k += 1
        term = gen_step(term).scale(Fraction(1, k))
        if not term:
            return result
        result = result + term


def at_zero(poly: GradedPoly, names) -> GradedPoly:
    return poly.substitute({n: 0 for n in names})


def chi_sum_direct(delta) -> int:
    delta = Partition(delta)
    return sum(_mn(tuple(lam), tuple(delta)) for lam in partitions_of(delta.weight))


def chi_sum_heat(delta) -> Fraction:
    delta = Partition(delta)
    d = delta.weight
    ring = Ring.power_sums(max(d, 1))
    names = list(ring.names)
    return at_zero(heat_operator(p_monomial(ring, delta), names), names).constant_term()


def chi_sum(delta) -> Fraction:
    """chi(delta) = sum_lam chi_lam(delta); the direct sum and the heat-operator
    evaluation are both computed and must agree."""
    a, b = chi_sum_direct(delta), chi_sum_heat(delta)
    if a != b:
        raise ConsistencyError(f"chi({delta}): character sum {a} != heat operator {b}")
    return Fraction(a)


# -- special values ---------------------------------------------------------

def phi_on_d_cycle(lam) -> Fraction:
    """Closed form for phi_lam((d)); nonzero only on hooks."""
    lam = Partition(lam)
    d = lam.weight
    if d == 0 or lam.kappa != 1:
        return Fraction(0)
    return Fraction((-1) ** (lam.length + 1) * factorial(d), dim(lam) * d)


def zagier_poly(delta) -> list[int]:
    """Coefficients of prod(1 - q^{d_i})/(1 - q)."""
    delta = Partition(delta)
    if not delta:
        raise DomainError("empty profile")
    coeffs = [1] * delta[0]
    for part in delta[1:]:
        nxt = [0] * (len(coeffs) + part)
        for i, c in enumerate(coeffs):
            nxt[i] += c
            nxt[i + part] -= c
        coeffs = nxt
    return coeffs


def zagier_chi(delta, r: int) -> int:
    """chi_r(delta) defined by R_delta(q) = sum_r (-1)^r q^r chi_r(delta)."""
    delta = Partition(delta)
    d = delta.weight
    if not 0 <= r <= d - 1:
        raise DomainError(f"r={r} outside [0, {d - 1}]")
    coeffs = zagier_poly(delta)
    return (-1) ** r * (coeffs[r] if r < len(coeffs) else 0)


def hook(d: int, r: int) -> Partition:
    return Partition([d - r] + [1] * r)
