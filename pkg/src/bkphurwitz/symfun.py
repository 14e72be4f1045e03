"""Symmetric functions in the power-sum basis.

A :class:`SymFunc` stores ``{Partition: coefficient}`` meaning ``sum c_delta p_delta``.
Schur functions come from the characteristic map (cross-checked against
Jacobi-Trudi); Macdonald, Jack and Hall-Littlewood polynomials all come out of
one Gram-Schmidt pass over the monomial basis, ordered by a linear extension
of dominance.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Callable

from .characters import p_monomial, schur_power_coeffs
from .core import GradedPoly, Ring, as_fraction
from .errors import ConsistencyError, DomainError
from .partitions import Partition, partitions_of, z_of


def _merge(a: Partition, b: Partition) -> Partition:
    return Partition(sorted(a + b, reverse=True))


class SymFunc:
    """Finite linear combination of power-sum products p_delta."""

    __slots__ = ("coeffs", "tag")

    def __init__(self, coeffs=None, tag: str = ""):
        self.coeffs = {Partition(k): as_fraction(v) for k, v in (coeffs or {}).items() if v}
        self.tag = tag

    @classmethod
    def p(cls, delta) -> "SymFunc":
        return cls({Partition(delta): 1}, tag=f"p{list(delta)}")

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SymFunc(out)

    def __neg__(self):
        return SymFunc({k: -v for k, v in self.coeffs.items()}, self.tag)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = as_fraction(c)
        return SymFunc({k: v * c for k, v in self.coeffs.items()}, self.tag)

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            return self.scale(other)
        out: dict = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                k = _merge(a, b)
                out[k] = out.get(k, 0) + x * y
        return SymFunc(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, SymFunc) and self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        body = " + ".join(f"{v}*p{list(k)}" for k, v in sorted(self.coeffs.items())) or "0"
        return f"SymFunc({body})"

    def degrees(self) -> set[int]:
        return {k.weight for k in self.coeffs}

    def is_homogeneous(self, d: int) -> bool:
        return all(k.weight == d for k in self.coeffs)

    def coefficient(self, delta) -> Fraction:
        return self.coeffs.get(Partition(delta), Fraction(0))

    def to_poly(self, ring: Ring | None = None, prefix: str = "p") -> GradedPoly:
        if ring is None:
            ring = Ring.power_sums(max([k.weight for k in self.coeffs] + [1]))
        out = ring.zero()
        for k, v in self.coeffs.items():
            out = out + p_monomial(ring, k, prefix, v)
        return out

    @classmethod
    def from_poly(cls, poly: GradedPoly, prefix: str = "p") -> "SymFunc":
        """Read a polynomial purely in p1, p2, ... back into power-sum coordinates."""
        parts = {}
        for name in poly.ring.names:
            if not (name.startswith(prefix) and name[len(prefix):].isdigit()):
                raise DomainError(f"generator {name} is not a power sum")
            parts[name] = int(name[len(prefix):])
        out = {}
        for exp, c in poly.terms.items():
            delta = []
            for name, e in zip(poly.ring.names, exp):
                delta.extend([parts[name]] * e)
            out[Partition(sorted(delta, reverse=True))] = c
        return cls(out)

    def evaluate(self, value: Callable[[int], object]):
        """Substitute p_m -> value(m); values may be rationals or GradedPolys."""
        cache: dict[int, object] = {}

        def v(m):
            if m not in cache:
                cache[m] = value(m)
            return cache[m]

        total = Fraction(0)
        for delta, c in self.coeffs.items():
            term = c
            for part in delta:
                term = term * v(part)
            total = total + term
        return total


# -- specializations ----------------------------------------------------------

class Specialization:
    """Named evaluation of the power sums.

    kinds: ``"qt"`` p_m = (1-q^m)/(1-t^m); ``"infinity"`` p = (1,0,0,...);
    ``"constant"`` p_m = a; ``"custom"`` p_m = values(m).
    """

    def __init__(self, kind: str, **params):
        if kind not in ("qt", "infinity", "constant", "custom"):
            raise DomainError(f"unknown specialization {kind!r}")
        self.kind = kind
        self.params = params

    @classmethod
    def qt(cls, q, t):
        return cls("qt", q=as_fraction(q), t=as_fraction(t))

    @classmethod
    def infinity(cls):
        return cls("infinity")

    @classmethod
    def constant(cls, a):
        return cls("constant", a=as_fraction(a))

    @classmethod
    def custom(cls, values):
        return cls("custom", values=values)

    def __call__(self, m: int):
        if self.kind == "qt":
            q, t = self.params["q"], self.params["t"]
            den = 1 - t ** m
            if not den:
                raise DomainError(f"p_{m}(q,t) has a pole: t^{m} = 1")
            return (1 - q ** m) / den
        if self.kind == "infinity":
            return Fraction(1 if m == 1 else 0)
        if self.kind == "constant":
            return self.params["a"]
        values = self.params["values"]
        return values(m) if callable(values) else values[m]

    def __repr__(self):
        return f"Specialization({self.kind}, {self.params})"


def specialize(f: SymFunc, s: Specialization):
    return f.evaluate(s)


# -- classical bases -----------------------------------------------------------

def schur(lam) -> SymFunc:
    """s_lam via the characteristic map, checked against Jacobi-Trudi."""
    return _schur(Partition(lam))


@lru_cache(maxsize=None)
def _schur(lam: Partition) -> SymFunc:
    s = SymFunc(schur_power_coeffs(lam), tag=f"s{list(lam)}")
    if lam.weight <= 8 and schur_jacobi_trudi(lam) != s:
        raise ConsistencyError(f"Schur function {lam}: characteristic map and Jacobi-Trudi differ")
    return s


@lru_cache(maxsize=None)
def complete(k: int) -> SymFunc:
    """h_k = sum_{|delta|=k} p_delta / z_delta."""
    if k < 0:
        return SymFunc()
    return SymFunc({delta: Fraction(1, z_of(delta)) for delta in partitions_of(k)}, tag=f"h{k}")


def schur_jacobi_trudi(lam) -> SymFunc:
    """det(h_{lam_i - i + j}) by cofactor expansion over column subsets."""
    lam = Partition(lam)
    n = len(lam)
    if n == 0:
        return SymFunc({Partition(): 1})
    memo: dict[tuple, SymFunc] = {}

    def det(row: int, cols: tuple) -> SymFunc:
        if row == n:
            return SymFunc({Partition(): 1})
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = SymFunc()
        for pos, j in enumerate(cols):
            k = lam[row] - row + j
            if k < 0:
                continue
            minor = det(row + 1, cols[:pos] + cols[pos + 1:])
            term = complete(k) * minor
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[key] = acc
        return acc

    return det(0, tuple(range(n)))


def hall_product(f: SymFunc, g: SymFunc) -> Fraction:
    return scalar_product(f, g)


def scalar_product(f: SymFunc, g: SymFunc, weight: Callable[[Partition], Fraction] | None = None) -> Fraction:
    """sum_delta f_delta g_delta z_delta w(delta); w defaults to 1 (Hall inner product)."""
    total = Fraction(0)
    for delta, c in f.coeffs.items():
        other = g.coeffs.get(delta)
        if other:
            w = z_of(delta) if weight is None else z_of(delta) * weight(delta)
            total += c * other * w
    return total


def macdonald_weight(q, t) -> Callable[[Partition], Fraction]:
    q, t = as_fraction(q), as_fraction(t)

    def w(delta):
        out = Fraction(1)
        for part in delta:
            den = 1 - t ** part
            if not den:
                raise DomainError(f"Macdonald pairing has a pole: t^{part} = 1")
            out *= (1 - q ** part) / den
        return out
    return w


def jack_weight(alpha) -> Callable[[Partition], Fraction]:
    alpha = as_fraction(alpha)
    if not alpha:
        raise DomainError("Jack parameter alpha must be nonzero")
    return lambda delta: alpha ** len(delta)


def kostka(lam, mu) -> Fraction:
    """K_{lam,mu} = <s_lam, h_mu>."""
    return _kostka(Partition(lam), Partition(mu))


@lru_cache(maxsize=None)
def _kostka(lam: Partition, mu: Partition) -> Fraction:
    h = SymFunc({Partition(): 1})
    for part in mu:
        h = h * complete(part)
    return scalar_product(schur(lam), h)


def monomial(mu) -> SymFunc:
    """m_mu, obtained by inverting the unitriangular Kostka matrix."""
    return _monomial(Partition(mu))


@lru_cache(maxsize=None)
def _monomial(mu: Partition) -> SymFunc:
    m = schur(mu)
    for nu in partitions_of(mu.weight):
        if nu != mu and mu.dominates(nu):
            k = kostka(mu, nu)
            if k:
                m = m - monomial(nu).scale(k)
    return SymFunc(m.coeffs, tag=f"m{list(mu)}")


def n_statistic(lam) -> int:
    return sum(i * x for i, x in enumerate(lam))


def dominance_order(d: int, key: str = "revlex") -> list[Partition]:
    """Linear extensions of dominance, smallest first.

    ``"revlex"``: graded reverse-lexicographic; ``"n"``: by decreasing n(lam),
    ties broken lexicographically.
    """
    parts = list(partitions_of(d))
    if key == "revlex":
        return parts[::-1]
    if key == "n":
        return sorted(parts, key=lambda p: (-n_statistic(p), tuple(p)))
    raise DomainError(f"unknown order {key!r}")


def gram_schmidt(d: int, weight: Callable[[Partition], Fraction], order: str = "revlex") -> dict:
    """Monic orthogonal basis P_lam = m_lam + lower terms for the given pairing."""
    seq = dominance_order(d, order)
    basis: dict[Partition, SymFunc] = {}
    norms: dict[Partition, Fraction] = {}
    for lam in seq:
        v = monomial(lam)
        for mu in basis:
            c = scalar_product(monomial(lam), basis[mu], weight)
            if c:
                v = v - basis[mu].scale(c / norms[mu])
        nrm = scalar_product(v, v, weight)
        if not nrm:
            raise DomainError(f"pairing degenerates on degree {d} (norm of P_{list(lam)} is zero)")
        basis[lam] = v
        norms[lam] = nrm
    return {lam: (basis[lam], norms[lam]) for lam in seq}


def monomial_expansion(f: SymFunc, d: int) -> dict:
    """Coordinates of a homogeneous degree-d f in the monomial basis."""
    # h_lam is the Hall-dual basis of m_lam
    out = {}
    for lam in partitions_of(d):
        h = SymFunc({Partition(): 1})
        for part in lam:
            h = h * complete(part)
        c = scalar_product(f, h)
        if c:
            out[lam] = c
    return out


def check_dominance_triangular(P: SymFunc, lam: Partition) -> bool:
    coords = monomial_expansion(P, lam.weight)
    return coords.get(lam) == 1 and all(lam.dominates(mu) for mu in coords)


@lru_cache(maxsize=None)
def _macdonald_block(d: int, q: Fraction, t: Fraction, order: str):
    return gram_schmidt(d, macdonald_weight(q, t), order)


def macdonald_P(mu, q, t, order: str = "revlex") -> SymFunc:
    mu = Partition(mu)
    P, _ = _macdonald_block(mu.weight, as_fraction(q), as_fraction(t), order)[mu]
    return SymFunc(P.coeffs, tag=f"P{list(mu)}(q={q},t={t})")


def macdonald_Q(mu, q, t, order: str = "revlex") -> SymFunc:
    mu = Partition(mu)
    P, nrm = _macdonald_block(mu.weight, as_fraction(q), as_fraction(t), order)[mu]
    return SymFunc(P.scale(1 / nrm).coeffs, tag=f"Q{list(mu)}(q={q},t={t})")


def hall_littlewood_P(mu, t) -> SymFunc:
    return macdonald_P(mu, 0, t)


def hall_littlewood_Q(mu, t) -> SymFunc:
    return macdonald_Q(mu, 0, t)


@lru_cache(maxsize=None)
def _jack_block(d: int, alpha: Fraction, order: str):
    return gram_schmidt(d, jack_weight(alpha), order)


def jack_P(mu, alpha, order: str = "revlex") -> SymFunc:
    mu = Partition(mu)
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise DomainError("Jack parameter alpha must be positive")
    P, _ = _jack_block(mu.weight, alpha, order)[mu]
    return SymFunc(P.coeffs, tag=f"JackP{list(mu)}(alpha={alpha})")


def jack_Q(mu, alpha, order: str = "revlex") -> SymFunc:
    """The dual of jack_P: <P_lam, Q_mu>_alpha = delta."""
    mu = Partition(mu)
    alpha = as_fraction(alpha)
    if alpha <= 0:
        raise DomainError("Jack parameter alpha must be positive")
    P, nrm = _jack_block(mu.weight, alpha, order)[mu]
    return SymFunc(P.scale(1 / nrm).coeffs, tag=f"JackQ{list(mu)}(alpha={alpha})")


def jack_J(mu, alpha) -> SymFunc:
    """Integral form J = c_mu P with c_mu = prod over cells (alpha*arm + leg + 1)."""
    mu = Partition(mu)
    alpha = as_fraction(alpha)
    conj = mu.conjugate()
    c = prod((alpha * (mu[i - 1] - j) + conj[j - 1] - i + 1 for i, j in mu.cells()), start=Fraction(1))
    return jack_P(mu, alpha).scale(c)


def power_sums_of_variables(xs) -> Callable[[int], Fraction]:
    xs = [as_fraction(x) for x in xs]
    return lambda m: sum((x ** m for x in xs), Fraction(0))


def hall_littlewood_cauchy(t, y: Callable[[int], object], max_size: int = 5,
                           prefix: str = "ps") -> tuple[GradedPoly, GradedPoly]:
    """Both sides of sum_mu P_mu(p*; t) Q_mu(y; t) = exp sum_m (1 - t^m) p*_m y_m / m,
    with p*_1.. formal generators, truncated at |mu| <= max_size.

    ``y(m)`` gives the m-th power sum on the Q side (quantum contents, say).
    """
    from .core import exp_truncated
    t = as_fraction(t)
    ring = Ring.power_sums(max_size, prefix)
    expo = ring.zero()
    for m in range(1, max_size + 1):
        expo = expo + ring.gen(f"{prefix}{m}").scale((1 - t ** m) * as_fraction(y(m)) / m)
    rhs = exp_truncated(expo)
    lhs = ring.one()
    for d in range(1, max_size + 1):
        for mu in partitions_of(d):
            q = hall_littlewood_Q(mu, t).evaluate(y)
            if q:
                lhs = lhs + hall_littlewood_P(mu, t).to_poly(ring, prefix).scale(q)
    return lhs, rhs
