"""Exact truncated multivariate polynomials and Laurent polynomials in z.

Every generator belongs to a grading group and carries a nonnegative weight.
A ring fixes, per group, the largest total weight a stored term may have
(``None`` means unbounded).  All arithmetic is over :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from operator import add
from typing import Iterable, Mapping

from .errors import DomainError, StructureError

__all__ = [
    "Fraction",
    "as_fraction",
    "Ring",
    "GradedPoly",
    "LaurentZ",
    "ring_multiply",
    "exp_truncated",
    "diff",
    "substitute",
    "residue_z",
    "format_rational",
]


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions and rational strings ("3/4") to Fraction.

    Floats are refused: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


class Ring:
    """A generator set with weights, grading groups and truncation bounds.

    ``gens`` is a sequence of ``(name, group, weight)`` triples (a bare name
    means group ``"default"``, weight 1).  ``bounds`` maps group -> max weight.
    """

    def __init__(self, gens: Iterable, bounds: Mapping[str, int | None] | None = None):
        names, groups, weights = [], [], []
        for g in gens:
            if isinstance(g, str):
                g = (g, "default", 1)
            name, group, weight = g
            if weight < 0:
                raise StructureError(f"negative weight for {name}")
            names.append(name)
            groups.append(group)
            weights.append(int(weight))
        if len(set(names)) != len(names):
            raise StructureError("generator names must be unique")
        self.names = tuple(names)
        self.gen_groups = tuple(groups)
        self.weights = tuple(weights)
        self.group_names = tuple(dict.fromkeys(groups))
        bounds = dict(bounds or {})
        unknown = set(bounds) - set(self.group_names)
        if unknown:
            raise StructureError(f"bounds for unknown groups {sorted(unknown)}")
        self.bounds = tuple(bounds.get(g) for g in self.group_names)
        self._gidx = tuple(self.group_names.index(g) for g in groups)
        self._index = {n: i for i, n in enumerate(self.names)}
        self._bounded = tuple(i for i, b in enumerate(self.bounds) if b is not None)
        self._wcache: dict[tuple, tuple] = {}
        self.zero_exp = (0,) * len(self.names)

    @classmethod
    def power_sums(cls, degree: int | None, prefix: str = "p", count: int | None = None,
                   extra: Iterable = (), bounds: Mapping[str, int | None] | None = None,
                   group: str = "degree") -> "Ring":
        """Ring with p1..pK (weight m for p_m in ``group``) plus ``extra`` generators."""
        if count is None:
            if degree is None:
                raise StructureError("need a degree bound or an explicit generator count")
            count = degree
        gens = [(f"{prefix}{m}", group, m) for m in range(1, count + 1)]
        gens.extend(extra)
        b = {group: degree}
        b.update(bounds or {})
        return cls(gens, b)

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Ring)
            and self.names == other.names
            and self.gen_groups == other.gen_groups
            and self.weights == other.weights
            and self.bounds == other.bounds
        )

    def __hash__(self):
        return hash((self.names, self.gen_groups, self.weights, self.bounds))

    def __repr__(self):
        b = dict(zip(self.group_names, self.bounds))
        return f"Ring({list(self.names)}, bounds={b})"

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructureError(f"unknown generator {name!r}") from None

    def bound(self, group: str):
        return self.bounds[self.group_names.index(group)]

    def weight(self, exp: tuple) -> tuple:
        w = self._wcache.get(exp)
        if w is None:
            acc = [0] * len(self.group_names)
            for i, e in enumerate(exp):
                if e:
                    acc[self._gidx[i]] += e * self.weights[i]
            w = tuple(acc)
            self._wcache[exp] = w
        return w

    def admissible(self, exp: tuple) -> bool:
        w = self.weight(exp)
        return all(w[i] <= self.bounds[i] for i in self._bounded)

    def with_bounds(self, **bounds) -> "Ring":
        b = dict(zip(self.group_names, self.bounds))
        b.update(bounds)
        return Ring(zip(self.names, self.gen_groups, self.weights), b)

    def extend(self, gens: Iterable, bounds: Mapping[str, int | None] | None = None) -> "Ring":
        b = dict(zip(self.group_names, self.bounds))
        b.update(bounds or {})
        return Ring(list(zip(self.names, self.gen_groups, self.weights)) + list(gens), b)

    def exponent(self, powers: Mapping[str, int]) -> tuple:
        exp = [0] * len(self.names)
        for name, e in powers.items():
            exp[self.index(name)] += e
        return tuple(exp)

    def monomial(self, powers: Mapping[str, int] | None = None, coeff=1) -> "GradedPoly":
        return GradedPoly(self, {self.exponent(powers or {}): as_fraction(coeff)})

    def gen(self, name: str) -> "GradedPoly":
        return self.monomial({name: 1})

    def const(self, c) -> "GradedPoly":
        return GradedPoly(self, {self.zero_exp: as_fraction(c)})

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {}, _clean=True)

    def one(self) -> "GradedPoly":
        return self.const(1)


class GradedPoly:
    """Immutable truncated polynomial: a map from exponent tuples to Fractions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object] | None = None, _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = dict(terms or {})
            return
        clean = {}
        for exp, c in (terms or {}).items():
            c = as_fraction(c)
            if c and ring.admissible(exp):
                clean[exp] = c
        self.terms = clean

    # -- basic protocol -----------------------------------------------------
    def _coerce(self, other) -> "GradedPoly":
        if isinstance(other, GradedPoly):
            if other.ring != self.ring:
                raise StructureError("operands live in different rings")
            return other
        return self.ring.const(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except TypeError:
            return NotImplemented

    __hash__ = None

    def __neg__(self):
        return GradedPoly(self.ring, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return GradedPoly(self.ring, out, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, k) -> "GradedPoly":
        k = as_fraction(k)
        if not k:
            return self.ring.zero()
        return GradedPoly(self.ring, {e: c * k for e, c in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            return self.scale(other)
        return ring_multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, GradedPoly):
            return self * other.inverse()
        return self.scale(1 / as_fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- inspection ---------------------------------------------------------
    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.zero_exp, Fraction(0))

    def coefficient(self, powers: Mapping[str, int] | tuple) -> Fraction:
        exp = powers if isinstance(powers, tuple) else self.ring.exponent(powers)
        return self.terms.get(exp, Fraction(0))

    def is_constant(self) -> bool:
        return all(e == self.ring.zero_exp for e in self.terms)

    def max_weight(self, group: str) -> int:
        g = self.ring.group_names.index(group)
        return max((self.ring.weight(e)[g] for e in self.terms), default=-1)

    def homogeneous_part(self, group: str, w: int) -> "GradedPoly":
        g = self.ring.group_names.index(group)
        return GradedPoly(self.ring, {e: c for e, c in self.terms.items()
                                      if self.ring.weight(e)[g] == w}, _clean=True)

    def split(self, names: Iterable[str]) -> dict:
        """Group terms by their exponents in ``names``.

        Returns ``{exps_in_names: coefficient poly}`` where the coefficient polys
        no longer involve those generators.
        """
        idx = [self.ring.index(n) for n in names]
        out: dict[tuple, dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: GradedPoly(self.ring, v, _clean=True) for k, v in out.items()}

    def coefficient_of(self, powers: Mapping[str, int], names: Iterable[str]) -> "GradedPoly":
        """Coefficient of the monomial ``powers`` regarded as a poly in ``names`` only."""
        names = list(names)
        key = tuple(powers.get(n, 0) for n in names)
        return self.split(names).get(key, self.ring.zero())

    def items(self):
        """Terms in canonical (graded-lexicographic) order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.items():
            factors = [format_rational(c)]
            for name, e in zip(self.ring.names, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"GradedPoly({self})"

    # -- calculus -----------------------------------------------------------
    def diff(self, name: str, times: int = 1) -> "GradedPoly":
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k < times:
                continue
            f = 1
            for j in range(times):
                f *= k - j
            ne = e[:i] + (k - times,) + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * f
        return GradedPoly(self.ring, out, _clean=True)

    def substitute(self, assignment: Mapping[str, object], ring: Ring | None = None) -> "GradedPoly":
        return substitute(self, assignment, ring)

    def to_ring(self, ring: Ring) -> "GradedPoly":
        """Re-embed into ``ring`` by generator name (re-truncating).

        Generators missing from ``ring`` are allowed only if no term uses them.
        """
        used = {i for e in self.terms for i, k in enumerate(e) if k}
        idx = [ring.index(n) if i in used else (ring._index.get(n, -1))
               for i, n in enumerate(self.ring.names)]
        out = {}
        width = len(ring.names)
        for e, c in self.terms.items():
            ne = [0] * width
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] = k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return GradedPoly(ring, out)

    def exp(self) -> "GradedPoly":
        return exp_truncated(self)

    def inverse(self) -> "GradedPoly":
        c0 = self.constant_term()
        if not c0:
            raise DomainError("series with zero constant term is not invertible")
        b = (self - c0).scale(1 / c0)
        _require_nilpotent(b)
        result = self.ring.one()
        power = self.ring.one()
        while True:
            power = power * (-b)
            if not power:
                break
            result = result + power
        return result.scale(1 / c0)

    def log1p(self) -> "GradedPoly":
        """log(1 + self) for nilpotent self."""
        _require_nilpotent(self)
        result = self.ring.zero()
        power = self.ring.one()
        k = 1
        while True:
            power = power * self
            if not power:
                break
            result = result + power.scale(Fraction((-1) ** (k + 1), k))
            k += 1
        return result


def _require_nilpotent(a: GradedPoly) -> None:
    ring = a.ring
    for e in a.terms:
        w = ring.weight(e)
        if not any(w[i] > 0 for i in ring._bounded):
            raise DomainError(
                "term has zero weight in every truncated group; the series would not terminate")


def ring_multiply(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    if a.ring != b.ring:
        raise StructureError("operands live in different rings")
    ring = a.ring
    if not a.terms or not b.terms:
        return ring.zero()
    bounded = ring._bounded
    bounds = ring.bounds
    wa = [(e, c, ring.weight(e)) for e, c in a.terms.items()]
    wb = [(e, c, ring.weight(e)) for e, c in b.terms.items()]
    out: dict = {}
    get = out.get
    for ea, ca, va in wa:
        for eb, cb, vb in wb:
            ok = True
            for g in bounded:
                if va[g] + vb[g] > bounds[g]:
                    ok = False
                    break
            if not ok:
                continue
            e = tuple(map(add, ea, eb))
            out[e] = get(e, 0) + ca * cb
    return GradedPoly(ring, {e: c for e, c in out.items() if c}, _clean=True)


def exp_truncated(a: GradedPoly) -> GradedPoly:
    """exp(a) summed until every further power vanishes under truncation."""
    if a.constant_term():
        raise DomainError("exp_truncated needs a zero constant term")
    _require_nilpotent(a)
    result = a.ring.one()
    power = a.ring.one()
    k = 0
    while True:
        k += 1
        power = (power * a).scale(Fraction(1, k))
        if not power:
            return result
        result = result + power


def diff(a: GradedPoly, gen: str) -> GradedPoly:
    return a.diff(gen)


def substitute(a: GradedPoly, assignment: Mapping[str, object], ring: Ring | None = None) -> GradedPoly:
    """Replace generators by polys (in ``ring``) or scalars; others map by name."""
    target = ring or a.ring
    for name in assignment:
        a.ring.index(name)
    images = []
    for name in a.ring.names:
        if name in assignment:
            v = assignment[name]
            if isinstance(v, GradedPoly):
                if v.ring != target:
                    raise StructureError(f"value for {name} lives in a different ring")
                images.append(v)
            else:
                images.append(target.const(v))
        else:
            images.append(target.gen(name))
    powers: dict[tuple[int, int], GradedPoly] = {}

    def power(i, k):
        key = (i, k)
        p = powers.get(key)
        if p is None:
            p = images[i] if k == 1 else power(i, k - 1) * images[i]
            powers[key] = p
        return p

    result = target.zero()
    acc: dict = {}
    for e, c in a.terms.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
                if not term:
                    break
        for te, tc in term.terms.items():
            acc[te] = acc.get(te, 0) + tc
    result = GradedPoly(target, {e: c for e, c in acc.items() if c}, _clean=True)
    return result


class LaurentZ:
    """Laurent polynomial in an auxiliary variable z with GradedPoly coefficients.

    Terms are kept only for exponents inside the clip window ``[zmin, zmax]``.
    ``lo``/``hi`` record where the stored coefficients stop being exact:
    ``None`` means nothing was ever dropped on that side.
    """

    __slots__ = ("ring", "coeffs", "lo", "hi", "zmin", "zmax")

    def __init__(self, ring: Ring, coeffs: Mapping[int, GradedPoly], zmin: int = -16,
                 zmax: int = 16, lo: int | None = None, hi: int | None = None):
        self.ring = ring
        self.zmin, self.zmax = zmin, zmax
        kept = {}
        for k, v in coeffs.items():
            if not v.terms:
                continue
            if k > zmax:
                hi = zmax if hi is None else min(hi, zmax)
            elif k < zmin:
                lo = zmin if lo is None else max(lo, zmin)
            else:
                kept[k] = v
        self.coeffs = kept
        self.lo, self.hi = lo, hi

    @classmethod
    def from_poly(cls, poly: GradedPoly, zname: str, ring: Ring, sign: int = 1,
                  zmin: int = -16, zmax: int = 16) -> "LaurentZ":
        """Read the exponent e of ``zname`` in ``poly`` as the power z**(sign*e)."""
        parts = poly.split([zname])
        coeffs = {sign * e: c.to_ring(ring) for (e,), c in parts.items()}
        return cls(ring, coeffs, zmin, zmax)

    def support(self):
        return (min(self.coeffs), max(self.coeffs)) if self.coeffs else (0, 0)

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            return LaurentZ(self.ring, {k: v * other for k, v in self.coeffs.items()},
                            self.zmin, self.zmax, self.lo, self.hi)
        if not isinstance(other, LaurentZ):
            return LaurentZ(self.ring, {k: v.scale(other) for k, v in self.coeffs.items()},
                            self.zmin, self.zmax, self.lo, self.hi)
        if other.ring != self.ring:
            raise StructureError("operands live in different rings")
        if (self.hi is not None and other.lo is not None) or (self.lo is not None and other.hi is not None):
            raise DomainError("product of Laurent series truncated on opposite sides is undefined")
        amin, amax = self.support()
        bmin, bmax = other.support()
        his = [h for h in (self.hi is not None and self.hi + bmin, other.hi is not None and other.hi + amin)
               if h is not False]
        los = [l for l in (self.lo is not None and self.lo + bmax, other.lo is not None and other.lo + amax)
               if l is not False]
        hi = min(his) if his else None
        lo = max(los) if los else None
        zmin, zmax = max(self.zmin, other.zmin), min(self.zmax, other.zmax)
        out: dict[int, GradedPoly] = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                k = i + j
                if zmin <= k <= zmax:
                    prod = x * y
                    if prod.terms:
                        out[k] = out[k] + prod if k in out else prod
                elif k > zmax:
                    hi = zmax if hi is None else min(hi, zmax)
                else:
                    lo = zmin if lo is None else max(lo, zmin)
        return LaurentZ(self.ring, out, zmin, zmax, lo, hi)

    __rmul__ = __mul__

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        lo = max((x for x in (self.lo, other.lo) if x is not None), default=None)
        hi = min((x for x in (self.hi, other.hi) if x is not None), default=None)
        return LaurentZ(self.ring, out, max(self.zmin, other.zmin), min(self.zmax, other.zmax), lo, hi)

    def shift(self, k: int) -> "LaurentZ":
        """Multiply by z**k."""
        return LaurentZ(self.ring, {e + k: v for e, v in self.coeffs.items()},
                        self.zmin + k, self.zmax + k,
                        None if self.lo is None else self.lo + k,
                        None if self.hi is None else self.hi + k)

    def coefficient(self, k: int) -> GradedPoly:
        if (self.lo is not None and k < self.lo) or (self.hi is not None and k > self.hi) \
                or not self.zmin <= k <= self.zmax:
            raise DomainError(f"z^{k} lies outside the exactly retained z-range")
        return self.coeffs.get(k, self.ring.zero())

    def dz(self) -> "LaurentZ":
        return LaurentZ(self.ring, {k - 1: v.scale(k) for k, v in self.coeffs.items() if k},
                        self.zmin - 1, self.zmax - 1,
                        None if self.lo is None else self.lo - 1,
                        None if self.hi is None else self.hi - 1)


def residue_z(a: LaurentZ) -> GradedPoly:
    """Coefficient of z^-1."""
    return a.coefficient(-1)


def shift_by_z(poly: GradedPoly, names: list[str], sign: int, ring: Ring | None = None,
               zmin: int = -16, zmax: int = 16) -> LaurentZ:
    """poly with ``names[k-1]`` replaced by ``names[k-1] + sign*z^(-k)``.

    ``poly`` must not involve other generators from a different family; the
    expansion is exact (each monomial yields finitely many z-powers).
    """
    idx = [poly.ring.index(n) for n in names]
    out: dict[int, dict] = {}
    for e, c in poly.terms.items():
        partial = [(0, list(e), c)]
        for k, i in enumerate(idx, start=1):
            m = e[i]
            if not m:
                continue
            nxt = []
            for zpow, ex, cc in partial:
                for j in range(m + 1):
                    ne = list(ex)
                    ne[i] = m - j
                    nxt.append((zpow - k * j, ne, cc * comb(m, j) * (sign ** j)))
            partial = nxt
        for zpow, ex, cc in partial:
            bucket = out.setdefault(zpow, {})
            t = tuple(ex)
            bucket[t] = bucket.get(t, 0) + cc
    ring = ring or poly.ring
    coeffs = {}
    for zpow, terms in out.items():
        c = GradedPoly(poly.ring, {e: v for e, v in terms.items() if v})
        coeffs[zpow] = c if poly.ring == ring else c.to_ring(ring)
    return LaurentZ(ring, coeffs, zmin, zmax)
