"""Hurwitz numbers of closed surfaces, orientable or not.

Values come from the character formula
``H^{E,F}(d; D1..DF) = sum_lam (dim lam/d!)^E prod_i phi_lam(Di)``; a
brute-force count of monodromy homomorphisms in S_d serves as the independent
oracle.  Weighted sums of Hurwitz numbers (by content power sums, Jack,
Macdonald, quantum contents, ...) live at the bottom of the module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .characters import chi_sum, dim, phi
from .contentprod import Phi_m, T_lambda, phi_k, ramification_weight, schur_at_qt
from .core import GradedPoly, Ring, as_fraction, exp_truncated
from .errors import ConsistencyError, DomainError
from .partitions import Partition, class_size, cycle, gamma, partitions_of, z_of
from .symfun import jack_Q, macdonald_Q


@dataclass(frozen=True)
class HurwitzQuery:
    euler: int
    degree: int
    profiles: tuple = ()

    def __post_init__(self):
        if self.degree < 0:
            raise DomainError("degree must be nonnegative")
        profs = tuple(Partition(p) for p in self.profiles)
        for i, p in enumerate(profs):
            if p.weight != self.degree:
                raise DomainError(f"profile #{i + 1} {p} has weight {p.weight}, expected {self.degree}")
        object.__setattr__(self, "profiles", profs)

    @property
    def euler_cover(self) -> int:
        return euler_cover(self.euler, self.degree, self.profiles)


def euler_cover(E: int, d: int, profiles) -> int:
    """Riemann-Hurwitz: E' = dE - sum of colengths."""
    return d * E - sum(Partition(p).colength for p in profiles)


def _query(E, d, profiles) -> HurwitzQuery:
    return HurwitzQuery(E, d, tuple(profiles))


def hurwitz_character(E: int, d: int, profiles=()) -> Fraction:
    q = _query(E, d, profiles)
    total = Fraction(0)
    for lam in partitions_of(q.degree):
        term = Fraction(dim(lam), factorial(q.degree)) ** q.euler
        for p in q.profiles:
            term *= phi(lam, p)
            if not term:
                break
        total += term
    return total


# -- monodromy oracle --------------------------------------------------------------

MAX_ITERATIONS = 10 ** 9


def _compose(a: tuple, b: tuple) -> tuple:
    return tuple(a[i] for i in b)


def _inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def cycle_type(perm: tuple) -> Partition:
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if not seen[i]:
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            parts.append(n)
    return Partition(sorted(parts, reverse=True))


@lru_cache(maxsize=None)
def symmetric_group(d: int) -> tuple:
    return tuple(permutations(range(d)))


@lru_cache(maxsize=None)
def class_members(delta) -> tuple:
    delta = Partition(delta)
    return tuple(g for g in symmetric_group(delta.weight) if cycle_type(g) == delta)


def _surface(E: int, surface: str | None) -> tuple[str, int]:
    """(kind, number of handles or cross-caps) of the closed surface with Euler char E."""
    if surface is None:
        surface = "nonorientable" if E % 2 else {2: "orientable"}.get(E)
        if surface is None:
            raise DomainError(f"E={E} needs an explicit surface type (orientable/nonorientable)")
    aliases = {"sphere": "orientable", "torus": "orientable", "klein": "nonorientable",
               "projective": "nonorientable"}
    surface = aliases.get(surface, surface)
    if surface == "orientable":
        if E > 2 or E % 2:
            raise DomainError(f"no closed orientable surface has Euler characteristic {E}")
        return surface, (2 - E) // 2
    if surface == "nonorientable":
        if E > 1:
            raise DomainError(f"no closed non-orientable surface has Euler characteristic {E}")
        return surface, 2 - E
    raise DomainError(f"unknown surface type {surface!r}")


def _free_word_distribution(d: int, kind: str, count: int) -> dict:
    """{cycle type: number of ways one fixed element of that type arises} for the
    surface word prod [A_i,B_i] or prod R_i^2.  The count only depends on the
    class because the word is conjugation invariant."""
    dist = {cycle_type(tuple(range(d))): 1}
    if not count:
        return dist
    group = symmetric_group(d)
    block: dict = {}
    if kind == "orientable":
        for a in group:
            ai = _inverse(a)
            for b in group:
                c = _compose(_compose(a, b), _compose(ai, _inverse(b)))
                block[c] = block.get(c, 0) + 1
    else:
        for r in group:
            s = _compose(r, r)
            block[s] = block.get(s, 0) + 1
    for _ in range(count):
        dist = _convolve(d, dist, block.items())
    return dist


def _convolve(d: int, dist: dict, factor) -> dict:
    """Class function g -> sum_x dist(g x^{-1}) factor(x), evaluated on one
    representative per class."""
    factor = list(factor)
    out = {}
    for lam in partitions_of(d):
        g = class_members(lam)[0]
        total = 0
        for x, k in factor:
            m = dist.get(cycle_type(_compose(g, _inverse(x))))
            if m:
                total += m * k
        if total:
            out[lam] = total
    return out


def oracle_cost(E: int, d: int, profiles=(), surface: str | None = None,
                transitive: bool = False) -> int:
    """Estimated number of elementary group multiplications."""
    kind, count = _surface(E, surface)
    n = factorial(d)
    profiles = [Partition(p) for p in profiles]
    if transitive:
        free = count * (2 if kind == "orientable" else 1)
        cost = n ** free
        for p in profiles[:-1]:
            cost *= class_size(p)
        return cost
    block = (n * n if kind == "orientable" else n) if count else 0
    classes = len(partitions_of(d))
    cost = block + count * classes * block
    cost += sum(classes * class_size(p) for p in profiles)
    return cost


def _is_transitive(d: int, gens) -> bool:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, j in enumerate(g):
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(d)}) <= 1


def monodromy_count(E: int, d: int, profiles=(), surface: str | None = None,
                    transitive: bool = False, max_iterations: int = MAX_ITERATIONS,
                    torus_max_degree: int | None = 4) -> int:
    """Number of solutions of W X_1 ... X_F = 1 with X_i in C_{D_i}; W is the surface word."""
    q = _query(E, d, profiles)
    kind, count = _surface(E, surface)
    if kind == "orientable" and count >= 1 and torus_max_degree is not None and d > torus_max_degree:
        raise DomainError(f"orientable genus >= 1 oracle is capped at d <= {torus_max_degree}")
    cost = oracle_cost(E, d, q.profiles, surface, transitive)
    if cost > max_iterations:
        raise DomainError(f"oracle refused: estimated {cost} iterations exceeds {max_iterations}")
    if transitive:
        return _count_transitive(d, kind, count, q.profiles)
    dist = _free_word_distribution(d, kind, count)
    profs = list(q.profiles)
    if not profs:
        return dist.get(cycle_type(tuple(range(d))), 0)
    for p in profs[:-1]:
        # W X_1 ... X_i = g  <=>  W X_1 ... X_{i-1} = g X_i^{-1}
        dist = _convolve(d, dist, ((x, 1) for x in class_members(p)))
    # the final X is forced to be the inverse of the partial product
    last = profs[-1]
    return class_size(last) * dist.get(last, 0)


def _count_transitive(d: int, kind: str, count: int, profiles) -> int:
    group = symmetric_group(d)
    e = tuple(range(d))
    nfree = count * (2 if kind == "orientable" else 1)
    total = 0
    head = [class_members(p) for p in profiles[:-1]]
    last = profiles[-1] if profiles else None
    for free in product(group, repeat=nfree):
        w = e
        if kind == "orientable":
            for i in range(count):
                a, b = free[2 * i], free[2 * i + 1]
                w = _compose(w, _compose(_compose(a, b), _compose(_inverse(a), _inverse(b))))
        else:
            for r in free:
                w = _compose(w, _compose(r, r))
        for xs in product(*head):
            g = w
            for x in xs:
                g = _compose(g, x)
            if last is None:
                if g != e:
                    continue
                gens = list(free) + list(xs)
            else:
                xf = _inverse(g)
                if cycle_type(xf) != last:
                    continue
                gens = list(free) + list(xs) + [xf]
            if _is_transitive(d, gens):
                total += 1
    return total


def monodromy_oracle(E: int, d: int, profiles=(), surface: str | None = None,
                     transitive: bool = False, max_iterations: int = MAX_ITERATIONS,
                     torus_max_degree: int | None = 4) -> Fraction:
    """Brute-force Hurwitz number: solution count divided by d!."""
    n = monodromy_count(E, d, profiles, surface, transitive, max_iterations, torus_max_degree)
    return Fraction(n, factorial(d))


# -- generating functions and gluing ----------------------------------------------------

def unbranched_gf(max_d: int) -> GradedPoly:
    """exp(c^2/2 + c) through c^max_d; each coefficient is checked against H^{1,0}(d)."""
    ring = Ring([("c", "c", 1)], {"c": max_d})
    c = ring.gen("c")
    series = exp_truncated(c * c * Fraction(1, 2) + c)
    for d in range(max_d + 1):
        got = series.coefficient({"c": d})
        want = hurwitz_character(1, d)
        if got != want:
            raise ConsistencyError(f"c^{d}: generating function {got} != H^(1,0)({d}) = {want}")
    return series


def single_branch_series(max_d: int) -> GradedPoly:
    """exp(u^2 sum p_m^2/2m + u sum_{m odd} p_m/m), u standing for 1/h; p_m carries degree m."""
    ring = Ring.power_sums(max_d, extra=[("u", "u", 1)])
    u = ring.gen("u")
    expo = ring.zero()
    for m in range(1, max_d + 1):
        pm = ring.gen(f"p{m}")
        expo = expo + (pm * pm * u * u).scale(Fraction(1, 2 * m))
        if m % 2:
            expo = expo + (pm * u).scale(Fraction(1, m))
    return exp_truncated(expo)


def check_single_branch(max_d: int) -> dict:
    """Every coefficient of p_delta sits at u^{len(delta)} and equals H^{1,1}(d; delta)."""
    series = single_branch_series(max_d)
    out = {}
    for d in range(1, max_d + 1):
        for delta in partitions_of(d):
            powers = {}
            for part in delta:
                powers[f"p{part}"] = powers.get(f"p{part}", 0) + 1
            coeff = series.coefficient_of(powers, [f"p{m}" for m in range(1, max_d + 1)])
            want = hurwitz_character(1, d, [delta])
            expected = coeff.ring.monomial({"u": delta.length}, want) if want else coeff.ring.zero()
            if coeff != expected:
                raise ConsistencyError(f"single branch point, {delta}: {coeff} != {want} u^{delta.length}")
            out[delta] = want
    return out


def compose(E: int, E1: int, d: int, left=(), right=(), check: bool = True) -> Fraction:
    """Glue along one profile: sum_D (d!/|C_D|) H^{E+1}(left, D) H^{E1+1}(D, right)."""
    left, right = list(left), list(right)
    total = Fraction(0)
    for delta in partitions_of(d):
        a = hurwitz_character(E + 1, d, left + [delta])
        if not a:
            continue
        total += z_of(delta) * a * hurwitz_character(E1 + 1, d, [delta] + right)
    if check:
        direct = hurwitz_character(E + E1, d, left + right)
        if direct != total:
            raise ConsistencyError(f"gluing gives {total}, character formula {direct}")
    return total


def lower_euler(E: int, d: int, profiles=(), check: bool = True) -> Fraction:
    """H^{E-1}(profiles) = sum_D H^{E}(profiles, D) chi(D), chi from the heat operator too."""
    profiles = list(profiles)
    total = Fraction(0)
    for delta in partitions_of(d):
        c = chi_sum(delta)
        if c:
            total += hurwitz_character(E, d, profiles + [delta]) * c
    if check:
        direct = hurwitz_character(E - 1, d, profiles)
        if direct != total:
            raise ConsistencyError(f"sum over chi gives {total}, character formula {direct}")
    return total


def d_cycle_reduction(E: int, d: int, profiles, g: int) -> tuple[Fraction, Fraction]:
    """H^{E-2g}(..., (d)) against d^{2g} H^E(..., (d) x (2g+1)); returns both sides."""
    q = _query(E, d, profiles)
    if g < 1:
        raise DomainError("g must be a positive integer")
    if cycle(d) not in q.profiles:
        raise DomainError(f"one profile must be the full cycle ({d})")
    lhs = hurwitz_character(E - 2 * g, d, q.profiles)
    rhs = d ** (2 * g) * hurwitz_character(E, d, list(q.profiles) + [cycle(d)] * (2 * g))
    if lhs != rhs:
        raise ConsistencyError(f"d-cycle reduction: {lhs} != {rhs}")
    return lhs, rhs


# -- weighted sums ----------------------------------------------------------------------

FAMILIES = ("C", "J", "S", "K", "M", "F")


@dataclass(frozen=True)
class WeightedSumSpec:
    family: str
    mu: Partition = Partition()
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "mu", Partition(self.mu))
        need = {"J": ("alpha",), "K": ("t",), "M": ("q", "t"), "F": ("qt",)}.get(self.family, ())
        missing = [k for k in need if k not in self.params]
        if missing:
            raise DomainError(f"family {self.family} needs parameters {missing}")


def _character_weighted(d: int, delta, weight) -> Fraction:
    delta = Partition(delta)
    if delta.weight != d:
        raise DomainError(f"profile {delta} does not have weight {d}")
    total = Fraction(0)
    for lam in partitions_of(d):
        f = phi(lam, delta)
        if f:
            total += weight(lam) * f * Fraction(dim(lam), factorial(d))
    return total


def C_mu(mu, d: int, delta) -> Fraction:
    mu = Partition(mu)

    def weight(lam):
        out = Fraction(1)
        for m in mu:
            out *= Phi_m(lam, m)
        return out

    return _character_weighted(d, delta, weight)


def J_mu(mu, d: int, delta, alpha, t=None) -> Fraction:
    """Jack-weighted sum; Q is the dual of P under <p_D, p_D> = z_D alpha^len(D).

    With ``t`` given, Q is evaluated at the quantum-content power sums instead of Phi.
    """
    Q = jack_Q(mu, alpha)
    if t is None:
        return _character_weighted(d, delta, lambda lam: Q.evaluate(lambda m: Phi_m(lam, m)))
    return _character_weighted(d, delta, lambda lam: Q.evaluate(lambda m: T_lambda(lam, t, m)))


def S_mu(mu, d: int, delta) -> Fraction:
    mu = Partition(mu)

    def weight(lam):
        out = Fraction(1)
        for m in mu:
            out *= phi_k(lam, m)
        return out

    return _character_weighted(d, delta, weight)


def S_mu_via_hurwitz(mu, d: int, delta) -> Fraction:
    """Sum of H^{1,k+1}(D^1..D^k, delta) over profiles with colength(D^s) = mu_s."""
    mu = Partition(mu)
    pools = []
    for m in mu:
        pool = [p for p in partitions_of(d) if p.colength == m]
        if not pool:
            return Fraction(0)
        pools.append(pool)
    return sum((hurwitz_character(1, d, list(ps) + [delta]) for ps in product(*pools)), Fraction(0))


def K_mu(mu, d: int, delta, t) -> Fraction:
    mu = Partition(mu)

    def weight(lam):
        out = Fraction(1)
        for m in mu:
            out *= T_lambda(lam, t, m)
        return out

    return _character_weighted(d, delta, weight)


def M_mu(mu, d: int, delta, q, t) -> Fraction:
    Q = macdonald_Q(mu, q, t)
    return _character_weighted(d, delta, lambda lam: Q.evaluate(lambda m: T_lambda(lam, t, m)))


def _schur_ratio(lam, q, t) -> Fraction:
    """s_lam(p(q,t)) / s_lam(p_infinity)."""
    lam = Partition(lam)
    return schur_at_qt(lam, q, t) * factorial(lam.weight) / dim(lam)


def _schur_ratio_weights(lam, q, t) -> Fraction:
    """((1-q)/(1-t))^d (1 + sum_{D != 1^d} phi_lam(D) w(D,q,t))."""
    lam = Partition(lam)
    q, t = as_fraction(q), as_fraction(t)
    d = lam.weight
    acc = Fraction(1)
    for delta in partitions_of(d):
        if delta.colength:
            f = phi(lam, delta)
            if f:
                acc += f * ramification_weight(delta, q, t)
    return ((1 - q) / (1 - t)) ** d * acc


def F_sum(d: int, delta, qt=()) -> Fraction:
    """sum_lam phi_lam((d)) phi_lam(delta) (dim/d!) prod_s s_lam(p(q_s,t_s))/s_lam(p_inf).

    Computed twice: by specializing Schur functions and by ramification weights.
    """
    pairs = [(as_fraction(q), as_fraction(t)) for q, t in qt]
    for q, t in pairs:
        if t == 1 or q == 1:
            raise DomainError(f"(q,t)=({q},{t}) is a pole of the specialization")

    def by(ratio):
        def weight(lam):
            out = phi(lam, cycle(d))
            for q, t in pairs:
                if not out:
                    break
                out *= ratio(lam, q, t)
            return out
        return _character_weighted(d, delta, weight)

    a = by(_schur_ratio)
    b = by(_schur_ratio_weights)
    if a != b:
        raise ConsistencyError(f"F({d},{delta}): Schur route {a} != weight route {b}")
    return a


def weighted_sum(spec: WeightedSumSpec, d: int, delta) -> Fraction:
    p = spec.params
    if spec.family == "C":
        return C_mu(spec.mu, d, delta)
    if spec.family == "J":
        return J_mu(spec.mu, d, delta, p["alpha"], p.get("t"))
    if spec.family == "S":
        return S_mu(spec.mu, d, delta)
    if spec.family == "K":
        return K_mu(spec.mu, d, delta, p["t"])
    if spec.family == "M":
        return M_mu(spec.mu, d, delta, p["q"], p["t"])
    return F_sum(d, delta, p["qt"])


def c_1b2_expansion(b: int, d: int, delta) -> Fraction:
    """C_{(1^b 2)} through Hurwitz numbers, using Phi_2 = phi(G)^2 - 2 phi(2^2 1^{d-4}) - 2 phi(3 1^{d-3})."""
    if d < 2:
        raise DomainError("need d >= 2 for a simple branching profile")
    G = gamma(d)
    out = hurwitz_character(1, d, [G] * (b + 2) + [delta])
    for extra in ([2, 2], [3]):
        if sum(extra) <= d:
            prof = Partition(extra + [1] * (d - sum(extra)))
            out -= 2 * hurwitz_character(1, d, [G] * b + [prof, delta])
    return out
