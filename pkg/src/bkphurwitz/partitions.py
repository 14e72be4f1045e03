"""Partitions: enumeration, conjugacy-class sizes, contents, Frobenius coordinates."""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .errors import DomainError


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Labels both irreducible representations of S_d and cycle types.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise DomainError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> "Partition":
        return cls(sorted((k for k, m in mult.items() for _ in range(m)), reverse=True))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def colength(self) -> int:
        return sum(self) - len(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    @property
    def kappa(self) -> int:
        """Length of the main diagonal."""
        return sum(1 for i, x in enumerate(self) if x > i)

    def is_hook(self) -> bool:
        return self.kappa == 1

    def cells(self):
        """(row, col), 1-based, row by row."""
        for i, x in enumerate(self, start=1):
            for j in range(1, x + 1):
                yield i, j

    def contents(self) -> list[int]:
        return [j - i for i, j in self.cells()]

    def hook_lengths(self) -> list[int]:
        conj = self.conjugate()
        return [self[i - 1] - j + conj[j - 1] - i + 1 for i, j in self.cells()]

    def z(self) -> int:
        return z_of(self)

    def class_size(self) -> int:
        return class_size(self)

    def frobenius(self) -> "FrobeniusCoords":
        return frobenius(self)

    def dominates(self, other: "Partition") -> bool:
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "[" + ",".join(map(str, self)) + "]"

    def exponent_notation(self) -> str:
        m = self.multiplicities()
        return " ".join(f"{k}^{m[k]}" for k in sorted(m))


@dataclass(frozen=True)
class FrobeniusCoords:
    alphas: tuple[int, ...]
    betas: tuple[int, ...]

    @property
    def kappa(self) -> int:
        return len(self.alphas)

    def to_partition(self) -> Partition:
        return from_frobenius(self.alphas, self.betas)


def frobenius(lam: Partition) -> FrobeniusCoords:
    lam = Partition(lam)
    conj = lam.conjugate()
    k = lam.kappa
    return FrobeniusCoords(tuple(lam[i] - i - 1 for i in range(k)),
                           tuple(conj[i] - i - 1 for i in range(k)))


def from_frobenius(alphas, betas) -> Partition:
    alphas, betas = tuple(alphas), tuple(betas)
    if len(alphas) != len(betas):
        raise DomainError("Frobenius coordinates need equal lengths")
    for seq in (alphas, betas):
        if any(x < 0 for x in seq) or any(seq[i] <= seq[i + 1] for i in range(len(seq) - 1)):
            raise DomainError("Frobenius coordinates must be strictly decreasing and nonnegative")
    k = len(alphas)
    if k == 0:
        return Partition()
    rows = [alphas[i] + i + 1 for i in range(k)]
    # rows below the diagonal block come from the column lengths betas
    cols = [betas[j] + j + 1 for j in range(k)]
    nrows = cols[0]
    for r in range(k, nrows):
        rows.append(sum(1 for c in cols if c > r))
    return Partition(rows)


@lru_cache(maxsize=None)
def partitions_of(d: int, max_length: int | None = None) -> tuple[Partition, ...]:
    """All partitions of d, in reverse lexicographic order ((d) first, (1^d) last)."""
    if d < 0:
        raise DomainError("d must be nonnegative")
    out = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            out.append(Partition(acc))
            return
        if max_length is not None and len(acc) >= max_length:
            return
        for k in range(min(rem, maxpart), 0, -1):
            acc.append(k)
            rec(rem - k, k, acc)
            acc.pop()

    rec(d, d, [])
    return tuple(out)


def partitions_up_to(d: int, max_length: int | None = None):
    for k in range(d + 1):
        yield from partitions_of(k, max_length)


def z_of(delta) -> int:
    return prod(i ** m * factorial(m) for i, m in Counter(delta).items())


def class_size(delta) -> int:
    return factorial(sum(delta)) // z_of(delta)


def gamma(d: int) -> Partition:
    """The simple-branching profile (2,1^(d-2)); (d) itself when d <= 1."""
    if d <= 1:
        return Partition([d] if d else [])
    return Partition([2] + [1] * (d - 2))


def cycle(d: int) -> Partition:
    return Partition([d] if d else [])


def ones(d: int) -> Partition:
    return Partition([1] * d)


_EXP_TOKEN = re.compile(r"^(\d+)\^(\d+)$")


def parse_partition(text: str) -> Partition:
    """Accept "[3,2,1]", "3,2,1", "1^1 2^1 3^1" or "" (empty partition)."""
    s = text.strip()
    if s in ("", "[]", "()"):
        return Partition()
    if "^" in s:
        mult: dict[int, int] = {}
        for tok in s.replace(",", " ").split():
            m = _EXP_TOKEN.match(tok)
            if not m:
                raise DomainError(f"cannot parse partition token {tok!r}")
            k, e = int(m.group(1)), int(m.group(2))
            mult[k] = mult.get(k, 0) + e
        return Partition.from_multiplicities({k: e for k, e in mult.items() if e})
    if s[0] in "[(":
        try:
            parts = json.loads("[" + s[1:-1] + "]")
        except ValueError:
            raise DomainError(f"cannot parse partition {text!r}") from None
    else:
        try:
            parts = [int(x) for x in s.replace(" ", ",").split(",") if x]
        except ValueError:
            raise DomainError(f"cannot parse partition {text!r}") from None
    return Partition(sorted(parts, reverse=True))
