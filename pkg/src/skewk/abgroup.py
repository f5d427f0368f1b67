"""Finite abelian groups in invariant-factor form, their characters and group rings.

An element of N = Z/m1 x ... x Z/mr is a tuple (a1, ..., ar) with 0 <= aj < mj
and m1 | m2 | ... | mr.  A character is also an exponent tuple c; it pairs
with a as  sum_j cj aj (e/mj)  mod e, where e = mr is the exponent of N.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import GroupMismatch, InvalidAutomorphism

GroupElem = tuple


@dataclass(frozen=True)
class AbGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        fs = tuple(int(m) for m in self.factors)
        if any(m < 2 for m in fs):
            raise ValueError(f"invariant factors must be >= 2: {fs}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisor chain: {fs}")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def from_orders(cls, orders) -> "AbGroup":
        """Normalise an arbitrary product of cyclic groups to invariant factors."""
        fs = [int(m) for m in orders if int(m) > 1]
        changed = True
        while changed:
            changed = False
            for i in range(len(fs)):
                for j in range(i + 1, len(fs)):
                    a, b = fs[i], fs[j]
                    if b % a:
                        fs[i], fs[j] = math.gcd(a, b), a * b // math.gcd(a, b)
                        changed = True
            fs = sorted(m for m in fs if m > 1)
        return cls(tuple(fs))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(m) for m in self.factors]))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.factors))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % m for x, m in zip(a, self.factors))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return tuple((k * x) % m for x, m in zip(a, self.factors))

    def order_of(self, a) -> int:
        o = 1
        for x, m in zip(a, self.factors):
            o = math.lcm(o, m // math.gcd(x, m))
        return o

    def index(self, a) -> int:
        i = 0
        for x, m in zip(a, self.factors):
            i = i * m + x
        return i

    def contains(self, a) -> bool:
        return len(a) == self.rank and all(0 <= x < m for x, m in zip(a, self.factors))

    def __str__(self):
        return " x ".join(f"Z/{m}" for m in self.factors) if self.factors else "1"


def _check_same(g: AbGroup, h: AbGroup):
    if g != h:
        raise GroupMismatch(f"{g} != {h}")


@dataclass(frozen=True)
class Automorphism:
    """theta(a)_j = sum_k M[j][k] a_k mod m_j; column k is the image of the k-th generator."""

    group: AbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = self.group
        r = G.rank
        M = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(M) != r or any(len(row) != r for row in M):
            raise InvalidAutomorphism(f"matrix must be {r}x{r}")
        M = tuple(tuple(x % G.factors[j] for x in row) for j, row in enumerate(M))
        object.__setattr__(self, "matrix", M)
        fs = G.factors
        for j in range(r):
            for k in range(r):
                if (M[j][k] * fs[k]) % fs[j]:
                    raise InvalidAutomorphism(
                        f"entry ({j},{k}) does not give a homomorphism of {G}")
        images = {self(a) for a in G.elements()}
        if len(images) != G.order:
            raise InvalidAutomorphism("map is not bijective")

    def __call__(self, a):
        if isinstance(a, Character):
            _check_same(self.group, a.group)
            return Character(a.group, self(a.exps))
        fs = self.group.factors
        return tuple(sum(row[k] * a[k] for k in range(len(a))) % fs[j]
                     for j, row in enumerate(self.matrix))

    @classmethod
    def identity(cls, group: AbGroup) -> "Automorphism":
        r = group.rank
        return cls(group, tuple(tuple(int(j == k) for k in range(r)) for j in range(r)))

    @classmethod
    def scalar(cls, group: AbGroup, u: int) -> "Automorphism":
        r = group.rank
        return cls(group, tuple(tuple(u * int(j == k) for k in range(r)) for j in range(r)))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        _check_same(self.group, other.group)
        r = self.group.rank
        A, B = self.matrix, other.matrix
        return Automorphism(self.group, tuple(
            tuple(sum(A[j][t] * B[t][k] for t in range(r)) for k in range(r)) for j in range(r)))

    def power(self, k: int) -> "Automorphism":
        if k < 0:
            return self.inverse().power(-k)
        out = Automorphism.identity(self.group)
        for _ in range(k):
            out = self.compose(out)
        return out

    def is_identity(self) -> bool:
        return self == Automorphism.identity(self.group)

    @cached_property
    def order(self) -> int:
        k, cur = 1, self
        while not cur.is_identity():
            cur = self.compose(cur)
            k += 1
        return k

    def inverse(self) -> "Automorphism":
        return self.power(self.order - 1)


@dataclass(frozen=True)
class Character:
    group: AbGroup
    exps: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(c) % m for c, m in zip(self.exps, self.group.factors))
        if len(e) != self.group.rank:
            raise ValueError("exponent tuple has wrong length")
        object.__setattr__(self, "exps", e)

    def pair(self, a) -> int:
        """chi(a) as an integer mod the exponent of N."""
        G = self.group
        e = G.exponent
        return sum(c * x * (e // m) for c, x, m in zip(self.exps, a, G.factors)) % e

    def __call__(self, a) -> Fraction:
        return Fraction(self.pair(a), self.group.exponent) % 1

    def __mul__(self, other: "Character") -> "Character":
        _check_same(self.group, other.group)
        return Character(self.group, self.group.add(self.exps, other.exps))

    def inverse(self) -> "Character":
        return Character(self.group, self.group.neg(self.exps))

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def __lt__(self, other):
        return self.exps < other.exps

    def __le__(self, other):
        return self.exps <= other.exps

    def __repr__(self):
        return "chi" + "".join(f"_{c}" for c in self.exps) if self.exps else "chi"


def characters(group: AbGroup) -> list[Character]:
    return [Character(group, c) for c in group.elements()]


def dual_automorphism(theta: Automorphism) -> Automorphism:
    """theta^vee with (theta^vee chi)(a) = chi(theta(a)), acting on exponent tuples."""
    G = theta.group
    fs = G.factors
    r = G.rank
    M = theta.matrix
    return Automorphism(G, tuple(
        tuple(M[j][k] * fs[k] // fs[j] for j in range(r)) for k in range(r)))


@dataclass(frozen=True)
class GroupRingElem:
    """A finitely supported map Character -> Z; zero coefficients are dropped."""

    group: AbGroup
    coeffs: tuple[tuple[tuple[int, ...], int], ...] = field(default=())

    def __post_init__(self):
        acc: Counter = Counter()
        for c, k in self.coeffs:
            acc[tuple(c)] += int(k)
        object.__setattr__(self, "coeffs", tuple(sorted((c, k) for c, k in acc.items() if k)))

    @classmethod
    def from_dict(cls, group: AbGroup, d) -> "GroupRingElem":
        items = []
        for c, k in dict(d).items():
            items.append((c.exps if isinstance(c, Character) else tuple(c), k))
        return cls(group, tuple(items))

    @classmethod
    def basis(cls, chi: Character) -> "GroupRingElem":
        return cls(chi.group, ((chi.exps, 1),))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.coeffs)

    def __getitem__(self, chi) -> int:
        key = chi.exps if isinstance(chi, Character) else tuple(chi)
        return self.as_dict().get(key, 0)

    def support(self) -> list[Character]:
        return [Character(self.group, c) for c, _ in self.coeffs]

    def __add__(self, other):
        return ring_add(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(self.group, tuple((c, k * other) for c, k in self.coeffs))
        return ring_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return ring_add(self, -other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for c, k in self.coeffs:
            name = repr(Character(self.group, c))
            parts.append(name if k == 1 else f"{k}*{name}")
        return " + ".join(parts)


def ring_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    _check_same(a.group, b.group)
    return GroupRingElem(a.group, a.coeffs + b.coeffs)


def ring_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    _check_same(a.group, b.group)
    G = a.group
    return GroupRingElem(G, tuple(
        (G.add(c1, c2), k1 * k2) for c1, k1 in a.coeffs for c2, k2 in b.coeffs))


def augment(a: GroupRingElem, ell: int) -> int:
    """Coefficient sum mod ell: the map Z[N^vee] -> F_ell."""
    return sum(k for _, k in a.coeffs) % ell
