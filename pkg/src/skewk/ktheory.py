"""K-groups of finite fields, l-adic completion and the prime-to-l stability check.

Quillen: K_0(F_q) = Z, K_{2j-1}(F_q) = Z/(q^j - 1), K_{2j}(F_q) = 0 for j > 0.
Completing at l keeps the rank (as copies of Z_l) and the l-primary torsion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidDegree
from .ff import l_valuation
from .skewring import _check_pair, tower_level


def _invariant_factors(orders) -> tuple[int, ...]:
    fs = [int(m) for m in orders if int(m) > 1]
    changed = True
    while changed:
        changed = False
        fs.sort()
        for i in range(len(fs)):
            for j in range(i + 1, len(fs)):
                a, b = fs[i], fs[j]
                if b % a:
                    g = math.gcd(a, b)
                    fs[i], fs[j] = g, a // g * b
                    changed = True
        fs = [m for m in fs if m > 1]
    return tuple(sorted(fs))


@dataclass(frozen=True)
class FgAbGroup:
    """Z^rank + Z/t_1 + ... with t_1 | t_2 | ...; any cyclic orders are normalised."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        object.__setattr__(self, "torsion", _invariant_factors(self.torsion))

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup(self.rank + other.rank, self.torsion + other.torsion)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class LComplGroup:
    """Z_l^zl_rank + Z/l^a_1 + ..., torsion kept as sorted l-power orders."""

    ell: int
    zl_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        ts = tuple(sorted(int(t) for t in self.torsion if int(t) > 1))
        for t in ts:
            if self.ell ** l_valuation(t, self.ell) != t:
                raise ValueError(f"{t} is not a power of {self.ell}")
        object.__setattr__(self, "torsion", ts)

    def __add__(self, other: "LComplGroup") -> "LComplGroup":
        if other.ell != self.ell:
            raise ValueError("completions at different primes")
        return LComplGroup(self.ell, self.zl_rank + other.zl_rank, self.torsion + other.torsion)

    def is_zero(self) -> bool:
        return self.zl_rank == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"zl_rank": self.zl_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion] + [f"Z_{self.ell}"] * self.zl_rank
        return " + ".join(parts) if parts else "0"


def k_finite_field(q: int, n: int) -> FgAbGroup:
    if n < 0:
        raise InvalidDegree(f"K-group degree must be >= 0, got {n}")
    if n == 0:
        return FgAbGroup(1)
    if n % 2 == 0:
        return FgAbGroup()
    j = (n + 1) // 2
    return FgAbGroup(0, (q ** j - 1,))


def l_complete(g: FgAbGroup, ell: int) -> LComplGroup:
    return LComplGroup(ell, g.rank, tuple(ell ** l_valuation(t, ell) for t in g.torsion))


@dataclass(frozen=True)
class StabilityReport:
    p: int
    ell: int
    j_max: int
    m_max: int
    flagged: tuple[tuple[int, int, int, int], ...]  # (j, m, v(p^mj - 1), v(p^j - 1))

    @property
    def clean(self) -> bool:
        return not self.flagged

    def pairs(self) -> list[tuple[int, int]]:
        return [(j, m) for j, m, _, _ in self.flagged]


def stability_check(p: int, ell: int, j_max: int, m_max: int) -> StabilityReport:
    """Where does a degree-m extension (gcd(m, l) = 1) change v_l of K_{2j-1}?"""
    _check_pair(p, ell)
    flagged = []
    for j in range(1, j_max + 1):
        base = l_valuation(p ** j - 1, ell)
        for m in range(1, m_max + 1):
            if math.gcd(m, ell) != 1:
                continue
            v = l_valuation(p ** (m * j) - 1, ell)
            if v != base:
                flagged.append((j, m, v, base))
    return StabilityReport(p, ell, j_max, m_max, tuple(flagged))


@dataclass(frozen=True)
class KRepGroups:
    k0_rank: int
    coefficient: FgAbGroup
    q: int
    stability: StabilityReport
    warnings: tuple[str, ...] = field(default=())

    def tensor_description(self) -> str:
        return f"K_n = Z^{self.k0_rank} (x) {self.coefficient}"


def approximant_q(p: int, ell: int) -> int:
    """q = p^m, m the prime-to-l part of ord_l(p) (the same for every tower level)."""
    return p ** tower_level(p, ell, 1).approximant_degree


def k_rep_groups(p: int, ell: int, n: int, i_max: int) -> KRepGroups:
    """Truncated K_0 rank and coefficient group K_n of the finite approximant."""
    _check_pair(p, ell)
    lvl = tower_level(p, ell, i_max)
    m = lvl.approximant_degree
    q = p ** m
    rep = stability_check(p, ell, max(1, (n + 1) // 2), m)
    warns = tuple(f"v_{ell}(p^{mm * j} - 1) = {v} differs from v_{ell}(p^{j} - 1) = {b}"
                  for j, mm, v, b in rep.flagged)
    return KRepGroups(ell ** i_max, k_finite_field(q, n), q, rep, warns)


def k_F_completed(p: int, ell: int, n: int) -> LComplGroup:
    """pi_n of the completed K-theory of the tame-closure field: pi_n + pi_(n-1)."""
    _check_pair(p, ell)
    if n < 0:
        raise InvalidDegree(f"degree must be >= 0, got {n}")
    out = l_complete(k_finite_field(p, n), ell)
    if n >= 1:
        out = out + l_complete(k_finite_field(p, n - 1), ell)
    return out


