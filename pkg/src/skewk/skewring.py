"""Skew group rings E<G> for G = N x| Delta over finite fields.

Here F = GF(p^f), E = GF(p^(f n)), Delta = <phi> is cyclic of order n acting
on E by the p^f-power map and on N by theta, so that phi a phi^-1 = theta(a).
Since F is finite its Brauer group vanishes, and the Wedderburn factors are
M(n, Z_i) with one factor per orbit of the twisted Galois action on N^vee
and [Z_i : F] equal to the orbit size.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .abgroup import (AbGroup, Automorphism, Character, GroupRingElem,
                      dual_automorphism, ring_mul)
from .errors import (DecompositionFailure, ElPrimeEqualsP, GroupMismatch,
                     IncompatibleAction, InvalidTwist, MaschkeViolated, NonPrime,
                     TowerHypothesisViolated, UnknownLabel)
from .ff import is_prime, l_valuation, mult_order

Label = tuple


@dataclass(frozen=True)
class SkewRingDesc:
    p: int
    f: int
    n: int
    N: AbGroup
    theta: Automorphism

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(f"p={self.p} is not prime")
        if self.f < 1 or self.n < 1:
            raise ValueError("f and n must be positive")
        if self.theta.group != self.N:
            raise GroupMismatch("theta is not an automorphism of N")
        if not self.theta.power(self.n).is_identity():
            raise IncompatibleAction(f"theta^{self.n} is not the identity")
        # Delta acts faithfully on E, so only |N| has to be a unit for
        # semisimplicity; p | n is allowed (the oracle checks those cases too)
        if self.N.order % self.p == 0:
            raise MaschkeViolated(f"p={self.p} divides |N|={self.N.order}")

    @classmethod
    def cyclic(cls, p, f, n, m, theta=1) -> "SkewRingDesc":
        N = AbGroup((m,)) if m > 1 else AbGroup(())
        th = Automorphism.scalar(N, theta) if m > 1 else Automorphism.identity(N)
        return cls(p, f, n, N, th)

    @property
    def tame(self) -> bool:
        """p does not divide |G| = |N| n."""
        return self.group_order % self.p != 0

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def group_order(self) -> int:
        return self.N.order * self.n

    @property
    def degree(self) -> int:
        """[E : F_p]."""
        return self.f * self.n

    @cached_property
    def _twist(self) -> Automorphism:
        return dual_automorphism(self.theta.inverse())

    def act(self, exps: tuple) -> tuple:
        return self.N.scale(self.q, self._twist(exps))

    def key(self) -> tuple:
        return (self.p, self.f, self.n, self.N.factors, self.theta.matrix)

    def as_dict(self) -> dict:
        return {"p": self.p, "f": self.f, "n": self.n, "N": list(self.N.factors),
                "theta": [list(r) for r in self.theta.matrix]}

    def __str__(self):
        th = ",".join("".join(str(x) for x in r) for r in self.theta.matrix) or "-"
        return f"p={self.p} f={self.f} n={self.n} N={list(self.N.factors)} theta={th}"


def gf_action(chi: Character, desc: SkewRingDesc) -> Character:
    """Frobenius of F acting on a character: exps -> q * (theta^-1)^vee exps."""
    if chi.group != desc.N:
        raise GroupMismatch("character is not a character of N")
    return Character(desc.N, desc.act(chi.exps))


@dataclass(frozen=True)
class Orbit:
    characters: tuple[Character, ...]

    @property
    def representative(self) -> Character:
        return self.characters[0]

    @property
    def label(self) -> Label:
        return self.representative.exps

    def __len__(self):
        return len(self.characters)

    def __contains__(self, chi):
        return chi in self.characters


def _orbits(N: AbGroup, act) -> list[Orbit]:
    seen = set()
    out = []
    for c in N.elements():
        if c in seen:
            continue
        orb = [c]
        seen.add(c)
        nxt = act(c)
        while nxt != c:
            orb.append(nxt)
            seen.add(nxt)
            nxt = act(nxt)
        out.append(Orbit(tuple(Character(N, x) for x in sorted(orb))))
    return out


def orbits(desc: SkewRingDesc) -> list[Orbit]:
    return _orbits(desc.N, desc.act)


@dataclass(frozen=True)
class WedderburnFactor:
    orbit: Orbit
    matrix_size: int
    center_degree: int
    multiplicity: int = 1

    @property
    def label(self) -> Label:
        return self.orbit.label


@dataclass(frozen=True)
class Decomposition:
    desc: SkewRingDesc
    factors: tuple[WedderburnFactor, ...]

    @property
    def orbits(self) -> list[Orbit]:
        return [fa.orbit for fa in self.factors]

    def dimension_check(self) -> bool:
        lhs = sum(fa.matrix_size ** 2 * fa.center_degree for fa in self.factors)
        return lhs == self.desc.n * self.desc.group_order

    def factor(self, label) -> WedderburnFactor:
        for fa in self.factors:
            if fa.label == tuple(label):
                return fa
        raise UnknownLabel(f"no factor labelled {label}")


def decompose(desc: SkewRingDesc) -> Decomposition:
    facs = tuple(WedderburnFactor(o, desc.n, len(o), 1) for o in orbits(desc))
    dec = Decomposition(desc, facs)
    if not dec.dimension_check():
        raise DecompositionFailure("dimension identity fails")
    return dec


def orbit_sum(orbit: Orbit) -> GroupRingElem:
    N = orbit.representative.group
    return GroupRingElem(N, tuple((c.exps, 1) for c in orbit.characters))


def rho_simple(factor: WedderburnFactor) -> GroupRingElem:
    return orbit_sum(factor.orbit) * factor.multiplicity


def _as_multiset(module) -> Counter:
    if isinstance(module, tuple) and all(isinstance(x, int) for x in module):
        return Counter({module: 1})
    if isinstance(module, (Counter, dict)):
        return Counter({tuple(k): v for k, v in module.items()})
    return Counter(tuple(x) for x in module)


def _orbit_list(dec) -> list[Orbit]:
    return list(dec.orbits)


class _OrbitIndex:
    def __init__(self, dec):
        orbs = _orbit_list(dec)
        self.group = orbs[0].representative.group
        self.by_label = {o.label: o for o in orbs}
        self.of_char = {c.exps: o for o in orbs for c in o.characters}

    def rho(self, module) -> GroupRingElem:
        acc: Counter = Counter()
        for lab, k in _as_multiset(module).items():
            if lab not in self.by_label:
                raise UnknownLabel(f"no simple module labelled {lab}")
            for c in self.by_label[lab].characters:
                acc[c.exps] += k
        return GroupRingElem(self.group, tuple(acc.items()))

    def express(self, x: GroupRingElem) -> dict[Label, int]:
        out = {}
        rem = Counter(x.as_dict())
        for c in sorted(rem):
            k = rem[c]
            o = self.of_char[c]
            if not k or o.label in out:
                continue
            out[o.label] = k
            for d in o.characters:
                rem[d.exps] -= k
        rem = GroupRingElem(x.group, tuple(rem.items()))
        if not rem.is_zero():
            raise DecompositionFailure(f"residue {rem} after decomposition")
        return dict(sorted(out.items()))


def rho(module, dec) -> GroupRingElem:
    """rho of a direct sum of simple modules given as a multiset of labels."""
    return _OrbitIndex(dec).rho(module)


def express(x: GroupRingElem, dec) -> dict[Label, int]:
    """Write x as a combination of orbit sums; fails on any residue."""
    return _OrbitIndex(dec).express(x)


def tensor_decompose(a, b, dec) -> dict[Label, int]:
    idx = _OrbitIndex(dec)
    return idx.express(ring_mul(idx.rho(a), idx.rho(b)))


@dataclass(frozen=True)
class K0Ring:
    basis: tuple[Label, ...]
    structure: dict = field(hash=False, compare=False)
    rho_images: dict = field(hash=False, compare=False)

    def product(self, a, b) -> dict[Label, int]:
        return dict(self.structure[(tuple(a), tuple(b))])

    @property
    def unit(self) -> Label:
        return self.basis[0]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_character_ring(self) -> bool:
        """True when the basis multiplies like the characters labelling it."""
        for (a, b), prod in self.structure.items():
            N = self.rho_images[a].group
            if prod != {N.add(a, b): 1}:
                return False
        return True


def _k0(dec) -> K0Ring:
    orbs = _orbit_list(dec)
    basis = tuple(o.label for o in orbs)
    images = {o.label: orbit_sum(o) for o in orbs}
    idx = _OrbitIndex(dec)
    structure = {}
    for i, a in enumerate(basis):
        for b in basis[i:]:
            prod = idx.express(ring_mul(images[a], images[b]))
            structure[(a, b)] = structure[(b, a)] = prod
    return K0Ring(basis, structure, images)


def k0_ring(desc: SkewRingDesc) -> K0Ring:
    return _k0(decompose(desc))


# the tower Z/l^i x| Z/l^i'

@dataclass(frozen=True)
class TowerLevel:
    p: int
    ell: int
    i: int
    i_prime: int
    order: int
    twist: int
    N: AbGroup

    @property
    def modulus(self) -> int:
        return self.ell ** self.i

    def act(self, exps: tuple) -> tuple:
        """Limit action c -> p * twist^-1 * c on exponents."""
        m = self.modulus
        u = pow(self.twist, -1, m)
        return ((self.p * u * exps[0]) % m,)

    @cached_property
    def orbits(self) -> list[Orbit]:
        return _orbits(self.N, self.act)

    def all_singletons(self) -> bool:
        return all(len(o) == 1 for o in self.orbits)

    @cached_property
    def k0(self) -> K0Ring:
        return _k0(self)

    @property
    def approximant_degree(self) -> int:
        """Prime-to-ell part of ord_{l^i}(p)."""
        m = self.order
        while m % self.ell == 0:
            m //= self.ell
        return m

    def finite_model(self) -> SkewRingDesc:
        """A finite skew ring with the same character combinatorics."""
        m = self.approximant_degree
        N = self.N
        return SkewRingDesc(self.p, m, self.ell ** self.i_prime, N,
                            Automorphism.scalar(N, pow(self.p, m, self.modulus)))


def _check_pair(p, ell):
    if not is_prime(p):
        raise NonPrime(f"p={p} is not prime")
    if not is_prime(ell):
        raise NonPrime(f"ell={ell} is not prime")
    if p == ell:
        raise ElPrimeEqualsP(f"ell must differ from p (both {p})")


def tower_level(p: int, ell: int, i: int, twist: int | None = None) -> TowerLevel:
    """Level i of the tower: N = Z/l^i, Delta = Z/l^i', phi eta phi^-1 = eta^twist.

    twist defaults to p.  It has to be a unit mod l^i; the l-th power map is
    not an automorphism of Z/l^i and is rejected.
    """
    _check_pair(p, ell)
    if i < 1:
        raise ValueError("tower level must be >= 1")
    m = ell ** i
    u = p if twist is None else twist
    if math.gcd(u, m) != 1:
        raise InvalidTwist(f"twist {u} is not a unit mod {m}")
    order = mult_order(p, m)
    ip = l_valuation(order, ell)
    if i <= ip:
        raise TowerHypothesisViolated(f"i={i} <= i'={ip}")
    return TowerLevel(p, ell, i, ip, order, u % m, AbGroup((m,)))


@dataclass(frozen=True)
class Colimit:
    p: int
    ell: int
    i_max: int
    levels: tuple[TowerLevel, ...]

    def transition(self, i: int) -> dict[tuple, tuple]:
        """Level i -> level i+1 on character labels: a -> l*a."""
        m = self.ell ** (i + 1)
        return {(a,): ((self.ell * a) % m,) for a in range(self.ell ** i)}

    def composite(self, i: int, j: int) -> dict[tuple, tuple]:
        out = {(a,): (a,) for a in range(self.ell ** i)}
        for k in range(i, j):
            t = self.transition(k)
            out = {a: t[b] for a, b in out.items()}
        return out

    def direct(self, i: int, j: int) -> dict[tuple, tuple]:
        """The transition dual to Z/l^j -> Z/l^i in one step."""
        s = self.ell ** (j - i)
        return {(a,): ((s * a) % self.ell ** j,) for a in range(self.ell ** i)}

    def transition_is_injective_ring_map(self, i: int) -> bool:
        t = self.transition(i)
        if len(set(t.values())) != len(t):
            return False
        lo, hi = self.levels[i - 1], self.levels[i]
        for a in lo.k0.basis:
            for b in lo.k0.basis:
                prod = lo.k0.product(a, b)
                mapped = Counter()
                for lab, k in prod.items():
                    mapped[t[lab]] += k
                if dict(mapped) != hi.k0.product(t[a], t[b]):
                    return False
        return True

    def basis(self) -> list[Fraction]:
        m = self.ell ** self.i_max
        return [Fraction(a, m) for a in range(m)]

    @staticmethod
    def multiply(x: Fraction, y: Fraction) -> Fraction:
        return (x + y) % 1

    def embed_level(self, i: int, a: int) -> Fraction:
        return Fraction(a, self.ell ** i)


def colimit_k0(p: int, ell: int, i_max: int, twist: int | None = None) -> Colimit:
    if i_max < 1:
        raise ValueError("i_max must be >= 1")
    levels = tuple(tower_level(p, ell, i, twist) for i in range(1, i_max + 1))
    return Colimit(p, ell, i_max, levels)
