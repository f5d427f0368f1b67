"""Brute-force model of E<G> as an explicit algebra, used to cross-check skewring.

Everything here is computed from the multiplication rule (a g)(b h) = a g(b) gh
alone: the center by solving linear systems, its primitive idempotents by the
Frobenius-fixed-subalgebra method, a simple module of each factor by
descending through corner algebras, and rho by counting how the idempotents
of E[N] act on that module after evaluating them in a splitting field E'.
No orbit or decomposition formula from skewring is used.

Linear algebra is done over F_p: an F_{p^f}-space of dimension k is an
F_p-space of dimension f k, so ranks and dimensions over F are recovered by
dividing by f.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from . import linalg
from .abgroup import AbGroup, Character, GroupRingElem
from .errors import (NonSquareDimension, NotCommutative, OracleBoundExceeded,
                     SplittingFailure)
from .ff import (DEFAULT_FIELD_BOUND, FieldDesc, build_field, embed,
                 root_of_unity, splitting_degree)
from .linalg import Subspace
from .skewring import SkewRingDesc

DEFAULT_ORACLE_DIM = 256
# E' is searched by root finding, not enumeration, so it may be much larger
SPLITTING_FIELD_BOUND = 2 ** 128


class StructAlgebra:
    """A finite-dimensional associative unital algebra over F_p.

    Elements are coefficient vectors of length dim.  Subclasses implement
    mul_many on stacks of elements; everything else is derived from it.
    """

    p: int
    dim: int
    unit: np.ndarray

    def mul_many(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def mul(self, u, v) -> np.ndarray:
        return self.mul_many(np.asarray(u)[None], np.asarray(v)[None])[0]

    def power(self, u, e: int) -> np.ndarray:
        out = self.unit.copy()
        u = np.asarray(u)
        while e:
            if e & 1:
                out = self.mul(out, u)
            u = self.mul(u, u)
            e >>= 1
        return out

    def power_many(self, U, e: int) -> np.ndarray:
        out = np.repeat(self.unit[None], len(U), axis=0)
        while e:
            if e & 1:
                out = self.mul_many(out, U)
            U = self.mul_many(U, U)
            e >>= 1
        return out

    def generators(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.int64)

    def basis_vector(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[k] = 1
        return v

    def left_matrix(self, u) -> np.ndarray:
        """Matrix of v -> u v acting on column vectors."""
        I = np.eye(self.dim, dtype=np.int64)
        return self.mul_many(np.repeat(np.asarray(u)[None], self.dim, axis=0), I).T.copy()

    def right_matrix(self, v) -> np.ndarray:
        I = np.eye(self.dim, dtype=np.int64)
        return self.mul_many(I, np.repeat(np.asarray(v)[None], self.dim, axis=0)).T.copy()

    def structure_constants(self) -> np.ndarray:
        """table[i, j] = b_i b_j."""
        n = self.dim
        I = np.eye(n, dtype=np.int64)
        U = np.repeat(I, n, axis=0)
        V = np.tile(I, (n, 1))
        return self.mul_many(U, V).reshape(n, n, n)

    def check_laws(self, samples: int = 64, seed: int = 0) -> None:
        """Unit law on every basis element and associativity on basis triples.

        All triples are tried when dim <= 16, otherwise a seeded sample.
        """
        I = np.eye(self.dim, dtype=np.int64)
        one = np.repeat(self.unit[None], self.dim, axis=0)
        if not (np.array_equal(self.mul_many(one, I), I) and np.array_equal(self.mul_many(I, one), I)):
            raise AssertionError("unit law fails")
        if self.dim <= 16:
            idx = np.array(np.meshgrid(*[np.arange(self.dim)] * 3, indexing="ij")).reshape(3, -1).T
        else:
            idx = np.random.default_rng(seed).integers(0, self.dim, size=(samples, 3))
        A, B, C = I[idx[:, 0]], I[idx[:, 1]], I[idx[:, 2]]
        lhs = self.mul_many(self.mul_many(A, B), C)
        rhs = self.mul_many(A, self.mul_many(B, C))
        if not np.array_equal(lhs, rhs):
            raise AssertionError("associativity fails")


class TableAlgebra(StructAlgebra):
    """An algebra given by its structure constants table[i, j, k]."""

    def __init__(self, p: int, table, unit):
        self.p = p
        self.table = np.asarray(table, dtype=np.int64) % p
        self.dim = self.table.shape[0]
        self.unit = np.asarray(unit, dtype=np.int64) % p

    def mul_many(self, U, V):
        U = np.asarray(U, dtype=np.int64)
        V = np.asarray(V, dtype=np.int64)
        return np.einsum("si,sj,ijk->sk", U, V, self.table) % self.p


@njit(cache=True)
def _skew_mul(U3, V3, su, sv, kk, gmul, twist, p):
    """W[s, gh, m] = sum over i, j of U[s, g, i] twist[k(g), i, j, m] V[s, h, j]."""
    s_, G, D = U3.shape
    W = np.zeros((s_, G, D), dtype=np.int64)
    X = np.zeros((D, D), dtype=np.int64)
    acc = np.zeros(D, dtype=np.int64)
    for s in range(s_):
        for g in su:
            tw = twist[kk[g]]
            X[:, :] = 0
            nz = False
            for i in range(D):
                u = U3[s, g, i]
                if u:
                    nz = True
                    for j in range(D):
                        for m in range(D):
                            X[j, m] += u * tw[i, j, m]
            if not nz:
                continue
            for j in range(D):
                for m in range(D):
                    X[j, m] %= p
            for h in sv:
                acc[:] = 0
                for j in range(D):
                    v = V3[s, h, j]
                    if v:
                        for m in range(D):
                            acc[m] += v * X[j, m]
                t = gmul[g, h]
                for m in range(D):
                    W[s, t, m] = (W[s, t, m] + acc[m]) % p
    return W


class SkewAlgebra(StructAlgebra):
    """E<G> with F_p-basis x^i g (0 <= i < [E:F_p], g in G).

    G = N x| Delta is enumerated as (a, k) <-> a phi^k with index k |N| + idx(a);
    (a, k)(b, l) = (a + theta^k b, k + l) and (a, k) acts on E as x -> x^(q^k).
    A vector has length |G| D and component g occupies slots g D .. g D + D - 1.
    """

    def __init__(self, desc: SkewRingDesc, max_dim: int = DEFAULT_ORACLE_DIM,
                 field_bound: int = DEFAULT_FIELD_BOUND, check: bool = True):
        dim_F = desc.n * desc.group_order
        if dim_F > max_dim:
            raise OracleBoundExceeded(f"algebra dimension {dim_F} exceeds {max_dim}")
        self.desc = desc
        self.p = desc.p
        self.D = desc.degree
        self.E = build_field(desc.p, self.D, field_bound)
        N = desc.N
        self.N = N
        self.n_N = N.order
        nelems = N.elements()
        thetas = [desc.theta.power(k) for k in range(desc.n)]
        self.G = [(a, k) for k in range(desc.n) for a in nelems]
        self.order = len(self.G)
        idx = {g: i for i, g in enumerate(self.G)}
        self.gmul = np.zeros((self.order, self.order), dtype=np.int64)
        for i, (a, k) in enumerate(self.G):
            th = thetas[k]
            for j, (b, l) in enumerate(self.G):
                self.gmul[i, j] = idx[(N.add(a, th(b)), (k + l) % desc.n)]
        self.kk = np.array([k for _, k in self.G], dtype=np.int64)
        self.ginv = np.argmax(self.gmul == 0, axis=1)
        self.dim = self.order * self.D
        self.dim_F = dim_F
        D = self.D
        # frob[k] maps a coefficient row b to b^(q^k); twist[k, i, j] = x^i (x^j)^(q^k)
        self.frob = np.stack([self.E.frobenius_matrix(desc.f * k) for k in range(desc.n)])
        xs = np.eye(D, dtype=np.int64)
        self.twist = np.stack([self.E.mul(xs[:, None, :], self.frob[k][None, :, :])
                               for k in range(desc.n)])
        self.unit = np.zeros(self.dim, dtype=np.int64)
        self.unit[0] = 1
        G2 = self.order
        g, h, j, m = np.meshgrid(np.arange(G2), np.arange(G2), np.arange(D), np.arange(D), indexing="ij")
        prod = self.gmul[g, h]
        self._left_flat = ((prod * D + m) * self.dim + h * D + j)
        self._right_flat = ((prod * D + m) * self.dim + g * D + j)
        if check:
            self.check_laws(seed=_seed(desc))

    def component_index(self, a, k: int = 0) -> int:
        return k * self.n_N + self.N.index(a)

    def monomial(self, g: int, coeffs=None) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        if coeffs is None:
            v[g * self.D] = 1
        else:
            v[g * self.D:(g + 1) * self.D] = coeffs
        return v

    def generators(self) -> np.ndarray:
        """Algebra generators: x, the generators of N, and phi."""
        gens = []
        if self.D > 1:
            gens.append(self.monomial(0, np.eye(self.D, dtype=np.int64)[1]))
        r = self.N.rank
        for t in range(r):
            a = tuple(int(s == t) for s in range(r))
            gens.append(self.monomial(self.component_index(a)))
        if self.desc.n > 1:
            gens.append(self.monomial(self.component_index(self.N.zero(), 1)))
        if not gens:
            gens.append(self.unit.copy())
        return np.array(gens, dtype=np.int64)

    def _support(self, U):
        return np.flatnonzero(U.reshape(-1, self.order, self.D).any(axis=(0, 2)))

    def mul_many(self, U, V):
        U = np.asarray(U, dtype=np.int64)
        V = np.asarray(V, dtype=np.int64)
        s = U.shape[0]
        D, p = self.D, self.p
        # a repeated factor is cheaper as one multiplication matrix
        if s > 8 and (U == U[0]).all():
            return linalg.matmul(V, self.left_matrix(U[0]).T, p)
        if s > 8 and (V == V[0]).all():
            return linalg.matmul(U, self.right_matrix(V[0]).T, p)
        su, sv = self._support(U), self._support(V)
        W = _skew_mul(U.reshape(s, self.order, D), V.reshape(s, self.order, D),
                      su, sv, self.kk, self.gmul, self.twist, p)
        return W.reshape(s, self.dim)

    def left_matrix(self, u) -> np.ndarray:
        U = np.asarray(u, dtype=np.int64).reshape(self.order, self.D)
        su = np.flatnonzero(U.any(axis=1))
        X = np.einsum("gi,gijm->gjm", U[su], self.twist[self.kk[su]]) % self.p
        L = np.zeros(self.dim * self.dim, dtype=np.int64)
        vals = np.broadcast_to(X[:, None, :, :], (len(su), self.order, self.D, self.D))
        L[self._left_flat[su].ravel()] = vals.ravel()
        return L.reshape(self.dim, self.dim)

    def right_matrix(self, v) -> np.ndarray:
        V = np.asarray(v, dtype=np.int64).reshape(self.order, self.D)
        # Y[k, h, i, m]: coefficient of x^m in x^i (x-power twist k applied to v_h)
        Y = np.einsum("hj,kijm->khim", V, self.twist) % self.p
        vals = Y[self.kk]
        R = np.zeros(self.dim * self.dim, dtype=np.int64)
        R[self._right_flat.ravel()] = vals.ravel()
        return R.reshape(self.dim, self.dim)

    def left_group(self, g: int, V) -> np.ndarray:
        """Left multiplication by the group element g on a stack of vectors."""
        V3 = np.asarray(V, dtype=np.int64).reshape(-1, self.order, self.D)
        out = np.zeros_like(V3)
        out[:, self.gmul[g]] = linalg.matmul(V3, self.frob[self.kk[g]], self.p)
        return out.reshape(-1, self.dim)

    def left_field(self, beta, V) -> np.ndarray:
        """Left multiplication by beta in E (a coefficient row)."""
        V3 = np.asarray(V, dtype=np.int64).reshape(-1, self.order, self.D)
        return self.E.mul(np.asarray(beta)[None, None, :], V3).reshape(-1, self.dim)

    def components(self, v) -> np.ndarray:
        return np.asarray(v).reshape(self.order, self.D)


def _seed(desc: SkewRingDesc, extra: str = "") -> int:
    return zlib.crc32(f"{desc.key()}{extra}".encode())


def regular_algebra(desc: SkewRingDesc, max_dim: int = DEFAULT_ORACLE_DIM,
                    field_bound: int = DEFAULT_FIELD_BOUND) -> SkewAlgebra:
    return SkewAlgebra(desc, max_dim, field_bound)


@dataclass
class SubalgebraBasis:
    parent: StructAlgebra
    space: Subspace
    unital: bool = True
    mu_check: bool | None = None

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    @property
    def dim(self) -> int:
        return self.space.dim


def _commutant(alg: StructAlgebra, K: np.ndarray, elems) -> np.ndarray:
    p = alg.p
    for y in elems:
        if K.shape[0] == 0:
            break
        Y = np.repeat(y[None], K.shape[0], axis=0)
        diff = (alg.mul_many(Y, K) - alg.mul_many(K, Y)) % p
        null = linalg.nullspace(diff.T, p)
        K = linalg.matmul(null, K, p)
    return K


def center(alg: StructAlgebra) -> SubalgebraBasis:
    """Basis of {z : z y = y z for every algebra generator y}.

    For a skew ring the first generator x cuts the search space down to the
    centraliser of E, which is done with one operator nullspace; the rest are
    small restricted systems.
    """
    p = alg.p
    gens = alg.generators()
    if isinstance(alg, SkewAlgebra) and alg.D > 1:
        x = gens[0]
        K = linalg.nullspace((alg.left_matrix(x) - alg.right_matrix(x)) % p, p)
        K = _commutant(alg, K, gens[1:])
    else:
        K = _commutant(alg, np.eye(alg.dim, dtype=np.int64), gens)
    Z = SubalgebraBasis(alg, Subspace(K, p, alg.dim))
    if isinstance(alg, SkewAlgebra):
        Z.mu_check = _mu_check(alg, Z)
    return Z


def _mu_check(alg: SkewAlgebra, Z: SubalgebraBasis) -> bool:
    """E (x)_F Z -> E[N] is an isomorphism: dimensions match and the span is injective."""
    desc = alg.desc
    p = alg.p
    if Z.dim * desc.n != alg.D * alg.n_N:
        return False
    x = alg.monomial(0, np.eye(alg.D, dtype=np.int64)[min(1, alg.D - 1)])
    rows = []
    cur = Z.basis
    for _ in range(desc.n):
        rows.append(cur)
        cur = alg.mul_many(np.repeat(x[None], len(cur), axis=0), cur)
    span = np.vstack(rows)
    if linalg.rank(span, p) != desc.n * Z.dim:
        return False
    comps = span.reshape(len(span), alg.order, alg.D)
    return not comps[:, alg.n_N:].any()


@dataclass
class IdempotentSet:
    vectors: np.ndarray

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def _coords_many(space: Subspace, V) -> np.ndarray:
    return space.coords(V)


def split_commutative(alg: StructAlgebra, space: Subspace, one) -> list[np.ndarray]:
    """Primitive idempotents of a commutative subalgebra with identity one.

    B = {b : b^p = b} is the F_p-span of the primitive idempotents; they are
    the common eigenlines of multiplication by elements of B.
    """
    p = alg.p
    S = space.basis
    s = len(S)
    if s == 0:
        return []
    Fr = space.coords_checked(alg.power_many(S, p))
    if linalg.rank(Fr, p) < s:
        raise SplittingFailure("subalgebra has nilpotent elements")
    C = linalg.nullspace(((Fr - np.eye(s, dtype=np.int64)) % p).T, p)
    B = linalg.matmul(C, S, p)
    t = len(B)
    if t == 1:
        return [np.asarray(one, dtype=np.int64) % p]
    Bsp = Subspace(B, p, alg.dim)
    Bb = Bsp.basis
    prods = alg.mul_many(np.repeat(Bb, t, axis=0), np.tile(Bb, (t, 1)))
    L = Bsp.coords_checked(prods).reshape(t, t, t)  # L[k, j] = coords of b_k b_j
    pieces = [np.eye(t, dtype=np.int64)]
    for k in range(t):
        if all(len(W) == 1 for W in pieces):
            break
        nxt = []
        for W in pieces:
            if len(W) == 1:
                nxt.append(W)
                continue
            WL = linalg.matmul(W, L[k], p)
            for lam in range(p):
                a = linalg.nullspace(((WL - lam * W) % p).T, p)
                if len(a):
                    nxt.append(linalg.matmul(a, W, p))
        pieces = nxt
    if any(len(W) != 1 for W in pieces):
        raise SplittingFailure("joint eigenspaces did not separate")
    out = []
    for W in pieces:
        v = linalg.matmul(W, Bb, p)[0]
        sq = alg.mul(v, v)
        k = int(np.flatnonzero(v)[0])
        lam = sq[k] * pow(int(v[k]), p - 2, p) % p
        if lam == 0:
            raise SplittingFailure("nilpotent eigenline")
        e = v * pow(int(lam), p - 2, p) % p
        out.append(e)
    out.sort(key=lambda e: tuple(e.tolist()))
    return out


def _check_idempotents(alg: StructAlgebra, es: list[np.ndarray], one) -> None:
    p = alg.p
    E = np.array(es)
    k = len(es)
    prods = alg.mul_many(np.repeat(E, k, axis=0), np.tile(E, (k, 1))).reshape(k, k, -1)
    for i in range(k):
        for j in range(k):
            want = E[i] if i == j else np.zeros_like(E[i])
            if not np.array_equal(prods[i, j], want):
                raise SplittingFailure("idempotents are not orthogonal")
    if not np.array_equal(E.sum(axis=0) % p, np.asarray(one) % p):
        raise SplittingFailure("idempotents do not sum to the identity")


def primitive_idempotents(Z: SubalgebraBasis) -> IdempotentSet:
    alg = Z.parent
    p = alg.p
    B = Z.basis
    k = len(B)
    ab = alg.mul_many(np.repeat(B, k, axis=0), np.tile(B, (k, 1)))
    ba = alg.mul_many(np.tile(B, (k, 1)), np.repeat(B, k, axis=0))
    if not np.array_equal(ab, ba):
        raise NotCommutative("subalgebra is not commutative")
    es = split_commutative(alg, Z.space, alg.unit)
    _check_idempotents(alg, es, alg.unit)
    gens = alg.generators()
    for e in es:
        Ev = np.repeat(e[None], len(gens), axis=0)
        if not np.array_equal(alg.mul_many(Ev, gens), alg.mul_many(gens, Ev)):
            raise SplittingFailure("idempotent is not central")
    return IdempotentSet(np.array(es))


@dataclass
class FactorStructure:
    idempotent: np.ndarray
    dim_F: int
    center_degree: int
    d: int


def factor_structure(alg: SkewAlgebra, e, Z: SubalgebraBasis) -> FactorStructure:
    p, f = alg.p, alg.desc.f
    dim_Fp = linalg.rank(alg.left_matrix(e), p)
    eZ = alg.mul_many(np.repeat(np.asarray(e)[None], Z.dim, axis=0), Z.basis)
    zdim = linalg.rank(eZ, p)
    if dim_Fp % f or zdim % f:
        raise NonSquareDimension("dimensions are not multiples of [F:F_p]")
    deg = zdim // f
    q, r = divmod(dim_Fp // f, deg)
    d = math.isqrt(q)
    if r or d * d != q:
        raise NonSquareDimension(f"dim A_i / deg = {(dim_Fp // f) / deg} is not a square")
    return FactorStructure(np.asarray(e), dim_Fp // f, deg, d)


def left_ideal(alg: StructAlgebra, v) -> Subspace:
    """A v, as the closure of v under left multiplication by generators."""
    p = alg.p
    gens = alg.generators()
    space = Subspace(np.asarray(v)[None], p, alg.dim)
    frontier = space.basis
    while len(frontier):
        cand = alg.mul_many(np.repeat(gens, len(frontier), axis=0),
                            np.tile(frontier, (len(gens), 1)))
        new = Subspace(np.vstack([space.basis, cand]), p, alg.dim)
        if new.dim == space.dim:
            break
        back = linalg.matmul(space.coords(cand), space.basis, p)
        frontier = cand[(back != cand).any(axis=1)]
        space = new
    return space


def _span_product(alg, left, right_rows) -> Subspace:
    L = np.repeat(np.asarray(left)[None], len(right_rows), axis=0)
    return Subspace(alg.mul_many(L, right_rows), alg.p, alg.dim)


@dataclass
class SimpleModule:
    space: Subspace
    idempotent: np.ndarray
    descent_steps: int


def simple_module(alg: SkewAlgebra, e, Z: SubalgebraBasis, start=None,
                  seed: int = 0, max_tries: int = 50) -> SimpleModule:
    """A minimal left ideal of the factor e A.

    Starting from an idempotent eps <= e, repeatedly split the corner algebra
    eps A eps: a random y in it generates, together with the center, a
    commutative algebra whose primitive idempotents refine eps.  The descent
    stops when the corner equals its center, i.e. A eps is simple.
    """
    p = alg.p
    rng = np.random.default_rng(seed)
    eps = np.asarray(e if start is None else start, dtype=np.int64)
    steps = 0
    tries = 0
    while True:
        Aeps = left_ideal(alg, eps)
        corner = _span_product(alg, eps, Aeps.basis)
        K = _span_product(alg, eps, Z.basis)
        if corner.dim == K.dim:
            return SimpleModule(Aeps, eps, steps)
        while True:
            tries += 1
            if tries > max_tries:
                raise SplittingFailure("corner algebra did not split")
            y = corner.combine(rng.integers(0, p, size=corner.dim))
            gens = K.basis
            span = K
            cur = gens
            while True:
                cur = alg.mul_many(cur, np.repeat(y[None], len(cur), axis=0))
                nxt = Subspace(np.vstack([span.basis, cur]), p, alg.dim)
                if nxt.dim == span.dim:
                    break
                span = nxt
            try:
                parts = split_commutative(alg, span, eps)
            except SplittingFailure:
                continue
            if len(parts) > 1:
                eps = parts[0]
                steps += 1
                break


@dataclass
class CharacterData:
    """Idempotents of C = E[N] together with the characters they detect."""

    idempotents: np.ndarray
    char_to_idem: dict
    c_dims: np.ndarray
    splitting_degree: int


def character_data(alg: SkewAlgebra, bound: int = SPLITTING_FIELD_BOUND) -> CharacterData:
    """Split E[N] and match its idempotents with characters of N.

    tau0: E -> E' is a fixed embedding and zeta a fixed primitive e-th root of
    unity of E'.  The idempotent c answers chi when the homomorphism
    sum_a b_a a -> sum_a tau0(b_a) zeta^<chi, a> sends c to 1.
    """
    p, D = alg.p, alg.D
    N = alg.N
    m = N.exponent
    Dp = splitting_degree(p, D, m)
    Ep = build_field(p, Dp, bound)
    tau = embed(alg.E, Ep)
    zeta = root_of_unity(Ep, m)
    nC = alg.n_N * D
    Cspace = Subspace(np.eye(alg.dim, dtype=np.int64)[:nC], p, alg.dim)
    cs = split_commutative(alg, Cspace, alg.unit)
    _check_idempotents(alg, cs, alg.unit)
    C = np.array(cs)
    comps = C.reshape(len(C), alg.order, D)[:, : alg.n_N]
    img = tau.map_array(comps)  # (t, |N|, D')
    elems = N.elements()
    chars = [Character(N, c) for c in elems]
    pairing = np.array([[chi.pair(a) for a in elems] for chi in chars])
    zpow = Ep.power(np.repeat(zeta.array[None], m, axis=0), 0)
    for k in range(1, m):
        zpow[k] = Ep.mul(zpow[k - 1], zeta.array)
    Z = zpow[pairing]  # (chars, |N|, D')
    vals = Ep.mul(img[:, None, :, :], Z[None, :, :, :]).sum(axis=2) % p  # (t, chars, D')
    one = np.zeros(Dp, dtype=np.int64)
    one[0] = 1
    is_one = (vals == one).all(axis=-1)
    is_zero = (vals == 0).all(axis=-1)
    if not np.all(is_one | is_zero):
        raise SplittingFailure("idempotent evaluates outside {0, 1}")
    if not np.all(is_one.sum(axis=0) == 1):
        raise SplittingFailure("character not detected by exactly one idempotent")
    char_to_idem = {chi.exps: int(np.flatnonzero(is_one[:, j])[0]) for j, chi in enumerate(chars)}
    c_dims = np.array([_span_product(alg, c, Cspace.basis).dim for c in C])
    return CharacterData(C, char_to_idem, c_dims, Dp)


def character_tally(alg: SkewAlgebra, cd: CharacterData, space: Subspace) -> GroupRingElem:
    """Multiplicities of the characters of N in E' (x)_E M for a module M <= A."""
    p = alg.p
    dims = np.array([_span_product(alg, c, space.basis).dim for c in cd.idempotents])
    if dims.sum() != space.dim:
        raise SplittingFailure("eigenspace dimensions do not add up")
    items = []
    for exps, t in cd.char_to_idem.items():
        k, r = divmod(int(dims[t]), int(cd.c_dims[t]))
        if r:
            raise SplittingFailure("eigenspace dimension is not a multiple")
        items.append((exps, k))
    return GroupRingElem(alg.N, tuple(items))


@dataclass
class OracleFactor:
    structure: FactorStructure
    module: SimpleModule
    rho: GroupRingElem

    @property
    def label(self) -> tuple:
        sup = self.rho.support()
        return min(sup).exps if sup else ()

    @property
    def multiplicity(self) -> int | None:
        ks = {k for _, k in self.rho.coeffs}
        return ks.pop() if len(ks) == 1 else None


@dataclass
class OracleDecomposition:
    desc: SkewRingDesc
    alg: SkewAlgebra
    Z: SubalgebraBasis
    factors: list[OracleFactor]
    chars: CharacterData = field(repr=False)

    def factor(self, label) -> OracleFactor:
        for fa in self.factors:
            if fa.label == tuple(label):
                return fa
        raise KeyError(label)


def _start_idempotent(alg, e, cd: CharacterData):
    """The first idempotent of E[N] lying under e, to shorten the descent."""
    for c in cd.idempotents:
        ce = alg.mul(c, e)
        if ce.any():
            return ce
    return e


def rho_oracle(alg: SkewAlgebra, e, desc: SkewRingDesc, Z: SubalgebraBasis | None = None,
               cd: CharacterData | None = None) -> GroupRingElem:
    Z = center(alg) if Z is None else Z
    cd = character_data(alg) if cd is None else cd
    mod = simple_module(alg, e, Z, _start_idempotent(alg, e, cd), seed=_seed(desc))
    return character_tally(alg, cd, mod.space)


def oracle_decompose(desc: SkewRingDesc, max_dim: int = DEFAULT_ORACLE_DIM,
                     field_bound: int = DEFAULT_FIELD_BOUND) -> OracleDecomposition:
    alg = regular_algebra(desc, max_dim, field_bound)
    Z = center(alg)
    es = primitive_idempotents(Z)
    cd = character_data(alg)
    factors = []
    for i, e in enumerate(es):
        st = factor_structure(alg, e, Z)
        mod = simple_module(alg, e, Z, _start_idempotent(alg, e, cd), seed=_seed(desc, str(i)))
        expect = st.d * st.center_degree * desc.f
        if mod.space.dim != expect:
            raise SplittingFailure(f"simple module has dimension {mod.space.dim}, expected {expect}")
        factors.append(OracleFactor(st, mod, character_tally(alg, cd, mod.space)))
    factors.sort(key=lambda fa: fa.label)
    return OracleDecomposition(desc, alg, Z, factors, cd)


def _coords_matrix(space: Subspace, images) -> np.ndarray:
    """Matrix (acting on column coordinates) of a map given by basis images."""
    return space.coords_checked(images).T.copy()


def tensor_oracle(od: OracleDecomposition, a, b) -> dict[tuple, int]:
    """Decompose W (x)_E W' with the diagonal action, W, W' the simple modules a, b.

    With an E-basis w'_1..w'_r of W', the map (u_l) -> sum u_l (x) w'_l identifies
    the tensor product with W^r, on which alpha g acts by the block matrix
    [L(alpha M_g[m, l]) g_W] where g w'_l = sum_m M_g[m, l] w'_m.  The
    multiplicity of V_k is rank(e_k) / dim V_k.
    """
    alg = od.alg
    p, D, E = alg.p, alg.D, alg.E
    W = od.factor(a).module.space
    Wp = od.factor(b).module.space
    # E-basis of W'
    ebasis = []
    span = Subspace(np.zeros((0, alg.dim), dtype=np.int64), p, alg.dim)
    xs = np.eye(D, dtype=np.int64)
    for w in Wp.basis:
        if span.dim and span.contains(w):
            continue
        block = np.vstack([alg.left_field(xs[i], w[None]) for i in range(D)])
        ebasis.append(block)
        span = Subspace(np.vstack([span.basis, block]) if span.dim else block, p, alg.dim)
        if span.dim == Wp.dim:
            break
    r = len(ebasis)
    Bmat = np.vstack(ebasis)  # row l D + i = x^i w'_l
    Bsp = Subspace(Bmat, p, alg.dim)
    to_B = linalg.inverse(Bsp.coords(Bmat), p)  # RREF coords -> coords in Bmat
    dW = W.dim
    G = alg.order
    # M[g, m, l] in E
    M = np.zeros((G, r, r, D), dtype=np.int64)
    gW = np.zeros((G, dW, dW), dtype=np.int64)
    for g in range(G):
        imgs = alg.left_group(g, Bmat[::D])
        c = linalg.matmul(Bsp.coords_checked(imgs), to_B, p).reshape(r, r, D)
        M[g] = c.transpose(1, 0, 2)
        gW[g] = _coords_matrix(W, alg.left_group(g, W.basis))
    xW = np.stack([_coords_matrix(W, alg.left_field(xs[i], W.basis)) for i in range(D)])
    P = np.einsum("iab,gbc->giac", xW, gW) % p  # x^i after g
    Pflat = P.reshape(G * D, dW * dW)
    out = {}
    for fa in od.factors:
        e = alg.components(fa.structure.idempotent)
        beta = E.mul(e[:, None, None, :], M)  # (G, r, r, D)
        coeff = beta.transpose(1, 2, 0, 3).reshape(r * r, G * D)
        blocks = linalg.matmul(coeff, Pflat, p).reshape(r, r, dW, dW)
        op = blocks.transpose(0, 2, 1, 3).reshape(r * dW, r * dW)
        rk = linalg.rank(op, p)
        k, rem = divmod(rk, fa.module.space.dim)
        if rem:
            raise SplittingFailure("tensor component is not a multiple of a simple module")
        if k:
            out[fa.label] = k
    if sum(k * od.factor(lab).module.space.dim for lab, k in out.items()) != r * dW:
        raise SplittingFailure("tensor decomposition does not exhaust the module")
    return out
