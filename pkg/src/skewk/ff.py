"""Finite fields GF(p^d) presented by an explicit irreducible modulus.

An element is the coefficient vector (constant term first) of its reduced
representative.  Single elements are wrapped in FieldElement; anything in
bulk goes through the vectorised methods of FieldDesc, which act on int64
arrays whose last axis has length d.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import linalg
from .errors import FieldBoundExceeded, InvalidDegree, NoEmbedding, NonPrime, NotCoprime

DEFAULT_FIELD_BOUND = 2 ** 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _check_prime(p: int, what: str = "p") -> None:
    if not is_prime(p):
        raise NonPrime(f"{what}={p} is not prime")


def mult_order(p: int, m: int) -> int:
    """Multiplicative order of p modulo m (m >= 1, gcd(p, m) = 1)."""
    if m < 1:
        raise NotCoprime(f"modulus must be positive, got {m}")
    if math.gcd(p, m) != 1:
        raise NotCoprime(f"gcd({p}, {m}) != 1")
    if m == 1:
        return 1
    k, x = 1, p % m
    while x != 1:
        x = (x * p) % m
        k += 1
    return k


def l_valuation(n: int, ell: int) -> int:
    """Exponent of the prime ell in the nonzero integer n."""
    _check_prime(ell, "ell")
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


# small polynomial helpers over F_p, constant term first, plain lists

def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b, p):
    a = [x % p for x in a]
    b = _ptrim(b)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for k in range(len(a) - len(b), -1, -1):
        c = (a[k + len(b) - 1] * inv) % p
        q[k] = c
        if c:
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - c * bi) % p
    return _ptrim(q), _ptrim(a[: len(b) - 1])


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _reduction_table(mod, p):
    """Rows x^k mod f for 0 <= k <= 2d-2."""
    d = len(mod) - 1
    tab = np.zeros((max(2 * d - 1, 1), d), dtype=np.int64)
    low = np.asarray(mod[:d], dtype=np.int64)
    for k in range(tab.shape[0]):
        if k < d:
            tab[k, k] = 1
        else:
            prev = tab[k - 1]
            top = prev[d - 1]
            row = np.zeros(d, dtype=np.int64)
            row[1:] = prev[:-1]
            tab[k] = (row - top * low) % p
    return tab


def _is_irreducible(mod, p) -> bool:
    d = len(mod) - 1
    if d == 1:
        return True
    deriv = [(i * c) % p for i, c in enumerate(mod)][1:]
    if len(_pgcd(mod, deriv, p)) != 1:
        return False
    red = _reduction_table(mod, p)

    def mulmod(a, b):
        c = np.convolve(a, b) % p
        return (c @ red[: len(c)]) % p

    xp = np.zeros(d, dtype=np.int64)
    xp[0] = 1
    base = np.zeros(d, dtype=np.int64)
    base[1] = 1
    e = p
    while e:
        if e & 1:
            xp = mulmod(xp, base)
        base = mulmod(base, base)
        e >>= 1
    Q = np.zeros((d, d), dtype=np.int64)
    row = np.zeros(d, dtype=np.int64)
    row[0] = 1
    for i in range(d):
        Q[i] = row
        row = mulmod(row, xp)
    Q -= np.eye(d, dtype=np.int64)
    return linalg.rank(Q, p) == d - 1


@lru_cache(maxsize=None)
def conway_free_modulus(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree d over F_p.

    Coefficient tuples are compared constant term first.  For d = 1 this is x.
    """
    if d == 1:
        return (0, 1)
    for low in itertools.product(range(1, p), *[range(p)] * (d - 1)):
        mod = tuple(low) + (1,)
        if _is_irreducible(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FieldDesc:
    p: int
    d: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.d

    def __str__(self):
        return f"GF({self.p}^{self.d})"

    @cached_property
    def _mul_reduce(self) -> np.ndarray:
        red = _reduction_table(self.modulus, self.p)
        d = self.d
        idx = np.add.outer(np.arange(d), np.arange(d)).reshape(-1)
        return red[idx]

    # vectorised arithmetic on arrays of shape (..., d)

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        outer = a[..., :, None] * b[..., None, :]
        shape = outer.shape[:-2]
        flat = outer.reshape(shape + (self.d * self.d,)) % self.p
        return linalg.matmul(flat, self._mul_reduce, self.p)

    def power(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64) % self.p
        out = np.zeros_like(a)
        out[..., 0] = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(np.all(a % self.p == 0, axis=-1)):
            raise ZeroDivisionError("inverse of zero")
        return self.power(a, self.order - 2)

    def frobenius_matrix(self, k: int = 1) -> np.ndarray:
        """Matrix M with a @ M = a^(p^k) for row vectors a."""
        eye = np.eye(self.d, dtype=np.int64)
        return self.power(eye, self.p ** (k % self.d))

    def elements(self):
        """All elements, in lexicographic order of coefficient tuples."""
        for c in itertools.product(range(self.p), repeat=self.d):
            yield FieldElement(self, c)

    def element(self, coeffs) -> "FieldElement":
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.d:
            # reduce a longer polynomial
            c = _pdivmod(c, list(self.modulus), self.p)[1]
        c = c + [0] * (self.d - len(c))
        return FieldElement(self, tuple(c))

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.d)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.d - 1))

    def gen(self) -> "FieldElement":
        """The class of x; equals -modulus[0] when d = 1."""
        if self.d == 1:
            return self.element([-self.modulus[0]])
        return self.element([0, 1])


@dataclass(frozen=True)
class FieldElement:
    field: FieldDesc
    coeffs: tuple[int, ...]

    def _wrap(self, arr):
        return FieldElement(self.field, tuple(int(x) for x in np.asarray(arr).reshape(-1)))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return np.asarray(other.coeffs)
        return np.asarray(self.field.element([other]).coeffs)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=np.int64)

    def __add__(self, other):
        return self._wrap((self.array + self._other(other)) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap((self.array - self._other(other)) % self.field.p)

    def __neg__(self):
        return self._wrap((-self.array) % self.field.p)

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.array, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.field.power(self.array, e))

    def inverse(self):
        return self._wrap(self.field.inv(self.array))

    def __truediv__(self, other):
        return self * FieldElement(self.field, tuple(self._other(other))).inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.field.order - 1
        if n >= 2 ** 40:
            raise ValueError("field too large for order computation")
        k = n
        for r in prime_factors(n):
            while k % r == 0 and (self ** (k // r)).coeffs == self.field.one().coeffs:
                k //= r
        return k


def build_field(p: int, d: int, bound: int = DEFAULT_FIELD_BOUND) -> FieldDesc:
    _check_prime(p)
    if d < 1:
        raise InvalidDegree(f"degree must be >= 1, got {d}")
    if p ** d > bound:
        raise FieldBoundExceeded(f"{p}^{d} exceeds the field bound {bound}")
    return FieldDesc(p, d, conway_free_modulus(p, d))


def frobenius_pow(x: FieldElement, e: int) -> FieldElement:
    """x -> x^(p^e)."""
    F = x.field
    return x ** (F.p ** (e % F.d))


# polynomials with coefficients in a FieldDesc: arrays of shape (deg+1, d)

def _fp_trim(a):
    k = a.shape[0]
    while k > 0 and not a[k - 1].any():
        k -= 1
    return a[:k]


def _fp_monic(F, a):
    lead_inv = F.inv(a[-1])
    return F.mul(a, lead_inv[None, :])


def _fp_mul(F, a, b):
    prod = F.mul(a[:, None, :], b[None, :, :])
    out = np.zeros((a.shape[0] + b.shape[0] - 1, F.d), dtype=np.int64)
    for i in range(a.shape[0]):
        out[i : i + b.shape[0]] += prod[i]
    return out % F.p


def _fp_divmod(F, a, b):
    """Division by a monic b."""
    a = a.copy()
    db = b.shape[0] - 1
    if a.shape[0] <= db:
        return np.zeros((0, F.d), dtype=np.int64), a
    q = np.zeros((a.shape[0] - db, F.d), dtype=np.int64)
    for k in range(a.shape[0] - 1, db - 1, -1):
        c = a[k]
        if c.any():
            q[k - db] = c
            a[k - db : k + 1] = (a[k - db : k + 1] - F.mul(c[None, :], b)) % F.p
    return _fp_trim(q), _fp_trim(a[:db])


def _fp_gcd(F, a, b):
    a, b = _fp_trim(a), _fp_trim(b)
    while b.shape[0]:
        b = _fp_monic(F, b)
        a, b = b, _fp_divmod(F, a, b)[1]
    return _fp_monic(F, a) if a.shape[0] else a


def _fp_powmod(F, a, e, g):
    out = np.zeros((1, F.d), dtype=np.int64)
    out[0, 0] = 1
    a = _fp_divmod(F, a, g)[1]
    while e:
        if e & 1:
            out = _fp_divmod(F, _fp_mul(F, out, a), g)[1]
        a = _fp_divmod(F, _fp_mul(F, a, a), g)[1]
        e >>= 1
    return out


def _find_roots(F: FieldDesc, g: np.ndarray, sub: np.ndarray | None = None) -> list[tuple[int, ...]]:
    """Roots in F of a monic g that splits into distinct linear factors.

    sub, when given, is an F_p-basis of a subfield K of F containing every
    root; splitting elements are then drawn from K and the exponents shrink
    from |F| to |K|.
    """
    deg = g.shape[0] - 1
    if deg == 0:
        return []
    if deg == 1:
        return [tuple(int(x) for x in (-g[0]) % F.p)]
    if sub is None:
        sub = np.eye(F.d, dtype=np.int64)
    k = sub.shape[0]
    size = F.p ** k
    trials = itertools.product(range(F.p), repeat=k)
    next(trials)
    for coeffs in trials:
        a = linalg.matmul(np.asarray(coeffs, dtype=np.int64), sub, F.p)
        lin = np.zeros((2, F.d), dtype=np.int64)
        if F.p == 2:
            # trace from K of a*X
            lin[1] = a
            y = _fp_divmod(F, lin, g)[1]
            acc = y.copy()
            for _ in range(k - 1):
                y = _fp_divmod(F, _fp_mul(F, y, y), g)[1]
                acc = _pad(acc, y) % 2
            h = _fp_gcd(F, g, _fp_trim(acc))
        else:
            lin[0] = a
            lin[1, 0] = 1
            w = _fp_powmod(F, lin, (size - 1) // 2, g)
            w = _pad(w, np.zeros((1, F.d), dtype=np.int64))
            w[0, 0] -= 1
            h = _fp_gcd(F, g, _fp_trim(w % F.p))
        dh = h.shape[0] - 1
        if 0 < dh < deg:
            other = _fp_divmod(F, g, h)[0]
            return _find_roots(F, h, sub) + _find_roots(F, other, sub)
    raise AssertionError("root splitting did not terminate")


def _pad(a, b):
    n = max(a.shape[0], b.shape[0])
    out = np.zeros((n, a.shape[1]), dtype=np.int64)
    out[: a.shape[0]] += a
    out[: b.shape[0]] += b
    return out


class Embedding:
    """A field homomorphism small -> big, fixed by the image of x."""

    def __init__(self, small: FieldDesc, big: FieldDesc, image: tuple[int, ...]):
        self.small = small
        self.big = big
        self.image = FieldElement(big, image)
        self.matrix = np.zeros((small.d, big.d), dtype=np.int64)
        self.matrix[0, 0] = 1
        r = np.asarray(image, dtype=np.int64)
        for i in range(1, small.d):
            self.matrix[i] = big.mul(self.matrix[i - 1], r)

    def map_array(self, a) -> np.ndarray:
        return linalg.matmul(np.asarray(a, dtype=np.int64), self.matrix, self.big.p)

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.small:
            raise ValueError("element not in the source field")
        return FieldElement(self.big, tuple(int(v) for v in self.map_array(x.array)))

    def compose(self, inner: "Embedding") -> "Embedding":
        """self after inner."""
        img = self.map_array(inner.image.array)
        return Embedding(inner.small, self.big, tuple(int(v) for v in img))


def roots_in(big: FieldDesc, poly: tuple[int, ...]) -> list[FieldElement]:
    """Roots in big of a separable polynomial over F_p that splits in big."""
    g = np.zeros((len(poly), big.d), dtype=np.int64)
    g[:, 0] = poly
    g = _fp_monic(big, _fp_trim(g))
    # all roots lie in GF(p^k) for k the lcm of the factor degrees; use k = deg g
    # when that subfield exists, which covers the irreducible case
    deg = g.shape[0] - 1
    sub = None
    if deg > 1 and big.d % deg == 0:
        fix = (big.frobenius_matrix(deg) - np.eye(big.d, dtype=np.int64)) % big.p
        sub = linalg.nullspace(fix.T, big.p)
    roots = _find_roots(big, g, sub)
    return sorted(FieldElement(big, r) for r in roots)


@lru_cache(maxsize=256)
def embed(small: FieldDesc, big: FieldDesc) -> Embedding:
    """Embedding sending x to the lexicographically least root of small's modulus.

    embed(F, F) is the identity rather than the least conjugate of x.
    """
    if small.p != big.p or big.d % small.d:
        raise NoEmbedding(f"{small} does not embed in {big}")
    if small == big:
        return Embedding(small, big, small.gen().coeffs)
    if small.d == 1:
        return Embedding(small, big, big.element([-small.modulus[0]]).coeffs)
    root = roots_in(big, small.modulus)[0]
    return Embedding(small, big, root.coeffs)


def splitting_degree(p: int, base_degree: int, m: int) -> int:
    """Least multiple of base_degree whose field contains the m-th roots of unity."""
    return base_degree * mult_order(p ** base_degree, m) if m > 1 else base_degree


@lru_cache(maxsize=256)
def root_of_unity(F: FieldDesc, m: int) -> FieldElement:
    """Lexicographically least primitive m-th root of unity in F."""
    if (F.order - 1) % m:
        raise NoEmbedding(f"{F} has no primitive {m}-th root of unity")
    if m == 1:
        return F.one()
    one = F.one().coeffs
    rs = prime_factors(m)
    cof = (F.order - 1) // m
    for y in F.elements():
        if y.is_zero():
            continue
        z = y ** cof
        if all((z ** (m // r)).coeffs != one for r in rs):
            break
    else:
        raise AssertionError("no primitive root found")
    return min(z ** k for k in range(1, m) if math.gcd(k, m) == 1)
