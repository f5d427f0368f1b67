"""The desk grid of skew rings and the oracle comparison driver."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .abgroup import AbGroup, Automorphism
from .errors import SkewKError
from .ff import DEFAULT_FIELD_BOUND
from .oracle import DEFAULT_ORACLE_DIM, oracle_decompose
from .skewring import SkewRingDesc, decompose, rho_simple


def abelian_groups(max_order: int) -> list[AbGroup]:
    """All abelian groups of order <= max_order, as invariant-factor chains."""
    out = [AbGroup(())]

    def extend(chain, prod):
        last = chain[-1]
        m = last
        while prod * m <= max_order:
            yield chain + (m,)
            yield from extend(chain + (m,), prod * m)
            m += last

    for m in range(2, max_order + 1):
        out.append(AbGroup((m,)))
        for ch in extend((m,), m):
            out.append(AbGroup(ch))
    return sorted(set(out), key=lambda g: (g.order, g.factors))


@lru_cache(maxsize=None)
def _automorphism_data(factors: tuple[int, ...]):
    """Automorphisms of N as (matrices, element permutations, orders)."""
    N = AbGroup(factors)
    r = N.rank
    elems = np.array(N.elements(), dtype=np.int64).reshape(N.order, r)
    fs = np.array(factors, dtype=np.int64)
    if r == 0:
        return np.zeros((1, 0, 0), dtype=np.int64), np.zeros((1, 1), dtype=np.int64), np.ones(1, dtype=np.int64)
    cols = []
    for k in range(r):
        ok = np.all((elems * fs[k]) % fs == 0, axis=1)
        cols.append(np.flatnonzero(ok))
    combos = np.array(list(itertools.product(*cols)), dtype=np.int64)  # (K, r) element indices
    mats = elems[combos].transpose(0, 2, 1)  # column k is the image of generator k
    imgs = np.einsum("kjt,et->kej", mats, elems) % fs  # (K, |N|, r)
    weights = np.array([math.prod(factors[t + 1:]) for t in range(r)], dtype=np.int64)
    perm = imgs @ weights
    bij = np.array([len(np.unique(row)) == N.order for row in perm])
    mats, perm = mats[bij], perm[bij]
    order = np.ones(len(perm), dtype=np.int64)
    cur = perm.copy()
    ident = np.arange(N.order)
    rows = np.arange(len(perm))[:, None]
    done = np.all(cur == ident, axis=1)
    while not done.all():
        cur = perm[rows, cur]
        order[~done] += 1
        done = done | np.all(cur == ident, axis=1)
    return mats, perm, order


@lru_cache(maxsize=None)
def automorphism_classes(factors: tuple[int, ...], n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Conjugacy-class representatives of automorphisms theta of N with theta^n = 1.

    Each representative is the lexicographically least matrix of its class.
    """
    mats, perm, order = _automorphism_data(factors)
    if len(factors) == 0:
        return ((),)
    sel = np.flatnonzero(n % order == 0)
    keyed = sorted(sel, key=lambda i: tuple(mats[i].ravel()))
    inv = np.argsort(perm, axis=1)
    rows = np.arange(len(perm))[:, None]
    seen = set()
    reps = []
    for i in keyed:
        kb = perm[i].tobytes()
        if kb in seen:
            continue
        reps.append(tuple(tuple(int(x) for x in row) for row in mats[i]))
        conj = perm[rows, perm[i][inv]]
        for row in conj:
            seen.add(row.tobytes())
    return tuple(reps)


@dataclass(frozen=True)
class GridBounds:
    primes: tuple[int, ...] = (2, 3, 5, 7)
    max_f: int = 2
    max_n: int = 4
    max_N: int = 16
    max_dim: int = DEFAULT_ORACLE_DIM
    field_bound: int = DEFAULT_FIELD_BOUND


@dataclass(frozen=True)
class GridItem:
    p: int
    f: int
    n: int
    factors: tuple[int, ...]
    theta: tuple[tuple[int, ...], ...]
    skip: str | None = None

    def desc(self) -> SkewRingDesc:
        N = AbGroup(self.factors)
        return SkewRingDesc(self.p, self.f, self.n, N, Automorphism(N, self.theta))

    def __str__(self):
        th = ",".join("".join(str(x) for x in r) for r in self.theta) or "-"
        return f"p={self.p} f={self.f} n={self.n} N={list(self.factors)} theta={th}"


def grid_items(b: GridBounds) -> list[GridItem]:
    items = []
    groups = abelian_groups(b.max_N)
    for p in b.primes:
        for f in range(1, b.max_f + 1):
            for n in range(1, b.max_n + 1):
                for N in groups:
                    if n * n * N.order > b.max_dim:
                        continue
                    for th in automorphism_classes(N.factors, n):
                        skip = None
                        if (N.order * n) % p == 0:
                            skip = "SKIP_MASCHKE"
                        elif p ** (f * n) > b.field_bound:
                            skip = "SKIP_BOUND"
                        items.append(GridItem(p, f, n, N.factors, th, skip))
    return items


@dataclass
class Verdict:
    item: GridItem
    status: str
    detail: str = ""
    seconds: float = field(default=0.0, compare=False)

    def line(self) -> str:
        return f"{self.status} {self.item}" + (f" :: {self.detail}" if self.detail else "")


def compare(desc: SkewRingDesc, max_dim: int = DEFAULT_ORACLE_DIM,
            field_bound: int = DEFAULT_FIELD_BOUND) -> tuple[bool, str]:
    """Compare skewring.decompose with the oracle; returns (agree, first problem)."""
    dec = decompose(desc)
    od = oracle_decompose(desc, max_dim, field_bound)
    if not od.Z.mu_check:
        return False, "mu check failed"
    if len(od.factors) != len(dec.factors):
        return False, f"factor count {len(od.factors)} != {len(dec.factors)}"
    fs = sorted((fa.matrix_size, fa.center_degree, fa.multiplicity) for fa in dec.factors)
    os_ = sorted((o.structure.d, o.structure.center_degree, o.multiplicity) for o in od.factors)
    if fs != os_:
        return False, f"factor shapes {os_} != {fs}"
    for fa in dec.factors:
        try:
            o = od.factor(fa.label)
        except KeyError:
            return False, f"no oracle factor for orbit {fa.label}"
        if o.rho != rho_simple(fa):
            return False, f"rho {o.rho} != {rho_simple(fa)}"
        if (o.structure.d, o.structure.center_degree) != (fa.matrix_size, fa.center_degree):
            return False, f"factor {fa.label} shape differs"
    lhs = sum(o.structure.d ** 2 * o.structure.center_degree for o in od.factors)
    if lhs != desc.n * desc.group_order or not dec.dimension_check():
        return False, "dimension identity fails"
    return True, ""


def run_item(item: GridItem, max_dim: int = DEFAULT_ORACLE_DIM,
             field_bound: int = DEFAULT_FIELD_BOUND) -> Verdict:
    if item.skip:
        return Verdict(item, item.skip)
    t0 = time.perf_counter()
    try:
        ok, why = compare(item.desc(), max_dim, field_bound)
    except SkewKError as exc:
        ok, why = False, f"{exc.code}: {exc}"
    return Verdict(item, "AGREE" if ok else "MISMATCH", why, time.perf_counter() - t0)


def _run_star(args):
    return run_item(*args)


def run_grid(b: GridBounds, jobs: int = 1, progress=None) -> list[Verdict]:
    items = grid_items(b)
    args = [(it, b.max_dim, b.field_bound) for it in items]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            out = list(ex.map(_run_star, args, chunksize=4))
    else:
        out = []
        for a in args:
            out.append(run_item(*a))
            if progress:
                progress(out[-1])
    return out


def summary_line(verdicts: list[Verdict]) -> str:
    ran = [v for v in verdicts if v.status in ("AGREE", "MISMATCH")]
    agree = sum(v.status == "AGREE" for v in ran)
    return f"AGREE {agree}/{len(ran)}"
