"""The E1 page of the algebraic-to-geometric spectral sequence and its collapse.

E1^{s,t} is pi_{-t} of the l-completed K-theory of the approximating field
when s + 2t is 0 or 1 and vanishes otherwise.  All differentials are zero, so
total degree n receives pi_n (from s + 2t = 0) and pi_{n-1} (from s + 2t = 1).

The page is filled from integer valuations of q^j - 1 directly; ktheory
computes the other side of the comparison through its own formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ff import l_valuation
from .ktheory import LComplGroup, StabilityReport, k_F_completed, stability_check
from .skewring import _check_pair, tower_level


def _pi_completed(q: int, ell: int, k: int) -> LComplGroup:
    """pi_k of (K F_q)^_l."""
    if k < 0:
        return LComplGroup(ell)
    if k == 0:
        return LComplGroup(ell, 1)
    if k % 2 == 0:
        return LComplGroup(ell)
    v = l_valuation(q ** ((k + 1) // 2) - 1, ell)
    return LComplGroup(ell, 0, (ell ** v,) if v else ())


@dataclass(frozen=True)
class E1Page:
    p: int
    ell: int
    q: int
    t_range: tuple[int, int]
    s_range: tuple[int, int]
    entries: dict = field(hash=False, compare=False)

    def entry(self, s: int, t: int) -> LComplGroup:
        return self.entries[(s, t)]

    def positions(self) -> list[tuple[int, int]]:
        return sorted(self.entries)

    def support(self) -> list[tuple[int, int]]:
        """Positions on the two diagonals s + 2t in {0, 1}."""
        return [st for st in self.positions() if st[0] + 2 * st[1] in (0, 1)]

    def nonzero(self) -> list[tuple[int, int]]:
        return [st for st in self.positions() if not self.entries[st].is_zero()]

    def differential(self, s: int, t: int) -> int:
        """Every differential on the page is zero."""
        return 0

    def total_degree(self, n: int) -> list[tuple[int, int]]:
        return [st for st in self.positions() if st[0] + st[1] == n]

    def render(self) -> str:
        """t increases to the right up to t_max, s increases upwards."""
        t0, t1 = self.t_range
        s0, s1 = self.s_range
        ts = list(range(t0, t1 + 1))
        cells = {st: str(g) for st, g in self.entries.items()}
        width = max([len(c) for c in cells.values()] + [len(str(t)) for t in ts] + [1])
        lab = max(len(str(s)) for s in range(s0, s1 + 1)) + 2
        lines = []
        for s in range(s1, s0 - 1, -1):
            row = "".join(cells[(s, t)].rjust(width + 2) for t in ts)
            lines.append(f"s={s}".rjust(lab + 2) + " |" + row)
        lines.append(" " * (lab + 3) + "+" + "-" * ((width + 2) * len(ts)))
        lines.append("t".rjust(lab + 2) + "  " + "".join(str(t).rjust(width + 2) for t in ts))
        return "\n".join(lines)


def e1_page(p: int, ell: int, t_min: int, t_max: int,
            s_min: int | None = None, s_max: int | None = None) -> E1Page:
    _check_pair(p, ell)
    if t_min > t_max:
        raise ValueError("empty t range")
    q = p ** tower_level(p, ell, 1).approximant_degree
    s_lo = -2 * t_max if s_min is None else s_min
    s_hi = 1 - 2 * t_min if s_max is None else s_max
    entries = {}
    for t in range(t_min, t_max + 1):
        for s in range(s_lo, s_hi + 1):
            if s + 2 * t in (0, 1):
                entries[(s, t)] = _pi_completed(q, ell, -t)
            else:
                entries[(s, t)] = LComplGroup(ell)
    return E1Page(p, ell, q, (t_min, t_max), (s_lo, s_hi), entries)


@dataclass(frozen=True)
class DCHomotopy:
    ell: int
    groups: dict = field(hash=False, compare=False)

    def __getitem__(self, n: int) -> LComplGroup:
        return self.groups[n]


def dc_homotopy(p: int, ell: int, n_max: int, page: E1Page | None = None) -> DCHomotopy:
    """pi_n of the derived completion for 0 <= n <= n_max, read off the collapsed page."""
    page = e1_page(p, ell, -n_max, 1) if page is None else page
    out = {}
    for n in range(n_max + 1):
        spots = page.total_degree(n)
        diag = [st for st in spots if st[0] + 2 * st[1] in (0, 1)]
        # each diagonal meets total degree n exactly once, so no extensions arise
        assert len({st[0] + 2 * st[1] for st in diag}) == len(diag)
        g = LComplGroup(ell)
        for st in spots:
            g = g + page.entry(*st)
        out[n] = g
    return DCHomotopy(ell, out)


@dataclass(frozen=True)
class MainReport:
    p: int
    ell: int
    n_max: int
    rows: tuple[tuple[int, LComplGroup, LComplGroup, bool], ...]
    stability: StabilityReport
    verdict: str

    def table(self) -> str:
        lines = [f"n  derived completion  |  K(F)^_{self.ell}  |  agree"]
        for n, a, b, ok in self.rows:
            lines.append(f"{n}  {a}  |  {b}  |  {'yes' if ok else 'NO'}")
        return "\n".join(lines)


def verify_main(p: int, ell: int, n_max: int) -> MainReport:
    """Degreewise comparison of the collapsed page with the K-groups of the tame closure.

    PASS needs agreement in every degree and a clean stability check for the
    approximating extension; a flagged stability check gives CONDITIONAL,
    a disagreement with a clean check gives FAIL.
    """
    _check_pair(p, ell)
    dc = dc_homotopy(p, ell, n_max)
    rows = []
    for n in range(n_max + 1):
        rhs = k_F_completed(p, ell, n)
        rows.append((n, dc[n], rhs, dc[n] == rhs))
    m = tower_level(p, ell, 1).approximant_degree
    stab = stability_check(p, ell, max(1, (n_max + 1) // 2), m)
    if not stab.clean:
        verdict = "CONDITIONAL"
    elif all(r[3] for r in rows):
        verdict = "PASS"
    else:
        verdict = "FAIL"
    return MainReport(p, ell, n_max, tuple(rows), stab, verdict)
