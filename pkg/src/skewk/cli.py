"""Command line interface: `skewk <command> ...`.

Exit codes: 0 success, 1 a mathematical disagreement was found, 2 bad input.
Configuration defaults can be overridden with SKEWK_* environment variables
(SKEWK_MAX_FIELD_SIZE, SKEWK_MAX_ORACLE_DIM, SKEWK_FORMAT, SKEWK_GRID_PRIMES,
SKEWK_GRID_MAX_N, SKEWK_GRID_MAX_DELTA, SKEWK_GRID_MAX_F, SKEWK_JOBS).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace

from .abgroup import AbGroup, Automorphism
from .errors import NonPrime, SkewKError, UsageError
from .ff import DEFAULT_FIELD_BOUND, is_prime
from .oracle import DEFAULT_ORACLE_DIM


@dataclass(frozen=True)
class Config:
    max_field_size: int = DEFAULT_FIELD_BOUND
    max_oracle_dim: int = DEFAULT_ORACLE_DIM
    format: str = "text"
    grid_primes: tuple[int, ...] = (2, 3, 5, 7)
    grid_max_N: int = 16
    grid_max_delta: int = 4
    grid_max_f: int = 2
    jobs: int = 1

    def __post_init__(self):
        for name in ("max_field_size", "max_oracle_dim", "grid_max_N", "grid_max_delta", "grid_max_f", "jobs"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        if self.format not in ("text", "json"):
            raise UsageError(f"format must be text or json, not {self.format}")
        bad = [p for p in self.grid_primes if not is_prime(p)]
        if bad:
            raise NonPrime(f"grid primes must be prime, got {bad}")

    @classmethod
    def from_env(cls, env=None) -> "Config":
        env = os.environ if env is None else env
        kw = {}
        for f in fields(cls):
            raw = env.get("SKEWK_" + f.name.upper())
            if raw is None:
                continue
            try:
                if f.name == "format":
                    kw[f.name] = raw
                elif f.name == "grid_primes":
                    kw[f.name] = _int_list(raw)
                else:
                    kw[f.name] = int(raw)
            except ValueError:
                raise UsageError(f"bad value for SKEWK_{f.name.upper()}: {raw!r}") from None
        return cls(**kw)


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def parse_theta(text: str | None, N: AbGroup) -> Automorphism:
    """'2' (a scalar) or rows separated by ';', entries by ',' (e.g. '1,0;1,1')."""
    if text is None:
        return Automorphism.identity(N)
    try:
        if ";" not in text and "," not in text:
            scalar, rows = int(text), None
        else:
            rows = tuple(tuple(int(x) for x in r.split(",")) for r in text.split(";"))
    except ValueError:
        raise UsageError(f"cannot parse theta {text!r}") from None
    return Automorphism.scalar(N, scalar) if rows is None else Automorphism(N, rows)


def _desc_from_args(a):
    from .skewring import SkewRingDesc
    orders = _int_list(a.N) if a.N else ()
    try:
        N = AbGroup(orders)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    desc = SkewRingDesc(a.p, a.f, a.n, N, parse_theta(a.theta, N))
    if desc.p ** desc.degree > a.config.max_field_size:
        from .errors import FieldBoundExceeded
        raise FieldBoundExceeded(f"{desc.p}^{desc.degree} exceeds the field bound {a.config.max_field_size}")
    return desc


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _group_json(g) -> dict:
    return g.as_dict()


def _lab(exps) -> str:
    return "[" + ",".join(str(x) for x in exps) + "]"


def cmd_decompose(a) -> tuple[int, str]:
    from .skewring import decompose
    desc = _desc_from_args(a)
    dec = decompose(desc)
    if a.config.format == "json":
        obj = {
            "desc": desc.as_dict(),
            "orbits": [[list(c.exps) for c in o.characters] for o in dec.orbits],
            "factors": [{"d": fa.matrix_size, "center_degree": fa.center_degree,
                         "multiplicity": fa.multiplicity} for fa in dec.factors],
            "dim_check": dec.dimension_check(),
        }
        return 0, _dumps(obj)
    lines = [f"desc {desc}"]
    for fa in dec.factors:
        orb = " ".join(_lab(c.exps) for c in fa.orbit.characters)
        lines.append(f"factor M({fa.matrix_size}, Z) [Z:F]={fa.center_degree} "
                     f"m={fa.multiplicity} orbit {orb}")
    total = sum(fa.matrix_size ** 2 * fa.center_degree for fa in dec.factors)
    lines.append(f"dim_check {'ok' if dec.dimension_check() else 'FAILED'} "
                 f"{total} = {desc.n}*{desc.group_order}")
    return 0, "\n".join(lines)


def _k0_render(k0, fmt, header) -> str:
    if fmt == "json":
        obj = dict(header)
        obj["basis"] = [list(b) for b in k0.basis]
        obj["rho"] = {_lab(b): [[list(c), k] for c, k in k0.rho_images[b].coeffs] for b in k0.basis}
        obj["products"] = [{"a": list(x), "b": list(y),
                            "result": [[list(l), r] for l, r in sorted(k0.product(x, y).items())]}
                           for i, x in enumerate(k0.basis) for y in k0.basis[i:]]
        return _dumps(obj)
    lines = [" ".join(f"{k} {v}" for k, v in header.items())]
    lines.append(f"rank {k0.rank}")
    for b in k0.basis:
        lines.append(f"rho V{_lab(b)} = {k0.rho_images[b]}")
    for i, x in enumerate(k0.basis):
        for y in k0.basis[i:]:
            prod = " + ".join(f"{r}*V{_lab(l)}" for l, r in sorted(k0.product(x, y).items()))
            lines.append(f"V{_lab(x)} * V{_lab(y)} = {prod}")
    return "\n".join(lines)


def cmd_k0(a) -> tuple[int, str]:
    from .skewring import k0_ring
    desc = _desc_from_args(a)
    k0 = k0_ring(desc)
    header = {"desc": desc.as_dict()} if a.config.format == "json" else {"desc": str(desc)}
    return 0, _k0_render(k0, a.config.format, header)


def cmd_tower(a) -> tuple[int, str]:
    from .skewring import decompose, tower_level
    lvl = tower_level(a.p, a.l, a.i, a.twist)
    model = lvl.finite_model()
    model_singletons = all(len(fa.orbit) == 1 for fa in decompose(model).factors)
    info = {"p": a.p, "ell": a.l, "i": a.i, "i_prime": lvl.i_prime, "order": lvl.order,
            "twist": lvl.twist, "basis": lvl.k0.rank, "singletons": lvl.all_singletons(),
            "group_ring": lvl.k0.is_character_ring(),
            "finite_model": model.as_dict(), "finite_model_singletons": model_singletons}
    if a.config.format == "json":
        return 0, _dumps(info)
    lines = [f"tower p={a.p} ell={a.l} i={a.i}",
             f"i' = {lvl.i_prime} (ord_{a.l}^{a.i}({a.p}) = {lvl.order})",
             f"twist = {lvl.twist}",
             f"orbits: {lvl.k0.rank}, all singletons: {'yes' if lvl.all_singletons() else 'no'}",
             f"K0 = Z[Z/{lvl.modulus}]: {'yes' if lvl.k0.is_character_ring() else 'no'}",
             f"finite model {model}: all singletons: {'yes' if model_singletons else 'no'}"]
    return 0, "\n".join(lines)


def cmd_colimit(a) -> tuple[int, str]:
    from .skewring import colimit_k0
    col = colimit_k0(a.p, a.l, a.imax, a.twist)
    inj = [col.transition_is_injective_ring_map(i) for i in range(1, a.imax)]
    sizes = [lvl.k0.rank for lvl in col.levels]
    info = {"p": a.p, "ell": a.l, "i_max": a.imax, "level_sizes": sizes,
            "transitions_injective": inj, "basis_size": len(col.basis())}
    if a.config.format == "json":
        return 0, _dumps(info)
    lines = [f"colimit p={a.p} ell={a.l} i_max={a.imax}",
             f"level sizes: {' '.join(str(s) for s in sizes)}"]
    for i, ok in enumerate(inj, start=1):
        lines.append(f"transition {i}->{i + 1}: a -> {a.l}a, injective ring map: {'yes' if ok else 'no'}")
    lines.append(f"truncated colimit: Z[(1/{a.l ** a.imax})Z/Z], basis {len(col.basis())}")
    return 0, "\n".join(lines)


def cmd_kgroups(a) -> tuple[int, str]:
    from .ktheory import k_F_completed, k_finite_field, l_complete
    from .skewring import _check_pair
    _check_pair(a.p, a.l)
    q = a.q if a.q else a.p
    rows = []
    for n in range(a.nmax + 1):
        k = k_finite_field(q, n)
        rows.append((n, k, l_complete(k, a.l), k_F_completed(a.p, a.l, n)))
    if a.config.format == "json":
        return 0, _dumps({"p": a.p, "ell": a.l, "q": q, "rows": [
            {"n": n, "k": k.as_dict(), "completed": c.as_dict(), "k_F": f.as_dict()}
            for n, k, c, f in rows]})
    lines = [f"K-groups q={q} ell={a.l}"]
    for n, k, c, f in rows:
        lines.append(f"n={n} K_n={k} completed={c} K_n(F)^={f}")
    return 0, "\n".join(lines)


def cmd_stability(a) -> tuple[int, str]:
    from .ktheory import stability_check
    rep = stability_check(a.p, a.l, a.jmax, a.mmax)
    if a.config.format == "json":
        return 0, _dumps({"p": a.p, "ell": a.l, "j_max": a.jmax, "m_max": a.mmax,
                          "clean": rep.clean,
                          "flagged": [{"j": j, "m": m, "v_mj": v, "v_j": b} for j, m, v, b in rep.flagged]})
    lines = [f"stability p={a.p} ell={a.l} j<={a.jmax} m<={a.mmax}: {'clean' if rep.clean else 'FLAGGED'}"]
    for j, m, v, b in rep.flagged:
        lines.append(f"flag j={j} m={m} v(p^{m * j}-1)={v} v(p^{j}-1)={b}")
    return 0, "\n".join(lines)


def _page_json(pg) -> dict:
    return {"p": pg.p, "ell": pg.ell, "q": pg.q, "t_range": list(pg.t_range),
            "s_range": list(pg.s_range),
            "entries": [{"s": s, "t": t, "group": pg.entry(s, t).as_dict()} for s, t in pg.support()]}


def cmd_e1page(a) -> tuple[int, str]:
    from .ss import e1_page
    pg = e1_page(a.p, a.l, a.tmin, a.tmax)
    if a.config.format == "json":
        return 0, _dumps(_page_json(pg))
    return 0, f"E1 page p={a.p} ell={a.l} q={pg.q} (all differentials zero)\n" + pg.render()


def cmd_verify_main(a) -> tuple[int, str]:
    from .ss import e1_page, verify_main
    rep = verify_main(a.p, a.l, a.nmax)
    code = 1 if rep.verdict == "FAIL" else 0
    if a.config.format == "json":
        obj = {"p": a.p, "ell": a.l, "n_max": a.nmax, "verdict": rep.verdict,
               "rows": [{"n": n, "dc": x.as_dict(), "k_F": y.as_dict(), "agree": ok}
                        for n, x, y, ok in rep.rows],
               "stability": {"clean": rep.stability.clean,
                             "flagged": [list(fl[:2]) for fl in rep.stability.flagged]}}
        if a.e1:
            obj["e1"] = _page_json(e1_page(a.p, a.l, a.e1[0], a.e1[1]))
        return code, _dumps(obj)
    lines = [f"verify-main p={a.p} ell={a.l} n<={a.nmax}"]
    for n, x, y, ok in rep.rows:
        lines.append(f"n={n} dc={x} K(F)^={y} {'agree' if ok else 'DISAGREE'}")
    for j, m, v, b in rep.stability.flagged:
        lines.append(f"stability flag j={j} m={m} v(p^{m * j}-1)={v} v(p^{j}-1)={b}")
    if a.e1:
        lines.append(e1_page(a.p, a.l, a.e1[0], a.e1[1]).render())
    lines.append(f"verdict {rep.verdict}")
    return code, "\n".join(lines)


def cmd_oracle_grid(a) -> tuple[int, str]:
    from .grid import GridBounds, run_grid, summary_line
    c = a.config
    b = GridBounds(primes=c.grid_primes, max_f=c.grid_max_f, max_n=c.grid_max_delta,
                   max_N=c.grid_max_N, max_dim=c.max_oracle_dim, field_bound=c.max_field_size)
    verdicts = run_grid(b, jobs=c.jobs)
    bad = any(v.status == "MISMATCH" for v in verdicts)
    summary = summary_line(verdicts)
    if c.format == "json":
        obj = {"bounds": {"primes": list(b.primes), "max_f": b.max_f, "max_delta": b.max_n,
                          "max_N": b.max_N, "max_dim": b.max_dim, "field_bound": b.field_bound},
               "results": [{"desc": str(v.item), "status": v.status, "detail": v.detail}
                           for v in verdicts],
               "summary": summary}
        return (1 if bad else 0), _dumps(obj)
    lines = [v.line() for v in verdicts] + [summary]
    return (1 if bad else 0), "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--max-field-size", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-oracle-dim", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="skewk", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    def desc_args(sp):
        sp.add_argument("-p", type=int, required=True)
        sp.add_argument("-f", type=int, default=1)
        sp.add_argument("-n", type=int, default=1)
        sp.add_argument("-N", default="", help="invariant factors, e.g. 3 or 2,4")
        sp.add_argument("--theta", help="scalar, or matrix rows 'a,b;c,d'")

    def pl(sp):
        sp.add_argument("-p", type=int, required=True)
        sp.add_argument("-l", type=int, required=True)

    sp = add("decompose", "Wedderburn factors of E<G>")
    desc_args(sp)
    sp.set_defaults(func=cmd_decompose)
    sp = add("k0", "K0 with tensor structure constants")
    desc_args(sp)
    sp.set_defaults(func=cmd_k0)
    sp = add("tower", "one level of the Z/l^i x| Z/l^i' tower")
    pl(sp)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("--twist", type=int)
    sp.set_defaults(func=cmd_tower)
    sp = add("colimit", "truncated colimit of the tower K0 rings")
    pl(sp)
    sp.add_argument("--imax", type=int, required=True)
    sp.add_argument("--twist", type=int)
    sp.set_defaults(func=cmd_colimit)
    sp = add("kgroups", "K-groups of F_q and their l-completions")
    pl(sp)
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("-q", type=int, help="field size (default p)")
    sp.set_defaults(func=cmd_kgroups)
    sp = add("stability", "prime-to-l stability of l-adic valuations")
    pl(sp)
    sp.add_argument("--jmax", type=int, default=6)
    sp.add_argument("--mmax", type=int, default=10)
    sp.set_defaults(func=cmd_stability)
    sp = add("e1page", "render the E1 page")
    pl(sp)
    sp.add_argument("--tmin", type=int, default=-3)
    sp.add_argument("--tmax", type=int, default=0)
    sp.set_defaults(func=cmd_e1page)
    sp = add("verify-main", "degreewise homotopy comparison")
    pl(sp)
    sp.add_argument("--nmax", type=int, default=20)
    sp.add_argument("--e1", type=int, nargs=2, metavar=("TMIN", "TMAX"))
    sp.set_defaults(func=cmd_verify_main)
    sp = add("oracle-grid", "compare formulas with the brute-force oracle")
    sp.add_argument("--primes", help="comma separated primes")
    sp.add_argument("--fmax", type=int)
    sp.add_argument("--nmax", type=int, help="largest |Delta|")
    sp.add_argument("--Nmax", type=int, help="largest |N|")
    sp.set_defaults(func=cmd_oracle_grid)
    return ap


def _config(a) -> Config:
    cfg = Config.from_env()
    kw = {}
    if getattr(a, "json", False):
        kw["format"] = "json"
    elif getattr(a, "format", None):
        kw["format"] = a.format
    for name in ("max_field_size", "max_oracle_dim", "jobs"):
        if getattr(a, name, None) is not None:
            kw[name] = getattr(a, name)
    if a.command == "oracle-grid":
        if a.primes is not None:
            kw["grid_primes"] = _int_list(a.primes)
        if a.fmax is not None:
            kw["grid_max_f"] = a.fmax
        if a.nmax is not None:
            kw["grid_max_delta"] = a.nmax
        if a.Nmax is not None:
            kw["grid_max_N"] = a.Nmax
    return replace(cfg, **kw)


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        a.config = _config(a)
    except SkewKError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"USAGE: {exc}", file=sys.stderr)
        return 2
    try:
        code, out = a.func(a)
    except SkewKError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
