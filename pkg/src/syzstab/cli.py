"""Command-line front end: ``syzstab <command> ...`` (or ``python3 -m syzstab``)."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import divisors as D
from . import gallery as G
from .ideals import IdealFileError, dumps_ideal, load_ideal
from .koszul import SyzygyPointUndefined, betti_table, default_threads, koszul_dim, syzygy_kernel
from .polyring import PolynomialSyntaxError
from .stability import (
    LIMIT_CUTOFF,
    OneParamSubgroup,
    hm_report,
    hm_weight,
    limit_scheme,
    probe_1ps_family,
)
from .verify import format_report, run_anchors

MAX_R = 10
MAX_Q = 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    sub: str | None = None
    fmt: str = "pretty"
    threads: int = 1
    force: bool = False
    pmax: int | None = None
    qmax: int = MAX_Q
    options: dict = field(default_factory=dict)

    def check_bounds(self, r: int):
        if self.force:
            return
        if r > MAX_R:
            raise UsageError(f"r = {r} exceeds the desk-scale bound {MAX_R}; use --force")
        if self.qmax > MAX_Q:
            raise UsageError(f"qmax = {self.qmax} exceeds {MAX_Q}; use --force")
        if self.pmax is not None and self.pmax > r - 2:
            raise UsageError(f"pmax = {self.pmax} exceeds r-2 = {r - 2}; use --force")


def resolve_scheme(spec: str):
    """A gallery name or the path of an ideal file."""
    if spec in G.names() or spec in G.RESERVED:
        return G.get(spec).obj
    path = Path(spec)
    if path.exists():
        return load_ideal(path, name=path.stem)
    raise G.UnknownSchemeError(f"unknown scheme {spec!r} (not a gallery name or a file)")


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _emit(data, fmt: str, pretty: str, csv: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(data)
    if fmt == "csv":
        return csv if csv is not None else "\n".join(f"{k},{v}" for k, v in data.items())
    return pretty


# ---------------------------------------------------------------------------
# command handlers, each returning (exit code, text)


def cmd_gallery(cfg: RunConfig):
    sub = cfg.sub
    if sub == "list":
        rows = [(n, G.get(n).description) for n in G.names()]
        data = {"schemes": [{"name": n, "description": d} for n, d in rows], "reserved": list(G.RESERVED)}
        pretty = "\n".join(f"{n:<16} {d}" for n, d in rows) + "\nreserved (not constructed): " + ", ".join(G.RESERVED)
        csv = "name,description\n" + "\n".join(f'{n},"{d}"' for n, d in rows)
        return 0, _emit(data, cfg.fmt, pretty, csv)
    item = G.get(cfg.options["name"])
    if sub == "show":
        checks = item.run_checks()
        ok = all(v[0] for v in checks.values())
        data = {
            "name": item.name,
            "r": item.r,
            "description": item.description,
            "checks": [
                {"key": k, "expected": c.value, "observed": got, "ok": good, "tag": c.tag, "cite": c.cite}
                for k, (good, got, c) in checks.items()
            ],
        }
        lines = [f"{item.name}: {item.description} (r={item.r})"]
        for k, (good, got, c) in checks.items():
            lines.append(f"  [{'ok' if good else 'FAIL'}] {k} = {got} (expected {c.value}, {c.tag})")
        csv = "key,expected,observed,ok\n" + "\n".join(f"{k},{c.value},{got},{good}" for k, (good, got, c) in checks.items())
        return (0 if ok else 1), _emit(data, cfg.fmt, "\n".join(lines), csv)
    if sub == "export":
        text = dumps_ideal(item.obj, max_degree=cfg.options.get("max_degree", 4))
        out = cfg.options.get("out")
        if out:
            Path(out).write_text(text)
            return 0, f"wrote {out}"
        return 0, text.rstrip("\n")
    raise UsageError(f"unknown gallery command {sub!r}")


def cmd_betti(cfg: RunConfig):
    X = resolve_scheme(cfg.options["scheme"])
    cfg.check_bounds(X.r)
    B = betti_table(X, pmax=cfg.pmax, qmax=cfg.qmax, threads=cfg.threads, name=cfg.options["scheme"])
    if cfg.fmt == "json":
        return 0, B.to_json()
    if cfg.fmt == "csv":
        return 0, B.to_csv()
    return 0, B.pretty()


def cmd_koszul(cfg: RunConfig):
    X = resolve_scheme(cfg.options["scheme"])
    cfg.check_bounds(X.r)
    p, q = cfg.options["p"], cfg.options["q"]
    if not (0 <= p <= X.r) or q < 0:
        raise UsageError(f"(p,q) = ({p},{q}) out of range for r = {X.r}")
    data = {"scheme": cfg.options["scheme"], "p": p, "q": q, "dim": koszul_dim(X, p, q)}
    if cfg.options.get("kernel"):
        data["kernel_dim"] = syzygy_kernel(X, p, q).dim
    pretty = f"dim K_{{{p},{q}}} = {data['dim']}"
    if "kernel_dim" in data:
        pretty += f"\nsyzygy kernel dimension = {data['kernel_dim']}"
    return 0, _emit(data, cfg.fmt, pretty)


def cmd_git(cfg: RunConfig):
    o = cfg.options
    X = resolve_scheme(o["scheme"])
    rho = OneParamSubgroup.parse(o["rho"])
    sub = cfg.sub
    if sub == "hm":
        mu = hm_weight(X, o["p"], o["q"], rho)
        data = {"scheme": o["scheme"], "p": o["p"], "q": o["q"], "rho": list(rho.weights), "mu": mu,
                "verdict": "unstable" if mu < 0 else "not destabilized (probe)"}
        return 0, _emit(data, cfg.fmt, f"mu = {mu} ({data['verdict']})")
    if sub == "vgit":
        beta = Fraction(o["beta"])
        if o.get("probe"):
            family = [OneParamSubgroup.parse(s) for s in o["probe"]]
            reps = probe_1ps_family(X, family, beta, threads=cfg.threads)
            data = [r.to_dict() for r in reps]
            pretty = "\n".join(f"{r.rho}: weight {r.weight}, {r.verdicts[0]}" for r in reps)
            return 0, json.dumps(data) if cfg.fmt == "json" else pretty
        rep = hm_report(X, rho, beta)
        data = rep.to_dict()
        pretty = f"weight {rep.weight} at beta = {beta}: {rep.verdict_at(beta)}\nmu02 = {rep.mu02}, mu12 = {rep.mu12}"
        return 0, _emit(data, cfg.fmt, pretty)
    if sub == "wall":
        rep = hm_report(X, rho)
        data = rep.to_dict()
        pretty = f"wall: {'none' if rep.wall_beta is None else rep.wall_beta}\n" + "\n".join(rep.verdicts)
        return 0, _emit(data, cfg.fmt, pretty)
    if sub == "limit":
        cutoff = o.get("cutoff", LIMIT_CUTOFF)
        L = limit_scheme(X, rho, cutoff=cutoff, force=cfg.force)
        text = dumps_ideal(L, max_degree=cutoff)
        return 0, text.rstrip("\n")
    raise UsageError(f"unknown git command {sub!r}")


def cmd_divisor(cfg: RunConfig):
    o = cfg.options
    sub = cfg.sub
    if sub == "k3":
        C = D.c1_S_pq_k3(o["g"], o["p"], o["q"])
        C = C.to_basis("K3A" if o.get("basis", "B") == "A" else "K3B")
    elif sub == "mg":
        C = D.c1_S_pq_mg(o["g"], o["p"], o["q"])
    elif sub == "hk":
        beta = Fraction(o["beta"])
        C = D.polarization(beta)
        data = C.to_dict()
        data["slope"] = _frac(D.slope(C))
        data["alpha"] = _frac(D.alpha_of_beta(beta))
        pretty = f"{C.format()}\nslope {D.slope(C)}\nalpha {D.alpha_of_beta(beta)}"
        return 0, _emit(data, cfg.fmt, pretty, f"lambda,delta,slope,alpha\n{C['lambda']},{C['delta']},{D.slope(C)},{D.alpha_of_beta(beta)}")
    else:
        raise UsageError(f"unknown divisor command {sub!r}")
    data = C.to_dict()
    csv = ",".join(s for s, _ in C.coeffs) + "\n" + ",".join(str(v) for _, v in C.coeffs)
    return 0, _emit(data, cfg.fmt, C.format(), csv)


def cmd_verify(cfg: RunConfig):
    results = run_anchors()
    code = 0 if all(r.ok for r in results) else 1
    return code, format_report(results, cfg.fmt)


HANDLERS = {
    "gallery": cmd_gallery,
    "betti": cmd_betti,
    "koszul": cmd_koszul,
    "git": cmd_git,
    "divisor": cmd_divisor,
    "verify": cmd_verify,
}


def run(cfg: RunConfig):
    """Execute a configured command; returns ``(exit_code, text)``."""
    try:
        return HANDLERS[cfg.command](cfg)
    except (G.UnknownSchemeError, IdealFileError, PolynomialSyntaxError, SyzygyPointUndefined, UsageError, NotImplementedError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        return 2, f"error: {msg}"


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default $SYZSTAB_THREADS or 1)")
    common.add_argument("--force", action="store_true", help="lift desk-scale cutoffs")

    ap = argparse.ArgumentParser(prog="syzstab", description="Syzygy points, Koszul cohomology and GIT weights.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gallery", parents=[common], help="named schemes")
    gs = g.add_subparsers(dest="sub", required=True)
    gs.add_parser("list", parents=[common])
    show = gs.add_parser("show", parents=[common])
    show.add_argument("name")
    exp = gs.add_parser("export", parents=[common])
    exp.add_argument("name")
    exp.add_argument("--out")
    exp.add_argument("--max-degree", type=int, default=4)

    b = sub.add_parser("betti", parents=[common], help="Betti table from Koszul cohomology")
    b.add_argument("--scheme", required=True)
    b.add_argument("--pmax", type=int)
    b.add_argument("--qmax", type=int, default=MAX_Q)

    k = sub.add_parser("koszul", parents=[common], help="a single Koszul cohomology dimension")
    k.add_argument("--scheme", required=True)
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--q", type=int, required=True)
    k.add_argument("--kernel", action="store_true", help="also report the syzygy kernel dimension")

    gi = sub.add_parser("git", parents=[common], help="Hilbert-Mumford weights")
    gis = gi.add_subparsers(dest="sub", required=True)
    for name in ("hm", "vgit", "wall", "limit"):
        sp = gis.add_parser(name, parents=[common])
        sp.add_argument("--scheme", required=True)
        sp.add_argument("--rho", required=True, help="comma-separated weights summing to 0")
        if name == "hm":
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--q", type=int, required=True)
        if name == "vgit":
            sp.add_argument("--beta", required=True, help="rational, e.g. 4 or 7/2")
            sp.add_argument("--probe", action="append", help="extra 1-PS to probe (repeatable)")
        if name == "limit":
            sp.add_argument("--cutoff", type=int, default=LIMIT_CUTOFF)

    d = sub.add_parser("divisor", parents=[common], help="divisor class calculators")
    ds = d.add_subparsers(dest="sub", required=True)
    for name in ("k3", "mg"):
        sp = ds.add_parser(name, parents=[common])
        sp.add_argument("--g", type=int, required=True)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        if name == "k3":
            sp.add_argument("--basis", choices=("A", "B"), default="B")
    hk = ds.add_parser("hk", parents=[common])
    hk.add_argument("--beta", required=True)

    sub.add_parser("verify", parents=[common], help="recompute every regression anchor")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    skip = {"command", "sub", "format", "threads", "force", "pmax", "qmax"}
    opts = {k: v for k, v in vars(ns).items() if k not in skip and v is not None}
    return RunConfig(
        command=ns.command,
        sub=getattr(ns, "sub", None),
        fmt=ns.format,
        threads=ns.threads if ns.threads is not None else default_threads(),
        force=ns.force,
        pmax=getattr(ns, "pmax", None),
        qmax=getattr(ns, "qmax", None) or MAX_Q,
        options=opts,
    )


def _glue_negative_values(argv: list) -> list:
    # "--rho -7,-1,..." would otherwise be read as an unknown flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--rho", "--probe", "--beta"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = build_parser().parse_args(_glue_negative_values(argv))
    code, text = run(config_from_args(ns))
    stream = sys.stderr if code == 2 else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
