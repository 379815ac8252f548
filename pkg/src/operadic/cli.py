"""Command-line entry point: ``operadic <command> ...``.

Exit status: 0 when every check matched, 1 on a mismatch, 2 on usage,
configuration or unsupported-parameter errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from math import factorial

from . import operads as ops
from .cache import CacheCorrupted, ConfigError, HomologyCache, RunConfig, canonical_json
from .squares import SQUARE_NAMES, Report, UnsupportedParameters, koszul_report, non_pushout_report, square_check

OK, MISMATCH, USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# names


def parse_operad(token: str) -> ops.Operad:
    """One, Com, Ass, Lie, SpectralLie, Pois<n>, optionally prefixed by s^<k>."""
    m = re.fullmatch(r"s\^(-?\d+)(.+)", token)
    if m:
        return ops.suspended(parse_operad(m.group(2)), int(m.group(1)))
    m = re.fullmatch(r"Pois(\d+)", token)
    if m:
        n = int(m.group(1))
        if n > 4:
            raise UnsupportedParameters(f"Pois{n} is outside the implemented range n <= 4")
        return ops.pois(n)
    try:
        return ops.builtin(token)
    except ops.UnknownOperad:
        raise UsageError(f"unknown operad {token!r}") from None


def _known_morphisms():
    yield ops.lie_to_ass()
    for m in range(0, 5):
        yield ops.iota(m, None)
        for n in range(1, 5 - m):
            yield ops.iota(m, n)
    for k in range(1, 5):
        for m in range(0, 5 - k):
            yield ops.beta_power(k, m)
    for n in range(1, 5):
        yield ops.suspension_morphism_shadow(ops.SPECTRAL_LIE, n)


def parse_module(token: str, o: ops.Operad, side: str) -> ops.SideModule:
    """'1' is the trivial module, the operad's own name the regular one, else a known morphism O -> token."""
    if token == "1":
        return ops.trivial_module(o, side)
    if token in ("O", o.name):
        return ops.regular_module(o, side)
    for f in _known_morphisms():
        if f.source.name == o.name and f.target.name == token:
            return ops.module_along(f, side)
    raise UsageError(f"no built-in morphism {o.name} -> {token}")


def parse_space(text: str):
    """'0:1,1:2' -> graded space with dim 1 in degree 0 and dim 2 in degree 1."""
    from .symseq import GradedSpace

    dims = {}
    for part in filter(None, text.split(",")):
        try:
            d, c = part.split(":")
            dims[int(d)] = dims.get(int(d), 0) + int(c)
        except ValueError:
            raise UsageError(f"bad graded space {text!r}; expected degree:dim,...") from None
    return GradedSpace.from_dims(dims)


def _dims(d: dict) -> dict:
    return {str(k): v for k, v in sorted(d.items())}


# ---------------------------------------------------------------------------
# commands; each returns (report dict, text, matched)


def cmd_tables(args, cfg):
    names = ["One", "Com", "Ass", "Lie", "SpectralLie", "Pois2", "Pois3"]
    rows = []
    for n in range(1, cfg.max_arity + 1):
        row = {"arity": n}
        for name in names:
            row[name] = _dims(parse_operad(name).dims(n))
        rows.append(row)
    ok = all(ops.COM.dim(n) == 1 and ops.ASS.dim(n) == factorial(n) and ops.LIE.dim(n) == factorial(n - 1)
             for n in range(1, cfg.max_arity + 1))
    lines = ["arity  " + "  ".join(f"{x:<12}" for x in names)]
    for row in rows:
        cells = [",".join(f"{d}:{c}" for d, c in row[x].items()) or "0" for x in names]
        lines.append(f"{row['arity']:>5}  " + "  ".join(f"{c:<12}" for c in cells))
    return {"command": "tables", "rows": rows, "match": ok}, "\n".join(lines), ok


def cmd_compose(args, cfg):
    from .symmetry import graded_character, plethysm_dim
    from .symseq import compose

    a, b = parse_operad(args.a).symseq(cfg.max_arity), parse_operad(args.b).symseq(cfg.max_arity)
    c = compose(a, b)
    ca = {j: graded_character(a[j]) for j in range(1, cfg.max_arity + 1)}
    cb = {j: graded_character(b[j]) for j in range(1, cfg.max_arity + 1)}
    rows = []
    for n in range(1, cfg.max_arity + 1):
        rows.append({"arity": n, "dims": _dims(c.dims(n)), "total": c[n].dim,
                     "plethysm": plethysm_dim(ca, cb, n)})
    ok = all(r["total"] == r["plethysm"] for r in rows)
    lines = [f"({args.a} o {args.b})(n): coinvariants vs plethysm"]
    lines += [f"  {r['arity']:>2}  {r['total']:>8}  {r['plethysm']:>8}  {r['dims']}" for r in rows]
    return {"command": "compose", "a": args.a, "b": args.b, "rows": rows, "match": ok}, "\n".join(lines), ok


def cmd_bar(args, cfg):
    from .bar import bar_complex

    o = parse_operad(args.o)
    m, n = parse_module(args.m, o, "right"), parse_module(args.n, o, "left")
    rows, ok = [], True
    for k in range(1, cfg.max_arity + 1):
        bc = bar_complex(m, o, n, k)
        squares = bc.differential_squares_to_zero()
        ok = ok and squares
        rows.append({"arity": k, "chain_dims": _dims(bc.chain_dims()), "homology": _dims(bc.homology(cfg.prime)),
                     "d_squared_zero": squares})
    lines = [f"H(B({args.m}, {args.o}, {args.n}))" + (f" over F_{cfg.prime}" if cfg.prime else "")]
    lines += [f"  {r['arity']:>2}  {r['homology']}" for r in rows]
    return {"command": "bar", "m": args.m, "o": args.o, "n": args.n, "field": cfg.field, "rows": rows,
            "match": ok}, "\n".join(lines), ok


def _report_out(rep: Report):
    if rep.status != "ok":
        raise UnsupportedParameters(rep.note)
    text = rep.table()
    if not rep.match:
        diff = [f"  arity {r.arity}: expected {r.expected} computed {r.computed}" for r in rep.rows if not r.match]
        text += "\nmismatch:\n" + "\n".join(diff)
    return rep.to_dict(), text, rep.match


def cmd_square(args, cfg):
    cache_dir = cfg.resolved_cache_dir()
    cache = HomologyCache(cache_dir) if cache_dir else None
    rep = square_check(args.name, cfg.max_arity, k=args.k, m=args.m, n=args.n, workers=cfg.workers, cache=cache)
    return _report_out(rep)


def cmd_koszul(args, cfg):
    return _report_out(koszul_report(parse_operad(args.o), cfg.max_arity))


def cmd_e1page(args, cfg):
    from .spectral import skeletal_e1_page
    from .squares import _check_n

    _check_n(args.n)
    page = skeletal_e1_page(args.n, parse_space(args.x), args.weight)
    lines = [f"E^1 page for 1 o_L s^{args.n} L on x = {args.x}"]
    for w, p in page["weights"].items():
        lines.append(f"  weight {w}: E1 {p['e1']} d1 {p['d1']} abutment {p['abutment']} "
                     f"expected {p['expected']} {'yes' if p['match'] else 'NO'}")
    return _jsonable(page), "\n".join(lines), page["match"]


def cmd_non_pushout(args, cfg):
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    rep = non_pushout_report(range(2, args.max_n + 1))
    lines = ["   n  Com      Ass      Lie      chi"]
    lines += [f"  {r['n']:>2}  {r['com']:<7}  {r['ass']:<7}  {r['lie']:<7}  {r['chi']}" for r in rep["rows"]]
    return rep, "\n".join(lines), rep["match"]


def cmd_pbw(args, cfg):
    from .pbw import BUILTIN_LIE, JacobiError, certificate_table, lie_from_json, pbw_certificate

    if args.algfile.startswith("builtin:"):
        key = args.algfile.split(":", 1)[1]
        if key not in BUILTIN_LIE:
            raise UsageError(f"unknown built-in Lie algebra {key!r}; known: {sorted(BUILTIN_LIE)}")
        g = BUILTIN_LIE[key]()
    else:
        try:
            with open(args.algfile) as fh:
                g = lie_from_json(fh.read(), name=args.algfile, validate=False)
        except OSError as exc:
            raise UsageError(str(exc)) from None
    cert = pbw_certificate(g, args.weight)
    return cert, certificate_table(cert), cert["match"]


def cmd_envelope(args, cfg):
    from .pbw import envelope_gr_dims

    res = envelope_gr_dims(args.k, args.n, parse_space(args.x), args.weight)
    if res["status"] != "ok":
        raise UnsupportedParameters(res["note"])
    lines = [f"gr of the envelope, k={args.k} n={args.n}, x = {args.x}"]
    lines += [f"  weight {w}: predicted {r['predicted']} bar {r['bar']} {'yes' if r['match'] else 'NO'}"
              for w, r in res["weights"].items()]
    return _jsonable(res), "\n".join(lines), res["match"]


def cmd_selftest(args, cfg):
    from .acceptance import CRITERIA, format_line, run_criterion

    rows, lines = [], []
    for number in CRITERIA:
        ok, detail = run_criterion(number)
        rows.append({"criterion": number, "passed": ok, "detail": detail})
        lines.append(format_line(number, ok, detail))
    ok = all(r["passed"] for r in rows)
    return {"command": "selftest", "rows": rows, "match": ok}, "\n".join(lines), ok


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--field", help="'rationals' or a prime p")
    common.add_argument("--max-arity", type=int, dest="max_arity")
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("--format", choices=["json", "table"])
    common.add_argument("--workers", type=int)
    common.add_argument("--seed", type=int)

    p = argparse.ArgumentParser(prog="operadic", description="Exact operad, bar-construction and PBW checks.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("tables", parents=[common], help="dims of the built-in operads")
    c = sub.add_parser("compose", parents=[common], help="composition product vs plethysm")
    c.add_argument("a")
    c.add_argument("b")
    b = sub.add_parser("bar", parents=[common], help="homology of B(M, O, N)")
    b.add_argument("m")
    b.add_argument("o")
    b.add_argument("n")
    s = sub.add_parser("square", parents=[common], help="check a named composition square")
    s.add_argument("name", choices=SQUARE_NAMES)
    for flag in ("--k", "--m", "--n"):
        s.add_argument(flag, type=int)
    k = sub.add_parser("koszul", parents=[common], help="H(B(1, O, 1)) against the Koszul dual")
    k.add_argument("o")
    e = sub.add_parser("e1page", parents=[common], help="E^1 page of the skeletal filtration")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--weight", type=int, required=True)
    e.add_argument("--x", default="0:1", help="graded space as degree:dim,...")
    np_ = sub.add_parser("non-pushout", parents=[common], help="Euler characteristics chi(n)")
    np_.add_argument("--max-n", type=int, default=8, dest="max_n")
    w = sub.add_parser("pbw", parents=[common], help="PBW certificate for a Lie algebra")
    w.add_argument("algfile", help="JSON presentation, or builtin:<name>")
    w.add_argument("--weight", type=int, default=4)
    v = sub.add_parser("envelope", parents=[common], help="associated graded of the relative envelope")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--weight", type=int, required=True)
    v.add_argument("--x", default="0:1")
    sub.add_parser("selftest", parents=[common], help="run the full acceptance suite")
    return p


COMMANDS = {"tables": cmd_tables, "compose": cmd_compose, "bar": cmd_bar, "square": cmd_square,
            "koszul": cmd_koszul, "e1page": cmd_e1page, "non-pushout": cmd_non_pushout, "pbw": cmd_pbw,
            "envelope": cmd_envelope, "selftest": cmd_selftest}


def _config(args) -> RunConfig:
    overrides = {key: getattr(args, key) for key in ("field", "max_arity", "cache_dir", "format", "workers", "seed")}
    if args.config:
        return RunConfig.from_file(args.config, **overrides)
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        cfg = _config(args)
        report, text, ok = COMMANDS[args.command](args, cfg)
    except (UsageError, ConfigError, UnsupportedParameters, ops.UnknownOperad) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except CacheCorrupted as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return MISMATCH
    print(canonical_json(report) if cfg.format == "json" else text)
    return OK if ok else MISMATCH


if __name__ == "__main__":
    sys.exit(main())
