"""Command line interface.

    gf5lat code build|minweight|puncture
    gf5lat lattice fromcode|kissing|inv|shadow|neighbors|isom
    gf5lat theta check
    gf5lat verify table <id>
    gf5lat search

Exit status: 0 success, 1 verification mismatch (or inconclusive isometry),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, text: str | None = None, **record):
        if self.as_json:
            print(json.dumps(_jsonable(record), sort_keys=True), file=self.stream)
        else:
            if text is None:
                text = " ".join(f"{k}={_fmt(v)}" for k, v in record.items())
            print(text, file=self.stream)


# --------------------------------------------------------------- sources

def _add_source(p: argparse.ArgumentParser):
    p.add_argument("rows", nargs="*", help="first row(s), e.g. '(10033210404)' '(12241413344)'")
    p.add_argument("--table", help="table id (t2, t3, t5, t6, t7, t8)")
    p.add_argument("--index", type=int, help="row index within --table")
    p.add_argument("--family", choices=("qt", "four"), help="code family for explicit rows")


def _source(args):
    """(label, family, first rows) from --table/--index or explicit rows."""
    from gf5lat.codes import parse_first_row
    from gf5lat.tables import table_row

    if args.table is not None:
        if args.rows:
            raise UsageError("give either --table/--index or explicit rows, not both")
        if args.index is None:
            raise UsageError("--table needs --index")
        try:
            row = table_row(args.table, args.index)
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
        return f"{args.table}:{args.index}", row.family, row.rows
    if not args.rows:
        raise UsageError("no code given: use --table/--index or pass first rows")
    try:
        rows = tuple(parse_first_row(r) for r in args.rows)
    except ValueError as e:
        raise UsageError(str(e)) from None
    family = args.family or ("four" if len(rows) == 2 else "qt")
    if (family == "four") != (len(rows) == 2):
        raise UsageError("the four family takes two first rows, qt takes one")
    return " ".join(r.compact() for r in rows), family, rows


def _code(args):
    from gf5lat.workbench import build_code

    label, family, rows = _source(args)
    try:
        return label, build_code(family, rows)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _lattice(args):
    from gf5lat.gf5 import is_self_dual
    from gf5lat.lattice import construction_a

    label, code = _code(args)
    if not is_self_dual(code):
        return label, None
    return label, construction_a(code)


# --------------------------------------------------------------- handlers

def cmd_code_build(args, out: Output) -> int:
    from gf5lat.gf5 import is_self_dual

    label, code = _code(args)
    sd = is_self_dual(code)
    out.emit(code=label, n=code.n, k=code.k, self_dual=sd)
    if args.show:
        for row in code.generator:
            out.emit("".join(map(str, row)), row=[int(x) for x in row])
    return EXIT_OK


def cmd_code_minweight(args, out: Output) -> int:
    from gf5lat.minweight import brouwer_zimmermann

    label, code = _code(args)
    res = brouwer_zimmermann(code, stop_at=args.stop_at)
    out.emit(str(res), code=label, d=res.d, exact=res.exact)
    return EXIT_OK


def cmd_code_puncture(args, out: Output) -> int:
    from gf5lat.gf5 import puncture
    from gf5lat.minweight import brouwer_zimmermann

    label, code = _code(args)
    coords = range(code.n) if args.coordinate is None else [args.coordinate]
    status = EXIT_OK
    for j in coords:
        if not 0 <= j < code.n:
            raise UsageError(f"coordinate {j} out of range 0..{code.n - 1}")
        p = puncture(code, j)
        d = brouwer_zimmermann(p).d
        out.emit(f"coordinate {j}: [{p.n},{p.k},{d}]", coordinate=j, n=p.n, k=p.k, d=d)
        if args.expect_d is not None and d != args.expect_d:
            status = EXIT_MISMATCH
    return status


def cmd_lattice_fromcode(args, out: Output) -> int:
    label, lat = _lattice(args)
    if lat is None:
        out.emit(f"{label}: code is not self-dual", code=label, self_dual=False)
        return EXIT_MISMATCH
    if out.as_json:
        out.emit(code=label, denom=lat.denom, basis=[list(map(int, r)) for r in lat.hnf])
    else:
        print(f"{lat.n} {lat.denom}", file=out.stream)
        for r in lat.hnf:
            print(" ".join(map(str, r)), file=out.stream)
    return EXIT_OK


def _need_lattice(args, out):
    label, lat = _lattice(args)
    if lat is None:
        out.emit(f"{label}: code is not self-dual", code=label, self_dual=False)
    return label, lat


def cmd_lattice_kissing(args, out: Output) -> int:
    from gf5lat.lattice import kissing_number, minimum_norm

    label, lat = _need_lattice(args, out)
    if lat is None:
        return EXIT_MISMATCH
    m = minimum_norm(lat)
    out.emit(code=label, min=m, kissing=kissing_number(lat))
    return EXIT_OK


def cmd_lattice_inv(args, out: Output) -> int:
    from gf5lat.lattice import inv_pair, minimum_norm

    label, lat = _need_lattice(args, out)
    if lat is None:
        return EXIT_MISMATCH
    if minimum_norm(lat) != 4:
        out.emit(f"{label}: minimum norm is not 4; inv is undefined", code=label, min_norm_4=False)
        return EXIT_MISMATCH
    inv = inv_pair(lat)
    out.emit(f"inv0={inv.inv0} inv1={inv.inv1}", code=label, inv0=inv.inv0, inv1=inv.inv1,
             inv2=inv.inv2, half_kissing=inv.half_kissing)
    return _compare_expected(args, inv)


def _compare_expected(args, inv) -> int:
    if args.table is None:
        return EXIT_OK
    from gf5lat.tables import table_row

    exp = table_row(args.table, args.index).expected
    if exp is None or exp.inv0 is None:
        return EXIT_OK
    return EXIT_OK if (exp.inv0, exp.inv1) == (inv.inv0, inv.inv1) else EXIT_MISMATCH


def cmd_lattice_shadow(args, out: Output) -> int:
    from gf5lat.lattice import minimum_norm
    from gf5lat.lattice.shadow import ShadowDecomposition, is_s_extremal

    label, lat = _need_lattice(args, out)
    if lat is None:
        return EXIT_MISMATCH
    dec = ShadowDecomposition(lat)
    m = minimum_norm(lat)
    ext, sext = is_s_extremal(lat, dec, m)
    out.emit(code=label, min=m, shadow_min=dec.shadow_min, extremal=ext, s_extremal=sext)
    return EXIT_OK


def cmd_lattice_neighbors(args, out: Output) -> int:
    from gf5lat.lattice import kissing_number, minimum_norm
    from gf5lat.lattice.shadow import ShadowDecomposition, neighbors

    label, lat = _need_lattice(args, out)
    if lat is None:
        return EXIT_MISMATCH
    try:
        pair = neighbors(lat)
    except ValueError as e:
        raise UsageError(str(e)) from None
    for name, nb in zip(("N1", "N2"), pair):
        out.emit(code=label, neighbor=name, min=minimum_norm(nb), kissing=kissing_number(nb),
                 shadow_min=ShadowDecomposition(nb).shadow_min)
    return EXIT_OK


def cmd_lattice_isom(args, out: Output) -> int:
    from gf5lat.lattice.isometry import Outcome, isometry_search

    label, lat = _need_lattice(args, out)
    if lat is None:
        return EXIT_MISMATCH
    if args.other_index is not None:
        if args.table is None:
            raise UsageError("--other-index needs --table")
        other_args = argparse.Namespace(**{**vars(args), "index": args.other_index})
        other_label, other = _need_lattice(other_args, out)
        if other is None:
            return EXIT_MISMATCH
    elif args.with_neighbor:
        from gf5lat.lattice.shadow import neighbors

        other = neighbors(lat)[int(args.with_neighbor[1]) - 1]
        other_label = f"{args.with_neighbor}({label})"
    else:
        raise UsageError("give --other-index or --with-neighbor")
    res = isometry_search(lat, other, args.node_budget)
    out.emit(f"{label} vs {other_label}: {res.outcome.value} ({res.reason}, nodes={res.nodes})",
             a=label, b=other_label, outcome=res.outcome.value, reason=res.reason, nodes=res.nodes)
    return EXIT_MISMATCH if res.outcome is Outcome.INCONCLUSIVE else EXIT_OK


def cmd_theta_check(args, out: Output) -> int:
    from gf5lat import theta

    if args.table is None and not args.rows:
        if args.n is None:
            raise UsageError("give --n or a code")
        try:
            out.emit(f"theta_L = {theta.format_symbolic(args.n, 5)}", n=args.n, part="lattice",
                     series=theta.format_symbolic(args.n, 5))
            prec = Fraction(args.n, 4) % 2 + 4
            out.emit(f"theta_S = {theta.format_symbolic(args.n, prec, shadow=True)}", n=args.n,
                     part="shadow", series=theta.format_symbolic(args.n, prec, shadow=True))
        except ValueError as e:
            raise UsageError(str(e)) from None
        return EXIT_OK
    label, lat = _need_lattice(args, out)
    if lat is None:
        return EXIT_MISMATCH
    max_norm = args.max_norm
    ser = theta.theta_from_lattice(lat, max_norm)
    out.emit(f"theta_L = {ser}", code=label, theta=ser.terms())
    dec = theta.decompose_theta(lat.n, ser)
    out.emit(f"a = {list(dec.a)}", code=label, a=list(dec.a))
    if dec.complete and lat.n in theta.PARAMETRIZED_DIMENSIONS:
        params = theta.parameters(dec)
        out.emit(" ".join(f"{k}={_fmt(v)}" for k, v in params.items()), code=label, **params)
        prec = Fraction(lat.n, 4) % 2 + 4
        out.emit(f"theta_S = {theta.shadow_theta(dec, prec)}", code=label,
                 shadow=theta.shadow_theta(dec, prec).terms())
        return EXIT_OK if all(v == 0 for v in params.values()) else EXIT_MISMATCH
    return EXIT_OK


def cmd_verify_table(args, out: Output) -> int:
    from gf5lat.tables import TABLE_IDS, reference_table
    from gf5lat.workbench import parse_range, verify_row

    if args.table_id not in TABLE_IDS:
        raise UsageError(f"unknown table {args.table_id!r}; choose from {', '.join(TABLE_IDS)}")
    rows = {r.index: r for r in reference_table(args.table_id)}
    try:
        indices = parse_range(args.rows, sorted(rows))
    except ValueError as e:
        raise UsageError(str(e)) from None
    status = EXIT_OK
    for i in indices:
        rep = verify_row(rows[i], min_weight=not args.skip_min_weight, invariants=not args.skip_lattice)
        if out.as_json:
            out.emit(**rep.record())
        else:
            out.emit(rep.line())
        if not rep.ok:
            status = EXIT_MISMATCH
    return status


def cmd_search(args, out: Output) -> int:
    from gf5lat.workbench import SearchConfig, search

    try:
        cfg = SearchConfig(args.family, args.n, args.seed, args.budget, args.target_kissing)
        cfg.kissing
    except ValueError as e:
        raise UsageError(str(e)) from None
    rep = search(cfg)
    if out.as_json:
        print(rep.to_json_lines(), file=out.stream)
    else:
        for h in rep.hits:
            print(f"hit trial={h.trial} rows={' '.join(h.rows)} inv0={h.inv0} inv1={h.inv1} d={h.min_weight}",
                  file=out.stream)
        print(f"trials={rep.trials_run} self_dual={rep.self_dual} min_norm_4={rep.min_norm_4} "
              f"hits={len(rep.hits)} distinct_invariant_pairs={rep.distinct_invariant_pairs}", file=out.stream)
    return EXIT_OK


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON record per line")

    p = _Parser(prog="gf5lat", description="Self-dual GF(5) codes and their Construction-A lattices.",
                parents=[common])
    sub = p.add_subparsers(dest="group", parser_class=_Parser)
    sub.required = True

    code = sub.add_parser("code", help="build and analyse codes")
    csub = code.add_subparsers(dest="cmd", parser_class=_Parser)
    csub.required = True
    b = csub.add_parser("build", parents=[common])
    _add_source(b)
    b.add_argument("--show", action="store_true", help="print the generator matrix")
    b.set_defaults(func=cmd_code_build)
    m = csub.add_parser("minweight", parents=[common])
    _add_source(m)
    m.add_argument("--stop-at", type=int)
    m.set_defaults(func=cmd_code_minweight)
    pu = csub.add_parser("puncture", parents=[common])
    _add_source(pu)
    pu.add_argument("--coordinate", type=int, help="0-based coordinate (default: all)")
    pu.add_argument("--expect-d", type=int, help="exit 1 unless every punctured code has this d")
    pu.set_defaults(func=cmd_code_puncture)

    lat = sub.add_parser("lattice", help="Construction-A lattices")
    lsub = lat.add_subparsers(dest="cmd", parser_class=_Parser)
    lsub.required = True
    for name, func in (("fromcode", cmd_lattice_fromcode), ("kissing", cmd_lattice_kissing),
                       ("inv", cmd_lattice_inv), ("shadow", cmd_lattice_shadow),
                       ("neighbors", cmd_lattice_neighbors), ("isom", cmd_lattice_isom)):
        sp = lsub.add_parser(name, parents=[common])
        _add_source(sp)
        sp.set_defaults(func=func)
        if name == "isom":
            sp.add_argument("--other-index", type=int, help="compare with this row of the same table")
            sp.add_argument("--with-neighbor", choices=("N1", "N2"), help="compare with a neighbor")
            sp.add_argument("--node-budget", type=int, default=10**8)

    th = sub.add_parser("theta", help="theta series")
    tsub = th.add_subparsers(dest="cmd", parser_class=_Parser)
    tsub.required = True
    tc = tsub.add_parser("check", parents=[common])
    _add_source(tc)
    tc.add_argument("--n", type=int, help="print the symbolic series for this dimension")
    tc.add_argument("--max-norm", type=int, default=4)
    tc.set_defaults(func=cmd_theta_check)

    ver = sub.add_parser("verify", help="recompute the shipped tables")
    vsub = ver.add_subparsers(dest="cmd", parser_class=_Parser)
    vsub.required = True
    vt = vsub.add_parser("table", parents=[common])
    vt.add_argument("table_id")
    vt.add_argument("--rows", help="row range such as 1-5 or 1,3,7")
    vt.add_argument("--skip-min-weight", action="store_true")
    vt.add_argument("--skip-lattice", action="store_true")
    vt.set_defaults(func=cmd_verify_table)

    s = sub.add_parser("search", parents=[common], help="seeded randomized search")
    s.add_argument("--family", choices=("qt", "four"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=100)
    s.add_argument("--target-kissing", type=int)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, Output(args.json, stream))
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
