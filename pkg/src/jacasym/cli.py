"""Command-line front end: ``jacasym {eval,figure,sweep,selftest}``."""
from __future__ import annotations

import argparse
import itertools
import re
import sys
import time

from mpmath import mp

from .bounds import bound_for, certify
from .cgamma import EXTENDED_DPS, to_mp
from .coeffs import OffCutPoint, OnCutPoint, Params
from .errors import DomainError, JacasymError, PreconditionError
from .expand import ExpansionKind, evaluate, normalization
from . import runner

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _complex_arg(text: str):
    try:
        return to_mp(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _complex_list(text: str):
    return [_complex_arg(t) for t in text.split(",") if t.strip()]


def _order_list(text: str):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",")]


def _add_value(p, name, help_text):
    p.add_argument(f"--{name}", type=_complex_arg, help=f"{help_text} (complex, e.g. 200+50i)")
    p.add_argument(f"--{name}-re", type=float)
    p.add_argument(f"--{name}-im", type=float)


def _value(args, name, default=None):
    whole = getattr(args, name)
    re_, im_ = getattr(args, f"{name}_re"), getattr(args, f"{name}_im")
    if whole is not None and (re_ is not None or im_ is not None):
        raise argparse.ArgumentTypeError(f"give --{name} or --{name}-re/--{name}-im, not both")
    if whole is not None:
        return whole
    if re_ is None and im_ is None:
        return default
    return to_mp(complex(re_ or 0.0, im_ or 0.0))


def _common(p):
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--threads", type=int, default=None, help="worker processes (env JACASYM_THREADS wins)")
    p.add_argument("--oracle-precision", choices=("working", "extended"), default="extended")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="jacasym", description="Certified large-degree expansions of Jacobi functions.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate one truncated expansion")
    e.add_argument("--kind", required=True, choices=[k.value for k in ExpansionKind])
    _add_value(e, "nu", "degree")
    _add_value(e, "alpha", "alpha")
    _add_value(e, "beta", "beta")
    _add_value(e, "xi", "off-cut point xi")
    e.add_argument("--zeta", type=float, help="on-cut point zeta in (0, pi/2)")
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--M", type=int, default=None)
    e.add_argument("--certify", action="store_true", help="also compute oracle, bound and ratio")
    e.add_argument("--bound-variant", default="auto")
    e.add_argument("--tie", choices=("plus", "minus"), default="plus")
    _common(e)

    f = sub.add_parser("figure", help="emit one of the five figure scenarios")
    f.add_argument("n", type=int, choices=range(1, 6))
    f.add_argument("--points", type=int, default=runner.FIGURE_POINTS)
    f.add_argument("--detail", action="store_true", help="emit full records instead of the plot columns")
    _common(f)

    s = sub.add_parser("sweep", help="certification sweep over a grid")
    s.add_argument("--grid", choices=("acceptance",), help="predefined grid")
    s.add_argument("--kind", action="append", choices=[k.value for k in ExpansionKind])
    s.add_argument("--nu", type=_complex_list, help="comma-separated degrees")
    s.add_argument("--alpha", type=_complex_list)
    s.add_argument("--beta", type=_complex_list)
    s.add_argument("--xi", type=_complex_list)
    s.add_argument("--zeta", type=_complex_list)
    s.add_argument("--N", type=_order_list, default=[0, 1, 2, 3, 4, 5, 6], help="e.g. 0..6 or 2,4")
    s.add_argument("--bound-variant", default="auto")
    s.add_argument("--tie", choices=("plus", "minus"), default="plus")
    _common(s)

    t = sub.add_parser("selftest", help="quick end-to-end consistency checks")
    t.add_argument("--quiet", action="store_true")
    return ap


# ----------------------------------------------------------------- commands


def _emit(args, rows, meta=None, header=None):
    if args.format == "jsonl" and header is None:
        text = runner.write_jsonl(None, rows)
    else:
        text = runner.write_csv(None, header or runner.COLUMNS, rows, meta)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    kind = ExpansionKind.parse(args.kind)
    nu = _value(args, "nu")
    if nu is None:
        raise argparse.ArgumentTypeError("--nu (or --nu-re/--nu-im) is required")
    alpha = _value(args, "alpha", to_mp(0))
    beta = _value(args, "beta", to_mp(0))
    xi = _value(args, "xi")
    if kind.oncut and args.zeta is None:
        raise argparse.ArgumentTypeError(f"{kind.value} needs --zeta")
    if not kind.oncut and xi is None:
        raise argparse.ArgumentTypeError(f"{kind.value} needs --xi (or --xi-re/--xi-im)")
    row = _eval_row(kind, nu, alpha, beta, xi, args, certify_too=args.certify)
    _emit(args, [row])
    return EXIT_VIOLATION if row["passed"] is False else EXIT_OK


def _eval_row(kind, nu, alpha, beta, xi, args, certify_too):
    t0 = time.perf_counter_ns()
    with mp.workdps(EXTENDED_DPS):
        p = Params(nu, alpha, beta)
        pt = OnCutPoint(args.zeta) if kind.oncut else OffCutPoint(xi)
        r = evaluate(kind, p, pt, args.N, args.M, args.tie)
        row = {c: "" for c in runner.COLUMNS}
        row.update(kind=kind.value, nu_re=p.nu.real, nu_im=p.nu.imag, alpha_re=p.alpha.real,
                   alpha_im=p.alpha.imag, beta_re=p.beta.real, beta_im=p.beta.imag, N=r.N,
                   M=r.M if r.minus_sum is not None else "", tie=args.tie,
                   trunc_re=r.normalized_value.real, trunc_im=r.normalized_value.imag,
                   terminated=r.terminated, status="ok")
        if kind.oncut:
            row["zeta"] = pt.zeta
        else:
            row.update(xi_re=pt.xi.real, xi_im=pt.xi.imag)
        if certify_too:
            o = runner.oracle_for(kind, p, pt, args.oracle_precision)
            variant = None if args.bound_variant == "auto" else args.bound_variant
            rep = bound_for(r, variant, args.tie)
            c = certify(r, rep, o.value, o.err_budget)
            target = (o.value * normalization(kind, p)).value()
            row.update(oracle_re=target.real, oracle_im=target.imag, remainder=c.remainder, bound=c.bound,
                       ratio=None if c.ratio != c.ratio else c.ratio, variant=c.variant, passed=c.passed)
            if not rep.applicable:
                row["status"] = "no-bound: " + (rep.note or "strip conditions fail")
    row["wall_time_ns"] = time.perf_counter_ns() - t0
    return row


def cmd_figure(args) -> int:
    spec, detail, wide = runner.figure_rows(args.n, args.threads, args.points)
    meta = {"figure": spec.number, "kind": spec.kind, "bound-variant": spec.variant or "none",
            "scenario": spec.description, "points": args.points, "grid": "uniform, endpoints inclusive"}
    if args.detail:
        _emit(args, detail, meta)
    else:
        _emit(args, wide, meta, header=list(spec.columns))
    bad = [r for r in detail if r["status"] == "ok" and not r["passed"]]
    return EXIT_VIOLATION if bad else EXIT_OK


def _sweep_tasks(args):
    if args.grid == "acceptance":
        return runner.acceptance_tasks()
    kinds = [ExpansionKind.parse(k) for k in (args.kind or [k.value for k in ExpansionKind])]
    if not args.nu:
        raise argparse.ArgumentTypeError("sweep needs --grid or --nu")
    alphas = args.alpha or [to_mp(0)]
    betas = args.beta or [to_mp(0)]
    off = tuple(k.value for k in kinds if not k.oncut)
    on = tuple(k.value for k in kinds if k.oncut)
    variant = None if args.bound_variant == "auto" else args.bound_variant
    tasks = []
    for nu, a, b in itertools.product(args.nu, alphas, betas):
        if off:
            for xi in args.xi or []:
                tasks.append(runner.PointTask(nu, a, b, xi, False, off, tuple(args.N), args.tie, variant,
                                              args.oracle_precision))
        if on:
            for z in args.zeta or []:
                tasks.append(runner.PointTask(nu, a, b, z.real, True, on, tuple(args.N), args.tie, variant,
                                              args.oracle_precision))
    return tasks


def cmd_sweep(args) -> int:
    tasks = _sweep_tasks(args)
    if not tasks:
        print("jacasym: no evaluable points", file=sys.stderr)
        return EXIT_USAGE
    rows = runner.run_tasks(tasks, args.threads)
    s = runner.summarize(rows)
    if s.certified + s.no_bound == 0:
        print("jacasym: no evaluable points", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, rows, {"grid": args.grid or "custom", "tasks": len(tasks)})
    print(f"rows={s.rows} certified={s.certified} violations={s.violations} skipped={s.skipped} "
          f"no_bound={s.no_bound} max_ratio={s.max_ratio:.6g}", file=sys.stderr)
    return EXIT_VIOLATION if s.violations else EXIT_OK


def cmd_selftest(args) -> int:
    from .oracle import jacobi_P_oracle, jacobi_P_recurrence

    checks = []
    with mp.workdps(EXTENDED_DPS):
        p = Params(12, 0.3, -0.2)
        pt = OffCutPoint(to_mp("0.4+0.3i"))
        z = 2 * pt.cosh_xi ** 2 - 1
        a = jacobi_P_oracle(p, pt, check_recurrence=False).mp()
        b = jacobi_P_recurrence(12, p.alpha, p.beta, z)
        checks.append(("oracle vs recurrence", abs(a - b) <= 1e-25 * abs(b)))
    for kind, point in (("q-invfac", 0.75), ("p-invfac", to_mp("0.75+0.3i")), ("q-fac", 0.9),
                        ("p-oncut-invfac", 0.7), ("qroman-oncut-fac", 0.7), ("qsans-oncut-fac", 0.7)):
        k = ExpansionKind.parse(kind)
        rows = runner.run_task(runner.PointTask(to_mp(100), to_mp(0.2), to_mp(0.25), point, k.oncut,
                                                (kind,), (3,)))
        checks.append((f"{kind} certified", rows[0]["status"] == "ok" and rows[0]["passed"]))
    failed = [n for n, ok in checks if not ok]
    if not args.quiet:
        for n, ok in checks:
            print(f"{'PASS' if ok else 'FAIL'} {n}")
    return EXIT_VIOLATION if failed else EXIT_OK


_NEGATIVE = re.compile(r"^-\.?\d")


def _attach_negative_values(argv):
    """Rewrite '--alpha -0.1,0.2' as '--alpha=-0.1,0.2' so argparse sees a value."""
    out = []
    for tok in argv:
        if _NEGATIVE.match(tok) and out and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_negative_values(sys.argv[1:] if argv is None else list(argv)))
    handler = {"eval": cmd_eval, "figure": cmd_figure, "sweep": cmd_sweep, "selftest": cmd_selftest}[args.cmd]
    try:
        return handler(args)
    except PreconditionError as exc:
        print(f"jacasym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (argparse.ArgumentTypeError, DomainError, ValueError) as exc:
        print(f"jacasym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except JacasymError as exc:
        print(f"jacasym: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
