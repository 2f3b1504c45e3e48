"""Certification runs: single points, grid sweeps and the figure scenarios.

A sweep is split into tasks, one per (parameters, point) pair; a task
computes each needed oracle once and then evaluates every requested kind
and truncation order against it.  Tasks run in worker processes (the
mpmath context is global per process) and results are collected in
submission order, so output does not depend on the worker count.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .bounds import bound_for, certify
from .cgamma import EXTENDED_DPS, LogComplex, resolve_dps
from .coeffs import OffCutPoint, OnCutPoint, Params
from .errors import JacasymError, PreconditionError
from .expand import ExpansionKind, assemble, build, normalization, termination_order
from .oracle import jacobi_P_oracle, jacobi_Q_oracle, oncut_oracle

SCHEMA_VERSION = "1"
FIGURE_POINTS = 512

COLUMNS = ["kind", "nu_re", "nu_im", "alpha_re", "alpha_im", "beta_re", "beta_im",
           "xi_re", "xi_im", "zeta", "N", "M", "tie", "trunc_re", "trunc_im",
           "oracle_re", "oracle_im", "remainder", "bound", "ratio", "variant",
           "terminated", "passed", "status", "wall_time_ns"]


def fmt(x) -> str:
    """17 significant digits; empty for missing values."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, str)):
        return str(x)
    x = mpf(x) if not isinstance(x, float) else x
    if isinstance(x, float):
        return format(x, ".17g")
    if x == 0 or not mpmath.isfinite(x) or mpf("1e-300") < abs(x) < mpf("1e300"):
        return format(float(x), ".17g")
    return mpmath.nstr(x, 17, min_fixed=1, max_fixed=0)


def worker_count(requested: int | None = None) -> int:
    env = os.environ.get("JACASYM_THREADS")
    if env:
        return max(1, int(env))
    return max(1, requested or 1)


def oracle_for(kind: ExpansionKind, p: Params, point, precision="extended"):
    """The oracle value matching an expansion kind, as an OracleValue."""
    if kind.function == "P":
        return jacobi_P_oracle(p, point, precision)
    if kind.oncut:
        return oncut_oracle(kind.function, p, point, precision)
    return jacobi_Q_oracle(p, point, precision)


@dataclass(frozen=True)
class PointTask:
    """One (parameters, point) pair with the kinds and orders to certify."""

    nu: complex
    alpha: complex
    beta: complex
    point: float | complex
    oncut: bool
    kinds: tuple
    orders: tuple
    tie: str = "plus"
    variant: str | None = None
    precision: str = "extended"
    dps: int = EXTENDED_DPS


def _point_obj(task: PointTask):
    return OnCutPoint(task.point) if task.oncut else OffCutPoint(task.point)


def _skip(base: dict, reason: str) -> dict:
    row = dict(base)
    row["status"] = reason
    return row


def _certify_kind(kind, p, pt, orders, oracle, tie, variant, dps, base):
    rows = []
    nmax = max(orders)
    t = termination_order(p)
    if t is not None:
        nmax = min(nmax, t)
    try:
        b = build(kind, p, pt, nmax, dps)
    except JacasymError as exc:
        return [_skip(dict(base, N=N, M=N), f"skipped: {exc}") for N in orders]
    with mp.workdps(dps):
        norm = normalization(kind, p)
        target = (oracle.value * norm).value()
    for N in orders:
        row = dict(base, N=N, M=N if kind is ExpansionKind.P_offcut_invfac or kind is ExpansionKind.P_offcut_fac else "")
        t0 = time.perf_counter_ns()
        try:
            r = assemble(b, N, N, tie)
            rep = bound_for(r, variant, tie)
            c = certify(r, rep, oracle.value, oracle.err_budget)
        except PreconditionError as exc:
            rows.append(_skip(row, f"skipped: {exc}"))
            continue
        row.update(trunc_re=r.normalized_value.real, trunc_im=r.normalized_value.imag,
                   oracle_re=target.real, oracle_im=target.imag, remainder=c.remainder,
                   bound=c.bound, ratio=None if math.isnan(c.ratio) else c.ratio,
                   variant=c.variant, terminated=r.terminated, passed=c.passed,
                   status="ok" if rep.applicable else "no-bound: " + (rep.note or "strip conditions fail"),
                   wall_time_ns=time.perf_counter_ns() - t0)
        rows.append(row)
    return rows


def run_task(task: PointTask) -> list:
    """Certify every kind and order of a task; returns row dicts."""
    with mp.workdps(task.dps):
        p = Params(task.nu, task.alpha, task.beta)
        pt = _point_obj(task)
        base = {c: "" for c in COLUMNS}
        base.update(nu_re=p.nu.real, nu_im=p.nu.imag, alpha_re=p.alpha.real, alpha_im=p.alpha.imag,
                    beta_re=p.beta.real, beta_im=p.beta.imag, tie=task.tie)
        if task.oncut:
            base["zeta"] = pt.zeta
        else:
            base.update(xi_re=pt.xi.real, xi_im=pt.xi.imag)
        rows = []
        cache = {}
        for kname in task.kinds:
            kind = ExpansionKind.parse(kname)
            kb = dict(base, kind=kind.value)
            key = kind.function
            if key not in cache:
                try:
                    cache[key] = oracle_for(kind, p, pt, task.precision)
                except JacasymError as exc:
                    cache[key] = exc
            oracle = cache[key]
            if isinstance(oracle, Exception):
                rows += [_skip(dict(kb, N=N), f"skipped: oracle {oracle}") for N in task.orders]
                continue
            rows += _certify_kind(kind, p, pt, task.orders, oracle, task.tie, task.variant, task.dps, kb)
        return rows


def run_tasks(tasks: list, threads: int | None = None) -> list:
    """Run tasks, in parallel when more than one worker is requested."""
    n = worker_count(threads)
    if n == 1 or len(tasks) < 2:
        return [row for t in tasks for row in run_task(t)]
    with ProcessPoolExecutor(max_workers=n) as ex:
        chunks = ex.map(run_task, tasks, chunksize=max(1, len(tasks) // (8 * n)))
        return [row for rows in chunks for row in rows]


@dataclass
class SweepSummary:
    rows: int = 0
    certified: int = 0
    violations: int = 0
    skipped: int = 0
    no_bound: int = 0
    max_ratio: float = 0.0
    violating: list = field(default_factory=list)


def summarize(rows: list) -> SweepSummary:
    s = SweepSummary(rows=len(rows))
    for r in rows:
        st = r["status"]
        if st.startswith("skipped"):
            s.skipped += 1
        elif st.startswith("no-bound"):
            s.no_bound += 1
        else:
            s.certified += 1
            if r["ratio"] is not None and r["ratio"] > s.max_ratio:
                s.max_ratio = r["ratio"]
            if not r["passed"]:
                s.violations += 1
                s.violating.append(r)
    return s


# ----------------------------------------------------------------- grids

ACCEPT_NU = [complex(a, b) for a in (50, 100, 200) for b in (0, 50)]
ACCEPT_AB = (-0.4, -0.1, 0.25, 0.4)
ACCEPT_XI = (0.5, 0.75, 1.0, complex(0.3, 0.5), complex(0.1, 1.2))
ACCEPT_ORDERS = tuple(range(7))


def acceptance_tasks(threads_hint=None) -> list:
    """The soundness grid: all ten kinds, N = 0..6."""
    pairs = list(itertools.product(ACCEPT_AB, ACCEPT_AB))
    # alpha = 2 + i/2 leaves the strip; the alpha-layout bounds still apply
    pairs += [(complex(2, 0.5), b) for b in ACCEPT_AB]
    off = [k.value for k in ExpansionKind if not k.oncut]
    on = [k.value for k in ExpansionKind if k.oncut]
    zetas = [mp.pi / 6, mp.pi / 4, mp.pi / 3]
    tasks = []
    for nu in ACCEPT_NU:
        for a, b in pairs:
            for xi in ACCEPT_XI:
                tasks.append(PointTask(nu, a, b, xi, False, tuple(off), ACCEPT_ORDERS))
            for z in zetas:
                tasks.append(PointTask(nu, a, b, float(z), True, tuple(on), ACCEPT_ORDERS))
    return tasks


# ---------------------------------------------------------------- figures


@dataclass(frozen=True)
class FigureSpec:
    number: int
    kind: str
    variant: str | None
    columns: tuple
    description: str


FIGURES = {
    1: FigureSpec(1, "q-invfac", "if-q-alpha", ("t", "ratio_N2", "ratio_N4"),
                  "nu=200+it, alpha=2+i/2, beta=1/4, xi=3/4, t in [0,200]"),
    2: FigureSpec(2, "p-oncut-invfac", "ifcut-strip", ("t", "ratio_N3", "ratio_N5"),
                  "nu=200+it, alpha=1/5, beta=1/4, zeta=pi/3, t in [0,200]"),
    3: FigureSpec(3, "q-fac", "f-q-strip", ("t", "ratio_nu150", "ratio_nu150_50i"),
                  "N=4, alpha=1/4+i/4, beta=1/3, xi=0.01+it, t in [-(pi/2-0.01), pi/2-0.01]"),
    4: FigureSpec(4, "p-oncut-fac", "fcut-strip", ("t", "ratio_N3", "ratio_N5"),
                  "nu=200+it, alpha=1/5+i/3, beta=1/4, zeta=pi/3, t in [0,200]"),
    5: FigureSpec(5, "p-oncut-fac", None, ("zeta", "absR_nu50", "absR_nu100"),
                  "N=3, alpha=1/5, beta=1/3+i/6, zeta_k=k/(10*513), k=1..512"),
}


def figure_grid(n: int, points: int = FIGURE_POINTS) -> list:
    if n in (1, 2, 4):
        return [mpf(200) * k / (points - 1) for k in range(points)]
    if n == 3:
        top = mp.pi / 2 - mpf("0.01")
        return [-top + 2 * top * k / (points - 1) for k in range(points)]
    if n == 5:
        return [mpf(k) / (10 * (points + 1)) for k in range(1, points + 1)]
    raise ValueError(f"figure number must be 1..5, got {n}")


def _figure_tasks(n: int, grid: list) -> list:
    third = mpf(1) / 3
    out = []
    for x in grid:
        if n == 1:
            out.append(("series", PointTask(mpc(200, x), mpc(2, 0.5), mpf(0.25), mpf(0.75), False,
                                            ("q-invfac",), (2, 4), variant="if-q-alpha")))
        elif n == 2:
            out.append(("series", PointTask(mpc(200, x), mpf(0.2), mpf(0.25), mp.pi / 3, True,
                                            ("p-oncut-invfac",), (3, 5), variant="ifcut-strip")))
        elif n == 4:
            out.append(("series", PointTask(mpc(200, x), mpc(0.2, third), mpf(0.25), mp.pi / 3, True,
                                            ("p-oncut-fac",), (3, 5), variant="fcut-strip")))
        elif n == 3:
            for nu in (mpc(150), mpc(150, 50)):
                out.append(("series", PointTask(nu, mpc(0.25, 0.25), third, mpc("0.01", x), False,
                                                ("q-fac",), (4,), variant="f-q-strip")))
        else:
            for nu in (50, 100):
                out.append(("series", PointTask(mpc(nu), mpf(0.2), mpc(third, mpf(1) / 6), x, True,
                                                ("p-oncut-fac",), (3,))))
    return out


def figure_rows(n: int, threads: int | None = None, points: int = FIGURE_POINTS):
    """(spec, detail rows, wide rows) for figure n."""
    spec = FIGURES[n]
    grid = figure_grid(n, points)
    tasks = [t for _, t in _figure_tasks(n, grid)]
    detail = run_tasks(tasks, threads)
    wide = []
    if n in (1, 2, 4):
        for i, x in enumerate(grid):
            a, b = detail[2 * i], detail[2 * i + 1]
            wide.append((x, a["ratio"], b["ratio"]))
    elif n == 3:
        for i, x in enumerate(grid):
            wide.append((x, detail[2 * i]["ratio"], detail[2 * i + 1]["ratio"]))
    else:
        for i, x in enumerate(grid):
            wide.append((x, detail[2 * i]["remainder"], detail[2 * i + 1]["remainder"]))
    return spec, detail, wide


# ---------------------------------------------------------------- output


def metadata_lines(meta: dict) -> list:
    lines = [f"# schema-version: {SCHEMA_VERSION}"]
    lines += [f"# {k}: {v}" for k, v in meta.items()]
    return lines


def write_csv(out, header: list, rows: list, meta: dict | None = None):
    """Write '#' metadata, a header and rows; rows are sequences or dicts."""
    buf = io.StringIO()
    for line in metadata_lines(meta or {}):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        vals = [r.get(c, "") for c in header] if isinstance(r, dict) else list(r)
        w.writerow([fmt(v) for v in vals])
    text = buf.getvalue()
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def write_jsonl(out, rows: list):
    lines = []
    for r in rows:
        obj = {c: (fmt(r.get(c)) if not isinstance(r.get(c), (bool, int, str)) or r.get(c) is None
                   else r.get(c)) for c in COLUMNS}
        lines.append(json.dumps(obj, sort_keys=False, ensure_ascii=False))
    text = "".join(line + "\n" for line in lines)
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def read_csv(path) -> tuple:
    """(metadata dict, header, rows as string lists)."""
    meta, body = {}, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                k, _, v = line[1:].strip().partition(":")
                meta[k.strip()] = v.strip()
            else:
                body.append(line)
    rows = list(csv.reader(body))
    return meta, rows[0], rows[1:]


def resolve_precision(level) -> str | int:
    resolve_dps(level)
    return level
