"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict through ``record_criterion``; the
lines are printed in the terminal summary.  The sweep and figure tests
are the slow ones (a couple of minutes each on one core).
"""
import itertools
import math
import os
import random
import time
from pathlib import Path

import mpmath
from mpmath import mp, mpc, mpf

from jacasym import runner
from jacasym.coeffs import OffCutPoint, OnCutPoint, Params
from jacasym.expand import ExpansionKind, assemble, build, evaluate, normalization, termination_order
from jacasym.oracle import (hyp2f1_reg_mp, jacobi_P_oracle, jacobi_P_recurrence, jacobi_Q_oracle, oncut_oracle,
                            route_moduli)

GOLDEN = Path(__file__).parent / "golden"


def target_of(kind, p, pt):
    o = runner.oracle_for(kind, p, pt)
    with mp.workdps(40):
        return (o.value * normalization(kind, p)).value()


def rel_err(r, target):
    with mp.workdps(40):
        return abs(r.normalized_value - target) / abs(target)


def test_criterion_1_soundness_sweep(record_criterion):
    t0 = time.time()
    rows = runner.run_tasks(runner.acceptance_tasks(), os.cpu_count())
    s = runner.summarize(rows)
    elapsed = time.time() - t0
    kinds = {r["kind"] for r in rows if r["status"] == "ok"}
    ok = s.violations == 0 and s.certified > 0 and len(kinds) == 10 and elapsed < 300
    record_criterion(1, ok, f"certified={s.certified} violations={s.violations} no_bound={s.no_bound} "
                            f"max_ratio={s.max_ratio:.6f} time={elapsed:.0f}s")
    assert not s.violating
    assert len(kinds) == 10
    assert elapsed < 300


def _close(text, golden, tol=1e-9):
    if text == golden:
        return True
    if not text or not golden:
        return False
    a, b = float(text), float(golden)
    return abs(a - b) <= tol * max(abs(a), abs(b))


def test_criterion_2_figures(record_criterion):
    problems = []
    fig1 = fig5 = None
    for n in range(1, 6):
        spec, detail, wide = runner.figure_rows(n)
        _, header, golden = runner.read_csv(GOLDEN / f"figure{n}.csv")
        assert header == list(spec.columns)
        if len(golden) != len(wide):
            problems.append(f"fig{n}: {len(wide)} rows vs golden {len(golden)}")
            continue
        drift = sum(not _close(runner.fmt(v), g) for row, grow in zip(wide, golden)
                    for v, g in zip(row, grow))
        if drift:
            problems.append(f"fig{n}: {drift} fields drift beyond 1e-9")
        if n <= 4:
            bad = [r for r in detail if r["status"] != "ok" or r["ratio"] is None or not 0 < r["ratio"] <= 1]
            if bad:
                problems.append(f"fig{n}: {len(bad)} ratios outside (0, 1]")
        if n == 1:
            fig1 = wide
        if n == 5:
            fig5 = wide
    if not fig1[0][1] > fig1[-1][1] or not fig1[0][2] > fig1[-1][2]:
        problems.append("fig1: ratio at t=0 does not exceed t=200")
    worse = sum(r[2] > r[1] for r in fig5)
    if worse:
        problems.append(f"fig5: |R(nu=100)| > |R(nu=50)| at {worse} of {len(fig5)} points")
    record_criterion(2, not problems, "; ".join(problems) or "goldens, ratios and orderings hold")
    assert not problems


TERMINATING = [(0.5, 0.5), (0.5, -0.5), (-0.5, -0.5), (1.5, 0.5)]


def test_criterion_3_termination(record_criterion):
    rng = random.Random(3)
    worst, count = 0.0, 0
    for (a, b), _ in itertools.product(TERMINATING, range(10)):
        p = Params(mpc(rng.uniform(5, 150), rng.uniform(-20, 20)), a, b)
        level = termination_order(p)
        assert level is not None and (2 * p.nu + a + b + 1).real > level
        xi = OffCutPoint(mpc(rng.uniform(0.3, 1.5), rng.uniform(-1.2, 1.2)))
        zeta = OnCutPoint(rng.uniform(0.15, 1.4))
        for kind in ExpansionKind:
            pt = zeta if kind.oncut else xi
            r = evaluate(kind, p, pt, level)
            assert r.terminated
            worst = max(worst, float(rel_err(r, target_of(kind, p, pt))))
            count += 1
    ok = worst <= 1e-12
    record_criterion(3, ok, f"{count} truncations, worst relative error {worst:.2e}")
    assert ok


def test_criterion_4_convergence(record_criterion):
    errs = {}
    for nu in (0.7, 2.3, mpc(3.1, 2), 30):
        p = Params(nu, 0.2, 0.25)
        r = evaluate("q-fac", p, OffCutPoint(0.9), 60)
        assert r.convergent_region
        errs[("q-fac", str(nu))] = float(rel_err(r, target_of(r.kind, p, OffCutPoint(0.9))))
        for kind in ("p-oncut-fac", "qroman-oncut-fac", "qsans-oncut-fac"):
            pt = OnCutPoint(mp.pi / 4)
            r = evaluate(kind, p, pt, 80)
            assert r.convergent_region
            errs[(kind, str(nu))] = float(rel_err(r, target_of(r.kind, p, pt)))
    worst = max(errs.values())
    ok = worst <= 1e-10
    record_criterion(4, ok, f"worst relative error {worst:.2e} over {len(errs)} partial sums")
    assert ok, errs


def test_criterion_5_real_case_signs(record_criterion):
    bad, count = [], 0
    spans = {"q-invfac": [math.inf, -math.inf], "q-fac": [math.inf, -math.inf]}
    for nu, a, b, xi in itertools.product((20, 50, 100), (-0.4, -0.1, 0.3), (-0.4, -0.1, 0.3), (0.5, 1.0, 2.0)):
        p, pt = Params(nu, a, b), OffCutPoint(xi)
        o = jacobi_Q_oracle(p, pt)
        for name, top in (("q-invfac", 1), ("q-fac", 2)):
            kind = ExpansionKind.parse(name)
            bld = build(kind, p, pt, 6)
            with mp.workdps(40):
                target = (o.value * normalization(kind, p)).value()
            for N in range(1, 6):
                r = assemble(bld, N)
                with mp.workdps(40):
                    q = (target - r.normalized_value) / r.scale / r.next_term
                span = spans[name]
                span[0], span[1] = min(span[0], float(q.real)), max(span[1], float(q.real))
                count += 1
                strict_top = q.real < top if name == "q-fac" else q.real <= top
                if not (abs(q.imag) < 1e-25 and q.real > 0 and strict_top):
                    bad.append((name, nu, a, b, xi, N, float(q.real)))
    detail = ", ".join(f"{k} in [{lo:.3f}, {hi:.3f}]" for k, (lo, hi) in spans.items())
    record_criterion(5, not bad, f"{count} ratios to the first neglected term, {detail}")
    assert not bad


def test_criterion_6_asymptotic_order(record_criterion):
    nus = (100, 200, 400, 800, 1600)
    rems = {2: [], 4: []}
    pt = OffCutPoint(0.75)
    for nu in nus:
        p = Params(nu, 0.2, 0.25)
        target = target_of(ExpansionKind.Q_offcut_invfac, p, pt)
        bld = build("q-invfac", p, pt, 5)
        for N in rems:
            r = assemble(bld, N)
            with mp.workdps(40):
                rems[N].append(float(mpmath.log(abs(target - r.normalized_value) / abs(r.scale))))
    xs = [math.log(nu) for nu in nus]
    mx = sum(xs) / len(xs)
    slopes = {}
    for N, ys in rems.items():
        my = sum(ys) / len(ys)
        slopes[N] = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    ok = all(abs(slopes[N] + N + 1) <= 0.15 for N in slopes)
    record_criterion(6, ok, "slopes " + ", ".join(f"N={N}: {v:.3f}" for N, v in slopes.items()))
    assert ok


def _rc(rng, lo, hi, im=1.0):
    return mpc(rng.uniform(lo, hi), rng.uniform(-im, im))


def test_criterion_7_oracle_consistency(record_criterion):
    rng = random.Random(7)
    contiguous = 0.0
    for _ in range(1000):
        a, b, c = _rc(rng, -3, 3), _rc(rng, -3, 3), _rc(rng, -3, 3)
        while True:
            w = mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
            if abs(w - 1) > 0.05 and abs(w) > 1e-3:
                break
        with mp.workdps(30):
            f = [hyp2f1_reg_mp(a, b, c + d, w, precision="working")[0] for d in (-1, 0, 1)]
            terms = ((w - 1) * f[0], (c - 1 - (2 * c - a - b - 1) * w) * f[1], (c - a) * (c - b) * w * f[2])
            contiguous = max(contiguous, float(abs(sum(terms)) / sum(abs(t) for t in terms)))

    recurrence = 0.0
    for n in range(201):
        a, b = rng.uniform(-0.9, 3), rng.uniform(-0.9, 3)
        z = mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
        with mp.workdps(40):
            u = jacobi_P_oracle(Params(n, a, b), z, check_recurrence=False).mp()
            v = jacobi_P_recurrence(n, a, b, z)
            recurrence = max(recurrence, float(abs(u - v) / abs(v)))

    overlap = 0.0
    for _ in range(500):
        a, b, c = _rc(rng, -3, 3), _rc(rng, -3, 3), _rc(rng, -3, 3)
        while True:
            w = mpc(rng.uniform(-1, 2), rng.uniform(-1.5, 1.5))
            usable = [r for r, m in route_moduli(w).items() if m <= 0.8]
            if len(usable) >= 2:
                break
        with mp.workdps(30):
            u, v = (hyp2f1_reg_mp(a, b, c, w, precision="working", route=r)[0] for r in usable[:2])
            overlap = max(overlap, float(abs(u - v) / abs(v)))

    ok = contiguous <= 1e-11 and recurrence <= 1e-12 and overlap <= 1e-12
    record_criterion(7, ok, f"contiguous {contiguous:.1e}, recurrence {recurrence:.1e}, overlap {overlap:.1e}")
    assert ok


def test_criterion_8_cut_consistency(record_criterion):
    rng = random.Random(8)
    worst = 0.0
    for _ in range(50):
        p = Params(rng.uniform(0.5, 60), rng.uniform(-0.9, 3), rng.uniform(-0.9, 3))
        zeta = OnCutPoint(rng.uniform(0.05, 1.5))
        with mp.workdps(40):
            u = jacobi_P_oracle(p, zeta).mp()
            v = oncut_oracle("P_via_Q", p, zeta).mp()
            worst = max(worst, float(abs(u - v) / abs(u)))
    ok = worst <= 1e-11
    record_criterion(8, ok, f"50 configurations, worst relative difference {worst:.1e}")
    assert ok
