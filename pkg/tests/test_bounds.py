import math

import mpmath
import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpc, mpf

from jacasym.bounds import (BoundVariant, _ka, bound_fac_offcut, bound_fac_oncut, bound_for, bound_invfac_offcut,
                            bound_invfac_oncut, certify, max_g_on_curve)
from jacasym.coeffs import OffCutPoint, OnCutPoint, Params, a_coeff
from jacasym.errors import PreconditionError
from jacasym.expand import assemble, build, evaluate, normalization
from jacasym.oracle import jacobi_P_oracle, jacobi_Q_oracle, jacobi_Q_qdef, oncut_oracle

# reference values from scripts/derive_constants.py
mp.dps = 40
IF_Q_STRIP = mpf("8.456698452580491785578796e-10")
IFCUT_STRIP = mpf("0.02222922521570900683008626")
F_Q_STRIP = mpf("6.736498996371184460698721e-12")
GMAX_12 = mpf("1.090717953289412511432772")
F_Q_GMAX = mpf("4.802790335017566771979853e-10")
FCUT_STRIP = mpf("18.55323050667829161543879")
mp.dps = 15


def close(a, b, tol=1e-20):
    return abs(a - b) <= tol * abs(b)


@pytest.mark.parametrize("variant", ["if-q-alpha", "if-q-beta", "if-q-strip"])
def test_invfac_q_reference(variant):
    rep = bound_invfac_offcut("Q", Params(100, 0.2, 0.25), OffCutPoint(0.75), 3, variant=variant)
    assert rep.applicable and close(rep.bound, IF_Q_STRIP)


def test_invfac_oncut_reference():
    p = Params(mpc(200, 10), 0.2, 0.25)
    with mp.workdps(40):
        zt = OnCutPoint(mp.pi / 3)
    for which in ("P", "Qsans"):
        rep = bound_invfac_oncut(which, p, zt, 3, variant="ifcut-strip")
        assert close(rep.bound, IFCUT_STRIP)


def test_fac_q_reference():
    rep = bound_fac_offcut("Q", Params(150, 0.2, 0.3), OffCutPoint(mpc(0.5, 0.6)), 4, variant="f-q-strip")
    assert close(rep.bound, F_Q_STRIP)


def test_gmax_reference():
    with mp.workdps(30):
        pt = OffCutPoint(1.2)
        P = complex(pt.exp_minus / (2 * pt.sinh_xi))
        Q = complex(pt.exp_minus / (2 * pt.cosh_xi))
    # brute force used 10^5 grid points, so agreement is limited to ~1e-10
    assert abs(max_g_on_curve(P, Q, -1) - float(GMAX_12)) < 1e-9
    rep = bound_fac_offcut("Q", Params(60, 0.2, 0.2), pt, 3, variant="f-q-gmax")
    assert close(rep.bound, F_Q_GMAX, 1e-9)


def test_fac_oncut_reference():
    with mp.workdps(40):
        p = Params(mpc(200, 10), mpc(0.2, mpf(1) / 3), 0.25)
        zt = OnCutPoint(mp.pi / 3)
    rep = bound_fac_oncut("P", p, zt, 3, variant="fcut-strip")
    assert close(rep.bound, FCUT_STRIP)


def test_applicability_outside_strip():
    p, pt = Params(100, mpc(2, 0.5), 0.25), OffCutPoint(0.75)
    rep = bound_invfac_offcut("Q", p, pt, 2)
    assert rep.applicable and rep.variant is BoundVariant.IF_Q_ALPHA
    assert rep.candidates[BoundVariant.IF_Q_BETA] is None
    assert rep.candidates[BoundVariant.IF_Q_STRIP] is None
    assert not bound_invfac_offcut("Q", p, pt, 1).applicable
    rep = bound_fac_offcut("Q", p, pt, 2)
    assert rep.variant is BoundVariant.F_Q_ALPHA
    assert rep.candidates[BoundVariant.F_Q_GMAX] is None


def test_forced_variant():
    p, pt = Params(100, 0.2, 0.25), OffCutPoint(0.75)
    rep = bound_invfac_offcut("Q", p, pt, 3, variant="if-q-beta")
    assert rep.variant is BoundVariant.IF_Q_BETA
    with pytest.raises(ValueError):
        bound_invfac_offcut("Q", p, pt, 3, variant="f-q-beta")
    with pytest.raises(ValueError):
        BoundVariant("if-q-gamma")


@given(st.floats(-0.45, 0.45), st.floats(-0.45, 0.45), st.integers(0, 6), st.floats(0.2, 1.4), st.floats(-1.4, 1.4))
def test_auto_is_minimum(a, b, N, x, y):
    p, pt = Params(mpc(80, 20), a, b), OffCutPoint(mpc(x, y))
    for rep in (bound_invfac_offcut("Q", p, pt, N), bound_fac_offcut("Q", p, pt, N)):
        vals = [v for v in rep.candidates.values() if v is not None]
        assert rep.bound == min(vals)
        assert rep.bound >= 0


def test_variant_proviso():
    assert BoundVariant.F_P2_GMAX.proviso == "gmax"
    assert BoundVariant.IFCUT_ALPHA.proviso == "alpha"


@pytest.mark.parametrize("mu0", [0.5, 1.5, -2.5])
def test_removable_limit_is_continuous(mu0):
    # removable only once a_n carries the vanishing factor, i.e. n >= L
    with mp.workdps(30):
        for n in (3, 5):
            inside = _ka(mpc(mu0 + 1e-8, 0.3), n)
            at = _ka(mpc(mu0, 0.3), n)
            outside = _ka(mpc(mu0 + 1e-5, 0.3), n)
            assert mpmath.isfinite(at)
            assert abs(inside - outside) <= 1e-4 * outside
            assert abs(at - inside) <= 1e-6 * outside


def test_below_level_the_factor_is_singular():
    with mp.workdps(30):
        assert _ka(mpc(1.5 + 1e-8, 0.3), 1) > 500 * _ka(mpc(1.5 + 1e-5, 0.3), 1)


def test_removable_limit_away_from_half_odd():
    with mp.workdps(30):
        v = mpc(0.2, 0.4)
        ref = abs(mpmath.cos(mp.pi * v) / mpmath.cos(mp.pi * v.real) * a_coeff(4, v.real))
        assert abs(_ka(v, 4) - ref) < 1e-25


def test_case_split_continuous_at_quarter_pi():
    p = Params(mpc(80, 5), 1.2, 0.1)
    lo = bound_fac_oncut("P", p, OnCutPoint(mp.pi / 4 - 1e-9), 3, variant="fcut-alpha").bound
    hi = bound_fac_oncut("P", p, OnCutPoint(mp.pi / 4 + 1e-9), 3, variant="fcut-alpha").bound
    assert abs(lo - hi) < 1e-6 * lo
    p = Params(mpc(80, 5), 0.1, 1.2)
    lo = bound_fac_oncut("P", p, OnCutPoint(mp.pi / 4 - 1e-9), 3, variant="fcut-beta").bound
    hi = bound_fac_oncut("P", p, OnCutPoint(mp.pi / 4 + 1e-9), 3, variant="fcut-beta").bound
    assert abs(lo - hi) < 1e-6 * lo


def test_p_factorial_needs_nonreal_xi():
    rep = bound_fac_offcut("P_plus", Params(60, 0.2, 0.2), OffCutPoint(0.8), 3)
    assert not rep.applicable and "non-real" in rep.note


def test_preconditions():
    with pytest.raises(PreconditionError):
        bound_invfac_offcut("Q", Params(1, 0, 0), OffCutPoint(0.5), 5)
    with pytest.raises(ValueError):
        bound_invfac_offcut("R", Params(10, 0, 0), OffCutPoint(0.5), 1)


def _certify(kind, p, pt, N, oracle):
    r = evaluate(kind, p, pt, N)
    return certify(r, bound_for(r), oracle.value, oracle.err_budget)


@given(st.floats(-0.45, 0.45), st.floats(-0.45, 0.45), st.integers(0, 6), st.floats(0.25, 1.3),
       st.floats(-1.2, 1.2), st.floats(30, 200), st.floats(0, 60))
def test_bounds_hold_off_cut(a, b, N, x, y, nr, ni):
    p, pt = Params(mpc(nr, ni), a, b), OffCutPoint(mpc(x, y))
    o = jacobi_Q_oracle(p, pt)
    for kind in ("q-invfac", "q-fac"):
        c = _certify(kind, p, pt, N, o)
        assert c.passed, (kind, c)


@given(st.floats(-0.45, 0.45), st.floats(-0.45, 0.45), st.integers(0, 6), st.floats(0.1, 1.45),
       st.floats(30, 200), st.floats(0, 60))
def test_bounds_hold_on_cut(a, b, N, z, nr, ni):
    p, zt = Params(mpc(nr, ni), a, b), OnCutPoint(z)
    o = oncut_oracle("Qroman", p, zt)
    for kind in ("qroman-oncut-invfac", "qroman-oncut-fac"):
        c = _certify(kind, p, zt, N, o)
        assert c.passed, (kind, c)


def test_certify_not_applicable():
    p, pt = Params(60, 0.2, 0.2), OffCutPoint(0.8)
    r = evaluate("p-fac", p, pt, 3)
    o = jacobi_P_oracle(p, pt)
    c = certify(r, bound_for(r), o.value, o.err_budget)
    assert math.isnan(c.ratio) and c.passed and c.bound is None


def test_certify_detects_wrong_oracle():
    p, pt = Params(60, 0.2, 0.2), OffCutPoint(0.8)
    r = evaluate("q-invfac", p, pt, 4)
    with mp.workdps(40):
        wrong = jacobi_Q_oracle(p, pt).mp() * (1 + mpf(10) ** -6)
    c = certify(r, bound_for(r), wrong)
    assert not c.passed and c.ratio > 1


def test_inverse_factorial_p1_bound_exceeded_near_imaginary_edge():
    """Characterizes a known excess of the first P series bound.

    Close to |Im xi| = pi/2 with small Re xi the measured P1 remainder
    exceeds its bound; the excess shrinks as nu grows.  This point lies
    outside the certification grid and is recorded so a change in either
    the bound or the expansion shows up here.
    """
    pt = OffCutPoint(mpc(0.2, -1.5))
    ratios = []
    for nu in (30, 120):
        p = Params(nu, 0.2, 0.25)
        o = jacobi_P_oracle(p, pt)
        r = evaluate("p-invfac", p, pt, 8, 14)
        ratios.append(certify(r, bound_for(r), o.value, o.err_budget).ratio)
        # the second series contributes nothing noticeable to the bound
        b1 = bound_invfac_offcut("P_plus", p, pt, 8)
        assert bound_for(r).bound - b1.bound < 1e-9 * b1.bound
    assert 1.3 < ratios[0] < 1.4
    assert 1.0 < ratios[1] < ratios[0]


def _fac_q_first_term_ratio(nu, alpha, oracle=jacobi_Q_oracle):
    p, pt = Params(nu, alpha, 0.25), OffCutPoint(1.0)
    r = assemble(build("q-fac", p, pt, 5), 3)
    with mp.workdps(40):
        target = (oracle(p, pt).value * normalization(r.kind, p)).value()
        return ((target - r.normalized_value) / r.scale / r.next_term).real


@pytest.mark.parametrize("alpha", [-0.4, 0.4])
def test_factorial_q_sign_claim_fails_at_moderate_degree(alpha):
    """At xi = 1, N = 3 the first neglected factorial term nearly cancels.

    For nu = 50 the remainder then has the opposite sign to that term, so
    the ratio lies outside (0, 2).  Both oracle representations agree, and
    the ratio re-enters the interval once nu reaches 100.
    """
    q1 = _fac_q_first_term_ratio(50, alpha)
    q2 = _fac_q_first_term_ratio(50, alpha, jacobi_Q_qdef)
    assert -0.1 < q1 < -0.05
    assert abs(q1 - q2) < 1e-12
    later = [_fac_q_first_term_ratio(nu, alpha) for nu in (100, 200, 400)]
    assert all(0 < q < 2 for q in later)
    assert later == sorted(later)
