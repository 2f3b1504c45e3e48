import math

import mpmath
import pytest
from hypothesis import assume, given, strategies as st
from mpmath import mp, mpc, mpf

from jacasym.coeffs import OffCutPoint, OnCutPoint, Params
from jacasym.errors import DomainError, MismatchError, NonConvergenceError, PoleError
from jacasym.oracle import (Hyp2F1Request, Route, choose_route, hyp2f1_reg, hyp2f1_reg_mp, jacobi_P_oracle,
                            jacobi_P_recurrence, jacobi_Q_oracle, jacobi_Q_qdef, oncut_oracle,
                            q_epsilon_limit, q_side_limit, route_moduli)

par = st.floats(-2.3, 2.3).map(lambda x: round(x, 6) + 0.0137)


def rel(a, b):
    return abs(a - b) / max(abs(b), mpf(10) ** -300)


def test_closed_form_power():
    # F(a, b; b; w) = (1-w)^(-a); regularized divides by Gamma(b)
    with mp.workdps(40):
        for w in (mpc(0.3, 0.2), mpc(-2, 1), mpc(0.9, 0.9), mpc(3, -2)):
            v, _, _ = hyp2f1_reg_mp(0.7, 1.3, 1.3, w)
            assert rel(v, (1 - w) ** -0.7 / mpmath.gamma(1.3)) < 1e-35


def test_closed_form_log():
    # F(1, 1; 2; w) = -log(1-w)/w
    with mp.workdps(40):
        for w in (mpc(0.5, 0.5), mpc(-5, 0), mpc(0.2, -3), mpc(1.5, 0.8)):
            v, _, _ = hyp2f1_reg_mp(1, 1, 2, w)
            assert rel(v, -mpmath.log(1 - w) / w) < 1e-35


def test_terminating_series():
    # a = -n terminates, including at nonpositive integer c via the regularized form
    with mp.workdps(40):
        w = mpc(0.4, 0.1)
        v, _, _ = hyp2f1_reg_mp(-3, 2.5, -1, w)
        # regularized limit: sum from k = 2 of (a)_k (b)_k w^k / (k! Gamma(c+k))
        s = mpmath.fsum(mpmath.rf(-3, k) * mpmath.rf(2.5, k) * w ** k / (mpmath.factorial(k) * mpmath.gamma(-1 + k))
                        for k in range(2, 4))
        assert rel(v, s) < 1e-35


@given(par, par, par, st.floats(-4, 4), st.floats(-4, 4))
def test_matches_mpmath_hyp2f1(a, b, c, x, y):
    w = mpc(x, y)
    assume(abs(w - 1) > 0.05 and abs(y) > 1e-3)
    with mp.workdps(40):
        v, err, _ = hyp2f1_reg_mp(a, b, c, w)
        ref = mpmath.hyp2f1(a, b, c, w) / mpmath.gamma(c)
        assert err <= 1e-40
        assert rel(v, ref) < 1e-30


@given(st.floats(-4, 4), st.floats(-4, 4))
def test_route_choice(x, y):
    w = complex(x, y)
    assume(abs(w - 1) > 1e-9 and w != 0)
    mods = route_moduli(w)
    r = choose_route(w)
    if r is Route.TAYLOR:
        assert min(mods.values()) > 0.7 and y != 0
    else:
        assert mods[r] <= 0.7


@pytest.mark.parametrize("sign", [1, -1])
def test_taylor_route_at_sixth_root_of_unity(sign):
    # every transformed series has modulus exactly one here
    w = mpc(0.5, sign * math.sqrt(3) / 2)
    assert all(abs(m - 1) < 1e-12 for m in route_moduli(complex(w)).values())
    with mp.workdps(40):
        a, b, c = mpc(0.3, 0.2), mpc(-1.7, 0.1), mpc(2.1, -0.4)
        v, err, route = hyp2f1_reg_mp(a, b, c, w)
        assert route is Route.TAYLOR and err <= 1e-40
        with mp.workdps(60):
            ref = mpmath.hyp2f1(a, b, c, w) / mpmath.gamma(c)
        assert rel(v, ref) < 1e-38


def test_routes_agree_where_they_overlap():
    with mp.workdps(40):
        a, b, c, w = mpc(0.3, 0.1), mpc(1.7, -0.2), mpc(2.45, 0.05), mpc(0.45, 0.3)
        vals = [hyp2f1_reg_mp(a, b, c, w, route=r)[0] for r in (Route.DIRECT, Route.PFAFF, Route.ONE_MINUS_W)]
        for v in vals[1:]:
            assert rel(v, vals[0]) < 1e-36


def test_branch_side_required_on_cut():
    with pytest.raises(DomainError):
        Hyp2F1Request(1, 1, 2, 3)
    with pytest.raises(ValueError):
        Hyp2F1Request(1, 1, 2, 0.5, branch_side="left")


def test_branch_sides_are_conjugate_for_real_parameters():
    with mp.workdps(40):
        above = hyp2f1_reg(Hyp2F1Request(0.3, 0.8, 1.6, 2.5, "above")).mp()
        below = hyp2f1_reg(Hyp2F1Request(0.3, 0.8, 1.6, 2.5, "below")).mp()
        assert rel(above, mpmath.conj(below)) < 1e-35
        assert rel(above, mpmath.hyp2f1(0.3, 0.8, 1.6, mpc(2.5, 1e-60)) / mpmath.gamma(1.6)) < 1e-30


def test_w_zero_and_one():
    with mp.workdps(40):
        assert rel(hyp2f1_reg_mp(1, 2, 3.5, 0)[0], 1 / mpmath.gamma(3.5)) < 1e-38
    with pytest.raises(DomainError):
        hyp2f1_reg_mp(1, 2, 3.5, 1, "above")


def test_jacobi_P_against_mpmath():
    with mp.workdps(40):
        p = Params(mpc(7.3, 0.4), 0.3, -0.2)
        pt = OffCutPoint(mpc(0.4, 0.3))
        v = jacobi_P_oracle(p, pt).mp()
        assert rel(v, mpmath.jacobi(p.nu, p.alpha, p.beta, pt.z())) < 1e-30


@pytest.mark.parametrize("n", [0, 1, 5, 40, 200])
def test_jacobi_P_recurrence_agrees(n):
    with mp.workdps(40):
        p = Params(n, 0.25, -0.4)
        pt = OffCutPoint(mpc(0.2, 0.7))
        a = jacobi_P_oracle(p, pt, check_recurrence=False).mp()
        b = jacobi_P_recurrence(n, p.alpha, p.beta, pt.z())
        assert rel(a, b) < 1e-25


def test_jacobi_P_on_cut_rejected():
    with pytest.raises(DomainError):
        jacobi_P_oracle(Params(3.5, 0, 0), -2)


def test_jacobi_Q_pole():
    with pytest.raises(PoleError):
        jacobi_Q_oracle(Params(-2.5, -0.5, 0), OffCutPoint(0.5))


def test_jacobi_Q_legendre_case():
    with mp.workdps(40):
        p = Params(mpc(7.3, 0.4), 0, 0)
        pt = OffCutPoint(mpc(0.4, 0.3))
        assert rel(jacobi_Q_oracle(p, pt).mp(), mpmath.legenq(p.nu, 0, pt.z(), type=3)) < 1e-30


@given(st.floats(0.05, 2), st.floats(-1.4, 1.4), st.floats(0.5, 40), par, par)
def test_two_Q_representations_agree(x, y, nu, a, b):
    pt = OffCutPoint(mpc(x, y))
    p = Params(nu, a, b)
    assume(min(abs(p.nu + p.alpha + 1), abs(p.nu + p.beta + 1)) > 0.05)
    with mp.workdps(40):
        u = jacobi_Q_oracle(p, pt).mp()
        v = jacobi_Q_qdef(p, pt).mp()
    assert rel(u, v) < 1e-28


def test_ferrers_legendre_case():
    with mp.workdps(40):
        p, z = Params(mpc(7.3, 0.4), 0, 0), OnCutPoint(0.6)
        assert rel(oncut_oracle("Qroman", p, z).mp(), mpmath.legenq(p.nu, 0, z.x(), type=2)) < 1e-30
        assert rel(oncut_oracle("P_via_Q", p, z).mp(), mpmath.legenp(p.nu, 0, z.x(), type=2)) < 1e-30


def test_qsans_equals_qroman_at_alpha_zero():
    with mp.workdps(40):
        p, z = Params(12.5, 0, 0.3), OnCutPoint(0.9)
        assert rel(oncut_oracle("Qsans", p, z).mp(), oncut_oracle("Qroman", p, z).mp()) < 1e-35


def test_side_limit_matches_epsilon_limit():
    with mp.workdps(40):
        p, z = Params(9.5, 0.3, -0.2), OnCutPoint(0.7)
        for sign in (1, -1):
            a = q_side_limit(p, z, sign).mp()
            b = q_epsilon_limit(p, z, sign).mp()
            assert rel(a, b) < 1e-9


def test_real_parameters_give_real_values():
    with mp.workdps(40):
        p, pt, z = Params(20.3, 0.25, -0.4), OffCutPoint(0.6), OnCutPoint(0.5)
        for v in (jacobi_P_oracle(p, pt).mp(), jacobi_Q_oracle(p, pt).mp(),
                  oncut_oracle("Qroman", p, z).mp(), oncut_oracle("P_via_Q", p, z).mp()):
            assert abs(v.imag) <= 1e-35 * abs(v)


def test_conjugate_point_symmetry():
    with mp.workdps(40):
        p = Params(20.3, 0.25, -0.4)
        u = jacobi_Q_oracle(p, OffCutPoint(mpc(0.6, 0.4))).mp()
        v = jacobi_Q_oracle(p, OffCutPoint(mpc(0.6, -0.4))).mp()
        assert rel(u, mpmath.conj(v)) < 1e-35


def test_unknown_oncut_function():
    with pytest.raises(ValueError):
        oncut_oracle("Qfoo", Params(3, 0, 0), OnCutPoint(0.5))


def test_working_precision_is_cheaper_but_consistent():
    p, pt = Params(50, 0.2, 0.3), OffCutPoint(mpc(0.5, 0.2))
    lo = jacobi_Q_oracle(p, pt, "working")
    hi = jacobi_Q_oracle(p, pt, "extended")
    assert lo.err_budget < 1e-16
    with mp.workdps(40):
        assert rel(lo.mp(), hi.mp()) < 1e-15


def test_result_does_not_depend_on_ambient_precision():
    p, pt, z = Params(53, 0.0, -0.12480891506384373), OffCutPoint(1.0), OnCutPoint(0.6)
    fns = (lambda: jacobi_Q_oracle(p, pt).value, lambda: jacobi_P_oracle(p, pt).value,
           lambda: jacobi_Q_qdef(p, pt).value, lambda: oncut_oracle("Qsans", p, z).value)
    for fn in fns:
        with mp.workdps(15):
            lo = fn()
        with mp.workdps(60):
            hi = fn()
        assert lo == hi or abs(lo.log_abs - hi.log_abs) < 1e-40 and abs(lo.arg - hi.arg) < 1e-40


def test_heavy_cancellation_stays_on_the_preferred_route():
    # both need well over 100 extra digits in the connection formulas
    p = Params(mpc(200, 50), -0.4, -0.1)
    side = q_side_limit(p, OnCutPoint(mp.pi / 4), +1)
    assert side.route is Route.RECIPROCAL_W
    pt = OffCutPoint(mpc(0.3, 0.5))
    q = jacobi_Q_oracle(p, pt)
    assert q.route is Route.ONE_MINUS_W
    with mp.workdps(40):
        a, b = q.mp(), jacobi_Q_qdef(p, pt).mp()
        assert abs(a - b) <= mpf(10) ** -35 * abs(b)
