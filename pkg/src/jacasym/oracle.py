"""Reference values of the Jacobi functions from hypergeometric series.

Nothing here uses the expansions or the package's own gamma kernels: the
Gauss function is summed directly (after a linear transformation chosen
from the location of w), and gamma factors come from mpmath.  The working
precision is raised until the rounding estimate, which tracks the largest
partial term against the final sum, meets the requested accuracy.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .cgamma import LogComplex, is_integer, is_nonpositive_integer, resolve_dps, to_mp
from .coeffs import OffCutPoint, OnCutPoint, Params
from .errors import DomainError, MismatchError, NonConvergenceError, PoleError

REGION_RADIUS = 0.7
TAYLOR_START = 0.6
TAYLOR_STEP = 0.45
MAX_TERMS = 100_000
MAX_EXTRA_DIGITS = 400
ROUTE_EXTRA_DIGITS = 250
FALLBACK_MODULUS = 0.9  # slower series are not worth trying


class Route(str, enum.Enum):
    DIRECT = "direct-series"
    PFAFF = "pfaff"
    ONE_MINUS_W = "one-minus-w"
    RECIPROCAL_W = "reciprocal-w"
    TAYLOR = "taylor-continuation"
    RECURRENCE = "polynomial-recurrence"
    EPSILON = "epsilon-limit"


@dataclass(frozen=True)
class Hyp2F1Request:
    a: mpc
    b: mpc
    c: mpc
    w: mpc
    branch_side: str = "none"
    precision: object = "extended"

    def __post_init__(self):
        for k in ("a", "b", "c", "w"):
            object.__setattr__(self, k, to_mp(getattr(self, k)))
        if self.branch_side not in ("above", "below", "none"):
            raise ValueError("branch_side must be above, below or none")
        if on_cut(self.w) and self.branch_side == "none":
            raise DomainError(f"w={complex(self.w)} lies on [1, inf); a branch side is required")


@dataclass(frozen=True)
class OracleValue:
    value: LogComplex
    err_budget: float
    route: Route

    def mp(self) -> mpc:
        return self.value.value()


def on_cut(w) -> bool:
    return w.imag == 0 and w.real >= 1


# ------------------------------------------------------------------ series


def _series(a, b, c, w):
    """Regularized Gauss series; returns (sum, absolute error estimate)."""
    eps = mpf(2) ** (-mp.prec)
    if is_nonpositive_integer(c):
        k = int(1 - c.real)  # first term with c+k = 1
        t = mpc(1)
        for j in range(k):
            t *= (a + j) * (b + j) * w / (j + 1)
    else:
        k = 0
        t = mpmath.rgamma(c)
    if t == 0:
        return mpc(0), mpf(0)
    rel, big, n, tail = _series_fixed(a, b, c, w, k)
    return t * rel, abs(t) * (eps * big * (n + 1) + tail)


def _fix(x: mpf, prec: int) -> int:
    return int(mpmath.nint(mpmath.ldexp(x, prec)))


def _series_fixed(a, b, c, w, k):
    """sum_j t_{k+j}/t_k in fixed point.

    Returns (sum, max |term|, terms used, tail estimate).

    Terms are scaled Python integers with ``prec`` fractional bits, which
    avoids the per-operation overhead of multiprecision objects.  Because
    the first term is factored out, the absolute fixed-point resolution is
    relative to it.
    """
    prec = mp.prec + 24
    one = 1 << prec
    ar, ai = _fix(a.real, prec), _fix(a.imag, prec)
    br, bi = _fix(b.real, prec), _fix(b.imag, prec)
    cr, ci = _fix(c.real, prec), _fix(c.imag, prec)
    wr, wi = _fix(w.real, prec), _fix(w.imag, prec)
    tr, ti = one, 0
    sr, si = one, 0
    big = one
    start = k
    aw = float(abs(w))
    fa, fb, fc = complex(a), complex(b), complex(c)
    limit = 1 << mp.prec  # at * limit <= |sum| means |term| <= eps |sum|
    while True:
        kk = k * one
        # t *= (a+k)(b+k) w
        xr, xi = ar + kk, ai
        tr, ti = (tr * xr - ti * xi) >> prec, (tr * xi + ti * xr) >> prec
        xr, xi = br + kk, bi
        tr, ti = (tr * xr - ti * xi) >> prec, (tr * xi + ti * xr) >> prec
        tr, ti = (tr * wr - ti * wi) >> prec, (tr * wi + ti * wr) >> prec
        # t /= (k+1)(c+k)
        dr, di = (cr + kk) * (k + 1), ci * (k + 1)
        den = dr * dr + di * di
        if den == 0:
            raise NonConvergenceError("2F1 series: division by zero in term ratio")
        tr, ti = ((tr * dr + ti * di) << prec) // den, ((ti * dr - tr * di) << prec) // den
        k += 1
        sr += tr
        si += ti
        at = max(abs(tr), abs(ti))
        if at > big:
            big = at
        if k - start > MAX_TERMS:
            raise NonConvergenceError(f"2F1 series: no convergence after {MAX_TERMS} terms (|w|={aw:.3g})")
        if tr == 0 and ti == 0:
            break
        if (k - start) % 8 == 0:
            asum = max(abs(sr), abs(si))
            if at * limit <= asum:
                r = _ratio_sup(fa, fb, fc, aw, k)
                if r < 1 and at * limit * math.ceil(r / (1 - r) * 2 ** 20) <= asum << 20:
                    break
    total = mpc(mpmath.ldexp(sr, -prec), mpmath.ldexp(si, -prec))
    n = k - start
    # tail beyond the last term, bounded by the sampled ratio
    r = _ratio_sup(fa, fb, fc, aw, k)
    at = mpmath.ldexp(max(abs(tr), abs(ti)), -prec) * 2
    tail = at * r / (1 - r) if r < 1 else at
    return total, mpmath.ldexp(big, -prec), n, tail


def _ratio_sup(a, b, c, aw, k):
    """Sampled supremum of the term ratio beyond index k (floats)."""
    best = aw
    for j in (k, k + 1, k + 2, k + 5, k + 10, k + 50, 2 * k, 4 * k, 16 * k):
        den = abs(j + 1) * abs(c + j)
        if den == 0:
            return math.inf
        best = max(best, abs(a + j) * abs(b + j) * aw / den)
    return best


def _log_side(u, side):
    """log u; on the negative axis the side picks the argument +-pi."""
    if u.imag == 0 and u.real < 0:
        return mpc(mpmath.log(-u.real), mp.pi if side == "below" else -mp.pi)
    return mpmath.log(u)


def _pow_side(u, e, side):
    if u == 0:
        if e.real > 0:
            return mpc(0)
        raise DomainError("zero base with exponent of nonpositive real part")
    return mpmath.exp(e * _log_side(u, side))


def _near_integer(v, digits):
    r = mpmath.nint(v.real)
    return abs(v - r) < mpf(10) ** (-digits)


def _direct(a, b, c, w, side):
    return _series(a, b, c, w)


def _pfaff(a, b, c, w, side):
    f, e = _series(a, c - b, c, w / (w - 1))
    pre = _pow_side(1 - w, -a, side)
    return pre * f, abs(pre) * e


def _one_minus_w_raw(a, b, c, w, side):
    eps = mpf(2) ** (-mp.prec)
    d = c - a - b
    f1, e1 = _series(a, b, 1 - d, 1 - w)
    f2, e2 = _series(c - a, c - b, d + 1, 1 - w)
    g1 = mpmath.rgamma(c - a) * mpmath.rgamma(c - b)
    g2 = mpmath.rgamma(a) * mpmath.rgamma(b) * _pow_side(1 - w, d, side)
    pre = mp.pi / mpmath.sin(mp.pi * d)
    t1, t2 = pre * g1 * f1, pre * g2 * f2
    err = abs(pre * g1) * e1 + abs(pre * g2) * e2 + 8 * eps * (abs(t1) + abs(t2))
    return t1 - t2, err


def _reciprocal_w_raw(a, b, c, w, side):
    eps = mpf(2) ** (-mp.prec)
    lmw = _log_side(-w, side)
    f1, e1 = _series(a, a - c + 1, a - b + 1, 1 / w)
    f2, e2 = _series(b, b - c + 1, b - a + 1, 1 / w)
    g1 = mpmath.exp(-a * lmw) * mpmath.rgamma(b) * mpmath.rgamma(c - a)
    g2 = mpmath.exp(-b * lmw) * mpmath.rgamma(a) * mpmath.rgamma(c - b)
    pre = mp.pi / mpmath.sin(mp.pi * (b - a))
    t1, t2 = pre * g1 * f1, pre * g2 * f2
    err = abs(pre * g1) * e1 + abs(pre * g2) * e2 + 8 * eps * (abs(t1) + abs(t2))
    return t1 - t2, err


def _perturbed(raw, a, b, c, w, side, which):
    """Average of two evaluations with a parameter shifted by +-delta.

    Used when the connection formula is singular (integer c-a-b or a-b).
    The regularized function is entire in its parameters, so the average
    differs from the exact value by O(delta^2).
    """
    delta = mpf(10) ** (-(mp.dps // 2 + 2))
    if which == "c":
        vp, ep = raw(a, b, c + delta, w, side)
        vm, em = raw(a, b, c - delta, w, side)
    else:
        vp, ep = raw(a, b + delta, c, w, side)
        vm, em = raw(a, b - delta, c, w, side)
    val = (vp + vm) / 2
    return val, (ep + em) / 2 + abs(vp - vm) * delta * 100


def _one_minus_w(a, b, c, w, side):
    if _near_integer(c - a - b, mp.dps // 2):
        return _perturbed(_one_minus_w_raw, a, b, c, w, side, "c")
    return _one_minus_w_raw(a, b, c, w, side)


def _reciprocal_w(a, b, c, w, side):
    if _near_integer(a - b, mp.dps // 2):
        return _perturbed(_reciprocal_w_raw, a, b, c, w, side, "b")
    return _reciprocal_w_raw(a, b, c, w, side)


def _taylor_solutions(a, b, w0, lin, t):
    """The two local solutions with (y, y') = (1, 0) and (0, 1) at w0, at w0 + t.

    Returns, for each, (y, y', sum |terms|, sum |derivative terms|, tail).
    """
    eps = mpf(2) ** (-mp.prec)
    q = w0 * (1 - w0)
    slope = 1 - 2 * w0
    r = abs(t) / min(abs(w0), abs(1 - w0))
    out = []
    for u0, u1 in ((mpc(1), mpc(0)), (mpc(0), t)):
        terms = [u0, u1]
        n = 0
        while True:
            um, u = terms[-2], terms[-1]
            nxt = ((n + a) * (n + b) * t * t * um - (n + 1) * (slope * n + lin) * t * u) / (q * (n + 2) * (n + 1))
            terms.append(nxt)
            n += 1
            if n > MAX_TERMS:
                raise NonConvergenceError("Taylor continuation did not converge")
            size = max(abs(x) for x in terms[:4])
            if n > 4 and abs(u) + abs(nxt) <= eps * size:
                break
        y = mpmath.fsum(terms)
        dy = mpmath.fsum(k * x for k, x in enumerate(terms)) / t
        s0 = mpmath.fsum(abs(x) for x in terms)
        s1 = mpmath.fsum(k * abs(x) for k, x in enumerate(terms)) / abs(t)
        tail = 2 * (abs(terms[-1]) + abs(terms[-2])) * len(terms) / (1 - r)
        out.append((y, dy, s0, s1, tail / min(abs(t), 1)))
    return out


def _taylor(a, b, c, w, side):
    """Continue (F, F') along the ray from TAYLOR_START * w/|w| to w.

    Closes the two lens regions near exp(+-i pi/3) where every linear
    transformation has a series argument of modulus close to one.  Each
    step solves the Gauss equation by power series within TAYLOR_STEP of
    the distance to the nearest singular point.
    """
    eps = mpf(2) ** (-mp.prec)
    ab = a * b
    pos = TAYLOR_START * w / abs(w)
    f, ef = _series(a, b, c, pos)
    d, ed = _series(a + 1, b + 1, c + 1, pos)
    d, ed = ab * d, abs(ab) * ed
    while pos != w:
        h = TAYLOR_STEP * min(abs(pos), abs(1 - pos))
        gap = w - pos
        t = gap if abs(gap) <= h else gap * (h / abs(gap))
        (y1, dy1, s1, p1, t1), (y2, dy2, s2, p2, t2) = _taylor_solutions(a, b, pos, c - (a + b + 1) * pos, t)
        mf, md = abs(f), abs(d)
        nf = f * y1 + d * y2
        nd = f * dy1 + d * dy2
        ef = ef * s1 + ed * s2 + (mf * (s1 + t1) + md * (s2 + t2)) * 64 * eps + mf * t1 + md * t2
        ed = ef * p1 + ed * p2 + (mf * p1 + md * p2) * 64 * eps + mf * t1 + md * t2
        f, d = nf, nd
        pos = w if t is gap else pos + t
    return f, ef


_ROUTES = {
    Route.DIRECT: _direct,
    Route.PFAFF: _pfaff,
    Route.ONE_MINUS_W: _one_minus_w,
    Route.RECIPROCAL_W: _reciprocal_w,
    Route.TAYLOR: _taylor,
}


def route_moduli(w) -> dict:
    """Convergence modulus of the series used by each route."""
    w = complex(w)
    inf = math.inf
    return {
        Route.DIRECT: abs(w),
        Route.PFAFF: abs(w / (w - 1)) if w != 1 else inf,
        Route.ONE_MINUS_W: abs(1 - w),
        Route.RECIPROCAL_W: 1 / abs(w) if w != 0 else inf,
    }


def choose_route(w, radius: float = REGION_RADIUS) -> Route:
    """First route (in fixed priority) whose series argument is within radius.

    The four disks miss two lens regions around w = exp(+-i pi/3), which
    contain no real points; there the Taylor continuation is used.
    """
    mods = route_moduli(w)
    for r in (Route.DIRECT, Route.PFAFF, Route.ONE_MINUS_W, Route.RECIPROCAL_W):
        if mods[r] <= radius:
            return r
    return Route.TAYLOR


def _fallback_routes(w, first):
    """Routes to try after ``first``: other convergent series by modulus, then Taylor."""
    mods = route_moduli(w)
    rest = sorted((r for r, m in mods.items() if m <= FALLBACK_MODULUS and r is not first), key=mods.get)
    if first is not Route.TAYLOR and (w.imag != 0 or w.real < 1):
        rest.append(Route.TAYLOR)
    return [first] + rest


def _run_route(fn, req, target, cap):
    extra = 10
    while True:
        with mp.workdps(target + extra):
            val, err = fn(req.a, req.b, req.c, req.w, req.branch_side)
            if val == 0:
                rel = 0.0 if err == 0 else math.inf
            else:
                rel = float(err / abs(val))
        if rel <= 10.0 ** (-target):
            return val, rel
        if extra >= cap:
            raise NonConvergenceError(f"2F1 cancellation too severe (relative error {rel:.3g})")
        need = (math.log10(rel) + target) if rel != math.inf else extra + 30
        # the estimate can overshoot; the cap itself always gets one attempt
        extra = min(int(extra + need + 10), cap)


def hyp2f1_reg_mp(a, b, c, w, branch_side="none", precision="extended", route=None):
    """Regularized F(a,b;c;w) as (mpc, relative error budget, route).

    The preferred route gets ROUTE_EXTRA_DIGITS of extra working precision;
    if its error estimate does not settle (large parameters next to an
    integer c-a-b or a-b make the connection formulas cancel badly) the
    remaining convergent routes are tried, the last with MAX_EXTRA_DIGITS.
    An explicitly requested route is not replaced.
    """
    req = Hyp2F1Request(a, b, c, w, branch_side, precision)
    target = resolve_dps(req.precision)
    if req.w == 0:
        with mp.workdps(target + 5):
            return mpmath.rgamma(req.c), 0.0, Route.DIRECT
    if req.w == 1:
        raise DomainError("w = 1 is a singular point of the connection formulas")
    routes = [route] if route else _fallback_routes(req.w, choose_route(req.w))
    for i, r in enumerate(routes):
        last = i == len(routes) - 1
        try:
            val, rel = _run_route(_ROUTES[r], req, target, MAX_EXTRA_DIGITS if last else ROUTE_EXTRA_DIGITS)
            return val, rel, r
        except NonConvergenceError:
            if last:
                raise


def _log_form(v, target) -> LogComplex:
    # the log must be taken at the oracle's precision, not the caller's
    with mp.workdps(target + 10):
        return LogComplex.from_value(v)


def hyp2f1_reg(req: Hyp2F1Request) -> OracleValue:
    val, rel, route = hyp2f1_reg_mp(req.a, req.b, req.c, req.w, req.branch_side, req.precision)
    return OracleValue(_log_form(val, resolve_dps(req.precision)), rel, route)


# ----------------------------------------------------------- Jacobi values


def _w_of(z):
    """(1-z)/2 computed accurately from the point type."""
    if isinstance(z, OffCutPoint):
        return -z.sinh_xi ** 2
    if isinstance(z, OnCutPoint):
        return mpc(z.sin_z ** 2)
    return (1 - to_mp(z)) / 2


def jacobi_P_oracle(p: Params, z, precision="extended", check_recurrence=True) -> OracleValue:
    """P_nu^{(alpha,beta)}(z) from its defining hypergeometric function."""
    target = resolve_dps(precision)
    with mp.workdps(target + 10):
        w = _w_of(z)
        if on_cut(w):
            raise DomainError("P oracle: z on the cut (-inf, -1]")
        if is_nonpositive_integer(p.nu + p.alpha + 1):
            raise PoleError("nu + alpha is a negative integer")
        f, rel, route = hyp2f1_reg_mp(-p.nu, p.nu + p.alpha + p.beta + 1, p.alpha + 1, w,
                                      "none", target)
        with mp.workdps(target + 10):
            lg = mpmath.loggamma(p.nu + p.alpha + 1)
            rg = mpmath.rgamma(p.nu + 1)
            val = mpmath.exp(lg) * rg * f
    if check_recurrence and is_integer(p.nu) and 0 <= p.nu.real <= 500:
        rec = jacobi_P_recurrence(int(p.nu.real), p.alpha, p.beta, 1 - 2 * w, target)
        if rec is not None:
            scale = max(abs(rec), abs(val))
            if scale != 0 and abs(rec - val) > 1e-10 * scale:
                raise MismatchError(f"P oracle: recurrence {rec} vs hypergeometric {val}")
    return OracleValue(_log_form(val, target), rel + 10.0 ** (-target), route)


def jacobi_P_recurrence(n: int, alpha, beta, z, precision="extended"):
    """Jacobi polynomial P_n^{(alpha,beta)}(z) by the three-term recurrence.

    Returns None when a recurrence denominator vanishes.
    """
    target = resolve_dps(precision)
    with mp.workdps(target + 15):
        a, b, z = to_mp(alpha), to_mp(beta), to_mp(z)
        p0 = mpc(1)
        if n == 0:
            return p0
        p1 = (a + 1) + (a + b + 2) * (z - 1) / 2
        for k in range(2, n + 1):
            s = 2 * k + a + b
            den = 2 * k * (k + a + b) * (s - 2)
            if den == 0:
                return None
            p0, p1 = p1, ((s - 1) * (s * (s - 2) * z + a * a - b * b) * p1
                          - 2 * (k + a - 1) * (k + b - 1) * s * p0) / den
        return p1


def _q_check_poles(p):
    if is_nonpositive_integer(p.nu + p.alpha + 1) or is_nonpositive_integer(p.nu + p.beta + 1):
        raise PoleError("nu + alpha or nu + beta is a negative integer")


def _q_from_parts(p, log_sinh, log_cosh, w, side, target):
    with mp.workdps(target + 10):
        f, rel, route = hyp2f1_reg_mp(p.nu + 1, p.nu + p.beta + 1, 2 * p.nu + p.alpha + p.beta + 2,
                                      w, side, target)
        # constant 1/2: makes Q agree with the defining 2/(1-z) series
        lq = (-mpmath.log(2) + mpmath.loggamma(p.nu + p.alpha + 1) + mpmath.loggamma(p.nu + p.beta + 1)
              - 2 * p.alpha * log_sinh - (2 * p.nu + 2 * p.beta + 2) * log_cosh)
        v = LogComplex.from_log(lq) * LogComplex.from_value(f)
    return v, rel + 10.0 ** (-target), route


def jacobi_Q_oracle(p: Params, pt: OffCutPoint, precision="extended") -> OracleValue:
    """Q_nu^{(alpha,beta)}(cosh 2xi) through the 1/cosh^2 xi representation."""
    _q_check_poles(p)
    target = resolve_dps(precision)
    with mp.workdps(target + 10):
        ls = mpmath.log(pt.sinh_xi)
        lc = mpmath.log(pt.cosh_xi)
        w = 1 / pt.cosh_xi ** 2
    v, rel, route = _q_from_parts(p, ls, lc, w, "none", target)
    return OracleValue(v, rel, route)


def jacobi_Q_qdef(p: Params, z, precision="extended") -> OracleValue:
    """Q_nu^{(alpha,beta)}(z) from its defining 2/(1-z) hypergeometric function."""
    _q_check_poles(p)
    target = resolve_dps(precision)
    with mp.workdps(target + 10):
        z = to_mp(z.z() if isinstance(z, OffCutPoint) else z)
        if z.imag == 0 and z.real <= 1:
            raise DomainError("Q oracle: z on the cut (-inf, 1]")
        w = 2 / (1 - z)
        f, rel, route = hyp2f1_reg_mp(p.nu + 1, p.nu + p.alpha + 1, 2 * p.nu + p.alpha + p.beta + 2,
                                      w, "none", target)
        lq = ((p.nu + p.alpha + p.beta) * mpmath.log(2) + mpmath.loggamma(p.nu + p.alpha + 1)
              + mpmath.loggamma(p.nu + p.beta + 1) - (p.nu + p.alpha + 1) * mpmath.log(z - 1)
              - p.beta * mpmath.log(z + 1))
        v = LogComplex.from_log(lq) * LogComplex.from_value(f)
    return OracleValue(v, rel + 10.0 ** (-target), route)


def q_side_limit(p: Params, zeta: OnCutPoint, sign: int, precision="extended") -> OracleValue:
    """Q(x + i0) for sign=+1 and Q(x - i0) for sign=-1, x = cos 2 zeta.

    These are the boundary values at xi = +-i zeta: sinh xi -> +-i sin zeta,
    cosh xi -> cos zeta, and 1/cosh^2 xi approaches the cut from below
    (sign=+1) or above (sign=-1).
    """
    _q_check_poles(p)
    target = resolve_dps(precision)
    with mp.workdps(target + 10):
        ls = mpc(mpmath.log(zeta.sin_z), sign * mp.pi / 2)
        lc = mpc(mpmath.log(zeta.cos_z))
        w = mpc(1 / zeta.cos_z ** 2)
    v, rel, route = _q_from_parts(p, ls, lc, w, "below" if sign > 0 else "above", target)
    return OracleValue(v, rel, route)


def q_epsilon_limit(p: Params, zeta: OnCutPoint, sign: int, precision="extended",
                    eps=(1e-6, 5e-7)) -> OracleValue:
    """Numerical side limit by Richardson extrapolation in Re xi (cross-check only)."""
    e1, e2 = eps
    vals = []
    for e in (e1, e2):
        pt = OffCutPoint(mpc(e, sign * zeta.zeta))
        vals.append(jacobi_Q_oracle(p, pt, precision).mp())
    with mp.workdps(resolve_dps(precision) + 10):
        r = e1 / e2
        v = (r * vals[1] - vals[0]) / (r - 1)
        err = float(abs(vals[1] - vals[0]) / abs(v)) * e2 / e1 if v != 0 else math.inf
    return OracleValue(_log_form(v, resolve_dps(precision)), err, Route.EPSILON)


def oncut_oracle(which: str, p: Params, zeta: OnCutPoint, precision="extended",
                 limit: str = "side") -> OracleValue:
    """Qroman, Qsans or P (via the two side limits) at x = cos 2 zeta."""
    side = q_side_limit if limit == "side" else q_epsilon_limit
    qp = side(p, zeta, +1, precision)
    qm = side(p, zeta, -1, precision)
    target = resolve_dps(precision)
    with mp.workdps(target + 10):
        a, b = qp.mp(), qm.mp()
        ea = mpmath.exp(1j * mp.pi * p.alpha)
        if which == "Qroman":
            t1, t2 = a / 2, b / 2
        elif which == "Qsans":
            t1, t2 = ea * a / 2, b / ea / 2
        elif which == "P_via_Q":
            t1, t2 = 1j / mp.pi * ea * a, -1j / mp.pi * b / ea
        else:
            raise ValueError(f"unknown on-cut function {which!r}")
        v = t1 + t2
        mag = abs(t1) + abs(t2)
        rel = (qp.err_budget + qm.err_budget) * float(mag / abs(v)) if v != 0 else math.inf
    return OracleValue(_log_form(v, target), rel, qp.route)
