"""Truncated inverse factorial and factorial expansions of the Jacobi functions.

Every result is produced on the normalized scale (the function times a power
of two and a beta-function factor), where the expansion terms are O(1)
multiples of an explicit prefactor.  The bare function is recovered in log
form by dividing out the normalization.

Off the cut, with x± = e^{±xi}/sinh xi, y± = e^{±xi}/cosh xi and
pref± = x±^{alpha+1/2} y±^{beta+1/2} e^{±2 nu xi}:

  Q, inverse factorial: pref-  * sum g_n(xi)  G(s-n+1)/G(s+2)
  P, inverse factorial: pref+  * sum g_n(-xi) G(s-n+1)/G(s+2)
                        - C pref- * sum g_m(xi) G(s-m+1)/G(s+2)
  Q, factorial:         pref-  * sum (-1)^n g_n(-xi) G(s+2)/G(s+n+2)
  P, factorial:         pref+  * sum (-1)^n g_n(xi) G(s+2)/G(s+n+2)
                        - C pref- * sum (-1)^m g_m(-xi) G(s+2)/G(s+m+2)

On the cut the sums are double sums over l with amplitudes
a_l(alpha) a_{n-l}(beta) / (sin^l zeta cos^{n-l} zeta) and a cosine or sine
of one of four linear phases.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .cgamma import EXTENDED_DPS, LogComplex, gamma_ratio, log_beta, to_mp
from .coeffs import (OffCutPoint, OnCutPoint, Params, a_coeffs, branch_constant,
                     g_coeffs, select_prime)
from .errors import DomainError, PreconditionError

HALF_ODD_TOL = 1e-12


class ExpansionKind(enum.Enum):
    P_offcut_invfac = "p-invfac"
    Q_offcut_invfac = "q-invfac"
    P_oncut_invfac = "p-oncut-invfac"
    Qroman_oncut_invfac = "qroman-oncut-invfac"
    Qsans_oncut_invfac = "qsans-oncut-invfac"
    P_offcut_fac = "p-fac"
    Q_offcut_fac = "q-fac"
    P_oncut_fac = "p-oncut-fac"
    Qroman_oncut_fac = "qroman-oncut-fac"
    Qsans_oncut_fac = "qsans-oncut-fac"

    @property
    def factorial(self) -> bool:
        return not self.name.endswith("invfac")

    @property
    def oncut(self) -> bool:
        return "oncut" in self.name

    @property
    def function(self) -> str:
        return self.name.split("_")[0]

    @classmethod
    def parse(cls, text) -> "ExpansionKind":
        if isinstance(text, cls):
            return text
        for k in cls:
            if text in (k.value, k.name):
                return k
        raise ValueError(f"unknown expansion kind {text!r}")


@dataclass(frozen=True)
class SeriesTermTable:
    gamma_ratios: list
    coefficients: list


@dataclass(frozen=True)
class ExpansionResult:
    """A truncated expansion.

    ``scale`` is the prefactor multiplying the main series (pref- for Q,
    pref+ for P off the cut, the signed trigonometric amplitude on the cut)
    and ``coupling`` the factor -C pref-/pref+ carried by the second P series,
    so that normalized_value = scale * (main_sum + coupling * minus_sum).
    ``next_term`` is the first neglected term of the main series on the
    same (unscaled) footing, used by the real-case sign claims.
    """

    kind: ExpansionKind
    params: Params
    point: object
    normalized_value: mpc
    terms: tuple
    raw_value: LogComplex
    truncations: tuple
    terminated: bool
    scale: mpc
    coupling: mpc | None
    main_sum: mpc
    minus_sum: mpc | None
    next_term: mpc
    tables: tuple = field(repr=False)
    dps: int = EXTENDED_DPS
    convergent_region: bool | None = None

    @property
    def N(self) -> int:
        return self.truncations[0]

    @property
    def M(self) -> int:
        return self.truncations[1]


# ---------------------------------------------------------------- helpers


def half_odd_level(v) -> int | None:
    """L >= 1 with 2v = ±(2L-1) (within HALF_ODD_TOL), else None."""
    v = to_mp(v)
    if abs(v.imag) >= HALF_ODD_TOL:
        return None
    two = 2 * v.real
    r = int(mpmath.nint(two))
    if r % 2 == 0 or abs(two - r) >= HALF_ODD_TOL:
        return None
    return (abs(r) + 1) // 2


def termination_order(p: Params) -> int | None:
    """2L when both 2alpha and 2beta are odd integers, else None."""
    la, lb = half_odd_level(p.alpha), half_odd_level(p.beta)
    if la is None or lb is None:
        return None
    return 2 * max(la, lb)


def normalization(kind: ExpansionKind, p: Params) -> LogComplex:
    """Factor F with normalized_value = F * function value (log form)."""
    s = p.s
    ln2, lnpi = mpmath.log(2), mpmath.log(mp.pi)
    if not kind.factorial:
        lb = log_beta(p.nu + 1, p.nu + p.alpha + p.beta + 1)
        if kind in (ExpansionKind.P_offcut_invfac,):
            lf = (s + 1) * ln2 + lb
        elif kind is ExpansionKind.P_oncut_invfac:
            lf = s * ln2 + lb
        else:
            lf = (s + 1) * ln2 - lnpi + lb
    else:
        lb = log_beta(p.nu + p.alpha + 1, p.nu + p.beta + 1)
        if kind is ExpansionKind.P_offcut_fac:
            lf = lnpi - s * ln2 - lb
        elif kind is ExpansionKind.P_oncut_fac:
            lf = lnpi - (s + 1) * ln2 - lb
        else:
            lf = -s * ln2 - lb
    return LogComplex.from_log(lf)


def _gamma_table(s, nmax, factorial):
    """G(s-n+1)/G(s+2) or G(s+2)/G(s+n+2) for n = 0..nmax, by recurrence."""
    out = []
    if factorial:
        g = mpc(1)
        for n in range(nmax + 1):
            if n:
                g /= s + n + 1
            out.append(g)
    else:
        g = 1 / (s + 1)
        for n in range(nmax + 1):
            if n:
                g /= s - n + 1
            out.append(g)
    return out


def _check_invfac(p, n):
    if not (p.s.real + 1 > n):
        raise PreconditionError("Re(2ν+α+β+1) > N", f"Re(2ν+α+β+1)={float(p.s.real + 1):.6g}, N={n}")


def _check_fac(p, tie):
    pr = select_prime(p.alpha, p.beta, tie)
    rhs = (pr.alpha_prime + pr.beta_prime).real
    if not (p.s.real + 1 > rhs):
        raise PreconditionError("Re(2ν+α+β+1) > Re(α′+β′)",
                                f"Re(2ν+α+β+1)={float(p.s.real + 1):.6g}, Re(α′+β′)={float(rhs):.6g}")


def _clamp(p, N, M, has_minus):
    t = termination_order(p)
    if t is None:
        return N, M, False
    return min(N, t), min(M, t), N >= t and (M >= t or not has_minus)


def _prefactor(p, pt, sign):
    lx = mpmath.log(pt.x(sign))
    ly = mpmath.log(pt.y(sign))
    return mpmath.exp((p.alpha + mpf(0.5)) * lx + (p.beta + mpf(0.5)) * ly
                      + sign * 2 * p.nu * pt.xi)


def _check_point(kind, point):
    want = OnCutPoint if kind.oncut else OffCutPoint
    if not isinstance(point, want):
        raise DomainError(f"{kind.value} needs an {want.__name__}")


# ------------------------------------------------------------- series build


@dataclass
class _Build:
    """Per-n contributions (unscaled) up to nmax for one configuration."""

    kind: ExpansionKind
    p: Params
    point: object
    main: list
    minus: list | None
    scale: mpc
    coupling: mpc | None
    tables: tuple
    norm: LogComplex
    dps: int


def _build_offcut(kind, p, pt, nmax):
    s = p.s
    fac = kind.factorial
    gam = _gamma_table(s, nmax, fac)
    if kind.function == "Q":
        # invfac uses g_n(xi), factorial (-1)^n g_n(-xi)
        g = g_coeffs(nmax, +1 if not fac else -1, pt, p)
        coef = [g[n] * (-1) ** n if fac else g[n] for n in range(nmax + 1)]
        main = [coef[n] * gam[n] for n in range(nmax + 1)]
        return main, None, _prefactor(p, pt, -1), None, (SeriesTermTable(gam, coef),)
    gp = g_coeffs(nmax, -1 if not fac else +1, pt, p)
    gm = g_coeffs(nmax, +1 if not fac else -1, pt, p)
    sg = [(-1) ** n if fac else 1 for n in range(nmax + 1)]
    cp = [gp[n] * sg[n] for n in range(nmax + 1)]
    cm = [gm[n] * sg[n] for n in range(nmax + 1)]
    pref_p = _prefactor(p, pt, +1)
    pref_m = _prefactor(p, pt, -1)
    coupling = -branch_constant(pt, p.alpha) * pref_m / pref_p
    return ([cp[n] * gam[n] for n in range(nmax + 1)],
            [cm[n] * gam[n] for n in range(nmax + 1)],
            pref_p, coupling, (SeriesTermTable(gam, cp), SeriesTermTable(gam, cm)))


_ONCUT_SPEC = {
    # kind -> (phase base sign for (alpha+1/2)pi/2, l-direction, use sine)
    ExpansionKind.P_oncut_invfac: (-1, +1, False),
    ExpansionKind.Qroman_oncut_invfac: (+1, +1, False),
    ExpansionKind.Qsans_oncut_invfac: (-1, +1, True),
    ExpansionKind.P_oncut_fac: (-1, -1, False),
    ExpansionKind.Qroman_oncut_fac: (+1, -1, False),
    ExpansionKind.Qsans_oncut_fac: (-1, -1, True),
}


def _rot(c, s, k):
    """(cos, sin) of theta + k*pi/2 from cos theta, sin theta."""
    k %= 4
    return ((c, s), (-s, c), (-c, -s), (s, -c))[k]


def _build_oncut(kind, p, zt, nmax):
    s = p.s
    fac = kind.factorial
    gam = _gamma_table(s, nmax, fac)
    base_sign, ldir, use_sin = _ONCUT_SPEC[kind]
    aa = a_coeffs(nmax, p.alpha)
    ab = a_coeffs(nmax, p.beta)
    si, co = zt.sin_z, zt.cos_z
    coef = []
    for n in range(nmax + 1):
        m = s + (n if fac else -n) + 1
        theta = m * zt.zeta + base_sign * (p.alpha + mpf(0.5)) * mp.pi / 2
        c0, s0 = mpmath.cos(theta), mpmath.sin(theta)
        acc = []
        for l in range(n + 1):
            c, sn = _rot(c0, s0, ldir * l)
            trig = sn if use_sin else c
            acc.append(aa[l] * ab[n - l] / (si ** l * co ** (n - l)) * trig)
        v = mpmath.fsum(acc)
        coef.append(-v if fac and n % 2 else v)
    amp = mpmath.exp(-(p.alpha + mpf(0.5)) * mpmath.log(si) - (p.beta + mpf(0.5)) * mpmath.log(co))
    if kind.function == "Qsans":
        amp = -amp
    main = [coef[n] * gam[n] for n in range(nmax + 1)]
    return main, None, amp, None, (SeriesTermTable(gam, coef),)


def build(kind, p: Params, point, nmax: int, dps: int = EXTENDED_DPS) -> _Build:
    """Compute all per-order contributions through order nmax."""
    kind = ExpansionKind.parse(kind)
    _check_point(kind, point)
    with mp.workdps(dps):
        if not kind.factorial:
            # orders beyond Re(s)+1 hit gamma poles; assemble reports them
            nmax = max(0, min(nmax, int(mpmath.ceil(p.s.real + 1)) - 1))
        fn = _build_oncut if kind.oncut else _build_offcut
        main, minus, scale, coupling, tables = fn(kind, p, point, nmax)
        norm = normalization(kind, p)
    return _Build(kind, p, point, main, minus, scale, coupling, tables, norm, dps)


def assemble(b: _Build, N: int, M: int | None = None, tie: str = "plus") -> ExpansionResult:
    """Truncate a build at N (and M for the second P series)."""
    kind, p = b.kind, b.p
    if M is None:
        M = N
    has_minus = b.minus is not None
    if not has_minus:
        M = 0
    with mp.workdps(b.dps):
        if kind.factorial:
            _check_fac(p, tie)
        else:
            _check_invfac(p, max(N, M))
        N, M, terminated = _clamp(p, N, M, has_minus)
        top = max(N, M)
        if top >= len(b.main):
            raise ValueError(f"build holds orders < {len(b.main)}, asked for {top}")
        main_sum = mpmath.fsum(b.main[:N]) if N else mpc(0)
        terms = []
        for n in range(top):
            if n < N:
                terms.append(b.scale * b.main[n])
            if has_minus and n < M:
                terms.append(b.scale * b.coupling * b.minus[n])
        if has_minus:
            minus_sum = mpmath.fsum(b.minus[:M]) if M else mpc(0)
            value = b.scale * (main_sum + b.coupling * minus_sum)
        else:
            minus_sum = None
            value = b.scale * main_sum
        raw = LogComplex.from_value(value) / b.norm
        region = None
        if kind.factorial and kind.oncut:
            region = bool(mp.pi / 6 < b.point.zeta < mp.pi / 3)
        elif kind.factorial:
            e2 = b.point.exp_plus ** 2
            ok_m = abs((1 / e2).real) < 0.5
            region = bool(ok_m and (kind.function == "Q" or abs(e2.real) < 0.5))
    return ExpansionResult(kind, p, b.point, value, tuple(terms), raw, (N, M), terminated,
                           b.scale, b.coupling, main_sum, minus_sum, b.main[N] if N < len(b.main) else mpc(0),
                           b.tables, b.dps, region)


def evaluate(kind, p: Params, point, N: int, M: int | None = None, tie: str = "plus",
             dps: int = EXTENDED_DPS) -> ExpansionResult:
    kind = ExpansionKind.parse(kind)
    n = max(N, M or 0)
    t = termination_order(p)
    if t is not None:
        n = min(n, t)
    return assemble(build(kind, p, point, n, dps), N, M, tie)


def eval_invfac_offcut(which, p, pt, N, M=None, dps=EXTENDED_DPS) -> ExpansionResult:
    kind = {"P": ExpansionKind.P_offcut_invfac, "Q": ExpansionKind.Q_offcut_invfac}[which]
    return evaluate(kind, p, pt, N, M, dps=dps)


def eval_invfac_oncut(which, p, zeta, N, dps=EXTENDED_DPS) -> ExpansionResult:
    kind = {"P": ExpansionKind.P_oncut_invfac, "Qroman": ExpansionKind.Qroman_oncut_invfac,
            "Qsans": ExpansionKind.Qsans_oncut_invfac}[which]
    return evaluate(kind, p, zeta, N, dps=dps)


def eval_fac_offcut(which, p, pt, N, M=None, tie="plus", dps=EXTENDED_DPS) -> ExpansionResult:
    kind = {"P": ExpansionKind.P_offcut_fac, "Q": ExpansionKind.Q_offcut_fac}[which]
    return evaluate(kind, p, pt, N, M, tie=tie, dps=dps)


def eval_fac_oncut(which, p, zeta, N, tie="plus", dps=EXTENDED_DPS) -> ExpansionResult:
    kind = {"P": ExpansionKind.P_oncut_fac, "Qroman": ExpansionKind.Qroman_oncut_fac,
            "Qsans": ExpansionKind.Qsans_oncut_fac}[which]
    return evaluate(kind, p, zeta, N, tie=tie, dps=dps)


def legendre_wrap(kind: str, nu, mu, point, jacobi_value: LogComplex) -> LogComplex:
    """Associated Legendre / Ferrers value from the matching Jacobi value.

    ``jacobi_value`` is P^{(-mu,mu)} (kind P, FerrersP), Q^{(-mu,mu)} (Q) or
    the Durand on-cut function (FerrersQ) at the same point, e.g. the
    ``raw_value`` of an expansion or an oracle value.
    """
    nu, mu = to_mp(nu), to_mp(mu)
    ratio = gamma_ratio(nu, 1, 1 - mu)
    if kind in ("P", "Q"):
        if not isinstance(point, OffCutPoint):
            raise DomainError("Legendre P/Q need an off-cut point")
        lcoth = mpmath.log(point.cosh_xi / point.sinh_xi)
        pre = LogComplex.from_log(mu * lcoth)
        if kind == "Q":
            pre = pre * LogComplex.from_log(1j * mp.pi * mu)
    elif kind in ("FerrersP", "FerrersQ"):
        if not isinstance(point, OnCutPoint):
            raise DomainError("Ferrers functions need an on-cut point")
        pre = LogComplex.from_log(mu * mpmath.log(point.cos_z / point.sin_z))
    else:
        raise ValueError(f"unknown Legendre kind {kind!r}")
    return ratio * pre * jacobi_value
