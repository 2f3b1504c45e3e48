"""Computable remainder bounds for the truncated expansions.

Each family offers several alternative inequalities that differ in the
parameter strip they need:

  alpha  first term carries a_N(Re alpha); Re(alpha) may leave the strip
  beta   the same with the roles of alpha and beta exchanged
  strip  both |Re alpha|, |Re beta| < 1/2, a single symmetric sum
  gmax   factorial series only: a sum weighted by the maximum of g(w)
         along a curve, needs Re(alpha'+beta') > 0 or alpha = beta = 0

Variant ids are ``<family>-<remainder>-<proviso>`` with family one of
``if`` (inverse factorial, off the cut), ``ifcut``, ``f`` (factorial, off
the cut) and ``fcut``; remainder ``p1`` / ``p2`` (the two P series) or
``q``; on-cut ids omit the remainder part.  Bounds live on the scale of
the bracketed remainders, i.e. before multiplication by the prefactor in
front of each series.

Common shorthands below: K(v) = cos(pi v)/cos(pi Re v), s = 2 nu + alpha + beta,
Gm = Gamma(Re s - N + 1)/|Gamma(s+2)|, Gp = |Gamma(s+2)|/Gamma(Re s + N + 2),
A = Gamma(Re(s - alpha' - beta') + 1)/|Gamma(s - alpha' - beta' + 1)|,
Bp = Gamma(Re alpha' + 1/2) Gamma(Re beta' + 1/2)/|Gamma(alpha'+1/2) Gamma(beta'+1/2)|,
Ha = |Gamma(N + 1 - alpha' - beta')|/Gamma(Re(N + 1 - alpha' - beta')).
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .cgamma import chi, log_gamma, to_mp
from .coeffs import (OffCutPoint, OnCutPoint, ParamPrime, Params, a_coeffs, g_func,
                     select_prime, zeta_phase)
from .errors import DomainError, MismatchError, PreconditionError

BOUND_DPS = 30
LIMIT_GUARD = 1e-6
DEFAULT_SLACK = 1e-9
GRID_POINTS = 2048


class BoundVariant(str, enum.Enum):
    IF_P1_ALPHA = "if-p1-alpha"
    IF_P1_BETA = "if-p1-beta"
    IF_P1_STRIP = "if-p1-strip"
    IF_P2_ALPHA = "if-p2-alpha"
    IF_P2_BETA = "if-p2-beta"
    IF_P2_STRIP = "if-p2-strip"
    IF_Q_ALPHA = "if-q-alpha"
    IF_Q_BETA = "if-q-beta"
    IF_Q_STRIP = "if-q-strip"
    IFCUT_ALPHA = "ifcut-alpha"
    IFCUT_BETA = "ifcut-beta"
    IFCUT_STRIP = "ifcut-strip"
    F_P1_ALPHA = "f-p1-alpha"
    F_P1_BETA = "f-p1-beta"
    F_P1_STRIP = "f-p1-strip"
    F_P1_GMAX = "f-p1-gmax"
    F_P2_ALPHA = "f-p2-alpha"
    F_P2_BETA = "f-p2-beta"
    F_P2_STRIP = "f-p2-strip"
    F_P2_GMAX = "f-p2-gmax"
    F_Q_ALPHA = "f-q-alpha"
    F_Q_BETA = "f-q-beta"
    F_Q_STRIP = "f-q-strip"
    F_Q_GMAX = "f-q-gmax"
    FCUT_ALPHA = "fcut-alpha"
    FCUT_BETA = "fcut-beta"
    FCUT_STRIP = "fcut-strip"
    FCUT_GMAX = "fcut-gmax"

    @property
    def proviso(self) -> str:
        return self.value.rsplit("-", 1)[1]


def _variant(prefix: str, proviso: str) -> BoundVariant:
    return BoundVariant(f"{prefix}-{proviso}")


@dataclass
class BoundReport:
    """Outcome of a bound evaluation.

    ``candidates`` maps every evaluated variant to its value (None when the
    variant's strip condition fails); ``bound``/``variant`` hold the
    selected one.  For the two-series P expansions ``partner`` is the report
    of the second series and ``bound`` the combined value
    B1 + |coupling| B2.
    """

    bound: mpf | None
    variant: BoundVariant | None
    applicable: bool
    conditions_checked: list = field(default_factory=list)
    monotone_claim: str | None = None
    candidates: dict = field(default_factory=dict)
    partner: "BoundReport | None" = None
    note: str = ""


@dataclass(frozen=True)
class CertRecord:
    ratio: float
    passed: bool
    remainder: mpf
    bound: mpf | None
    floor: mpf
    variant: str
    slack: float


# ------------------------------------------------------------- shorthands


def _re_gamma_ratio(x) -> mpf:
    """Gamma(Re x)/|Gamma(x)| for Re x > 0."""
    return _re_gamma_ratio_cached(to_mp(x), mp.prec)


@functools.lru_cache(maxsize=4096)
def _re_gamma_ratio_cached(x, prec):
    return mpmath.exp(log_gamma(mpc(x.real)).real - log_gamma(x).real)


def _k(v) -> mpf:
    """|cos(pi v)/cos(pi Re v)|; infinite on the singular lines."""
    v = to_mp(v)
    den = mpmath.cos(mp.pi * v.real)
    if den == 0:
        return mpf("inf")
    return abs(mpmath.cos(mp.pi * v) / den)


def _ka(v, n: int) -> mpf:
    """|cos(pi v)/cos(pi Re v) * a_n(Re v)| with the removable limit taken.

    Near Re v = +-(L - 1/2) the factor 4 mu^2 - (2L-1)^2 of a_n(mu) and
    cos(pi mu) vanish together; their quotient is evaluated in closed form.
    """
    return _ka_cached(to_mp(v), n, mp.prec)


@functools.lru_cache(maxsize=4096)
def _ka_cached(v, n, prec):
    mu = v.real
    mu0 = mpmath.floor(mu) + mpf(0.5)
    if abs(mu - mu0) > abs(mu - (mu0 - 1)):
        mu0 -= 1
    d = mu - mu0
    L = int(abs(mu0) + mpf(0.5))
    if abs(d) >= LIMIT_GUARD or n < L:
        return _k(v) * abs(a_coeffs(n, mu)[n])
    # a_n(mu) = prod_k (4mu^2 - (2k-1)^2) / (8^n n!), drop k = L
    rest = mpf(1)
    for k in range(1, n + 1):
        if k != L:
            rest *= (4 * mu * mu - (2 * k - 1) ** 2) / (8 * k)
    rest /= 8 * L
    sgn = (-1) ** L if mu0 > 0 else (-1) ** (L + 1)
    dsin = 1 / mp.pi if d == 0 else d / mpmath.sin(mp.pi * d)
    quotient = 4 * (2 * mu0 + d) * sgn * dsin
    return abs(mpmath.cos(mp.pi * v) * quotient * rest)


def _csc2im(pt: OffCutPoint) -> mpf:
    s = mpmath.sin(2 * pt.xi.imag)
    return mpf("inf") if s == 0 else abs(1 / s)


class _Clusters:
    """Gamma-function clusters shared by the variants at one order N."""

    def __init__(self, p: Params, N: int, prime: ParamPrime | None):
        s = p.s
        self.lg_s2 = log_gamma(s + 2).real
        self.s = s
        self.N = N
        self.prime = prime
        if prime is not None:
            ap, bp = prime.alpha_prime, prime.beta_prime
            self.A = _re_gamma_ratio(s - ap - bp + 1)
            self.Ba = _re_gamma_ratio(ap + mpf(0.5))
            self.Bb = _re_gamma_ratio(bp + mpf(0.5))

    def gm(self):
        return mpmath.exp(log_gamma(mpc(self.s.real - self.N + 1)).real - self.lg_s2)

    def gp(self):
        return mpmath.exp(self.lg_s2 - log_gamma(mpc(self.s.real + self.N + 2)).real)

    def ga(self, l):
        return _re_gamma_ratio(self.prime.alpha_prime + l + mpf(0.5))

    def gb(self, l):
        return _re_gamma_ratio(self.prime.beta_prime + l + mpf(0.5))

    def ha(self):
        ap, bp = self.prime.alpha_prime, self.prime.beta_prime
        x = -ap - bp + self.N + 1
        return 1 / _re_gamma_ratio(x)


def _sums(p: Params, N: int, w: list, ga=None, gb=None):
    """Coefficient sums of the three layouts.

    w[l] is the nonnegative weight multiplying a_l(.)a_{N-l}(.) (powers of
    x, y or 1/sin, 1/cos, times any cosh factor).  ga(l), gb(l) are optional
    extra per-term gamma weights used by the factorial variants.
    """
    al, be = p.alpha, p.beta
    a_al = a_coeffs(N, al)
    a_be = a_coeffs(N, be)
    one = lambda l: mpf(1)  # noqa: E731
    ga = ga or one
    gb = gb or one
    out = {}
    # alpha layout: head K(a)K(b) a_N(Re a) w_N, tail sum_{l<N} K(b) Ga(l) a_l(a) a_{N-l}(Re b) w_l
    out["alpha"] = (_k(be) * _ka(al, N) * w[N],
                    mpmath.fsum(ga(l) * abs(a_al[l]) * _ka(be, N - l) * w[l] for l in range(N)))
    # beta layout: head K(a)K(b) a_N(Re b) w_0, tail sum_{1<=l<=N} K(a) Gb(l) a_l(Re a) a_{N-l}(b) w_l
    out["beta"] = (_k(al) * _ka(be, N) * w[0],
                   mpmath.fsum(gb(l) * _ka(al, l) * abs(a_be[N - l]) * w[l] for l in range(1, N + 1)))
    out["strip"] = mpmath.fsum(_ka(al, l) * _ka(be, N - l) * w[l] for l in range(N + 1))
    return out


def _strips(p: Params, N: int, factorial: bool):
    ra, rb = p.alpha.real, p.beta.real
    half = mpf(0.5)
    lo = -half if factorial else None

    def within(r, top):
        return (r > lo if lo is not None else abs(r) < top) and (r < top if lo is not None else True)

    return {
        "alpha": [("Re(α) range", within(ra, N + half)), ("|Re(β)| < 1/2", abs(rb) < half)],
        "beta": [("|Re(α)| < 1/2", abs(ra) < half), ("Re(β) range", within(rb, N + half))],
        "strip": [("|Re(α)| < 1/2", abs(ra) < half), ("|Re(β)| < 1/2", abs(rb) < half)],
    }


def _powers(x, y, N):
    ax, ay = abs(x), abs(y)
    return [ax ** l * ay ** (N - l) for l in range(N + 1)]


def _finish(cands: dict, conds: list, variant=None, claim=None) -> BoundReport:
    if variant is not None:
        variant = BoundVariant(variant)
        if variant not in cands:
            raise ValueError(f"variant {variant.value} does not belong to this bound family")
        val = cands[variant]
        ok = val is not None and mpmath.isfinite(val)
        return BoundReport(val if ok else None, variant, ok, conds, claim, cands)
    usable = {k: v for k, v in cands.items() if v is not None and mpmath.isfinite(v)}
    if not usable:
        return BoundReport(None, None, False, conds, claim, cands)
    best = min(usable, key=lambda k: usable[k])
    return BoundReport(usable[best], best, True, conds, claim, cands)


def _real_case(p: Params, pt: OffCutPoint) -> bool:
    return pt.is_real and p.is_real() and abs(p.alpha.real) < 0.5 and abs(p.beta.real) < 0.5


# ------------------------------------------------- inverse factorial, off cut


def bound_invfac_offcut(which: str, p: Params, pt: OffCutPoint, N: int, prime: ParamPrime | None = None,
                        variant=None, dps: int = BOUND_DPS) -> BoundReport:
    """Bounds for R_N^{(P1)} (which='P_plus'), R_M^{(P2)} ('P_minus') or R_N^{(Q)} ('Q')."""
    if which not in ("P_plus", "P_minus", "Q"):
        raise ValueError(f"unknown remainder {which!r}")
    with mp.workdps(dps):
        if not (p.s.real + 1 > N):
            raise PreconditionError("Re(2ν+α+β+1) > N")
        sign = -1 if which == "P_plus" else +1
        w = _powers(pt.x(sign), pt.y(sign), N)
        cl = _Clusters(p, N, None)
        gm = cl.gm()
        sums = _sums(p, N, w)
        strips = _strips(p, N, False)
        prefix = {"P_plus": "if-p1", "P_minus": "if-p2", "Q": "if-q"}[which]
        case = mpf(1)
        if which == "P_plus" and (pt.exp_plus ** 2).real > 1:
            case = min(abs(1 - pt.exp_minus ** 2) * _csc2im(pt), 1 + chi(N + mpf(0.5)))
        cands, conds = {}, []
        for prov, cs in strips.items():
            conds += [(f"{prov}: {n}", ok) for n, ok in cs]
            var = _variant(prefix, prov)
            if not all(ok for _, ok in cs):
                cands[var] = None
                continue
            if prov == "strip":
                val = sums["strip"] * gm * case
            elif prov == "alpha" and which == "P_plus":
                head, tail = sums["alpha"]
                val = head * gm * case + tail * gm
            else:
                head, tail = sums[prov]
                val = (head + tail) * gm * case
            cands[var] = val
        claim = None
        if which != "P_plus" and _real_case(p, pt) and p.s.real + 1 > N:
            claim = "same_sign_first_term"
        return _finish(cands, conds, variant, claim)


# --------------------------------------------------- inverse factorial, on cut


def bound_invfac_oncut(which: str, p: Params, zeta: OnCutPoint, N: int, variant=None,
                       dps: int = BOUND_DPS) -> BoundReport:
    """Bounds for the on-cut remainders (which = 'P', 'Qroman' or 'Qsans')."""
    with mp.workdps(dps):
        if not (p.s.real + 1 > N):
            raise PreconditionError("Re(2ν+α+β+1) > N")
        kind = 2 if which == "Qroman" else 1
        w = [abs(1 / (zeta.sin_z ** l * zeta.cos_z ** (N - l)))
             * mpmath.cosh(zeta_phase(kind, p, zeta, N, l).imag) for l in range(N + 1)]
        gm = _Clusters(p, N, None).gm()
        sums = _sums(p, N, w)
        cands, conds = {}, []
        for prov, cs in _strips(p, N, False).items():
            conds += [(f"{prov}: {n}", ok) for n, ok in cs]
            var = _variant("ifcut", prov)
            if not all(ok for _, ok in cs):
                cands[var] = None
                continue
            val = sums["strip"] if prov == "strip" else sum(sums[prov])
            cands[var] = val * gm
        return _finish(cands, conds, variant)


# -------------------------------------------------------- factorial, off cut


def _case_q1(e2, c4):
    if e2.real >= 1:
        return abs(1 + 1 / e2)
    if e2.real <= -1:
        return abs(1 - 1 / e2)
    return c4


def _check_fac_pre(p, prime):
    if not (p.s.real + 1 > (prime.alpha_prime + prime.beta_prime).real):
        raise PreconditionError("Re(2ν+α+β+1) > Re(α′+β′)")


def bound_fac_offcut(which: str, p: Params, pt: OffCutPoint, N: int, prime: ParamPrime | None = None,
                     variant=None, dps: int = BOUND_DPS, include_gmax: bool = True) -> BoundReport:
    """Bounds for the factorial remainders off the cut.

    Includes the g-maximization variant unless ``include_gmax`` is false.
    """
    if which not in ("P_plus", "P_minus", "Q"):
        raise ValueError(f"unknown remainder {which!r}")
    prime = prime or select_prime(p.alpha, p.beta)
    with mp.workdps(dps):
        _check_fac_pre(p, prime)
        prefix = {"P_plus": "f-p1", "P_minus": "f-p2", "Q": "f-q"}[which]
        if which != "Q" and pt.is_real:
            cands = {_variant(prefix, v): None for v in ("alpha", "beta", "strip", "gmax")}
            rep = _finish(cands, [("ξ ∉ ℝ⁺", False)], variant)
            rep.note = "P factorial bounds need a non-real xi"
            return rep
        sign = +1 if which == "P_plus" else -1
        w = _powers(pt.x(sign), pt.y(sign), N)
        cl = _Clusters(p, N, prime)
        gp = cl.gp()
        sums = _sums(p, N, w, ga=cl.ga, gb=lambda l: cl.gb(N - l))
        e2 = pt.exp_plus ** 2
        em2 = 1 / e2
        csc = _csc2im(pt)
        if which == "P_plus":
            c_head = abs(1 - e2 * e2) * csc
            c_alpha = abs(1 + e2) * (csc if em2.real <= 0 else 1)
            c_beta = abs(1 - e2) * (csc if em2.real >= 0 else 1)
        else:
            c_head = _case_q1(e2, abs(1 - em2 * em2) * csc)
            if e2.real <= -1:
                c_alpha = mpf(1)
            elif e2.real <= 0:
                c_alpha = abs(1 + em2) * csc
            else:
                c_alpha = abs(1 + em2)
            if e2.real >= 1:
                c_beta = mpf(1)
            elif e2.real >= 0:
                c_beta = abs(1 - em2) * csc
            else:
                c_beta = abs(1 - em2)
        A, Ba, Bb = cl.A, cl.Ba, cl.Bb
        cands, conds = {}, []
        for prov, cs in _strips(p, N, True).items():
            conds += [(f"{prov}: {n}", ok) for n, ok in cs]
            var = _variant(prefix, prov)
            if not all(ok for _, ok in cs):
                cands[var] = None
                continue
            if prov == "strip":
                val = A * Ba * Bb * sums["strip"] * gp * c_head
            elif prov == "alpha":
                head, tail = sums["alpha"]
                val = A * Ba * Bb * head * gp * c_head + A * Bb * tail * gp * c_alpha
            else:
                head, tail = sums["beta"]
                val = A * Ba * Bb * head * gp * c_head + A * Ba * tail * gp * c_beta
            cands[var] = val
        if include_gmax:
            g = bound_fac_offcut_gmax(which, p, pt, N, prime, dps=dps)
            cands.update(g.candidates)
            conds += g.conditions_checked
        claim = None
        if which == "Q" and _real_case(p, pt):
            claim = "twice_first_term"
        return _finish(cands, conds, variant, claim)


@functools.lru_cache(maxsize=1024)
def max_g_on_curve(P: complex, Q: complex, sigma: int, grid: int = GRID_POINTS, tol: float = 1e-12):
    """max over u in [0, pi/2] of g((sigma sin^2 u P + cos^2 u Q)/(1 + sin 2u)).

    Dense grid followed by golden-section refinement around the best grid
    point.  Raises DomainError if the curve meets the cut of g.
    """
    def arg(u):
        s2, c2 = math.sin(u) ** 2, math.cos(u) ** 2
        return (sigma * s2 * P + c2 * Q) / (1 + math.sin(2 * u))

    def gval(u):
        w = arg(u)
        if w.imag == 0 and w.real >= 1:
            raise DomainError(f"g-maximization: curve meets the cut at u={u}")
        if w.real <= 0:
            return 1.0
        if w.real <= abs(w) ** 2:
            return abs(w / w.imag)
        return 1 / abs(1 - w)

    h = (math.pi / 2) / (grid - 1)
    us = [k * h for k in range(grid)]
    vals = [gval(u) for u in us]
    k = max(range(grid), key=vals.__getitem__)
    a, b = us[max(k - 1, 0)], us[min(k + 1, grid - 1)]
    ratio = (math.sqrt(5) - 1) / 2
    c, d = b - ratio * (b - a), a + ratio * (b - a)
    fc, fd = gval(c), gval(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = gval(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = gval(d)
    return max(vals[k], fc, fd)


def _gmax_conditions(p: Params, prime: ParamPrime):
    half = mpf(0.5)
    zero = p.alpha == 0 and p.beta == 0
    return [("gmax: |Re(α)| < 1/2", abs(p.alpha.real) < half),
            ("gmax: |Re(β)| < 1/2", abs(p.beta.real) < half),
            ("gmax: Re(α′+β′) > 0 or α = β = 0",
             (prime.alpha_prime + prime.beta_prime).real > 0 or zero)]


def bound_fac_offcut_gmax(which: str, p: Params, pt: OffCutPoint, N: int, prime: ParamPrime | None = None,
                          variant=None, dps: int = BOUND_DPS) -> BoundReport:
    """The g-maximization bound for the factorial remainders off the cut."""
    prime = prime or select_prime(p.alpha, p.beta)
    prefix = {"P_plus": "f-p1", "P_minus": "f-p2", "Q": "f-q"}[which]
    var = _variant(prefix, "gmax")
    with mp.workdps(dps):
        _check_fac_pre(p, prime)
        conds = _gmax_conditions(p, prime)
        if which != "Q" and pt.is_real:
            conds.append(("ξ ∉ ℝ⁺", False))
        if not all(ok for _, ok in conds):
            return _finish({var: None}, conds, variant)
        sign = +1 if which == "P_plus" else -1
        e = pt.exp_plus if sign > 0 else pt.exp_minus
        P = complex(e / (2 * pt.sinh_xi))
        Q = complex(e / (2 * pt.cosh_xi))
        try:
            gmax = mpf(max_g_on_curve(P, Q, +1 if sign > 0 else -1))
        except DomainError as exc:
            rep = _finish({var: None}, conds + [("gmax: curve avoids the cut", False)], variant)
            rep.note = str(exc)
            return rep
        w = _powers(pt.x(sign), pt.y(sign), N)
        cl = _Clusters(p, N, prime)
        total = _sums(p, N, w)["strip"]
        val = cl.A * cl.ha() * total * cl.gp() * gmax
        return _finish({var: val}, conds, variant)


# ----------------------------------------------------------- factorial, on cut


def bound_fac_oncut(which: str, p: Params, zeta: OnCutPoint, N: int, prime: ParamPrime | None = None,
                    variant=None, dps: int = BOUND_DPS) -> BoundReport:
    """Bounds for the on-cut factorial remainders (which = 'P', 'Qroman', 'Qsans')."""
    prime = prime or select_prime(p.alpha, p.beta)
    with mp.workdps(dps):
        _check_fac_pre(p, prime)
        kind = 4 if which == "Qroman" else 3
        si, co = zeta.sin_z, zeta.cos_z
        w = [abs(1 / (si ** l * co ** (N - l))) * mpmath.cosh(zeta_phase(kind, p, zeta, N, l).imag)
             for l in range(N + 1)]
        cl = _Clusters(p, N, prime)
        gp = cl.gp()
        # the beta layout's gamma weight is indexed by l as displayed
        sums = _sums(p, N, w, ga=cl.ga, gb=cl.gb)
        below = zeta.zeta < mp.pi / 4
        c_alpha = 2 * co if below else 1 / si
        c_beta = 1 / co if below else 2 * si
        A, Ba, Bb = cl.A, cl.Ba, cl.Bb
        cands, conds = {}, []
        for prov, cs in _strips(p, N, True).items():
            conds += [(f"{prov}: {n}", ok) for n, ok in cs]
            var = _variant("fcut", prov)
            if not all(ok for _, ok in cs):
                cands[var] = None
                continue
            if prov == "strip":
                val = 2 * A * Ba * Bb * sums["strip"] * gp
            elif prov == "alpha":
                head, tail = sums["alpha"]
                val = 2 * A * Ba * Bb * head * gp + A * Bb * tail * gp * c_alpha
            else:
                head, tail = sums["beta"]
                val = 2 * A * Ba * Bb * head * gp + A * Ba * tail * gp * c_beta
            cands[var] = val
        gconds = _gmax_conditions(p, prime)
        conds += gconds
        var = BoundVariant.FCUT_GMAX
        if all(ok for _, ok in gconds):
            cands[var] = 2 * A * cl.ha() * sums["strip"] * gp
        else:
            cands[var] = None
        return _finish(cands, conds, variant)


# ------------------------------------------------------------ dispatching


def _split_variant(variant, partner_prefix):
    """Variant for the second P series matching a forced first-series variant."""
    if variant in (None, "auto"):
        return None, None
    v = BoundVariant(variant)
    return v, _variant(partner_prefix, v.proviso)


def bound_for(expansion, variant=None, tie: str = "plus", dps: int = BOUND_DPS) -> BoundReport:
    """Bound matching an ExpansionResult, on the scale of its main series.

    For the two-series P expansions the returned bound is
    B(first series) + |coupling| * B(second series).
    """
    from .expand import ExpansionKind as K  # local: expand imports nothing from here

    kind, p, pt, N, M = expansion.kind, expansion.params, expansion.point, expansion.N, expansion.M
    if variant == "auto":
        variant = None
    prime = select_prime(p.alpha, p.beta, tie)
    if kind is K.Q_offcut_invfac:
        return bound_invfac_offcut("Q", p, pt, N, prime, variant, dps)
    if kind is K.Q_offcut_fac:
        return bound_fac_offcut("Q", p, pt, N, prime, variant, dps)
    if kind.oncut and not kind.factorial:
        return bound_invfac_oncut(kind.function, p, pt, N, variant, dps)
    if kind.oncut:
        return bound_fac_oncut(kind.function, p, pt, N, prime, variant, dps)
    # two-series P expansions
    fam = "f" if kind.factorial else "if"
    v1, v2 = _split_variant(variant, f"{fam}-p2")
    fn = bound_fac_offcut if kind.factorial else bound_invfac_offcut
    r1 = fn("P_plus", p, pt, N, prime, v1, dps)
    r2 = fn("P_minus", p, pt, M, prime, v2, dps)
    with mp.workdps(dps):
        ok = r1.applicable and r2.applicable
        total = r1.bound + abs(expansion.coupling) * r2.bound if ok else None
    rep = BoundReport(total, r1.variant, ok, r1.conditions_checked + r2.conditions_checked,
                      None, r1.candidates, r2, r1.note or r2.note)
    return rep


def certify(expansion, report: BoundReport, oracle_value, oracle_err: float = 0.0,
            slack: float = DEFAULT_SLACK) -> CertRecord:
    """Compare the actual remainder with the bound.

    ``oracle_value`` is the bare function value (LogComplex or number) and
    ``oracle_err`` its relative error budget.  The remainder is measured on
    the scale of the main bracketed series, like the bound.  A point passes
    when remainder <= bound (1 + slack) + floor, where the floor covers the
    oracle error and the rounding of the truncated sum.
    """
    from .cgamma import LogComplex
    from .expand import normalization

    if report.applicable and report.bound is None:
        raise MismatchError("applicable report without a bound")
    with mp.workdps(expansion.dps):
        norm = normalization(expansion.kind, expansion.params)
        if isinstance(oracle_value, LogComplex):
            target = (oracle_value * norm).value()
        else:
            target = to_mp(oracle_value) * norm.value()
        scale = abs(expansion.scale)
        rem = abs(target - expansion.normalized_value) / scale
        mag = max([abs(t) for t in expansion.terms] + [abs(target)]) / scale
        floor = mpf(oracle_err) * abs(target) / scale + mpf(10) ** (-(expansion.dps - 5)) * mag
        name = report.variant.value if report.variant is not None else "none"
        if report.partner is not None and report.partner.variant is not None:
            name += "+" + report.partner.variant.value
        if not report.applicable:
            return CertRecord(math.nan, True, rem, None, floor, name, slack)
        b = report.bound
        passed = bool(rem <= b * (1 + slack) + floor)
        if b > 0:
            ratio = float(rem / b)
        else:
            ratio = 0.0 if rem <= floor else math.inf
        return CertRecord(ratio, passed, rem, b, floor, name, slack)
