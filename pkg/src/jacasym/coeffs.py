"""Coefficients, phases and evaluation points of the large-degree expansions.

Notation: s = 2*nu + alpha + beta.  Off the cut the argument is
z = cosh(2*xi) with xi in the half-strip Re xi > 0, |Im xi| < pi/2; on the
cut it is x = cos(2*zeta) with 0 < zeta < pi/2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .cgamma import LogComplex, to_mp
from .errors import DomainError

DOMAIN_MARGIN = 1e-8
_CACHE_DPS = 60


@dataclass(frozen=True)
class Params:
    """The triple (nu, alpha, beta)."""

    nu: mpc
    alpha: mpc
    beta: mpc

    def __post_init__(self):
        for name in ("nu", "alpha", "beta"):
            object.__setattr__(self, name, to_mp(getattr(self, name)))

    @property
    def s(self) -> mpc:
        return 2 * self.nu + self.alpha + self.beta

    def is_real(self) -> bool:
        return self.nu.imag == 0 and self.alpha.imag == 0 and self.beta.imag == 0

    def __repr__(self):
        return f"Params(nu={complex(self.nu)}, alpha={complex(self.alpha)}, beta={complex(self.beta)})"


@dataclass(frozen=True)
class OffCutPoint:
    """xi in the half-strip, with hyperbolic values cached at high precision."""

    xi: mpc
    sinh_xi: mpc = field(init=False, repr=False, compare=False)
    cosh_xi: mpc = field(init=False, repr=False, compare=False)
    exp_plus: mpc = field(init=False, repr=False, compare=False)
    exp_minus: mpc = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        xi = to_mp(self.xi)
        object.__setattr__(self, "xi", xi)
        if not (xi.real > 0 and abs(xi.imag) < mp.pi / 2):
            raise DomainError(f"xi={complex(xi)} outside Re xi > 0, |Im xi| < pi/2")
        with mp.workdps(max(_CACHE_DPS, mp.dps + 20)):
            ep = mpmath.exp(xi)
            em = 1 / ep
            vals = {"exp_plus": ep, "exp_minus": em,
                    "sinh_xi": (ep - em) / 2, "cosh_xi": (ep + em) / 2}
        for k, v in vals.items():
            object.__setattr__(self, k, v)
        # every base of a fractional power sits in the right half-plane
        assert all(v.real > 0 for v in vals.values())

    @property
    def is_real(self) -> bool:
        return self.xi.imag == 0

    def x(self, sign: int) -> mpc:
        """e^{+-xi}/sinh(xi)."""
        return (self.exp_plus if sign > 0 else self.exp_minus) / self.sinh_xi

    def y(self, sign: int) -> mpc:
        """e^{+-xi}/cosh(xi)."""
        return (self.exp_plus if sign > 0 else self.exp_minus) / self.cosh_xi

    def z(self) -> mpc:
        return 2 * self.cosh_xi ** 2 - 1


@dataclass(frozen=True)
class OnCutPoint:
    """zeta in (0, pi/2), i.e. x = cos(2 zeta) in (-1, 1)."""

    zeta: mpf
    sin_z: mpf = field(init=False, repr=False, compare=False)
    cos_z: mpf = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        z = to_mp(self.zeta)
        if z.imag != 0:
            raise DomainError("zeta must be real")
        z = z.real
        object.__setattr__(self, "zeta", z)
        if not (DOMAIN_MARGIN < z < mp.pi / 2 - DOMAIN_MARGIN):
            raise DomainError(f"zeta={float(z)} outside (0, pi/2) with margin {DOMAIN_MARGIN}")
        with mp.workdps(max(_CACHE_DPS, mp.dps + 20)):
            object.__setattr__(self, "sin_z", mpmath.sin(z))
            object.__setattr__(self, "cos_z", mpmath.cos(z))

    def x(self) -> mpf:
        return 1 - 2 * self.sin_z ** 2


@dataclass(frozen=True)
class ParamPrime:
    alpha_prime: mpc
    beta_prime: mpc
    sign_choice_alpha: str
    sign_choice_beta: str


def a_coeff(n: int, mu) -> mpc:
    """a_n(mu) = (1/2+mu)_n (1/2-mu)_n / ((-2)^n n!)."""
    return a_coeffs(n, mu)[n]


def a_coeffs(nmax: int, mu) -> list:
    """[a_0(mu), ..., a_nmax(mu)] by the product recurrence."""
    mu = to_mp(mu)
    four_mu2 = 4 * mu * mu
    out = [mpc(1)]
    for n in range(1, nmax + 1):
        out.append(out[-1] * (four_mu2 - (2 * n - 1) ** 2) / (8 * n))
    return out


def g_coeffs(nmax: int, sign: int, pt: OffCutPoint, p: Params) -> list:
    """[g_0(+-xi), ..., g_nmax(+-xi)] for alpha, beta of p."""
    aa = a_coeffs(nmax, p.alpha)
    ab = a_coeffs(nmax, p.beta)
    x = pt.x(sign) * sign
    y = pt.y(sign)
    xp = [mpc(1)]
    yp = [mpc(1)]
    for _ in range(nmax):
        xp.append(xp[-1] * x)
        yp.append(yp[-1] * y)
    return [mpmath.fsum(aa[l] * ab[n - l] * xp[l] * yp[n - l] for l in range(n + 1))
            for n in range(nmax + 1)]


def g_coeff(n: int, sign: int, pt: OffCutPoint, p: Params) -> mpc:
    return g_coeffs(n, sign, pt, p)[n]


def zeta_phase(kind: int, p: Params, zeta: OnCutPoint, n: int, l: int) -> mpc:
    """The on-cut phases zeta^(1..4)_{nu,n,l}."""
    if l > n:
        raise ValueError("need l <= n")
    s, a, zt = p.s, p.alpha, zeta.zeta
    q = mp.pi / 2
    if kind == 1:
        return (s - n + 1) * zt - (a - l + mpf(0.5)) * q
    if kind == 2:
        return (s - n + 1) * zt + (a + l + mpf(0.5)) * q
    if kind == 3:
        return (s + n + 1) * zt - (a + l + mpf(0.5)) * q
    if kind == 4:
        return (s + n + 1) * zt + (a - l + mpf(0.5)) * q
    raise ValueError(f"phase kind must be 1..4, got {kind}")


def branch_constant(pt: OffCutPoint, alpha) -> mpc:
    """C(xi, alpha): sin(pi alpha) on the real axis, -+i e^{+-pi i alpha} off it."""
    alpha = to_mp(alpha)
    im = pt.xi.imag
    if im == 0:
        return mpc(mpmath.sin(mp.pi * alpha))
    if im > 0:
        return -1j * mpmath.exp(1j * mp.pi * alpha)
    return 1j * mpmath.exp(-1j * mp.pi * alpha)


def _prime(v: mpc, tie: str):
    if v.real >= 0.5:
        return v, "+"
    if v.real <= -0.5:
        return -v, "-"
    return (v, "+") if tie == "plus" else (-v, "-")


def select_prime(alpha, beta, tie: str = "plus") -> ParamPrime:
    """alpha', beta': the sign flip making Re >= 1/2 outside the strip, tie inside."""
    if tie not in ("plus", "minus"):
        raise ValueError("tie must be 'plus' or 'minus'")
    ap, sa = _prime(to_mp(alpha), tie)
    bp, sb = _prime(to_mp(beta), tie)
    return ParamPrime(ap, bp, sa, sb)


def g_func(w) -> mpf:
    """Piecewise function g(w) used by the maximization bounds."""
    w = to_mp(w)
    if w.imag == 0 and w.real >= 1:
        raise DomainError(f"g(w) undefined on the cut [1, inf): w={complex(w)}")
    if w.real <= 0:
        return mpf(1)
    if w.real <= abs(w) ** 2:
        return abs(w / w.imag)
    return 1 / abs(1 - w)


def principal_power(base, exponent) -> LogComplex:
    """base**exponent with the principal logarithm, in log form."""
    base, exponent = to_mp(base), to_mp(exponent)
    if base == 0:
        raise DomainError("zero base in principal_power")
    return LogComplex.from_log(exponent * mpmath.log(base))
