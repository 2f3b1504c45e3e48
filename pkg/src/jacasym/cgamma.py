"""Complex gamma-family kernels and the scalar types used by the package.

All values are mpmath numbers evaluated at the ambient ``mp`` precision;
callers pick the precision with :func:`precision`.  ``LogComplex`` keeps
overflowing magnitudes in log form and ``CxDD`` is a double-double complex
value used when results leave the library as plain floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError

WORKING_DPS = 17
EXTENDED_DPS = 40

_PRECISIONS = {"working": WORKING_DPS, "extended": EXTENDED_DPS}


def resolve_dps(precision) -> int:
    """Map 'working' / 'extended' (or an explicit digit count) to digits."""
    if isinstance(precision, str):
        try:
            return _PRECISIONS[precision]
        except KeyError:
            raise ValueError(f"unknown precision level {precision!r}") from None
    return int(precision)


def precision(level):
    """Context manager setting the mpmath working precision."""
    return mp.workdps(resolve_dps(level))


def to_mp(v):
    """Convert float/complex/str/mpmath input to an mpc."""
    if isinstance(v, mpc):
        return v
    if isinstance(v, str):
        return mpc(complex(v.replace(" ", "").replace("i", "j")))
    return mpc(mpmath.mpmathify(v))


def is_nonpositive_integer(z) -> bool:
    z = to_mp(z)
    return z.imag == 0 and z.real <= 0 and z.real == mpmath.floor(z.real)


def is_integer(z) -> bool:
    z = to_mp(z)
    return z.imag == 0 and z.real == mpmath.floor(z.real)


class SaturatedComplex(complex):
    """Plain complex returned when a LogComplex exceeds the double range.

    Components are clipped to the largest finite double; ``saturated`` is
    the flag callers test.
    """

    saturated = True


_LOG_DBL_MAX = math.log(1.7976931348623157e308)


@dataclass(frozen=True)
class LogComplex:
    """exp(log_abs + i*arg) with an unreduced argument."""

    log_abs: mpf
    arg: mpf

    @classmethod
    def from_value(cls, z) -> "LogComplex":
        z = to_mp(z)
        if z == 0:
            return cls(mpf("-inf"), mpf(0))
        return cls(mpmath.log(abs(z)), mpmath.arg(z))

    @classmethod
    def from_log(cls, lz) -> "LogComplex":
        lz = to_mp(lz)
        return cls(lz.real, lz.imag)

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        return LogComplex(self.log_abs + other.log_abs, self.arg + other.arg)

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        return LogComplex(self.log_abs - other.log_abs, self.arg - other.arg)

    def inverse(self) -> "LogComplex":
        return LogComplex(-self.log_abs, -self.arg)

    def log(self) -> mpc:
        return mpc(self.log_abs, self.arg)

    def value(self) -> mpc:
        if self.log_abs == mpf("-inf"):
            return mpc(0)
        return mpmath.exp(mpc(self.log_abs, self.arg))

    def to_complex(self) -> complex:
        """Plain complex value, saturating instead of overflowing."""
        if self.log_abs == mpf("-inf"):
            return complex(0.0)
        if self.log_abs <= _LOG_DBL_MAX:
            v = self.value()
            return complex(float(v.real), float(v.imag))
        big = 1.7976931348623157e308
        c, s = math.cos(float(self.arg)), math.sin(float(self.arg))
        sgn = lambda x: 0.0 if x == 0 else math.copysign(big, x)  # noqa: E731
        return SaturatedComplex(sgn(c), sgn(s))


# ---------------------------------------------------------------- log-gamma

_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
              Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
              Fraction(854513, 138), Fraction(-236364091, 2730)]
_STIRLING = [b / (2 * k * (2 * k - 1)) for k, b in enumerate(_BERNOULLI, 1)]


def _shift_threshold() -> float:
    # the 13th Stirling term is about 2193/|z|^25
    return max(10.0, (2193.0 * 10.0 ** (mp.dps + 3)) ** (1.0 / 25))


def _stirling(z: mpc) -> mpc:
    s = (z - mpf(0.5)) * mpmath.log(z) - z + mpmath.log(2 * mp.pi) / 2
    zi = 1 / z
    z2 = zi * zi
    for c in _STIRLING:
        s += mpf(c.numerator) / c.denominator * zi
        zi *= z2
    return s


def _log_product(start: mpc, count: int):
    """log of prod_{k<count}(start+k) with the sum of principal arguments."""
    prod = mpc(1)
    phase = 0.0
    sr, si = float(start.real), float(start.imag)
    for k in range(count):
        prod *= start + k
        phase += math.atan2(si, sr + k)
    if prod == 0:
        raise PoleError("product hits zero")
    lp = mpmath.log(prod)
    turns = round((phase - float(lp.imag)) / (2 * math.pi))
    return lp.real, lp.imag + 2 * mp.pi * turns


def _im_loggamma_estimate(z: complex) -> float:
    """Float estimate of Im log Gamma(z), principal branch."""
    m = max(0, math.ceil(12.0 - z.real))
    w = z + m
    est = ((w - 0.5) * _clog(w) - w + 1 / (12 * w)).imag
    for k in range(m):
        est -= math.atan2(z.imag, z.real + k)
    return est


def _clog(w: complex) -> complex:
    return complex(math.log(abs(w)), math.atan2(w.imag, w.real))


def log_gamma(z) -> mpc:
    """Principal log Gamma(z) at the ambient precision."""
    z = to_mp(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at {z}")
    if z.real < 0.5:
        # reflection, then fix the 2*pi*k ambiguity with a float estimate
        lg = mpmath.log(mp.pi) - mpmath.log(mpmath.sin(mp.pi * z)) - log_gamma(1 - z)
        est = _im_loggamma_estimate(complex(float(z.real), float(z.imag)))
        turns = round((est - float(lg.imag)) / (2 * math.pi))
        return mpc(lg.real, lg.imag + 2 * mp.pi * turns)
    thr = _shift_threshold()
    if z.real >= thr or abs(z.imag) >= 2 * thr:
        return _stirling(z)
    m = int(math.ceil(thr - float(z.real)))
    la, ar = _log_product(z, m)
    return _stirling(z + m) - mpc(la, ar)


def gamma_ratio(x, a, b) -> LogComplex:
    """Gamma(x+a)/Gamma(x+b) in log form."""
    x, a, b = to_mp(x), to_mp(a), to_mp(b)
    xa, xb = x + a, x + b
    if is_nonpositive_integer(xa) or is_nonpositive_integer(xb):
        raise PoleError(f"gamma_ratio pole: x+a={xa}, x+b={xb}")
    d = a - b
    if is_integer(d) and abs(d.real) <= 64:
        n = int(d.real)
        if n == 0:
            return LogComplex(mpf(0), mpf(0))
        if n > 0:
            la, ar = _log_product(xb, n)
            return LogComplex(la, ar)
        la, ar = _log_product(xa, -n)
        return LogComplex(-la, -ar)
    return LogComplex.from_log(log_gamma(xa) - log_gamma(xb))


def log_beta(w1, w2) -> mpc:
    w1, w2 = to_mp(w1), to_mp(w2)
    for w in (w1, w2, w1 + w2):
        if is_nonpositive_integer(w):
            raise PoleError(f"log_beta pole at {w}")
    return log_gamma(w1) + log_gamma(w2) - log_gamma(w1 + w2)


def pochhammer(w, n: int) -> mpc:
    """Rising factorial (w)_n."""
    w = to_mp(w)
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    if n <= 4096:
        prod = mpc(1)
        for k in range(n):
            prod *= w + k
        return prod
    if is_nonpositive_integer(w) and -w.real < n:
        return mpc(0)
    return gamma_ratio(w, n, 0).value()


def chi(p) -> mpf:
    """sqrt(pi) Gamma(p/2+1)/Gamma(p/2+1/2) for p > 0."""
    p = mpf(p)
    if p <= 0:
        raise DomainError("chi needs p > 0")
    r = gamma_ratio(p / 2, 1, mpf(0.5))
    return mpmath.sqrt(mp.pi) * mpmath.exp(r.log_abs)


# ------------------------------------------------------------ double-double

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float):
    s = a + b
    return s, b - (s - a)


def _split(a: float):
    t = _SPLIT * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a: float, b: float):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    t, f = _two_sum(al, bl)
    e += t
    s, e = _quick_two_sum(s, e)
    e += f
    return _quick_two_sum(s, e)


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    return _quick_two_sum(p, e)


@dataclass(frozen=True)
class CxDD:
    """Complex double-double: each component is an unevaluated sum hi+lo."""

    hi: complex
    lo: complex = 0j

    @classmethod
    def from_mp(cls, z) -> "CxDD":
        z = to_mp(z)
        with mp.workprec(120):
            rh = float(z.real)
            ih = float(z.imag)
            rl = float(z.real - rh)
            il = float(z.imag - ih)
        return cls(complex(rh, ih), complex(rl, il))

    def to_mp(self) -> mpc:
        with mp.workprec(120):
            return mpc(mpf(self.hi.real) + mpf(self.lo.real),
                       mpf(self.hi.imag) + mpf(self.lo.imag))

    def __add__(self, o: "CxDD") -> "CxDD":
        rh, rl = _dd_add(self.hi.real, self.lo.real, o.hi.real, o.lo.real)
        ih, il = _dd_add(self.hi.imag, self.lo.imag, o.hi.imag, o.lo.imag)
        return CxDD(complex(rh, ih), complex(rl, il))

    def __neg__(self) -> "CxDD":
        return CxDD(-self.hi, -self.lo)

    def __sub__(self, o: "CxDD") -> "CxDD":
        return self + (-o)

    def __mul__(self, o: "CxDD") -> "CxDD":
        a, b = (self.hi.real, self.lo.real), (self.hi.imag, self.lo.imag)
        c, d = (o.hi.real, o.lo.real), (o.hi.imag, o.lo.imag)
        ac = _dd_mul(*a, *c)
        bd = _dd_mul(*b, *d)
        ad = _dd_mul(*a, *d)
        bc = _dd_mul(*b, *c)
        rh, rl = _dd_add(ac[0], ac[1], -bd[0], -bd[1])
        ih, il = _dd_add(ad[0], ad[1], bc[0], bc[1])
        return CxDD(complex(rh, ih), complex(rl, il))

    def __complex__(self) -> complex:
        return self.hi + self.lo
