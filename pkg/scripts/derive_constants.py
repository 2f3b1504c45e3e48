"""Compute the reference constants frozen into the unit tests.

Every value here comes from mpmath's own special functions or from a
direct, unoptimized evaluation of the defining formulas; none of it calls
into the package.  Run it and paste changed values into the tests.
"""
import mpmath
from mpmath import mp, mpc, mpf

mp.dps = 50


def a(n, mu):
    return mpmath.rf(mpf(1) / 2 + mu, n) * mpmath.rf(mpf(1) / 2 - mu, n) / ((-2) ** n * mpmath.factorial(n))


def K(v):
    return abs(mpmath.cos(mp.pi * v) / mpmath.cos(mp.pi * mpmath.re(v)))


def gre(x):
    return mpmath.gamma(mpmath.re(x)) / abs(mpmath.gamma(x))


def strip_sum(al, be, N, xs, ys):
    return mpmath.fsum(K(al) * K(be) * abs(a(l, mpmath.re(al)) * a(N - l, mpmath.re(be)) * xs ** l * ys ** (N - l))
                       for l in range(N + 1))


def main():
    out = {}
    out["loggamma(3+4i)"] = mpmath.loggamma(mpc(3, 4))
    x = mpc(400.75, 0.5)
    out["gamma_ratio(400.75+0.5i,-3,2)"] = mpmath.gamma(x - 3) / mpmath.gamma(x + 2)
    out["logbeta(51,53.95+0.5i)"] = mpmath.log(mpmath.beta(51, mpc(53.95, 0.5)))
    out["chi(4.5)"] = mpmath.sqrt(mp.pi) * mpmath.gamma(mpf(4.5) / 2 + 1) / mpmath.gamma(mpf(4.5) / 2 + mpf(0.5))

    xi, al, be = mpf(0.75), mpf(0.2), mpf(0.25)
    xm = -mpmath.exp(-xi) / mpmath.sinh(xi)  # sign absorbed: (+-1)^l with lower sign
    ym = mpmath.exp(-xi) / mpmath.cosh(xi)
    out["g_3(-,0.75,0.2,0.25)"] = mpmath.fsum(a(l, al) * a(3 - l, be) * xm ** l * ym ** (3 - l) for l in range(4))

    nu, zeta = mpc(200, 10), mp.pi / 3
    s = 2 * nu + al + be
    out["zeta2(n=2,l=1)"] = (s - 2 + 1) * zeta + (al + 1 + mpf(0.5)) * mp.pi / 2

    # inverse factorial Q bound, strip layout, nu=100, xi=0.75, N=3
    nu, N = mpf(100), 3
    s = 2 * nu + al + be
    xp = mpmath.exp(xi) / mpmath.sinh(xi)
    yp = mpmath.exp(xi) / mpmath.cosh(xi)
    gm = mpmath.gamma(mpmath.re(s) - N + 1) / abs(mpmath.gamma(s + 2))
    out["if-q-strip(nu=100,xi=0.75,N=3)"] = strip_sum(al, be, N, xp, yp) * gm

    # on-cut inverse factorial strip bound, nu=200+10i, zeta=pi/3, N=3
    nu = mpc(200, 10)
    s = 2 * nu + al + be
    gm = mpmath.gamma(mpmath.re(s) - N + 1) / abs(mpmath.gamma(s + 2))
    ch = mpmath.cosh(mpmath.im((s - N + 1) * zeta - al * mp.pi / 2))
    out["ifcut-strip(nu=200+10i,zeta=pi/3,N=3)"] = strip_sum(al, be, N, 1 / mpmath.sin(zeta),
                                                             1 / mpmath.cos(zeta)) * ch * gm

    # factorial Q strip bound, xi=0.5+0.6i, nu=150, alpha=0.2, beta=0.3, N=4
    xi, nu, al2, be2, N = mpc(0.5, 0.6), mpf(150), mpf(0.2), mpf(0.3), 4
    s = 2 * nu + al2 + be2
    A = gre(s - al2 - be2 + 1)
    B = gre(al2 + mpf(0.5)) * gre(be2 + mpf(0.5))
    gp = abs(mpmath.gamma(s + 2)) / mpmath.gamma(mpmath.re(s) + N + 2)
    e2 = mpmath.exp(2 * xi)
    if mpmath.re(e2) >= 1:
        case = abs(1 + 1 / e2)
    elif mpmath.re(e2) <= -1:
        case = abs(1 - 1 / e2)
    else:
        case = abs(1 - mpmath.exp(-4 * xi)) / abs(mpmath.sin(2 * mpmath.im(xi)))
    xm = mpmath.exp(-xi) / mpmath.sinh(xi)
    ym = mpmath.exp(-xi) / mpmath.cosh(xi)
    out["f-q-strip(nu=150,xi=0.5+0.6i,N=4)"] = A * B * strip_sum(al2, be2, N, xm, ym) * gp * case

    # g-maximization Q bound at real xi = 1.2, nu=60, alpha=beta=0.2, N=3, brute grid
    xi, nu, al3, N = mpf(1.2), mpf(60), mpf(0.2), 3
    s = 2 * nu + 2 * al3
    P = mpmath.exp(-xi) / (2 * mpmath.sinh(xi))
    Q = mpmath.exp(-xi) / (2 * mpmath.cosh(xi))

    def g(w):
        if mpmath.re(w) <= 0:
            return mpf(1)
        if mpmath.re(w) <= abs(w) ** 2:
            return abs(w / mpmath.im(w))
        return 1 / abs(1 - w)

    with mp.workdps(20):
        gmax = max(g((-mpmath.sin(u) ** 2 * P + mpmath.cos(u) ** 2 * Q) / (1 + mpmath.sin(2 * u)))
                   for u in mpmath.linspace(0, mp.pi / 2, 100001))
    A = gre(s - 2 * al3 + 1)
    Ha = abs(mpmath.gamma(-2 * al3 + N + 1)) / mpmath.gamma(-2 * al3 + N + 1)
    gp = abs(mpmath.gamma(s + 2)) / mpmath.gamma(s + N + 2)
    xm = mpmath.exp(-xi) / mpmath.sinh(xi)
    ym = mpmath.exp(-xi) / mpmath.cosh(xi)
    out["gmax(xi=1.2)"] = gmax
    out["f-q-gmax(nu=60,xi=1.2,N=3)"] = A * Ha * strip_sum(al3, al3, N, xm, ym) * gp * gmax

    # on-cut factorial strip bound, figure 4 configuration at nu=200+10i, N=3
    nu, al4, zeta, N = mpc(200, 10), mpc(0.2, mpf(1) / 3), mp.pi / 3, 3
    s = 2 * nu + al4 + be
    A = gre(s - al4 - be + 1)
    B = gre(al4 + mpf(0.5)) * gre(be + mpf(0.5))
    gp = abs(mpmath.gamma(s + 2)) / mpmath.gamma(mpmath.re(s) + N + 2)
    ch = mpmath.cosh(mpmath.im((s + N + 1) * zeta - al4 * mp.pi / 2))
    out["fcut-strip(nu=200+10i,zeta=pi/3,N=3)"] = 2 * A * B * strip_sum(al4, be, N, 1 / mpmath.sin(zeta),
                                                                        1 / mpmath.cos(zeta)) * ch * gp
    for k, v in out.items():
        print(f"{k} = {mpmath.nstr(v, 25)}")


if __name__ == "__main__":
    main()
