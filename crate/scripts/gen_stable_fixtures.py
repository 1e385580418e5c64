#!/usr/bin/env python3
"""Reference values for the standardized alpha = 1/2 stable law.

    python3 scripts/gen_stable_fixtures.py crates/core/tests/fixtures

pdf: the Voigt-function closed form evaluated with mpmath's complex erfc at
40 digits, cross-checked at a subset of points against direct inversion of
the characteristic function exp(-sqrt|t| (1 - i beta sgn t)).

cdf / sf: direct quadrature of that density over (-inf, x] or [x, inf),
cross-checked at x = 0 against 1/2 - (2/pi) atan(beta) and against
the total mass.
"""
import sys
from pathlib import Path

from mpmath import mp, mpf, mpc, exp, erfc, sqrt, pi, quad, inf, cos, atan, fabs

mp.dps = 40

BETAS = [-1.0, -0.5, 0.0, 1.0 / 3.0, 0.5, 0.9, 1.0]
PDF_X = [-20.0, -5.0, -1.0, -0.1, -0.01, -2.5e-3, -1e-3, -1e-5, 0.0, 1e-5,
         1e-3, 2.5e-3, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0, 1000.0]
CDF_X = [-50.0, -10.0, -2.0, -1.0, -0.5, -1e-3, 0.0, 1e-3, 0.5, 1.0, 2.0,
         10.0, 50.0]
SF_X = [50.0, 64.0, 100.0, 1000.0, 1e4, 1e6]
SF_BETAS = [0.0, 0.5, 1.0]


def w(z):
    return exp(-z * z) * erfc(-1j * z)


def pdf(x, b):
    x, b = mpf(x), mpf(b)
    if x == 0:
        return 2 * (1 - b * b) / (pi * (1 + b * b) ** 2)
    ax = fabs(x)
    # the closed form cancels like 1/|x| near the origin
    extra = max(0, int(-mp.log10(ax))) + 10
    with mp.workdps(mp.dps + extra):
        return +_pdf(x, b, ax)


def _pdf(x, b, ax):
    s = 1 / sqrt(8 * ax)
    p, q = (1 + b) * s, (1 - b) * s
    if x > 0:
        v = w(mpc(-p, q))
        val = (1 + b) * v.real + (1 - b) * v.imag
    else:
        v = w(mpc(q, p))
        val = (1 - b) * v.real - (1 + b) * v.imag
    return val / sqrt(8 * pi * ax ** 3)


def pdf_cf(x, b):
    # (2/pi) int_0^inf u e^{-u} cos(x u^2 - b u) du, split at phase zeros
    x, b = mpf(x), mpf(b)
    f = lambda u: u * exp(-u) * cos(x * u * u - b * u)
    if x == 0:
        return 2 / pi * quad(f, [0, inf])
    pts = [mpf(0)]
    k = 1
    while pts[-1] < 120:
        pts.append(sqrt(k * pi / fabs(x)))
        k += 1
    return 2 / pi * quad(f, pts)


def left_tail(x, b):
    # P(X <= x) for x <= -1 via t = -1/r^2, a finite smooth integral
    g = lambda r: 2 * pdf(-1 / (r * r), b) / r ** 3 if r > 0 else mpf(0)
    return quad(g, [0, 1 / sqrt(-mpf(x))])


def right_tail(x, b):
    g = lambda r: 2 * pdf(1 / (r * r), b) / r ** 3 if r > 0 else mpf(0)
    return quad(g, [0, 1 / sqrt(mpf(x))])


CENTRAL = [-1, -0.1, -0.01, -0.001, 0, 0.001, 0.01, 0.1, 1]


def cdf(x, b):
    x = mpf(x)
    f = lambda t: pdf(t, b)
    if x <= -1:
        return left_tail(x, b)
    if x >= 1:
        return 1 - right_tail(x, b)
    pts = [mpf(p) for p in CENTRAL if p < x] + [x]
    return left_tail(-1, b) + quad(f, pts)


def sf(x, b):
    x = mpf(x)
    if x >= 1:
        return right_tail(x, b)
    return 1 - cdf(x, b)


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)

    for b in [0.0, 0.25, 0.5, 0.75, -0.6]:
        for x in [-3.0, -0.5, 0.0, 0.7, 2.0]:
            a, c = pdf(x, b), pdf_cf(x, b)
            assert fabs(a - c) < mpf(10) ** -25, (x, b, a, c)
        z = cdf(0.0, b)
        assert fabs(z - (mpf(1) / 2 - 2 / pi * atan(mpf(b)))) < mpf(10) ** -25, (b, z)
        total = cdf(1.0, b) + right_tail(1.0, b)
        assert fabs(total - 1) < mpf(10) ** -25, (b, total)

    rows = []
    for b in BETAS:
        for x in PDF_X:
            rows.append((x, b, pdf(x, b)))
    (out / "half_pdf.csv").write_text(
        "x,beta,pdf\n" + "".join(f"{x:.17e},{b:.17e},{mp.nstr(v, 20, min_fixed=1, max_fixed=0)}\n" for x, b, v in rows))

    rows = []
    for b in BETAS:
        for x in CDF_X:
            rows.append((x, b, cdf(x, b)))
    (out / "half_cdf.csv").write_text(
        "x,beta,cdf\n" + "".join(f"{x:.17e},{b:.17e},{mp.nstr(v, 20, min_fixed=1, max_fixed=0)}\n" for x, b, v in rows))

    rows = []
    for b in SF_BETAS:
        for x in SF_X:
            rows.append((x, b, sf(x, b)))
    (out / "half_sf.csv").write_text(
        "x,beta,sf\n" + "".join(f"{x:.17e},{b:.17e},{mp.nstr(v, 20, min_fixed=1, max_fixed=0)}\n" for x, b, v in rows))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/fixtures")
