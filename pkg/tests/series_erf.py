"""Independent error-function oracle: Maclaurin series in exact rational
arithmetic with a rigorous truncation bound.

erf(z) = (2/sqrt(pi)) sum_n (-1)^n z^(2n+1) / (n! (2n+1))

The partial sums are evaluated on Fraction pairs (real, imaginary), so the
only floating-point error is the final conversion and the 2/sqrt(pi) factor;
the truncation tail is bounded by a geometric comparison once the term ratio
|z|^2/(n+1) drops below 1/2.
"""

from fractions import Fraction
from math import pi, sqrt


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cabs2(a):
    return a[0] * a[0] + a[1] * a[1]


def erf_series(z, rel_tol=1e-14):
    """erf(z) for complex z via the exact-rational Maclaurin series.

    Guarantees a relative truncation error below rel_tol; practical for
    |z| up to ~6 (the term count grows like 2|z|^2 plus a logarithmic tail).
    """
    zr = Fraction(z.real)
    zi = Fraction(z.imag)
    z2 = _cmul((zr, zi), (zr, zi))
    abs_z2 = _cabs2((zr, zi))

    term = (zr, zi)                      # z^(2n+1)/n!, n = 0
    total = (zr, zi)                     # running sum of term/(2n+1)
    n = 0
    tol2 = Fraction(rel_tol) ** 2
    while True:
        n += 1
        term = _cmul(term, z2)
        term = (-term[0] / n, -term[1] / n)
        contribution = (term[0] / (2 * n + 1), term[1] / (2 * n + 1))
        total = (total[0] + contribution[0], total[1] + contribution[1])
        # once the term ratio is <= 1/2, the tail is < 2 |next contribution|
        if n + 1 > 2 * abs_z2:
            tail2 = 4 * _cabs2(contribution)
            sum2 = _cabs2(total)
            if sum2 == 0 or tail2 <= tol2 * sum2:
                break
        if n > 500:
            raise RuntimeError(f"series did not converge for z = {z}")
    scale = 2.0 / sqrt(pi)
    return complex(scale * float(total[0]), scale * float(total[1]))
