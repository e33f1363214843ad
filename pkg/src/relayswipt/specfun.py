"""Scalar special functions needed by the analytic tradeoff expressions.

Everything here is a pure function of its arguments and safe to call
concurrently.
"""

import math

# Euler-Mascheroni constant, 20 decimal digits.
EULER_GAMMA = 0.57721566490153286061

_SERIES_MAX_TERMS = 60
_LENTZ_TINY = 1e-300
_LENTZ_EPS = 1e-16
_ASYMPTOTIC_CUTOFF = 100.0


def exp_integral_e1(x: float) -> float:
    """Exponential integral E1(x) = int_1^inf exp(-x*y)/y dy, x > 0.

    Uses the alternating power series for x <= 1 and a modified-Lentz
    continued fraction for x > 1, giving relative error below 1e-10 on
    [1e-8, 700].  Returns 0.0 once exp(-x) underflows (x >~ 745), where
    the true value is below the smallest positive double.

    Raises:
        ValueError: if x is NaN, infinite, or not strictly positive.
    """
    x = float(x)
    if math.isnan(x) or math.isinf(x) or x <= 0.0:
        raise ValueError(f"exp_integral_e1 requires finite x > 0, got {x!r}")
    if x <= 1.0:
        # E1(x) = -gamma - ln(x) + sum_{k>=1} (-1)^(k+1) x^k / (k * k!)
        total = -EULER_GAMMA - math.log(x)
        term = 1.0
        sign = 1.0
        for k in range(1, _SERIES_MAX_TERMS):
            term *= x / k
            contrib = sign * term / k
            total += contrib
            if abs(contrib) < 1e-18 * abs(total):
                break
            sign = -sign
        return total
    prefactor = math.exp(-x)
    if prefactor == 0.0:
        return 0.0
    return prefactor * _e1_continued_fraction(x)


def exp_e1_scaled(x: float) -> float:
    """Scaled exponential integral exp(x) * E1(x), stable for any x > 0.

    The product stays finite (it behaves like 1/x for large x) even where
    exp(x) alone would overflow, so callers combining E1 with large
    exponential prefactors should use this form.
    """
    x = float(x)
    if math.isnan(x) or x <= 0.0:
        raise ValueError(f"exp_e1_scaled requires finite x > 0, got {x!r}")
    if math.isinf(x):
        return 0.0
    if x <= 1.0:
        return math.exp(x) * exp_integral_e1(x)
    if x < _ASYMPTOTIC_CUTOFF:
        return _e1_continued_fraction(x)
    # 9-term asymptotic series; truncation error < 9!/x^9 < 4e-13 for x >= 100
    acc = 1.0
    term = 1.0
    for k in range(1, 9):
        term *= -k / x
        acc += term
    return acc / x


def _e1_continued_fraction(x: float) -> float:
    """Modified Lentz evaluation of exp(x)*E1(x) for x > 1."""
    b = x + 1.0
    c = 1.0 / _LENTZ_TINY
    d = 1.0 / b
    h = d
    for i in range(1, 200):
        a = -float(i * i)
        b += 2.0
        d = a * d + b
        if d == 0.0:
            d = _LENTZ_TINY
        c = b + a / c
        if c == 0.0:
            c = _LENTZ_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _LENTZ_EPS:
            break
    return h


def harmonic(n: int) -> float:
    """Harmonic number H_n = sum_{i=1..n} 1/i.

    Summed with math.fsum so the result is correctly rounded; in
    particular H_{n+1} - H_n matches 1/(n+1) to within one ulp even for
    n around 1e6.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"harmonic requires n >= 1, got {n}")
    return math.fsum(1.0 / i for i in range(n, 0, -1))
