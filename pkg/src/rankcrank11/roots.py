"""Exact arithmetic on roots of unity and the Kloosterman-type sums feeding
the asymptotic main terms.

Phases are kept as exact rationals r representing e^{i*pi*r} until the final
cosine/sine evaluation, which happens in interval arithmetic.  The modulus is
fixed at 11 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cert.interval import (
    DEFAULT_PRECISION,
    IntervalReal,
    InconclusiveEnclosureError,
    cos_pi_fraction,
    pi_interval,
    sin_pi_fraction,
    sqrt_int,
)

MOD = 11

# Sign pattern of the crank-vs-partition differences: the dominant constant
# is positive on CRANK_SIGN_POSITIVE and negative on CRANK_SIGN_NEGATIVE.
CRANK_SIGN_POSITIVE = frozenset(
    {(0, 0), (1, 1), (2, 2), (0, 3), (0, 4), (0, 5), (1, 7), (1, 8), (1, 9), (0, 10)}
)
CRANK_SIGN_NEGATIVE = frozenset(
    {(1, 0), (2, 1), (0, 2), (1, 3), (1, 4), (2, 5), (0, 7), (0, 8), (0, 9), (3, 10)}
)


@dataclass(frozen=True)
class ExactAngle:
    """The unit-circle point e^{i*pi*r} with r rational, normalized to [0, 2)."""

    r: Fraction

    @staticmethod
    def of(r) -> ExactAngle:
        return ExactAngle(Fraction(r) % 2)

    def __mul__(self, other: ExactAngle) -> ExactAngle:
        return ExactAngle.of(self.r + other.r)

    def conjugate(self) -> ExactAngle:
        return ExactAngle.of(-self.r)

    def negate_point(self) -> ExactAngle:
        """The angle of -e^{i*pi*r}."""
        return ExactAngle.of(self.r + 1)

    def cos(self, prec: int = DEFAULT_PRECISION) -> IntervalReal:
        return cos_pi_fraction(self.r, prec)

    def sin(self, prec: int = DEFAULT_PRECISION) -> IntervalReal:
        return sin_pi_fraction(self.r, prec)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), with the standard n <= 0 and even-n extensions."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # now n odd and positive: Jacobi via quadratic reciprocity
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def inverse_complement(h: int, k: int) -> int:
    """Smallest nonnegative h' with h*h' = -1 modulo k (odd k) or 2k (even k)."""
    if gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} must be coprime")
    if k == 1:
        return 0
    mod = k if k % 2 else 2 * k
    return (-pow(h, -1, mod)) % mod


def dedekind_sum(h: int, k: int) -> Fraction:
    """Classical Dedekind sum s(h, k) = sum ((i/k))((hi/k)), exact."""
    if gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} must be coprime")
    total = Fraction(0)
    for i in range(1, k):
        a = Fraction(i, k) - Fraction(1, 2)  # i/k is never integral here
        hi = Fraction(h * i, k)
        if hi.denominator == 1:
            continue
        b = hi - (hi.numerator // hi.denominator) - Fraction(1, 2)
        total += a * b
    return total


def eta_multiplier(h: int, k: int) -> tuple[int, ExactAngle]:
    """The eta-function multiplier as sign * e^{i*pi*r}, |value| = 1.

    Defined through the two Kronecker-symbol branches (h odd / k odd); both
    apply when h and k are both odd and they agree.
    """
    if gcd(h, k) != 1:
        raise ValueError(f"h={h} and k={k} must be coprime")
    if k == 1:
        return 1, ExactAngle.of(0)
    hp = inverse_complement(h, k)
    t = Fraction(k * k - 1, 12 * k) * (2 * h - hp + h * h * hp)
    if h % 2 == 1:
        sign = kronecker(-k, h)
        expo = -(Fraction(2 - h * k - h, 4) + t)
    else:
        sign = kronecker(-h, k)
        expo = -(Fraction(k - 1, 4) + t)
    return sign, ExactAngle.of(expo)


def eta_multiplier_angle(h: int, k: int) -> ExactAngle:
    """eta_multiplier folded into a single angle (sign -1 becomes +pi)."""
    sign, angle = eta_multiplier(h, k)
    return angle if sign == 1 else angle.negate_point()


@lru_cache(maxsize=None)
def _crank_kloosterman_terms(j: int, m_mod: int) -> tuple[tuple[Fraction, int, int], ...]:
    """Exact term data (angle r, sine numerator t, overall sign) for the
    modulus-11 crank Kloosterman sum at (j, m mod 11)."""
    terms = []
    for h in range(1, MOD):
        hp = inverse_complement(h, MOD)
        angle = eta_multiplier_angle(h, MOD)
        # extra phases: e^{-i*pi*j^2*h'/11} and e^{-2*pi*i*m*h/11}
        r = (angle.r - Fraction(j * j * hp, MOD) - Fraction(2 * m_mod * h, MOD)) % 2
        terms.append((r, (j * hp) % (2 * MOD), 1))
    return tuple(terms)


def kloosterman_crank_def(j: int, m: int, prec: int = DEFAULT_PRECISION,
                          imag_tol_bits: int = 60) -> IntervalReal:
    """i * (modulus-11 crank Kloosterman sum at argument -m), by direct
    summation over the ten residues h coprime to 11.

    The sum is real; the imaginary part's enclosure must contain 0 with width
    below 2**-imag_tol_bits, else the enclosure is rejected.
    """
    if not 1 <= j <= 5:
        raise ValueError("j must be in 1..5")
    sinj = sin_pi_fraction(Fraction(j, MOD), prec)
    re = IntervalReal.from_int(0, prec)
    im = IntervalReal.from_int(0, prec)
    for r, t, sgn in _crank_kloosterman_terms(j, m % MOD):
        denom = sin_pi_fraction(Fraction(t, MOD), prec)
        coeff = IntervalReal.from_int(sgn, prec) / denom
        re = re + coeff * cos_pi_fraction(r, prec)
        im = im + coeff * sin_pi_fraction(r, prec)
    # value = i * (-1)^(j*11+1) * sin(pi j/11) * (re + i*im)
    #       = (-1)^j * sin(pi j/11) * im   (+ i * (-1)^(j+1) * sin * re)
    parity = 1 if j % 2 == 0 else -1
    residual = sinj * re
    tol = IntervalReal.from_fraction(Fraction(1, 2 ** imag_tol_bits), prec)
    if not residual.contains_zero() or not residual.width() < tol.lo:
        raise InconclusiveEnclosureError(
            f"imaginary part not certified zero: {residual}"
        )
    return sinj * im * parity


_CLOSED_FORM_SHAPE = (
    # (cos-angle numerator as function of (m, j), sine denominator multiple, sign)
    (lambda m, j: 2 * m - j * j + 20, 1, -1),
    (lambda m, j: 4 * m + 5 * j * j + 14, 5, -1),
    (lambda m, j: 6 * m - 4 * j * j + 4, 4, -1),
    (lambda m, j: 8 * m - 3 * j * j + 4, 3, -1),
    (lambda m, j: 10 * m + 2 * j * j + 8, 2, 1),
)


def kloosterman_crank_closed(j: int, m: int, prec: int = DEFAULT_PRECISION) -> IntervalReal:
    """The five-cosine closed form of i * (crank Kloosterman sum at -m).

    Half-integer arguments are cleared exactly into angles with denominator
    11; nothing is rounded before the final cosine.
    """
    if not 1 <= j <= 5:
        raise ValueError("j must be in 1..5")
    m = m % MOD
    sinj = sin_pi_fraction(Fraction(j, MOD), prec)
    total = IntervalReal.from_int(0, prec)
    for numer, mult, sgn in _CLOSED_FORM_SHAPE:
        ang = Fraction(numer(m, j), MOD)
        den = sin_pi_fraction(Fraction(mult * j, MOD), prec)
        total = total + IntervalReal.from_int(sgn, prec) * cos_pi_fraction(ang, prec) / den
    parity = 1 if j % 2 == 0 else -1
    return IntervalReal.from_int(2 * parity, prec) * sinj * total


def kloosterman_rank_def(j: int, k: int, n: int, m: int,
                         prec: int = DEFAULT_PRECISION) -> tuple[IntervalReal, IntervalReal]:
    """The rank-side Kloosterman sum (phase convention with denominator 11
    rather than 121), as an enclosure of (real, imaginary) parts."""
    if not 1 <= j <= 5:
        raise ValueError("j must be in 1..5")
    sinj = sin_pi_fraction(Fraction(j, MOD), prec)
    re = IntervalReal.from_int(0, prec)
    im = IntervalReal.from_int(0, prec)
    for h in range(k):
        if gcd(h, k) != 1:
            continue
        hp = inverse_complement(h, k)
        angle = eta_multiplier_angle(h, k)
        r = (angle.r - Fraction(3 * j * j * k * hp, MOD)
             + Fraction(2 * (n * h + m * hp), k)) % 2
        denom = sin_pi_fraction(Fraction((j * hp) % (2 * MOD), MOD), prec)
        re = re + cos_pi_fraction(r, prec) / denom
        im = im + sin_pi_fraction(r, prec) / denom
    sign = -1 if (j * k) % 2 == 0 else 1  # (-1)^(jk+1)
    scale = sinj * sign
    return scale * re, scale * im


def eta_exponential_sum(j: int, k: int, n: int, m: int,
                        prec: int = DEFAULT_PRECISION) -> tuple[IntervalReal, IntervalReal]:
    """The plain eta-multiplier exponential sum over residues h coprime to k,
    with global sign (-1)^(jk+l) where l in 1..10 solves l = jk modulo 11.

    Exact (point intervals) for k = 1.
    """
    if k % MOD == 0:
        raise ValueError("k must not be a multiple of 11")
    ell = (j * k) % MOD
    if ell == 0:
        raise ValueError("jk = 0 mod 11 has no admissible l")
    sign = 1 if (j * k + ell) % 2 == 0 else -1
    if k == 1:
        one = IntervalReal.from_int(sign, prec)
        return one, IntervalReal.from_int(0, prec)
    re = IntervalReal.from_int(0, prec)
    im = IntervalReal.from_int(0, prec)
    for h in range(k):
        if gcd(h, k) != 1:
            continue
        hp = inverse_complement(h, k)
        angle = eta_multiplier_angle(h, k)
        r = (angle.r + Fraction(2 * (n * h + m * hp), k)) % 2
        re = re + cos_pi_fraction(r, prec)
        im = im + sin_pi_fraction(r, prec)
    return re * sign, im * sign


@lru_cache(maxsize=None)
def chain_sign_constant(a: int, d: int, prec: int = DEFAULT_PRECISION) -> IntervalReal:
    """The n-independent dominant-term constant for the crank-vs-partition
    difference in class a at residue d.

    4*sqrt(3) * ( (2/sqrt(11)) * sum_j cos(2 pi a j / 11) * K_j(-d)
                  + 4 sin(pi/11) cos(2 pi a/11) )
    with K_j the crank Kloosterman value in closed form.
    """
    if (a, d) not in CRANK_SIGN_POSITIVE | CRANK_SIGN_NEGATIVE:
        raise ValueError(f"(a={a}, d={d}) is not a catalogued pair")
    total = IntervalReal.from_int(0, prec)
    for j in range(1, 6):
        cosaj = cos_pi_fraction(Fraction(2 * a * j, MOD), prec)
        total = total + cosaj * kloosterman_crank_closed(j, d, prec)
    total = total * 2 / sqrt_int(MOD, prec)
    total = total + (
        sin_pi_fraction(Fraction(1, MOD), prec)
        * cos_pi_fraction(Fraction(2 * a, MOD), prec)
        * 4
    )
    return total * 4 * sqrt_int(3, prec)
