"""Directed-rounding interval arithmetic on MPFR floats.

Every operation rounds the lower endpoint down and the upper endpoint up, so
an ``IntervalReal`` always encloses the exact real value of the expression it
was built from.  Precision is per-interval, in bits; mixed-precision
operations work at the larger of the two precisions.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

DEFAULT_PRECISION = 128
MAX_PRECISION = 1024


class InconclusiveEnclosureError(ArithmeticError):
    """A comparison or certification could not be decided at the working
    precision (and escalation, if attempted, hit its cap)."""


_CTX_CACHE: dict[tuple[int, object], gmpy2.context] = {}


def _ctx(prec: int, rnd) -> gmpy2.context:
    key = (prec, rnd)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = gmpy2.context(precision=prec, round=rnd)
        _CTX_CACHE[key] = ctx
    return ctx


def _dn(prec: int) -> gmpy2.context:
    return _ctx(prec, gmpy2.RoundDown)


def _up(prec: int) -> gmpy2.context:
    return _ctx(prec, gmpy2.RoundUp)


class IntervalReal:
    """Enclosure [lo, hi] of a real number, lo <= hi."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: mpfr, hi: mpfr, prec: int):
        if not lo <= hi:  # also rejects NaN endpoints
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec: int = DEFAULT_PRECISION) -> IntervalReal:
        return cls(_dn(prec).div(n, 1), _up(prec).div(n, 1), prec)

    @classmethod
    def from_fraction(cls, q, prec: int = DEFAULT_PRECISION) -> IntervalReal:
        q = Fraction(q)
        return cls(
            _dn(prec).div(q.numerator, q.denominator),
            _up(prec).div(q.numerator, q.denominator),
            prec,
        )

    @classmethod
    def from_decimal(cls, text: str, prec: int = DEFAULT_PRECISION) -> IntervalReal:
        """Exact decimal literal such as "1324.9" (never a binary float)."""
        return cls.from_fraction(Fraction(text), prec)

    @classmethod
    def point(cls, x: mpfr, prec: int) -> IntervalReal:
        return cls(x, x, prec)

    # -- inspection ---------------------------------------------------

    def width(self) -> mpfr:
        return _up(self.prec).sub(self.hi, self.lo)

    def mid(self) -> mpfr:
        return gmpy2.context(precision=self.prec).div(
            gmpy2.context(precision=self.prec).add(self.lo, self.hi), 2
        )

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def certainly_lt(self, other) -> bool:
        hi = other.lo if isinstance(other, IntervalReal) else other
        return self.hi < hi

    def certainly_le(self, other) -> bool:
        hi = other.lo if isinstance(other, IntervalReal) else other
        return self.hi <= hi

    def overlaps(self, other: IntervalReal) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self) -> int:
        """Certified sign: +1, -1, or raise if the enclosure straddles 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        raise InconclusiveEnclosureError(f"sign undecided for {self}")

    def __repr__(self) -> str:
        return f"IntervalReal([{self.lo}, {self.hi}], prec={self.prec})"

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> IntervalReal:
        if isinstance(other, IntervalReal):
            return other
        if isinstance(other, int):
            return IntervalReal.from_int(other, self.prec)
        if isinstance(other, Fraction):
            return IntervalReal.from_fraction(other, self.prec)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> IntervalReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = max(self.prec, o.prec)
        return IntervalReal(_dn(p).add(self.lo, o.lo), _up(p).add(self.hi, o.hi), p)

    __radd__ = __add__

    def __neg__(self) -> IntervalReal:
        return IntervalReal(-self.hi, -self.lo, self.prec)

    def __sub__(self, other) -> IntervalReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = max(self.prec, o.prec)
        return IntervalReal(_dn(p).sub(self.lo, o.hi), _up(p).sub(self.hi, o.lo), p)

    def __rsub__(self, other) -> IntervalReal:
        return (-self).__add__(other)

    def __mul__(self, other) -> IntervalReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = max(self.prec, o.prec)
        dn, up = _dn(p), _up(p)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        return IntervalReal(
            min(dn.mul(a, b) for a, b in pairs),
            max(up.mul(a, b) for a, b in pairs),
            p,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> IntervalReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.contains_zero():
            raise ZeroDivisionError(f"division by interval containing 0: {o}")
        p = max(self.prec, o.prec)
        dn, up = _dn(p), _up(p)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        return IntervalReal(
            min(dn.div(a, b) for a, b in pairs),
            max(up.div(a, b) for a, b in pairs),
            p,
        )

    def __rtruediv__(self, other) -> IntervalReal:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def abs(self) -> IntervalReal:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return IntervalReal(mpfr(0), max(-self.lo, self.hi), self.prec)

    def __abs__(self) -> IntervalReal:
        return self.abs()

    # -- elementary functions (monotone: endpoint evaluation) ----------

    def sqrt(self) -> IntervalReal:
        if self.lo < 0:
            raise ValueError(f"sqrt of interval with negative part: {self}")
        p = self.prec
        return IntervalReal(_dn(p).sqrt(self.lo), _up(p).sqrt(self.hi), p)

    def exp(self) -> IntervalReal:
        p = self.prec
        return IntervalReal(_dn(p).exp(self.lo), _up(p).exp(self.hi), p)

    def log(self) -> IntervalReal:
        if self.lo <= 0:
            raise ValueError(f"log of interval reaching 0: {self}")
        p = self.prec
        return IntervalReal(_dn(p).log(self.lo), _up(p).log(self.hi), p)

    def sinh(self) -> IntervalReal:
        p = self.prec
        return IntervalReal(_dn(p).sinh(self.lo), _up(p).sinh(self.hi), p)

    def cosh(self) -> IntervalReal:
        p = self.prec
        dn, up = _dn(p), _up(p)
        if self.lo >= 0:
            return IntervalReal(dn.cosh(self.lo), up.cosh(self.hi), p)
        if self.hi <= 0:
            return IntervalReal(dn.cosh(self.hi), up.cosh(self.lo), p)
        return IntervalReal(mpfr(1), max(up.cosh(self.lo), up.cosh(self.hi)), p)

    def coth(self) -> IntervalReal:
        """cosh/sinh on an interval with lo > 0 (decreasing there)."""
        if self.lo <= 0:
            raise ValueError("coth needs a strictly positive interval")
        p = self.prec
        dn, up = _dn(p), _up(p)
        return IntervalReal(
            dn.div(dn.cosh(self.hi), up.sinh(self.hi)),
            up.div(up.cosh(self.lo), dn.sinh(self.lo)),
            p,
        )

    def pow_fraction(self, e: Fraction) -> IntervalReal:
        """x**e for x >= 0 and rational e, via exp(e*log x); monotone in x."""
        e = Fraction(e)
        if e == 0:
            return IntervalReal.from_int(1, self.prec)
        if e.denominator == 1:
            return self._pow_int(e.numerator)
        if self.lo < 0:
            raise ValueError("fractional power of interval with negative part")
        p = self.prec
        dn, up = _dn(p), _up(p)
        ef_lo = _dn(p).div(e.numerator, e.denominator)
        ef_hi = _up(p).div(e.numerator, e.denominator)
        if e > 0:
            if self.lo == 0:
                lo = mpfr(0)
            else:
                lo = dn.exp(_mul_dir(dn, ef_lo if self.lo >= 1 else ef_hi, dn.log(self.lo)))
            hi = up.exp(_mul_dir(up, ef_hi if self.hi >= 1 else ef_lo, up.log(self.hi)))
            return IntervalReal(lo, hi, p)
        return IntervalReal.from_int(1, p) / self.pow_fraction(-e)

    def _pow_int(self, k: int) -> IntervalReal:
        if k < 0:
            return IntervalReal.from_int(1, self.prec) / self._pow_int(-k)
        out = IntervalReal.from_int(1, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- trigonometric (argument reduction against an enclosed pi) -----

    def cos(self) -> IntervalReal:
        p = self.prec
        dn, up = _dn(p), _up(p)
        pi = pi_interval(p)
        # integers k with k*pi possibly inside [lo, hi] mark the extrema
        q_lo = dn.div(self.lo, pi.hi if self.lo >= 0 else pi.lo)
        q_hi = up.div(self.hi, pi.lo if self.hi >= 0 else pi.hi)
        k_min = int(gmpy2.ceil(q_lo))
        k_max = int(gmpy2.floor(q_hi))
        if k_max - k_min > 4:
            return IntervalReal(mpfr(-1), mpfr(1), p)
        cands_lo = [dn.cos(self.lo), dn.cos(self.hi)]
        cands_hi = [up.cos(self.lo), up.cos(self.hi)]
        for k in range(k_min, k_max + 1):
            if k % 2 == 0:
                cands_hi.append(mpfr(1))
            else:
                cands_lo.append(mpfr(-1))
        return IntervalReal(
            max(min(cands_lo), mpfr(-1)), min(max(cands_hi), mpfr(1)), p
        )

    def sin(self) -> IntervalReal:
        half_pi = pi_interval(self.prec) / 2
        return (self - half_pi).cos()


def _mul_dir(ctx, a, b):
    return ctx.mul(a, b)


def pi_interval(prec: int = DEFAULT_PRECISION) -> IntervalReal:
    return IntervalReal(_dn(prec).const_pi(), _up(prec).const_pi(), prec)


def sqrt_int(n: int, prec: int = DEFAULT_PRECISION) -> IntervalReal:
    return IntervalReal.from_int(n, prec).sqrt()


def exp_interval(x: IntervalReal) -> IntervalReal:
    return x.exp()


def cos_pi_fraction(r, prec: int = DEFAULT_PRECISION) -> IntervalReal:
    """cos(pi * r) for exact rational r."""
    return (pi_interval(prec) * IntervalReal.from_fraction(r, prec)).cos()


def sin_pi_fraction(r, prec: int = DEFAULT_PRECISION) -> IntervalReal:
    return (pi_interval(prec) * IntervalReal.from_fraction(r, prec)).sin()


def isum(items, prec: int = DEFAULT_PRECISION) -> IntervalReal:
    total = IntervalReal.from_int(0, prec)
    for it in items:
        total = total + it
    return total


def escalate(compute, conclusive, start: int = DEFAULT_PRECISION,
             cap: int = MAX_PRECISION, log: list | None = None):
    """Run ``compute(prec)`` at doubling precision until ``conclusive`` holds.

    Returns the first conclusive result; raises InconclusiveEnclosureError at
    the cap.  Escalation steps are appended to ``log`` when provided.
    """
    prec = start
    while True:
        result = compute(prec)
        if conclusive(result):
            return result
        if prec >= cap:
            raise InconclusiveEnclosureError(
                f"inconclusive at precision cap {cap} bits"
            )
        if log is not None:
            log.append({"from_bits": prec, "to_bits": prec * 2})
        prec *= 2
