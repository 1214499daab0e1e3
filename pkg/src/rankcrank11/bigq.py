"""Exact truncated q-series with coefficients in Z[z]/(z^11 - 1).

Each q-coefficient is an 11-slot vector of arbitrary-precision integers;
slot a holds the count of the statistic congruent to a modulo 11.  Tables
for the crank and rank class counts are built either by fast
alternating-series expansions or by literal product inversion, and all
class-difference statistics consumed downstream are returned as exact
integers after scaling by 11.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from .cert.interval import DEFAULT_PRECISION, IntervalReal, cos_pi_fraction

MOD = 11

_ROT_PLUS = tuple((a - 1) % MOD for a in range(MOD))
_ROT_MINUS = tuple((a + 1) % MOD for a in range(MOD))


class TruncationError(IndexError):
    """An index beyond the built truncation was requested."""


def pentagonal_pairs(limit: int) -> list[tuple[int, int]]:
    """Generalized pentagonal numbers g <= limit with sign (-1)^k, g > 0."""
    pairs = []
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        sign = -1 if k % 2 else 1
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        pairs.append((g1, sign))
        if g2 <= limit:
            pairs.append((g2, sign))
        k += 1
    return pairs


def partition_numbers(n_max: int) -> list[int]:
    """p(0..n_max) by the pentagonal-number recurrence."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    pents = pentagonal_pairs(n_max)
    p = [0] * (n_max + 1)
    p[0] = 1
    for n in range(1, n_max + 1):
        total = 0
        for g, sign in pents:
            if g > n:
                break
            total -= sign * p[n - g]
        p[n] = total
    return p


@dataclass(frozen=True)
class ResidueClassVector:
    """Counts of a statistic by residue class modulo 11 at one q-exponent."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != MOD:
            raise ValueError("need exactly 11 slots")

    def __getitem__(self, a: int) -> int:
        return self.counts[a % MOD]

    def total(self) -> int:
        return sum(self.counts)

    def is_symmetric(self) -> bool:
        return all(self.counts[a] == self.counts[MOD - a] for a in range(1, MOD))


@dataclass(frozen=True)
class CyclotomicValue:
    """Integer combination of 11th roots of unity, all 11 slots stored.

    Equality is modulo the all-ones vector (the single relation among the
    powers), which keeps comparison decidable without a canonical reduction.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != MOD:
            raise ValueError("need exactly 11 slots")

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CyclotomicValue((other,) + (0,) * (MOD - 1))
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        diff = [a - b for a, b in zip(self.coeffs, other.coeffs)]
        return all(x == diff[0] for x in diff)

    def __hash__(self):
        shifted = tuple(c - min(self.coeffs) for c in self.coeffs)
        return hash(shifted)

    def __add__(self, other: CyclotomicValue) -> CyclotomicValue:
        return CyclotomicValue(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def real_interval(self, prec: int = DEFAULT_PRECISION) -> IntervalReal:
        """Numeric value, assuming the slot pattern makes it real
        (coeffs[a] == coeffs[11-a])."""
        total = IntervalReal.from_int(self.coeffs[0], prec)
        for a in range(1, 6):
            pair = self.coeffs[a] + self.coeffs[MOD - a]
            if pair:
                total = total + cos_pi_fraction(Fraction(2 * a, MOD), prec) * pair
        return total


@dataclass(frozen=True)
class StatisticTable:
    """Per-n residue-class vectors for one statistic plus the p(n) column."""

    kind: str  # "rank" or "crank"
    truncation: int
    rows: tuple[ResidueClassVector, ...]
    partitions: tuple[int, ...]

    def row(self, n: int) -> ResidueClassVector:
        if not 0 <= n <= self.truncation:
            raise TruncationError(
                f"{self.kind} table built to {self.truncation}, row {n} requested"
            )
        return self.rows[n]

    def class_count(self, a: int, n: int) -> int:
        return self.row(n)[a]


@dataclass(frozen=True)
class StatisticRef:
    """One member of an inequality chain: N_{a,d}, M_{a,d}, or p_d/11."""

    family: str  # "rank" | "crank" | "partition-over-11"
    cls: int | None
    residue: int

    def __post_init__(self):
        if self.family not in ("rank", "crank", "partition-over-11"):
            raise ValueError(f"bad family {self.family!r}")
        if self.family == "partition-over-11":
            if self.cls is not None:
                raise ValueError("partition member carries no class")
        else:
            if self.cls is None or not 0 <= self.cls <= 10:
                raise ValueError("class must be in 0..10")
        if not 0 <= self.residue <= 10:
            raise ValueError("residue must be in 0..10")

    @property
    def label(self) -> str:
        if self.family == "rank":
            return f"N_{{{self.cls},{self.residue}}}"
        if self.family == "crank":
            return f"M_{{{self.cls},{self.residue}}}"
        return f"p_{self.residue}/11"


@dataclass(frozen=True)
class TableContext:
    """The tables a verification run reads from."""

    rank: StatisticTable | None
    crank: StatisticTable | None
    partitions: tuple[int, ...]

    def stat_value(self, ref: StatisticRef, n: int) -> Fraction:
        """Exact value of the chain member at chain index n (argument 11n+d)."""
        m = MOD * n + ref.residue
        if ref.family == "partition-over-11":
            if m >= len(self.partitions):
                raise TruncationError(
                    f"partition column built to {len(self.partitions) - 1}, "
                    f"index {m} requested"
                )
            return Fraction(self.partitions[m], MOD)
        table = self.rank if ref.family == "rank" else self.crank
        if table is None:
            raise TruncationError(f"no {ref.family} table available")
        return Fraction(table.class_count(ref.cls, m))

    def scaled_value(self, ref: StatisticRef, n: int) -> int:
        """11 * stat_value, always an exact integer."""
        v = self.stat_value(ref, n) * MOD
        assert v.denominator == 1
        return v.numerator


# ---------------------------------------------------------------------------
# table construction
# ---------------------------------------------------------------------------


def _empty_rows(n_max: int) -> list[list[int]]:
    return [[0] * MOD for _ in range(n_max + 1)]


def _crank_rows_alternating(n_max: int) -> list[list[int]]:
    """Crank generating function via the alternating expansion

        (1 + (1-z) * sum_{n != 0} (-1)^n q^{n(n+1)/2} / (1 - z q^n)) / (q;q)_inf

    with each 1/(1 - z q^n) expanded geometrically and the final division
    done by the sparse pentagonal recurrence.
    """
    acc = _empty_rows(n_max)
    n = 1
    while n * (n + 1) // 2 <= n_max:
        sign = -1 if n % 2 else 1
        tri = n * (n + 1) // 2
        e, zp = tri, 0
        while e <= n_max:
            acc[e][zp % MOD] += sign
            e += n
            zp += 1
        base = n * (n - 1) // 2
        e, zp = base + n, 1
        while e <= n_max:
            acc[e][(-zp) % MOD] -= sign  # (-1)^(n+1) on the mirrored side
            e += n
            zp += 1
        n += 1
    # multiply by (1 - z), then add the constant term 1
    out = _empty_rows(n_max)
    for e in range(n_max + 1):
        src = acc[e]
        dst = out[e]
        for a in range(MOD):
            dst[a] = src[a] - src[_ROT_PLUS[a]]
    out[0][0] += 1
    # divide by (q;q)_inf
    pents = pentagonal_pairs(n_max)
    for e in range(n_max + 1):
        row = out[e]
        for g, sign in pents:
            if g > e:
                break
            prev = out[e - g]
            if sign == 1:
                for a in range(MOD):
                    row[a] -= prev[a]
            else:
                for a in range(MOD):
                    row[a] += prev[a]
    return out


def _crank_rows_product(n_max: int) -> list[list[int]]:
    """Reference method: literal truncated product

        (q;q)_inf * prod_k 1/(1 - z q^k) * 1/(1 - z^{-1} q^k),

    quadratic in the truncation; intended for cross-checks."""
    rows = _empty_rows(n_max)
    rows[0][0] = 1
    for k in range(1, n_max + 1):
        for rot in (_ROT_PLUS, _ROT_MINUS):
            for e in range(k, n_max + 1):
                src = rows[e - k]
                dst = rows[e]
                for a in range(MOD):
                    dst[a] += src[rot[a]]
    pents = pentagonal_pairs(n_max)
    out = _empty_rows(n_max)
    for e in range(n_max + 1):
        dst = out[e]
        src = rows[e]
        for a in range(MOD):
            dst[a] = src[a]
        for g, sign in pents:
            if g > e:
                break
            prev = rows[e - g]
            if sign == 1:
                for a in range(MOD):
                    dst[a] += prev[a]
            else:
                for a in range(MOD):
                    dst[a] -= prev[a]
    return out


def _rank_rows(n_max: int) -> list[list[int]]:
    """Rank generating function sum_k q^{k^2} / ((zq;q)_k (z^{-1}q;q)_k),
    each term's denominator inverted incrementally from the previous one."""
    acc = _empty_rows(n_max)
    acc[0][0] = 1  # k = 0 term
    d = _empty_rows(n_max)
    d[0][0] = 1
    k = 1
    while k * k <= n_max:
        length = n_max - k * k
        for rot in (_ROT_PLUS, _ROT_MINUS):
            for e in range(k, length + 1):
                src = d[e - k]
                dst = d[e]
                for a in range(MOD):
                    dst[a] += src[rot[a]]
        kk = k * k
        for e in range(length + 1):
            src = d[e]
            dst = acc[e + kk]
            for a in range(MOD):
                dst[a] += src[a]
        k += 1
    return acc


def _freeze(kind: str, n_max: int, rows: list[list[int]],
            partitions: list[int]) -> StatisticTable:
    return StatisticTable(
        kind=kind,
        truncation=n_max,
        rows=tuple(ResidueClassVector(tuple(r)) for r in rows),
        partitions=tuple(partitions),
    )


def crank_class_table(n_max: int, method: str = "appell-lerch") -> StatisticTable:
    """Crank class counts M(a,11;n) for n <= n_max (generating-function
    convention, including its n = 1 anomaly)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if method == "appell-lerch":
        rows = _crank_rows_alternating(n_max)
    elif method == "naive-product":
        rows = _crank_rows_product(n_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _freeze("crank", n_max, rows, partition_numbers(n_max))


def rank_class_table(n_max: int) -> StatisticTable:
    """Rank class counts N(a,11;n) for n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return _freeze("rank", n_max, _rank_rows(n_max), partition_numbers(n_max))


def table_context(rank: StatisticTable | None = None,
                  crank: StatisticTable | None = None) -> TableContext:
    table = rank or crank
    if table is None:
        raise ValueError("need at least one table")
    return TableContext(rank=rank, crank=crank, partitions=table.partitions)


# ---------------------------------------------------------------------------
# difference statistics
# ---------------------------------------------------------------------------

FAMILY_ARITY = {"c1": 1, "c2": 1, "c3": 2, "c4": 2, "c5": 2}


def exact_family_delta(family: str, params: tuple[int, ...], d: int, n: int,
                       ctx: TableContext) -> int:
    """11 times the class-difference statistic at partition argument 11n+d.

    c1: 11*M(a) - p      c2: 11*N(a) - p      c3: 11*(N(a1) - N(a2))
    c4: 11*(N(a1) - M(a2))              c5: 11*(M(a1) - M(a2))
    """
    if family not in FAMILY_ARITY:
        raise ValueError(f"unknown family {family!r}")
    if len(params) != FAMILY_ARITY[family]:
        raise ValueError(f"{family} takes {FAMILY_ARITY[family]} class parameters")
    m = MOD * n + d
    if m >= len(ctx.partitions):
        raise TruncationError(
            f"tables built to {len(ctx.partitions) - 1}, argument {m} requested"
        )
    p = ctx.partitions[m]
    if family == "c1":
        return MOD * ctx.crank.class_count(params[0], m) - p
    if family == "c2":
        return MOD * ctx.rank.class_count(params[0], m) - p
    if family == "c3":
        a1, a2 = params
        return MOD * (ctx.rank.class_count(a1, m) - ctx.rank.class_count(a2, m))
    if family == "c4":
        a1, a2 = params
        return MOD * (ctx.rank.class_count(a1, m) - ctx.crank.class_count(a2, m))
    a1, a2 = params
    return MOD * (ctx.crank.class_count(a1, m) - ctx.crank.class_count(a2, m))


def cyclotomic_eval(row: ResidueClassVector, j: int) -> CyclotomicValue:
    """The row evaluated at the j-th primitive 11th root of unity, exactly."""
    if not 1 <= j <= 5:
        raise ValueError("j must be in 1..5")
    coeffs = [0] * MOD
    for a in range(MOD):
        coeffs[(a * j) % MOD] += row.counts[a]
    return CyclotomicValue(tuple(coeffs))


def cyclotomic_eval_interval(row: ResidueClassVector, j: int,
                             prec: int = DEFAULT_PRECISION) -> IntervalReal:
    """Numeric enclosure of the same evaluation (real by slot symmetry)."""
    return cyclotomic_eval(row, j).real_interval(prec)


# ---------------------------------------------------------------------------
# dumps
# ---------------------------------------------------------------------------

CSV_HEADER = ["n", "p", "kind"] + [f"c{a}" for a in range(MOD)]


def write_table_csv(fh: IO[str], kind: str, partitions: Iterable[int],
                    rows: Iterable[ResidueClassVector] | None) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_HEADER)
    if rows is None:
        for n, p in enumerate(partitions):
            writer.writerow([n, p, "partition"] + [""] * MOD)
        return
    for n, (p, row) in enumerate(zip(partitions, rows)):
        writer.writerow([n, p, kind] + list(row.counts))


def table_to_json(kind: str, partitions: Iterable[int],
                  rows: Iterable[ResidueClassVector] | None) -> str:
    if rows is None:
        payload = {
            "kind": "partition",
            "rows": [{"n": n, "p": str(p)} for n, p in enumerate(partitions)],
        }
    else:
        payload = {
            "kind": kind,
            "rows": [
                {"n": n, "p": str(p), "c": [str(c) for c in row.counts]}
                for n, (p, row) in enumerate(zip(partitions, rows))
            ],
        }
    return json.dumps(payload, indent=2)
