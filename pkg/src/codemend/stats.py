"""Test statistics computed from first principles.

Implements the Pearson chi-square test of independence, one-way ANOVA,
and Cohen's kappa, together with the tail probability functions they
need (regularized incomplete gamma and beta). The tail functions are
evaluated by power series / continued fraction with absolute error
around 1e-10, which is more than enough for reporting p-values; no
scipy dependency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "StatsError",
    "ContingencyTable",
    "ChiSquareResult",
    "AnovaResult",
    "KappaResult",
    "chi_square",
    "chi_square_sf",
    "f_sf",
    "anova_oneway",
    "cohen_kappa",
]


class StatsError(ValueError):
    """A test's preconditions were violated."""


_MAX_ITER = 600
_EPS = 3e-15
_TINY = 1e-300


# ---------------------------------------------------------------------------
# Tail probability machinery
# ---------------------------------------------------------------------------

def _gamma_p_series(a: float, x: float) -> float:
    # Lower regularized gamma P(a, x) by power series; used for x < a + 1.
    term = 1.0 / a
    total = term
    n = a
    for _ in range(_MAX_ITER):
        n += 1.0
        term *= x / n
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    # Upper regularized gamma Q(a, x) by modified Lentz continued fraction.
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0 else 1.0 / _TINY
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a)."""
    if a <= 0:
        raise StatsError(f"gamma_q needs a > 0, got a={a}")
    if x < 0:
        raise StatsError(f"gamma_q needs x >= 0, got x={x}")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_p_series(a, x)
    return _gamma_q_contfrac(a, x)


def chi_square_sf(x: float, df: int) -> float:
    """Upper tail P(X >= x) of a chi-square distribution with df degrees."""
    if df < 1:
        raise StatsError(f"chi_square_sf needs df >= 1, got {df}")
    return gamma_q(df / 2.0, x / 2.0)


def _betacf(a: float, b: float, x: float) -> float:
    # Continued fraction for the incomplete beta (modified Lentz).
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def beta_i(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    bt = math.exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def f_sf(f: float, df1: int, df2: int) -> float:
    """Upper tail P(F >= f) of an F distribution with (df1, df2) degrees."""
    if df1 < 1 or df2 < 1:
        raise StatsError(f"f_sf needs df1, df2 >= 1, got ({df1}, {df2})")
    if f <= 0:
        return 1.0
    return beta_i(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f))


# ---------------------------------------------------------------------------
# Contingency tables and the chi-square test of independence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContingencyTable:
    """A labeled table of non-negative counts, at least 2x2."""

    counts: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...] = ()
    col_labels: tuple[str, ...] = ()

    @classmethod
    def from_counts(
        cls,
        counts,
        row_labels=None,
        col_labels=None,
    ) -> "ContingencyTable":
        rows = tuple(tuple(int(c) for c in row) for row in counts)
        if len(rows) < 2 or any(len(r) < 2 for r in rows):
            raise StatsError("contingency table must be at least 2x2")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise StatsError("contingency table rows have unequal lengths")
        if any(c < 0 for row in rows for c in row):
            raise StatsError("contingency table counts must be non-negative")
        rl = tuple(row_labels) if row_labels else tuple(f"row{i}" for i in range(len(rows)))
        cl = tuple(col_labels) if col_labels else tuple(f"col{j}" for j in range(width))
        if len(rl) != len(rows) or len(cl) != width:
            raise StatsError("label lengths do not match table shape")
        return cls(counts=rows, row_labels=rl, col_labels=cl)

    @property
    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.counts]

    @property
    def col_sums(self) -> list[int]:
        return [sum(row[j] for row in self.counts) for j in range(len(self.counts[0]))]

    @property
    def total(self) -> int:
        return sum(self.row_sums)


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    p: float
    n: int


def chi_square(table: ContingencyTable) -> ChiSquareResult:
    """Pearson chi-square test of independence, no continuity correction."""
    for label, s in zip(table.row_labels, table.row_sums):
        if s == 0:
            raise StatsError(f"row {label!r} has a zero marginal")
    for label, s in zip(table.col_labels, table.col_sums):
        if s == 0:
            raise StatsError(f"column {label!r} has a zero marginal")
    n = table.total
    rows = table.row_sums
    cols = table.col_sums
    stat = 0.0
    for i, row in enumerate(table.counts):
        for j, observed in enumerate(row):
            expected = rows[i] * cols[j] / n
            stat += (observed - expected) ** 2 / expected
    df = (len(rows) - 1) * (len(cols) - 1)
    return ChiSquareResult(statistic=stat, df=df, p=chi_square_sf(stat, df), n=n)


# ---------------------------------------------------------------------------
# One-way ANOVA
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnovaResult:
    f: float
    df_between: int
    df_within: int
    p: float


def anova_oneway(groups) -> AnovaResult:
    """One-way ANOVA F test over two or more groups of observations."""
    groups = [list(map(float, g)) for g in groups]
    k = len(groups)
    if k < 2:
        raise StatsError("anova needs at least 2 groups")
    if any(len(g) == 0 for g in groups):
        raise StatsError("anova groups must be non-empty")
    n = sum(len(g) for g in groups)
    if n <= k:
        raise StatsError(f"anova needs more observations ({n}) than groups ({k})")
    grand = sum(sum(g) for g in groups) / n
    means = [sum(g) / len(g) for g in groups]
    ssb = sum(len(g) * (m - grand) ** 2 for g, m in zip(groups, means))
    ssw = sum(sum((x - m) ** 2 for x in g) for g, m in zip(groups, means))
    df_between = k - 1
    df_within = n - k
    if ssw == 0.0:
        if ssb > 0.0:
            raise StatsError("all within-group variances are zero; F is undefined")
        return AnovaResult(f=0.0, df_between=df_between, df_within=df_within, p=1.0)
    f = (ssb / df_between) / (ssw / df_within)
    return AnovaResult(f=f, df_between=df_between, df_within=df_within, p=f_sf(f, df_between, df_within))


# ---------------------------------------------------------------------------
# Cohen's kappa
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KappaResult:
    kappa: float
    observed_agreement: float
    expected_agreement: float
    degenerate: bool = False
    n: int = 0


def cohen_kappa(labels_a, labels_b) -> KappaResult:
    """Chance-corrected agreement between two raters over paired labels.

    When both raters assign one identical constant label, expected
    agreement is 1 and the ratio is undefined; that case is reported as
    kappa 1.0 with the degenerate flag set so calibration rounds with
    unanimous labels do not crash the workflow.
    """
    a = list(labels_a)
    b = list(labels_b)
    if len(a) != len(b):
        raise StatsError(f"label vectors differ in length ({len(a)} vs {len(b)})")
    if not a:
        raise StatsError("label vectors must be non-empty")
    n = len(a)
    po = sum(1 for x, y in zip(a, b) if x == y) / n
    categories = set(a) | set(b)
    pe = 0.0
    for cat in categories:
        pe += (a.count(cat) / n) * (b.count(cat) / n)
    if pe >= 1.0 - 1e-15:
        return KappaResult(kappa=1.0, observed_agreement=po, expected_agreement=1.0,
                           degenerate=True, n=n)
    kappa = (po - pe) / (1.0 - pe)
    return KappaResult(kappa=kappa, observed_agreement=po, expected_agreement=pe, n=n)
