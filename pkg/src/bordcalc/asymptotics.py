"""Hardy-Ramanujan and Gupta estimates checked against exact partition data."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .partitions import build_partition_table

__all__ = [
    "AsymptoticReport",
    "Tolerances",
    "TOLERANCES",
    "log_hr_partition",
    "log_hr_ranksum",
    "hr_partition_estimate",
    "hr_ranksum_estimate",
    "partition_report",
    "ranksum_report",
    "gupta_check",
    "log_int",
]


@dataclass(frozen=True)
class Tolerances:
    """Engineering thresholds; the estimates are only asymptotically exact."""

    max_relative_error: float = 0.10
    near_n: int = 500
    far_n: int = 2000


TOLERANCES = Tolerances()


def log_int(x: int) -> float:
    """Natural log of a positive integer of any size."""
    if x <= 0:
        raise ValueError("log of a nonpositive integer")
    digits = len(str(x))
    if digits <= 300:
        return math.log(x)
    # Keep the leading 30 digits; the rest only shifts the exponent.
    drop = digits - 30
    return math.log(x // 10**drop) + drop * math.log(10)


def _positive(n: int) -> None:
    if n < 1:
        raise ValueError("estimate needs n >= 1")


def log_hr_partition(n: int) -> float:
    _positive(n)
    return math.pi * math.sqrt(2 * n / 3) - math.log(4 * n * math.sqrt(3))


def log_hr_ranksum(n: int) -> float:
    _positive(n)
    return math.pi * math.sqrt(2 * n / 3) - math.log(2 * math.pi * math.sqrt(2 * n))


def _exp(logv: float) -> float:
    return math.exp(logv) if logv < 709.0 else math.inf


def hr_partition_estimate(n: int) -> float:
    """Leading Hardy-Ramanujan term for p(n)."""
    return _exp(log_hr_partition(n))


def hr_ranksum_estimate(n: int) -> float:
    """Leading term for sum_{i<=n} p(i), the rank of pi_{4n} MSpin^h."""
    return _exp(log_hr_ranksum(n))


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    exact_value: int
    estimate: float
    relative_error: float
    ratio: float = math.nan
    label: str = ""

    def __post_init__(self):
        if self.exact_value <= 0:
            raise ValueError("exact value must be positive")

    def consistent(self) -> bool:
        """Re-derive the relative error from the stored fields."""
        if math.isinf(self.estimate):
            return True
        again = abs(self.exact_value - self.estimate) / self.exact_value
        return math.isclose(again, self.relative_error, rel_tol=1e-9, abs_tol=1e-12)


def _report(label: str, n: int, exact: int, log_est: float) -> AsymptoticReport:
    # |exact - est| / exact computed from the log ratio to dodge overflow
    log_ratio = log_est - log_int(exact)
    rel = abs(math.expm1(log_ratio))
    return AsymptoticReport(n, exact, _exp(log_est), rel, math.exp(log_ratio), label)


def partition_report(n: int) -> AsymptoticReport:
    exact = build_partition_table(n).p(n)
    return _report("p(n)", n, exact, log_hr_partition(n))


def ranksum_report(n: int) -> AsymptoticReport:
    exact = build_partition_table(n).prefix_sums()[n]
    return _report("sum p(i), i<=n", n, exact, log_hr_ranksum(n))


def gupta_check(n: int) -> AsymptoticReport:
    """Compare ``sum_{i<n} p(i)`` with ``p(n) sqrt(6n) / pi``."""
    _positive(n)
    pt = build_partition_table(n)
    exact = pt.prefix_sums()[n - 1]
    log_est = log_int(pt.p(n)) + 0.5 * math.log(6 * n) - math.log(math.pi)
    return _report("Gupta sum p(i), i<n", n, exact, log_est)
