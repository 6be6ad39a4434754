"""Log-domain special functions shared by every formula in the package.

Factorials, double factorials and the Laguerre values L_n^{(0)}(-lambda^2)
appear inside products that overflow double precision long before the final
result does, so everything here works with natural logs and explicit signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Exact integer factorials below this bound; log-gamma above.
_EXACT_FACT_MAX = 20

_LOG_FACT_SMALL = tuple(math.log(math.factorial(n)) if n > 1 else 0.0
                        for n in range(_EXACT_FACT_MAX + 1))


@dataclass(frozen=True)
class LogValue:
    """A real number stored as (log of magnitude, sign).

    sign is -1, 0 or +1; sign == 0 means the value is exactly zero and
    magnitude_log is ignored. Multiplication adds logs and multiplies signs.
    """

    magnitude_log: float
    sign: int

    @classmethod
    def from_value(cls, x: float) -> "LogValue":
        if x == 0:
            return cls(0.0, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(0.0, 0)

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.sign == 0 or other.sign == 0:
            return LogValue(0.0, 0)
        return LogValue(self.magnitude_log + other.magnitude_log,
                        self.sign * other.sign)

    def value(self) -> float:
        """Back to an ordinary float. Raises OverflowError if too large."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.magnitude_log)


def log_factorial(n: int) -> float:
    """ln(n!), from the exact integer factorial for n <= 20, lgamma beyond."""
    if n < 0:
        raise ValueError("factorial argument must be nonnegative")
    if n <= _EXACT_FACT_MAX:
        return _LOG_FACT_SMALL[n]
    return math.lgamma(n + 1.0)


def log_double_factorial(n: int) -> float:
    """ln(n!!) with the conventions (-1)!! = 0!! = 1.

    Even n = 2m reduces to m ln 2 + ln m!; odd n = 2m+1 to
    ln (2m+2)! - (m+1) ln 2 - ln (m+1)!.
    """
    if n < -1:
        raise ValueError("double factorial defined for n >= -1")
    if n <= 0:
        return 0.0
    if n % 2 == 0:
        m = n // 2
        return m * math.log(2.0) + log_factorial(m)
    m = (n - 1) // 2
    return log_factorial(2 * m + 2) - (m + 1) * math.log(2.0) - log_factorial(m + 1)


# Growing table of ln k! used by the vectorized series sums. Idempotent fill:
# entries never change once written, so concurrent refills are harmless.
_LOG_FACT_TABLE = np.array([log_factorial(n) for n in range(64)])


def log_factorial_table(n_max: int) -> np.ndarray:
    """Array of ln k! for k = 0..n_max (a view into a shared cache)."""
    global _LOG_FACT_TABLE
    if n_max >= _LOG_FACT_TABLE.size:
        grown = max(n_max + 1, 2 * _LOG_FACT_TABLE.size)
        _LOG_FACT_TABLE = np.array([log_factorial(n) for n in range(grown)])
    return _LOG_FACT_TABLE[: n_max + 1]


def logsumexp_positive(logs: np.ndarray) -> float:
    """log(sum(exp(logs))) for a nonempty array of finite logs."""
    mx = float(np.max(logs))
    return mx + math.log(float(np.exp(logs - mx).sum()))


def laguerre0_log(n: int, lam: float) -> float:
    """ln L_n^{(0)}(-lambda^2).

    The series L_n(-lam^2) = sum_k C(n,k) lam^{2k}/k! has all-positive terms,
    so the log-sum is exact up to rounding; no cancellation occurs.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    if lam == 0.0 or n == 0:
        return 0.0
    lf = log_factorial_table(n)
    k = np.arange(n + 1)
    logs = lf[n] - lf[k] - lf[n - k] + 2.0 * k * math.log(abs(lam)) - lf[k]
    return logsumexp_positive(logs)


def laguerre0(n: int, lam: float) -> float:
    """L_n^{(0)}(-lambda^2) as a plain float.

    Always >= 1, exactly 1 at lambda = 0. Raises OverflowError when the value
    exceeds the double range; callers needing large n use laguerre0_log.
    """
    return math.exp(laguerre0_log(n, lam))
