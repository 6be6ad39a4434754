"""Photon statistics and quadrature variances over either basis.

P_lambda(m) is the squared magnitude of the projection onto the deformed
bra <m|_lam. The deformed kets are not orthogonal, so these are frame
coefficients, not probabilities of a projective measurement: their sum is
reported as a diagnostic (prob_sum) and never used to renormalize, and the
moment sums feed the Mandel formula exactly as defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import operators
from .fock import LambdaBasis, LambdaExpansion, gram
from .specfun import log_factorial_table

_TAIL_TOL = 1e-12
_NORM_TOL = 1e-8


@dataclass(frozen=True)
class StatisticsReport:
    """Raw number moments and the Mandel Q they imply.

    mandel_q is NaN with q_defined False when the mean vanishes (vacuum),
    since the Mandel formula divides by the mean.
    """

    mean: float
    second_moment: float
    mandel_q: float
    prob_sum: float
    basis_tag: str
    q_defined: bool = True


@dataclass(frozen=True)
class QuadratureReport:
    var_x: float
    var_p: float
    product: float


def p_lambda(m: int, alpha: complex, basis: LambdaBasis) -> float:
    """P_lambda(m) = |<m|_lam |alpha, lam>|^2 by the closed double sum.

    Evaluates (m! e^{-|alpha|^2} / L_m) |sum_n lam^{m-n} alpha^n /
    (n! (m-n)!)|^2 in log-magnitude space. Poissonian at lam = 0.
    """
    basis._check(m)
    alpha = complex(alpha)
    lam = basis.lam
    lf = log_factorial_table(m)
    n = np.arange(m + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_lam = math.log(abs(lam)) if lam != 0.0 else -math.inf
        log_a = math.log(abs(alpha)) if alpha != 0 else -math.inf
        logs = np.where(m - n > 0, (m - n) * log_lam, 0.0) \
            + np.where(n > 0, n * log_a, 0.0) - lf[n] - lf[m - n]
    peak = float(np.max(logs))
    if peak == -math.inf:
        return 0.0
    phases = np.exp(1j * np.angle(alpha) * n) if alpha != 0 else (n == 0) * 1.0
    signs = np.where((m - n) % 2 == 0, 1.0, math.copysign(1.0, lam) if lam else 1.0)
    s = np.sum(np.exp(logs - peak) * signs * phases)
    if s == 0:
        return 0.0
    log_p = float(lf[m]) - abs(alpha) ** 2 - float(basis.log_laguerre[m]) \
        + 2.0 * (peak + math.log(abs(s)))
    return math.exp(log_p)


def _lambda_projection_weights(psi: np.ndarray, basis: LambdaBasis,
                               m_lo: int, m_hi: int) -> np.ndarray:
    """|<m|_lam psi>|^2 for m in [m_lo, m_hi) against a standard-basis psi."""
    d = psi.shape[0]
    out = np.empty(m_hi - m_lo)
    for m in range(m_lo, m_hi):
        row = basis._row(m)
        k = min(m + 1, d)
        out[m - m_lo] = abs(np.dot(row[:k], psi[:k])) ** 2
    return out


def number_moments(state, cutoff: int | None = None) -> StatisticsReport:
    """Number moments <m>, <m^2>, Mandel Q in the state's declared basis.

    A plain array is read as a standard-basis vector: P(m) = |psi_m|^2 over
    its support. A LambdaExpansion (or a state carrying one) is read in the
    deformed basis: P(m) = |<m|_lam psi>|^2, with the cutoff extended until
    the m^2 P(m) tail drops below 1e-12 (the second moment converges slower
    than the mean).
    """
    expansion = getattr(state, "expansion", state)
    if isinstance(expansion, np.ndarray):
        v = np.asarray(expansion)
        hi = v.shape[0] if cutoff is None else min(cutoff, v.shape[0])
        P = np.abs(v[:hi]) ** 2
        return _report_from_probs(P, "standard")
    if not isinstance(expansion, LambdaExpansion):
        raise TypeError("state must be a standard-basis array or carry a "
                        "LambdaExpansion")
    basis = expansion.basis
    psi = expansion.to_standard()
    if cutoff is not None:
        basis._check(cutoff - 1, "cutoff")
        P = _lambda_projection_weights(psi, basis, 0, cutoff)
        return _report_from_probs(P, "lambda")
    hi = min(expansion.support + 32, basis.max_n + 1)
    P = _lambda_projection_weights(psi, basis, 0, hi)
    while True:
        m = np.arange(hi - 8, hi)
        if float(np.max((m.astype(float) ** 2 + 1.0) * P[-8:])) < _TAIL_TOL:
            break
        if hi > basis.max_n:
            raise operators.TruncationError(
                "m^2 P(m) tail not below 1e-12 at the basis horizon; "
                "build a LambdaBasis with a larger max_n")
        nxt = min(hi + 32, basis.max_n + 1)
        P = np.concatenate([P, _lambda_projection_weights(psi, basis, hi, nxt)])
        hi = nxt
    return _report_from_probs(P, "lambda")


def _report_from_probs(P: np.ndarray, tag: str) -> StatisticsReport:
    m = np.arange(P.shape[0], dtype=float)
    prob_sum = float(np.sum(P))
    mean = float(np.sum(m * P))
    second = float(np.sum(m * m * P))
    if mean > 0.0:
        q = (second - mean * mean) / mean - 1.0
        return StatisticsReport(mean, second, q, prob_sum, tag, True)
    return StatisticsReport(mean, second, math.nan, prob_sum, tag, False)


def _dense_quadratures(v: np.ndarray) -> QuadratureReport:
    v = np.asarray(v, dtype=complex)
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > _NORM_TOL:
        raise ValueError(f"state norm {nrm!r} differs from 1 beyond 1e-8")
    N = v.shape[0]
    a, a_dag, _ = operators.build_ladders(max(N, 2))
    a = a[:N, :N]
    a_dag = a_dag[:N, :N]
    av = a @ v
    e_a = complex(np.vdot(v, av))
    e_a2 = complex(np.vdot(v, a @ av))
    e_ad = complex(np.vdot(v, a_dag @ v))
    e_ad2 = complex(np.vdot(v, a_dag @ (a_dag @ v)))
    e_n = complex(np.vdot(v, a_dag @ av))
    return _quadratures_from_expectations(e_a, e_ad, e_a2, e_ad2, e_n)


def _lambda_quadratures(expansion: LambdaExpansion) -> QuadratureReport:
    basis = expansion.basis
    d = expansion.support
    basis._check(d + 1, "raised support")
    D = d + 2
    c = np.zeros(D, dtype=complex)
    c[:d] = expansion.coeffs
    G = gram(basis, D)
    Gc = G @ c
    norm2 = float(np.real(np.vdot(c, Gc)))
    if abs(math.sqrt(max(norm2, 0.0)) - 1.0) > _NORM_TOL:
        raise ValueError(f"lambda-basis norm {math.sqrt(max(norm2, 0.0))!r} "
                         "differs from 1 beyond 1e-8")
    lam = basis.lam
    lL = np.asarray(basis.log_laguerre[:D])
    n = np.arange(D, dtype=float)

    def expect(w: np.ndarray) -> complex:
        return complex(np.vdot(c, G @ w))

    # a^k |n>_lam = sqrt(n!/(n-k)!) sqrt(L_{n-k}/L_n) |n-k>_lam
    w = np.zeros(D, dtype=complex)
    w[: D - 1] = c[1:] * np.sqrt(n[1:]) * np.exp(0.5 * (lL[: D - 1] - lL[1:]))
    e_a = expect(w)
    w = np.zeros(D, dtype=complex)
    w[: D - 2] = c[2:] * np.sqrt(n[2:] * (n[2:] - 1.0)) \
        * np.exp(0.5 * (lL[: D - 2] - lL[2:]))
    e_a2 = expect(w)
    # (a_dag + lam)^k |n>_lam = sqrt((n+k)!/n!) sqrt(L_{n+k}/L_n) |n+k>_lam
    w = np.zeros(D, dtype=complex)
    w[1:] = c[: D - 1] * np.sqrt(n[1:]) * np.exp(0.5 * (lL[1:] - lL[: D - 1]))
    e_up = expect(w)
    w = np.zeros(D, dtype=complex)
    w[2:] = c[: D - 2] * np.sqrt(n[2:] * (n[2:] - 1.0)) \
        * np.exp(0.5 * (lL[2:] - lL[: D - 2]))
    e_up2 = expect(w)
    e_num = expect(n * c)  # (a_dag + lam) a |n>_lam = n |n>_lam
    # Translate to the undeformed creation operator: a_dag = (a_dag + lam) - lam
    e_ad = e_up - lam
    e_ad2 = e_up2 - 2.0 * lam * e_up + lam * lam
    e_n = e_num - lam * e_a
    return _quadratures_from_expectations(e_a, e_ad, e_a2, e_ad2, e_n)


def _quadratures_from_expectations(e_a: complex, e_ad: complex, e_a2: complex,
                                   e_ad2: complex, e_n: complex) -> QuadratureReport:
    # x = (a + a_dag)/sqrt2, p = (a - a_dag)/(i sqrt2)
    var_x = 0.5 * float(np.real(1.0 + e_a2 + e_ad2 + 2.0 * e_n
                                - (e_a + e_ad) ** 2))
    var_p = 0.5 * float(np.real(1.0 - e_a2 - e_ad2 + 2.0 * e_n
                                + (e_a - e_ad) ** 2))
    return QuadratureReport(var_x, var_p, var_x * var_p)


def quadrature_variances(state, basis: LambdaBasis | None = None) -> QuadratureReport:
    """(Delta x)^2 and (Delta p)^2 for a normalized state.

    Standard-basis arrays go through the dense ladder matrices; deformed
    expansions go through the closed ladder scalars contracted with the Gram
    matrix, with a_dag rewritten as (a_dag + lam) - lam. The two routes must
    agree wherever both apply.
    """
    expansion = getattr(state, "expansion", state)
    if isinstance(expansion, LambdaExpansion):
        return _lambda_quadratures(expansion)
    if isinstance(expansion, np.ndarray):
        return _dense_quadratures(expansion)
    raise TypeError("state must be a standard-basis array or carry a "
                    "LambdaExpansion")
