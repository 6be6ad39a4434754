"""Parameter sweeps behind the figure subcommands, plus serialization.

Each sweep returns a SweepResult whose series are plain floats or None; None
marks a point that is undefined (vacuum Mandel Q) or outside a convergence
domain, and serializes as an empty CSV cell or JSON null so it can never be
mistaken for zero. Output is deterministic: fixed iteration order, shortest
round-trip float formatting, and a metadata header sufficient to reproduce
the run.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import operators
from .fock import LambdaBasis
from .states import DomainError, lambda_coherent, lambda_squeezed
from .stats import number_moments, quadrature_variances

# Covers the radius-scan horizon (2 * 800), so the guard, the state
# construction, and the statistics all share one basis and one Gram cache.
_SWEEP_MAX_N = 1604
_FIG1_MAX_N = 320


@dataclass
class SweepResult:
    """One figure's worth of sweep data plus reproduction metadata."""

    axis_name: str
    axis_values: list = field(default_factory=list)
    series: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        names = list(self.series)
        lines = ["# " + json.dumps(self.metadata, sort_keys=True)]
        lines.append(",".join([self.axis_name] + names))
        for i, x in enumerate(self.axis_values):
            cells = [repr(float(x))]
            for name in names:
                v = self.series[name][i]
                cells.append("" if v is None else repr(float(v)))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "axis_name": self.axis_name,
            "axis_values": [float(x) for x in self.axis_values],
            "series": self.series,
            "metadata": self.metadata,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _axis(grid: tuple[float, float, int]) -> list[float]:
    lo, hi, steps = grid
    steps = int(steps)
    if steps < 2:
        raise ValueError("grid needs at least 2 steps")
    if hi < lo:
        raise ValueError("grid max below min")
    return [float(x) for x in np.linspace(lo, hi, steps)]


def _fmt_num(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}j"


def _warn(message: str) -> None:
    print(f"lfock: warning: {message}", file=sys.stderr)


def sweep_fig1(alphas=None, lambda_range=(0.0, 5.0, 200),
               truncation: int | None = None) -> SweepResult:
    """Mandel Q of the deformed coherent state vs lam, one series per alpha."""
    if alphas is None:
        alphas = [1.0 + 0j, 2.0 + 0j, -1.0 + 0j, -2.0 + 0j]
    alphas = [complex(a) for a in alphas]
    lams = _axis(lambda_range)
    series: dict[str, list] = {f"Q[alpha={_fmt_num(a)}]": [] for a in alphas}
    for lam in lams:
        basis = LambdaBasis(lam, _FIG1_MAX_N)
        for a in alphas:
            key = f"Q[alpha={_fmt_num(a)}]"
            try:
                rep = number_moments(lambda_coherent(a, basis, truncation))
                series[key].append(float(rep.mandel_q) if rep.q_defined else None)
            except (DomainError, operators.TruncationError) as exc:
                _warn(f"fig1 lambda={lam:g} alpha={_fmt_num(a)} skipped: {exc}")
                series[key].append(None)
    metadata = {
        "command": "fig1",
        "basis": "lambda",
        "alphas": [[a.real, a.imag] for a in alphas],
        "grid": [lambda_range[0], lambda_range[1], int(lambda_range[2])],
        "truncation": "auto" if truncation is None else int(truncation),
    }
    return SweepResult("lambda", lams, series, metadata)


def sweep_fig2(lambdas=None, xi_range=(0.02, 0.9, 150),
               truncation: int | None = None) -> SweepResult:
    """Quadrature variances of the deformed squeezed state vs real xi."""
    if lambdas is None:
        lambdas = [0.5, 1.0, 2.0, 3.0]
    lambdas = [float(g) for g in lambdas]
    xis = _axis(xi_range)
    series: dict[str, list] = {}
    for lam in lambdas:
        tag = _fmt_num(lam)
        col_x: list = []
        col_p: list = []
        basis = LambdaBasis(lam, _SWEEP_MAX_N)
        skipped = 0
        for xi in xis:
            try:
                st = lambda_squeezed(complex(xi), basis, truncation)
                rep = quadrature_variances(st)
                col_x.append(float(rep.var_x))
                col_p.append(float(rep.var_p))
            except (DomainError, operators.TruncationError):
                col_x.append(None)
                col_p.append(None)
                skipped += 1
        if skipped:
            _warn(f"fig2 lambda={tag}: {skipped} xi point(s) outside the "
                  "guarded convergence disk, emitted as empty cells")
        series[f"var_x[lambda={tag}]"] = col_x
        series[f"var_p[lambda={tag}]"] = col_p
    metadata = {
        "command": "fig2",
        "basis": "lambda",
        "lambdas": lambdas,
        "grid": [xi_range[0], xi_range[1], int(xi_range[2])],
        "truncation": "auto" if truncation is None else int(truncation),
    }
    return SweepResult("xi", xis, series, metadata)


def sweep_fig3(basis_tag: str, lambdas=None, xi_range=(0.02, 0.9, 150),
               truncation: int | None = None) -> SweepResult:
    """Mandel Q of the deformed squeezed state vs real xi, in either basis."""
    if basis_tag not in ("lambda", "standard"):
        raise ValueError(f"basis must be 'lambda' or 'standard', not {basis_tag!r}")
    if lambdas is None:
        lambdas = [0.5, 1.0, 2.0]
    lambdas = [float(g) for g in lambdas]
    xis = _axis(xi_range)
    series: dict[str, list] = {}
    for lam in lambdas:
        tag = _fmt_num(lam)
        col: list = []
        basis = LambdaBasis(lam, _SWEEP_MAX_N)
        skipped = 0
        for xi in xis:
            if xi == 0.0:
                col.append(None)  # vacuum: Mandel Q undefined
                continue
            try:
                st = lambda_squeezed(complex(xi), basis, truncation)
                rep = number_moments(st if basis_tag == "lambda"
                                     else st.to_standard())
                col.append(float(rep.mandel_q) if rep.q_defined else None)
            except (DomainError, operators.TruncationError):
                col.append(None)
                skipped += 1
        if skipped:
            _warn(f"fig3 lambda={tag}: {skipped} xi point(s) outside the "
                  "guarded convergence disk, emitted as empty cells")
        series[f"Q[lambda={tag}]"] = col
    metadata = {
        "command": "fig3a" if basis_tag == "lambda" else "fig3b",
        "basis": basis_tag,
        "lambdas": lambdas,
        "grid": [xi_range[0], xi_range[1], int(xi_range[2])],
        "truncation": "auto" if truncation is None else int(truncation),
    }
    return SweepResult("xi", xis, series, metadata)
