"""Aggregated self-checks over a list of degrees, reported as one JSON document.

Each degree runs six checks: the numerical lobe count, the n=2 x-intercepts,
closed-form agreement of the radial extrema, the indent/membership oracle
cross-check, the convergence-row identity, and render determinism across
worker counts. Failures land in the report (and the overall flag), never as
exceptions.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from ._io import write_text
from .lobe import boundary_point, c_extrema, convergence_report
from .render import GridSpec, boundary_membership_check, render, write_ppm

__all__ = ["DegreeChecks", "VerifyReport", "verify_suite"]

_TOL = 1e-12


@dataclass(frozen=True)
class DegreeChecks:
    """Flat per-degree check results; ``passed`` is their conjunction."""

    degree: int
    lobe_count: int
    lobe_count_pass: bool
    x_intercept_cusp: float | None
    x_intercept_far: float | None
    x_intercepts_pass: bool | None
    c_min: float
    c_max: float
    extrema_closed_form_pass: bool
    indent_modulus: float
    indent_probes: int
    indent_probes_failed: int
    indent_oracle_pass: bool
    r_base: float
    gap: float
    convergence_pass: bool
    render_hash: str
    determinism_pass: bool
    passed: bool


@dataclass(frozen=True)
class VerifyReport:
    degrees: tuple[DegreeChecks, ...]
    shrink: float
    budget: int
    overall_pass: bool

    def to_json(self) -> str:
        doc = {
            "overall_pass": self.overall_pass,
            "shrink": self.shrink,
            "budget": self.budget,
            "degrees": [asdict(d) for d in self.degrees],
        }
        return json.dumps(doc, indent=2) + "\n"

    def write_json(self, destination) -> None:
        write_text(destination, self.to_json())


def _scan_lobe_count(n: int, per_lobe: int = 4096) -> int:
    # independent route: squared distance evaluated from the parametric
    # curve itself, not from the closed-form profile it is checked against
    total = (n - 1) * per_lobe
    phi = np.arange(total) * (2.0 * (n - 1) * math.pi / total)
    r1 = math.exp(-math.log(n) / (n - 1))
    rn = math.exp(-n * math.log(n) / (n - 1))
    x = np.cos(phi / (n - 1)) * r1 - np.cos(n * phi / (n - 1)) * rn
    y = np.sin(phi / (n - 1)) * r1 - np.sin(n * phi / (n - 1)) * rn
    v = x * x + y * y
    strict_min = (v < np.roll(v, 1)) & (v < np.roll(v, -1))
    return int(strict_min.sum())


def _render_hashes(n: int, grid_pixels: int, grid_iters: int, worker_counts: Sequence[int]):
    c_max = c_extrema(n)[1]
    spec = GridSpec(
        width=grid_pixels,
        height=grid_pixels,
        center=0j,
        scale=2.0 * 1.3 * c_max / grid_pixels,
        max_iter=grid_iters,
    )
    digests = []
    for workers in worker_counts:
        sink = io.BytesIO()
        write_ppm(render(n, spec, workers), "grayscale", sink)
        digests.append(hashlib.sha256(sink.getvalue()).hexdigest())
    return digests


def _check_degree_n(n, shrink, budget, grid_pixels, grid_iters, worker_counts) -> DegreeChecks:
    lobe_count = _scan_lobe_count(n)
    lobe_count_pass = lobe_count == n - 1

    if n == 2:
        cusp = boundary_point(2, 0.0)
        far = boundary_point(2, math.pi)
        x_cusp, x_far = cusp.real, far.real
        x_pass = (
            abs(cusp.real - 0.25) <= _TOL
            and abs(cusp.imag) <= _TOL
            and abs(far.real + 0.75) <= _TOL
            and abs(far.imag) <= _TOL
        )
    else:
        x_cusp = x_far = x_pass = None

    c_min, c_max = c_extrema(n)
    log_n = math.log(n)
    sq = math.exp(-2.0 * log_n / (n - 1))
    sq_n = math.exp(-2.0 * n * log_n / (n - 1))
    cross = math.exp(-(n + 1.0) * log_n / (n - 1))
    indent_modulus = (1.0 - 1.0 / n) * math.exp(-log_n / (n - 1))
    extrema_pass = (
        abs(c_max * c_max - (sq + sq_n + 2.0 * cross)) <= _TOL
        and abs(c_min * c_min - (sq + sq_n - 2.0 * cross)) <= _TOL
        and abs(c_min - indent_modulus) <= _TOL
    )

    oracle = boundary_membership_check(n, shrink, budget)
    failed = sum(1 for p in oracle.probes if not p.passed)

    row = convergence_report([n]).rows[0]
    convergence_pass = (
        0.0 < row.r_base < 1.0
        and abs(row.gap * n / row.r_base - 2.0) <= _TOL
        and abs(row.c_max - row.c_min - row.gap) <= _TOL
    )

    digests = _render_hashes(n, grid_pixels, grid_iters, worker_counts)
    determinism_pass = len(set(digests)) == 1

    passed = all(
        flag
        for flag in (
            lobe_count_pass,
            x_pass if x_pass is not None else True,
            extrema_pass,
            oracle.all_passed,
            convergence_pass,
            determinism_pass,
        )
    )
    return DegreeChecks(
        degree=n,
        lobe_count=lobe_count,
        lobe_count_pass=lobe_count_pass,
        x_intercept_cusp=x_cusp,
        x_intercept_far=x_far,
        x_intercepts_pass=x_pass,
        c_min=c_min,
        c_max=c_max,
        extrema_closed_form_pass=extrema_pass,
        indent_modulus=indent_modulus,
        indent_probes=len(oracle.probes),
        indent_probes_failed=failed,
        indent_oracle_pass=oracle.all_passed,
        r_base=row.r_base,
        gap=row.gap,
        convergence_pass=convergence_pass,
        render_hash=digests[0],
        determinism_pass=determinism_pass,
        passed=passed,
    )


def verify_suite(
    degrees: Iterable[int],
    *,
    shrink: float = 0.9,
    budget: int = 10_000,
    grid_pixels: int = 64,
    grid_iters: int = 128,
    worker_counts: Sequence[int] = (1, 4),
) -> VerifyReport:
    """Run every per-degree check and fold the results into a VerifyReport.

    ``overall_pass`` is the conjunction of all checks over all degrees.
    """
    ds = sorted({int(d) for d in degrees})
    if not ds:
        raise ValueError("degrees must be nonempty")
    if any(d < 2 for d in ds):
        raise ValueError("every degree must be >= 2")
    results = tuple(
        _check_degree_n(n, shrink, budget, grid_pixels, grid_iters, worker_counts)
        for n in ds
    )
    return VerifyReport(
        degrees=results,
        shrink=float(shrink),
        budget=int(budget),
        overall_pass=all(r.passed for r in results),
    )
