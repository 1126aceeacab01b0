"""Closed-form geometry of the main body of the degree-n set.

The period-1 region's boundary is the image of

    c(phi) = z - z^n,    z = (1/n)^(1/(n-1)) * cis(phi / (n-1)),

traced over one parameter period [0, 2(n-1)pi). The distance profile
|c(phi)|^2 depends on phi only through cos(phi), which pins the boundary's
closest approaches to the origin (the cusps where adjacent lobes meet) at
phi = 2 pi k and its farthest points at phi = (2k+1) pi. The cusp arguments
are those of the (n-1)-th roots of unity, and as n grows the whole curve
approaches the unit circle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._io import write_text

__all__ = [
    "ExtremaVerificationError",
    "LobeBoundary",
    "RadialProfile",
    "IndentSet",
    "ConvergenceRow",
    "ConvergenceReport",
    "period",
    "boundary_point",
    "sample_boundary",
    "radius_squared",
    "radial_profile",
    "c_extrema",
    "indent_points",
    "convergence_report",
    "export_boundary",
]

#: Scan density (points per lobe) used to double-check the closed forms.
SCAN_PER_LOBE = 4096


class ExtremaVerificationError(RuntimeError):
    """The numerical scan of the radial profile contradicted the closed forms."""


def _check_degree(n) -> int:
    d = int(n)
    if d != n or d < 2:
        raise ValueError(f"degree must be an integer >= 2, got {n!r}")
    return d


def _inv_root(n: int, power: float) -> float:
    # n^(-power/(n-1)), evaluated through exp/log so large n loses no precision
    return math.exp(-power * math.log(n) / (n - 1))


@dataclass(frozen=True)
class LobeBoundary:
    """Boundary curve sampled as (phi, c(phi)) pairs over one period."""

    degree: int
    samples: tuple[tuple[float, complex], ...]
    period: float


@dataclass(frozen=True)
class RadialProfile:
    """Distance extrema of the boundary: (phi, |c|) pairs, sorted by phi."""

    degree: int
    minima: tuple[tuple[float, float], ...]
    maxima: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class IndentSet:
    """The n-1 cusp points: arguments of the (n-1)-th roots of unity at the
    minimal boundary distance (1 - 1/n) * n^(-1/(n-1))."""

    degree: int
    arguments: tuple[float, ...]
    modulus: float
    points: tuple[complex, ...]


@dataclass(frozen=True)
class ConvergenceRow:
    degree: int
    r_base: float
    c_max: float
    c_min: float
    gap: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Approach of the boundary's radial extent to the unit circle."""

    rows: tuple[ConvergenceRow, ...]


def period(n: int) -> float:
    """Parameter period 2(n-1)pi of the degree-n boundary curve."""
    return 2.0 * (_check_degree(n) - 1) * math.pi


def boundary_point(n: int, phi: float) -> complex:
    """Boundary point c(phi) of the degree-n main body.

    x = cos(phi/(n-1)) / n^(1/(n-1)) - cos(n phi/(n-1)) / n^(n/(n-1))
    y = sin(phi/(n-1)) / n^(1/(n-1)) - sin(n phi/(n-1)) / n^(n/(n-1))
    """
    n = _check_degree(n)
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError("phi must be finite")
    r1 = _inv_root(n, 1.0)
    rn = _inv_root(n, float(n))
    a = phi / (n - 1)
    b = n * phi / (n - 1)
    return complex(
        math.cos(a) * r1 - math.cos(b) * rn,
        math.sin(a) * r1 - math.sin(b) * rn,
    )


def sample_boundary(n: int, samples_per_lobe: int) -> LobeBoundary:
    """Uniform-in-phi samples of the boundary, (n-1)*samples_per_lobe in all,
    covering [0, 2(n-1)pi)."""
    n = _check_degree(n)
    samples_per_lobe = int(samples_per_lobe)
    if samples_per_lobe < 8:
        raise ValueError(f"samples_per_lobe must be >= 8, got {samples_per_lobe}")
    total = (n - 1) * samples_per_lobe
    span = period(n)
    step = span / total
    samples = tuple((k * step, boundary_point(n, k * step)) for k in range(total))
    return LobeBoundary(n, samples, span)


def radius_squared(n: int, phi: float) -> float:
    """|c(phi)|^2 in closed form:

    n^(-2/(n-1)) + n^(-2n/(n-1)) - 2 cos(phi) * n^(-(n+1)/(n-1))
    """
    n = _check_degree(n)
    return (
        _inv_root(n, 2.0)
        + _inv_root(n, 2.0 * n)
        - 2.0 * math.cos(phi) * _inv_root(n, n + 1.0)
    )


def c_extrema(n: int) -> tuple[float, float]:
    """(c_min, c_max): nearest and farthest boundary distance from the origin,
    n^(-1/(n-1)) * (1 -+ 1/n)."""
    n = _check_degree(n)
    r_base = _inv_root(n, 1.0)
    return r_base * (1.0 - 1.0 / n), r_base * (1.0 + 1.0 / n)


def _scan_extrema_indices(n: int, scan_per_lobe: int):
    total = (n - 1) * scan_per_lobe
    vals = (
        _inv_root(n, 2.0)
        + _inv_root(n, 2.0 * n)
        - 2.0 * _inv_root(n, n + 1.0) * np.cos(np.arange(total) * (period(n) / total))
    )
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    minima = np.flatnonzero((vals < left) & (vals < right))
    maxima = np.flatnonzero((vals > left) & (vals > right))
    return minima, maxima, total


def _verify_extrema_scan(n, minima_phis, maxima_phis, scan_per_lobe) -> None:
    # belt-and-suspenders: every closed-form extremum must coincide with a
    # strict local extremum of a dense scan, to within one grid cell
    scan_min, scan_max, total = _scan_extrema_indices(n, scan_per_lobe)
    step = period(n) / total
    for phis, found, kind in ((minima_phis, scan_min, "minimum"),
                              (maxima_phis, scan_max, "maximum")):
        if len(found) != len(phis):
            raise ExtremaVerificationError(
                f"scan found {len(found)} {kind} cells for degree {n}, expected {len(phis)}"
            )
        for phi in phis:
            cell = round(phi / step) % total
            dist = np.abs(found - cell)
            if not np.any((dist <= 1) | (dist >= total - 1)):
                raise ExtremaVerificationError(
                    f"no scan {kind} within one cell of phi={phi:.6g} for degree {n}"
                )


def radial_profile(n: int, *, scan_per_lobe: int = SCAN_PER_LOBE) -> RadialProfile:
    """Distance extrema of the degree-n boundary over one parameter period.

    cos(phi) alone drives |c(phi)|^2, so the n-1 minima sit at phi = 2 pi k
    with |c| = c_min and the n-1 maxima at phi = (2k+1) pi with |c| = c_max,
    k = 0..n-2. The positions are verified against a dense numerical scan;
    disagreement raises ExtremaVerificationError.
    """
    n = _check_degree(n)
    c_min, c_max = c_extrema(n)
    minima = tuple((2.0 * math.pi * k, c_min) for k in range(n - 1))
    maxima = tuple(((2.0 * k + 1.0) * math.pi, c_max) for k in range(n - 1))
    _verify_extrema_scan(n, [p for p, _ in minima], [p for p, _ in maxima], scan_per_lobe)
    return RadialProfile(n, minima, maxima)


def indent_points(n: int) -> IndentSet:
    """Cusp points where adjacent lobes meet.

    Stationary points of c = z(1 - z^(n-1)) under the constraint
    n z^(n-1) = cis(phi) keep the argument of z, so the cusps inherit the
    arguments 2 pi k/(n-1) of the (n-1)-th roots of unity and all share the
    minimal modulus c_min = (1 - 1/n) * n^(-1/(n-1)).
    """
    n = _check_degree(n)
    modulus = c_extrema(n)[0]
    arguments = tuple(2.0 * math.pi * k / (n - 1) for k in range(n - 1))
    points = tuple(modulus * cmath.exp(1j * a) for a in arguments)
    return IndentSet(n, arguments, modulus, points)


def convergence_report(degrees: Iterable[int]) -> ConvergenceReport:
    """One row per degree: r_base = n^(-1/(n-1)), the radial extrema, and
    their gap 2 r_base / n; rows ordered by degree."""
    ds = sorted({_check_degree(d) for d in degrees})
    if not ds:
        raise ValueError("degrees must be nonempty")
    rows = []
    for n in ds:
        c_min, c_max = c_extrema(n)
        rows.append(ConvergenceRow(n, _inv_root(n, 1.0), c_max, c_min, c_max - c_min))
    return ConvergenceReport(tuple(rows))


def export_boundary(boundary: LobeBoundary, format: str, destination) -> None:
    """Write a sampled boundary as CSV (``phi,x,y``) or a closed SVG polyline."""
    if not boundary.samples:
        raise ValueError("boundary has no samples")
    if format == "csv":
        lines = ["phi,x,y"]
        for phi, z in boundary.samples:
            lines.append(f"{phi:.17g},{z.real:.17g},{z.imag:.17g}")
        write_text(destination, "\n".join(lines) + "\n")
    elif format == "svg":
        write_text(destination, _boundary_svg(boundary))
    else:
        raise ValueError(f"unknown boundary format {format!r}; use 'csv' or 'svg'")


def _boundary_svg(boundary: LobeBoundary) -> str:
    # SVG's y axis points down; negate im so the curve displays unmirrored
    coords = " L ".join(f"{z.real:.8g},{-z.imag:.8g}" for _, z in boundary.samples)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.1 -1.1 2.2 2.2">\n'
        f'  <path d="M {coords} Z" fill="none" stroke="black" stroke-width="0.002"/>\n'
        "</svg>\n"
    )
