"""Matplotlib figure output for boundaries, orbits, dwell grids and reports.

Every function writes straight to a file (format chosen by the path suffix)
using the Agg backend, so figures render identically with or without a
display.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .dynamics import Orbit
from .lobe import LobeBoundary, c_extrema, indent_points, sample_boundary
from .render import NOT_ESCAPED, DwellBuffer, pixel_parameter
from .verify import VerifyReport

__all__ = [
    "save_boundary_figure",
    "save_orbit_figure",
    "save_indent_figure",
    "save_dwell_figure",
    "save_verify_figure",
]


def _curve_xy(boundary: LobeBoundary):
    xs = [z.real for _, z in boundary.samples]
    ys = [z.imag for _, z in boundary.samples]
    xs.append(xs[0])
    ys.append(ys[0])
    return xs, ys


def _axes_frame(ax, half_span=1.1):
    ax.set_aspect("equal")
    ax.set_xlim(-half_span, half_span)
    ax.set_ylim(-half_span, half_span)
    ax.axhline(0.0, color="0.85", lw=0.6, zorder=0)
    ax.axvline(0.0, color="0.85", lw=0.6, zorder=0)
    ax.set_xlabel("Re c")
    ax.set_ylabel("Im c")


def save_boundary_figure(boundaries, destination) -> None:
    """Overlay of one or more sampled main-body boundaries."""
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    for b in boundaries:
        xs, ys = _curve_xy(b)
        ax.plot(xs, ys, lw=1.1, label=f"n = {b.degree}")
    _axes_frame(ax)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(destination, dpi=150)
    plt.close(fig)


def save_orbit_figure(orbit: Orbit, destination) -> None:
    """Stored iterates in the z plane, joined in sequence, with the escape
    circle dashed."""
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    xs = [z.real for z in orbit.iterates]
    ys = [z.imag for z in orbit.iterates]
    ax.plot(xs, ys, lw=0.7, color="0.4", zorder=1)
    ax.scatter(xs, ys, s=9, c=np.arange(len(xs)), cmap="viridis", zorder=2)
    ax.scatter([orbit.start.real], [orbit.start.imag], marker="x", color="red", zorder=3,
               label="start")
    r = orbit.escape_radius_used
    angle = np.linspace(0.0, 2.0 * math.pi, 256)
    ax.plot(r * np.cos(angle), r * np.sin(angle), ls="--", lw=0.8, color="0.6",
            label=f"escape radius {r:g}")
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title(f"{len(orbit.iterates)} stored iterates, {orbit.outcome.value}")
    fig.tight_layout()
    fig.savefig(destination, dpi=150)
    plt.close(fig)


def save_indent_figure(n: int, destination, *, samples_per_lobe: int = 512) -> None:
    """Boundary of degree n with its cusp points and radial extrema circles."""
    boundary = sample_boundary(n, samples_per_lobe)
    cusps = indent_points(n)
    c_min, c_max = c_extrema(n)
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    xs, ys = _curve_xy(boundary)
    ax.plot(xs, ys, lw=1.1, color="tab:blue", label=f"n = {n}")
    angle = np.linspace(0.0, 2.0 * math.pi, 256)
    for radius, name in ((c_min, "c_min"), (c_max, "c_max")):
        ax.plot(radius * np.cos(angle), radius * np.sin(angle), ls=":", lw=0.8,
                color="0.55", label=f"{name} = {radius:.6f}")
    ax.scatter([p.real for p in cusps.points], [p.imag for p in cusps.points],
               marker="o", s=28, color="tab:red", zorder=3, label="indent points")
    _axes_frame(ax)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(destination, dpi=150)
    plt.close(fig)


def save_dwell_figure(buffer: DwellBuffer, destination) -> None:
    """Dwell grid as an image: bounded pixels black, escapes shaded by step."""
    spec = buffer.spec
    shade = np.where(buffer.dwell == NOT_ESCAPED, 0.0,
                     1.0 - buffer.dwell / spec.max_iter)
    top_left = pixel_parameter(spec, 0, 0)
    bottom_right = pixel_parameter(spec, spec.width - 1, spec.height - 1)
    half = spec.scale / 2.0
    extent = (top_left.real - half, bottom_right.real + half,
              bottom_right.imag - half, top_left.imag + half)
    fig, ax = plt.subplots(figsize=(6.0, 6.0 * spec.height / spec.width))
    ax.imshow(shade, cmap="gray", vmin=0.0, vmax=1.0, extent=extent, origin="upper",
              interpolation="nearest")
    ax.set_xlabel("Re c")
    ax.set_ylabel("Im c")
    ax.set_title(f"n = {buffer.degree}, max_iter = {spec.max_iter}")
    fig.tight_layout()
    fig.savefig(destination, dpi=150)
    plt.close(fig)


def save_verify_figure(report: VerifyReport, destination, *, samples_per_lobe: int = 384) -> None:
    """Two-panel summary of a verification report: boundary overlays and the
    shrinking radial gap against the unit circle."""
    degrees = [d.degree for d in report.degrees]
    fig, (ax_curves, ax_gap) = plt.subplots(1, 2, figsize=(10.5, 5.0))

    shown = degrees if len(degrees) <= 6 else \
        sorted({degrees[round(i * (len(degrees) - 1) / 5)] for i in range(6)})
    angle = np.linspace(0.0, 2.0 * math.pi, 256)
    ax_curves.plot(np.cos(angle), np.sin(angle), ls="--", lw=0.8, color="0.6",
                   label="unit circle")
    for n in shown:
        xs, ys = _curve_xy(sample_boundary(n, samples_per_lobe))
        ax_curves.plot(xs, ys, lw=1.0, label=f"n = {n}")
    _axes_frame(ax_curves)
    ax_curves.legend(loc="upper right", fontsize=7)
    ax_curves.set_title("main-body boundaries")

    r_bases = [d.r_base for d in report.degrees]
    gaps = [d.gap for d in report.degrees]
    ax_gap.plot(degrees, gaps, marker="o", ms=3, lw=1.0, label="c_max - c_min")
    ax_gap.plot(degrees, r_bases, marker="s", ms=3, lw=1.0, label="r_base")
    ax_gap.axhline(1.0, ls="--", lw=0.8, color="0.6")
    ax_gap.set_xlabel("degree n")
    ax_gap.set_title("radial extrema vs degree")
    ax_gap.legend(fontsize=8)
    status = "pass" if report.overall_pass else "FAIL"
    fig.suptitle(f"verification over degrees {degrees[0]}..{degrees[-1]}: {status}")
    fig.tight_layout()
    fig.savefig(destination, dpi=150)
    plt.close(fig)
