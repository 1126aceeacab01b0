"""Escape-time membership over pixel grids and deterministic parallel rendering.

A parameter c belongs to the degree-n set when the critical orbit (z_0 = 0)
of z^n + c never leaves the escape radius max(|c|, 2). The renderer
evaluates that test per pixel in fixed row bands; bands are assembled by
row index, never by completion order, so output is byte-identical for
every worker count.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._io import write_bytes, write_text
from .dynamics import MultibrotParams, _pow_int
from .lobe import c_extrema, indent_points

__all__ = [
    "NOT_ESCAPED",
    "GridSpec",
    "DwellBuffer",
    "BoundaryProbe",
    "BoundaryCheckReport",
    "pixel_parameter",
    "membership",
    "render",
    "write_ppm",
    "boundary_membership_check",
    "write_check_csv",
]

#: Dwell sentinel for pixels whose critical orbit never escaped in budget.
NOT_ESCAPED = -1

#: Rows per work band. Fixed (independent of worker count) so the partition,
#: and therefore the output, never depends on scheduling.
BAND_ROWS = 64

_DEFAULT_CELL_CAP = 100_000_000

_COLORMAPS = ("grayscale", "log-grayscale")


@dataclass(frozen=True)
class GridSpec:
    """Pixel grid over the parameter plane.

    ``scale`` is plane units per pixel; pixel centres are laid out around
    ``center`` with row 0 at the top (largest imaginary part).
    """

    width: int
    height: int
    center: complex
    scale: float
    max_iter: int
    max_cells: int = _DEFAULT_CELL_CAP

    def __post_init__(self):
        for name in ("width", "height", "max_iter"):
            v = getattr(self, name)
            if int(v) != v or int(v) < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"scale must be positive and finite, got {self.scale!r}")
        c = complex(self.center)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("center must have finite components")
        object.__setattr__(self, "center", c)
        if self.width * self.height > self.max_cells:
            raise ValueError(
                f"grid of {self.width}x{self.height} exceeds the cell cap {self.max_cells}"
            )


@dataclass(frozen=True, eq=False)
class DwellBuffer:
    """Per-pixel escape steps for one degree over one grid.

    ``dwell`` is a read-only int32 array of shape (height, width); entries
    are escape steps in [1, max_iter] or NOT_ESCAPED.
    """

    spec: GridSpec
    degree: int
    dwell: np.ndarray


def pixel_parameter(spec: GridSpec, col: int, row: int) -> complex:
    """Plane coordinate of the pixel centre at (col, row):

    c = center + scale*(col - (width-1)/2) - i*scale*(row - (height-1)/2)

    Row 0 therefore carries the largest imaginary part, and grids centred on
    the real axis are mirror-symmetric row for row.
    """
    return complex(
        spec.center.real + spec.scale * (col - (spec.width - 1) / 2.0),
        spec.center.imag - spec.scale * (row - (spec.height - 1) / 2.0),
    )


def membership(params: MultibrotParams, max_iter: int) -> int | None:
    """Escape step of the critical orbit, or None if it stays bounded.

    Iterates z_0 = 0 under z^n + c with escape radius max(|c|, 2); the test
    compares modulus squared against radius squared (no square roots), and a
    non-finite iterate counts as escaped at that step. None means the budget
    was exhausted without escape.
    """
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    n, c = params.degree, params.c
    r2 = max(c.real * c.real + c.imag * c.imag, 4.0)
    z = 0j
    for k in range(1, max_iter + 1):
        z = _pow_int(z, n) + c
        m2 = z.real * z.real + z.imag * z.imag
        if not (m2 <= r2):  # catches NaN from transient overflow as escaped
            return k
    return None


def _pow_grid(z: np.ndarray, n: int) -> np.ndarray:
    # same LSB-first multiply order as dynamics._pow_int; n >= 2 here, so the
    # result is always a fresh array, never an alias of the input
    r = None
    b = z
    while True:
        if n & 1:
            r = b if r is None else r * b
        n >>= 1
        if not n:
            return r
        b = b * b


def _dwell_band(n: int, spec: GridSpec, row0: int, row1: int) -> np.ndarray:
    xs = spec.center.real + spec.scale * (np.arange(spec.width) - (spec.width - 1) / 2.0)
    ys = spec.center.imag - spec.scale * (np.arange(row0, row1) - (spec.height - 1) / 2.0)
    c = (xs[np.newaxis, :] + 1j * ys[:, np.newaxis]).ravel()

    dwell = np.full(c.size, NOT_ESCAPED, np.int32)
    r2 = np.maximum(c.real * c.real + c.imag * c.imag, 4.0)
    live = np.arange(c.size)
    z = np.zeros_like(c)
    for k in range(1, spec.max_iter + 1):
        z = _pow_grid(z, n) + c
        m2 = z.real * z.real + z.imag * z.imag
        escaped = ~(m2 <= r2)
        if escaped.any():
            dwell[live[escaped]] = k
            keep = ~escaped
            z = z[keep]
            c = c[keep]
            r2 = r2[keep]
            live = live[keep]
            if live.size == 0:
                break
    return dwell.reshape(row1 - row0, spec.width)


def render(n: int, spec: GridSpec, worker_count: int = 1) -> DwellBuffer:
    """Dwell grid for degree n over ``spec``.

    Each pixel's dwell equals the membership escape step for the pixel's c
    (NOT_ESCAPED when bounded). Work is split into fixed row bands handed to
    ``worker_count`` threads; results are placed by row index, so the output
    is byte-identical regardless of worker count or scheduling.
    """
    d = int(n)
    if d != n or d < 2:
        raise ValueError(f"degree must be an integer >= 2, got {n!r}")
    if worker_count < 1:
        raise ValueError(f"worker_count must be >= 1, got {worker_count}")

    bands = [(r0, min(r0 + BAND_ROWS, spec.height)) for r0 in range(0, spec.height, BAND_ROWS)]
    out = np.empty((spec.height, spec.width), np.int32)
    with ThreadPoolExecutor(max_workers=int(worker_count)) as pool:
        futures = [(r0, pool.submit(_dwell_band, d, spec, r0, r1)) for r0, r1 in bands]
        for r0, fut in futures:
            block = fut.result()
            out[r0 : r0 + block.shape[0], :] = block
    out.setflags(write=False)
    return DwellBuffer(spec=spec, degree=d, dwell=out)


def write_ppm(buffer: DwellBuffer, colormap: str, destination) -> None:
    """Binary P6 image of a dwell grid.

    Bounded pixels are black. An escape at step k maps to gray level
    round(255*(1 - k/max_iter)), or round(255*(1 - ln k/ln max_iter)) for
    the log variant, in all three channels.
    """
    if colormap not in _COLORMAPS:
        raise ValueError(f"unknown colormap {colormap!r}; use one of {_COLORMAPS}")
    spec = buffer.spec
    gray = np.zeros(buffer.dwell.shape, np.uint8)
    escaped = buffer.dwell != NOT_ESCAPED
    if escaped.any():
        k = buffer.dwell[escaped].astype(np.float64)
        if colormap == "grayscale":
            levels = np.rint(255.0 * (1.0 - k / spec.max_iter))
        elif spec.max_iter > 1:
            levels = np.rint(255.0 * (1.0 - np.log(k) / math.log(spec.max_iter)))
        else:
            levels = np.zeros_like(k)  # ln(max_iter) = 0: only k = 1 exists, dimmest level
        gray[escaped] = np.clip(levels, 0.0, 255.0).astype(np.uint8)
    header = f"P6\n{spec.width} {spec.height}\n255\n".encode("ascii")
    write_bytes(destination, header + np.repeat(gray[:, :, np.newaxis], 3, axis=2).tobytes())


@dataclass(frozen=True)
class BoundaryProbe:
    """One membership probe of the indent cross-check."""

    degree: int
    theta: float
    radius: float
    expected: str
    actual: str
    escape_step: int | None

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class BoundaryCheckReport:
    """Pass/fail rows of the indent cross-check; failures are data, not errors."""

    degree: int
    shrink: float
    budget: int
    probes: tuple[BoundaryProbe, ...]

    @property
    def all_passed(self) -> bool:
        return all(p.passed for p in self.probes)


def boundary_membership_check(n: int, shrink: float, budget: int) -> BoundaryCheckReport:
    """Cross-validate the closed-form lobe extrema against escape-time membership.

    For every cusp argument theta, probes shrink*c_min*cis(theta), radially
    inside the cusp (expected bounded), and (c_max/shrink)*cis(theta +
    pi/(n-1)), radially beyond the lobe's farthest point (expected escaping).
    Points on the curve itself are out of contract: they are neutral and
    undecidable by finite escape time, which is why shrink must stay below 1.

    Note the expected-escaping probes sit just outside the period-1 body,
    where period-doubled components attach; at moderate degrees those
    components extend past c_max/shrink, so such probes can legitimately
    come back bounded. The mismatch is reported in the rows, not raised.
    """
    d = int(n)
    if d != n or d < 2:
        raise ValueError(f"degree must be an integer >= 2, got {n!r}")
    if not 0.0 < shrink < 1.0:
        raise ValueError(f"shrink must lie strictly between 0 and 1, got {shrink!r}")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")

    c_min, c_max = c_extrema(d)
    half_sector = math.pi / (d - 1)
    probes = []
    for theta in indent_points(d).arguments:
        for radius, angle, expected in (
            (shrink * c_min, theta, "member"),
            (c_max / shrink, theta + half_sector, "escaped"),
        ):
            c = radius * cmath.exp(1j * angle)
            step = membership(MultibrotParams(d, c), budget)
            actual = "member" if step is None else "escaped"
            probes.append(BoundaryProbe(d, angle, radius, expected, actual, step))
    return BoundaryCheckReport(d, float(shrink), int(budget), tuple(probes))


def write_check_csv(report: BoundaryCheckReport, destination) -> None:
    """CSV rows ``n,theta,radius,expected,actual,pass`` for a membership check."""
    lines = ["n,theta,radius,expected,actual,pass"]
    for p in report.probes:
        lines.append(
            f"{p.degree},{p.theta:.17g},{p.radius:.17g},"
            f"{p.expected},{p.actual},{'true' if p.passed else 'false'}"
        )
    write_text(destination, "\n".join(lines) + "\n")
