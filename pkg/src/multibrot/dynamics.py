"""Iteration machinery for the polynomial family f(z) = z^n + c.

Single steps, full orbits with escape classification, and the fixed points
of each map together with their attractor / repellor / neutral character.
All values are plain doubles; every operation here is a pure function of
its inputs, so concurrent use needs no coordination.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from ._io import write_text

__all__ = [
    "NEUTRAL_BAND",
    "DEFAULT_STORE_CAP",
    "RootFindingError",
    "MultibrotParams",
    "OrbitOutcome",
    "Orbit",
    "PointClass",
    "FixedPointReport",
    "iterate_step",
    "default_escape_radius",
    "compute_orbit",
    "fixed_points",
    "classify_fixed_point",
    "export_orbit_csv",
]

#: Half-width of the |f'(w)| = 1 band classified as neutral.
NEUTRAL_BAND = 1e-9

#: Iterates stored per orbit before recording switches to outcome-only.
DEFAULT_STORE_CAP = 10_000

_ROOT_ROUNDS = 500
_ROOT_STEP_TOL = 1e-14


class RootFindingError(RuntimeError):
    """Simultaneous root iteration failed to certify its residual target."""


def _is_finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _pow_int(z: complex, n: int) -> complex:
    # LSB-first binary exponentiation, n >= 1. render._pow_grid mirrors the
    # same multiply order so scalar and vectorized escape steps agree.
    r = None
    b = z
    while True:
        if n & 1:
            r = b if r is None else r * b
        n >>= 1
        if not n:
            return r
        b = b * b


@dataclass(frozen=True)
class MultibrotParams:
    """Degree n >= 2 and additive parameter c of f(z) = z^n + c."""

    degree: int
    c: complex

    def __post_init__(self):
        d = int(self.degree)
        if d != self.degree or d < 2:
            raise ValueError(f"degree must be an integer >= 2, got {self.degree!r}")
        c = complex(self.c)
        if not _is_finite(c):
            raise ValueError("parameter c must have finite components")
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "c", c)


class OrbitOutcome(Enum):
    ESCAPED = "escaped"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class Orbit:
    """Iterate sequence z_0, z_1, ... with its escape classification.

    ``iterates`` holds the stored prefix of the sequence: everything up to
    and including the terminating iterate, unless the store cap truncated
    recording. For an escaped orbit ``escape_step`` is the index k of the
    first iterate past the escape radius and ``escape_modulus`` is |z_k|.
    """

    start: complex
    iterates: tuple[complex, ...]
    outcome: OrbitOutcome
    escape_radius_used: float
    escape_step: int | None = None
    escape_modulus: float | None = None

    @property
    def escaped(self) -> bool:
        return self.outcome is OrbitOutcome.ESCAPED


class PointClass(Enum):
    ATTRACTOR = "attractor"
    REPELLOR = "repellor"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class FixedPointReport:
    """A fixed point w of f, classified by the modulus of f'(w) = n w^(n-1)."""

    point: complex
    derivative_modulus: float
    classification: PointClass
    residual: float


def iterate_step(z: complex, params: MultibrotParams) -> complex:
    """One application of f(z) = z^n + c.

    z^n is evaluated by binary exponentiation, which bounds rounding error
    relative to naive repeated multiplication and keeps the multiply order
    reproducible.
    """
    return _pow_int(z, params.degree) + params.c


def default_escape_radius(params: MultibrotParams) -> float:
    """Smallest radius accepted as an escape threshold: max(|c|, 2).

    Once |z| > max(|c|, 2), the triangle inequality gives
    |z^n + c| >= |z|^n - |c| >= (|z| - 1)|z| > |z|, so every later iterate
    grows and the orbit diverges; the bound holds for every degree >= 2.
    """
    return max(abs(params.c), 2.0)


def compute_orbit(
    params: MultibrotParams,
    z0: complex,
    max_iter: int,
    escape_radius: float | None = None,
    *,
    store_cap: int = DEFAULT_STORE_CAP,
) -> Orbit:
    """Iterate f from z0 until escape or until the budget is exhausted.

    Escape means |z_k| > escape_radius; the radius must be at least
    max(|c|, 2) or bounded orbits could be misclassified, and smaller
    values are rejected. A non-finite iterate is classified as escaped at
    that step (the orbit provably left the escape radius just before
    overflowing) with the radius recorded as its modulus; the non-finite
    value itself is not stored.
    """
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if store_cap < 1:
        raise ValueError(f"store_cap must be >= 1, got {store_cap}")
    z0 = complex(z0)
    if not _is_finite(z0):
        raise ValueError("z0 must have finite components")
    floor = default_escape_radius(params)
    radius = floor if escape_radius is None else float(escape_radius)
    if radius < floor:
        raise ValueError(
            f"escape_radius {radius!r} is below max(|c|, 2) = {floor!r}; "
            "a smaller radius can misclassify bounded orbits"
        )

    r2 = radius * radius
    m2 = z0.real * z0.real + z0.imag * z0.imag
    if m2 > r2:
        return Orbit(z0, (z0,), OrbitOutcome.ESCAPED, radius, 0, abs(z0))

    iterates = [z0]
    z = z0
    for k in range(1, max_iter + 1):
        z = iterate_step(z, params)
        if not _is_finite(z):
            return Orbit(z0, tuple(iterates), OrbitOutcome.ESCAPED, radius, k, radius)
        if len(iterates) < store_cap:
            iterates.append(z)
        m2 = z.real * z.real + z.imag * z.imag
        if m2 > r2:
            return Orbit(z0, tuple(iterates), OrbitOutcome.ESCAPED, radius, k, abs(z))
    return Orbit(z0, tuple(iterates), OrbitOutcome.BUDGET_EXHAUSTED, radius)


def _residual(z: complex, n: int, c: complex) -> complex:
    return _pow_int(z, n) - z + c


def fixed_points(
    params: MultibrotParams,
    *,
    residual_tol: float | None = None,
    max_rounds: int = _ROOT_ROUNDS,
) -> list[complex]:
    """All n roots of z^n - z + c = 0, with multiplicity.

    Uses simultaneous (Weierstrass) iteration from starting points on a
    circle of radius max(1, |c|)^(1/n) at distinct angles, deliberately
    asymmetric about the real axis so conjugate-symmetric root sets cannot
    stall the updates. Every returned root satisfies
    |z^n - z + c| <= residual_tol (default 1e-10 * max(1, |c|)); if that
    cannot be certified within ``max_rounds`` rounds, RootFindingError is
    raised rather than returning doubtful values. Roots are sorted by
    (re, im).
    """
    n, c = params.degree, params.c
    tol = 1e-10 * max(1.0, abs(c)) if residual_tol is None else float(residual_tol)
    if max_rounds < 0:
        raise ValueError("max_rounds must be >= 0")

    radius = max(1.0, abs(c)) ** (1.0 / n)
    roots = [radius * cmath.exp(1j * (2.0 * math.pi * k / n + 0.35)) for k in range(n)]

    step_tol = _ROOT_STEP_TOL * max(1.0, radius)
    for _ in range(max_rounds):
        moved = 0.0
        updated = []
        for i, zi in enumerate(roots):
            denom = complex(1.0)
            for j, zj in enumerate(roots):
                if i != j:
                    denom *= zi - zj
            if denom == 0:
                raise RootFindingError("coincident root estimates")
            step = _residual(zi, n, c) / denom
            zi = zi - step
            if not _is_finite(zi):
                raise RootFindingError("root estimate diverged to non-finite values")
            updated.append(zi)
            moved = max(moved, abs(step))
        roots = updated
        if moved < step_tol:
            break

    worst = max(abs(_residual(z, n, c)) for z in roots)
    if worst > tol:
        raise RootFindingError(
            f"residual {worst:.3e} above target {tol:.3e} after {max_rounds} rounds"
        )
    return sorted(roots, key=lambda z: (z.real, z.imag))


def classify_fixed_point(
    w: complex,
    params: MultibrotParams,
    *,
    residual_tol: float | None = None,
) -> FixedPointReport:
    """Attractor / repellor / neutral report for a fixed point w.

    |f'(w)| = |n w^(n-1)| decides the class; values within NEUTRAL_BAND of 1
    are reported neutral, since exact-arithmetic neutrality is untestable in
    floating point. w must satisfy w^n - w + c = 0 to within residual_tol
    (default 1e-10 * max(1, |c|)) or ValueError is raised.
    """
    n, c = params.degree, params.c
    w = complex(w)
    tol = 1e-10 * max(1.0, abs(c)) if residual_tol is None else float(residual_tol)
    residual = abs(_residual(w, n, c))
    if residual > tol:
        raise ValueError(
            f"not a fixed point: residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
    derivative_modulus = n * abs(_pow_int(w, n - 1))
    if derivative_modulus < 1.0 - NEUTRAL_BAND:
        cls = PointClass.ATTRACTOR
    elif derivative_modulus > 1.0 + NEUTRAL_BAND:
        cls = PointClass.REPELLOR
    else:
        cls = PointClass.NEUTRAL
    return FixedPointReport(w, derivative_modulus, cls, residual)


def export_orbit_csv(orbit: Orbit, destination) -> None:
    """Write stored iterates as CSV: header ``k,re,im``, one row per iterate,
    17 significant digits, LF newlines."""
    lines = ["k,re,im"]
    for k, z in enumerate(orbit.iterates):
        lines.append(f"{k},{z.real:.17g},{z.imag:.17g}")
    write_text(destination, "\n".join(lines) + "\n")
