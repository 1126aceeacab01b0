"""Escape-time dynamics and main-body geometry of the maps z^n + c.

The package has four layers:

* :mod:`multibrot.dynamics` -- iteration steps, orbits, escape radii, and
  fixed points with attractor/repellor/neutral classification;
* :mod:`multibrot.lobe` -- the closed-form boundary of the period-1 body for
  any degree, its radial profile and cusp structure, and the large-degree
  approach to the unit circle;
* :mod:`multibrot.render` -- pixel-grid membership, a deterministic banded
  parallel renderer, and binary PPM output;
* :mod:`multibrot.verify` / :mod:`multibrot.plots` / :mod:`multibrot.cli` --
  the aggregated check suite, figure output, and the command-line front end.
"""

from .dynamics import (
    DEFAULT_STORE_CAP,
    NEUTRAL_BAND,
    FixedPointReport,
    MultibrotParams,
    Orbit,
    OrbitOutcome,
    PointClass,
    RootFindingError,
    classify_fixed_point,
    compute_orbit,
    default_escape_radius,
    export_orbit_csv,
    fixed_points,
    iterate_step,
)
from .lobe import (
    ConvergenceReport,
    ConvergenceRow,
    ExtremaVerificationError,
    IndentSet,
    LobeBoundary,
    RadialProfile,
    boundary_point,
    c_extrema,
    convergence_report,
    export_boundary,
    indent_points,
    period,
    radial_profile,
    radius_squared,
    sample_boundary,
)
from .render import (
    NOT_ESCAPED,
    BoundaryCheckReport,
    BoundaryProbe,
    DwellBuffer,
    GridSpec,
    boundary_membership_check,
    membership,
    pixel_parameter,
    render,
    write_check_csv,
    write_ppm,
)
from .verify import DegreeChecks, VerifyReport, verify_suite

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_STORE_CAP",
    "NEUTRAL_BAND",
    "NOT_ESCAPED",
    "BoundaryCheckReport",
    "BoundaryProbe",
    "ConvergenceReport",
    "ConvergenceRow",
    "DegreeChecks",
    "DwellBuffer",
    "ExtremaVerificationError",
    "FixedPointReport",
    "GridSpec",
    "IndentSet",
    "LobeBoundary",
    "MultibrotParams",
    "Orbit",
    "OrbitOutcome",
    "PointClass",
    "RadialProfile",
    "RootFindingError",
    "VerifyReport",
    "boundary_membership_check",
    "boundary_point",
    "c_extrema",
    "classify_fixed_point",
    "compute_orbit",
    "convergence_report",
    "default_escape_radius",
    "export_boundary",
    "export_orbit_csv",
    "fixed_points",
    "indent_points",
    "iterate_step",
    "membership",
    "period",
    "pixel_parameter",
    "radial_profile",
    "radius_squared",
    "render",
    "sample_boundary",
    "verify_suite",
    "write_check_csv",
    "write_ppm",
]
