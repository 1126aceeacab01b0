import cmath
import hashlib
import io
import math

import numpy as np
import pytest

from multibrot import (
    NOT_ESCAPED,
    DwellBuffer,
    GridSpec,
    MultibrotParams,
    OrbitOutcome,
    boundary_membership_check,
    c_extrema,
    compute_orbit,
    membership,
    pixel_parameter,
    render,
    write_check_csv,
    write_ppm,
)


def brute_escape_step(n, c, budget):
    """Plain-loop membership oracle, written independently of the library."""
    z = 0j
    radius = max(abs(c), 2.0)
    for k in range(1, budget + 1):
        z = z**n + c
        if abs(z) > radius:
            return k
    return None


# --- GridSpec ----------------------------------------------------------------

def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec(0, 4, 0j, 0.1, 10)
    with pytest.raises(ValueError):
        GridSpec(4, 4, 0j, -0.1, 10)
    with pytest.raises(ValueError):
        GridSpec(4, 4, 0j, 0.1, 0)
    with pytest.raises(ValueError, match="cell cap"):
        GridSpec(100, 100, 0j, 0.1, 10, max_cells=9999)


def test_pixel_mapping():
    spec = GridSpec(1, 1, 0.5 - 0.25j, 0.01, 10)
    assert pixel_parameter(spec, 0, 0) == 0.5 - 0.25j

    spec = GridSpec(5, 3, 0j, 0.5, 10)
    assert pixel_parameter(spec, 0, 0) == complex(-1.0, 0.5)  # top-left
    assert pixel_parameter(spec, 4, 2) == complex(1.0, -0.5)  # bottom-right
    assert pixel_parameter(spec, 2, 1) == 0j
    # row 0 carries the largest imaginary part
    tops = [pixel_parameter(spec, 2, row).imag for row in range(3)]
    assert tops == sorted(tops, reverse=True)


# --- membership ---------------------------------------------------------------

def test_membership_examples():
    assert membership(MultibrotParams(2, 0), 1000) is None
    assert membership(MultibrotParams(2, -1), 1000) is None
    step = membership(MultibrotParams(2, 0.26), 5000)
    assert step is not None
    assert step == brute_escape_step(2, 0.26 + 0j, 5000)


def test_membership_against_brute_oracle():
    rng = np.random.default_rng(3)
    for _ in range(40):
        n = int(rng.integers(2, 6))
        c = complex(rng.uniform(-1.4, 1.4), rng.uniform(-1.4, 1.4))
        assert membership(MultibrotParams(n, c), 300) == brute_escape_step(n, c, 300)


def test_membership_monotone_budget():
    rng = np.random.default_rng(5)
    for _ in range(25):
        c = complex(rng.uniform(-2, 0.8), rng.uniform(-1.4, 1.4))
        p = MultibrotParams(2, c)
        step = membership(p, 400)
        if step is not None:
            for budget in (step, step + 7, 1600):
                assert membership(p, budget) == step


@pytest.mark.parametrize("n", range(3, 7))
def test_membership_rotational_symmetry(n):
    # z -> z*cis(-2 pi k/(n-1)) conjugates the dynamics, so rotating c by a
    # root of unity preserves membership and escape step
    turn = cmath.exp(2j * math.pi / (n - 1))
    c_min = c_extrema(n)[0]
    outside = 1.6 * 2.0 ** (1.0 / (n - 1))
    rng = np.random.default_rng(n)
    samples = [0.5 * c_min * cmath.exp(2j * math.pi * rng.random()) for _ in range(5)]
    samples += [outside * cmath.exp(2j * math.pi * rng.random()) for _ in range(5)]
    for c in samples:
        a = membership(MultibrotParams(n, c), 600)
        b = membership(MultibrotParams(n, c * turn), 600)
        assert a == b


def test_membership_escapes_beyond_whole_set_bound():
    # outside |c| = 2^(1/(n-1)) no parameter is a member, in any direction
    for n in range(2, 7):
        bound = 2.0 ** (1.0 / (n - 1))
        for k in range(2 * (n - 1)):
            c = 1.05 * bound * cmath.exp(1j * math.pi * k / (n - 1))
            assert membership(MultibrotParams(n, c), 2000) is not None


# --- render -------------------------------------------------------------------

def test_render_single_interior_cell():
    buf = render(2, GridSpec(1, 1, 0j, 0.001, 50))
    assert buf.dwell.shape == (1, 1)
    assert buf.dwell[0, 0] == NOT_ESCAPED


def test_render_matches_membership_per_pixel():
    spec = GridSpec(101, 101, -0.75 + 0j, 2.5 / 101, 500)
    buf = render(2, spec, 2)
    # sampled pixels, including the known-bounded cardioid tip region
    for col, row in [(50, 50), (0, 0), (100, 100), (13, 77), (92, 38), (96, 34)]:
        c = pixel_parameter(spec, col, row)
        expected = membership(MultibrotParams(2, c), 500)
        got = buf.dwell[row, col]
        assert got == (NOT_ESCAPED if expected is None else expected)
        # agree with the orbit computation as well
        orbit = compute_orbit(MultibrotParams(2, c), 0j, 500)
        if got == NOT_ESCAPED:
            assert orbit.outcome is OrbitOutcome.BUDGET_EXHAUSTED
        else:
            assert orbit.outcome is OrbitOutcome.ESCAPED and orbit.escape_step == got


def test_render_known_parameters():
    spec = GridSpec(101, 101, -0.75 + 0j, 2.5 / 101, 500)
    buf = render(2, spec, 1)
    assert pixel_parameter(spec, 50, 50) == -0.75 + 0j
    assert buf.dwell[50, 50] == NOT_ESCAPED  # parabolic tip stays bounded
    # c = 0.4 + 0.4i lies in the viewport and escapes
    col = round((0.4 - spec.center.real) / spec.scale + (spec.width - 1) / 2)
    row = round((spec.center.imag - 0.4) / spec.scale + (spec.height - 1) / 2)
    assert buf.dwell[row, col] >= 1


def test_render_dwell_value_range():
    spec = GridSpec(40, 40, -0.5 + 0j, 0.06, 64)
    buf = render(2, spec, 3)
    d = buf.dwell
    assert d.dtype == np.int32
    escaped = d != NOT_ESCAPED
    assert ((d[escaped] >= 1) & (d[escaped] <= 64)).all()
    with pytest.raises(ValueError):
        d[0, 0] = 5  # buffers are immutable values


def test_render_determinism_across_worker_counts():
    # height spans several fixed bands, so assembly order actually matters
    spec = GridSpec(96, 130, -0.4 + 0.1j, 0.02, 200)
    blobs = []
    for workers in (1, 3, 8):
        sink = io.BytesIO()
        write_ppm(render(2, spec, workers), "grayscale", sink)
        blobs.append(sink.getvalue())
    assert blobs[0] == blobs[1] == blobs[2]


def test_render_mirror_symmetry():
    for height in (30, 31):
        spec = GridSpec(45, height, -0.6 + 0j, 0.05, 80)
        buf = render(2, spec, 2)
        assert (buf.dwell == buf.dwell[::-1, :]).all()


def test_render_validation():
    spec = GridSpec(4, 4, 0j, 0.1, 10)
    with pytest.raises(ValueError):
        render(1, spec)
    with pytest.raises(ValueError):
        render(2, spec, 0)


# --- write_ppm ----------------------------------------------------------------

def _buffer_from(dwell_rows, max_iter, degree=2):
    arr = np.array(dwell_rows, dtype=np.int32)
    spec = GridSpec(arr.shape[1], arr.shape[0], 0j, 0.1, max_iter)
    arr.setflags(write=False)
    return DwellBuffer(spec=spec, degree=degree, dwell=arr)


def test_ppm_single_black_pixel():
    sink = io.BytesIO()
    write_ppm(_buffer_from([[NOT_ESCAPED]], 10), "grayscale", sink)
    assert sink.getvalue() == b"P6\n1 1\n255\n\x00\x00\x00"


def test_ppm_grayscale_formula():
    max_iter = 500
    buf = _buffer_from([[1, 250, 500, NOT_ESCAPED]], max_iter)
    sink = io.BytesIO()
    write_ppm(buf, "grayscale", sink)
    body = sink.getvalue().split(b"255\n", 1)[1]
    expected = []
    for k in (1, 250, 500):
        g = int(np.rint(255 * (1 - k / max_iter)))
        expected += [g, g, g]
    expected += [0, 0, 0]
    assert list(body) == expected


def test_ppm_log_grayscale_formula():
    max_iter = 500
    buf = _buffer_from([[1, 22, 500, NOT_ESCAPED]], max_iter)
    sink = io.BytesIO()
    write_ppm(buf, "log-grayscale", sink)
    body = sink.getvalue().split(b"255\n", 1)[1]
    levels = list(body)[::3]
    assert levels[0] == 255  # ln 1 = 0
    assert levels[1] == int(np.rint(255 * (1 - math.log(22) / math.log(max_iter))))
    assert levels[2] == 0  # k = max_iter
    assert levels[3] == 0  # interior


def test_ppm_header_and_stability(tmp_path):
    spec = GridSpec(33, 21, -0.3 + 0j, 0.05, 60)
    buf = render(2, spec, 2)
    paths = [tmp_path / "a.ppm", tmp_path / "b.ppm"]
    for p in paths:
        write_ppm(buf, "grayscale", p)
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1]
    assert blobs[0].startswith(b"P6\n33 21\n255\n")
    assert len(blobs[0]) == len(b"P6\n33 21\n255\n") + 33 * 21 * 3
    assert hashlib.sha256(blobs[0]).hexdigest() == hashlib.sha256(blobs[1]).hexdigest()


def test_ppm_rejects_unknown_colormap():
    with pytest.raises(ValueError, match="colormap"):
        write_ppm(_buffer_from([[1]], 10), "heatmap", io.BytesIO())


def test_ppm_io_error_names_path(tmp_path):
    with pytest.raises(OSError, match="img.ppm"):
        write_ppm(_buffer_from([[1]], 10), "grayscale", tmp_path / "missing" / "img.ppm")


# --- boundary_membership_check --------------------------------------------------

def test_check_probe_layout():
    report = boundary_membership_check(4, 0.9, 500)
    assert report.degree == 4 and report.shrink == 0.9 and report.budget == 500
    assert len(report.probes) == 6  # two probes per cusp
    inner = [p for p in report.probes if p.expected == "member"]
    outer = [p for p in report.probes if p.expected == "escaped"]
    assert len(inner) == len(outer) == 3
    c_min, c_max = c_extrema(4)
    assert all(abs(p.radius - 0.9 * c_min) <= 1e-12 for p in inner)
    assert all(abs(p.radius - c_max / 0.9) <= 1e-12 for p in outer)
    outer_angles = sorted(p.theta for p in outer)
    assert outer_angles == pytest.approx([math.pi / 3, math.pi, 5 * math.pi / 3])


@pytest.mark.parametrize("n", range(2, 7))
def test_check_interior_probes_are_members(n):
    report = boundary_membership_check(n, 0.9, 2000)
    for p in report.probes:
        if p.expected == "member":
            assert p.passed, f"interior probe at theta={p.theta} escaped"
            assert p.escape_step is None


def test_check_consistency_of_pass_flags():
    report = boundary_membership_check(3, 0.9, 2000)
    for p in report.probes:
        assert p.passed == (p.expected == p.actual)
        if p.actual == "escaped":
            assert p.escape_step is not None
        else:
            assert p.escape_step is None
    assert report.all_passed == all(p.passed for p in report.probes)


def test_check_far_outside_probes_escape():
    # with shrink small enough, the outward probes clear the attached
    # period-doubled components and genuinely escape
    report = boundary_membership_check(2, 0.35, 2000)
    for p in report.probes:
        assert p.passed


def test_check_validation():
    with pytest.raises(ValueError):
        boundary_membership_check(2, 1.0, 100)
    with pytest.raises(ValueError):
        boundary_membership_check(2, 0.0, 100)
    with pytest.raises(ValueError):
        boundary_membership_check(1, 0.9, 100)
    with pytest.raises(ValueError):
        boundary_membership_check(2, 0.9, 0)


def test_check_csv_format():
    report = boundary_membership_check(3, 0.9, 800)
    sink = io.StringIO()
    write_check_csv(report, sink)
    lines = sink.getvalue().splitlines()
    assert lines[0] == "n,theta,radius,expected,actual,pass"
    assert len(lines) == 1 + len(report.probes)
    for line, probe in zip(lines[1:], report.probes):
        n_s, theta_s, radius_s, expected, actual, ok = line.split(",")
        assert int(n_s) == 3
        assert float(theta_s) == probe.theta
        assert float(radius_s) == probe.radius
        assert expected in ("member", "escaped") and actual in ("member", "escaped")
        assert ok == ("true" if probe.passed else "false")
