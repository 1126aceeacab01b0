import io
import json

import pytest

from multibrot import verify_suite


@pytest.fixture(scope="module")
def report_23():
    # small grid/budget keeps this quick; results are deterministic
    return verify_suite([3, 2], budget=1500, grid_pixels=32, grid_iters=64)


def test_degrees_sorted_and_complete(report_23):
    assert [d.degree for d in report_23.degrees] == [2, 3]


def test_closed_form_checks_pass(report_23):
    for d in report_23.degrees:
        assert d.lobe_count == d.degree - 1
        assert d.lobe_count_pass
        assert d.extrema_closed_form_pass
        assert d.convergence_pass
        assert d.determinism_pass
        assert len(d.render_hash) == 64
        int(d.render_hash, 16)


def test_x_intercepts_only_for_degree_two(report_23):
    two, three = report_23.degrees
    assert two.x_intercepts_pass is True
    assert two.x_intercept_cusp == pytest.approx(0.25, abs=1e-12)
    assert two.x_intercept_far == pytest.approx(-0.75, abs=1e-12)
    assert three.x_intercepts_pass is None


def test_indent_oracle_reflects_probe_outcomes(report_23):
    # outward probes at c_max/0.9 sit inside attached period-2 components at
    # these degrees, so the oracle check reports them as failures
    for d in report_23.degrees:
        assert d.indent_probes == 2 * (d.degree - 1)
        assert d.indent_oracle_pass == (d.indent_probes_failed == 0)


def test_overall_is_conjunction(report_23):
    per_degree = []
    for d in report_23.degrees:
        expected = all(
            flag
            for flag in (
                d.lobe_count_pass,
                d.x_intercepts_pass if d.x_intercepts_pass is not None else True,
                d.extrema_closed_form_pass,
                d.indent_oracle_pass,
                d.convergence_pass,
                d.determinism_pass,
            )
        )
        assert d.passed == expected
        per_degree.append(d.passed)
    assert report_23.overall_pass == all(per_degree)


def test_json_document_shape(report_23, tmp_path):
    path = tmp_path / "report.json"
    report_23.write_json(path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"overall_pass", "shrink", "budget", "degrees"}
    assert isinstance(doc["overall_pass"], bool)
    assert doc["budget"] == 1500
    assert len(doc["degrees"]) == 2
    for entry in doc["degrees"]:
        assert entry["degree"] in (2, 3)
        # flat keys only: no nested containers inside a degree object
        assert all(not isinstance(v, (dict, list)) for v in entry.values())

    sink = io.StringIO()
    report_23.write_json(sink)
    assert json.loads(sink.getvalue()) == doc


def test_verify_suite_validation():
    with pytest.raises(ValueError):
        verify_suite([])
    with pytest.raises(ValueError):
        verify_suite([2, 1])
