"""End-to-end scenario reports: values, schema, determinism."""

import numpy as np
import pytest

from finegames import (
    ParamError,
    UnknownScenarioError,
    load_schema,
    render_json,
    run_scenario,
    SCENARIO_IDS,
)

jsonschema = pytest.importorskip("jsonschema")

ROOT2 = 2.0 ** 0.5


@pytest.mark.parametrize("scenario_id", SCENARIO_IDS)
def test_reports_validate_against_schema(scenario_id):
    report = run_scenario(scenario_id).to_dict()
    jsonschema.validate(report, load_schema("report"))


@pytest.mark.parametrize("scenario_id", SCENARIO_IDS)
def test_reports_are_byte_deterministic(scenario_id):
    first = render_json(run_scenario(scenario_id).to_dict())
    second = render_json(run_scenario(scenario_id).to_dict())
    assert first == second


@pytest.mark.parametrize("scenario_id", SCENARIO_IDS)
def test_default_runs_match_their_references(scenario_id):
    report = run_scenario(scenario_id).to_dict()
    assert report["reference"], "default inputs must pin reference rows"
    for row in report["reference"]:
        assert row["abs_delta"] <= 1e-9, row["quantity"]


def test_unknown_scenario_and_params():
    with pytest.raises(UnknownScenarioError):
        run_scenario("does-not-exist")
    with pytest.raises(ParamError):
        run_scenario("pd-classical", {"bogus": 1})


def test_pd_classical_report():
    report = run_scenario("pd-classical")
    assert report.payoffs == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)
    assert len(report.ne_findings) == 1
    cert = report.ne_findings[0]
    assert cert.triple.as_tuple() == (0.0, 0.0, 0.0)
    assert report.details["all_cooperate_best_deviation_gain"] == pytest.approx(2.0)
    assert report.paper_deviation is None


def test_pd_ghz_report():
    report = run_scenario("pd-ghz")
    assert report.payoffs == pytest.approx([3.0] * 3, abs=1e-9)
    assert not report.bell.satisfied
    assert report.bell.slack == pytest.approx((2.5, -0.5, -0.5, -0.5), abs=1e-12)
    conj = report.details["conjunction_reading"]
    assert conj["bell"]["satisfied"] is True
    assert conj["xi_interval"]["lower"] == pytest.approx(0.5, abs=1e-9)
    assert conj["joint"]["prob"][0] == pytest.approx(0.5, abs=1e-9)
    assert report.details["parity_as_literal_joint"] is None
    assert report.details["parity_violated_terms"] == [3, 5, 6]
    assert report.paper_deviation is None


def test_pd_ghz_with_perturbed_levels_drops_reference_rows():
    report = run_scenario("pd-ghz", {"pd_params": [8, 10, 3, 0, 1, 5]})
    assert report.reference == []
    assert report.paper_deviation is None
    assert report.payoffs != pytest.approx([3.0] * 3, abs=1e-6)


def test_ghz_bell_window_scan():
    report = run_scenario("ghz-bell")
    scan = report.details["weight_scan"]
    assert scan["satisfied_count"] == 1
    assert scan["satisfied_points"] == [1.0]
    assert isinstance(report.payoffs, str)


def test_pd_product_report():
    report = run_scenario("pd-product")
    t = (2.0 - ROOT2) / 2.0
    assert report.details["stationary_point"] == pytest.approx([t] * 3, abs=1e-12)
    m = report.marginals["parity"]
    assert m.p_ab == pytest.approx(2.0 - ROOT2, abs=1e-12)
    assert m.xi == pytest.approx((2.0 - ROOT2) * (3.0 - ROOT2) / 2.0, abs=1e-12)
    assert report.payoffs == pytest.approx([8.0 - 4.0 * ROOT2] * 3, abs=1e-12)
    assert report.details["inversion"]["feasible"] is True
    assert report.paper_deviation is not None
    assert "negative weight" in report.paper_deviation
    cert = report.ne_findings[0]
    assert cert.is_ne


def test_pd_product_with_other_levels_has_no_deviation_claim():
    report = run_scenario("pd-product", {"pd_params": [8, 10, 3, 0, 1, 5]})
    assert report.reference == []
    assert report.paper_deviation is None


def test_pd_w_report():
    report = run_scenario("pd-w")
    assert report.payoffs == pytest.approx([5.0] * 3, abs=1e-9)
    matrix = np.array(report.details["reduced_coefficients"])
    assert np.diag(matrix) == pytest.approx([-2.0] * 3, abs=1e-12)
    assert matrix[0, 1] == pytest.approx(4.0, abs=1e-12)
    assert report.details["reduced_constants"] == pytest.approx([1.0] * 3, abs=1e-12)
    assert report.details["singles_sum"] == pytest.approx(2.0, abs=1e-12)
    assert report.bell.satisfied
    note = report.ne_findings[0]
    assert "inconsistent" in note


def test_pd_continuum_report():
    report = run_scenario("pd-continuum")
    assert report.payoffs == pytest.approx([11.0 / 3.0] * 3, abs=1e-9)
    matrix = np.array(report.details["reduced_coefficients"])
    assert np.diag(matrix) == pytest.approx([0.0] * 3, abs=1e-12)
    assert report.details["singles_sum"] == pytest.approx(1.0, abs=1e-12)
    cert = report.ne_findings[0]
    assert cert.is_ne
    assert "continuum" in cert.note


def test_coop_classical_report():
    report = run_scenario("coop-classical")
    values = {tuple(v["members"]): v["value"] for v in report.details["coalition_values"]}
    assert values[("A",)] == pytest.approx(-1.0, abs=1e-15)
    assert values[("B", "C")] == pytest.approx(1.0, abs=1e-15)
    red = report.details["pair_reduction_bc"]
    assert red["reduced"] == [[0.0, 2.0], [2.0, 0.0]]
    assert red["value"] == pytest.approx(1.0, abs=1e-15)
    assert report.details["best_response"] == [0.5, 0.5]
    assert report.payoffs == pytest.approx([0.0] * 3, abs=1e-12)
    lattice = report.details["lattice_equilibria"]
    assert [c["triple"] for c in lattice] == [
        [0.0, 0.0, 0.0],
        [0.5, 0.5, 0.5],
        [1.0, 1.0, 1.0],
    ]


def test_coop_quantum_report():
    report = run_scenario("coop-quantum")
    assert report.payoffs == pytest.approx([0.0] * 3, abs=1e-12)
    m = report.marginals["parity"]
    assert (m.lam, m.mu, m.nu) == pytest.approx((0.5, 0.5, 0.5), abs=1e-12)
    assert report.details["singles_spread"] == pytest.approx(0.0, abs=1e-12)


def test_coop_quantum_pattern_generalizes():
    report = run_scenario("coop-quantum", {"q1": 0.25, "u": 0.1, "v": 0.05, "seed": 7})
    assert report.payoffs == pytest.approx([0.0] * 3, abs=1e-12)
    assert report.reference == []


def test_coop_quantum_amplitude_mode_checks_pattern():
    third = 3.0 ** -0.5
    good = [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0], [third, 0.0],
            [0.0, 0.0], [0.0, third], [third, 0.0], [0.0, 0.0]]
    report = run_scenario("coop-quantum", {"amplitudes": good})
    assert report.payoffs == pytest.approx([0.0] * 3, abs=1e-12)
    bad = [[0.0, 0.0], [1.0, 0.0]] + [[0.0, 0.0]] * 6
    with pytest.raises(ParamError):
        run_scenario("coop-quantum", {"amplitudes": bad})


def test_scenario_seed_changes_phases_but_not_payoffs():
    a = run_scenario("coop-quantum", {"seed": 1})
    b = run_scenario("coop-quantum", {"seed": 2})
    assert a.payoffs == pytest.approx(b.payoffs, abs=1e-12)
