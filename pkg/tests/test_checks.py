"""Verification-runner tests: convention pinning by elimination, known-red
and known-green named checks with exact witnesses, scope defaults, report
determinism, and the error paths for malformed requests."""

import json

import pytest

from coribbon.checks import (
    CheckSpec,
    check_names,
    pin_conventions,
    report_json,
    run_suite,
    suite_names,
    suite_specs,
)


def by_name(report):
    return {result.name: result for result in report.results}


class TestConventionPinning:
    def test_exactly_one_sign_combination_survives(self):
        assert pin_conventions(3) == {
            "crossing_positive": True,
            "insertion_on_closure": True,
        }

    def test_pinned_flags_are_the_defaults_in_reports(self):
        report = run_suite([CheckSpec("coribbon.twist_central", 3)])
        assert report.conventions == pin_conventions(3)


class TestRegistry:
    def test_suite_inventory(self):
        assert suite_names() == [
            "comodule",
            "coquasi",
            "coribbon",
            "forms",
            "modular",
            "pivotal",
            "recoupling",
            "wba",
            "wha",
        ]

    def test_every_name_is_suite_qualified(self):
        for name in check_names():
            suite, _, rest = name.partition(".")
            assert suite in suite_names() and rest, name

    def test_unknown_check_is_an_input_error(self):
        with pytest.raises(ValueError, match="unknown check"):
            run_suite([CheckSpec("wba.nonexistent", 3)])

    def test_unknown_suite_is_an_input_error(self):
        with pytest.raises(ValueError, match="unknown suite"):
            suite_specs(3, suites=["nonexistent"])

    def test_unknown_scope_is_an_input_error(self):
        with pytest.raises(ValueError, match="unknown scope"):
            run_suite([CheckSpec("wba.unit_identity", 3, scope="all")])

    def test_mixed_levels_are_rejected(self):
        with pytest.raises(ValueError, match="share a level"):
            run_suite(
                [
                    CheckSpec("wba.unit_identity", 3),
                    CheckSpec("wba.counit_laws", 4),
                ]
            )

    def test_empty_request_is_rejected(self):
        with pytest.raises(ValueError, match="no checks"):
            run_suite([])


class TestScopeDefaults:
    def test_ternary_checks_sample_beyond_level_four(self):
        four = {spec.name: spec.scope for spec in suite_specs(4)}
        five = {spec.name: spec.scope for spec in suite_specs(5)}
        six = {spec.name: spec.scope for spec in suite_specs(6)}
        assert four["wba.associativity"] == "exhaustive"
        assert five["wba.associativity"] == "sampled"
        assert five["coquasi.pairing_counit_left"] == "exhaustive"
        assert six["coquasi.pairing_counit_left"] == "sampled"
        assert six["coribbon.twist_central"] == "exhaustive"

    def test_structural_checks_always_run_exhaustively(self):
        report = run_suite(
            [CheckSpec("modular.smatrix_invertible", 3, scope="sampled")]
        )
        assert by_name(report)["modular.smatrix_invertible"].scope == "exhaustive"

    def test_sampled_scope_draws_the_requested_count(self):
        report = run_suite(
            [
                CheckSpec(
                    "wba.associativity", 3, scope="sampled", sample=37, seed=5
                )
            ]
        )
        result = by_name(report)["wba.associativity"]
        assert result.checked == 37
        assert result.scope == "sampled(count=37,seed=5)"
        assert result.status == "pass"


class TestKnownVerdicts:
    def test_level_two_runs_everything_green(self):
        report = run_suite(suite_specs(2))
        assert report.passed
        assert report.dimension == 1
        assert len(report.results) == len(check_names())

    def test_level_three_runs_everything_green(self):
        report = run_suite(suite_specs(3))
        assert report.passed
        assert report.dimension == 8

    def test_transposed_pivotal_sandwich_fails_at_level_four(self):
        report = run_suite(
            [
                CheckSpec("pivotal.sandwich_form_first", 4),
                CheckSpec("pivotal.sandwich_bar_first", 4),
            ]
        )
        results = by_name(report)
        assert results["pivotal.sandwich_form_first"].status == "pass"
        flipped = results["pivotal.sandwich_bar_first"]
        assert flipped.status == "fail"
        assert flipped.witness == {
            "tuple": [[1, 0, 1, 0, 1]],
            "left": [[[1, 0, 1, 0, 1], "1/2"]],
            "right": [[[1, 0, 1, 0, 1], "2"]],
        }

    def test_failure_witness_is_minimal_for_its_orbit(self):
        # every strictly earlier basis vector satisfies the transposed
        # identity, so the shrinker cannot do better than index nine
        report = run_suite([CheckSpec("pivotal.sandwich_bar_first", 4)])
        assert by_name(report)["pivotal.sandwich_bar_first"].checked == 10


class TestReports:
    def test_reports_are_byte_identical_across_runs(self):
        specs = suite_specs(3)
        assert report_json(run_suite(specs)) == report_json(run_suite(specs))

    def test_sampled_reports_depend_only_on_level_and_seed(self):
        spec = CheckSpec("wba.associativity", 5, scope="sampled", sample=50, seed=9)
        assert report_json(run_suite([spec])) == report_json(run_suite([spec]))

    def test_serialized_schema(self):
        payload = json.loads(
            report_json(run_suite([CheckSpec("wba.unit_identity", 3)]))
        )
        assert payload["r"] == 3
        assert payload["dim"] == 8
        assert payload["conventions"] == {
            "crossing_positive": True,
            "insertion_on_closure": True,
        }
        (row,) = payload["checks"]
        assert row == {
            "check": "wba.unit_identity",
            "scope": "exhaustive",
            "status": "pass",
            "checked": 8,
        }

    def test_failing_rows_carry_the_witness(self):
        payload = json.loads(
            report_json(run_suite([CheckSpec("pivotal.sandwich_bar_first", 4)]))
        )
        (row,) = payload["checks"]
        assert row["status"] == "fail"
        assert row["witness"]["tuple"] == [[1, 0, 1, 0, 1]]

    def test_results_are_sorted_by_name(self):
        report = run_suite(suite_specs(2, suites=["wba", "coribbon"]))
        names = [result.name for result in report.results]
        assert names == sorted(names)
