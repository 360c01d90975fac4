"""
Tests for the identity verifier: recurrences, product solutions, eigenvalue
assemblies and string phase equations.
"""

import cmath

import pytest

from dilute_spectra.exceptions import ConsistencyError, DomainError
from dilute_spectra.recurrences import IDENTITIES, get_identities
from dilute_spectra.verifier import (
    SUITES,
    CheckReport,
    IdentityCase,
    check_assembly,
    check_generic_solution,
    check_poch_identities,
    check_recurrence_solution,
    check_string_phase_equations,
    evaluate_solution,
    first_term,
    run_suite,
    solve_recurrence,
)

EXCITATIONS = range(1, 8)


class TestRecurrenceData:

    def test_all_seven_present(self):
        assert sorted(IDENTITIES) == list(EXCITATIONS)

    def test_unknown_excitation(self):
        with pytest.raises(KeyError):
            get_identities(8)

    def test_only_first_excitation_has_brackets(self):
        for j, identities in IDENTITIES.items():
            assert (identities.bracket_F is not None) == (j == 1)

    @pytest.mark.parametrize("j", EXCITATIONS)
    def test_assembly_power_is_band(self, j):
        from dilute_spectra.model import get_excitation

        assert get_identities(j).assembly.k == get_excitation(4, j).band


class TestSolveRecurrence:

    def test_single_factor(self):
        solution = solve_recurrence((12,), (28,), sign=1)
        assert solution.num == (12, 24, 64, 76)
        assert solution.den == (28, 40, 48, 60)

    def test_empty_ratio_is_trivial(self):
        solution = solve_recurrence((), ())
        assert solution.evaluate(0.3 + 0.1j, 0.2) == 1.0

    def test_tends_to_one_at_origin(self):
        solution = solve_recurrence((26, 30), (10, 14))
        assert abs(solution.evaluate(1e-12, 0.2) - 1.0) < 1e-10

    def test_listed_solutions_vanish_to_one(self):
        for identities in IDENTITIES.values():
            assert abs(evaluate_solution(identities.F, 1e-14, 0.1) - 1.0) < 1e-12


class TestChecks:

    @pytest.mark.parametrize("j", EXCITATIONS)
    def test_recurrence_solutions(self, j):
        report = check_recurrence_solution(j)
        assert report.cases
        assert report.passed, report.summary()

    def test_recurrence_with_explicit_samples(self):
        samples = [(cmath.exp(0.3j), 0.15), (cmath.exp(-2.1j), 0.05)]
        report = check_recurrence_solution(2, samples=samples)
        assert len(report.cases) == 4
        assert report.worst < 1e-10

    def test_bracket_power_does_not_matter(self):
        assert check_recurrence_solution(1, N=6).passed

    @pytest.mark.parametrize("j", EXCITATIONS)
    def test_generic_solutions(self, j):
        assert check_generic_solution(j).passed

    @pytest.mark.parametrize("j", EXCITATIONS)
    @pytest.mark.parametrize("x", [0.05, 0.1, 0.2])
    def test_assembly_is_constant_multiple(self, j, x):
        report = check_assembly(j, x=x)
        assert report.constant is not None and abs(report.constant) > 0
        assert report.passed, report.summary()

    def test_poch_identities(self):
        report = check_poch_identities()
        assert {case.name for case in report.cases} == {"single", "double", "shifted", "triple"}
        assert report.passed

    def test_seed_reproducible(self):
        first = check_recurrence_solution(3, seed=7)
        second = check_recurrence_solution(3, seed=7)
        assert [c.sample for c in first.cases] == [c.sample for c in second.cases]

    def test_sample_on_product_zero_is_redrawn(self, monkeypatch):
        from dilute_spectra import verifier

        original = verifier._side_functions
        bad = cmath.exp(0.3j)

        def with_pole(j, side_name, N, tr):
            solution, ratio = original(j, side_name, N, tr)

            def patched(u, x):
                if u in (bad, 1.0 / bad):
                    return complex("inf")
                return solution(u, x)

            return patched, ratio

        monkeypatch.setattr(verifier, "_side_functions", with_pole)
        samples = [(bad, 0.1), (cmath.exp(-2.1j), 0.1)]
        report = check_recurrence_solution(2, samples=samples, seed=5)
        assert len(report.cases) == 4
        assert all(case.sample != bad for case in report.cases)
        assert report.passed, report.summary()

    def test_no_usable_sample(self, monkeypatch):
        from dilute_spectra import verifier

        monkeypatch.setattr(verifier, "_side_functions",
                            lambda j, side_name, N, tr: (lambda u, x: complex("inf"), lambda u, x: 1.0))
        with pytest.raises(ConsistencyError):
            check_recurrence_solution(2, samples=[(1j, 0.1)])

    @pytest.mark.parametrize("x", [0.05, 0.1, 0.2])
    def test_alpha_is_a_spectator(self, x):
        alphas = [cmath.exp(1j * t) for t in (0.0, 0.9, 2.0, -2.6)]
        report = check_assembly(3, x=x, alphas=alphas)
        spectator = [case for case in report.cases if case.name == "spectator3"]
        assert len(spectator) == 4 * 10
        assert max(case.deviation for case in spectator) < 1e-12
        assert report.passed, report.summary()

    def test_alpha_only_for_third_excitation(self):
        with pytest.raises(DomainError):
            first_term(2, 0.7 + 0.2j, 0.1, alpha=1j)
        assert first_term(3, 0.7 + 0.2j, 0.1, alpha=1j) == pytest.approx(first_term(3, 0.7 + 0.2j, 0.1), rel=1e-12)


class TestPhaseEquations:

    @pytest.mark.parametrize("j", EXCITATIONS)
    def test_satisfied_at_minus_one(self, j):
        assert check_string_phase_equations(j, 0.1, N=4).passed

    def test_link_equations_present(self):
        names = {case.name for case in check_string_phase_equations(3, 0.1).cases}
        assert names == {"phase3", "link3"}

    def test_odd_width_breaks_hole_equation(self):
        assert not check_string_phase_equations(1, 0.1, N=3).passed

    def test_limit_constraint(self):
        assert check_string_phase_equations(4, 0.1, N=4, b=1j).passed
        assert not check_string_phase_equations(4, 0.1, N=4, b=cmath.exp(0.3j)).passed

    def test_limit_tolerance_follows_finite_x_shift(self):
        # a converged j=4 string at x=0.1, N=8 has b within ~1e-8 of -1
        b = -cmath.exp(1e-8j)
        report = check_string_phase_equations(4, 0.1, N=8, b=b)
        assert report.passed
        assert report.cases[0].tol == pytest.approx(32 * 0.1 ** 4)
        assert not check_string_phase_equations(4, 0.1, N=8, b=-cmath.exp(0.05j)).passed


class TestReports:

    def test_report_aggregates(self):
        case = IdentityCase(name="a", sample=1, lhs=1, rhs=1.5, deviation=0.5, tol=0.1)
        report = CheckReport(name="r", cases=[case])
        assert not report.passed
        assert report.worst == 0.5
        assert "r" in report.summary()

    def test_empty_report_passes(self):
        assert CheckReport(name="empty").passed

    def test_poch_suite(self):
        suite = run_suite("poch")
        assert suite.passed
        assert suite.failures() == []
        assert len(suite.reports) == 1

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("bogus")

    def test_suite_names(self):
        assert SUITES[-1] == "all"

    @pytest.mark.slow
    def test_full_suite(self):
        suite = run_suite("all")
        assert suite.passed, [r.name for r in suite.failures()]
