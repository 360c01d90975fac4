"""
Tests for model parameters, nome frames and the excitation tables.
"""

import math

import pytest

from dilute_spectra.exceptions import DomainError
from dilute_spectra.model import (
    TRICRITICAL_PERTURBATIONS,
    canonical_table_text,
    excitation_table,
    frame_from_eps,
    frame_from_p,
    frame_from_x,
    get_excitation,
    isotropic_point,
    params_for,
    spectral_point,
    table_checksum,
)
from dilute_spectra.models import get_dilute_model

CHECKSUMS = {
    3: "59d671d59091365807e35478ec0d8b4edd74ac7b45caf899492e4034c5e691f6",
    4: "a3888c278ec1ceb41272e69aea871c66be91afcf9a3af3b752b8b9405d0a7047",
    6: "683b6d4adbda1ef3ab987a20c0e6a0f710feaa1863e30bbe58f3471b9246244e",
}


class TestParams:

    def test_dilute_a4(self):
        params = params_for(4)
        assert (params.s, params.r, params.g) == (6, 20, 18)
        assert params.central_charge == pytest.approx(0.7)
        assert params.lam == pytest.approx(3 * math.pi / 10)
        assert params.algebra == "E7"
        assert params.theta_power == pytest.approx(5 / 9)
        assert params.isotropic_power == 18

    @pytest.mark.parametrize("L,g,c", [(3, 30, 0.5), (6, 12, 6 / 7)])
    def test_other_levels(self, L, g, c):
        params = params_for(L)
        assert params.g == g
        assert params.central_charge == pytest.approx(c)
        assert 0 < params.lam < math.pi

    @pytest.mark.parametrize("L", [0, 2, 5, 7])
    def test_unsupported_level(self, L):
        with pytest.raises(DomainError):
            params_for(L)


class TestFrames:

    @pytest.mark.parametrize("p", [1e-8, 1e-3, 0.3, 0.9])
    def test_round_trip(self, p, params4):
        frame = frame_from_p(p, params4)
        assert frame.p == p
        assert frame_from_eps(frame.eps, params4).x == pytest.approx(frame.x, rel=1e-14)
        assert frame_from_x(frame.x, params4).p == pytest.approx(p, rel=1e-10)

    def test_known_point(self, params4):
        frame = frame_from_p(math.exp(-math.pi), params4)
        assert frame.x == pytest.approx(math.exp(-math.pi / 20), rel=1e-14)

    def test_x_grows_as_p_shrinks(self, params4):
        xs = [frame_from_p(p, params4).x for p in (1e-2, 1e-4, 1e-8, 1e-16)]
        assert xs == sorted(xs)
        assert xs[-1] < 1.0

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 2.0])
    def test_p_out_of_range(self, p, params4):
        with pytest.raises(DomainError):
            frame_from_p(p, params4)

    @pytest.mark.parametrize("eps", [0.0, -1.0, float("inf")])
    def test_eps_out_of_range(self, eps, params4):
        with pytest.raises(DomainError):
            frame_from_eps(eps, params4)

    def test_isotropic_point(self, small_x_frame, params4):
        point = isotropic_point(small_x_frame, params4)
        assert point.w == pytest.approx(0.1 ** 18)
        assert spectral_point(point.u, small_x_frame, params4).w == pytest.approx(point.w, rel=1e-12)

    def test_spectral_point_range(self, small_x_frame, params4):
        with pytest.raises(DomainError):
            spectral_point(3 * params4.lam, small_x_frame, params4)


class TestExcitationTable:

    def test_first_excitation(self):
        spec = excitation_table(4)[0]
        assert spec.a_set == (6,)
        assert set(spec.string_positions) == {2, -2, 10}
        assert spec.band == 1
        assert spec.parity == "odd"
        assert spec.holes == 1
        assert spec.odd_string

    def test_seventh_excitation(self):
        spec = get_excitation(4, 7)
        assert spec.a_set == (3, 5, 7, 9)
        assert sorted(spec.string_positions) == [-9, -7, -5, 5, 7, 9]
        assert spec.band == 4
        assert spec.string_levels == (-18, 18, -14, 14, -10, 10)

    def test_dilute_a3_last_row(self):
        table = excitation_table(3)
        assert len(table) == 8
        assert table[-1].a_set == (5, 7, 9, 11, 13, 15)

    def test_dilute_a6_labels(self):
        assert [spec.label for spec in excitation_table(6)] == ["1", "1bar", "2", "3", "3bar", "4"]

    @pytest.mark.parametrize("L", [3, 4, 6])
    def test_integers_inside_coxeter_range(self, L):
        g = params_for(L).g
        for spec in excitation_table(L):
            assert all(0 < a < g for a in spec.a_set)

    def test_band_counts_integers(self):
        for spec in excitation_table(4):
            assert spec.band == len(spec.a_set)

    def test_parities_alternate_as_e7(self):
        parities = [spec.parity for spec in excitation_table(4)]
        assert parities == ["odd", "even", "odd", "even", "even", "odd", "even"]

    def test_lookup_by_label(self):
        assert get_excitation(6, "3bar").a_set == (3, 5)
        with pytest.raises(DomainError):
            get_excitation(4, 8)

    @pytest.mark.parametrize("L", [3, 4, 6])
    def test_checksum_pinned(self, L):
        assert table_checksum(L) == CHECKSUMS[L]

    def test_canonical_text_format(self):
        lines = canonical_table_text(4).splitlines()
        assert lines[0] == "1:6:odd:-2,2,10:1"
        assert canonical_table_text(3).splitlines()[0] == "1:1,11:-:-:-"

    def test_regime_2plus_hides_odd_pair(self):
        assert get_dilute_model(4).absent_in_regime_2plus() == ("1", "3")


def test_tricritical_perturbations():
    fields = [item.field for item in TRICRITICAL_PERTURBATIONS]
    assert fields == ["phi(2,2)", "phi(1,2)", "phi(2,1)", "phi(1,3)"]
    assert TRICRITICAL_PERTURBATIONS[1].lattice == "dilute A4 regime 2"
