import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaussdisp.point_dipole import (OscillatorModel, interaction_energy, london_asymptote,
                                    mode_spectrum, repulsive_asymptote, spectrum_from_ratio)
from gaussdisp.quantities import Energy

W = Energy(1.0)


def at_ratio(u, alpha0=1.0):
    """Model and separation giving alpha0/rho^3 = u."""
    return OscillatorModel(alpha0, W), (alpha0 / u) ** (1.0 / 3.0)


def factors(spectrum):
    return [(m.frequency_squared_factor, m.multiplicity) for m in spectrum.modes]


class TestSpectrum:
    def test_uncoupled(self):
        s = mode_spectrum(OscillatorModel(0.0, W), 2.0)
        assert all(f == 1.0 for f, _ in factors(s))
        assert s.real_count == 6

    def test_weak_coupling(self):
        m, rho = at_ratio(0.1)
        got = sorted(factors(mode_spectrum(m, rho)))
        want = sorted([(1.1, 2), (0.9, 2), (1.2, 1), (0.8, 1)])
        for (f, n), (fw, nw) in zip(got, want):
            assert f == pytest.approx(fw, rel=1e-14) and n == nw

    def test_one_mode_frozen(self):
        m, rho = at_ratio(0.6)
        s = mode_spectrum(m, rho)
        frozen = [x for x in s.modes if not x.is_real]
        assert len(frozen) == 1 and frozen[0].frequency_squared_factor == pytest.approx(-0.2)
        assert s.real_count == 5

    def test_zero_separation_rejected(self):
        with pytest.raises(ValueError):
            mode_spectrum(OscillatorModel(1.0, W), 0.0)

    @given(st.floats(1e-4, 1e4))
    def test_real_mode_count(self, u):
        s = spectrum_from_ratio(u)
        assert s.total_count == 6
        expected = 6 if u <= 0.5 else 5 if u <= 1.0 else 3
        assert s.real_count == expected
        assert all(m.is_real == (m.frequency_squared_factor >= 0) for m in s.modes)


class TestInteractionEnergy:
    def test_uncoupled(self):
        assert interaction_energy(OscillatorModel(0.0, W), 1.0).value == 0.0

    def test_deep_freeze_out(self):
        m, rho = at_ratio(4.0)
        assert interaction_energy(m, rho).value == pytest.approx(0.7360679774997897, rel=1e-12)

    def test_freeze_out_equals_three_mode_sum(self):
        for u in (1.5, 4.0, 37.0, 1e3):
            m, rho = at_ratio(u)
            u_eff = m.alpha0 / rho**3
            three = 0.5 * (2 * math.sqrt(1 + u_eff) + math.sqrt(1 + 2 * u_eff) - 6)
            assert interaction_energy(m, rho).value == pytest.approx(three, rel=1e-14)

    def test_small_coupling_is_london(self):
        m, rho = at_ratio(0.01)
        assert interaction_energy(m, rho).value == pytest.approx(-7.5e-5, rel=1e-4)

    def test_zero_separation_rejected(self):
        with pytest.raises(ValueError):
            interaction_energy(OscillatorModel(1.0, W), 0.0)

    @pytest.mark.parametrize("threshold", [0.5, 1.0])
    def test_continuity(self, threshold):
        # u exactly at the threshold: the vanishing mode contributes sqrt(0)
        # whether it is counted (from below) or dropped (from above).
        model = OscillatorModel(threshold, W)
        at = interaction_energy(model, 1.0).value
        s = spectrum_from_ratio(threshold)
        below = 0.5 * (sum(m.multiplicity * math.sqrt(max(m.frequency_squared_factor, 0.0))
                           for m in s.modes) - 6)
        above = 0.5 * (sum(m.multiplicity * math.sqrt(m.frequency_squared_factor)
                           for m in s.modes if m.frequency_squared_factor > 0) - 6)
        assert abs(below - above) <= 1e-12 and abs(at - below) <= 1e-12
        # the one-sided jump shrinks like sqrt(delta)
        for delta in (1e-4, 1e-8, 1e-12):
            lo = interaction_energy(*at_ratio(threshold - delta)).value
            hi = interaction_energy(*at_ratio(threshold + delta)).value
            assert abs(hi - lo) <= 4 * math.sqrt(2 * delta)

    def test_sign_pattern(self):
        for u in (1e-3, 0.1, 0.3, 0.49):
            assert interaction_energy(*at_ratio(u)).value < 0
        assert interaction_energy(*at_ratio(100.0)).value > 0

    def test_vanishes_at_large_separation(self):
        m = OscillatorModel(1.0, W)
        assert abs(interaction_energy(m, 1e3).value) < 1e-17


class TestAsymptotes:
    def test_london_zero_polarizability(self):
        assert london_asymptote(OscillatorModel(0.0, W), 1.0).value == 0.0

    def test_london_ratio(self):
        m, rho = at_ratio(0.05)
        ratio = interaction_energy(m, rho) / london_asymptote(m, rho)
        assert abs(ratio - 1) < 0.01

    def test_london_scaling(self):
        m = OscillatorModel(2.0, W)
        assert london_asymptote(m, 3.0) / london_asymptote(m, 6.0) == pytest.approx(64.0, rel=1e-14)

    @pytest.mark.parametrize("u, rel", [(100.0, 1e-2), (1e4, 1e-3)])
    def test_repulsive(self, u, rel):
        m, rho = at_ratio(u)
        exact = interaction_energy(m, rho).value
        assert abs(repulsive_asymptote(m, rho).value - exact) <= rel * abs(exact)

    def test_repulsive_sign_change(self):
        root = 3.088311754568578  # (6 / (2 + sqrt 2))^2
        assert repulsive_asymptote(*at_ratio(root * 0.999)).value < 0
        assert repulsive_asymptote(*at_ratio(root * 1.001)).value > 0
