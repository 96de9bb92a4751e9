import numpy as np
import pytest
from hypothesis import given, strategies as st

from pulsedrop import (Sampled, Step, Trapezoid, UnsupportedWaveform,
                       evaluate, half_integral_exact, load_waveform_csv,
                       validate_monotone)


class TestEvaluate:
    def test_ramp_midpoint(self):
        assert evaluate(Trapezoid(1.0, 2.0), 1.0) == 0.5

    def test_step_plateau(self):
        assert evaluate(Step(3.0), 10.0) == 3.0

    def test_step_at_zero_is_zero(self):
        assert evaluate(Step(3.0), 0.0) == 0.0

    def test_trapezoid_plateau(self):
        assert evaluate(Trapezoid(1.0, 2.0), 5.0) == 1.0

    def test_sampled_interp_and_clamp(self):
        w = Sampled(np.array([0.0, 1.0, 2.0]), np.array([0.0, 2.0, 3.0]))
        assert evaluate(w, 0.5) == 1.0
        assert evaluate(w, 10.0) == 3.0

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            evaluate(Step(1.0), -0.1)

    @given(st.floats(min_value=0.0, max_value=100.0),
           st.floats(min_value=0.0, max_value=100.0))
    def test_builtin_monotone(self, t1, t2):
        lo, hi = sorted((t1, t2))
        for w in (Step(2.0), Trapezoid(2.0, 3.0)):
            assert evaluate(w, lo) <= evaluate(w, hi)


class TestHalfIntegralExact:
    def test_step(self):
        assert half_integral_exact(Step(1.0), 4.0) == pytest.approx(4.0, abs=1e-14)

    def test_trapezoid_at_kink(self):
        assert half_integral_exact(Trapezoid(1.0, 1.0), 1.0) == pytest.approx(4.0 / 3.0)

    def test_step_limit_of_trapezoid(self):
        # cancellation-free difference of 3/2 powers keeps the limit exact
        fast = half_integral_exact(Trapezoid(1.0, 1e-12), 4.0)
        assert fast == pytest.approx(4.0, rel=1e-9)

    def test_sampled_unsupported(self):
        w = Sampled(np.array([0.0, 1.0]), np.array([0.0, 1.0]))
        with pytest.raises(UnsupportedWaveform):
            half_integral_exact(w, 1.0)

    @given(st.floats(min_value=0.0, max_value=50.0),
           st.floats(min_value=0.0, max_value=50.0))
    def test_non_decreasing(self, t1, t2):
        lo, hi = sorted((t1, t2))
        for w in (Step(1.5), Trapezoid(1.5, 2.5)):
            assert half_integral_exact(w, lo) <= half_integral_exact(w, hi) + 1e-12

    def test_smooth_across_kink(self):
        w = Trapezoid(1.0, 1.0)
        eps = 1e-7
        lo = half_integral_exact(w, 1.0 - eps)
        hi = half_integral_exact(w, 1.0 + eps)
        # continuous with continuous slope: difference is O(eps)
        assert abs(hi - lo) < 1e-6


class TestMonotoneCheck:
    def test_violation_reported_with_index(self):
        w = Sampled(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 0.5]))
        check = validate_monotone(w)
        assert not check.ok and check.first_violation == 2

    def test_builtins_pass(self):
        assert validate_monotone(Step(1.0)).ok
        assert validate_monotone(Trapezoid(1.0, 1.0)).ok

    def test_flat_sampled_ok(self):
        w = Sampled(np.array([0.0, 1.0]), np.array([0.0, 0.0]))
        assert validate_monotone(w).ok

    def test_nonzero_start_flagged(self):
        w = Sampled(np.array([0.0, 1.0]), np.array([0.5, 1.0]))
        assert not validate_monotone(w).ok


class TestSampledConstruction:
    def test_must_start_at_zero_time(self):
        with pytest.raises(ValueError):
            Sampled(np.array([0.5, 1.0]), np.array([0.0, 1.0]))

    def test_times_strictly_increasing(self):
        with pytest.raises(ValueError):
            Sampled(np.array([0.0, 0.0]), np.array([0.0, 1.0]))


def test_csv_round_trip(tmp_path):
    path = tmp_path / "pulse.csv"
    path.write_text("time_s,volts\n0.0,0.0\n1e-9,0.5\n2e-9,1.0\n")
    w = load_waveform_csv(path)
    assert evaluate(w, 1e-9) == 0.5
    assert validate_monotone(w).ok


def test_csv_header_required(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0.0,0.0\n1e-9,0.5\n")
    with pytest.raises(ValueError, match="header"):
        load_waveform_csv(path)
