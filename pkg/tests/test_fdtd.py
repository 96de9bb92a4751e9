import math

import numpy as np
import pytest

from pulsedrop import (FdtdConfig, simulate_step, verify_against_closed_form)


@pytest.fixture(scope="module")
def default_probe():
    return simulate_step(FdtdConfig.default())


@pytest.fixture(scope="module")
def lossless_probe():
    cfg = FdtdConfig.default()
    return simulate_step(FdtdConfig(L=cfg.L, C=cfg.C, R=0.0, length=cfg.length,
                                    t_end=cfg.t_end, n_cells=cfg.n_cells))


class TestConfig:
    def test_front_must_not_reach_far_end(self):
        with pytest.raises(ValueError, match="transit"):
            FdtdConfig(L=2.5e-7, C=1e-10, R=125.0, length=0.1, t_end=4e-9)

    def test_cfl_bounds(self):
        with pytest.raises(ValueError):
            FdtdConfig(L=2.5e-7, C=1e-10, R=125.0, length=1.0, t_end=1e-9, cfl=1.2)

    def test_min_cells(self):
        with pytest.raises(ValueError):
            FdtdConfig(L=2.5e-7, C=1e-10, R=125.0, length=1.0, t_end=1e-9, n_cells=50)

    def test_default_spans_enough_steps(self):
        cfg = FdtdConfig.default()
        assert cfg.t_R / cfg.dt >= 500
        assert cfg.t_end == pytest.approx(2.0 * cfg.t_R)


class TestAgainstClosedForms:
    def test_deviation_within_three_percent(self, default_probe):
        cfg = default_probe.config
        rep = verify_against_closed_form(default_probe, cfg.t_R)
        assert rep.delta_max_rel_dev <= 0.03
        assert rep.sigma_max_rel_dev <= 0.03

    def test_sigma_at_t_r(self, default_probe):
        cfg = default_probe.config
        got = default_probe.sigma_curve.interp(cfg.t_R)
        assert got == pytest.approx(1.0 - math.exp(-1.0), rel=0.02)

    def test_delta_at_t_r(self, default_probe):
        cfg = default_probe.config
        got = default_probe.delta_curve.interp(cfg.t_R)
        assert got == pytest.approx(1.0 - math.exp(-0.5), rel=0.03)

    def test_front_decays_half_as_fast(self, default_probe):
        cfg = default_probe.config
        rep = verify_against_closed_form(default_probe, cfg.t_R)
        assert 1.9 <= rep.ratio_early <= 2.1

    def test_probes_stay_in_unit_band(self, default_probe):
        for c in (default_probe.sigma_curve, default_probe.delta_curve):
            assert np.all(c.values >= -1e-9)
            assert np.all(c.values <= 1.0 + 1e-9)

    def test_convergence_under_refinement(self, default_probe):
        cfg = default_probe.config
        fine = simulate_step(FdtdConfig(L=cfg.L, C=cfg.C, R=cfg.R,
                                        length=cfg.length, t_end=cfg.t_end,
                                        n_cells=2 * cfg.n_cells))
        coarse_rep = verify_against_closed_form(default_probe, cfg.t_R)
        fine_rep = verify_against_closed_form(fine, cfg.t_R)
        assert coarse_rep.delta_max_rel_dev / fine_rep.delta_max_rel_dev >= 1.5
        assert coarse_rep.sigma_max_rel_dev / fine_rep.sigma_max_rel_dev >= 1.5


class TestLossless:
    def test_no_attenuation(self, lossless_probe):
        assert np.max(np.abs(lossless_probe.sigma_curve.values)) <= 1e-10
        assert np.max(np.abs(lossless_probe.delta_curve.values)) <= 1e-10

    def test_energy_balance(self, lossless_probe):
        inj = lossless_probe.energy_injected
        field = lossless_probe.energy_field
        live = inj > 0.0
        rel = np.abs(field[live] - inj[live]) / inj[live]
        assert np.max(rel) <= 0.005


class TestSchemeDiagnostics:
    def test_front_speed(self, default_probe):
        cfg = default_probe.config
        v = 1.0 / math.sqrt(cfg.L * cfg.C)
        arr = default_probe.arrival_times
        cells = np.arange(arr.shape[0])
        seen = ~np.isnan(arr)
        assert np.sum(seen) > 1000
        err_cells = np.abs(arr[seen] * v / cfg.dz - cells[seen])
        assert np.max(err_cells) <= 1.0 + 1e-9

    def test_front_impedance(self, default_probe):
        cfg = default_probe.config
        z0 = math.sqrt(cfg.L / cfg.C)
        c = default_probe.impedance_curve
        mask = c.times >= 0.05 * cfg.t_R
        rel = np.abs(c.values[mask] - z0) / z0
        assert np.max(rel) <= 0.05

    def test_too_short_run_rejected(self):
        with pytest.raises(ValueError, match="steps"):
            cfg = FdtdConfig(L=2.5e-7, C=1e-10, R=125.0, length=1.0,
                             t_end=6e-12, n_cells=200)
            simulate_step(cfg)

    def test_window_must_be_covered(self, default_probe):
        with pytest.raises(ValueError, match="window"):
            verify_against_closed_form(default_probe, t_R=1.0)

    def test_infinite_t_r_rejected(self, lossless_probe):
        with pytest.raises(ValueError):
            verify_against_closed_form(lossless_probe, t_R=math.inf)
