"""Acceptance gate: one test per acceptance criterion, each printing a
PASS/FAIL line with the measured numbers (run with `pytest -rA` to see the
lines for passing tests too).

Three checks assert tolerances that the underlying mathematics provably does
not attain; they fail, and their messages carry the exact analytical values:

* test_a03_explicit_term_claim: the resolvent correction reaches 0.0266 V
  before the response reaches 0.30 V even in the step limit (and far more
  for slow rises), so a uniform 0.02 V bound over the 0.30 V range cannot
  hold.  It does hold below ~0.26 V.
* test_a05_tdelta_skin[0.05]: inverting the exact step response puts
  t_delta 7.75% above ts*delta^2/4 at delta = 0.05 (the deviation grows
  like pi*delta/2), outside the asserted 5% band that delta = 0.01 and
  0.02 do satisfy.
* test_a06_resistive_step_limit: the trapezoid response with t0 = 1e-8 t_R
  differs from the step response by (t0/2t_R)V = 5.0e-9 V exactly at
  leading order, five times the asserted 1e-9 V bound.
"""

import math

import numpy as np
import pytest

import pulsedrop as pd
from pulsedrop.closedform import exp_convolution, _conv_node_values

import _oracles as orc
import mpmath as mp


def report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}  ({detail})")


@pytest.fixture(scope="module", autouse=True)
def _oracle_sanity():
    orc.verify_oracle_self_consistency()


def test_a01_step_skin_checkpoint():
    """Closed-form step/skin response at t = ts/pi against the 50-digit
    erfc oracle (value 0.5724164238...)."""
    expect = float(orc.usigma_step_skin_oracle(1 / mp.pi))
    got = pd.usigma_step_skin(1.0 / math.pi, 1.0)
    err = abs(got - expect)
    report("a01 step/skin checkpoint", err <= 1e-6,
           f"got {got:.9f}, oracle {expect:.9f}, err {err:.2e}")
    assert err <= 1e-6


def test_a02_second_kind_vs_closed_form():
    """Marching solver against the closed form: max error <= 1e-3 at
    n = 4096 on [0, 3 ts]; refinement ladder n = 512..8192 converges with
    empirical order >= 1.5 (measured at the grid points shared by all
    ladder levels)."""
    ts = 1.0
    errs = []
    ns = (512, 1024, 2048, 4096, 8192)
    for n in ns:
        grid = pd.TimeGrid.uniform(n, 3.0 * ts)
        u = pd.solve_second_kind(pd.Step(1.0), ts, grid).curve
        ref = pd.usigma_step_skin(grid.points, ts)
        stride = n // ns[0]
        errs.append(float(np.max(np.abs(u.values[::stride] - ref[::stride]))))
        if n == 4096:
            full_max = float(np.max(np.abs(u.values - ref)))
    orders = [math.log2(errs[i - 1] / errs[i]) for i in range(1, len(errs))]
    ok = full_max <= 1e-3 and all(o >= 1.5 for o in orders)
    report("a02 second-kind vs closed form", ok,
           f"max@4096 {full_max:.2e}, ladder orders "
           + ", ".join(f"{o:.2f}" for o in orders))
    assert full_max <= 1e-3
    assert all(o >= 1.5 for o in orders), orders


@pytest.fixture(scope="module")
def ratio_curves():
    """Second-kind and resolvent solutions for the four rise-time ratios on
    [0, 5 ts], shared by the a03 tests."""
    ts = 1.0
    out = {}
    for r in (1e-3, 1e-2, 1e-1, 1.0):
        w = pd.Trapezoid(1.0, r * ts)
        grid = pd.TimeGrid.with_knot(4096, 5.0 * ts, w.rise_time)
        numeric = pd.solve_second_kind(w, ts, grid).curve
        resolvent = pd.resolvent_for_waveform(w, ts, grid.points).curve
        explicit = pd.f_closed(w, ts, grid.points)
        out[r] = (grid.points, numeric.values, resolvent.values, explicit)
    return out


def test_a03_resolvent_vs_second_kind(ratio_curves):
    """The two independent numeric routes agree to 2e-3 V out to 5 ts for
    rise-time ratios 1e-3 .. 1."""
    worst = {r: float(np.max(np.abs(n - res)))
             for r, (t, n, res, f) in ratio_curves.items()}
    ok = all(v <= 2e-3 for v in worst.values())
    report("a03 resolvent vs second-kind", ok,
           ", ".join(f"t0/ts={r:g}: {v:.2e}" for r, v in worst.items()))
    assert ok, worst


def test_a03_explicit_term_claim(ratio_curves):
    """Asserted: |U - F| <= 0.02 V wherever U <= 0.3 V.  Analytically
    unattainable: the correction reaches 0.0266 V just below the 0.3 V mark
    in the step limit, and the explicit term alone cannot even reach 0.3 V
    for slow rises (t0 ~ ts), where the gap grows to ~0.27 V."""
    worst = {}
    for r, (t, numeric, _res, explicit) in ratio_curves.items():
        mask = numeric <= 0.3
        worst[r] = float(np.max(np.abs(numeric - explicit)[mask]))
    ok = all(v <= 0.02 for v in worst.values())
    report("a03 explicit-term claim (U<=0.3V)", ok,
           ", ".join(f"t0/ts={r:g}: {v:.4f}V" for r, v in worst.items()))
    assert ok, (
        f"measured max |U - F| in the U <= 0.3V range: {worst}; the bound "
        "0.02 V holds only below U ~ 0.26 V (correction is 0.0266 V at "
        "U = 0.3 V even in the step limit)")


def test_a04_semigroup_identity():
    """Applying the half-order integral twice equals pi times the running
    integral, to 1e-5 of scale at n = 4096, for f = 1, t, t^2."""
    grid = pd.TimeGrid.uniform(4096, 1.0)
    t = grid.points
    rel = {}
    for name, f in (("1", np.ones_like(t)), ("t", t.copy()), ("t^2", t ** 2)):
        inner = pd.half_integral(pd.SampledCurve(t, f))
        outer = pd.half_integral(inner).values
        running = np.zeros_like(t)
        running[1:] = np.cumsum(0.5 * (f[1:] + f[:-1]) * np.diff(t))
        ref = math.pi * running
        rel[name] = float(np.max(np.abs(outer - ref)) / np.max(np.abs(ref)))
    ok = all(v <= 1e-5 for v in rel.values())
    report("a04 semigroup identity", ok,
           ", ".join(f"f={k}: {v:.2e}" for k, v in rel.items()))
    assert ok, rel


@pytest.mark.parametrize("delta", [0.01, 0.02, 0.05])
def test_a05_tdelta_skin(delta):
    """Skin-regime crossing times against the leading-order value
    ts*delta^2/4, 5% band.  Holds for delta = 0.01 and 0.02; at 0.05 the
    exact inversion sits 7.75% high (the deviation grows like pi*delta/2),
    so that case fails as asserted."""
    q = pd.TDeltaQuery(delta, pd.Step(1.0), pd.StrongSkin(1.0))
    td = pd.find_t_delta(q)
    dev = abs(td - delta * delta / 4.0) / td
    report(f"a05 skin asymptote d={delta}", dev <= 0.05,
           f"t_delta {td:.6e}, dev {dev * 100:.2f}%")
    assert dev <= 0.05, (
        f"delta={delta}: measured deviation {dev:.4f} from ts*d^2/4 "
        f"(exact inversion: {float(orc.t_delta_skin_oracle(delta)):.6e})")


@pytest.mark.parametrize("delta", [0.01, 0.02, 0.05])
def test_a05_tdelta_resistive(delta):
    """Resistive-regime crossing times against t_R * delta, 5% band."""
    q = pd.TDeltaQuery(delta, pd.Step(1.0), pd.Resistive(1.0))
    td = pd.find_t_delta(q)
    dev = abs(td - delta) / td
    report(f"a05 resistive asymptote d={delta}", dev <= 0.05,
           f"t_delta {td:.6e}, dev {dev * 100:.2f}%")
    assert dev <= 0.05


def test_a06_resistive_trapezoid_checkpoint():
    """Trapezoid response at t = t0 = t_R equals exp(-1) V to 1e-6 V."""
    got = pd.usigma_resistive(pd.Trapezoid(1.0, 1.0), 1.0, 1.0)
    err = abs(got - math.exp(-1.0))
    report("a06 trapezoid checkpoint", err <= 1e-6,
           f"got {got:.9f}, err {err:.2e}")
    assert err <= 1e-6


def test_a06_resistive_step_limit():
    """Asserted: the trapezoid response with t0/t_R = 1e-8 matches the step
    response pointwise to 1e-9 V.  Analytically unattainable: the exact gap
    is (t0/2t_R) e^{-t/t_R} V, with supremum 5.0e-9 V."""
    t = np.concatenate(([0.0, 1e-6, 1e-3, 1e-2], np.linspace(0.05, 5.0, 125)))
    trap = pd.usigma_resistive(pd.Trapezoid(1.0, 1e-8), 1.0, t)
    step = pd.usigma_resistive(pd.Step(1.0), 1.0, t)
    gap = float(np.max(np.abs(trap - step)))
    report("a06 step limit", gap <= 1e-9, f"sup gap {gap:.3e} V")
    assert gap <= 1e-9, (
        f"sup gap {gap:.3e} V; the leading-order distance between the two "
        "responses is (t0/2t_R)V = 5.0e-9 V, so a 1e-9 V bound would need "
        "t0/t_R <= 2e-9")


def test_a07_fdtd_oracle():
    """Finite-difference oracle against the resistive closed forms: both
    attenuation measures within 3% over [0.1 t_R, 2 t_R] at 4000 cells and
    unit Courant number; early ohmic-to-front ratio inside [1.9, 2.1]."""
    cfg = pd.FdtdConfig.default()
    assert cfg.n_cells == 4000 and cfg.cfl == 1.0
    probe = pd.simulate_step(cfg)
    rep = pd.verify_against_closed_form(probe, cfg.t_R)
    ok = (rep.delta_max_rel_dev <= 0.03 and rep.sigma_max_rel_dev <= 0.03
          and 1.9 <= rep.ratio_early <= 2.1)
    report("a07 fdtd oracle", ok,
           f"front dev {rep.delta_max_rel_dev * 100:.2f}%, ohmic dev "
           f"{rep.sigma_max_rel_dev * 100:.2f}%, ratio {rep.ratio_early:.3f}")
    assert rep.delta_max_rel_dev <= 0.03
    assert rep.sigma_max_rel_dev <= 0.03
    assert 1.9 <= rep.ratio_early <= 2.1


def test_a08_skin_front_ratio():
    """Ohmic-to-front attenuation ratio from the strong-skin closed forms
    at t = 1e-6 ts lies in [3.9, 4.1]."""
    t = 1e-6
    ratio = pd.usigma_step_skin(t, 1.0) / pd.delta_front(t, pd.StrongSkin(1.0))
    report("a08 skin front ratio", 3.9 <= ratio <= 4.1, f"ratio {ratio:.5f}")
    assert 3.9 <= ratio <= 4.1


def test_a09_erfcx_accuracy():
    """erfcx within 1e-12 relative of the 50-digit oracle at 1000
    log-spaced points in [1e-6, 30]."""
    xs = np.logspace(-6, math.log10(30.0), 1000)
    worst = 0.0
    for x in xs:
        ref = float(orc.erfcx_oracle(float(x)))
        worst = max(worst, abs(pd.erfcx(float(x)) - ref) / ref)
    report("a09 erfcx accuracy", worst <= 1e-12, f"max rel err {worst:.2e}")
    assert worst <= 1e-12


def test_a10_abel_round_trip():
    """Forward half-order integral then inversion recovers f = t and a
    smooth polynomial within 1e-3 at n = 4096."""
    grid = pd.TimeGrid.uniform(4096, 1.0)
    t = grid.points
    errs = {}
    for name, f in (("t", t.copy()),
                    ("poly", t + t ** 2 - 0.5 * t ** 3)):
        rec = pd.abel_invert(pd.half_integral(pd.SampledCurve(t, f)))
        errs[name] = float(np.max(np.abs(rec.values - f)))
    ok = all(v <= 1e-3 for v in errs.values())
    report("a10 abel round trip", ok,
           ", ".join(f"{k}: {v:.2e}" for k, v in errs.items()))
    assert ok, errs
