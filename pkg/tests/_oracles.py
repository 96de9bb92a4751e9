"""Independent high-precision oracles used by the tests.

The primary oracle is 50-digit mpmath erfc; before bulk use it is itself
cross-validated at spot points against two classical evaluations written
here from scratch (Maclaurin series and Laplace continued fraction), so no
test asserts against a value produced by the code path under test.
"""

import mpmath as mp

mp.mp.dps = 50


def erfc_series(x, terms=400):
    """erfc via the Maclaurin series of erf (adequate for x <~ 5)."""
    x = mp.mpf(x)
    acc = mp.mpf(0)
    term = x
    k = 0
    while k < terms:
        acc += term / (2 * k + 1)
        k += 1
        term *= -x * x / k
        if abs(term) < mp.mpf(10) ** (-60) * max(1, abs(acc)):
            break
    return 1 - 2 / mp.sqrt(mp.pi) * acc


def erfcx_cf(x, depth=400):
    """exp(x^2) erfc(x) via the Laplace continued fraction (x > 0)."""
    x = mp.mpf(x)
    f = mp.mpf(0)
    for k in range(depth, 0, -1):
        den = 2 * x if k % 2 == 1 else x
        f = k / (den + f)
    return 1 / ((x + f) * mp.sqrt(mp.pi))


def erfcx_oracle(x, cross_check=False):
    """50-digit scaled complementary error function."""
    x = mp.mpf(x)
    via_mp = mp.exp(x * x) * mp.erfc(x)
    if cross_check:
        if x <= 5:
            via_series = mp.exp(x * x) * erfc_series(x)
            assert abs(via_series - via_mp) <= mp.mpf(10) ** -30 * via_mp
        if x >= 1:
            depth = 1200 if x < 2 else 400
            via_cf = erfcx_cf(x, depth)
            assert abs(via_cf - via_mp) <= mp.mpf(10) ** -30 * via_mp
    return via_mp


def verify_oracle_self_consistency():
    """Cross-check the oracle at spot points spanning its whole range."""
    for x in ("1e-6", "1e-3", "0.1", "0.9", "1.0", "2.0", "3.5", "5.0",
              "8.0", "15.0", "30.0"):
        erfcx_oracle(mp.mpf(x), cross_check=True)


def usigma_step_skin_oracle(x):
    """Step response in the strong-skin regime at t = x * t_sigma."""
    return 1 - erfcx_oracle(mp.sqrt(mp.pi * mp.mpf(x)))


def t_delta_skin_oracle(delta):
    """Invert the step response: x with usigma(x) = delta.  Solved in
    s = sqrt(x) so the iteration stays on the real axis."""
    d = mp.mpf(delta)
    s = mp.findroot(lambda s: usigma_step_skin_oracle(s * s) - d, d / 2,
                    solver="secant")
    return s * s
