"""Pure-NumPy kernels: product integration for the half-order memory kernel,
the second-kind marching solver, and the leapfrog line simulator.

Same contracts as the compiled module in ``_kernels.pyx``; this module is the
fallback selected at import time when the extension is unavailable.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "numpy"


def _linear_weights(tk, t_left, t_right):
    """Weights of the left/right node of a linear piece on [t_left, t_right]
    against the kernel (tk - s)^(-1/2), integrated exactly."""
    b = tk - t_left
    a = tk - t_right
    sb = np.sqrt(b)
    sa = np.sqrt(a)
    m0 = 2.0 * (sb - sa)
    m1 = 2.0 * b * (sb - sa) - (2.0 / 3.0) * (b * sb - a * sa)
    wr = m1 / (t_right - t_left)
    return m0 - wr, wr


def _head_fit(t, f):
    """Coefficients (c0, c1, c2) of c0 + c1*sqrt(s) + c2*s through the first
    three samples.  The sqrt term captures the endpoint behaviour that images
    of the half-order integral generically have at t = 0."""
    t1, t2 = t[1], t[2]
    d1 = f[1] - f[0]
    d2 = f[2] - f[0]
    den = math.sqrt(t1) * t2 - math.sqrt(t2) * t1
    c1 = (d1 * t2 - d2 * t1) / den
    c2 = (d1 - c1 * math.sqrt(t1)) / t1
    return f[0], c1, c2


def _head_moments(tk, cell):
    """Moments of {1, sqrt(s), s} against (tk - s)^(-1/2) over [0, cell]."""
    b = tk
    a = tk - cell
    sb = math.sqrt(b)
    sa = math.sqrt(a)
    m0 = 2.0 * (sb - sa)
    mh = tk * math.asin(min(1.0, math.sqrt(cell / tk))) - math.sqrt(cell) * sa
    m1 = tk * m0 - (2.0 / 3.0) * (b * sb - a * sa)
    return m0, mh, m1


def halfint(t, f):
    """(A f)(t_k) = int_0^{t_k} f(s) (t_k - s)^(-1/2) ds at every grid point.

    Product integration: f is piecewise linear between grid points, except on
    the leading cell (the first two intervals) where a {1, sqrt(s), s} basis
    fitted to the first three samples is used; the weakly singular kernel is
    integrated exactly against both representations.
    """
    t = np.asarray(t, dtype=float)
    f = np.asarray(f, dtype=float)
    n = t.shape[0]
    out = np.zeros(n)
    c0, c1, c2 = _head_fit(t, f)
    t2 = t[2]
    for k in range(1, n):
        tk = t[k]
        m0, mh, m1 = _head_moments(tk, min(t2, tk))
        acc = c0 * m0 + c1 * mh + c2 * m1
        if k > 2:
            wl, wr = _linear_weights(tk, t[2:k], t[3:k + 1])
            acc += np.dot(wl, f[2:k]) + np.dot(wr, f[3:k + 1])
        out[k] = acc
    return out


def pwconst_halfint(t, piece_values):
    """Half-order integral of a piecewise-constant density: piece_values[j]
    holds on (t_j, t_{j+1})."""
    t = np.asarray(t, dtype=float)
    v = np.asarray(piece_values, dtype=float)
    n = t.shape[0]
    out = np.zeros(n)
    for k in range(1, n):
        sb = np.sqrt(t[k] - t[:k])
        sa = np.sqrt(t[k] - t[1:k + 1])
        out[k] = 2.0 * np.dot(v[:k], sb - sa)
    return out


def second_kind_march(t, g, sqrt_tsigma):
    """March the second-kind equation (A u)(t_k) + sqrt_tsigma * u(t_k) = g(t_k)
    forward in time with piecewise-linear product integration.

    Each step isolates the newest unknown, whose coefficient
    w_kk + sqrt_tsigma is strictly positive.  Returns (u, max_residual) where
    the residual is the floating-point defect of each step's linear solve.
    """
    t = np.asarray(t, dtype=float)
    g = np.asarray(g, dtype=float)
    n = t.shape[0]
    u = np.zeros(n)
    max_res = 0.0
    for k in range(1, n):
        wl, wr = _linear_weights(t[k], t[:k], t[1:k + 1])
        acc = np.dot(wl, u[:k])
        if k > 1:
            acc += np.dot(wr[:-1], u[1:k])
        diag = wr[-1] + sqrt_tsigma
        u[k] = (g[k] - acc) / diag
        res = abs(acc + diag * u[k] - g[k])
        if res > max_res:
            max_res = res
    return u, max_res


def fdtd_run(n_cells, steps, a_i, b_i, c_u, amplitude, dt, cells_per_step,
             standoff, r_dz, half_cdz, half_ldz, arrival_threshold):
    """Leapfrog update of the staggered voltage/current grids with a series
    resistance, one-timestep-ramp step drive at the input, and per-step probes.

    Returns (sigma, delta, impedance, injected, field_energy, arrival) where
    sigma[m] is the resistive drop sum at t=(m+1/2)dt, delta/impedance are
    sampled at t=(m+1)dt (NaN while the front probe is not yet defined),
    injected/field_energy track the discrete energy balance, and arrival[k] is
    the time at which cell k first sees the pulse (NaN if never).
    """
    U = np.zeros(n_cells + 1)
    I = np.zeros(n_cells)
    sigma = np.full(steps, np.nan)
    delta = np.full(steps, np.nan)
    imped = np.full(steps, np.nan)
    injected = np.zeros(steps)
    field_energy = np.zeros(steps)
    arrival = np.full(n_cells + 1, np.nan)
    arrival[0] = 0.0
    inj = 0.0
    for m in range(steps):
        u0_old = U[0]
        I *= a_i
        I -= b_i * (U[1:] - U[:-1])
        front_half = (m + 0.5) * cells_per_step
        lim = min(int(math.ceil(front_half)), n_cells)
        sigma[m] = r_dz * np.sum(I[:lim])
        U[1:-1] -= c_u * (I[1:] - I[:-1])
        U[-1] = 0.0
        t_new = (m + 1) * dt
        # boundary value applied after the update: the drive is a ramp over
        # the first step, avoiding a Nyquist-frequency seed
        U[0] = amplitude
        inj += dt * I[0] * 0.5 * (u0_old + U[0])
        injected[m] = inj
        field_energy[m] = half_cdz * np.dot(U[1:-1], U[1:-1]) + half_ldz * np.dot(I, I)
        newly = np.isnan(arrival) & (np.abs(U) > arrival_threshold)
        arrival[newly] = t_new
        i_front = int(math.floor((m + 1) * cells_per_step + 1e-9))
        probe = i_front - standoff
        if probe >= 1 and i_front <= n_cells - 1:
            delta[m] = 1.0 - U[probe] / amplitude
            if I[probe - 1] != 0.0:
                imped[m] = U[probe] / I[probe - 1]
    return sigma, delta, imped, injected, field_energy, arrival
