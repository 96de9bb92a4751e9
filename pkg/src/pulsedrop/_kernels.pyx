# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: half-order product integration, the second-kind march,
and the leapfrog line simulator.  Contracts match ``_kernels_py``."""

from libc.math cimport sqrt, asin, ceil, floor, fabs, NAN, isnan

import numpy as np

BACKEND = "compiled"


cdef inline double _m0(double b, double a) noexcept nogil:
    return 2.0 * (sqrt(b) - sqrt(a))


cdef inline double _m1(double b, double a) noexcept nogil:
    return 2.0 * b * (sqrt(b) - sqrt(a)) - (2.0 / 3.0) * (b * sqrt(b) - a * sqrt(a))


def halfint(t_in, f_in):
    """Product integration of int_0^{t_k} f(s) (t_k-s)^(-1/2) ds; piecewise
    linear with a {1, sqrt(s), s} fit on the leading two-interval cell."""
    cdef const double[::1] t = np.ascontiguousarray(t_in, dtype=np.float64)
    cdef const double[::1] f = np.ascontiguousarray(f_in, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0]
    out_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    cdef double t1 = t[1], t2 = t[2]
    cdef double d1 = f[1] - f[0], d2 = f[2] - f[0]
    cdef double den = sqrt(t1) * t2 - sqrt(t2) * t1
    cdef double c0 = f[0]
    cdef double c1 = (d1 * t2 - d2 * t1) / den
    cdef double c2 = (d1 - c1 * sqrt(t1)) / t1
    cdef Py_ssize_t k, j
    cdef double tk, cell, b, a, m0, mh, m1, acc, h, wr, ratio, sb, sa, diff
    with nogil:
        for k in range(1, n):
            tk = t[k]
            cell = t2 if t2 < tk else tk
            b = tk
            a = tk - cell
            m0 = _m0(b, a)
            ratio = cell / tk
            if ratio > 1.0:
                ratio = 1.0
            mh = tk * asin(sqrt(ratio)) - sqrt(cell) * sqrt(a)
            m1 = tk * m0 - (2.0 / 3.0) * (b * sqrt(b) - a * sqrt(a))
            acc = c0 * m0 + c1 * mh + c2 * m1
            sb = sqrt(b)
            for j in range(2, k):
                b = tk - t[j]
                a = tk - t[j + 1]
                h = t[j + 1] - t[j]
                sb = sqrt(b)
                sa = sqrt(a)
                diff = sb - sa
                m0 = 2.0 * diff
                m1 = 2.0 * b * diff - (2.0 / 3.0) * (b * sb - a * sa)
                wr = m1 / h
                acc += (m0 - wr) * f[j] + wr * f[j + 1]
            out[k] = acc
    return out_arr


def pwconst_halfint(t_in, v_in):
    """Half-order integral of a piecewise-constant density."""
    cdef const double[::1] t = np.ascontiguousarray(t_in, dtype=np.float64)
    cdef const double[::1] v = np.ascontiguousarray(v_in, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0]
    out_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, j
    cdef double tk, acc
    with nogil:
        for k in range(1, n):
            tk = t[k]
            acc = 0.0
            for j in range(k):
                acc += v[j] * (sqrt(tk - t[j]) - sqrt(tk - t[j + 1]))
            out[k] = 2.0 * acc
    return out_arr


def second_kind_march(t_in, g_in, double sqrt_tsigma):
    """Time-step the second-kind equation; returns (u, max step residual)."""
    cdef const double[::1] t = np.ascontiguousarray(t_in, dtype=np.float64)
    cdef const double[::1] g = np.ascontiguousarray(g_in, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0]
    u_arr = np.zeros(n)
    cdef double[::1] u = u_arr
    cdef Py_ssize_t k, j
    cdef double tk, acc, b, a, m0, m1, wr, h, diag, res, sb, sa, diff, max_res = 0.0
    with nogil:
        for k in range(1, n):
            tk = t[k]
            acc = 0.0
            for j in range(k - 1):
                b = tk - t[j]
                a = tk - t[j + 1]
                h = t[j + 1] - t[j]
                sb = sqrt(b)
                sa = sqrt(a)
                diff = sb - sa
                m0 = 2.0 * diff
                m1 = 2.0 * b * diff - (2.0 / 3.0) * (b * sb - a * sa)
                wr = m1 / h
                acc += (m0 - wr) * u[j] + wr * u[j + 1]
            b = tk - t[k - 1]
            h = tk - t[k - 1]
            sb = sqrt(b)
            m0 = 2.0 * sb
            m1 = (4.0 / 3.0) * b * sb
            wr = m1 / h
            acc += (m0 - wr) * u[k - 1]
            diag = wr + sqrt_tsigma
            u[k] = (g[k] - acc) / diag
            res = fabs(acc + diag * u[k] - g[k])
            if res > max_res:
                max_res = res
    return u_arr, max_res


def fdtd_run(Py_ssize_t n_cells, Py_ssize_t steps, double a_i, double b_i,
             double c_u, double amplitude, double dt, double cells_per_step,
             Py_ssize_t standoff, double r_dz, double half_cdz,
             double half_ldz, double arrival_threshold):
    """Leapfrog update with per-step probes; see the NumPy twin for details."""
    U_arr = np.zeros(n_cells + 1)
    I_arr = np.zeros(n_cells)
    sigma_arr = np.full(steps, np.nan)
    delta_arr = np.full(steps, np.nan)
    imp_arr = np.full(steps, np.nan)
    inj_arr = np.zeros(steps)
    en_arr = np.zeros(steps)
    arrival_arr = np.full(n_cells + 1, np.nan)
    arrival_arr[0] = 0.0
    cdef double[::1] U = U_arr
    cdef double[::1] I = I_arr
    cdef double[::1] sigma = sigma_arr
    cdef double[::1] delta = delta_arr
    cdef double[::1] imp = imp_arr
    cdef double[::1] inj_hist = inj_arr
    cdef double[::1] en_hist = en_arr
    cdef double[::1] arrival = arrival_arr
    cdef Py_ssize_t m, k, lim, i_front, probe
    cdef double u0_old, acc, inj = 0.0, en, t_new
    with nogil:
        for m in range(steps):
            u0_old = U[0]
            for k in range(n_cells):
                I[k] = a_i * I[k] - b_i * (U[k + 1] - U[k])
            lim = <Py_ssize_t>ceil((m + 0.5) * cells_per_step)
            if lim > n_cells:
                lim = n_cells
            acc = 0.0
            for k in range(lim):
                acc += I[k]
            sigma[m] = r_dz * acc
            for k in range(1, n_cells):
                U[k] -= c_u * (I[k] - I[k - 1])
            U[n_cells] = 0.0
            t_new = (m + 1) * dt
            U[0] = amplitude
            inj += dt * I[0] * 0.5 * (u0_old + U[0])
            inj_hist[m] = inj
            en = 0.0
            for k in range(1, n_cells):
                en += U[k] * U[k]
            en *= half_cdz
            acc = 0.0
            for k in range(n_cells):
                acc += I[k] * I[k]
            en_hist[m] = en + half_ldz * acc
            for k in range(n_cells + 1):
                if isnan(arrival[k]) and fabs(U[k]) > arrival_threshold:
                    arrival[k] = t_new
            i_front = <Py_ssize_t>floor((m + 1) * cells_per_step + 1e-9)
            probe = i_front - standoff
            if probe >= 1 and i_front <= n_cells - 1:
                delta[m] = 1.0 - U[probe] / amplitude
                if I[probe - 1] != 0.0:
                    imp[m] = U[probe] / I[probe - 1]
    return sigma_arr, delta_arr, imp_arr, inj_arr, en_arr, arrival_arr
