"""Batched bounded Nelder-Mead.

Runs R independent simplex searches in lockstep so the objective can be
evaluated for all restarts in one vectorized call.  The algorithm and its
constants (reflection 1, expansion 2, contraction 0.5, shrink 0.5, initial
simplex steps 0.05 / 0.00025) follow the standard simplex method; candidate
points are clipped into the box.
"""
from __future__ import annotations

import numpy as np

_RHO, _CHI, _PSI, _SIGMA = 1.0, 2.0, 0.5, 0.5


def minimize_batch(fun, x0, lower, upper, *, fatol, xatol, maxfev):
    """Minimize ``fun`` over a box from R starts advanced in lockstep.

    ``fun(points, rows)`` maps an (k, d) array of points, belonging to the
    restarts listed in ``rows``, to (k,) values; restarts never interact,
    so each row's trajectory is identical to a standalone run.  Returns
    (best points (R, d), best values (R,), evaluations per restart (R,)).
    """
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    n_res, dim = x0.shape
    lower = np.broadcast_to(np.asarray(lower, dtype=float), (dim,))
    upper = np.broadcast_to(np.asarray(upper, dtype=float), (dim,))

    sim = np.repeat(np.clip(x0, lower, upper)[:, None, :], dim + 1, axis=1)
    for j in range(dim):
        base = sim[:, j + 1, j]
        step = np.where(base != 0.0, 0.05 * np.abs(base), 0.00025)
        # step away from the nearer bound so clipped vertices stay distinct
        up = base + step <= upper[j]
        sim[:, j + 1, j] = np.where(up, base + step, base - step)
    sim = np.clip(sim, lower, upper)

    all_rows = np.repeat(np.arange(n_res), dim + 1)
    fsim = fun(sim.reshape(-1, dim), all_rows).reshape(n_res, dim + 1)
    nfev = np.full(n_res, dim + 1)
    order = np.argsort(fsim, axis=1, kind="stable")
    sim = np.take_along_axis(sim, order[:, :, None], axis=1)
    fsim = np.take_along_axis(fsim, order, axis=1)
    done = np.zeros(n_res, dtype=bool)

    while True:
        ia = np.flatnonzero(~done & (nfev < maxfev))
        if ia.size == 0:
            break
        fspread = np.abs(fsim[ia, 1:] - fsim[ia, :1]).max(axis=1)
        xspread = np.abs(sim[ia, 1:] - sim[ia, :1]).max(axis=(1, 2))
        conv = (fspread <= fatol) & (xspread <= xatol)
        done[ia[conv]] = True
        ia = ia[~conv]
        if ia.size == 0:
            continue

        s = sim[ia]
        f = fsim[ia]
        worst_x = s[:, -1]
        xbar = s[:, :-1].mean(axis=1)
        xr = np.clip(xbar + _RHO * (xbar - worst_x), lower, upper)
        fr = fun(xr, ia)
        nfev[ia] += 1

        best, second_worst, worst = f[:, 0], f[:, -2], f[:, -1]
        m_exp = fr < best
        m_refl = ~m_exp & (fr < second_worst)
        m_oc = ~m_exp & ~m_refl & (fr < worst)
        m_ic = ~m_exp & ~m_refl & ~m_oc

        x2 = np.where(
            m_exp[:, None],
            xbar + _RHO * _CHI * (xbar - worst_x),
            np.where(
                m_oc[:, None],
                xbar + _PSI * _RHO * (xbar - worst_x),
                xbar - _PSI * (xbar - worst_x),
            ),
        )
        x2 = np.clip(x2, lower, upper)
        need2 = ~m_refl
        f2 = np.full(ia.size, np.inf)
        if need2.any():
            f2[need2] = fun(x2[need2], ia[need2])
            nfev[ia[need2]] += 1

        new_x, new_f = xr.copy(), fr.copy()
        take2 = (m_exp & (f2 < fr)) | (m_oc & (f2 <= fr)) | (m_ic & (f2 < worst))
        new_x[take2] = x2[take2]
        new_f[take2] = f2[take2]
        shrink = (m_oc | m_ic) & ~take2

        repl = ~shrink
        s[repl, -1] = new_x[repl]
        f[repl, -1] = new_f[repl]
        if shrink.any():
            ish = np.flatnonzero(shrink)
            pts = s[ish, :1] + _SIGMA * (s[ish, 1:] - s[ish, :1])
            rows = np.repeat(ia[ish], dim)
            f[ish, 1:] = fun(pts.reshape(-1, dim), rows).reshape(ish.size, dim)
            s[ish, 1:] = pts
            nfev[ia[ish]] += dim

        order = np.argsort(f, axis=1, kind="stable")
        sim[ia] = np.take_along_axis(s, order[:, :, None], axis=1)
        fsim[ia] = np.take_along_axis(f, order, axis=1)

    return sim[:, 0].copy(), fsim[:, 0].copy(), nfev
