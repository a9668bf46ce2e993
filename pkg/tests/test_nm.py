import numpy as np
import pytest
from scipy.optimize import minimize

from locent._nm import minimize_batch


def rosen_batch(x, rows=None):
    x = np.atleast_2d(x)
    return np.sum(100.0 * (x[:, 1:] - x[:, :-1] ** 2) ** 2 + (1 - x[:, :-1]) ** 2, axis=1)


def rastrigin_batch(x, rows=None):
    x = np.atleast_2d(x)
    return 10.0 * x.shape[1] + np.sum(x**2 - 10.0 * np.cos(2 * np.pi * x), axis=1)


def test_matches_scipy_on_rosenbrock():
    rng = np.random.default_rng(0)
    starts = rng.uniform(-2, 2, (8, 2))
    lo, hi = np.full(2, -3.0), np.full(2, 3.0)
    xs, fs, nfev = minimize_batch(
        rosen_batch, starts, lo, hi, fatol=1e-10, xatol=1e-8, maxfev=4000
    )
    for x0, x, f, ne in zip(starts, xs, fs, nfev):
        ref = minimize(
            lambda v: float(rosen_batch(v[None])[0]),
            x0,
            method="Nelder-Mead",
            bounds=list(zip(lo, hi)),
            options=dict(fatol=1e-10, xatol=1e-8, maxfev=4000),
        )
        assert f <= ref.fun + 1e-8
        assert f == pytest.approx(0.0, abs=1e-7)
        assert np.allclose(x, 1.0, atol=1e-4)
        assert ne <= 4000


def test_finds_local_minima_of_rastrigin():
    rng = np.random.default_rng(3)
    starts = rng.uniform(-4, 4, (16, 3))
    xs, fs, _ = minimize_batch(
        rastrigin_batch, starts, np.full(3, -5.0), np.full(3, 5.0),
        fatol=1e-10, xatol=1e-8, maxfev=6000,
    )
    assert np.all(fs <= rastrigin_batch(starts) + 1e-12)
    # local optimality: no coordinate nudge improves the value
    for x, f in zip(xs, fs):
        for j in range(3):
            for eps in (1e-4, -1e-4):
                probe = x.copy()
                probe[j] += eps
                assert rastrigin_batch(probe[None])[0] >= f - 1e-9


def test_respects_bounds():
    def shifted(x, rows=None):
        x = np.atleast_2d(x)
        return np.sum((x - 2.0) ** 2, axis=1)

    starts = np.array([[0.2, 0.8], [0.9, 0.1]])
    xs, fs, _ = minimize_batch(
        shifted, starts, np.zeros(2), np.ones(2), fatol=1e-12, xatol=1e-9, maxfev=2000
    )
    assert np.all(xs <= 1.0 + 1e-15) and np.all(xs >= 0.0)
    assert np.allclose(xs, 1.0, atol=1e-6)


def test_never_worse_than_start():
    rng = np.random.default_rng(11)
    starts = rng.uniform(-1, 1, (12, 4))
    f0 = rosen_batch(starts)
    _, fs, _ = minimize_batch(
        rosen_batch, starts, np.full(4, -2.0), np.full(4, 2.0),
        fatol=1e-8, xatol=1e-6, maxfev=100,
    )
    assert np.all(fs <= f0 + 1e-12)


def test_maxfev_respected():
    _, _, nfev = minimize_batch(
        rosen_batch,
        np.zeros((3, 5)),
        np.full(5, -2.0),
        np.full(5, 2.0),
        fatol=1e-14,
        xatol=1e-12,
        maxfev=60,
    )
    # budget may overshoot by at most one round (2 points or a shrink)
    assert np.all(nfev <= 60 + 5)
