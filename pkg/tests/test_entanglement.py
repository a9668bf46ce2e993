import numpy as np
import pytest

from locent.entanglement import (
    BlochDirection,
    classical_correlation_q,
    classical_correlation_q_grid,
    concurrence,
    concurrence_purity_oracle,
    correlation_at,
    _direction_grid,
)
from locent.qstate import (
    PureState,
    apply_local_unitary,
    ghz,
    haar_random_state,
    make_basis_state,
)

Z_DIR = BlochDirection(0.0, 0.0, 1.0)


def test_concurrence_examples():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert concurrence(bell) == pytest.approx(1.0, abs=1e-12)
    assert concurrence([0, 0, 0, 1]) == pytest.approx(0.0, abs=1e-15)
    skew = np.array([np.sqrt(0.2), 0, 0, np.sqrt(0.8)])
    assert concurrence(skew) == pytest.approx(0.8, abs=1e-12)


def test_concurrence_rejects_unnormalized():
    with pytest.raises(ValueError):
        concurrence([1.0, 1.0, 0.0, 0.0])


def test_concurrence_range_and_phase_invariance():
    rng = np.random.default_rng(21)
    for k in range(50):
        state = haar_random_state(2, 2000 + k)
        c = concurrence(state)
        assert 0.0 <= c <= 1.0
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, 2))
        # local phases on either qubit: diag(p0, p0, p1, p1) * diag(q0, q1, q0, q1)
        dressed = state.amplitudes * np.kron(phases, np.exp(1j * rng.uniform(0, 2 * np.pi, 2)))
        assert abs(concurrence(PureState(2, dressed)) - c) < 1e-10


def test_concurrence_matches_purity_oracle():
    assert concurrence_purity_oracle(ghz(2)) == pytest.approx(1.0, abs=1e-12)
    assert concurrence_purity_oracle(make_basis_state(2, "01")) == pytest.approx(0.0, abs=1e-12)
    worst = 0.0
    for k in range(1000):
        state = haar_random_state(2, 5000 + k)
        worst = max(worst, abs(concurrence(state) - concurrence_purity_oracle(state)))
    assert worst <= 1e-9


def test_correlation_at_examples():
    assert correlation_at(ghz(2), (1, 2), Z_DIR, Z_DIR) == pytest.approx(1.0, abs=1e-12)
    assert correlation_at(make_basis_state(2, "00"), (1, 2), Z_DIR, Z_DIR) == pytest.approx(
        0.0, abs=1e-12
    )
    assert correlation_at(ghz(3), (1, 2), Z_DIR, Z_DIR) == pytest.approx(1.0, abs=1e-12)


def test_correlation_at_bounded():
    rng = np.random.default_rng(4)
    for k in range(20):
        state = haar_random_state(3, 700 + k)
        a = BlochDirection.from_angles(*rng.uniform(0, np.pi, 2))
        b = BlochDirection.from_angles(*rng.uniform(0, np.pi, 2))
        assert -2.0 <= correlation_at(state, (1, 3), a, b) <= 2.0


def test_classical_correlation_q_examples():
    res = classical_correlation_q(ghz(2), (1, 2))
    assert res.q == pytest.approx(1.0, abs=1e-10)
    assert classical_correlation_q(make_basis_state(3, "000"), (1, 3)).q == pytest.approx(
        0.0, abs=1e-10
    )


def test_q_reproduced_from_stored_directions():
    for k in range(25):
        state = haar_random_state(4, 1500 + k)
        res = classical_correlation_q(state, (1, 4))
        again = correlation_at(state, (1, 4), res.alpha_hat, res.beta_hat)
        assert abs(again - res.q) < 1e-9


def test_q_invariant_under_local_unitaries():
    from locent.qstate import SingleQubitUnitary

    rng = np.random.default_rng(9)
    for k in range(15):
        state = haar_random_state(3, 3100 + k)
        q0 = classical_correlation_q(state, (1, 3)).q
        dressed = state
        for site in (1, 3):
            u = SingleQubitUnitary(*rng.uniform(-np.pi, np.pi, 4))
            dressed = apply_local_unitary(dressed, site, u)
        assert abs(classical_correlation_q(dressed, (1, 3)).q - q0) < 2e-9


def test_q_grid_examples():
    assert classical_correlation_q_grid(ghz(2), (1, 2), 32) == pytest.approx(1.0, abs=5e-3)
    assert classical_correlation_q_grid(make_basis_state(2, "00"), (1, 2), 16) == pytest.approx(
        0.0, abs=1e-10
    )


def test_q_grid_never_exceeds_closed_form():
    for k in range(20):
        state = haar_random_state(3, 4200 + k)
        q = classical_correlation_q(state, (1, 2)).q
        g = classical_correlation_q_grid(state, (1, 2), 16)
        assert g <= q + 1e-9


def test_q_grid_matches_brute_force():
    # the analytic phi-ring reduction must equal the literal double loop
    for k in range(3):
        state = haar_random_state(3, 6000 + k)
        fast = classical_correlation_q_grid(state, (1, 3), 8)
        thetas, phis = _direction_grid(8)
        dirs = [
            BlochDirection.from_angles(t, p)
            for t in thetas
            for p in phis
        ]
        brute = max(
            correlation_at(state, (1, 3), a, b) for a in dirs for b in dirs
        )
        assert fast == pytest.approx(brute, abs=1e-10)


def test_bloch_direction_validation():
    with pytest.raises(ValueError):
        BlochDirection(1.0, 1.0, 0.0)
    d = BlochDirection.from_angles(0.3, 1.2)
    assert np.linalg.norm(d.as_array()) == pytest.approx(1.0, abs=1e-12)
