import numpy as np
import pytest

from locent.dynamics import IsingChain, evolve, evolve_dense_oracle, hamiltonian_matrix
from locent.qstate import ghz, haar_random_state


def test_zero_time_is_identity():
    chain = IsingChain(4)
    state = haar_random_state(4, 1)
    for step in (evolve, evolve_dense_oracle):
        out = step(chain, state, 0.0)
        assert np.max(np.abs(out.amplitudes - state.amplitudes)) < 1e-15


def test_routes_agree_on_random_inputs():
    chain = IsingChain(4)
    rng = np.random.default_rng(8)
    for k in range(20):
        state = haar_random_state(4, 40 + k)
        t = float(rng.uniform(-0.5, 0.5))
        fast = evolve(chain, state, t)
        dense = evolve_dense_oracle(chain, state, t)
        assert np.max(np.abs(fast.amplitudes - dense.amplitudes)) < 1e-9
        assert abs(np.vdot(fast.amplitudes, fast.amplitudes).real - 1) < 1e-12


def test_full_period_global_sign():
    # at Jt = pi each bond factor is -I; three bonds give an overall -1
    chain = IsingChain(4, coupling_j=1.0)
    state = haar_random_state(4, 77)
    out = evolve(chain, state, np.pi)
    assert np.max(np.abs(out.amplitudes + state.amplitudes)) < 1e-12
    dense = evolve_dense_oracle(chain, state, np.pi)
    assert np.max(np.abs(out.amplitudes - dense.amplitudes)) < 1e-9


def test_group_law_and_reversal():
    chain = IsingChain(5, coupling_j=0.7)
    state = haar_random_state(5, 3)
    a = evolve(chain, evolve(chain, state, 0.31), 0.17)
    b = evolve(chain, state, 0.48)
    assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-9
    back = evolve(chain, evolve(chain, state, 0.31), -0.31)
    assert np.max(np.abs(back.amplitudes - state.amplitudes)) < 1e-10


def test_hamiltonian_is_real_symmetric_with_x_basis_spectrum():
    chain = IsingChain(4)
    h = hamiltonian_matrix(chain)
    assert np.array_equal(h, h.T)
    assert h.dtype == np.float64
    eigs = np.linalg.eigvalsh(h)
    assert set(np.round(eigs).astype(int)) == {-3, -1, 1, 3}
    assert np.max(np.abs(eigs - np.round(eigs))) < 1e-12


def test_j_scaling():
    state = ghz(4)
    fast = evolve(IsingChain(4, coupling_j=2.0), state, 0.25)
    slow = evolve(IsingChain(4, coupling_j=1.0), state, 0.5)
    assert np.max(np.abs(fast.amplitudes - slow.amplitudes)) < 1e-12


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        evolve(IsingChain(4), haar_random_state(3, 0), 0.1)
    with pytest.raises(ValueError):
        IsingChain(4, coupling_j=0.0)
