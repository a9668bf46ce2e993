"""Nearest-neighbour sigma_x sigma_x chain and its exact time evolution.

H = J sum_k X_k X_{k+1} over an open chain (hbar = 1, so time is in units
of 1/J).  Every bond term commutes with every other, so the propagator
factorizes exactly:

    e^{-iHt} = prod_k [cos(Jt) I - i sin(Jt) X_k X_{k+1}]

and each factor is a pair of axis flips on the amplitude tensor.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import PureState


@dataclass(frozen=True)
class IsingChain:
    num_qubits: int
    coupling_j: float = 1.0

    def __post_init__(self):
        if self.num_qubits < 2:
            raise ValueError("chain needs at least 2 sites")
        if not np.isfinite(self.coupling_j) or self.coupling_j == 0.0:
            raise ValueError("coupling must be finite and nonzero")


def _check_register(chain: IsingChain, state: PureState) -> None:
    if state.num_qubits != chain.num_qubits:
        raise ValueError(
            f"state has {state.num_qubits} qubits, chain has {chain.num_qubits}"
        )


def evolve(chain: IsingChain, state: PureState, time: float) -> PureState:
    """Exact e^{-iHt}|psi> via the commuting two-site factors."""
    _check_register(chain, state)
    theta = chain.coupling_j * time
    c, s = np.cos(theta), np.sin(theta)
    t = state.tensor()
    for k in range(chain.num_qubits - 1):
        t = c * t - 1j * s * np.flip(t, axis=(k, k + 1))
    return PureState(chain.num_qubits, t.reshape(-1))


def hamiltonian_matrix(chain: IsingChain) -> np.ndarray:
    """Dense 2^n x 2^n Hamiltonian (real symmetric)."""
    n = chain.num_qubits
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    h = np.zeros((2**n, 2**n))
    for k in range(n - 1):
        term = np.ones((1, 1))
        for site in range(n):
            term = np.kron(term, sx if site in (k, k + 1) else np.eye(2))
        h += term
    return chain.coupling_j * h


def evolve_dense_oracle(chain: IsingChain, state: PureState, time: float) -> PureState:
    """Independent route: diagonalize H in the all-sites Hadamard basis.

    H is diagonal after conjugating with W = Hadamard^(x n); the propagator
    is W e^{-i diag t} W.  Limited to small registers (n <= 8).
    """
    _check_register(chain, state)
    n = chain.num_qubits
    if n > 8:
        raise ValueError("dense oracle supports at most 8 qubits")
    had = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    w = np.ones((1, 1))
    for _ in range(n):
        w = np.kron(w, had)
    eigs = np.einsum("ij,jk,ki->i", w, hamiltonian_matrix(chain), w)
    rotated = w @ state.amplitudes
    out = w @ (np.exp(-1j * eigs * time) * rotated)
    return PureState(n, out)
