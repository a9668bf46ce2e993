"""Entanglement and classical-correlation measures for qubit pairs.

Concurrence acts on 2-qubit pure states; the classical correlation Q acts
on any pair of sites inside a larger pure state.  Q is the maximum of the
connected correlator <s_a s_b> - <s_a><s_b> over all pairs of Bloch
measurement directions, which for a bilinear form equals the top singular
value of the 3x3 connected-correlation matrix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import PureState, QubitIndex, reduced_density_matrix

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class BlochDirection:
    """Unit vector on the Bloch sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = self.x**2 + self.y**2 + self.z**2
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"direction is not a unit vector: |v|^2 = {norm!r}")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "BlochDirection":
        st = np.sin(theta)
        v = np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])
        v /= np.linalg.norm(v)
        return cls(*v)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def operator(self) -> np.ndarray:
        return self.x * SIGMA_X + self.y * SIGMA_Y + self.z * SIGMA_Z


@dataclass(frozen=True)
class CorrelationResult:
    """Maximal connected correlator and the directions achieving it."""

    q: float
    alpha_hat: BlochDirection
    beta_hat: BlochDirection


def _pair_amplitudes(pair_state) -> np.ndarray:
    if isinstance(pair_state, PureState):
        if pair_state.num_qubits != 2:
            raise ValueError("concurrence is defined for 2-qubit states")
        return pair_state.amplitudes
    amps = np.asarray(pair_state, dtype=complex).reshape(-1)
    if amps.shape != (4,):
        raise ValueError("expected 4 amplitudes")
    norm_sq = float(np.vdot(amps, amps).real)
    if abs(norm_sq - 1.0) > 1e-6:
        raise ValueError(f"state is not normalized: sum |a|^2 = {norm_sq!r}")
    return amps


def concurrence(pair_state) -> float:
    """2 |ad - bc| for amplitudes (a, b, c, d).

    The value is unchanged by reversing the component order, so both the
    (|11>,|10>,|01>,|00>) convention used by ``reduce_to_pair`` and the
    plain index order are accepted.
    """
    v = _pair_amplitudes(pair_state)
    return min(1.0, 2.0 * abs(v[0] * v[3] - v[1] * v[2]))


def concurrence_purity_oracle(pair_state) -> float:
    """Independent route: C = sqrt(2 (1 - Tr rho_A^2)) for pure 2-qubit states."""
    v = _pair_amplitudes(pair_state).reshape(2, 2)
    rho_a = v @ v.conj().T
    purity = float(np.sum(np.abs(rho_a) ** 2))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


def _single_site_bloch(rho: np.ndarray) -> np.ndarray:
    return np.array([np.trace(rho @ p).real for p in PAULIS])


def _connected_correlation_matrix(
    state: PureState, pair: tuple[QubitIndex, QubitIndex]
) -> np.ndarray:
    """M_ij = <s_i s_j> - <s_i><s_j> for i, j in {x, y, z} on the pair."""
    if pair[0] == pair[1]:
        raise ValueError("pair sites must be distinct")
    rho = reduced_density_matrix(state, pair).reshape(2, 2, 2, 2)
    rho_a = np.einsum("ikjk->ij", rho)
    rho_b = np.einsum("kikj->ij", rho)
    m_a = _single_site_bloch(rho_a)
    m_b = _single_site_bloch(rho_b)
    t = np.empty((3, 3))
    for i, pa in enumerate(PAULIS):
        for j, pb in enumerate(PAULIS):
            t[i, j] = np.einsum("ijkl,ki,lj->", rho, pa, pb).real
    return t - np.outer(m_a, m_b)


def correlation_at(
    state: PureState,
    pair: tuple[QubitIndex, QubitIndex],
    alpha_hat: BlochDirection,
    beta_hat: BlochDirection,
) -> float:
    """Connected correlator of the two Bloch observables at fixed directions."""
    m = _connected_correlation_matrix(state, pair)
    return float(alpha_hat.as_array() @ m @ beta_hat.as_array())


def classical_correlation_q(
    state: PureState, pair: tuple[QubitIndex, QubitIndex]
) -> CorrelationResult:
    """Maximize the connected correlator over both Bloch directions.

    The maximum of a bilinear form over unit vectors is the top singular
    value; the singular vectors are the optimizing directions.
    """
    m = _connected_correlation_matrix(state, pair)
    u, s, vh = np.linalg.svd(m)
    return CorrelationResult(
        q=float(s[0]),
        alpha_hat=BlochDirection(*(u[:, 0] / np.linalg.norm(u[:, 0]))),
        beta_hat=BlochDirection(*(vh[0] / np.linalg.norm(vh[0]))),
    )


def _direction_grid(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    thetas = np.linspace(0.0, np.pi, resolution + 1)
    phis = np.linspace(0.0, 2 * np.pi, 2 * resolution, endpoint=False)
    return thetas, phis


def classical_correlation_q_grid(
    state: PureState, pair: tuple[QubitIndex, QubitIndex], resolution: int
) -> float:
    """Grid-search oracle for the same maximization.

    Evaluates the connected correlator on a (theta, phi) product grid on
    both spheres (resolution steps over theta, 2*resolution over phi) and
    returns the exact grid maximum.  The inner sphere is reduced
    analytically per phi-ring, which leaves the result identical to brute
    force over all grid pairs.
    """
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    m = _connected_correlation_matrix(state, pair)
    thetas, phis = _direction_grid(resolution)
    st, ct = np.sin(thetas), np.cos(thetas)
    alphas = np.empty((thetas.size * phis.size, 3))
    alphas[:, 0] = np.outer(st, np.cos(phis)).ravel()
    alphas[:, 1] = np.outer(st, np.sin(phis)).ravel()
    alphas[:, 2] = np.repeat(ct, phis.size)

    dphi = 2 * np.pi / phis.size
    best = -np.inf
    for chunk in np.array_split(alphas, max(1, alphas.shape[0] // 8192)):
        w = chunk @ m  # rows: M^T alpha
        r = np.hypot(w[:, 0], w[:, 1])
        # nearest phi-grid angle to each w's azimuth
        offset = np.mod(np.arctan2(w[:, 1], w[:, 0]), dphi)
        ring = r * np.cos(np.minimum(offset, dphi - offset))
        vals = np.outer(st, ring) + np.outer(ct, w[:, 2])
        best = max(best, float(vals.max()))
    return best
