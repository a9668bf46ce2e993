"""Dense pure states of small qubit registers.

Conventions used throughout the package:

* Sites are labelled 1..n.  Site 1 is the most significant bit of the
  amplitude index, so ``amplitudes.reshape((2,) * n)`` puts site ``s`` on
  axis ``s - 1`` and ``make_basis_state(3, "110")`` is ``e_6``.
* A branch whose probability falls below ``PROB_FLOOR`` is treated as
  non-occurring: it has no post-measurement state.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

# 1-based site label inside a register.
QubitIndex = int

NORM_ATOL = 1e-10
PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector of an ``num_qubits``-qubit register."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = self.num_qubits
        if not 2 <= n <= 10:
            raise ValueError(f"num_qubits must be in [2, 10], got {n}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (2**n,):
            raise ValueError(
                f"expected {2**n} amplitudes for {n} qubits, got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: sum |a|^2 = {norm_sq!r}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per site (site s on axis s - 1)."""
        return self.amplitudes.reshape((2,) * self.num_qubits)


@dataclass(frozen=True)
class SingleQubitUnitary:
    """One-qubit rotation diag(e^{i theta1}, e^{i theta2}) @ R(alpha, beta).

    R(alpha, beta) = [[cos a, -sin a e^{-ib}], [sin a e^{ib}, cos a]].
    """

    theta1: float = 0.0
    theta2: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0

    def matrix(self) -> np.ndarray:
        c, s = np.cos(self.alpha), np.sin(self.alpha)
        p1, p2 = np.exp(1j * self.theta1), np.exp(1j * self.theta2)
        return np.array(
            [
                [p1 * c, -p1 * s * np.exp(-1j * self.beta)],
                [p2 * s * np.exp(1j * self.beta), p2 * c],
            ]
        )

    def inverse(self) -> "SingleQubitUnitary":
        """Parameters realizing the adjoint of this rotation."""
        return SingleQubitUnitary(
            -self.theta1,
            -self.theta2,
            self.alpha,
            self.beta + np.pi + self.theta2 - self.theta1,
        )


def _check_site(num_qubits: int, site: int) -> int:
    if not 1 <= site <= num_qubits:
        raise ValueError(f"site {site} out of range for {num_qubits} qubits")
    return site


def make_basis_state(num_qubits: int, bits: str) -> PureState:
    """Computational basis state |bits>, first character = site 1."""
    if len(bits) != num_qubits or any(b not in "01" for b in bits):
        raise ValueError(f"bits {bits!r} do not describe {num_qubits} qubits")
    amps = np.zeros(2**num_qubits, dtype=complex)
    amps[int(bits, 2)] = 1.0
    return PureState(num_qubits, amps)


def ghz(num_qubits: int) -> PureState:
    """(|0...0> + |1...1>) / sqrt(2)."""
    if num_qubits < 2:
        raise ValueError("GHZ state needs at least 2 qubits")
    amps = np.zeros(2**num_qubits, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return PureState(num_qubits, amps)


def haar_random_state(num_qubits: int, seed: int) -> PureState:
    """Haar-distributed pure state: normalized i.i.d. complex Gaussians."""
    rng = np.random.default_rng(seed)
    dim = 2**num_qubits
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(num_qubits, z / np.linalg.norm(z))


def apply_local_unitary(
    state: PureState, site: QubitIndex, u: SingleQubitUnitary | np.ndarray
) -> PureState:
    """Apply a one-qubit unitary to ``site``, identity elsewhere."""
    _check_site(state.num_qubits, site)
    mat = u.matrix() if isinstance(u, SingleQubitUnitary) else np.asarray(u, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    t = np.tensordot(mat, state.tensor(), axes=([1], [site - 1]))
    t = np.moveaxis(t, 0, site - 1)
    return PureState(state.num_qubits, t.reshape(-1))


def project_qubit(
    state: PureState, site: QubitIndex, outcome: int
) -> tuple[float, PureState | None]:
    """Project ``site`` onto |outcome> in the computational basis.

    Returns the branch probability and the normalized post-measurement state
    of the full register (measured qubit left in |outcome>), or ``None`` when
    the probability is below ``PROB_FLOOR``.
    """
    _check_site(state.num_qubits, site)
    if outcome not in (0, 1):
        raise ValueError("outcome must be 0 or 1")
    t = state.tensor()
    idx = [slice(None)] * state.num_qubits
    idx[site - 1] = outcome
    kept = t[tuple(idx)]
    prob = float(np.vdot(kept, kept).real)
    if prob < PROB_FLOOR:
        return prob, None
    post = np.zeros_like(t)
    post[tuple(idx)] = kept / np.sqrt(prob)
    return prob, PureState(state.num_qubits, post.reshape(-1))


def reduce_to_pair(
    state: PureState, sites_measured_out: list[tuple[QubitIndex, int]]
) -> PureState:
    """Collapse the listed sites onto the given bits and keep the other two.

    The four returned amplitudes are ordered (|11>, |10>, |01>, |00>), the
    component order the concurrence formula reads as (a, b, c, d); the first
    bit belongs to the lower-numbered remaining site.
    """
    n = state.num_qubits
    measured = {}
    for site, bit in sites_measured_out:
        _check_site(n, site)
        if site in measured:
            raise ValueError(f"site {site} listed twice")
        if bit not in (0, 1):
            raise ValueError("outcome bits must be 0 or 1")
        measured[site] = bit
    remaining = [s for s in range(1, n + 1) if s not in measured]
    if len(remaining) != 2:
        raise ValueError(f"{len(remaining)} qubits left after measurement, expected 2")
    idx = [slice(None)] * n
    for site, bit in measured.items():
        idx[site - 1] = bit
    kept = state.tensor()[tuple(idx)].reshape(-1)  # (|00>, |01>, |10>, |11>)
    prob = float(np.vdot(kept, kept).real)
    if prob < PROB_FLOOR:
        raise ValueError("zero-probability branch has no post-measurement state")
    return PureState(2, kept[::-1] / np.sqrt(prob))


def reduced_density_matrix(
    state: PureState, sites: tuple[QubitIndex, ...]
) -> np.ndarray:
    """Partial trace down to ``sites``, kept in the order given."""
    n = state.num_qubits
    if len(set(sites)) != len(sites):
        raise ValueError("sites must be distinct")
    axes = [_check_site(n, s) - 1 for s in sites]
    rest = [a for a in range(n) if a not in axes]
    x = state.tensor().transpose(axes + rest).reshape(2 ** len(axes), -1)
    return x @ x.conj().T


def reduced_density_purity(state: PureState, pair: tuple[QubitIndex, QubitIndex]) -> float:
    """Tr(rho^2) of the two-site reduced density operator."""
    if pair[0] == pair[1]:
        raise ValueError("pair sites must be distinct")
    rho = reduced_density_matrix(state, pair)
    return float(np.sum(np.abs(rho) ** 2))


def save_state(state: PureState, path) -> None:
    """Write a state file: {"n": int, "re": [...], "im": [...]}."""
    obj = {
        "n": state.num_qubits,
        "re": [float(a) for a in state.amplitudes.real],
        "im": [float(a) for a in state.amplitudes.imag],
    }
    with open(path, "w") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def load_state(path) -> PureState:
    """Read a state file, re-normalizing when the norm is off by < 1e-6."""
    with open(path) as fh:
        obj = json.load(fh)
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state file: {exc}") from exc
    if not 2 <= n <= 10:
        raise ValueError(f"state file n={n} outside supported range [2, 10]")
    if re.shape != (2**n,) or im.shape != (2**n,):
        raise ValueError("state file amplitude arrays have the wrong length")
    amps = re + 1j * im
    if not np.all(np.isfinite(amps.view(float))):
        raise ValueError("state file contains non-finite amplitudes")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) >= 1e-6:
        raise ValueError(f"state file norm {norm!r} deviates by >= 1e-6")
    return PureState(n, amps / norm)
