"""Localizing entanglement onto a pair of sites by measuring the rest.

Every non-pair site is measured projectively in a rotated basis.  A basis
is parametrized per site by angles (alpha, beta) through the rotation

    u(alpha, beta) = [[cos a, -sin a e^{-ib}], [sin a e^{ib}, cos a]],

applied directly to the state before computational-basis projection, so a
branch amplitude for outcome bits j is <j| (u_1 x ... x u_m) |psi> on the
measured factor.  Diagonal phase factors multiplying u commute with the
projectors and only re-phase whole branches, which is why two angles per
site suffice.

Two figures of merit over the 2^(n-2) branches:

* weighted average  sum_j P_j C_j   (``le``)
* worst branch      min_j C_j       (``nle``)

both maximized over all measurement bases by seeded multi-start
Nelder-Mead over the box alpha in [0, pi/2], beta in [0, 2 pi].  Restart
trajectories are independent, so many (state, objective) problems can be
advanced in one vectorized batch; ``maximize_many`` exploits that and
``maximize`` is its single-problem case.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import qmc

from ._nm import minimize_batch
from .qstate import PROB_FLOOR, PureState, QubitIndex

OBJECTIVES = ("le", "nle")

_HALF_PI = np.pi / 2
_TWO_PI = 2 * np.pi
_MAX_BATCH_ROWS = 3072


def canonical_angles(alpha: float, beta: float) -> tuple[float, float]:
    """Fold angles into alpha in [0, pi/2], beta in [0, 2 pi).

    u(alpha + pi, beta) = -u(alpha, beta) and u(alpha + pi/2, beta) swaps
    the two outcomes, so the fold changes branches at most by relabeling.
    """
    a = float(np.mod(alpha, np.pi))
    if a > _HALF_PI:
        a -= _HALF_PI
    return a, float(np.mod(beta, _TWO_PI))


@dataclass(frozen=True)
class MeasurementBasis:
    """Per-site measurement angles for the sites measured out.

    Angles are canonicalized on construction; ``angles[k]`` belongs to
    ``measured_sites[k]``.
    """

    measured_sites: tuple[QubitIndex, ...]
    angles: np.ndarray  # shape (m, 2)

    def __post_init__(self):
        sites = tuple(int(s) for s in self.measured_sites)
        if len(set(sites)) != len(sites) or not sites:
            raise ValueError("measured sites must be distinct and non-empty")
        angles = np.asarray(self.angles, dtype=float).reshape(len(sites), 2)
        angles = np.array([canonical_angles(a, b) for a, b in angles])
        angles.flags.writeable = False
        object.__setattr__(self, "measured_sites", sites)
        object.__setattr__(self, "angles", angles)

    def site_matrices(self) -> np.ndarray:
        """(m, 2, 2) rotation matrices, one per measured site."""
        return _site_unitaries(self.angles[None])[0]


@dataclass(frozen=True)
class BranchOutcome:
    """One joint measurement outcome on the measured sites."""

    outcome_bits: str
    probability: float
    post_pair_state: PureState | None
    concurrence: float | None


@dataclass(frozen=True)
class OptimizerConfig:
    seed: int
    restarts: int = 24
    max_evaluations: int = 2000
    objective_tolerance: float = 1e-8

    def __post_init__(self):
        if self.restarts < 1 or self.max_evaluations < 10:
            raise ValueError("need at least 1 restart and 10 evaluations")


@dataclass(frozen=True)
class OptimizerReport:
    restarts: int
    evaluations: int
    best_restart: int


@dataclass(frozen=True)
class LocalizationResult:
    value: float
    basis: MeasurementBasis
    branches: tuple[BranchOutcome, ...]
    objective: str
    optimizer_report: OptimizerReport


def _check_problem(state: PureState, pair, measured_sites=None):
    n = state.num_qubits
    a, b = pair
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise ValueError(f"invalid pair {pair} for {n} qubits")
    rest = tuple(s for s in range(1, n + 1) if s not in (a, b))
    if not rest:
        raise ValueError("at least one site must be measured")
    if measured_sites is not None and sorted(measured_sites) != list(rest):
        raise ValueError(
            f"basis measures {measured_sites}, expected exactly the non-pair sites {rest}"
        )
    return rest


def _pair_matrix(state: PureState, pair, measured_sites) -> np.ndarray:
    """Amplitudes arranged (measured outcome index, pair index 0..3)."""
    axes = [s - 1 for s in measured_sites] + [pair[0] - 1, pair[1] - 1]
    return np.ascontiguousarray(
        state.tensor().transpose(axes).reshape(2 ** len(measured_sites), 4)
    )


def _site_unitaries(angles: np.ndarray) -> np.ndarray:
    """(..., m, 2) angle pairs -> (..., m, 2, 2) rotation matrices."""
    a, b = angles[..., 0], angles[..., 1]
    c, s = np.cos(a), np.sin(a)
    phase = np.exp(1j * b)
    u = np.empty(angles.shape[:-1] + (2, 2), dtype=complex)
    u[..., 0, 0] = c
    u[..., 0, 1] = -s * phase.conj()
    u[..., 1, 0] = s * phase
    u[..., 1, 1] = c
    return u


def _rotations(angles: np.ndarray) -> np.ndarray:
    """(B, m, 2) angles -> (B, 2^m, 2^m) tensor-product rotations."""
    u = _site_unitaries(angles)
    m = angles.shape[1]
    rot = u[:, 0]
    dim = 2
    for s in range(1, m):
        rot = np.einsum("bij,bkl->bikjl", rot, u[:, s]).reshape(-1, 2 * dim, 2 * dim)
        dim *= 2
    return rot


def _branch_amplitudes(psi_mat: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Unnormalized branch-pair amplitudes, (B, 2^m, 4); branch rows are
    indexed by outcome bits with the first measured site most significant."""
    return _rotations(angles) @ psi_mat


def _branch_weights(amps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-branch probability P and P*C from unnormalized amplitudes."""
    p = np.einsum("...jk,...jk->...j", amps.real, amps.real) + np.einsum(
        "...jk,...jk->...j", amps.imag, amps.imag
    )
    pc = 2.0 * np.abs(amps[..., 0] * amps[..., 3] - amps[..., 1] * amps[..., 2])
    return p, pc


def _scores(amps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(le, nle) objective values per batch row."""
    p, pc = _branch_weights(amps)
    live = p >= PROB_FLOOR
    le = np.where(live, pc, 0.0).sum(axis=-1)
    c = np.divide(pc, p, out=np.full_like(pc, np.inf), where=live)
    return le, c.min(axis=-1)


def _objective_batch(psi_mat: np.ndarray, x: np.ndarray, objective: str) -> np.ndarray:
    """Objective values for a (B, 2m) batch of flattened angle vectors."""
    amps = _branch_amplitudes(psi_mat, x.reshape(x.shape[0], -1, 2))
    le, nle = _scores(amps)
    return le if objective == "le" else nle


def enumerate_branches(
    state: PureState, pair: tuple[QubitIndex, QubitIndex], basis: MeasurementBasis
) -> list[BranchOutcome]:
    """All 2^(n-2) measurement branches of the basis, with pair states scored."""
    _check_problem(state, pair, basis.measured_sites)
    psi_mat = _pair_matrix(state, pair, basis.measured_sites)
    amps = _branch_amplitudes(psi_mat, basis.angles[None])[0]
    p, pc = _branch_weights(amps[None, :, :])
    p, pc = p[0], pc[0]
    m = len(basis.measured_sites)
    branches = []
    for j in range(2**m):
        bits = format(j, f"0{m}b")
        if p[j] < PROB_FLOOR:
            branches.append(BranchOutcome(bits, float(p[j]), None, None))
            continue
        post = PureState(2, amps[j, ::-1] / np.sqrt(p[j]))
        branches.append(
            BranchOutcome(bits, float(p[j]), post, float(min(1.0, pc[j] / p[j])))
        )
    return branches


def le_objective(branches) -> float:
    """Probability-weighted average branch concurrence."""
    return float(
        sum(b.probability * b.concurrence for b in branches if b.concurrence is not None)
    )


def nle_objective(branches) -> float:
    """Worst concurrence among branches that actually occur."""
    live = [b.concurrence for b in branches if b.concurrence is not None]
    if not live:
        raise ValueError("no branch above the probability floor")
    return float(min(live))


def _solve_problems(psi_stack, prob_state, prob_is_le, prob_seeds, config):
    """Multi-start search for several (state, objective) problems in lockstep.

    Returns per-problem optimal angle vectors, total evaluations, and the
    winning restart index.  Row trajectories are independent, so results
    are identical to solving each problem on its own.
    """
    p_count = len(prob_state)
    m = int(np.log2(psi_stack.shape[1]))
    dim = 2 * m
    lower = np.zeros(dim)
    upper = np.tile([_HALF_PI, _TWO_PI], m)
    r = config.restarts

    starts = np.empty((p_count * r, dim))
    cache: dict[int, np.ndarray] = {}
    for k, seed in enumerate(prob_seeds):
        pts = cache.get(seed)
        if pts is None:
            pts = qmc.Halton(d=dim, scramble=True, seed=seed).random(r)
            cache[seed] = pts
        starts[k * r : (k + 1) * r] = lower + pts * (upper - lower)

    prob_state = np.asarray(prob_state)
    prob_is_le = np.asarray(prob_is_le, dtype=bool)

    def make_fun(row_problem):
        def fun(x, rows):
            pr = row_problem[rows]
            amps = _rotations(x.reshape(x.shape[0], m, 2)) @ psi_stack[prob_state[pr]]
            le, nle = _scores(amps)
            return -np.where(prob_is_le[pr], le, nle)

        return fun

    xs, fs, nfev = minimize_batch(
        make_fun(np.repeat(np.arange(p_count), r)),
        starts,
        lower,
        upper,
        fatol=config.objective_tolerance,
        xatol=1e-6,
        maxfev=config.max_evaluations,
    )
    fs = fs.reshape(p_count, r)
    best_r = fs.argmin(axis=1)
    take = np.arange(p_count)
    x_best = xs.reshape(p_count, r, dim)[take, best_r]
    f_best = fs[take, best_r]

    # polish: restart the simplex once from each winner
    xp, fp, nfev_p = minimize_batch(
        make_fun(take),
        x_best,
        lower,
        upper,
        fatol=config.objective_tolerance,
        xatol=1e-6,
        maxfev=config.max_evaluations,
    )
    improved = fp < f_best
    x_star = np.where(improved[:, None], xp, x_best)
    evaluations = nfev.reshape(p_count, r).sum(axis=1) + nfev_p
    return x_star, evaluations, best_r


def maximize_many(
    states: Sequence[PureState],
    pair: tuple[QubitIndex, QubitIndex],
    problems: Sequence[tuple[int, str, int]],
    config: OptimizerConfig,
) -> list[LocalizationResult]:
    """Solve many localization problems over a shared site pair at once.

    ``problems`` lists (state index, objective, start seed) triples; all
    states must have the same register size.  Equivalent to calling
    ``maximize`` per problem with ``config`` reseeded, only faster.
    """
    if not states or not problems:
        return []
    n = states[0].num_qubits
    if any(s.num_qubits != n for s in states):
        raise ValueError("all states must have the same number of qubits")
    measured = _check_problem(states[0], pair)
    for idx, objective, _ in problems:
        if objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if not 0 <= idx < len(states):
            raise ValueError(f"state index {idx} out of range")
    psi_stack = np.stack([_pair_matrix(s, pair, measured) for s in states])
    m = len(measured)

    results: list[LocalizationResult] = []
    block = max(1, _MAX_BATCH_ROWS // config.restarts)
    for lo in range(0, len(problems), block):
        chunk = problems[lo : lo + block]
        x_star, evaluations, best_r = _solve_problems(
            psi_stack,
            [c[0] for c in chunk],
            [c[1] == "le" for c in chunk],
            [c[2] for c in chunk],
            config,
        )
        for k, (idx, objective, _) in enumerate(chunk):
            basis = MeasurementBasis(measured, x_star[k].reshape(m, 2))
            branches = enumerate_branches(states[idx], pair, basis)
            value = le_objective(branches) if objective == "le" else nle_objective(branches)
            report = OptimizerReport(
                restarts=config.restarts,
                evaluations=int(evaluations[k]),
                best_restart=int(best_r[k]),
            )
            results.append(
                LocalizationResult(value, basis, tuple(branches), objective, report)
            )
    return results


def maximize(
    state: PureState,
    pair: tuple[QubitIndex, QubitIndex],
    objective: str,
    config: OptimizerConfig,
) -> LocalizationResult:
    """Maximize the chosen objective over all measurement bases.

    Multi-start Nelder-Mead from scrambled-Halton starts; the start
    sequence depends only on ``config.seed``, so adding restarts never
    loses previously found optima.  A final polish restarts the simplex
    from the best point.
    """
    return maximize_many([state], pair, [(0, objective, config.seed)], config)[0]


def maximize_grid_oracle(
    state: PureState,
    pair: tuple[QubitIndex, QubitIndex],
    objective: str,
    resolution: int,
) -> float:
    """Exhaustive product-grid maximum of the objective (brute force).

    Cost grows as resolution^(2 (n-2)); meant for small registers as an
    independent check on the optimizer.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    measured = _check_problem(state, pair)
    psi_mat = _pair_matrix(state, pair, measured)
    m = len(measured)

    alphas = np.linspace(0.0, _HALF_PI, resolution)
    betas = np.linspace(0.0, _TWO_PI, resolution, endpoint=False)
    site = np.stack(
        [np.repeat(alphas, resolution), np.tile(betas, resolution)], axis=1
    )  # (G, 2) per-site angle combos
    g = site.shape[0]
    total = g**m

    best = -np.inf
    chunk = 8192
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        idx = np.stack(np.unravel_index(flat, (g,) * m), axis=1)  # (B, m)
        x = site[idx].reshape(flat.size, 2 * m)
        best = max(best, float(_objective_batch(psi_mat, x, objective).max()))
    return best
