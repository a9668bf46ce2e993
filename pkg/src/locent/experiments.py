"""Ensemble and time-sweep studies built on the localization optimizer.

All studies derive one sub-seed per sample from the master seed, so any
record can be regenerated in isolation: the sampled state is
``haar_random_state(n, record.seed)`` and its optimizer start seed is
``optimizer_seed_for(record.seed)``.  Sample evaluations are independent;
they are processed in blocks that may be spread over worker processes
(capped by the LOCENT_THREADS environment variable, 0 = auto) and merged
order-independently, so results do not depend on the worker count.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import IsingChain, evolve
from .entanglement import classical_correlation_q
from .localize import LocalizationResult, OptimizerConfig, maximize_many
from .qstate import PureState, haar_random_state

NLE_FLOOR = 1e-9  # records below this NLE are excluded from relative differences
_BLOCK_STATES = 64


@dataclass(frozen=True)
class DifferenceRecord:
    seed: int
    le: float
    nle: float
    diff: float
    rel_diff: float | None


@dataclass(frozen=True)
class EnsembleSummary:
    num_qubits: int
    samples: int
    mr: float
    md: float
    a: float
    argmax_seed: int


@dataclass(frozen=True)
class SweepPoint:
    time: float
    le: float
    nle: float
    q: float


@dataclass(frozen=True)
class BinSpread:
    le_lo: float
    le_hi: float
    count: int
    c_min: float
    c_max: float


def sample_seed(master_seed: int, index: int) -> int:
    """Sub-seed of sample ``index`` in a study run with ``master_seed``."""
    return int(np.random.SeedSequence([master_seed, index]).generate_state(1, np.uint64)[0])


def optimizer_seed_for(state_seed: int) -> int:
    """Optimizer start seed used for the state drawn from ``state_seed``."""
    return int(np.random.SeedSequence([state_seed, 1]).generate_state(1, np.uint64)[0])


def resolve_workers(workers: int | None = None) -> int:
    """Worker processes to use; ``None`` defers to LOCENT_THREADS (0 = auto)."""
    if workers is None:
        try:
            workers = int(os.environ.get("LOCENT_THREADS", "0"))
        except ValueError:
            workers = 0
    if workers <= 0:
        workers = os.cpu_count() or 1
    return max(1, workers)


def _default_pair(num_qubits: int, pair) -> tuple[int, int]:
    return (1, num_qubits) if pair is None else (int(pair[0]), int(pair[1]))


def _map_blocks(fn, blocks, workers):
    if workers <= 1 or len(blocks) <= 1:
        return [fn(b) for b in blocks]
    with ProcessPoolExecutor(max_workers=min(workers, len(blocks))) as pool:
        return list(pool.map(fn, blocks))


def _study_blocks(num_qubits, pair, samples, seed, config, states):
    """(block args, record seeds) for a sampled or injected ensemble."""
    if states is None:
        seeds = [sample_seed(seed, k) for k in range(samples)]
        entries = [(s, None) for s in seeds]
    else:
        states = list(states)
        if len(states) != samples:
            raise ValueError("states, when given, must match the sample count")
        entries = [(k, states[k]) for k in range(samples)]
    blocks = [
        (num_qubits, pair, entries[lo : lo + _BLOCK_STATES], config)
        for lo in range(0, len(entries), _BLOCK_STATES)
    ]
    return blocks


def _materialize(num_qubits, entries):
    return [
        haar_random_state(num_qubits, key) if state is None else state
        for key, state in entries
    ]


def _diff_block(args):
    num_qubits, pair, entries, config = args
    states = _materialize(num_qubits, entries)
    problems = []
    for i, (key, _) in enumerate(entries):
        opt_seed = optimizer_seed_for(key)
        problems += [(i, "le", opt_seed), (i, "nle", opt_seed)]
    results = maximize_many(states, pair, problems, config)
    return [
        (key, results[2 * i].value, results[2 * i + 1].value)
        for i, (key, _) in enumerate(entries)
    ]


def run_difference_study(
    num_qubits: int,
    pair: tuple[int, int] | None,
    samples: int,
    seed: int,
    config: OptimizerConfig,
    *,
    states: Sequence[PureState] | None = None,
    workers: int | None = None,
) -> tuple[EnsembleSummary, list[DifferenceRecord]]:
    """LE and NLE over a random (or injected) ensemble, with MR/MD/A summary.

    MR is the largest relative difference (LE - NLE) / NLE over records
    with NLE >= 1e-9, MD the largest absolute difference, and A the NLE of
    the record achieving MD.  When ``states`` is given, record seeds are
    the sample indices.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    pair = _default_pair(num_qubits, pair)
    blocks = _study_blocks(num_qubits, pair, samples, seed, config, states)
    rows = [row for out in _map_blocks(_diff_block, blocks, resolve_workers(workers)) for row in out]

    records = []
    for key, le, nle in rows:
        diff = le - nle
        rel = diff / nle if nle >= NLE_FLOOR else None
        records.append(DifferenceRecord(key, le, nle, diff, rel))

    best = max(range(len(records)), key=lambda i: records[i].diff)
    rels = [r.rel_diff for r in records if r.rel_diff is not None]
    summary = EnsembleSummary(
        num_qubits=num_qubits,
        samples=samples,
        mr=max(rels) if rels else 0.0,
        md=records[best].diff,
        a=records[best].nle,
        argmax_seed=records[best].seed,
    )
    return summary, records


def find_max_diff_state(
    num_qubits: int,
    pair: tuple[int, int] | None,
    samples: int,
    seed: int,
    config: OptimizerConfig,
    *,
    workers: int | None = None,
) -> PureState:
    """The sampled state with the largest LE - NLE gap."""
    summary, _ = run_difference_study(
        num_qubits, pair, samples, seed, config, workers=workers
    )
    return haar_random_state(num_qubits, summary.argmax_seed)


def _sweep_block(args):
    chain_n, coupling_j, amplitudes, times, pair, config = args
    chain = IsingChain(chain_n, coupling_j)
    initial = PureState(chain_n, amplitudes)
    states = [evolve(chain, initial, t) for t in times]
    problems = []
    for i in range(len(states)):
        problems += [(i, "le", config.seed), (i, "nle", config.seed)]
    results = maximize_many(states, pair, problems, config)
    return [
        (
            float(t),
            results[2 * i].value,
            results[2 * i + 1].value,
            classical_correlation_q(states[i], pair).q,
        )
        for i, t in enumerate(times)
    ]


def run_time_sweep(
    initial: PureState,
    chain: IsingChain,
    pair: tuple[int, int] | None,
    t_min: float,
    t_max: float,
    steps: int,
    config: OptimizerConfig,
    *,
    workers: int | None = None,
) -> list[SweepPoint]:
    """LE, NLE and Q of the evolved state on a uniform time grid.

    The supplied state is the t = 0 point; every grid point is evolved
    directly from it and optimized with the same configuration, so the
    t = 0 entry matches a direct evaluation of ``initial`` exactly.
    """
    if steps < 2:
        raise ValueError("need at least two sweep steps")
    if initial.num_qubits != chain.num_qubits:
        raise ValueError("initial state and chain sizes differ")
    pair = _default_pair(initial.num_qubits, pair)
    times = np.linspace(t_min, t_max, steps)
    per_block = max(1, _BLOCK_STATES // 2)
    blocks = [
        (
            chain.num_qubits,
            chain.coupling_j,
            initial.amplitudes,
            times[lo : lo + per_block],
            pair,
            config,
        )
        for lo in range(0, steps, per_block)
    ]
    rows = [row for out in _map_blocks(_sweep_block, blocks, resolve_workers(workers)) for row in out]
    return [SweepPoint(*row) for row in rows]


def _spread_block(args):
    num_qubits, pair, entries, config = args
    states = _materialize(num_qubits, entries)
    problems = [
        (i, "le", optimizer_seed_for(key)) for i, (key, _) in enumerate(entries)
    ]
    results = maximize_many(states, pair, problems, config)
    out = []
    for res in results:
        cs = [b.concurrence for b in res.branches if b.concurrence is not None]
        out.append((res.value, min(cs), max(cs)))
    return out


def run_branch_spread_study(
    num_qubits: int,
    pair: tuple[int, int] | None,
    samples: int,
    le_bin_width: float,
    seed: int,
    config: OptimizerConfig,
    *,
    states: Sequence[PureState] | None = None,
    workers: int | None = None,
) -> list[BinSpread]:
    """Bin states by LE and record the branch-concurrence spread per bin.

    For each sampled state the branches of its LE-optimal basis are
    inspected; within an LE bin the minimum and maximum concurrence over
    all branches of all member states is kept.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if not 0 < le_bin_width <= 1:
        raise ValueError("bin width must be in (0, 1]")
    pair = _default_pair(num_qubits, pair)
    blocks = _study_blocks(num_qubits, pair, samples, seed, config, states)
    rows = [row for out in _map_blocks(_spread_block, blocks, resolve_workers(workers)) for row in out]

    nbins = int(np.ceil(1.0 / le_bin_width))
    stats: dict[int, list] = {}
    for le, c_min, c_max in rows:
        idx = min(int(le / le_bin_width), nbins - 1)
        rec = stats.setdefault(idx, [0, np.inf, -np.inf])
        rec[0] += 1
        rec[1] = min(rec[1], c_min)
        rec[2] = max(rec[2], c_max)
    return [
        BinSpread(
            le_lo=idx * le_bin_width,
            le_hi=min(1.0, (idx + 1) * le_bin_width),
            count=count,
            c_min=c_min,
            c_max=c_max,
        )
        for idx, (count, c_min, c_max) in sorted(stats.items())
    ]
