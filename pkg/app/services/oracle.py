"""
Verification oracles for N_n = sum_{m=1}^{n} 1{X_m in U}.

enumerate_paths is exact: it expands every trajectory of length n from the
start state, dropping only branches whose probability is exactly 0. simulate
is statistical: numpy PCG64 streams spawned from one SeedSequence, one stream
per fixed-size chunk of samples, so the merged tally does not depend on how
many workers process the chunks.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from app.config import settings
from app.exceptions import InvalidParametersError, TooManyPathsError
from app.models.chain import StochasticMatrix, SubsetMask
from app.models.occupancy import OccupancyTable
from app.models.simulation import EmpiricalDistribution, SimConfig

logger = logging.getLogger(__name__)

GENERATOR_NAME = "PCG64"


def _check_start(P: StochasticMatrix, start: int) -> None:
    if not 0 <= start < P.size:
        raise InvalidParametersError(f"Start state {start} outside 0..{P.size - 1}")


def _check_path_budget(P: StochasticMatrix, n: int, max_paths: Optional[int]) -> None:
    limit = settings.MAX_ENUMERATED_PATHS if max_paths is None else max_paths
    paths = P.size ** n
    if paths > limit:
        raise TooManyPathsError(paths, limit)


def enumerate_paths(P: StochasticMatrix, U: SubsetMask, n: int, start: int,
                    max_paths: Optional[int] = None) -> np.ndarray:
    """
    Exact pmf of N_n from `start` by summing over all |S|^n trajectories.

    Trajectories are expanded one step at a time; the visit count only looks
    at X_1..X_n.

    :param max_paths: Guard on |S|^n, settings.MAX_ENUMERATED_PATHS by default.
    :return: pmf over k = 0..n.
    :raises TooManyPathsError: If |S|^n exceeds the guard.
    """
    if n < 0:
        raise InvalidParametersError(f"Horizon must be non-negative, got {n}")
    U.check_length(P.size)
    _check_start(P, start)
    _check_path_budget(P, n, max_paths)

    members = U.members.astype(np.int64)
    targets = np.arange(P.size)
    probs = np.ones(1)
    states = np.array([start])
    visits = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        branch = (probs[:, None] * P.entries[states]).ravel()
        nxt = np.tile(targets, states.shape[0])
        counts = np.repeat(visits, P.size) + members[nxt]
        alive = branch > 0.0
        probs, states, visits = branch[alive], nxt[alive], counts[alive]
    return np.bincount(visits, weights=probs, minlength=n + 1)


def enumerate_table(P: StochasticMatrix, U: SubsetMask, n: int,
                    max_paths: Optional[int] = None) -> OccupancyTable:
    """enumerate_paths for every start state, as an OccupancyTable."""
    _check_path_budget(P, n, max_paths)
    values = np.stack([enumerate_paths(P, U, n, i, max_paths) for i in range(P.size)])
    return OccupancyTable(n, values, P.labels)


def _row_cdfs(P: StochasticMatrix) -> np.ndarray:
    """
    Cumulative rows with the tail pinned to 1 from the last positive entry on.

    Draws u in (0, 1] map to the first j with u <= cdf[j], so zero-probability
    targets are never selected and ties go to the lower index.
    """
    cdf = np.cumsum(P.entries, axis=1)
    for i, row in enumerate(P.entries):
        last = np.flatnonzero(row > 0.0)[-1]
        cdf[i, last:] = 1.0
    return cdf


def _chunk_sizes(samples: int, chunk: int) -> list:
    full, rest = divmod(samples, chunk)
    return [chunk] * full + ([rest] if rest else [])


def simulate(P: StochasticMatrix, U: SubsetMask, n: int, cfg: SimConfig) -> EmpiricalDistribution:
    """
    Tally N_n over cfg.samples independent trajectories started at cfg.start_state.

    Sampling is inverse-CDF on each row. Results are bit-for-bit reproducible for
    a fixed seed and numpy version, whatever cfg.workers is.
    """
    if n < 1:
        raise InvalidParametersError(f"Horizon must be at least 1, got {n}")
    U.check_length(P.size)
    _check_start(P, cfg.start_state)

    cdf = _row_cdfs(P)
    members = U.members.astype(np.int64)
    sizes = _chunk_sizes(cfg.samples, settings.SIMULATION_CHUNK_SIZE)
    seeds = np.random.SeedSequence(cfg.seed).spawn(len(sizes))

    def run_chunk(seed: np.random.SeedSequence, size: int) -> np.ndarray:
        rng = np.random.Generator(np.random.PCG64(seed))
        states = np.full(size, cfg.start_state)
        visits = np.zeros(size, dtype=np.int64)
        for _ in range(n):
            u = 1.0 - rng.random(size)
            states = (cdf[states] < u[:, None]).sum(axis=1)
            visits += members[states]
        return np.bincount(visits, minlength=n + 1)

    logger.debug(f"Simulating {cfg.samples} trajectories in {len(sizes)} chunks on {cfg.workers} workers")
    if cfg.workers == 1:
        tallies = [run_chunk(seed, size) for seed, size in zip(seeds, sizes)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            tallies = list(pool.map(run_chunk, seeds, sizes))
    counts = np.sum(tallies, axis=0)
    return EmpiricalDistribution(counts=counts, samples=cfg.samples, generator=GENERATOR_NAME)


def z_scores(empirical: EmpiricalDistribution, pmf) -> np.ndarray:
    """Per-bin (p_hat - p) / sqrt(p (1 - p) / samples); 0 where p is 0 or 1."""
    pmf = np.asarray(pmf, dtype=float)
    spread = np.sqrt(pmf * (1.0 - pmf) / empirical.samples)
    scores = np.zeros_like(pmf)
    usable = spread > 0.0
    scores[usable] = (empirical.pmf[usable] - pmf[usable]) / spread[usable]
    return scores


def chi_square(empirical: EmpiricalDistribution, pmf, min_expected: float = 10.0) -> Tuple[float, float]:
    """
    Pearson goodness-of-fit of the tally against `pmf`.

    Bins with expected count below `min_expected` are pooled; the pooled bin is
    kept only if it meets the threshold itself.

    :return: (statistic, p-value).
    """
    expected = np.asarray(pmf, dtype=float) * empirical.samples
    observed = empirical.counts.astype(float)
    kept = expected >= min_expected
    obs, exp = list(observed[kept]), list(expected[kept])
    pooled_exp = expected[~kept].sum()
    if pooled_exp >= min_expected:
        obs.append(observed[~kept].sum())
        exp.append(pooled_exp)
    obs, exp = np.array(obs), np.array(exp)
    if obs.size < 2:
        return 0.0, 1.0
    exp = exp * obs.sum() / exp.sum()
    result = stats.chisquare(obs, exp)
    return float(result.statistic), float(result.pvalue)
