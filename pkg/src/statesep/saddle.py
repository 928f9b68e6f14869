"""Saddle point of the measurement-vs-state-pair game.

The payoff is u(T, (rho, sigma)) = Tr(T rho) - Tr(T sigma).  The
measurement player maximizes the worst pair gap; the optimal margin is

    eps* = max_T min_{(rho, sigma) in S0 x S1} u(T, (rho, sigma)),

and by minimax duality it equals the smallest trace_distance between a
mixture of S0 and a mixture of S1 (half-norm convention, so no factor 2).

solve_saddle runs multiplicative-weights regret minimization for the
adversary, who keeps a distribution over the finite pair set S0 x S1 and
multiplies the weight of pair (i, j) by exp(-eta * gap) each round; the
measurement player answers the current marginal mixtures with the exact
best response (the positive-eigenspace projector of their difference,
whose value is the mixtures' trace distance).  Each round therefore emits
one certified upper bound on eps*: no measurement beats the round's
mixture distance.  Certified lower bounds come from explicit measurements:
averages of the responses played so far (valid POVM elements, being convex
combinations of projectors) evaluated against every pair.  Besides the
full running average, the solver certifies tail averages restarted at
doubling round numbers, which shed the poor early responses and tighten
the lower bound much faster; every reported bound is still the exact worst
pair gap of a concrete measurement.  The duality gap between the best
bounds of the two kinds is the convergence certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._rng import SplitMix64
from .discrimination import separation_gap, trace_distance
from .errors import DimensionMismatchError, EmptySetError
from .hermitian import POSITIVE_CUTOFF, hermitian_eig
from .states import (
    DensityMatrix,
    PovmElement,
    StateSet,
    as_mixture_weights,
    mixture_state,
)

_WEIGHT_FLOOR = 1e-300  # renormalization guard; never reached with |gap| <= 1


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for solve_saddle.

    learning_rate "auto" resolves to sqrt(8 ln(|S0| |S1|) / max_rounds),
    the standard multiplicative-weights schedule for payoffs in [-1, 1].
    `seed` is reserved for future randomized variants; the solver itself
    is deterministic.
    """

    max_rounds: int = 20000
    target_gap: float = 1e-4
    learning_rate: float | str = "auto"
    check_interval: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.max_rounds < 1:
            raise ValueError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if not self.target_gap > 0.0:
            raise ValueError(f"target_gap must be positive, got {self.target_gap}")
        if self.check_interval < 1:
            raise ValueError(f"check_interval must be >= 1, got {self.check_interval}")
        if self.learning_rate != "auto" and not float(self.learning_rate) > 0.0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")

    def resolve_learning_rate(self, n_pairs: int) -> float:
        if self.learning_rate == "auto":
            if n_pairs < 2:
                return 1.0  # single pair: weights are constant anyway
            return float(np.sqrt(8.0 * np.log(n_pairs) / self.max_rounds))
        return float(self.learning_rate)


@dataclass(frozen=True)
class Checkpoint:
    """Certified bounds after `round` rounds (both sides best-so-far)."""

    round: int
    lower_bound: float
    upper_bound: float
    gap: float


@dataclass(frozen=True)
class CertReport:
    """Outcome of sampling mixture pairs against a measurement's margin.

    violation = margin - trace_distance(mixtures); positive beyond 1e-9
    would contradict the margin being achievable.
    """

    margin: float
    max_violation: float
    worst_mu0: np.ndarray
    worst_mu1: np.ndarray
    min_distance: float
    trials: int


@dataclass(frozen=True)
class SaddleResult:
    """Solver output.

    measurement is the best certified averaged measurement; lower_bound is
    its worst pair gap (an achievable margin), upper_bound the smallest
    mixture trace distance visited (no measurement can beat it).  mu0/mu1
    are the marginals of the time-averaged adversary pair distribution;
    best_mu0/best_mu1 are the mixtures attaining upper_bound.
    """

    measurement: PovmElement
    mu0: np.ndarray
    mu1: np.ndarray
    lower_bound: float
    upper_bound: float
    gap: float
    rounds_used: int
    converged: bool
    best_mu0: np.ndarray
    best_mu1: np.ndarray
    trace: tuple[Checkpoint, ...] = field(default=())


def best_response_measurement(
    mu0, mu1, set0: StateSet, set1: StateSet
) -> PovmElement:
    """Exact maximizer of the expected gap against fixed mixtures.

    Returns the positive-eigenspace projector of the mixture difference;
    its value equals the trace distance of the two mixtures.
    """
    from .discrimination import helstrom_measurement

    rho = mixture_state(mu0, set0)
    sigma = mixture_state(mu1, set1)
    return helstrom_measurement(rho, sigma)


def _check_instance(set0: StateSet, set1: StateSet) -> None:
    if len(set0) == 0 or len(set1) == 0:
        raise EmptySetError("both state sets must be non-empty")
    if set0.dim != set1.dim:
        raise DimensionMismatchError(
            f"set dimensions differ: {set0.dim} vs {set1.dim}"
        )


def _response_projector(diff: np.ndarray) -> np.ndarray:
    """Positive-eigenspace projector of a (nearly) Hermitian difference."""
    diff = (diff + diff.conj().T) / 2.0
    dec = hermitian_eig(diff)
    cols = dec.eigenvectors[:, dec.eigenvalues > POSITIVE_CUTOFF]
    return cols @ cols.conj().T


def solve_saddle(
    set0: StateSet,
    set1: StateSet,
    config: SolverConfig | None = None,
    checkpoint_callback: Callable[[int, PovmElement, float, float], None] | None = None,
) -> SaddleResult:
    """Compute the optimal separation margin with certified two-sided bounds.

    Deterministic: identical inputs and config give bit-identical results.
    Bounds are evaluated at every multiple of check_interval and at the
    final round; the run stops as soon as upper - lower <= target_gap.
    `checkpoint_callback(round, averaged_measurement, lower, upper)` is
    invoked at each evaluation with the full running average, mainly for
    instrumentation in tests.
    """
    cfg = config or SolverConfig()
    _check_instance(set0, set1)
    d = set0.dim
    stack0 = set0.stack()
    stack1 = set1.stack()
    l0, l1 = len(set0), len(set1)
    eta = cfg.resolve_learning_rate(l0 * l1)

    # Flattened views: mixture matrices and Tr(T rho_i) as single matmuls.
    flat0 = stack0.reshape(l0, d * d)
    flat1 = stack1.reshape(l1, d * d)
    flat0_t = np.ascontiguousarray(stack0.transpose(0, 2, 1).reshape(l0, d * d))
    flat1_t = np.ascontiguousarray(stack1.transpose(0, 2, 1).reshape(l1, d * d))

    identity_half = PovmElement(np.eye(d, dtype=np.complex128) / 2.0)
    best_t = identity_half
    best_lower = separation_gap(identity_half, set0, set1).min_gap

    weights = np.full((l0, l1), 1.0 / (l0 * l1))
    weight_sum = np.zeros((l0, l1))
    response_sum = np.zeros((d, d), dtype=np.complex128)
    window_sum = np.zeros((d, d), dtype=np.complex128)
    window_weight_sum = np.zeros((l0, l1))
    window_start = 1

    def mixture_value(m0: np.ndarray, m1: np.ndarray) -> float:
        diff = (m0 @ flat0 - m1 @ flat1).reshape(d, d)
        diff = (diff + diff.conj().T) / 2.0
        return float(0.5 * np.abs(hermitian_eig(diff).eigenvalues).sum())

    best_upper = np.inf
    best_mu0 = weights.sum(axis=1)
    best_mu1 = weights.sum(axis=0)
    history: list[Checkpoint] = []
    rounds_used = 0
    converged = False

    for t in range(1, cfg.max_rounds + 1):
        rounds_used = t
        if t >= 2 * window_start:
            window_start = t
            window_sum[:] = 0.0
            window_weight_sum[:] = 0.0
        mu0 = weights.sum(axis=1)
        mu1 = weights.sum(axis=0)

        # Exact best response to the marginal mixtures: one Hermitian
        # eigendecomposition yields both the responding measurement and
        # the mixtures' trace distance (the round's upper bound).
        diff = (mu0 @ flat0 - mu1 @ flat1).reshape(d, d)
        diff = (diff + diff.conj().T) / 2.0
        dec = hermitian_eig(diff)
        cols = dec.eigenvectors[:, dec.eigenvalues > POSITIVE_CUTOFF]
        response = cols @ cols.conj().T
        round_value = float(0.5 * np.abs(dec.eigenvalues).sum())

        if round_value < best_upper:
            best_upper = round_value
            best_mu0 = mu0
            best_mu1 = mu1

        response_sum += response
        window_sum += response
        weight_sum += weights
        window_weight_sum += weights

        # Adversary update: weight(i, j) *= exp(-eta * gap_t(i, j)).
        flat_response = response.reshape(d * d)
        exp0 = (flat0_t @ flat_response).real
        exp1 = (flat1_t @ flat_response).real
        weights = weights * (np.exp(-eta * exp0)[:, None] * np.exp(eta * exp1)[None, :])
        total = weights.sum()
        if not total > _WEIGHT_FLOOR:
            weights = np.full((l0, l1), 1.0 / (l0 * l1))
        else:
            weights = weights / total

        if t % cfg.check_interval == 0 or t == cfg.max_rounds:
            # Visited mixtures also include the time-averaged adversary
            # play (full history and current tail window), the strategies
            # regret analysis actually speaks about.
            mixture_candidates = [weight_sum / t]
            if window_start > 1:
                mixture_candidates.append(window_weight_sum / (t - window_start + 1))
            for pairs in mixture_candidates:
                m0 = pairs.sum(axis=1)
                m1 = pairs.sum(axis=0)
                value = mixture_value(m0, m1)
                if value < best_upper:
                    best_upper = value
                    best_mu0 = m0
                    best_mu1 = m1

            averaged = PovmElement(response_sum / t)
            candidates = [averaged]
            if window_start > 1:
                candidates.append(PovmElement(window_sum / (t - window_start + 1)))
            # The exact response to the best mixtures found so far is often
            # the sharpest certificate once the upper bound has settled.
            candidates.append(PovmElement(_response_projector(
                (best_mu0 @ flat0 - best_mu1 @ flat1).reshape(d, d)
            )))
            for candidate in candidates:
                lower_t = separation_gap(candidate, set0, set1).min_gap
                if lower_t > best_lower:
                    best_lower = lower_t
                    best_t = candidate
            gap = best_upper - best_lower
            history.append(
                Checkpoint(round=t, lower_bound=best_lower, upper_bound=best_upper, gap=gap)
            )
            if checkpoint_callback is not None:
                checkpoint_callback(t, averaged, best_lower, best_upper)
            if gap <= cfg.target_gap:
                converged = True
                break

    mean_pairs = weight_sum / rounds_used
    return SaddleResult(
        measurement=best_t,
        mu0=mean_pairs.sum(axis=1),
        mu1=mean_pairs.sum(axis=0),
        lower_bound=best_lower,
        upper_bound=best_upper,
        gap=best_upper - best_lower,
        rounds_used=rounds_used,
        converged=converged,
        best_mu0=best_mu0,
        best_mu1=best_mu1,
        trace=tuple(history),
    )


def min_mixture_distance(
    set0: StateSet, set1: StateSet, config: SolverConfig | None = None
) -> tuple[np.ndarray, np.ndarray, float]:
    """Best mixture pair found by the solver and its trace distance.

    The value equals solve_saddle's upper_bound for the same config; it is
    the certified ceiling on any achievable separation margin.
    """
    result = solve_saddle(set0, set1, config)
    return result.best_mu0, result.best_mu1, result.upper_bound


def certify_forward(
    t: PovmElement,
    set0: StateSet,
    set1: StateSet,
    trials: int,
    seed: int,
) -> CertReport:
    """Sample mixture pairs and compare their trace distance to T's margin.

    Any POVM element whose worst pair gap is eps forces every mixture of
    set0 to stay at trace distance >= eps from every mixture of set1; this
    samples `trials` uniform (Dirichlet(1,...,1)) mixture pairs from the
    documented SplitMix64 stream (mu0's exponentials drawn before mu1's,
    per trial) and reports the largest violation found, expected <= 1e-9.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    _check_instance(set0, set1)
    if t.dim != set0.dim:
        raise DimensionMismatchError(f"measurement dim {t.dim} != set dim {set0.dim}")
    margin = separation_gap(t, set0, set1).min_gap
    rng = SplitMix64(seed)
    l0, l1 = len(set0), len(set1)

    min_distance = np.inf
    worst_mu0 = None
    worst_mu1 = None
    for _ in range(trials):
        mu0 = as_mixture_weights(rng.simplex(l0), size=l0)
        mu1 = as_mixture_weights(rng.simplex(l1), size=l1)
        dist = trace_distance(mixture_state(mu0, set0), mixture_state(mu1, set1))
        if dist < min_distance:
            min_distance = dist
            worst_mu0 = mu0
            worst_mu1 = mu1
    return CertReport(
        margin=margin,
        max_violation=margin - float(min_distance),
        worst_mu0=worst_mu0,
        worst_mu1=worst_mu1,
        min_distance=float(min_distance),
        trials=trials,
    )
