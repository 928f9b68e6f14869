"""Shared fixtures and instance builders."""

import numpy as np
import pytest

import statesep as ss
from statesep._rng import SplitMix64

KET0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
KET1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
PLUS = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
MINUS = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
MIXED2 = np.eye(2, dtype=complex) / 2.0

# Half trace norm of |0><0| vs |+><+|, frozen from the by-hand eigenvalue
# computation: the difference [[0.5, -0.5], [-0.5, -0.5]] has eigenvalues
# +/- sqrt(0.5), so the distance is sqrt(0.5).
DIST_KET0_PLUS = 0.7071067811865476


def density(matrix) -> ss.DensityMatrix:
    return ss.validate_density(np.asarray(matrix, dtype=complex))


def state_set(*matrices) -> ss.StateSet:
    return ss.StateSet.from_matrices([np.asarray(m, dtype=complex) for m in matrices])


def random_hermitian(rng: np.random.RandomState, dim: int) -> np.ndarray:
    m = rng.uniform(-1.0, 1.0, (dim, dim)) + 1j * rng.uniform(-1.0, 1.0, (dim, dim))
    return (m + m.conj().T) / 2.0


def random_instance(seed: int, dims=(2, 3, 4), max_states: int = 4):
    """Deterministic random instance; the convention the acceptance suite uses."""
    rng = SplitMix64(seed)
    dim = dims[rng.next_uint64() % len(dims)]
    l0 = 1 + rng.next_uint64() % max_states
    l1 = 1 + rng.next_uint64() % max_states

    def draw():
        rank = 1 + rng.next_uint64() % dim
        return ss.random_density(dim, rank, rng.next_uint64())

    set0 = ss.StateSet(dim=dim, states=tuple(draw() for _ in range(l0)))
    set1 = ss.StateSet(dim=dim, states=tuple(draw() for _ in range(l1)))
    return set0, set1


@pytest.fixture
def qubits():
    return {
        "ket0": density(KET0),
        "ket1": density(KET1),
        "plus": density(PLUS),
        "minus": density(MINUS),
        "mixed": density(MIXED2),
    }


@pytest.fixture
def degenerate_instance():
    """S0 = {|0><0|, |1><1|}, S1 = {I/2}: margin is analytically zero."""
    return state_set(KET0, KET1), state_set(MIXED2)
