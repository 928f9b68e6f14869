"""Two-state distinguishability primitives and separation gaps.

Convention used throughout the package: trace_distance returns the HALF
trace norm, (1/2)||rho - sigma||_1.  That makes it directly comparable to
expectation gaps: the best achievable Tr(T rho) - Tr(T sigma) over POVM
elements T equals trace_distance(rho, sigma), with no factor of 2 anywhere
at the call sites.  A measurement separates two sets by margin eps exactly
when every mixture of one set keeps trace_distance >= eps from every
mixture of the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .hermitian import hermitian_eig, positive_part_projector
from .states import DensityMatrix, PovmElement, StateSet

# Reported gaps are clipped to this band; raw values are asserted inside it.
GAP_BAND = 1.0 + 1e-9
_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class GapReport:
    """Per-pair expectation gaps of one measurement against two sets.

    min_gap is the smallest entry of per_pair_gaps; argmin_pair is its
    (row, column) index, lexicographically first on exact ties.
    """

    min_gap: float
    argmin_pair: tuple[int, int]
    per_pair_gaps: np.ndarray

    def __post_init__(self):
        gaps = np.array(self.per_pair_gaps, dtype=np.float64)
        gaps.setflags(write=False)
        object.__setattr__(self, "per_pair_gaps", gaps)


def _require_same_dim(*dims: int) -> None:
    if len(set(dims)) > 1:
        raise DimensionMismatchError(f"mixed dimensions {dims}")


def _symmetrized_difference(rho: DensityMatrix, sigma: DensityMatrix) -> np.ndarray:
    # Each input is Hermitian within 1e-9; the difference can carry twice
    # that asymmetry, so re-symmetrize before the strict Hermiticity gate.
    diff = rho.matrix - sigma.matrix
    return (diff + diff.conj().T) / 2.0


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half trace norm (1/2)||rho - sigma||_1 = (1/2) sum |eig(rho - sigma)|.

    Symmetric in its arguments, zero exactly when the states coincide, and
    equal to the largest achievable expectation gap between the two states.
    """
    _require_same_dim(rho.dim, sigma.dim)
    lam = hermitian_eig(_symmetrized_difference(rho, sigma)).eigenvalues
    return float(0.5 * np.abs(lam).sum())


def helstrom_measurement(rho: DensityMatrix, sigma: DensityMatrix) -> PovmElement:
    """Projector onto the positive eigenspace of rho - sigma.

    Achieves pair_gap(T, rho, sigma) == trace_distance(rho, sigma); a
    projector is a valid POVM element by construction.
    """
    _require_same_dim(rho.dim, sigma.dim)
    return PovmElement(positive_part_projector(_symmetrized_difference(rho, sigma)))


def pair_gap(t: PovmElement, rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Re(Tr(T rho) - Tr(T sigma)); the imaginary residue must be negligible."""
    _require_same_dim(t.dim, rho.dim, sigma.dim)
    value = complex(np.einsum("ab,ba->", t.matrix, rho.matrix - sigma.matrix))
    assert abs(value.imag) <= _IMAG_TOL, f"imaginary residue {value.imag:.3e}"
    return value.real


def separation_gap(t: PovmElement, set0: StateSet, set1: StateSet) -> GapReport:
    """Expectation gaps of T for every pair in set0 x set1, and their minimum."""
    _require_same_dim(t.dim, set0.dim, set1.dim)
    exp0 = np.einsum("ab,iba->i", t.matrix, set0.stack())
    exp1 = np.einsum("ab,jba->j", t.matrix, set1.stack())
    residue = max(float(np.abs(exp0.imag).max()), float(np.abs(exp1.imag).max()))
    assert residue <= _IMAG_TOL, f"imaginary residue {residue:.3e}"
    gaps = exp0.real[:, None] - exp1.real[None, :]
    assert float(np.abs(gaps).max()) <= GAP_BAND, "gap outside [-1, 1] band"
    gaps = np.clip(gaps, -GAP_BAND, GAP_BAND)
    flat = int(np.argmin(gaps))  # first minimum in C order = lexicographic (i, j)
    i, j = divmod(flat, gaps.shape[1])
    return GapReport(min_gap=float(gaps[i, j]), argmin_pair=(i, j), per_pair_gaps=gaps)


def is_separating(t: PovmElement, set0: StateSet, set1: StateSet, eps: float) -> bool:
    """Whether T attains margin eps: min pair gap >= eps - 1e-12."""
    if not eps > 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    return separation_gap(t, set0, set1).min_gap >= eps - 1e-12
