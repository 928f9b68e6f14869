"""Self-contained dense Hermitian linear algebra.

Matrices are numpy arrays of complex128, shape (d, d), row-major.  The
eigensolver is a cyclic Jacobi iteration with complex plane rotations;
no LAPACK routine is involved, which keeps every production code path
independent of the numpy eigensolvers used as oracles in the tests.
Dimensions are desk scale (d <= 64), so O(d^3) sweeps are cheap.  Small
matrices (the solver's hot loop lives at d <= 4) run through a scalar
kernel on native complex numbers; larger ones use vectorized row/column
updates.  Both kernels apply the same rotations in the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergenceError, NotHermitianError

# Max entry asymmetry tolerated before a matrix is rejected as non-Hermitian.
HERMITICITY_TOL = 1e-9
# Eigenvalues strictly above this cutoff count as the "positive part";
# kernel directions are excluded for determinism.
POSITIVE_CUTOFF = 1e-10
# Sweep convergence: off-diagonal Frobenius norm relative to ||M||_F.
_OFFDIAG_REL_TOL = 1e-13
_MAX_SWEEPS = 100
# Dimension at or below which the scalar kernel wins over numpy slicing.
_SCALAR_KERNEL_MAX_DIM = 8


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted ascending; eigenvector k is ``eigenvectors[:, k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def as_matrix(m) -> np.ndarray:
    """Coerce to a square complex128 array (C order), without copying if possible."""
    a = np.asarray(m, dtype=np.complex128, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def max_asymmetry(m) -> float:
    """Largest entry of |M - M^dag|."""
    a = as_matrix(m)
    return float(np.abs(a - a.conj().T).max())


def check_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return the input as a matrix, raising NotHermitianError beyond `tol`."""
    a = as_matrix(m)
    asym = float(np.abs(a - a.conj().T).max())
    if not asym <= tol:
        raise NotHermitianError(
            f"max entry asymmetry {asym:.3e} exceeds tolerance {tol:.1e}"
        )
    return a


def trace(m) -> complex:
    """Sum of diagonal entries, accumulated in index order."""
    a = as_matrix(m)
    return complex(a.diagonal().sum())


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def _rotation_params(b: complex, app: float, aqq: float):
    """Cosine, sine, and phase zeroing the off-diagonal of a 2x2 Hermitian block.

    For the block [[app, b], [conj(b), aqq]] the unitary
    [[c, s], [-s e^{-i beta}, c e^{-i beta}]] (beta the phase of b) makes
    it diagonal, with app - t|b| and aqq + t|b| on the diagonal.
    """
    absb = abs(b)
    phase = b / absb
    tau = (aqq - app) / (2.0 * absb)
    if tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(tau * tau + 1.0))
    else:
        t = -1.0 / (-tau + math.sqrt(tau * tau + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c, t, absb, phase


def _jacobi_numpy(h: np.ndarray, threshold: float, skip: float):
    """Cyclic sweeps with vectorized row/column updates; h is overwritten."""
    n = h.shape[0]
    v = np.eye(n, dtype=np.complex128)
    limit = threshold * threshold

    def offdiag_sq() -> float:
        # Summed entry by entry (not total minus diagonal: that subtraction
        # of near-equal numbers floors out at rounding noise ~1e-15 * ||M||^2).
        sq = (h * h.conj()).real
        np.fill_diagonal(sq, 0.0)
        return float(sq.sum())

    for _ in range(_MAX_SWEEPS):
        if offdiag_sq() <= limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(h[p, q]) <= skip:
                    continue
                c, s, t, absb, phase = _rotation_params(
                    h[p, q], h[p, p].real, h[q, q].real
                )
                app = h[p, p].real
                aqq = h[q, q].real
                hp = h[p, :].copy()
                hq = h[q, :].copy()
                h[p, :] = c * hp - (s * phase) * hq
                h[q, :] = s * hp + (c * phase) * hq
                cp = h[:, p].copy()
                cq = h[:, q].copy()
                conj_phase = phase.conjugate()
                h[:, p] = c * cp - (s * conj_phase) * cq
                h[:, q] = s * cp + (c * conj_phase) * cq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - (s * conj_phase) * vq
                v[:, q] = s * vp + (c * conj_phase) * vq
                # Exact values for the rotated block; kills rounding drift.
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = app - t * absb
                h[q, q] = aqq + t * absb
    else:
        if offdiag_sq() > limit:
            raise NoConvergenceError(
                f"off-diagonal norm above {threshold:.3e} after {_MAX_SWEEPS} sweeps"
            )
    return h.diagonal().real.copy(), v


def _jacobi_scalar(hmat: np.ndarray, threshold: float, skip: float):
    """Same sweeps on native complex scalars; fast for tiny dimensions."""
    n = hmat.shape[0]
    h: list[list[complex]] = hmat.tolist()
    v: list[list[complex]] = np.eye(n, dtype=np.complex128).tolist()
    limit = threshold * threshold

    def offdiag_sq() -> float:
        total = 0.0
        for p in range(n):
            hp = h[p]
            for q in range(n):
                if q != p:
                    z = hp[q]
                    total += z.real * z.real + z.imag * z.imag
        return total

    for _ in range(_MAX_SWEEPS):
        if offdiag_sq() <= limit:
            break
        for p in range(n - 1):
            hp = h[p]
            for q in range(p + 1, n):
                if abs(hp[q]) <= skip:
                    continue
                app = h[p][p].real
                aqq = h[q][q].real
                c, s, t, absb, phase = _rotation_params(hp[q], app, aqq)
                hq = h[q]
                cph = c * phase
                sph = s * phase
                for k in range(n):
                    a = hp[k]
                    b = hq[k]
                    hp[k] = c * a - sph * b
                    hq[k] = s * a + cph * b
                conj_phase = phase.conjugate()
                cpc = c * conj_phase
                spc = s * conj_phase
                for row in h:
                    a = row[p]
                    b = row[q]
                    row[p] = c * a - spc * b
                    row[q] = s * a + cpc * b
                for row in v:
                    a = row[p]
                    b = row[q]
                    row[p] = c * a - spc * b
                    row[q] = s * a + cpc * b
                hp[q] = 0j
                h[q][p] = 0j
                hp[p] = complex(app - t * absb)
                h[q][q] = complex(aqq + t * absb)
    else:
        if offdiag_sq() > limit:
            raise NoConvergenceError(
                f"off-diagonal norm above {threshold:.3e} after {_MAX_SWEEPS} sweeps"
            )
    eigenvalues = np.array([h[k][k].real for k in range(n)])
    return eigenvalues, np.array(v, dtype=np.complex128)


def hermitian_eig(m) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    The input is checked against HERMITICITY_TOL and symmetrized to
    (M + M^dag)/2 before iterating.  Sweeps stop once the off-diagonal
    Frobenius norm falls to 1e-13 * ||M||_F; more than 100 sweeps raises
    NoConvergenceError.  Output is deterministic for identical input bits:
    eigenvalues ascending, ties kept in Jacobi output order.
    """
    a = check_hermitian(m)
    h = (a + a.conj().T) / 2.0
    n = h.shape[0]
    threshold = _OFFDIAG_REL_TOL * frobenius_norm(h)
    # Entries at or below `skip` never need their own rotation: even if all
    # n(n-1) of them remain, the off-diagonal norm stays under threshold.
    skip = threshold / max(n, 2)
    if n <= _SCALAR_KERNEL_MAX_DIM:
        eigenvalues, v = _jacobi_scalar(h, threshold, skip)
    else:
        eigenvalues, v = _jacobi_numpy(h, threshold, skip)
    order = np.argsort(eigenvalues, kind="stable")
    return EigenDecomposition(
        eigenvalues=np.ascontiguousarray(eigenvalues[order]),
        eigenvectors=np.ascontiguousarray(v[:, order]),
    )


def positive_part_projector(h) -> np.ndarray:
    """Projector onto the eigenspaces of `h` with eigenvalue > POSITIVE_CUTOFF.

    Maximizes Tr(P H) over all projectors; Tr(P H) equals the sum of the
    eigenvalues above the cutoff.
    """
    dec = hermitian_eig(h)
    cols = dec.eigenvectors[:, dec.eigenvalues > POSITIVE_CUTOFF]
    if cols.shape[1] == 0:
        return np.zeros((dec.dim, dec.dim), dtype=np.complex128)
    return cols @ cols.conj().T
