"""Density matrices with cached spectral data, plus the state families used
throughout the library (white-noise mixtures, Bell-diagonal states, tensor
powers).

Numerical rank is decided by RANK_TOL (absolute, legitimate because traces are
one); eigenvalues at or below it are treated as exact zeros everywhere
downstream, since every formula in the conditions module branches hard on
lambda = 0 versus lambda > 0.
"""

from dataclasses import dataclass, field

import numpy as np

from .operator_core import (
    ValidationError,
    as_square_matrix,
    dagger,
    hermitian_eig,
    partial_trace,
    require_hermitian,
    tensor,
)

RANK_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10


@dataclass(eq=False)
class SpectralData:
    """Eigen-data of a density matrix.

    eigenvalues: descending, length dim (kernel zeros included)
    eigenvectors: columns, orthonormal, completing the full space
    rank: number of eigenvalues above rank_tol
    support_projector / kernel_projector: sum to the identity
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int
    rank_tol: float
    support_projector: np.ndarray = field(init=False)
    kernel_projector: np.ndarray = field(init=False)

    def __post_init__(self):
        vs = self.eigenvectors[:, : self.rank]
        self.support_projector = vs @ dagger(vs)
        self.kernel_projector = np.eye(self.eigenvectors.shape[0]) - self.support_projector

    @property
    def dim(self):
        return self.eigenvectors.shape[0]


@dataclass(eq=False)
class DensityMatrix:
    matrix: np.ndarray
    spectrum: SpectralData

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def rank(self):
        return self.spectrum.rank


def _spectral_from_eig(vals, vecs, rank_tol):
    rank = int(np.sum(vals > rank_tol))
    return SpectralData(eigenvalues=vals, eigenvectors=vecs, rank=rank, rank_tol=rank_tol)


def density_matrix(mat, rank_tol=RANK_TOL):
    """Validate and wrap a raw matrix as a DensityMatrix.

    Requires Hermiticity, positive semidefiniteness within 1e-10, and unit
    trace within 1e-10.
    """
    m = require_hermitian(mat, "density matrix")
    m = (m + dagger(m)) / 2.0
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"density matrix trace {tr!r} differs from 1 beyond {TRACE_TOL}")
    vals, vecs = hermitian_eig(m)
    if vals.min() < -PSD_TOL:
        raise ValidationError(
            f"density matrix not positive semidefinite: min eigenvalue {vals.min():.3e}"
        )
    return DensityMatrix(matrix=m, spectrum=_spectral_from_eig(vals, vecs, rank_tol))


def _orthonormal_completion(v):
    """Columns spanning the orthogonal complement of the columns of v."""
    d, r = v.shape
    if r >= d:
        return np.zeros((d, 0), dtype=complex)
    u, _, _ = np.linalg.svd(v, full_matrices=True)
    return u[:, r:]


def density_from_eigpairs(pairs, rank_tol=RANK_TOL):
    """Build a state from (weight, vector) pairs.

    Weights must be nonnegative and sum to 1 within 1e-10 (renormalized
    silently inside that window, rejected beyond it). Mutually orthonormal
    vectors are kept as the spectral basis, with the kernel completed
    orthonormally; non-orthogonal vectors are legal, in which case the
    operator is assembled and re-diagonalized.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValidationError("density_from_eigpairs needs at least one pair")
    weights = np.array([float(w) for w, _ in pairs])
    if weights.min() < -1e-12:
        raise ValidationError(f"negative weight {weights.min()!r}")
    weights = np.clip(weights, 0.0, None)
    total = weights.sum()
    if abs(total - 1.0) > TRACE_TOL:
        raise ValidationError(f"weights sum to {total!r}, not 1 within {TRACE_TOL}")
    weights = weights / total
    vecs = []
    for _, v in pairs:
        v = np.asarray(v, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            raise ValidationError("zero vector in eigpairs")
        vecs.append(v / nrm)
    dim = vecs[0].size
    if any(v.size != dim for v in vecs):
        raise ValidationError("eigpair vectors have mismatched dimensions")
    v = np.column_stack(vecs)
    gram = dagger(v) @ v
    if np.max(np.abs(gram - np.eye(len(vecs)))) <= 1e-10:
        order = np.argsort(weights)[::-1]
        v = v[:, order]
        weights = weights[order]
        full = np.column_stack([v, _orthonormal_completion(v)])
        vals = np.concatenate([weights, np.zeros(dim - len(vecs))])
        mat = (v * weights) @ dagger(v)
        mat = (mat + dagger(mat)) / 2.0
        return DensityMatrix(
            matrix=mat, spectrum=_spectral_from_eig(vals, full, rank_tol)
        )
    mat = (v * weights) @ dagger(v)
    return density_matrix((mat + dagger(mat)) / 2.0, rank_tol=rank_tol)


def white_noise_state(psi, p, dim=None):
    """p * |psi><psi| + (1 - p) * identity / dim."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if dim is None:
        dim = psi.size
    if psi.size != dim:
        raise ValidationError(f"psi has dimension {psi.size}, expected {dim}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"mixing weight p={p!r} outside [0, 1]")
    nrm = np.linalg.norm(psi)
    if nrm < 1e-12:
        raise ValidationError("zero vector")
    psi = psi / nrm
    mat = p * np.outer(psi, np.conj(psi)) + (1.0 - p) * np.eye(dim) / dim
    return density_matrix(mat)


def _hw_bell_vector(m, n, d):
    # (1/sqrt(d)) sum_j w^{mj} |j>|j-n mod d>, w = exp(2 pi i / d)
    omega = np.exp(2j * np.pi / d)
    v = np.zeros(d * d, dtype=complex)
    for j in range(d):
        v[j * d + ((j - n) % d)] = omega ** (m * j)
    return v / np.sqrt(d)


@dataclass(eq=False)
class BellDiagonal:
    rho: DensityMatrix
    is_real: bool
    weights: np.ndarray  # length d*d, lexicographic (m, n) order


def bell_diagonal(weights, d):
    """Mixture of the d*d maximally entangled basis states on C^d x C^d.

    Basis vectors are indexed lexicographically by (m, n), m major, built by
    shift-and-phase unitaries acting on the first factor of the canonical
    maximally entangled state; (0, 0) is (1/sqrt(d)) sum_j |jj>. Fewer than
    d*d weights are padded with zeros. The report flag `is_real` records
    whether the resulting operator equals its transpose, which holds iff
    weight(m, n) = weight((-m) mod d, n).
    """
    if int(d) != d or d < 2:
        raise ValidationError("bell_diagonal needs integer d >= 2")
    d = int(d)
    w = np.array([float(x) for x in weights])
    if w.size > d * d:
        raise ValidationError(f"{w.size} weights exceed d^2 = {d * d}")
    if w.min() < -1e-12:
        raise ValidationError(f"negative weight {w.min()!r}")
    w = np.clip(w, 0.0, None)
    if abs(w.sum() - 1.0) > TRACE_TOL:
        raise ValidationError(f"weights sum to {w.sum()!r}, not 1 within {TRACE_TOL}")
    w = w / w.sum()
    w = np.concatenate([w, np.zeros(d * d - w.size)])
    pairs = []
    for m in range(d):
        for n in range(d):
            pairs.append((w[m * d + n], _hw_bell_vector(m, n, d)))
    rho = density_from_eigpairs(pairs)
    real = all(
        abs(w[m * d + n] - w[((-m) % d) * d + n]) <= 1e-12
        for m in range(d)
        for n in range(d)
    )
    return BellDiagonal(rho=rho, is_real=real, weights=w)


def tensor_power(rho, nu):
    """rho tensored with itself nu times, nu in {1, 2, 3}, dim capped at 256."""
    if nu not in (1, 2, 3):
        raise ValidationError(f"nu must be 1, 2, or 3, got {nu!r}")
    if rho.dim ** nu > 256:
        raise ValidationError(f"tensor_power dimension {rho.dim ** nu} exceeds cap 256")
    if nu == 1:
        return rho
    mat = tensor(*([rho.matrix] * nu))
    return density_matrix(mat, rank_tol=rho.spectrum.rank_tol)


@dataclass(eq=False)
class PovmSet:
    effects: list


def povm_set(effects):
    """Validate a list of effects: each PSD within 1e-10, summing to identity."""
    mats = [require_hermitian(e, f"POVM effect {i}") for i, e in enumerate(effects)]
    if not mats:
        raise ValidationError("empty POVM")
    dim = mats[0].shape[0]
    if any(m.shape[0] != dim for m in mats):
        raise ValidationError("POVM effects have mismatched dimensions")
    for i, m in enumerate(mats):
        if np.linalg.eigvalsh((m + dagger(m)) / 2).min() < -PSD_TOL:
            raise ValidationError(f"POVM effect {i} is not positive semidefinite")
    total = sum(mats)
    if np.linalg.norm(total - np.eye(dim)) > 1e-10 * max(1.0, np.sqrt(dim)):
        raise ValidationError("POVM effects do not sum to the identity")
    return PovmSet(effects=mats)


def state_marginal(rho, dims, keep):
    """Partial trace of a DensityMatrix over the complement of `keep`."""
    mat = partial_trace(rho.matrix, dims, keep)
    return density_matrix(mat, rank_tol=rho.spectrum.rank_tol)


def transpose_invariant(rho, tol=1e-10):
    """Whether rho equals its transpose (entrywise real operator)."""
    mat = as_square_matrix(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    return bool(np.linalg.norm(mat - mat.T) <= tol * max(1.0, np.linalg.norm(mat)))
