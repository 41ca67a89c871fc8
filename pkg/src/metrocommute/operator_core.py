"""Dense complex matrix primitives shared by every other module.

All operators are plain numpy arrays (complex128, row-major). Functions here
are pure and make no assumptions beyond what they validate; everything above
this module (states, encodings, condition matrices) builds on these few
primitives, and the closed-form oracles in the examples module are allowed to
share nothing else with the pipeline.
"""

import numpy as np

HERM_TOL = 1e-10
UNIT_TOL = 1e-10


class ValidationError(ValueError):
    """Invalid input (bad matrix, bad parameters, malformed descriptor)."""


def dagger(a):
    return np.conj(a.T)


def frobenius(a):
    return float(np.linalg.norm(a))


def as_square_matrix(a, name="matrix"):
    """Coerce to a square complex128 ndarray, validating shape and finiteness."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValidationError(f"{name} must have dim >= 1")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValidationError(f"{name} has non-finite entries")
    return m


def is_hermitian(a, tol=HERM_TOL):
    a = np.asarray(a)
    return np.linalg.norm(a - dagger(a)) <= tol * max(1.0, np.linalg.norm(a))


def require_hermitian(a, name="matrix", tol=HERM_TOL):
    m = as_square_matrix(a, name)
    if not is_hermitian(m, tol):
        raise ValidationError(f"{name} is not Hermitian within tolerance {tol}")
    return m


def hermitian_eig(h):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns (vals, vecs) with vals real in descending order and vecs[:, k]
    the orthonormal eigenvector for vals[k]. Raises ValidationError for
    non-Hermitian input.
    """
    m = require_hermitian(h, "hermitian_eig input")
    vals, vecs = np.linalg.eigh((m + dagger(m)) / 2.0)
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def matrix_exp_i(k, sign=1):
    """exp(sign * 1j * K) for Hermitian K, via the spectral decomposition.

    Exact for Hermitian inputs; the only matrix exponential needed anywhere.
    """
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    vals, vecs = hermitian_eig(k)
    phases = np.exp(1j * sign * vals)
    return (vecs * phases) @ dagger(vecs)


def swap_operator(d):
    """SWAP on C^d x C^d: S(|x>|y>) = |y>|x>."""
    if int(d) != d or d < 2:
        raise ValidationError("swap_operator needs integer d >= 2")
    d = int(d)
    s = np.zeros((d * d, d * d), dtype=complex)
    for x in range(d):
        for y in range(d):
            s[y * d + x, x * d + y] = 1.0
    return s


def trace_norm(x):
    """Sum of singular values of x."""
    x = as_square_matrix(x, "trace_norm input")
    return float(np.sum(np.linalg.svd(x, compute_uv=False)))


def is_psd(x, tol):
    """True iff the Hermitian matrix x has min eigenvalue >= -tol."""
    m = require_hermitian(x, "is_psd input")
    return bool(np.linalg.eigvalsh(m).min() >= -tol)


def commutator(a, b):
    return a @ b - b @ a


def tensor(*ops):
    """Kronecker product of the given operators, left to right."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(rho, dims, keep):
    """Trace out all sites except those in `keep`.

    rho acts on the tensor product of len(dims) sites with local dimensions
    dims; keep is an iterable of site indices to retain (output ordered by
    ascending site index).
    """
    dims = [int(d) for d in dims]
    rho = np.asarray(rho, dtype=complex)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValidationError(
            f"partial_trace: operator shape {rho.shape} does not match dims {dims}"
        )
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValidationError("partial_trace: keep indices out of range")
    n = len(dims)
    t = rho.reshape(dims + dims)
    # drop highest site first so remaining axis numbers stay valid
    for a in sorted((x for x in range(n) if x not in keep), reverse=True):
        t = np.trace(t, axis1=a, axis2=a + n)
        n -= 1
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d_keep, d_keep)
