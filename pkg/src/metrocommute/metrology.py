"""Quantum Fisher information, the scalar precision bound, the
incompatibility measure derived from W, and ordering/additivity checks.

The QFIM is F_ij = (1/2) tr[rho (L_i L_j + L_j L_i)]. Near-singular QFIMs are
refused rather than pseudo-inverted: a singular F means the parameters are not
jointly identifiable at this point, which some of the worked examples hit by
construction, and that must surface as an explicit error rather than a number.
"""

from dataclasses import dataclass

import numpy as np

from .operator_core import ValidationError
from .sld import SldSet, cfim, nu_copy_sld, sld_rotated
from .states import tensor_power

CONDITION_LIMIT = 1e12
SINGULAR_MESSAGE = "parameters not jointly identifiable"


@dataclass(eq=False)
class QfimResult:
    matrix: np.ndarray
    rank: int
    condition_number: float


def qfim(rho, slds):
    """F_ij = (1/2) tr[rho (L_i L_j + L_j L_i)], with rank and conditioning."""
    ops = slds.ops if isinstance(slds, SldSet) else list(slds)
    m = len(ops)
    f = np.zeros((m, m))
    for i in range(m):
        rl = rho.matrix @ ops[i]
        for j in range(i, m):
            val = np.trace(rl @ ops[j]).real
            f[i, j] = val
            f[j, i] = val
    eigs = np.linalg.eigvalsh(f)
    floor = 1e-12 * max(1.0, eigs.max(initial=0.0))
    rank = int(np.sum(eigs > floor))
    if rank < m or eigs.min() <= 0:
        cond = float("inf")
    else:
        cond = float(eigs.max() / eigs.min())
    return QfimResult(matrix=f, rank=rank, condition_number=cond)


def _as_qfim_matrix(f):
    return f.matrix if isinstance(f, QfimResult) else np.asarray(f, dtype=float)


def _require_invertible(fm):
    eigs = np.linalg.eigvalsh(fm)
    top = eigs.max(initial=0.0)
    if top <= 0 or eigs.min() <= 0 or top / eigs.min() >= CONDITION_LIMIT:
        raise ValidationError(SINGULAR_MESSAGE)


def qcr_scalar(f_q, weight=None):
    """tr[M F^-1]: the scalar precision bound for weight matrix M.

    M defaults to the identity and must be real symmetric positive definite.
    Raises a validation error mentioning joint identifiability when F is
    singular or conditioned beyond 1e12.
    """
    fm = _as_qfim_matrix(f_q)
    m = fm.shape[0]
    if weight is None:
        weight = np.eye(m)
    weight = np.asarray(weight, dtype=float)
    if weight.shape != fm.shape:
        raise ValidationError("weight matrix shape mismatch")
    if np.linalg.norm(weight - weight.T) > 1e-10 * max(1.0, np.linalg.norm(weight)):
        raise ValidationError("weight matrix must be symmetric")
    if np.linalg.eigvalsh((weight + weight.T) / 2).min() <= 0:
        raise ValidationError("weight matrix must be positive definite")
    _require_invertible(fm)
    return float(np.trace(np.linalg.solve(fm, weight)))


@dataclass(eq=False)
class IncompatibilityResult:
    e_value: float
    sandwich_factor: float


def incompatibility(f_q, w):
    """E = (1/2) max |eig(F^-1 W)|, in [0, 1]; zero exactly on WC states.

    w may be a ScalarConditionMatrix or a raw complex antisymmetric matrix.
    """
    fm = _as_qfim_matrix(f_q)
    _require_invertible(fm)
    w_entries = getattr(w, "entries", w)
    x = np.linalg.solve(fm, np.asarray(w_entries, dtype=complex))
    e = 0.5 * float(np.max(np.abs(np.linalg.eigvals(x)))) if x.size else 0.0
    return IncompatibilityResult(e_value=e, sandwich_factor=1.0 + e)


def verify_fc_order(rho, povm, slds):
    """Check F_Q - F_C is positive semidefinite; returns (ok, witness).

    witness is the minimum eigenvalue of F_Q - F_C; ok means it clears the
    -1e-9 floor.
    """
    f_q = qfim(rho, slds)
    f_c = cfim(rho, povm, slds)
    gap = f_q.matrix - f_c.matrix
    witness = float(np.linalg.eigvalsh((gap + gap.T) / 2).min())
    return witness >= -1e-9, witness


def qfim_additivity(rho, pt, nu):
    """Relative deviation between F on nu copies and nu times F on one copy.

    Falls back to the absolute deviation when the single-copy F vanishes
    (maximally mixed states).
    """
    if nu not in (2, 3):
        raise ValidationError(f"nu must be 2 or 3, got {nu!r}")
    slds = sld_rotated(rho.spectrum, pt)
    f_one = qfim(rho, slds).matrix
    big = tensor_power(rho, nu)
    slds_nu = nu_copy_sld(slds, nu)
    f_nu = qfim(big, slds_nu).matrix
    ref = np.linalg.norm(nu * f_one)
    dev = np.linalg.norm(f_nu - nu * f_one)
    if ref <= 1e-15:
        return float(dev)
    return float(dev / ref)
