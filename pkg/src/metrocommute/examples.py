"""Worked-example reports with closed-form oracles.

Every runner builds the same configuration twice. The pipeline path goes
through the generic machinery (states -> encoding -> sld -> conditions ->
metrology). The oracle path evaluates example-specific closed forms written
directly against numpy, sharing only operator_core primitives with the
pipeline, so agreement between the two is evidence rather than tautology.

A report passes when every expected value matches its computed counterpart to
PASS_TOL. Yes/no claims are encoded as 1.0 / 0.0 so they flow through the
same deviation gate. Values that are informational only (not scored) live in
the extras dict.
"""

from dataclasses import dataclass

import numpy as np

from .conditions import (
    classify,
    condition_operators_direct,
    support_kernel_decomposition,
    weak_direct,
)
from .encoding import encode, hamiltonian_set
from .metrology import incompatibility, qcr_scalar, qfim
from .operator_core import ValidationError, dagger, matrix_exp_i, tensor
from .sld import sld_rotated
from .states import (
    density_from_eigpairs,
    density_matrix,
    state_marginal,
    white_noise_state,
    bell_diagonal,
)

PASS_TOL = 1e-8

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
EYE2 = np.eye(2, dtype=complex)
EYE3 = np.eye(3, dtype=complex)

# Qutrit generator pair used by several examples: an off-diagonal coupling of
# levels 0 and 1 and a traceless diagonal on the same block, both with
# Frobenius norm sqrt(3).
COUPLER_01 = np.sqrt(1.5) * np.array(
    [[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex
)
COUPLER_01_ANTI = np.sqrt(1.5) * np.array(
    [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex
)
DIAG_01 = np.sqrt(1.5) * np.diag([1.0, -1.0, 0.0]).astype(complex)
DIAG_112 = np.diag([1.0, 1.0, -2.0]).astype(complex) / np.sqrt(2.0)


@dataclass(eq=False)
class ExampleReport:
    id: str
    parameters: dict
    expected: dict
    provenance: dict
    computed: dict
    extras: dict
    max_abs_error: float
    passed: bool

    def as_dict(self):
        return {
            "id": self.id,
            "parameters": _jsonable(self.parameters),
            "expected": _jsonable(self.expected),
            "provenance": dict(self.provenance),
            "computed": _jsonable(self.computed),
            "extras": _jsonable(self.extras),
            "max_abs_error": float(self.max_abs_error),
            "pass": bool(self.passed),
        }


def _jsonable(value):
    """Recursively convert numbers/arrays to JSON-ready structures.

    Complex scalars become [re, im]; complex arrays become nested lists of
    [re, im] pairs; real arrays become nested lists of floats.
    """
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return _jsonable([list(row) for row in value]) if value.ndim == 2 else [
                _jsonable(v) for v in value
            ]
        return value.tolist()
    if isinstance(value, str) or value is None:
        return value
    return str(value)


def _deviation(expected, computed):
    a = np.asarray(expected, dtype=complex)
    b = np.asarray(computed, dtype=complex)
    if a.shape != b.shape:
        raise ValidationError("expected and computed shapes differ")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def _finish(example_id, parameters, expected, provenance, computed, extras=None):
    missing = set(expected) - set(computed)
    if missing:
        raise ValidationError(f"computed values missing for {sorted(missing)}")
    err = 0.0
    for key, exp in expected.items():
        err = max(err, _deviation(exp, computed[key]))
    return ExampleReport(
        id=example_id,
        parameters=dict(parameters),
        expected=dict(expected),
        provenance=dict(provenance),
        computed=dict(computed),
        extras=dict(extras or {}),
        max_abs_error=err,
        passed=bool(err <= PASS_TOL),
    )


# ---------------------------------------------------------------------------
# random draw helpers (seeded; used by the batch-style reports)
# ---------------------------------------------------------------------------


def _rand_ket(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def _rand_herm(rng, d, unit_norm=True):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = (a + dagger(a)) / 2.0
    if unit_norm:
        h = h / np.linalg.norm(h)
    return h


def _rand_orthonormal(rng, d, count):
    a = rng.normal(size=(d, count)) + 1j * rng.normal(size=(d, count))
    q, _ = np.linalg.qr(a)
    return [q[:, k] for k in range(count)]


def _fd_generators(hams, theta, step=1e-5):
    """Local generators by central finite differences of the evolution.

    G_i = i U(theta)^dag dU/dtheta_i, evaluated without the series expansion
    the pipeline uses, so it is an independent route to the same operators.
    """
    k0 = sum(t * h for t, h in zip(theta, hams))
    u0 = matrix_exp_i(k0, sign=-1)
    gens = []
    for h in hams:
        up = matrix_exp_i(k0 + step * h, sign=-1)
        um = matrix_exp_i(k0 - step * h, sign=-1)
        g = 1j * dagger(u0) @ ((up - um) / (2.0 * step))
        gens.append((g + dagger(g)) / 2.0)
    return gens


def _pipeline_w(rho, hams, theta=None):
    hs = hamiltonian_set(hams)
    if theta is None:
        theta = np.zeros(hs.m)
    pt = encode(hs, theta)
    slds = sld_rotated(rho.spectrum, pt)
    return weak_direct(rho, slds), slds, pt


# ---------------------------------------------------------------------------
# EX1: single-qubit identity W = (2 tr[rho^2] - 1) Gamma
# ---------------------------------------------------------------------------


def _run_ex1(p):
    rng = np.random.default_rng(int(p["seed"]))
    draws = int(p["draws"])
    if draws < 1:
        raise ValidationError("out-of-domain parameters: draws must be >= 1")
    worst = 0.0
    for k in range(draws):
        rank = 1 if k % 2 == 0 else 2
        if rank == 1:
            pairs = [(1.0, _rand_ket(rng, 2))]
        else:
            lam = float(rng.uniform(0.05, 0.95))
            basis = _rand_orthonormal(rng, 2, 2)
            pairs = [(lam, basis[0]), (1.0 - lam, basis[1])]
        rho = density_from_eigpairs(pairs)
        hams = [_rand_herm(rng, 2), _rand_herm(rng, 2)]
        theta = rng.uniform(-1.0, 1.0, size=2)
        w, _, _ = _pipeline_w(rho, hams, theta)
        # oracle: finite-difference generators, then the purity identity
        gens = _fd_generators(hams, theta)
        rho_mat = sum(wt * np.outer(v, v.conj()) for wt, v in pairs)
        gamma12 = 4.0 * np.trace(rho_mat @ (gens[0] @ gens[1] - gens[1] @ gens[0]))
        purity = float(np.trace(rho_mat @ rho_mat).real)
        closed = (2.0 * purity - 1.0) * gamma12
        worst = max(worst, abs(w.entries[0, 1] - closed))
    expected = {"worst_identity_deviation": 0.0}
    provenance = {
        "worst_identity_deviation": (
            "W_12 = (2 tr[rho^2] - 1) Gamma_12 for every qubit state; "
            "Gamma_12 = 4 tr[rho [G_1, G_2]] with G_i from central finite "
            "differences of the evolution"
        )
    }
    computed = {"worst_identity_deviation": worst}
    return _finish("EX1", p, expected, provenance, computed)


# ---------------------------------------------------------------------------
# EX2: white-noise mixture of a pure state
# ---------------------------------------------------------------------------


def _ex2_closed(p, dim, psi, hams):
    comm = hams[0] @ hams[1] - hams[1] @ hams[0]
    pref = 4.0 * p**3 * dim**2 / (p * (dim - 2.0) + 2.0) ** 2
    return pref * (psi.conj() @ comm @ psi)


def _run_ex2(p):
    dim = int(p["dim"])
    noise = float(p["p"])
    if dim < 2:
        raise ValidationError("out-of-domain parameters: dim must be >= 2")
    if not 0.0 < noise <= 1.0:
        raise ValidationError("out-of-domain parameters: p must be in (0, 1]")
    rng = np.random.default_rng(int(p["seed"]))
    psi = _rand_ket(rng, dim)
    hams = [_rand_herm(rng, dim), _rand_herm(rng, dim)]

    def pipeline(pp):
        rho = white_noise_state(psi, pp)
        w, _, _ = _pipeline_w(rho, hams)
        return w.entries[0, 1]

    w12 = pipeline(noise)
    sweep_worst = max(
        abs(pipeline(pp) - _ex2_closed(pp, dim, psi, hams))
        for pp in np.linspace(0.1, 0.9, 9)
    )
    expected = {"W_12": _ex2_closed(noise, dim, psi, hams), "p_sweep_worst": 0.0}
    provenance = {
        "W_12": (
            "W_12 = 4 p^3 D^2 / (p (D - 2) + 2)^2 <psi|[H_1, H_2]|psi> for "
            "rho = p |psi><psi| + (1 - p) 1/D"
        ),
        "p_sweep_worst": "same closed form, worst deviation over p in 0.1..0.9",
    }
    computed = {"W_12": w12, "p_sweep_worst": float(sweep_worst)}
    return _finish("EX2", p, expected, provenance, computed)


# ---------------------------------------------------------------------------
# EX3: rank-two qutrit pair with tilted kets
# ---------------------------------------------------------------------------


def _tilted_pair_state(alpha, lam):
    """Rank-two qutrit state from two alpha-tilted kets.

    Domain: cot^2(alpha) <= 1 and cos(2 alpha + pi) >= 0, i.e. alpha in
    [pi/4, 3 pi/4]; outside it the kets cannot be orthogonal.
    """
    if not 0.0 < lam < 1.0:
        raise ValidationError("out-of-domain parameters: lam must be in (0, 1)")
    cot2 = np.cos(alpha) ** 2 / np.sin(alpha) ** 2
    if cot2 > 1.0 + 1e-12:
        raise ValidationError(
            "out-of-domain parameters: cot^2(alpha) must be <= 1"
        )
    if np.cos(2.0 * alpha + np.pi) < -1e-12:
        raise ValidationError(
            "out-of-domain parameters: cos(2 alpha + pi) must be >= 0"
        )
    beta = 0.5 * (np.pi - np.arccos(np.clip(cot2, -1.0, 1.0)))
    kets = [
        np.array(
            [
                np.sin(alpha) * np.sin(b),
                np.sin(alpha) * np.cos(b),
                np.cos(alpha),
            ],
            dtype=complex,
        )
        for b in (beta, -beta)
    ]
    return density_from_eigpairs([(lam, kets[0]), (1.0 - lam, kets[1])])


def _ex3_closed(alpha, lam):
    h_lam = -6j * np.sqrt(3.0) * (1.0 - lam) * lam * (2.0 * lam - 1.0)
    radicand = max(np.cos(2.0 * alpha + np.pi) / np.sin(alpha) ** 4, 0.0)
    return h_lam * (1.0 - np.cos(4.0 * alpha)) * np.sqrt(radicand)


def _run_ex3(p):
    alpha, lam = float(p["alpha"]), float(p["lam"])
    hams = [COUPLER_01_ANTI, DIAG_112]

    def pipeline(aa):
        rho = _tilted_pair_state(aa, lam)
        w, _, _ = _pipeline_w(rho, hams)
        return w.entries[0, 1]

    w12 = pipeline(alpha)
    grid = np.linspace(np.pi / 4 + 0.05, np.pi / 2 - 0.05, 9)
    sweep_worst = max(abs(pipeline(aa) - _ex3_closed(aa, lam)) for aa in grid)
    expected = {"W_12": _ex3_closed(alpha, lam), "alpha_sweep_worst": 0.0}
    provenance = {
        "W_12": (
            "W_12 = h_lam (1 - cos 4 alpha) sqrt(cos(2 alpha + pi) / "
            "sin^4 alpha), h_lam = -6 i sqrt(3) (1 - lam) lam (2 lam - 1)"
        ),
        "alpha_sweep_worst": (
            "same closed form, worst deviation over alpha in "
            "[pi/4 + 0.05, pi/2 - 0.05]"
        ),
    }
    computed = {"W_12": w12, "alpha_sweep_worst": float(sweep_worst)}
    return _finish("EX3", p, expected, provenance, computed)


# ---------------------------------------------------------------------------
# EX4: two-qubit mixture of |00> and |++> under commuting local generators
# ---------------------------------------------------------------------------


def _ex4_state(prob):
    if not 0.0 < prob < 1.0:
        raise ValidationError("out-of-domain parameters: p must be in (0, 1)")
    v00 = np.zeros(4, dtype=complex)
    v00[0] = 1.0
    vpp = np.full(4, 0.5, dtype=complex)
    return density_matrix(
        prob * np.outer(v00, v00.conj()) + (1.0 - prob) * np.outer(vpp, vpp.conj())
    )


def _run_ex4(p):
    prob = float(p["p"])
    hams = [tensor(PAULI_X, EYE2), tensor(EYE2, PAULI_Y)]

    def pipeline(pp):
        rho = _ex4_state(pp)
        w, _, _ = _pipeline_w(rho, hams)
        return w.entries[0, 1], float(rho.spectrum.eigenvalues[1])

    w12, lam_small = pipeline(prob)

    def closed_w(pp):
        return -8j * (1.0 - pp) * pp**2

    def closed_lam(pp):
        return 0.5 * (1.0 - np.sqrt(1.0 - 3.0 * (1.0 - pp) * pp))

    sweep_worst = 0.0
    for pp in np.linspace(0.1, 0.9, 9):
        got_w, got_lam = pipeline(pp)
        sweep_worst = max(
            sweep_worst, abs(got_w - closed_w(pp)), abs(got_lam - closed_lam(pp))
        )
    expected = {
        "W_12": closed_w(prob),
        "lambda_small": closed_lam(prob),
        "p_sweep_worst": 0.0,
    }
    provenance = {
        "W_12": "W_12 = -8 i (1 - p) p^2 although [H_1, H_2] = 0",
        "lambda_small": "smaller support eigenvalue (1 - sqrt(1 - 3 (1-p) p)) / 2",
        "p_sweep_worst": "both closed forms, worst deviation over p in 0.1..0.9",
    }
    computed = {
        "W_12": w12,
        "lambda_small": lam_small,
        "p_sweep_worst": float(sweep_worst),
    }
    return _finish("EX4", p, expected, provenance, computed)


# ---------------------------------------------------------------------------
# EX5: three-qubit W-type pair under local sigma_z generators
# ---------------------------------------------------------------------------


def _w_type_kets():
    om = np.exp(2j * np.pi / 3.0)
    k = {}
    for idx, pos in (("001", 1), ("010", 2), ("100", 4)):
        v = np.zeros(8, dtype=complex)
        v[pos] = 1.0
        k[idx] = v
    psi1 = (k["001"] + om * k["010"] + om**2 * k["100"]) / np.sqrt(3.0)
    psi2 = (k["001"] + om**2 * k["010"] + om * k["100"]) / np.sqrt(3.0)
    return psi1, psi2


def _run_ex5(p):
    lam = float(p["lam"])
    if not 0.0 < lam < 1.0:
        raise ValidationError("out-of-domain parameters: lam must be in (0, 1)")
    psi1, psi2 = _w_type_kets()
    hams = [
        tensor(PAULI_Z, EYE2, EYE2),
        tensor(EYE2, PAULI_Z, EYE2),
        tensor(EYE2, EYE2, PAULI_Z),
    ]

    def pipeline(ll):
        rho = density_from_eigpairs([(ll, psi1), (1.0 - ll, psi2)])
        w, _, _ = _pipeline_w(rho, hams)
        return w.entries

    def closed(ll):
        return 64j * (1.0 - ll) * ll * (1.0 - 2.0 * ll) / (3.0 * np.sqrt(3.0))

    w = pipeline(lam)
    sweep_worst = 0.0
    for ll in np.linspace(0.05, 0.95, 10):
        wg = pipeline(ll)
        cc = closed(ll)
        sweep_worst = max(
            sweep_worst,
            abs(wg[0, 1] - cc),
            abs(wg[1, 2] - cc),
            abs(wg[0, 2] + cc),
        )
    expected = {
        "W_12": closed(lam),
        "W_23": closed(lam),
        "W_13": -closed(lam),
        "lambda_sweep_worst": 0.0,
    }
    pattern = (
        "W_12 = W_23 = -W_13 = 64 i (1 - lam) lam (1 - 2 lam) / (3 sqrt(3))"
    )
    provenance = {
        "W_12": pattern,
        "W_23": pattern,
        "W_13": pattern,
        "lambda_sweep_worst": "same pattern, worst deviation over lam in 0.05..0.95",
    }
    computed = {
        "W_12": w[0, 1],
        "W_23": w[1, 2],
        "W_13": w[0, 2],
        "lambda_sweep_worst": float(sweep_worst),
    }
    return _finish("EX5", p, expected, provenance, computed)


# ---------------------------------------------------------------------------
# EX6: two-qubit marginals of a W-type tripartite state
# ---------------------------------------------------------------------------


def _run_ex6(p):
    rng = np.random.default_rng(int(p["seed"]))
    psi1, _ = _w_type_kets()
    rho_abc = density_from_eigpairs([(1.0, psi1)])
    hams = [tensor(PAULI_X, EYE2), tensor(EYE2, PAULI_X)]
    norms = {}
    claims = {}
    for keep, name in [((0, 1), "AB"), ((1, 2), "BC"), ((0, 2), "CA")]:
        marg = state_marginal(rho_abc, [2, 2, 2], keep)
        w, _, _ = _pipeline_w(marg, hams)
        norms[name] = w.norm
        claims[f"{name}_wc_violated"] = 1.0 if w.norm > 1e-6 else 0.0
    # contrast: marginals of a pure product state keep W = 0 exactly
    product = tensor(*[np.outer(v, v.conj()) for v in
                       (_rand_ket(rng, 2), _rand_ket(rng, 2), _rand_ket(rng, 2))])
    rho_prod = density_matrix(product)
    worst_prod = 0.0
    for keep in [(0, 1), (1, 2), (0, 2)]:
        marg = state_marginal(rho_prod, [2, 2, 2], keep)
        w, _, _ = _pipeline_w(marg, hams)
        worst_prod = max(worst_prod, w.norm)
    claims["product_marginals_wc_hold"] = 1.0 if worst_prod < 1e-9 else 0.0
    expected = {
        "AB_wc_violated": 1.0,
        "BC_wc_violated": 1.0,
        "CA_wc_violated": 1.0,
        "product_marginals_wc_hold": 1.0,
    }
    provenance = {
        "AB_wc_violated": "every two-qubit marginal of the W-type ket has W != 0",
        "BC_wc_violated": "every two-qubit marginal of the W-type ket has W != 0",
        "CA_wc_violated": "every two-qubit marginal of the W-type ket has W != 0",
        "product_marginals_wc_hold": (
            "marginals of a pure product state are product states, so W = 0"
        ),
    }
    extras = {"marginal_W_norms": norms, "product_worst_W_norm": worst_prod}
    return _finish("EX6", p, expected, provenance, claims, extras)


# ---------------------------------------------------------------------------
# EX7: rank-two qutrit pair with a two-knob diagonal/coupling generator
# ---------------------------------------------------------------------------


def _ex7_pipeline(alpha, lam, a, a_prime):
    rho = _tilted_pair_state(alpha, lam)
    hams = [a * COUPLER_01 + a_prime * DIAG_01, DIAG_112]
    hs = hamiltonian_set(hams)
    pt = encode(hs, np.zeros(2))
    slds = sld_rotated(rho.spectrum, pt)
    ops = condition_operators_direct(rho.spectrum, slds)
    terms = support_kernel_decomposition(rho.spectrum, pt)
    return rho, pt, slds, ops, terms


def _run_ex7(p):
    alpha, lam = float(p["alpha"]), float(p["lam"])
    a, a_prime = float(p["a"]), float(p["a_prime"])
    rho, pt, slds, ops, terms = _ex7_pipeline(alpha, lam, a, a_prime)
    w, _, _ = _pipeline_w(rho, [a * COUPLER_01 + a_prime * DIAG_01, DIAG_112])

    s_val = -12.0 * a * np.sqrt(3.0) * np.cos(alpha) ** 2 * np.cos(2.0 * alpha)
    t_val = (
        12.0
        * a
        * np.sin(alpha)
        * np.cos(alpha) ** 3
        * np.sqrt(max(6.0 - 6.0 * np.cos(alpha) ** 2 / np.sin(alpha) ** 2, 0.0))
    )
    p12_expect = np.array(
        [[0.0, s_val, t_val], [-s_val, 0.0, 0.0], [-t_val, 0.0, 0.0]],
        dtype=complex,
    )

    # alpha = pi/4 degeneration: P collapses, O keeps one kernel-column entry
    _, _, _, ops_q, terms_q = _ex7_pipeline(np.pi / 4, lam, a, a_prime)
    o12_expect = np.zeros((3, 3), dtype=complex)
    o12_expect[1, 2] = 3.0 * a * np.sqrt(3.0) * (1.0 - 2.0 * lam)

    # a = 0 leaves two commuting diagonal generators: S vanishes entirely
    _, _, slds_a0, ops_a0, _ = _ex7_pipeline(np.pi / 4, lam, 0.0, 1.0)
    rho_a0 = _tilted_pair_state(np.pi / 4, lam)
    f_a0 = qfim(rho_a0, slds_a0)
    try:
        qcr_scalar(f_a0)
        singular_msg = ""
    except ValidationError as err:
        singular_msg = str(err)

    expected = {
        "W_norm": 0.0,
        "P_12": p12_expect,
        "P_norm_quarter": 0.0,
        "O_12_quarter": o12_expect,
        "I_kk_norm_quarter": 0.0,
        "S_norm_axial": 0.0,
    }
    provenance = {
        "W_norm": "commuting generators on this family give W = 0 for all knobs",
        "P_12": (
            "P_12 = [[0, s, t], [-s, 0, 0], [-t, 0, 0]] with "
            "s = -12 a sqrt(3) cos^2(alpha) cos(2 alpha), "
            "t = 12 a sin(alpha) cos^3(alpha) sqrt(6 - 6 cot^2(alpha))"
        ),
        "P_norm_quarter": "at alpha = pi/4 both s and t vanish, so P = 0",
        "O_12_quarter": (
            "at alpha = pi/4 the only surviving entry is "
            "[O_12]_{23} = 3 a sqrt(3) (1 - 2 lam)"
        ),
        "I_kk_norm_quarter": "kernel-kernel term vanishes for every (a, a')",
        "S_norm_axial": "a = 0 leaves two diagonal generators, hence S = 0",
    }
    computed = {
        "W_norm": w.norm,
        "P_12": ops.P.entry(0, 1),
        "P_norm_quarter": ops_q.P.norm,
        "O_12_quarter": ops_q.O.entry(0, 1),
        "I_kk_norm_quarter": terms_q.i_kk.norm,
        "S_norm_axial": ops_a0.S.norm,
    }
    extras = {
        "qfim_axial": f_a0.matrix,
        "qfim_axial_rank": f_a0.rank,
        "qcr_axial_error": singular_msg,
        "I_kk_norm": terms.i_kk.norm,
        "O_norm": ops.O.norm,
        "S_norm": ops.S.norm,
    }
    return _finish("EX7", p, expected, provenance, computed, extras)


# ---------------------------------------------------------------------------
# EX8: rank-three two-qubit state, maximally entangled eigenbasis
# ---------------------------------------------------------------------------


def _entangled_triple_state(lam1, lam2):
    if lam1 <= 0.0 or lam2 <= 0.0 or lam1 + lam2 >= 1.0:
        raise ValidationError(
            "out-of-domain parameters: need lam1 > 0, lam2 > 0, lam1 + lam2 < 1"
        )
    b1 = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2.0)
    b2 = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2.0)
    b3 = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2.0)
    return density_from_eigpairs(
        [(lam1, b1), (lam2, b2), (1.0 - lam1 - lam2, b3)]
    )


def _ex8_pipeline(lam1, lam2, ax, az, bx, bz):
    rho = _entangled_triple_state(lam1, lam2)
    hams = [
        tensor(ax * PAULI_X + az * PAULI_Z, EYE2),
        tensor(EYE2, bx * PAULI_X + bz * PAULI_Z),
    ]
    hs = hamiltonian_set(hams)
    pt = encode(hs, np.zeros(2))
    slds = sld_rotated(rho.spectrum, pt)
    return rho, pt, slds


def _run_ex8(p):
    lam1, lam2 = float(p["lam1"]), float(p["lam2"])
    ax, az = float(p["ax"]), float(p["az"])
    bx, bz = float(p["bx"]), float(p["bz"])

    rho, pt, slds = _ex8_pipeline(lam1, lam2, ax, az, bx, bz)
    w = weak_direct(rho, slds)
    ops = condition_operators_direct(rho.spectrum, slds)
    terms = support_kernel_decomposition(rho.spectrum, pt)

    f_val = 4.0 * (1.0 - lam1) * lam1 * (ax * bz - az * bx) / (
        (1.0 - lam2) * (lam1 + lam2)
    )
    p_pattern = np.array(
        [[0, 1, 1, 0], [-1, 0, 0, 1], [-1, 0, 0, 1], [0, -1, -1, 0]],
        dtype=complex,
    )
    g_val = 4.0 * lam1 * (1.0 - lam1 - 2.0 * lam2) * (ax * bz + az * bx) / (
        (1.0 - lam2) * (lam1 + lam2)
    )
    iks_expect = np.zeros((4, 4), dtype=complex)
    iks_expect[1, 0] = iks_expect[1, 3] = g_val
    iks_expect[2, 0] = iks_expect[2, 3] = -g_val

    # matched knobs a_x b_z = a_z b_x: P collapses while O survives
    rho_m, _, slds_m = _ex8_pipeline(lam1, lam2, 1.0, 0.4, 1.0, 0.4)
    ops_m = condition_operators_direct(rho_m.spectrum, slds_m)

    # axial knobs a_z = b_z = 0: all four conditions hold
    rho_x, _, slds_x = _ex8_pipeline(lam1, lam2, ax, 0.0, bx, 0.0)
    ops_x = condition_operators_direct(rho_x.spectrum, slds_x)
    f_x = qfim(rho_x, slds_x)
    qcr_x = qcr_scalar(f_x)

    expected = {
        "W_norm": 0.0,
        "P_12": f_val * p_pattern,
        "I_ks_12": iks_expect,
        "I_kk_norm": 0.0,
        "P_norm_matched": 0.0,
        "O_nonzero_matched": 1.0,
        "S_norm_axial": 0.0,
    }
    provenance = {
        "W_norm": "commuting local generators on this family give W = 0",
        "P_12": (
            "P_12 = f [[0,1,1,0],[-1,0,0,1],[-1,0,0,1],[0,-1,-1,0]], "
            "f = 4 (1 - lam1) lam1 (a_x b_z - a_z b_x) / "
            "((1 - lam2) (lam1 + lam2))"
        ),
        "I_ks_12": (
            "kernel-support term carries g = 4 lam1 (1 - lam1 - 2 lam2) "
            "(a_x b_z + a_z b_x) / ((1 - lam2) (lam1 + lam2)) at entries "
            "(2,1), (2,4), -(3,1), -(3,4)"
        ),
        "I_kk_norm": "kernel-kernel term vanishes for every knob setting",
        "P_norm_matched": "a_x b_z = a_z b_x forces f = 0, hence P = 0",
        "O_nonzero_matched": "the kernel-support term keeps O != 0 there",
        "S_norm_axial": "a_z = b_z = 0 gives commuting SLDs, hence S = 0",
    }
    computed = {
        "W_norm": w.norm,
        "P_12": ops.P.entry(0, 1),
        "I_ks_12": terms.i_ks.entry(0, 1),
        "I_kk_norm": terms.i_kk.norm,
        "P_norm_matched": ops_m.P.norm,
        "O_nonzero_matched": 1.0 if ops_m.O.norm > 1e-6 else 0.0,
        "S_norm_axial": ops_x.S.norm,
    }
    extras = {
        "f": f_val,
        "g": g_val,
        "O_norm_matched": ops_m.O.norm,
        "qfim_axial": f_x.matrix,
        "qcr_axial": qcr_x,
    }
    return _finish("EX8", p, expected, provenance, computed, extras)


# ---------------------------------------------------------------------------
# EX9: two-qutrit pair with identical local generators
# ---------------------------------------------------------------------------


def _qutrit_pair_kets():
    def ket(i, j):
        v = np.zeros(9, dtype=complex)
        v[i * 3 + j] = 1.0
        return v

    psi1 = (ket(0, 1) + ket(1, 0)) / np.sqrt(2.0)
    psi2 = (ket(1, 2) + ket(2, 1)) / np.sqrt(2.0)
    return psi1, psi2


def _ex9_pipeline(lam, a, a_prime):
    if not 0.0 < lam < 1.0:
        raise ValidationError("out-of-domain parameters: lam must be in (0, 1)")
    psi1, psi2 = _qutrit_pair_kets()
    eta = a * COUPLER_01 + a_prime * DIAG_01
    hams = [tensor(eta, EYE3), tensor(EYE3, eta)]
    rho = density_from_eigpairs([(lam, psi1), (1.0 - lam, psi2)])
    hs = hamiltonian_set(hams)
    pt = encode(hs, np.zeros(2))
    slds = sld_rotated(rho.spectrum, pt)
    return rho, pt, slds


def _ex9_qfim_closed(lam):
    return 1.5 * (1.0 + 3.0 * lam) * np.array([[1.0, -1.0], [-1.0, 1.0]])


def _run_ex9(p):
    lam = float(p["lam"])
    a, a_prime = float(p["a"]), float(p["a_prime"])
    rho, pt, slds = _ex9_pipeline(lam, a, a_prime)
    w = weak_direct(rho, slds)
    ops = condition_operators_direct(rho.spectrum, slds)
    terms = support_kernel_decomposition(rho.spectrum, pt)

    rho0, _, slds0 = _ex9_pipeline(lam, 0.0, 1.0)
    ops0 = condition_operators_direct(rho0.spectrum, slds0)
    f0 = qfim(rho0, slds0)
    try:
        qcr_scalar(f0)
        singular = 0.0
    except ValidationError:
        singular = 1.0

    sweep_worst = 0.0
    for ll in np.linspace(0.05, 0.95, 10):
        rr, _, ss = _ex9_pipeline(ll, a, a_prime)
        ww = weak_direct(rr, ss)
        oo = condition_operators_direct(rr.spectrum, ss)
        rr0, _, ss0 = _ex9_pipeline(ll, 0.0, 1.0)
        ff = qfim(rr0, ss0)
        sweep_worst = max(
            sweep_worst,
            ww.norm,
            oo.P.norm,
            oo.O.norm,
            float(np.max(np.abs(ff.matrix - _ex9_qfim_closed(ll)))),
        )

    expected = {
        "W_norm": 0.0,
        "P_norm": 0.0,
        "O_norm": 0.0,
        "I_kk_nonzero": 1.0,
        "S_nonzero": 1.0,
        "S_norm_axial": 0.0,
        "qfim_axial": _ex9_qfim_closed(lam),
        "qfim_singular_axial": 1.0,
        "lambda_sweep_worst": 0.0,
    }
    provenance = {
        "W_norm": "one-sided condition holds for every (lam, a, a')",
        "P_norm": "one-sided condition holds for every (lam, a, a')",
        "O_norm": "one-sided condition holds for every (lam, a, a')",
        "I_kk_nonzero": "only the kernel-kernel term survives when a != 0",
        "S_nonzero": "S = I_kk != 0 when a != 0, so the strong condition fails",
        "S_norm_axial": "a = 0 gives commuting diagonal generators, S = 0",
        "qfim_axial": "F = (3 (1 + 3 lam) / 2) [[1, -1], [-1, 1]] at a = 0",
        "qfim_singular_axial": "that F is rank one, so the scalar bound is undefined",
        "lambda_sweep_worst": (
            "W = P = O = 0 and the a = 0 closed form hold pointwise over lam"
        ),
    }
    computed = {
        "W_norm": w.norm,
        "P_norm": ops.P.norm,
        "O_norm": ops.O.norm,
        "I_kk_nonzero": 1.0 if terms.i_kk.norm > 1e-6 else 0.0,
        "S_nonzero": 1.0 if ops.S.norm > 1e-6 else 0.0,
        "S_norm_axial": ops0.S.norm,
        "qfim_axial": f0.matrix,
        "qfim_singular_axial": singular,
        "lambda_sweep_worst": float(sweep_worst),
    }
    extras = {"I_kk_norm": terms.i_kk.norm, "S_norm": ops.S.norm}
    return _finish("EX9", p, expected, provenance, computed, extras)


# ---------------------------------------------------------------------------
# EX10: full-rank pseudo-pure two-qubit state, equal local generators
# ---------------------------------------------------------------------------


def _pseudo_pure_state(lam, dim=4):
    if dim != 4:
        raise ValidationError(
            "out-of-domain parameters: dim must be 4 (two-qubit realization)"
        )
    if not 0.0 < lam < 1.0:
        raise ValidationError("out-of-domain parameters: lam must be in (0, 1)")
    psi = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2.0)
    lam_star = (1.0 - lam) / (dim - 1.0)
    pi_psi = np.outer(psi, psi.conj())
    return density_matrix(lam * pi_psi + lam_star * (np.eye(dim) - pi_psi)), lam_star


def _run_ex10(p):
    lam = float(p["lam"])
    dim = int(p["dim"])
    ax, az = float(p["ax"]), float(p["az"])
    rho, lam_star = _pseudo_pure_state(lam, dim)
    local = ax * PAULI_X + az * PAULI_Z
    hams = [tensor(local, EYE2), tensor(EYE2, local)]
    hs = hamiltonian_set(hams)
    pt = encode(hs, np.zeros(2))
    slds = sld_rotated(rho.spectrum, pt)
    w = weak_direct(rho, slds)
    ops = condition_operators_direct(rho.spectrum, slds)
    f = qfim(rho, slds)
    e = incompatibility(f, w)
    report = classify(rho, hs)

    ratio = (lam - lam_star) / (lam + lam_star)
    s_pattern = np.array(
        [[0, -1, 1, 0], [1, 0, 0, 1], [-1, 0, 0, -1], [0, -1, 1, 0]],
        dtype=complex,
    )
    s_expect = 4.0 * ratio**2 * ax * az * s_pattern
    psi = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2.0)
    pi_psi = np.outer(psi, psi.conj())
    sld_dev = max(
        float(
            np.linalg.norm(
                slds.ops[i]
                - 2j * ratio * (pi_psi @ pt.generators[i] - pt.generators[i] @ pi_psi)
            )
        )
        for i in range(2)
    )
    coincide = max(
        float(np.linalg.norm(ops.P.entry(0, 1) - ops.S.entry(0, 1))),
        float(np.linalg.norm(ops.O.entry(0, 1) - ops.S.entry(0, 1))),
    )

    expected = {
        "W_norm": 0.0,
        "S_12": s_expect,
        "sld_deviation": 0.0,
        "full_rank": 1.0,
        "E": 0.0,
        "P_O_S_coincide": 0.0,
        "wc_flag": 1.0,
        "sc_flag": 0.0,
    }
    provenance = {
        "W_norm": "equal local generators on the exchange-symmetric state give W = 0",
        "S_12": (
            "S_12 = 4 ((lam - lam*) / (lam + lam*))^2 a_x a_z "
            "[[0,-1,1,0],[1,0,0,1],[-1,0,0,-1],[0,-1,1,0]], "
            "lam* = (1 - lam) / (D - 1)"
        ),
        "sld_deviation": (
            "L_i = 2 i ((lam - lam*) / (lam + lam*)) (Pi_psi G_i - G_i Pi_psi)"
        ),
        "full_rank": "the state has full rank for every lam in (0, 1)",
        "E": "W = 0 makes the incompatibility measure vanish exactly",
        "P_O_S_coincide": "full rank collapses the hierarchy: P = O = S",
        "wc_flag": "weak condition holds",
        "sc_flag": "strong condition still fails: S != 0 despite W = 0",
    }
    computed = {
        "W_norm": w.norm,
        "S_12": ops.S.entry(0, 1),
        "sld_deviation": sld_dev,
        "full_rank": 1.0 if rho.rank == dim else 0.0,
        "E": e.e_value,
        "P_O_S_coincide": coincide,
        "wc_flag": 1.0 if report.flags["WC"] else 0.0,
        "sc_flag": 1.0 if report.flags["SC"] else 0.0,
    }
    extras = {
        "qfim": f.matrix,
        "qfim_condition_number": f.condition_number,
        "S_norm": ops.S.norm,
        "converse_failures": report.converse_failures,
        "lam_star": lam_star,
    }
    return _finish("EX10", p, expected, provenance, computed, extras)


# ---------------------------------------------------------------------------
# OBS2: commuting generators do not imply the weak condition
# ---------------------------------------------------------------------------


def _run_obs2(p):
    rng = np.random.default_rng(int(p["seed"]))
    hams = [tensor(PAULI_X, EYE2), tensor(EYE2, PAULI_Y)]
    hs = hamiltonian_set(hams)
    rho = _ex4_state(0.5)
    w, _, _ = _pipeline_w(rho, hams)
    psi = _rand_ket(rng, 4)
    rho_pure = density_from_eigpairs([(1.0, psi)])
    w_pure, _, _ = _pipeline_w(rho_pure, hams)
    expected = {
        "hamiltonians_commute": 1.0,
        "mixed_wc_violated": 1.0,
        "W_norm": np.sqrt(2.0),
        "pure_wc_holds": 1.0,
    }
    provenance = {
        "hamiltonians_commute": "[H_1, H_2] = 0 for local generators",
        "mixed_wc_violated": "the |00> / |++> mixture at p = 1/2 has W != 0",
        "W_norm": "|W_12| = 8 (1 - p) p^2 = 1 at p = 1/2, Frobenius norm sqrt(2)",
        "pure_wc_holds": "pure states with commuting generators always give W = 0",
    }
    computed = {
        "hamiltonians_commute": 1.0 if hs.commuting else 0.0,
        "mixed_wc_violated": 1.0 if w.norm > 1e-6 else 0.0,
        "W_norm": w.norm,
        "pure_wc_holds": 1.0 if w_pure.norm < 1e-9 else 0.0,
    }
    extras = {"pure_W_norm": w_pure.norm}
    return _finish("OBS2", p, expected, provenance, computed, extras)


# ---------------------------------------------------------------------------
# OBS3: real maximally-entangled-basis mixtures with real local generators
# ---------------------------------------------------------------------------


def _symmetrized_weights(rng, d):
    raw = rng.dirichlet(np.ones(d * d)).reshape(d, d)
    sym = (raw + raw[(-np.arange(d)) % d, :]) / 2.0
    return (sym / sym.sum()).reshape(-1)


def _run_obs3(p):
    rng = np.random.default_rng(int(p["seed"]))
    draws = int(p["draws"])
    worst = {2: 0.0, 3: 0.0}
    all_real = True
    for d in (2, 3):
        eye = np.eye(d, dtype=complex)
        for _ in range(draws):
            if d == 2:
                weights = rng.dirichlet(np.ones(4))
            else:
                weights = _symmetrized_weights(rng, 3)
            bd = bell_diagonal(weights, d)
            all_real = all_real and bd.is_real
            h_a = np.asarray(rng.normal(size=(d, d)))
            h_a = (h_a + h_a.T) / 2.0
            h_b = np.asarray(rng.normal(size=(d, d)))
            h_b = (h_b + h_b.T) / 2.0
            hams = [tensor(h_a.astype(complex), eye), tensor(eye, h_b.astype(complex))]
            w, _, _ = _pipeline_w(bd.rho, hams)
            worst[d] = max(worst[d], w.norm)
    expected = {
        "worst_W_norm_d2": 0.0,
        "worst_W_norm_d3": 0.0,
        "all_real": 1.0,
    }
    provenance = {
        "worst_W_norm_d2": (
            "real mixtures of the d = 2 maximally entangled basis with real "
            "local generators always satisfy the weak condition"
        ),
        "worst_W_norm_d3": (
            "d = 3 mixtures with index-symmetrized weights are real states; "
            "real local generators then give W = 0"
        ),
        "all_real": "every drawn state passes the realness check",
    }
    computed = {
        "worst_W_norm_d2": worst[2],
        "worst_W_norm_d3": worst[3],
        "all_real": 1.0 if all_real else 0.0,
    }
    return _finish("OBS3", p, expected, provenance, computed)


# ---------------------------------------------------------------------------
# OBS5: two-qubit maximally-entangled-basis mixtures, arbitrary spin axes
# ---------------------------------------------------------------------------


def _run_obs5(p):
    rng = np.random.default_rng(int(p["seed"]))
    draws = int(p["draws"])
    worst = 0.0
    for _ in range(draws):
        weights = rng.dirichlet(np.ones(4))
        bd = bell_diagonal(weights, 2)
        axes = []
        for _ in range(2):
            n = rng.normal(size=3)
            n = n / np.linalg.norm(n) * rng.uniform(0.5, 2.0)
            axes.append(n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z)
        hams = [tensor(axes[0], EYE2), tensor(EYE2, axes[1])]
        w, _, _ = _pipeline_w(bd.rho, hams)
        worst = max(worst, w.norm)
    expected = {"worst_W_norm": 0.0}
    provenance = {
        "worst_W_norm": (
            "every two-qubit maximally-entangled-basis mixture satisfies the "
            "weak condition for arbitrary local spin directions and magnitudes"
        )
    }
    computed = {"worst_W_norm": worst}
    return _finish("OBS5", p, expected, provenance, computed)


# ---------------------------------------------------------------------------
# OBS6: all three converse implications of the hierarchy fail
# ---------------------------------------------------------------------------


def _run_obs6(p):
    # weak-but-not-partial: the qutrit pair at its generic knobs
    rho_a = _tilted_pair_state(np.pi / 3, 0.25)
    hs_a = hamiltonian_set([COUPLER_01 + DIAG_01, DIAG_112])
    rep_a = classify(rho_a, hs_a)
    # partial-but-not-one-sided: the entangled triple at matched knobs
    rho_b = _entangled_triple_state(0.3, 0.2)
    hs_b = hamiltonian_set(
        [
            tensor(PAULI_X + 0.4 * PAULI_Z, EYE2),
            tensor(EYE2, PAULI_X + 0.4 * PAULI_Z),
        ]
    )
    rep_b = classify(rho_b, hs_b)
    # one-sided-but-not-strong: the two-qutrit pair at its generic knobs
    rho_c, _, _ = _ex9_pipeline(1.0 / 3.0, 1.0, 0.7)
    eta = COUPLER_01 + 0.7 * DIAG_01
    hs_c = hamiltonian_set([tensor(eta, EYE3), tensor(EYE3, eta)])
    rep_c = classify(rho_c, hs_c)

    expected = {
        "wc_without_pc": 1.0,
        "pc_without_oc": 1.0,
        "oc_without_sc": 1.0,
        "hamiltonians_commute": 1.0,
    }
    provenance = {
        "wc_without_pc": "qutrit pair: W = 0 while P != 0",
        "pc_without_oc": "entangled triple at a_x b_z = a_z b_x: P = 0 while O != 0",
        "oc_without_sc": "two-qutrit pair: O = 0 while S != 0",
        "hamiltonians_commute": "all three demonstrations use commuting generators",
    }
    computed = {
        "wc_without_pc": 1.0
        if rep_a.flags["WC"] and not rep_a.flags["PC"]
        else 0.0,
        "pc_without_oc": 1.0
        if rep_b.flags["PC"] and not rep_b.flags["OC"]
        else 0.0,
        "oc_without_sc": 1.0
        if rep_c.flags["OC"] and not rep_c.flags["SC"]
        else 0.0,
        "hamiltonians_commute": 1.0
        if all(
            hamiltonian_set(h).commuting
            for h in (
                [COUPLER_01 + DIAG_01, DIAG_112],
                [
                    tensor(PAULI_X + 0.4 * PAULI_Z, EYE2),
                    tensor(EYE2, PAULI_X + 0.4 * PAULI_Z),
                ],
                [tensor(eta, EYE3), tensor(EYE3, eta)],
            )
        )
        else 0.0,
    }
    extras = {
        "weak_without_partial_flags": rep_a.flags,
        "partial_without_one_sided_flags": rep_b.flags,
        "one_sided_without_strong_flags": rep_c.flags,
    }
    return _finish("OBS6", p, expected, provenance, computed, extras)


# ---------------------------------------------------------------------------
# OBS7: a full-rank state where W = 0 but the SLDs do not commute
# ---------------------------------------------------------------------------


def _run_obs7(p):
    lam = float(p["lam"])
    rho, _ = _pseudo_pure_state(lam)
    local = PAULI_X + PAULI_Z
    hams = [tensor(local, EYE2), tensor(EYE2, local)]
    hs = hamiltonian_set(hams)
    pt = encode(hs, np.zeros(2))
    slds = sld_rotated(rho.spectrum, pt)
    w = weak_direct(rho, slds)
    ops = condition_operators_direct(rho.spectrum, slds)
    f = qfim(rho, slds)
    e = incompatibility(f, w)
    report = classify(rho, hs)
    coincide = max(
        float(np.linalg.norm(ops.P.entry(0, 1) - ops.S.entry(0, 1))),
        float(np.linalg.norm(ops.O.entry(0, 1) - ops.S.entry(0, 1))),
    )
    expected = {
        "full_rank": 1.0,
        "wc_holds": 1.0,
        "sc_fails": 1.0,
        "S_nonzero": 1.0,
        "E": 0.0,
        "projector_coincidence": 0.0,
    }
    provenance = {
        "full_rank": "the pseudo-pure state has full rank",
        "wc_holds": "W = 0, so the scalar incompatibility measure vanishes",
        "sc_fails": "the SLD commutator itself stays nonzero",
        "S_nonzero": "the SLD commutator itself stays nonzero",
        "E": "E = 0 exactly on weak-condition states",
        "projector_coincidence": (
            "full rank makes the support projector trivial, so P = O = S and "
            "the scalar condition is the only one that can differ"
        ),
    }
    computed = {
        "full_rank": 1.0 if rho.rank == 4 else 0.0,
        "wc_holds": 1.0 if report.flags["WC"] else 0.0,
        "sc_fails": 1.0 if not report.flags["SC"] else 0.0,
        "S_nonzero": 1.0 if ops.S.norm > 1e-6 else 0.0,
        "E": e.e_value,
        "projector_coincidence": coincide,
    }
    extras = {
        "norms": report.norms,
        "flags": report.flags,
        "qfim_condition_number": f.condition_number,
    }
    return _finish("OBS7", p, expected, provenance, computed, extras)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_DEFAULTS = {
    "EX1": {"seed": 7, "draws": 100},
    "EX2": {"dim": 4, "p": 0.6, "seed": 11},
    "EX3": {"alpha": np.pi / 3, "lam": 0.25},
    "EX4": {"p": 0.5},
    "EX5": {"lam": 0.25},
    "EX6": {"seed": 23},
    "EX7": {"alpha": np.pi / 3, "lam": 0.25, "a": 1.0, "a_prime": 1.0},
    "EX8": {
        "lam1": 0.3,
        "lam2": 0.2,
        "ax": 1.0,
        "az": 0.3,
        "bx": 1.0,
        "bz": -0.5,
    },
    "EX9": {"lam": 1.0 / 3.0, "a": 1.0, "a_prime": 0.7},
    "EX10": {"dim": 4, "lam": 0.6, "ax": 1.0, "az": 1.0},
    "OBS2": {"seed": 29},
    "OBS3": {"seed": 31, "draws": 25},
    "OBS5": {"seed": 37, "draws": 25},
    "OBS6": {},
    "OBS7": {"lam": 0.6},
}

_RUNNERS = {
    "EX1": _run_ex1,
    "EX2": _run_ex2,
    "EX3": _run_ex3,
    "EX4": _run_ex4,
    "EX5": _run_ex5,
    "EX6": _run_ex6,
    "EX7": _run_ex7,
    "EX8": _run_ex8,
    "EX9": _run_ex9,
    "EX10": _run_ex10,
    "OBS2": _run_obs2,
    "OBS3": _run_obs3,
    "OBS5": _run_obs5,
    "OBS6": _run_obs6,
    "OBS7": _run_obs7,
}

EXAMPLE_IDS = list(_RUNNERS)


def default_parameters(example_id):
    if example_id not in _DEFAULTS:
        raise ValidationError(f"unknown example id: {example_id}")
    return dict(_DEFAULTS[example_id])


def run_example(example_id, params=None):
    """Run one worked example, optionally overriding its default parameters."""
    if example_id not in _RUNNERS:
        raise ValidationError(f"unknown example id: {example_id}")
    merged = dict(_DEFAULTS[example_id])
    for key, value in (params or {}).items():
        if key not in merged:
            raise ValidationError(
                f"unknown parameter {key!r} for {example_id}; "
                f"valid names: {sorted(merged)}"
            )
        merged[key] = value
    return _RUNNERS[example_id](merged)


def run_all(params=None):
    return [run_example(ex_id) for ex_id in EXAMPLE_IDS]


def example_configuration(example_id, params=None):
    """State, Hamiltonian set, and theta for the single-configuration examples.

    Used by the sweep and classify front ends; batch-style reports (EX1, EX6,
    OBS2..OBS7) do not define a single configuration and are rejected.
    """
    if example_id not in _RUNNERS:
        raise ValidationError(f"unknown example id: {example_id}")
    merged = dict(_DEFAULTS[example_id])
    for key, value in (params or {}).items():
        if key not in merged:
            raise ValidationError(
                f"unknown parameter {key!r} for {example_id}; "
                f"valid names: {sorted(merged)}"
            )
        merged[key] = value
    p = merged
    if example_id == "EX2":
        rng = np.random.default_rng(int(p["seed"]))
        dim = int(p["dim"])
        psi = _rand_ket(rng, dim)
        hams = [_rand_herm(rng, dim), _rand_herm(rng, dim)]
        return white_noise_state(psi, float(p["p"])), hamiltonian_set(hams), None
    if example_id == "EX3":
        rho = _tilted_pair_state(float(p["alpha"]), float(p["lam"]))
        return rho, hamiltonian_set([COUPLER_01_ANTI, DIAG_112]), None
    if example_id == "EX4":
        rho = _ex4_state(float(p["p"]))
        hams = [tensor(PAULI_X, EYE2), tensor(EYE2, PAULI_Y)]
        return rho, hamiltonian_set(hams), None
    if example_id == "EX5":
        psi1, psi2 = _w_type_kets()
        lam = float(p["lam"])
        if not 0.0 < lam < 1.0:
            raise ValidationError("out-of-domain parameters: lam must be in (0, 1)")
        rho = density_from_eigpairs([(lam, psi1), (1.0 - lam, psi2)])
        hams = [
            tensor(PAULI_Z, EYE2, EYE2),
            tensor(EYE2, PAULI_Z, EYE2),
            tensor(EYE2, EYE2, PAULI_Z),
        ]
        return rho, hamiltonian_set(hams), None
    if example_id == "EX7":
        rho = _tilted_pair_state(float(p["alpha"]), float(p["lam"]))
        h1 = float(p["a"]) * COUPLER_01 + float(p["a_prime"]) * DIAG_01
        return rho, hamiltonian_set([h1, DIAG_112]), None
    if example_id == "EX8":
        rho = _entangled_triple_state(float(p["lam1"]), float(p["lam2"]))
        hams = [
            tensor(float(p["ax"]) * PAULI_X + float(p["az"]) * PAULI_Z, EYE2),
            tensor(EYE2, float(p["bx"]) * PAULI_X + float(p["bz"]) * PAULI_Z),
        ]
        return rho, hamiltonian_set(hams), None
    if example_id == "EX9":
        rho, pt, _ = _ex9_pipeline(float(p["lam"]), float(p["a"]), float(p["a_prime"]))
        eta = float(p["a"]) * COUPLER_01 + float(p["a_prime"]) * DIAG_01
        return rho, hamiltonian_set([tensor(eta, EYE3), tensor(EYE3, eta)]), None
    if example_id == "EX10" or example_id == "OBS7":
        rho, _ = _pseudo_pure_state(float(p["lam"]), int(p.get("dim", 4)))
        ax = float(p.get("ax", 1.0))
        az = float(p.get("az", 1.0))
        local = ax * PAULI_X + az * PAULI_Z
        hams = [tensor(local, EYE2), tensor(EYE2, local)]
        return rho, hamiltonian_set(hams), None
    raise ValidationError(
        f"example {example_id} does not define a single sweepable configuration"
    )
