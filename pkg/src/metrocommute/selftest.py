"""Seeded randomized property suites over the whole library.

Each suite draws reproducible random problems (states of every rank, generators,
encoding points, measurements), checks one invariant, and reports the number of
violations plus the worst deviation it saw. The same helpers and suites back
the command-line self-test and the release gate, which only differ in draw
counts.
"""

from dataclasses import dataclass

import numpy as np

from .conditions import (
    classify,
    condition_operators_direct,
    pc_trace_norm,
    support_kernel_decomposition,
    weak_decomposed,
    weak_direct,
    weak_integral,
    weak_rank_two,
)
from .encoding import encode, evolve, hamiltonian_set
from .metrology import qfim, qfim_additivity, verify_fc_order
from .operator_core import ValidationError, dagger, tensor
from .sld import cfim, sld_encoded, sld_rotated
from .states import bell_diagonal, density_from_eigpairs, povm_set, white_noise_state


@dataclass(eq=False)
class SuiteResult:
    name: str
    draws: int
    violations: int
    worst: float
    note: str = ""

    def line(self):
        out = (
            f"{self.name:<30s} draws={self.draws:<4d} "
            f"violations={self.violations:<3d} worst={self.worst:.3e}"
        )
        if self.note:
            out += f"  ({self.note})"
        return out


# ---------------------------------------------------------------------------
# reproducible draw helpers
# ---------------------------------------------------------------------------


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + dagger(a)) / 2.0


def random_unitary(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, d, rank):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, _ = np.linalg.qr(a)
    weights = rng.dirichlet(np.ones(rank))
    return density_from_eigpairs(
        list(zip(weights, [q[:, k] for k in range(rank)]))
    )


def random_povm(rng, d, n):
    mats = []
    for _ in range(n):
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        mats.append(a @ dagger(a))
    total = sum(mats)
    vals, vecs = np.linalg.eigh(total)
    inv_sqrt = (vecs * (1.0 / np.sqrt(vals))) @ dagger(vecs)
    return povm_set([inv_sqrt @ m @ inv_sqrt for m in mats])


def _draw_problem(rng, max_dim=9, max_m=3):
    d = int(rng.integers(2, max_dim + 1))
    rank = int(rng.integers(1, d + 1))
    m = int(rng.integers(2, max_m + 1))
    rho = random_state(rng, d, rank)
    hs = hamiltonian_set([random_hermitian(rng, d) for _ in range(m)])
    pt = encode(hs, rng.normal(size=m))
    return rho, hs, pt


def _block_dev(a, b):
    m = a.m
    return max(
        float(np.linalg.norm(a.entry(i, j) - b.entry(i, j)))
        for i in range(m)
        for j in range(m)
    )


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_route_agreement(seed, draws, tol=1e-9):
    """All independent W routes agree: direct, support-pair, spectral kernel,
    and the rank-two fast path where it applies."""
    rng = np.random.default_rng([seed, 1])
    worst, violations = 0.0, 0
    for _ in range(draws):
        rho, _, pt = _draw_problem(rng)
        slds = sld_rotated(rho.spectrum, pt)
        w_direct = weak_direct(rho, slds).entries
        gamma, delta, w_dec = weak_decomposed(rho.spectrum, pt)
        w_int = weak_integral(rho.spectrum, pt).entries
        dev = max(
            float(np.max(np.abs(w_direct - w_dec.entries))),
            float(np.max(np.abs(w_direct - w_int))),
        )
        if rho.rank == 2:
            # the fast path computes the Delta piece of the decomposition
            d_r2 = weak_rank_two(rho.spectrum, pt).entries
            dev = max(
                dev,
                float(np.max(np.abs(d_r2 - delta.entries))),
                float(np.max(np.abs(w_direct - (gamma.entries + d_r2)))),
            )
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("route agreement", draws, violations, worst)


def suite_reassembly(seed, draws, tol=1e-9):
    """Support/kernel terms reassemble the operator conditions exactly:
    P = I_ss + I_ss', O = P + I_ks, S = O + I_sk + I_kk, against the direct
    commutator construction."""
    rng = np.random.default_rng([seed, 2])
    worst, violations = 0.0, 0
    for _ in range(draws):
        rho, _, pt = _draw_problem(rng)
        slds = sld_rotated(rho.spectrum, pt)
        ops = condition_operators_direct(rho.spectrum, slds)
        terms = support_kernel_decomposition(rho.spectrum, pt, check=False)
        m = ops.S.m
        dev = 0.0
        for i in range(m):
            for j in range(m):
                p_sum = terms.i_ss.entry(i, j) + terms.i_ss_prime.entry(i, j)
                o_sum = p_sum + terms.i_ks.entry(i, j)
                s_sum = o_sum + terms.i_sk.entry(i, j) + terms.i_kk.entry(i, j)
                dev = max(
                    dev,
                    float(np.linalg.norm(ops.P.entry(i, j) - p_sum)),
                    float(np.linalg.norm(ops.O.entry(i, j) - o_sum)),
                    float(np.linalg.norm(ops.S.entry(i, j) - s_sum)),
                    float(np.linalg.norm(terms.P.entry(i, j) - p_sum)),
                    float(np.linalg.norm(terms.O.entry(i, j) - o_sum)),
                    float(np.linalg.norm(terms.S.entry(i, j) - s_sum)),
                )
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("support/kernel reassembly", draws, violations, worst)


def suite_structure(seed, draws, tol=1e-9):
    """Structural identities P = Pi O and W_ij = tr[rho P_ij]."""
    rng = np.random.default_rng([seed, 3])
    worst, violations = 0.0, 0
    for _ in range(draws):
        rho, _, pt = _draw_problem(rng)
        slds = sld_rotated(rho.spectrum, pt)
        ops = condition_operators_direct(rho.spectrum, slds)
        w = weak_direct(rho, slds).entries
        pi = rho.spectrum.support_projector
        m = ops.S.m
        dev = 0.0
        for i in range(m):
            for j in range(m):
                dev = max(
                    dev,
                    float(
                        np.linalg.norm(ops.P.entry(i, j) - pi @ ops.O.entry(i, j))
                    ),
                    abs(w[i, j] - np.trace(rho.matrix @ ops.P.entry(i, j))),
                )
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("structural identities", draws, violations, worst)


def _special_configurations(rng, k):
    """Rotating menu of constructions that light up nontrivial flag patterns."""
    from .examples import example_configuration

    pick = k % 4
    if pick == 0:
        return example_configuration(
            "EX7", {"lam": float(rng.uniform(0.1, 0.45))}
        )[:2]
    if pick == 1:
        ax, az = rng.uniform(0.3, 1.0, size=2)
        scale = float(rng.uniform(0.5, 1.5))
        return example_configuration(
            "EX8",
            {
                "lam1": float(rng.uniform(0.1, 0.4)),
                "lam2": float(rng.uniform(0.1, 0.4)),
                "ax": float(ax),
                "az": float(az),
                "bx": float(scale * ax),
                "bz": float(scale * az),
            },
        )[:2]
    if pick == 2:
        return example_configuration(
            "EX9", {"lam": float(rng.uniform(0.1, 0.9))}
        )[:2]
    return example_configuration(
        "EX10", {"lam": float(rng.uniform(0.3, 0.9))}
    )[:2]


def suite_chain(seed, draws, tol=1e-8):
    """SC => OC => PC => WC with zero violations, on generic draws interleaved
    with constructions that realize every distinct flag pattern."""
    rng = np.random.default_rng([seed, 4])
    violations = 0
    patterns = set()
    for k in range(draws):
        if k % 2 == 0:
            rho, hs, _ = _draw_problem(rng)
        else:
            rho, hs = _special_configurations(rng, k // 2)
        report = classify(rho, hs, tol=tol)
        patterns.add(tuple(report.flags[c] for c in ("WC", "PC", "OC", "SC")))
        violations += not report.hierarchy_consistent
    return SuiteResult(
        "hierarchy chain",
        draws,
        violations,
        0.0,
        note=f"{len(patterns)} distinct flag patterns",
    )


def suite_qubit_identity(seed, draws, tol=1e-10):
    """Single-qubit identity W = (2 tr[rho^2] - 1) Gamma at every encoding."""
    rng = np.random.default_rng([seed, 5])
    worst, violations = 0.0, 0
    for _ in range(draws):
        rank = int(rng.integers(1, 3))
        rho = random_state(rng, 2, rank)
        hs = hamiltonian_set([random_hermitian(rng, 2), random_hermitian(rng, 2)])
        pt = encode(hs, rng.uniform(-1.0, 1.0, size=2))
        slds = sld_rotated(rho.spectrum, pt)
        w12 = weak_direct(rho, slds).entries[0, 1]
        g1, g2 = pt.generators
        gamma12 = 4.0 * np.trace(rho.matrix @ (g1 @ g2 - g2 @ g1))
        purity = float(np.trace(rho.matrix @ rho.matrix).real)
        dev = abs(w12 - (2.0 * purity - 1.0) * gamma12)
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("qubit purity identity", draws, violations, worst)


def suite_white_noise(seed, draws, tol=1e-9):
    """White-noise closed form W_12 = 4 p^3 D^2 / (p (D-2) + 2)^2 <[H1,H2]>."""
    rng = np.random.default_rng([seed, 6])
    worst, violations = 0.0, 0
    for _ in range(draws):
        d = int(rng.integers(2, 10))
        psi = rng.normal(size=d) + 1j * rng.normal(size=d)
        psi /= np.linalg.norm(psi)
        p = float(rng.uniform(0.05, 0.95))
        rho = white_noise_state(psi, p)
        h1, h2 = random_hermitian(rng, d), random_hermitian(rng, d)
        hs = hamiltonian_set([h1, h2])
        pt = encode(hs, np.zeros(2))
        w12 = weak_direct(rho, sld_rotated(rho.spectrum, pt)).entries[0, 1]
        closed = (
            4.0 * p**3 * d**2 / (p * (d - 2.0) + 2.0) ** 2
        ) * (psi.conj() @ (h1 @ h2 - h2 @ h1) @ psi)
        dev = abs(w12 - closed)
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("white-noise closed form", draws, violations, worst)


def suite_fisher_order(seed, draws, tol=1e-9):
    """F_C <= F_Q as an operator inequality for every POVM."""
    rng = np.random.default_rng([seed, 7])
    worst, violations = 0.0, 0
    for _ in range(draws):
        d = int(rng.integers(2, 7))
        rank = int(rng.integers(1, d + 1))
        rho = random_state(rng, d, rank)
        m = int(rng.integers(1, 4))
        hs = hamiltonian_set([random_hermitian(rng, d) for _ in range(m)])
        pt = encode(hs, rng.normal(size=m))
        slds = sld_rotated(rho.spectrum, pt)
        rho_theta = evolve(rho, pt)
        povm = random_povm(rng, d, int(rng.integers(2, 6)))
        ok, witness = verify_fc_order(rho_theta, povm, sld_encoded(slds, pt))
        worst = min(worst, witness)
        violations += not ok
    return SuiteResult("fisher ordering", draws, violations, abs(worst))


def suite_saturation(seed, draws, tol=1e-8):
    """Measuring the SLD eigenbasis saturates the single-parameter bound."""
    rng = np.random.default_rng([seed, 8])
    worst, violations = 0.0, 0
    for _ in range(draws):
        d = int(rng.integers(2, 7))
        rank = int(rng.integers(1, d + 1))
        rho = random_state(rng, d, rank)
        hs = hamiltonian_set([random_hermitian(rng, d)])
        pt = encode(hs, rng.normal(size=1))
        slds = sld_rotated(rho.spectrum, pt)
        rho_theta = evolve(rho, pt)
        l_enc = sld_encoded(slds, pt)[0]
        vals, vecs = np.linalg.eigh(l_enc)
        povm = povm_set(
            [np.outer(vecs[:, k], vecs[:, k].conj()) for k in range(d)]
        )
        f_q = qfim(rho_theta, [l_enc]).matrix[0, 0]
        f_c = cfim(rho_theta, povm, [l_enc]).matrix[0, 0]
        dev = abs(f_q - f_c)
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("single-parameter saturation", draws, violations, worst)


def suite_additivity(seed, draws, tol=1e-8):
    """Two-copy additivity F(rho x rho) = 2 F(rho), relative deviation."""
    rng = np.random.default_rng([seed, 9])
    worst, violations = 0.0, 0
    for _ in range(draws):
        d = int(rng.integers(2, 5))
        rank = int(rng.integers(1, d + 1))
        rho = random_state(rng, d, rank)
        m = int(rng.integers(2, 4))
        hs = hamiltonian_set([random_hermitian(rng, d) for _ in range(m)])
        pt = encode(hs, rng.normal(size=m))
        dev = qfim_additivity(rho, pt, 2)
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("two-copy additivity", draws, violations, worst)


def suite_pc_indicator(seed, draws, tol=1e-8):
    """The trace-norm indicator vanishes exactly when P does.

    Half the draws are generic rank-deficient problems (P generically
    nonzero); the other half are matched-knob constructions with P = 0 by
    design, so both directions of the equivalence are exercised.
    """
    from .examples import example_configuration

    rng = np.random.default_rng([seed, 10])
    worst_zero_side = 0.0
    violations = 0
    for k in range(draws):
        if k % 2 == 0:
            d = int(rng.integers(3, 7))
            rho = random_state(rng, d, d - 1)
            hs = hamiltonian_set([random_hermitian(rng, d), random_hermitian(rng, d)])
        else:
            ax, az = rng.uniform(0.3, 1.0, size=2)
            scale = float(rng.uniform(0.5, 1.5))
            rho, hs, _ = example_configuration(
                "EX8",
                {
                    "lam1": float(rng.uniform(0.1, 0.4)),
                    "lam2": float(rng.uniform(0.1, 0.4)),
                    "ax": float(ax),
                    "az": float(az),
                    "bx": float(scale * ax),
                    "bz": float(scale * az),
                },
            )
        pt = encode(hs, np.zeros(hs.m))
        slds = sld_rotated(rho.spectrum, pt)
        ops = condition_operators_direct(rho.spectrum, slds)
        tn = pc_trace_norm(rho, slds)
        scale_norm = max(1.0, max(np.linalg.norm(l) ** 2 for l in slds.ops))
        p_zero = ops.P.norm <= tol * scale_norm
        tn_zero = tn.norm <= tol * scale_norm
        if p_zero != tn_zero:
            violations += 1
        if p_zero:
            worst_zero_side = max(worst_zero_side, tn.norm)
    return SuiteResult("trace-norm indicator", draws, violations, worst_zero_side)


def suite_basis_independence(seed, draws, tol=1e-9):
    """Condition norms and the QFIM are invariant under a global basis change."""
    rng = np.random.default_rng([seed, 11])
    worst, violations = 0.0, 0
    for _ in range(draws):
        d = int(rng.integers(2, 7))
        rank = int(rng.integers(1, d + 1))
        rho = random_state(rng, d, rank)
        m = int(rng.integers(2, 4))
        hams = [random_hermitian(rng, d) for _ in range(m)]
        hs = hamiltonian_set(hams)
        v = random_unitary(rng, d)
        rho_rot = density_from_eigpairs(
            [
                (float(rho.spectrum.eigenvalues[k]), v @ rho.spectrum.eigenvectors[:, k])
                for k in range(rho.rank)
            ]
        )
        hs_rot = hamiltonian_set([v @ h @ dagger(v) for h in hams])
        rep = classify(rho, hs)
        rep_rot = classify(rho_rot, hs_rot)
        pt = encode(hs, np.zeros(m))
        pt_rot = encode(hs_rot, np.zeros(m))
        f = qfim(rho, sld_rotated(rho.spectrum, pt)).matrix
        f_rot = qfim(rho_rot, sld_rotated(rho_rot.spectrum, pt_rot)).matrix
        dev = float(np.max(np.abs(f - f_rot)))
        for key in ("W", "P", "O", "S"):
            dev = max(dev, abs(rep.norms[key] - rep_rot.norms[key]))
        worst = max(worst, dev)
        violations += dev > tol
    return SuiteResult("basis independence", draws, violations, worst)


def suite_real_bell_diagonal(seed, draws, tol=1e-9):
    """Real maximally-entangled-basis mixtures with real local generators
    satisfy the weak condition, in d = 2 and d = 3."""
    rng = np.random.default_rng([seed, 12])
    worst, violations = 0.0, 0
    half = max(draws // 2, 1)
    for k in range(draws):
        d = 2 if k < half else 3
        eye = np.eye(d, dtype=complex)
        if d == 2:
            weights = rng.dirichlet(np.ones(4))
        else:
            raw = rng.dirichlet(np.ones(9)).reshape(3, 3)
            sym = (raw + raw[(-np.arange(3)) % 3, :]) / 2.0
            weights = (sym / sym.sum()).reshape(-1)
        bd = bell_diagonal(weights, d)
        h_a = rng.normal(size=(d, d))
        h_a = (h_a + h_a.T) / 2.0
        h_b = rng.normal(size=(d, d))
        h_b = (h_b + h_b.T) / 2.0
        hs = hamiltonian_set(
            [tensor(h_a.astype(complex), eye), tensor(eye, h_b.astype(complex))]
        )
        pt = encode(hs, np.zeros(2))
        w = weak_direct(bd.rho, sld_rotated(bd.rho.spectrum, pt))
        worst = max(worst, w.norm)
        violations += w.norm > tol
    return SuiteResult("real entangled-basis mixtures", draws, violations, worst)


def suite_spin_bell_diagonal(seed, draws, tol=1e-9):
    """Two-qubit maximally-entangled-basis mixtures satisfy the weak condition
    for arbitrary local spin directions."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    rng = np.random.default_rng([seed, 13])
    worst, violations = 0.0, 0
    for _ in range(draws):
        bd = bell_diagonal(rng.dirichlet(np.ones(4)), 2)
        hams = []
        for _ in range(2):
            n = rng.normal(size=3)
            n = n / np.linalg.norm(n) * rng.uniform(0.5, 2.0)
            hams.append(n[0] * sx + n[1] * sy + n[2] * sz)
        hs = hamiltonian_set([tensor(hams[0], eye), tensor(eye, hams[1])])
        pt = encode(hs, np.zeros(2))
        w = weak_direct(bd.rho, sld_rotated(bd.rho.spectrum, pt))
        worst = max(worst, w.norm)
        violations += w.norm > tol
    return SuiteResult("spin entangled-basis mixtures", draws, violations, worst)


ALL_SUITES = [
    suite_route_agreement,
    suite_reassembly,
    suite_structure,
    suite_chain,
    suite_qubit_identity,
    suite_white_noise,
    suite_fisher_order,
    suite_saturation,
    suite_additivity,
    suite_pc_indicator,
    suite_basis_independence,
    suite_real_bell_diagonal,
    suite_spin_bell_diagonal,
]


def run_selftest(seed, draws):
    """Run every suite; returns (summary text, total violation count).

    The summary is a pure function of (seed, draws): identical inputs give
    byte-identical output.
    """
    if draws < 1:
        raise ValidationError("draws must be >= 1")
    results = [suite(seed, draws) for suite in ALL_SUITES]
    total = sum(r.violations for r in results)
    lines = [f"self-test seed={seed} draws={draws}"]
    lines.extend(r.line() for r in results)
    lines.append(f"total violations: {total}")
    return "\n".join(lines) + "\n", total
