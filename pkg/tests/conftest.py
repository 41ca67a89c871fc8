"""Shared test helpers and the acceptance-criteria summary plugin.

test_acceptance.py records one line per criterion through record_criterion;
the terminal-summary hook prints the collected lines as a dedicated section
at the end of the pytest run, so the gate's verdicts are visible in one block
regardless of how many tests ran around them.
"""

import numpy as np

_criterion_lines = {}


def record_criterion(num, name, passed, detail=""):
    line = f"criterion {num} ({name}): {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f" -- {detail}"
    _criterion_lines[num] = line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_criterion_lines):
            terminalreporter.write_line(_criterion_lines[num])


def random_density(rng, dim, rank=None):
    """Haar-basis random density matrix of the given rank (default: full)."""
    if rank is None:
        rank = dim
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(z)
    weights = rng.dirichlet(np.ones(rank))
    mat = (q[:, :rank] * weights) @ q[:, :rank].conj().T
    return (mat + mat.conj().T) / 2.0


def random_hermitian_matrix(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (z + z.conj().T) / 2.0
