"""Problem descriptors: the JSON input format of the command-line surface.

A descriptor names a state (raw matrix, eigpair list, or a named family), a
Hamiltonian list (raw matrices or named families), an optional encoding point
theta, an optional weight matrix for the scalar precision bound, and optional
tolerance overrides. Matrices are encoded as {"dim": n, "entries": [[re, im],
...]} with entries row-major; vectors as lists of [re, im] pairs.

Parsing is strict and fails with a field-precise message; parse followed by
serialize is idempotent on the canonical form.
"""

import json
from dataclasses import dataclass

import numpy as np

from .encoding import hamiltonian_set
from .examples import (
    EXAMPLE_IDS,
    default_parameters,
    example_configuration,
)
from .operator_core import ValidationError
from .states import (
    RANK_TOL,
    bell_diagonal,
    density_from_eigpairs,
    density_matrix,
    white_noise_state,
)

DEFAULT_ZERO_TOL = 1e-8

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

STATE_FAMILIES = (
    "white_noise",
    "bell_diagonal",
    "pure",
    "maximally_mixed",
    "example",
)
HAMILTONIAN_FAMILIES = ("local_spin",)


@dataclass(eq=False)
class ProblemDescriptor:
    """Parsed, validated problem input; `resolve` yields the live objects."""

    state_spec: object
    hamiltonian_specs: object
    theta: object
    weight: object
    rank_tol: float
    zero_tol: float


def _fail(path, message):
    raise ValidationError(f"{path}: {message}")


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {type(value).__name__}")
    return float(value)


def _complex_pair(value, path):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
    ):
        _fail(path, f"expected an [re, im] pair, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def vector_from_json(value, path):
    if not isinstance(value, list) or not value:
        _fail(path, "expected a non-empty list of [re, im] pairs")
    return np.array(
        [_complex_pair(v, f"{path}[{i}]") for i, v in enumerate(value)],
        dtype=complex,
    )


def matrix_from_json(value, path):
    if not isinstance(value, dict):
        _fail(path, f"expected a matrix object, got {type(value).__name__}")
    extra = set(value) - {"dim", "entries"}
    if extra:
        _fail(path, f"unknown keys {sorted(extra)}")
    if "dim" not in value or "entries" not in value:
        _fail(path, 'matrix object needs keys "dim" and "entries"')
    dim = value["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        _fail(f"{path}.dim", f"expected a positive integer, got {dim!r}")
    entries = value["entries"]
    if not isinstance(entries, list) or len(entries) != dim * dim:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        _fail(f"{path}.entries", f"expected {dim * dim} [re, im] pairs, got {got}")
    flat = [
        _complex_pair(v, f"{path}.entries[{i}]") for i, v in enumerate(entries)
    ]
    return np.array(flat, dtype=complex).reshape(dim, dim)


def matrix_to_json(arr):
    a = np.asarray(arr, dtype=complex)
    return {
        "dim": int(a.shape[0]),
        "entries": [
            [float(v.real), float(v.imag)] for v in a.reshape(-1)
        ],
    }


def vector_to_json(vec):
    return [[float(v.real), float(v.imag)] for v in np.asarray(vec, dtype=complex)]


def _canonical_params(params, path):
    if not isinstance(params, dict):
        _fail(path, f"expected a params object, got {type(params).__name__}")
    out = {}
    for key in sorted(params):
        value = params[key]
        if isinstance(value, str) or isinstance(value, int) and not isinstance(
            value, bool
        ):
            out[key] = value
        elif isinstance(value, float):
            out[key] = float(value)
        elif isinstance(value, list):
            out[key] = value
        else:
            _fail(f"{path}.{key}", f"unsupported parameter value {value!r}")
    return out


def _parse_state_spec(value, path="state"):
    """Validate and canonicalize the state part without resolving it."""
    if isinstance(value, list):
        pairs = []
        for i, item in enumerate(value):
            here = f"{path}[{i}]"
            if not isinstance(item, dict) or set(item) != {"weight", "vector"}:
                _fail(here, 'eigpair needs exactly the keys "weight" and "vector"')
            weight = _number(item["weight"], f"{here}.weight")
            vec = vector_from_json(item["vector"], f"{here}.vector")
            pairs.append({"weight": weight, "vector": vector_to_json(vec)})
        if not pairs:
            _fail(path, "eigpair list is empty")
        return pairs
    if isinstance(value, dict) and "family" in value:
        family = value["family"]
        if family not in STATE_FAMILIES:
            _fail(
                f"{path}.family",
                f"unknown family {family!r}; known: {list(STATE_FAMILIES)}",
            )
        extra = set(value) - {"family", "params"}
        if extra:
            _fail(path, f"unknown keys {sorted(extra)}")
        params = _canonical_params(value.get("params", {}), f"{path}.params")
        return {"family": family, "params": params}
    if isinstance(value, dict):
        return matrix_to_json(matrix_from_json(value, path))
    _fail(path, "expected a matrix object, an eigpair list, or a family object")


def _parse_hamiltonian_spec(value, path):
    if isinstance(value, dict) and "family" in value:
        family = value["family"]
        if family not in HAMILTONIAN_FAMILIES:
            _fail(
                f"{path}.family",
                f"unknown family {family!r}; known: {list(HAMILTONIAN_FAMILIES)}",
            )
        extra = set(value) - {"family", "params"}
        if extra:
            _fail(path, f"unknown keys {sorted(extra)}")
        params = _canonical_params(value.get("params", {}), f"{path}.params")
        return {"family": family, "params": params}
    if isinstance(value, dict):
        return matrix_to_json(matrix_from_json(value, path))
    _fail(path, "expected a matrix object or a family object")


def parse_descriptor(source):
    """Parse a descriptor from JSON text or an already-decoded dict.

    Raises ValidationError with a field-precise path on any defect; malformed
    JSON is reported with line and column.
    """
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as err:
            raise ValidationError(
                f"malformed JSON: {err.msg} (line {err.lineno}, column {err.colno})"
            ) from err
    else:
        data = source
    if not isinstance(data, dict):
        _fail("descriptor", f"expected an object, got {type(data).__name__}")
    known = {
        "state",
        "hamiltonians",
        "theta",
        "weight_matrix",
        "tolerances",
    }
    extra = set(data) - known
    if extra:
        _fail("descriptor", f"unknown keys {sorted(extra)}")
    if "state" not in data:
        _fail("descriptor", 'missing required key "state"')
    state_spec = _parse_state_spec(data["state"])

    is_example = (
        isinstance(state_spec, dict) and state_spec.get("family") == "example"
    )
    ham_specs = None
    if "hamiltonians" in data and data["hamiltonians"] is not None:
        if is_example:
            _fail(
                "hamiltonians",
                'must be omitted when the state family is "example" '
                "(the example supplies its own)",
            )
        raw = data["hamiltonians"]
        if not isinstance(raw, list) or not raw:
            _fail("hamiltonians", "expected a non-empty list")
        ham_specs = [
            _parse_hamiltonian_spec(v, f"hamiltonians[{i}]")
            for i, v in enumerate(raw)
        ]
    elif not is_example:
        _fail("descriptor", 'missing required key "hamiltonians"')

    theta = None
    if data.get("theta") is not None:
        raw = data["theta"]
        if not isinstance(raw, list):
            _fail("theta", "expected a list of reals")
        theta = [_number(v, f"theta[{i}]") for i, v in enumerate(raw)]

    weight = None
    if data.get("weight_matrix") is not None:
        weight = matrix_from_json(data["weight_matrix"], "weight_matrix")
        if np.max(np.abs(weight.imag)) > 1e-12:
            _fail("weight_matrix", "must be real")
        weight = weight.real

    rank_tol, zero_tol = RANK_TOL, DEFAULT_ZERO_TOL
    if data.get("tolerances") is not None:
        tols = data["tolerances"]
        if not isinstance(tols, dict):
            _fail("tolerances", "expected an object")
        extra = set(tols) - {"rank_tol", "zero_tol"}
        if extra:
            _fail("tolerances", f"unknown keys {sorted(extra)}")
        if "rank_tol" in tols:
            rank_tol = _number(tols["rank_tol"], "tolerances.rank_tol")
            if rank_tol <= 0:
                _fail("tolerances.rank_tol", "must be positive")
        if "zero_tol" in tols:
            zero_tol = _number(tols["zero_tol"], "tolerances.zero_tol")
            if zero_tol <= 0:
                _fail("tolerances.zero_tol", "must be positive")

    desc = ProblemDescriptor(
        state_spec=state_spec,
        hamiltonian_specs=ham_specs,
        theta=theta,
        weight=weight,
        rank_tol=rank_tol,
        zero_tol=zero_tol,
    )
    resolve(desc)  # full validation up front: every parse yields usable objects
    return desc


def _resolve_state(spec, rank_tol):
    if isinstance(spec, list):
        pairs = [
            (item["weight"], vector_from_json(item["vector"], "state.vector"))
            for item in spec
        ]
        return density_from_eigpairs(pairs, rank_tol=rank_tol), None, None
    family = spec.get("family")
    params = spec.get("params", {})
    if family is None:
        return (
            density_matrix(matrix_from_json(spec, "state"), rank_tol=rank_tol),
            None,
            None,
        )
    if family == "white_noise":
        if "psi" not in params or "p" not in params:
            _fail("state.params", 'white_noise needs "psi" and "p"')
        psi = vector_from_json(params["psi"], "state.params.psi")
        return white_noise_state(psi, _number(params["p"], "state.params.p")), None, None
    if family == "bell_diagonal":
        if "weights" not in params or "d" not in params:
            _fail("state.params", 'bell_diagonal needs "weights" and "d"')
        d = params["d"]
        if isinstance(d, bool) or not isinstance(d, int):
            _fail("state.params.d", f"expected an integer, got {d!r}")
        weights = [
            _number(v, f"state.params.weights[{i}]")
            for i, v in enumerate(params["weights"])
        ]
        return bell_diagonal(weights, d).rho, None, None
    if family == "pure":
        if "vector" not in params:
            _fail("state.params", 'pure needs "vector"')
        vec = vector_from_json(params["vector"], "state.params.vector")
        norm = np.linalg.norm(vec)
        if norm <= 0:
            _fail("state.params.vector", "zero vector")
        return density_from_eigpairs([(1.0, vec / norm)], rank_tol=rank_tol), None, None
    if family == "maximally_mixed":
        if "dim" not in params:
            _fail("state.params", 'maximally_mixed needs "dim"')
        dim = params["dim"]
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 2:
            _fail("state.params.dim", f"expected an integer >= 2, got {dim!r}")
        return (
            density_matrix(np.eye(dim, dtype=complex) / dim, rank_tol=rank_tol),
            None,
            None,
        )
    if family == "example":
        if "id" not in params:
            _fail("state.params", 'example needs "id"')
        ex_id = params["id"]
        if ex_id not in EXAMPLE_IDS:
            _fail("state.params.id", f"unknown example id: {ex_id}")
        overrides = {
            k: v for k, v in params.items() if k != "id"
        }
        rho, hs, theta = example_configuration(ex_id, overrides)
        return rho, hs, theta
    _fail("state.family", f"unknown family {family!r}")


def _resolve_hamiltonian(spec, path):
    family = spec.get("family")
    if family is None:
        return matrix_from_json(spec, path)
    params = spec.get("params", {})
    if family == "local_spin":
        for key in ("sites", "site", "axis"):
            if key not in params:
                _fail(f"{path}.params", f'local_spin needs "{key}"')
        sites, site = params["sites"], params["site"]
        for name, val in (("sites", sites), ("site", site)):
            if isinstance(val, bool) or not isinstance(val, int):
                _fail(f"{path}.params.{name}", f"expected an integer, got {val!r}")
        if not 0 <= site < sites:
            _fail(f"{path}.params.site", f"site {site} outside 0..{sites - 1}")
        axis = params["axis"]
        if not isinstance(axis, list) or len(axis) != 3:
            _fail(f"{path}.params.axis", "expected [x, y, z] components")
        ax = [_number(v, f"{path}.params.axis[{i}]") for i, v in enumerate(axis)]
        local = ax[0] * PAULI["x"] + ax[1] * PAULI["y"] + ax[2] * PAULI["z"]
        factors = [
            local if k == site else np.eye(2, dtype=complex) for k in range(sites)
        ]
        out = factors[0]
        for f in factors[1:]:
            out = np.kron(out, f)
        return out
    _fail(f"{path}.family", f"unknown family {family!r}")


def resolve(desc):
    """Materialize (DensityMatrix, HamiltonianSet, theta, weight) from a descriptor."""
    rho, hs, theta = _resolve_state(desc.state_spec, desc.rank_tol)
    if hs is None:
        hams = [
            _resolve_hamiltonian(spec, f"hamiltonians[{i}]")
            for i, spec in enumerate(desc.hamiltonian_specs)
        ]
        hs = hamiltonian_set(hams)
    if desc.theta is not None:
        theta = np.asarray(desc.theta, dtype=float)
    if theta is None:
        theta = np.zeros(hs.m)
    if theta.size != hs.m:
        _fail("theta", f"expected {hs.m} entries, got {theta.size}")
    if rho.dim != hs.dim:
        _fail(
            "descriptor",
            f"state dimension {rho.dim} does not match Hamiltonian dimension {hs.dim}",
        )
    weight = desc.weight
    if weight is not None and weight.shape != (hs.m, hs.m):
        _fail(
            "weight_matrix",
            f"expected shape ({hs.m}, {hs.m}), got {weight.shape}",
        )
    return rho, hs, theta, weight


def serialize_descriptor(desc):
    """Canonical JSON-ready dict; parse(serialize(.)) is the identity."""
    out = {"state": desc.state_spec}
    if desc.hamiltonian_specs is not None:
        out["hamiltonians"] = desc.hamiltonian_specs
    if desc.theta is not None:
        out["theta"] = [float(v) for v in desc.theta]
    if desc.weight is not None:
        out["weight_matrix"] = matrix_to_json(desc.weight)
    out["tolerances"] = {
        "rank_tol": float(desc.rank_tol),
        "zero_tol": float(desc.zero_tol),
    }
    return out


def sweepable_parameters(desc):
    """Names that cmd_sweep may vary: the numeric params of a family state."""
    spec = desc.state_spec
    if not isinstance(spec, dict) or "family" not in spec:
        return {}
    family, params = spec["family"], spec.get("params", {})
    if family == "example":
        ex_id = params.get("id")
        defaults = default_parameters(ex_id)
        merged = dict(defaults)
        merged.update({k: v for k, v in params.items() if k != "id"})
        return {
            k: float(v)
            for k, v in merged.items()
            if isinstance(v, (int, float)) and not isinstance(v, bool)
        }
    return {
        k: float(v)
        for k, v in params.items()
        if isinstance(v, (int, float)) and not isinstance(v, bool)
    }


def with_parameter(desc, name, value):
    """A copy of the descriptor with one family parameter replaced."""
    spec = desc.state_spec
    if not isinstance(spec, dict) or "family" not in spec:
        raise ValidationError(
            "state: sweeps need a family-based state (raw matrices and "
            "eigpair lists have no named parameters)"
        )
    known = sweepable_parameters(desc)
    if name not in known:
        raise ValidationError(
            f"unknown parameter {name!r} for family {spec['family']!r}; "
            f"valid names: {sorted(known)}"
        )
    params = dict(spec.get("params", {}))
    params[name] = float(value)
    new_spec = {"family": spec["family"], "params": params}
    return ProblemDescriptor(
        state_spec=new_spec,
        hamiltonian_specs=desc.hamiltonian_specs,
        theta=desc.theta,
        weight=desc.weight,
        rank_tol=desc.rank_tol,
        zero_tol=desc.zero_tol,
    )
