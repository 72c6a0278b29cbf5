"""JSON system files and the seeded random system generator.

System file layout::

    {
      "ambient_dim": n,
      "components": [
        {
          "weight": v,
          "subspace_basis": [[[re, im], ... n pairs], ...],
          "operator": {"rows": d, "cols": n, "entries": [[re, im], ... d*n pairs]}
        },
        ...
      ]
    }

Basis vectors need not be orthonormal; they are orthonormalized on load.
"""
import json
import math
from numbers import Real

import numpy as np

from gff.errors import BadParams, DimensionMismatch, NonPositiveWeight, ParseError
from gff.gfusion import GFusionComponent, GFusionSystem
from gff.linalg import DEFAULT_TOL, orthonormalize
from gff.subspace import ClosedSubspace


def _complex(value, path):
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(x, Real) and not isinstance(x, bool) for x in value)
    ):
        raise ParseError(path, "expected a two-element [re, im] array of numbers")
    z = complex(value[0], value[1])
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParseError(path, "non-finite number")
    return z


def _list(value, path):
    if not isinstance(value, list):
        raise ParseError(path, "expected an array")
    return value


def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise ParseError(path, "expected a positive integer")
    return value


def complex_list(values, path="vector"):
    """Parse an array of [re, im] pairs into a complex vector."""
    values = _list(values, path)
    return np.array([_complex(v, f"{path}[{k}]") for k, v in enumerate(values)], dtype=np.complex128)


def encode_complex(values):
    return [[float(z.real), float(z.imag)] for z in np.ravel(values)]


def matrix_to_json(a):
    a = np.asarray(a, dtype=np.complex128)
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": encode_complex(a)}


def matrix_from_json(doc, path="matrix"):
    if not isinstance(doc, dict):
        raise ParseError(path, "expected an object with rows, cols, entries")
    for key in ("rows", "cols", "entries"):
        if key not in doc:
            raise ParseError(f"{path}.{key}", "missing key")
    rows = _int(doc["rows"], f"{path}.rows")
    cols = _int(doc["cols"], f"{path}.cols")
    entries = complex_list(doc["entries"], f"{path}.entries")
    if entries.shape[0] != rows * cols:
        raise ParseError(
            f"{path}.entries", f"expected {rows * cols} entries, got {entries.shape[0]}"
        )
    return entries.reshape(rows, cols)


def system_from_json(doc, tol=DEFAULT_TOL):
    if not isinstance(doc, dict):
        raise ParseError("", "top level must be an object")
    for key in ("ambient_dim", "components"):
        if key not in doc:
            raise ParseError(key, "missing key")
    n = _int(doc["ambient_dim"], "ambient_dim")
    raw = _list(doc["components"], "components")
    if not raw:
        raise ParseError("components", "at least one component is required")
    comps = []
    for idx, item in enumerate(raw):
        path = f"components[{idx}]"
        if not isinstance(item, dict):
            raise ParseError(path, "expected an object")
        for key in ("weight", "subspace_basis", "operator"):
            if key not in item:
                raise ParseError(f"{path}.{key}", "missing key")
        weight = item["weight"]
        if isinstance(weight, bool) or not isinstance(weight, Real) or not math.isfinite(weight):
            raise ParseError(f"{path}.weight", "expected a finite number")
        if weight <= 0:
            raise NonPositiveWeight(f"{path}.weight: weight must be positive, got {weight!r}")
        vectors = _list(item["subspace_basis"], f"{path}.subspace_basis")
        cols = []
        for k, vec in enumerate(vectors):
            vpath = f"{path}.subspace_basis[{k}]"
            v = complex_list(vec, vpath)
            if v.shape[0] != n:
                raise DimensionMismatch(f"{vpath}: length {v.shape[0]}, expected ambient_dim {n}")
            cols.append(v)
        if cols:
            subspace = ClosedSubspace.span(np.column_stack(cols), tol)
        else:
            subspace = ClosedSubspace.zero(n)
        op = matrix_from_json(item["operator"], f"{path}.operator")
        if op.shape[1] != n:
            raise DimensionMismatch(f"{path}.operator.cols: {op.shape[1]}, expected ambient_dim {n}")
        comps.append(GFusionComponent(subspace, op, weight))
    return GFusionSystem(tuple(comps))


def system_to_json(system):
    return {
        "ambient_dim": system.ambient_dim,
        "components": [
            {
                "weight": c.weight,
                "subspace_basis": [encode_complex(col) for col in c.subspace.basis.T],
                "operator": matrix_to_json(c.operator),
            }
            for c in system
        ],
    }


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError("", f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(doc):
    """Serialize with stable key order and shortest round-trip floats."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def write_json(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def load_system(path, tol=DEFAULT_TOL):
    return system_from_json(read_json(path), tol)


def save_system(system, path):
    write_json(system_to_json(system), path)


def random_system(
    seed, ambient_dim, n_components, local_dims, weight_range=(0.5, 2.0), ranks=None,
    tol=DEFAULT_TOL,
):
    """Reproducible random system.

    The generator is ``numpy.random.Generator(PCG64(seed))`` and draws, for each
    component in order:

    1. the rank ``r`` via ``integers(1, n + 1)`` (skipped if ``ranks`` is given),
    2. the ``n x r`` real part then imaginary part of the spanning matrix,
       each ``standard_normal``, row-major,
    3. the ``d x n`` real part then imaginary part of the operator, likewise,
    4. the weight via ``uniform(lo, hi)``.

    The spanning matrix is orthonormalized (modified Gram-Schmidt).
    ``local_dims`` is a list of ``n_components`` ints or a single int.
    """
    n, m = ambient_dim, n_components
    if not isinstance(n, int) or n < 1 or not isinstance(m, int) or m < 1:
        raise BadParams("ambient_dim and n_components must be positive integers")
    if isinstance(local_dims, int):
        local_dims = [local_dims] * m
    local_dims = list(local_dims)
    if len(local_dims) == 1 and m > 1:
        local_dims = local_dims * m
    if len(local_dims) != m or any(not isinstance(d, int) or d < 1 for d in local_dims):
        raise BadParams(f"need {m} positive local dims, got {local_dims}")
    lo, hi = (float(x) for x in weight_range)
    if not (0 < lo <= hi and math.isfinite(hi)):
        raise BadParams(f"weight range must satisfy 0 < lo <= hi, got {weight_range}")
    if ranks is not None:
        if isinstance(ranks, int):
            ranks = [ranks] * m
        ranks = list(ranks)
        if len(ranks) != m or any(not isinstance(r, int) or not 1 <= r <= n for r in ranks):
            raise BadParams(f"need {m} ranks in 1..{n}, got {ranks}")

    rng = np.random.Generator(np.random.PCG64(seed))
    comps = []
    for idx in range(m):
        r = int(rng.integers(1, n + 1)) if ranks is None else ranks[idx]
        span = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
        d = local_dims[idx]
        op = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
        weight = float(rng.uniform(lo, hi))
        comps.append(GFusionComponent(ClosedSubspace(orthonormalize(span, tol)), op, weight))
    return GFusionSystem(tuple(comps))
