"""JSON wire formats for matrices, tuples, polynomials, and embeddings.

Matrix:      {"rows": m, "cols": n, "data": [[re, im], ...]}   (row-major)
Tuple:       {"n_vars": N, "mats": [matrix, ...]}
Polynomial:  {"n_vars": N, "terms": [{"index": [t1..tN], "coef": matrix}, ...]}
Embedding:   {"ambient_dim": n, "basis": matrix}
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InputError
from .linalg import Embedding, as_matrix
from .pencil import MatrixPolynomial, OperatorTuple


def matrix_to_json(m) -> dict:
    a = as_matrix(m)
    data = [[float(x.real), float(x.imag)] for x in a.ravel()]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "data": data}


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from exc
    if len(data) != rows * cols:
        raise InputError(f"matrix data length {len(data)} != rows*cols = {rows * cols}")
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    return as_matrix(flat.reshape(rows, cols))


def tuple_to_json(t: OperatorTuple) -> dict:
    return {"n_vars": t.n_vars, "mats": [matrix_to_json(m) for m in t.mats]}


def tuple_from_json(obj) -> OperatorTuple:
    try:
        n_vars, mats = int(obj["n_vars"]), obj["mats"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed tuple JSON: {exc}") from exc
    if len(mats) != n_vars:
        raise InputError(f"tuple declares {n_vars} variables but has {len(mats)} matrices")
    return OperatorTuple(tuple(matrix_from_json(m) for m in mats))


def polynomial_to_json(f: MatrixPolynomial) -> dict:
    terms = [
        {"index": list(idx), "coef": matrix_to_json(coef)}
        for idx, coef in sorted(f.terms.items())
    ]
    return {"n_vars": f.n_vars, "terms": terms}


def polynomial_from_json(obj) -> MatrixPolynomial:
    try:
        n_vars, terms = int(obj["n_vars"]), obj["terms"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed polynomial JSON: {exc}") from exc
    parsed = {}
    for term in terms:
        parsed[tuple(term["index"])] = matrix_from_json(term["coef"])
    return MatrixPolynomial(n_vars, parsed)


def embedding_to_json(e: Embedding) -> dict:
    return {"ambient_dim": e.ambient_dim, "basis": matrix_to_json(e.basis)}


def embedding_from_json(obj) -> Embedding:
    try:
        ambient = int(obj["ambient_dim"])
        basis = matrix_from_json(obj["basis"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed embedding JSON: {exc}") from exc
    if basis.shape[0] != ambient:
        raise InputError("embedding basis rows != ambient_dim")
    return Embedding(basis)


def load_operator_input(path):
    """Read a matrix or tuple JSON file; a bare matrix becomes a 1-tuple."""
    with open(path) as fh:
        obj = json.load(fh)
    if "mats" in obj:
        return tuple_from_json(obj)
    if "data" in obj:
        return OperatorTuple((matrix_from_json(obj),))
    raise InputError(f"{path}: neither a matrix nor a tuple JSON object")
