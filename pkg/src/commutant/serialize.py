"""Byte-reproducible serialization.

Canonical JSON: keys in fixed schema order, no whitespace padding, floats
rendered with repr-faithful ``%.17g`` (so parsing returns the identical
float64), ints as ints.  Two equal objects always serialize to identical
bytes, which the CLI relies on for deterministic output.

Schemas
-------
* tensor:        ``{"shape": [...], "values": [...]}`` — values in canonical
  flat order (first mode fastest).
* commutation:   ``{"p": p, "q": q, "perm": [...]}`` — 1-based row images.
* gct:           ``{"m": m, "n": n, "generators": [[[...]]]}`` — matrices as
  lists of rows.
* cp form:       ``{"m": m, "n": n, "rank": r, "factors": [[[...]]]}``.
* preserver:     ``{"m": m, "n": n, "tau": [...], "matrices": [[[...]]]}``.
* matrix text:   one row per line, entries space-separated.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .commutation_matrix import CommutationMatrix
from .commutation_tensor import Gct, build_gct
from .cp import CpForm, cp_form
from .errors import CommutantError, DimensionError
from .permutation import Permutation
from .preserver import RankPreserver, VerificationReport, rank_preserver
from .tensor import DenseTensor, as_matrix


class ParseError(CommutantError):
    """Input text does not parse as the expected format."""


def format_float(v: float) -> str:
    """Shortest-but-exact decimal for a float64 (1.0 -> "1")."""
    return format(float(v), ".17g")


def canonical_json(obj: Any) -> str:
    """Serialize nested dict/list/scalar data with deterministic bytes.
    Dict keys keep their insertion order: schema builders fix it."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj: Any, parts: list[str]) -> None:
    if isinstance(obj, dict):
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append(",")
            parts.append(json.dumps(str(k)))
            parts.append(":")
            _emit(v, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, v in enumerate(obj):
            if i:
                parts.append(",")
            _emit(v, parts)
        parts.append("]")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(format_float(float(obj)))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif obj is None:
        parts.append("null")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _require(data: Any, keys: list[str], what: str) -> dict:
    if not isinstance(data, dict):
        raise ParseError(f"{what}: expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise ParseError(f"{what}: missing keys {missing}")
    return data


# ---------------------------------------------------------------- tensors


def tensor_to_json(t: DenseTensor) -> str:
    return canonical_json(
        {"shape": list(t.shape), "values": [float(v) for v in t.values]}
    )


def tensor_from_json(text: str) -> DenseTensor:
    data = _require(_loads(text), ["shape", "values"], "tensor")
    shape = data["shape"]
    values = data["values"]
    if not isinstance(shape, list) or not all(isinstance(d, int) for d in shape):
        raise ParseError("tensor: shape must be a list of integers")
    if not isinstance(values, list):
        raise ParseError("tensor: values must be a list")
    try:
        return DenseTensor.from_flat(shape, [float(v) for v in values])
    except ParseError:
        raise
    except (TypeError, ValueError, CommutantError) as exc:
        raise ParseError(f"tensor: {exc}") from exc


# ---------------------------------------------------------------- matrices


def matrix_to_text(mat) -> str:
    m = as_matrix(mat)
    return "\n".join(" ".join(format_float(v) for v in row) for row in m) + "\n"


def matrix_from_text(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise ParseError(f"matrix text line {lineno}: {exc}") from exc
    if not rows:
        raise ParseError("matrix text: no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("matrix text: ragged rows")
    return np.array(rows, dtype=float)


def _matrix_lists(mat: np.ndarray) -> list[list[float]]:
    return [[float(v) for v in row] for row in mat]


def _matrix_from_lists(data: Any, what: str) -> np.ndarray:
    try:
        arr = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what}: not a numeric matrix") from exc
    if arr.ndim != 2:
        raise ParseError(f"{what}: expected a matrix, got {arr.ndim} dimensions")
    return arr


# ------------------------------------------------- structured objects


def commutation_to_json(k: CommutationMatrix) -> str:
    return canonical_json({"p": k.p, "q": k.q, "perm": list(k.perm.images)})


def commutation_from_json(text: str) -> CommutationMatrix:
    data = _require(_loads(text), ["p", "q", "perm"], "commutation matrix")
    try:
        return CommutationMatrix(int(data["p"]), int(data["q"]), Permutation(data["perm"]))
    except (TypeError, ValueError, CommutantError) as exc:
        raise ParseError(f"commutation matrix: {exc}") from exc


def gct_to_json(g: Gct) -> str:
    return canonical_json(
        {"m": g.m, "n": g.n, "generators": [_matrix_lists(gen) for gen in g.generators]}
    )


def gct_from_json(text: str) -> Gct:
    data = _require(_loads(text), ["m", "n", "generators"], "gct")
    gens = data["generators"]
    if not isinstance(gens, list):
        raise ParseError("gct: generators must be a list")
    mats = [_matrix_from_lists(g, "gct generator") for g in gens]
    try:
        g = build_gct(mats)
    except CommutantError as exc:
        raise ParseError(f"gct: {exc}") from exc
    if g.m != int(data["m"]) or g.n != int(data["n"]):
        raise ParseError("gct: m/n fields disagree with the generators")
    return g


def cp_to_json(cp: CpForm) -> str:
    if len(set(cp.extents)) != 1:
        raise DimensionError("only cubical CP forms serialize to this schema")
    return canonical_json(
        {
            "m": cp.m,
            "n": cp.extents[0],
            "rank": cp.rank,
            "factors": [_matrix_lists(f) for f in cp.factors],
        }
    )


def cp_from_json(text: str) -> CpForm:
    data = _require(_loads(text), ["m", "n", "rank", "factors"], "cp form")
    factors = data["factors"]
    if not isinstance(factors, list):
        raise ParseError("cp form: factors must be a list")
    mats = [_matrix_from_lists(f, "cp factor") for f in factors]
    try:
        cp = cp_form(mats)
    except CommutantError as exc:
        raise ParseError(f"cp form: {exc}") from exc
    if cp.m != int(data["m"]) or cp.rank != int(data["rank"]):
        raise ParseError("cp form: m/rank fields disagree with the factors")
    if any(e != int(data["n"]) for e in cp.extents):
        raise ParseError("cp form: n field disagrees with the factors")
    return cp


def preserver_to_json(phi: RankPreserver) -> str:
    return canonical_json(
        {
            "m": len(phi.matrices),
            "n": phi.matrices[0].shape[0],
            "tau": list(phi.tau.images),
            "matrices": [_matrix_lists(m) for m in phi.matrices],
        }
    )


def preserver_from_json(text: str) -> RankPreserver:
    data = _require(_loads(text), ["m", "n", "tau", "matrices"], "preserver")
    mats_data = data["matrices"]
    if not isinstance(mats_data, list):
        raise ParseError("preserver: matrices must be a list")
    mats = [_matrix_from_lists(m, "preserver matrix") for m in mats_data]
    try:
        tau = Permutation(data["tau"])
    except (TypeError, ValueError, CommutantError) as exc:
        raise ParseError(f"preserver: bad tau: {exc}") from exc
    if len(mats) != int(data["m"]) or (mats and mats[0].shape[0] != int(data["n"])):
        raise ParseError("preserver: m/n fields disagree with the matrices")
    return rank_preserver(mats, tau)


def report_to_json(report: VerificationReport) -> str:
    return canonical_json(
        {
            "trials": report.trials,
            "passed": report.passed,
            "failures": list(report.failures),
        }
    )
