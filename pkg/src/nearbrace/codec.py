"""JSON interchange documents for groups, near braces, sigma families and solutions.

Derived data (identity, inverses, flags, reports) is always recomputed on
load; documents are written deterministically.
"""

from __future__ import annotations

import json

import numpy as np

from .braces import NearBrace, SigmaFamily, validate_near_brace
from .groups import Diagnostics, GroupTable, InvalidStructureError, validate_group
from .params import ParamTriple
from .solutions import BraidMap


class CodecError(ValueError):
    def __init__(self, message: str, diagnostics: Diagnostics | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics


def _matrix(doc: dict, key: str, n: int) -> np.ndarray:
    try:
        arr = np.array(doc[key], dtype=np.int64)
    except KeyError:
        raise CodecError(f"missing field {key!r}") from None
    except (TypeError, ValueError):
        raise CodecError(f"field {key!r} is not an integer matrix") from None
    if arr.shape != (n, n):
        raise CodecError(f"field {key!r} has shape {arr.shape}, expected ({n}, {n})")
    return arr


def _explain(diag: Diagnostics, what: str) -> str:
    name, wit = diag.failures[0]
    if name == "latin_row":
        return f"{what}: row {wit[0]} is not a permutation (columns {wit[1]} and {wit[2]} repeat)"
    if name == "latin_column":
        return f"{what}: column {wit[0]} is not a permutation (rows {wit[1]} and {wit[2]} repeat)"
    return f"{what}: {diag.describe()}"


def _group_from(arr: np.ndarray, labels, what: str) -> GroupTable:
    diag = validate_group(arr.shape[0], arr)
    if not diag.ok:
        raise CodecError(_explain(diag, what), diag)
    return GroupTable(arr, tuple(labels) if labels else ())


def _order(doc: dict) -> int:
    n = doc.get("order")
    if not isinstance(n, int) or n < 1:
        raise CodecError("field 'order' must be a positive integer")
    return n


def group_to_doc(g: GroupTable) -> dict:
    return {"kind": "group", "order": g.order, "labels": list(g.labels), "table": g.table.tolist()}


def group_from_doc(doc: dict) -> GroupTable:
    n = _order(doc)
    return _group_from(_matrix(doc, "table", n), doc.get("labels"), "table")


def nearbrace_to_doc(nb: NearBrace) -> dict:
    return {"kind": "nearbrace", "order": nb.n, "labels": list(nb.labels),
            "add": nb.A.tolist(), "mul": nb.M.tolist()}


def nearbrace_from_doc(doc: dict) -> NearBrace:
    n = _order(doc)
    labels = doc.get("labels")
    add = _group_from(_matrix(doc, "add", n), labels, "add table")
    mul = _group_from(_matrix(doc, "mul", n), labels, "mul table")
    diag = validate_near_brace(add, mul)
    if not diag.ok:
        raise CodecError(f"not a near brace: {diag.describe()}", diag)
    return NearBrace(add, mul, _checked=True)


def sigma_to_doc(fam: SigmaFamily) -> dict:
    return {"kind": "sigma", "order": fam.n, "z": fam.z, "sigma": fam.sigma.tolist()}


def sigma_from_doc(doc: dict) -> SigmaFamily:
    n = _order(doc)
    try:
        return SigmaFamily(_matrix(doc, "sigma", n), int(doc.get("z", 0)))
    except ValueError as exc:
        raise CodecError(str(exc)) from None


def solution_to_doc(m: BraidMap, *, with_report: bool = True) -> dict:
    doc: dict = {"kind": "solution", "order": m.n, "sigma": m.sigma.tolist(), "tau": m.tau.tolist(),
                 "params": None if m.params is None else m.params.to_json()}
    if with_report:
        from .pbraiding import check_p_braiding
        from .solutions import analyze_solution

        rep = analyze_solution(m)
        pb = None
        if m.brace is not None:
            pbr = check_p_braiding(m, m.brace.mul)
            pb = pbr.verdict
            doc["p_braiding"] = pbr.to_json()
        doc["report"] = {"braid": rep.braid_ok, "nondegenerate": rep.nondegenerate,
                         "involutive": rep.involutive, "p_braiding": pb}
    if m.brace is not None:
        doc["brace"] = nearbrace_to_doc(m.brace)
    return doc


def solution_from_doc(doc: dict) -> BraidMap:
    n = _order(doc)
    sigma, tau = _matrix(doc, "sigma", n), _matrix(doc, "tau", n)
    if sigma.min() < 0 or sigma.max() >= n or tau.min() < 0 or tau.max() >= n:
        raise CodecError("solution tables have entries outside the carrier")
    params = doc.get("params")
    brace = doc.get("brace")
    try:
        p = None if params is None else ParamTriple.from_json(params)
    except (KeyError, TypeError, ValueError):
        raise CodecError("malformed 'params' object") from None
    nb = None if brace is None else nearbrace_from_doc(brace)
    if nb is not None and nb.n != n:
        raise CodecError("embedded near brace has a different order")
    return BraidMap(sigma, tau, p, nb)


_TO_DOC = ((GroupTable, group_to_doc), (NearBrace, nearbrace_to_doc),
           (SigmaFamily, sigma_to_doc), (BraidMap, solution_to_doc))
_FROM_DOC = {"group": group_from_doc, "nearbrace": nearbrace_from_doc,
             "sigma": sigma_from_doc, "solution": solution_from_doc}


def to_doc(value) -> dict:
    for cls, fn in _TO_DOC:
        if isinstance(value, cls):
            return fn(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def from_doc(doc: dict):
    if not isinstance(doc, dict):
        raise CodecError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in _FROM_DOC:
        raise CodecError(f"unknown document kind {kind!r}")
    try:
        return _FROM_DOC[kind](doc)
    except InvalidStructureError as exc:
        raise CodecError(str(exc), exc.diagnostics) from None


def dumps(value) -> str:
    return json.dumps(to_doc(value)) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"invalid JSON: {exc}") from None
    return from_doc(doc)
