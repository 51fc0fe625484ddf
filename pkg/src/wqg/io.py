"""JSON presentation documents with sparse tensors, and report documents."""
import json
import math

import numpy as np

from .algebra import AlgebraPresentation
from .coalgebra import Comultiplication
from .errors import NonFiniteNumber, SchemaError
from .report import VerificationReport


def _number(x, path):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError("expected a number", path)
    if not math.isfinite(x):
        raise NonFiniteNumber("number is not finite", path)
    return float(x)


def _complex(obj, path):
    if not isinstance(obj, dict) or "re" not in obj:
        raise SchemaError("expected {re, im}", path)
    return complex(_number(obj["re"], f"{path}.re"), _number(obj.get("im", 0.0), f"{path}.im"))


def _vector(doc, key, n, path):
    arr = doc[key]
    if not isinstance(arr, list) or len(arr) != n:
        raise SchemaError(f"expected a list of {n} complex numbers", path)
    return np.array([_complex(v, f"{path}[{i}]") for i, v in enumerate(arr)], dtype=complex)


def _sparse(doc, key, shape, path):
    arr = doc[key]
    if not isinstance(arr, list):
        raise SchemaError("expected a list of sparse entries", path)
    out = np.zeros(shape, dtype=complex)
    r = len(shape)
    for e, entry in enumerate(arr):
        p = f"{path}[{e}]"
        if not isinstance(entry, list) or len(entry) != r + 2:
            raise SchemaError(f"expected {r} indices followed by re, im", p)
        idx = []
        for a, v in enumerate(entry[:r]):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < shape[a]:
                raise SchemaError(f"index out of range 0..{shape[a] - 1}", f"{p}[{a}]")
            idx.append(v)
        out[tuple(idx)] += complex(_number(entry[r], f"{p}[{r}]"), _number(entry[r + 1], f"{p}[{r + 1}]"))
    return out


def _require(doc, key, path="$"):
    if key not in doc:
        raise SchemaError("missing required field", f"{path}.{key}")


def parse_presentation(doc):
    """Document (dict or JSON text) -> (P, comult, phi or None, psi or None)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as err:
            raise SchemaError(f"invalid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    for key in ("name", "dim", "labels", "unit", "mult", "star", "comult"):
        _require(doc, key)
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("dim must be a positive integer", "$.dim")
    labels = doc["labels"]
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(l, str) for l in labels):
        raise SchemaError(f"expected {n} string labels", "$.labels")
    unit = _vector(doc, "unit", n, "$.unit")
    mult = _sparse(doc, "mult", (n, n, n), "$.mult")
    star = _sparse(doc, "star", (n, n), "$.star")
    # comult entries are [k, i, j]: coefficient of e_i (x) e_j in Delta(e_k)
    kij = _sparse(doc, "comult", (n, n, n), "$.comult")
    P = AlgebraPresentation(str(doc["name"]), tuple(labels), mult, star, unit)
    comult = Comultiplication(P, np.transpose(kij, (1, 2, 0)))
    phi = _vector(doc, "phi", n, "$.phi") if doc.get("phi") is not None else None
    psi = _vector(doc, "psi", n, "$.psi") if doc.get("psi") is not None else None
    return P, comult, phi, psi


def _cx(z):
    return {"re": float(z.real), "im": float(z.imag)}


def _entries(T):
    out = []
    for idx in zip(*np.nonzero(T)):
        z = T[idx]
        out.append([int(i) for i in idx] + [float(z.real), float(z.imag)])
    return out


def presentation_to_dict(P, comult, phi=None, psi=None):
    doc = {
        "name": P.name,
        "dim": P.dim,
        "labels": list(P.labels),
        "unit": [_cx(z) for z in P.unit],
        "mult": _entries(P.mult),
        "star": _entries(P.star),
        "comult": _entries(np.transpose(comult.tensor, (2, 0, 1))),
    }
    if phi is not None:
        doc["phi"] = [_cx(z) for z in np.asarray(phi, dtype=complex)]
    if psi is not None:
        doc["psi"] = [_cx(z) for z in np.asarray(psi, dtype=complex)]
    return doc


def serialize_presentation(P, comult, phi=None, psi=None):
    return json.dumps(presentation_to_dict(P, comult, phi, psi), indent=1)


def parse_report(doc):
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as err:
            raise SchemaError(f"invalid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    _require(doc, "checks")
    if not isinstance(doc["checks"], list):
        raise SchemaError("expected a list", "$.checks")
    for i, c in enumerate(doc["checks"]):
        for key in ("name", "status", "residual"):
            if not isinstance(c, dict) or key not in c:
                raise SchemaError("missing required field", f"$.checks[{i}].{key}")
    return VerificationReport.from_dict(doc)
