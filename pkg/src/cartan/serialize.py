"""JSON forms of matrices and decompositions.

A matrix is ``{"p": int, "entries": [[str, ...], ...]}`` with entries in the
coefficient grammar.  A decomposition is ``{"group", "n", "p", "h1",
"lambda", "h2"}`` plus optional ``"g"`` and, for factors over the completion,
``"precision"``; truncated entries are written as the Laurent polynomial of
their known terms.
"""

import json

from .coeff import laurent_series, render_coeff
from .matrices import CartanDecomposition, Cocharacter, GroupTag, MatK, MatKhat
from .parsing import parse_coeff

__all__ = [
    "decomposition_from_json",
    "decomposition_to_json",
    "dumps",
    "matrix_from_json",
    "matrix_to_json",
]


def matrix_to_json(m):
    if isinstance(m, MatKhat):
        entries = [[x.render_known() for x in r] for r in m.rows]
    else:
        entries = [[render_coeff(x) for x in r] for r in m.rows]
    return {"p": m.p, "entries": entries}


def matrix_from_json(obj, p=None, precision=None):
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("matrix JSON needs an 'entries' field")
    q = obj.get("p", p)
    if q is None:
        raise ValueError("matrix JSON needs 'p'")
    if p is not None and q != p:
        raise ValueError(f"matrix is over F_{q}, expected F_{p}")
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows or any(
            not isinstance(r, list) or len(r) != len(rows) for r in rows):
        raise ValueError("'entries' must be a square list of lists")
    parsed = [[parse_coeff(str(x), q) for x in r] for r in rows]
    m = MatK(parsed, q)
    if precision is None:
        return m
    return MatKhat._from_rows(
        [[laurent_series(x).with_precision(precision) for x in r] for r in m.rows]
    )


def decomposition_to_json(dec, g=None):
    tag = dec.group
    out = {
        "group": tag.family.lower(),
        "n": tag.n,
        "p": tag.p,
        "h1": matrix_to_json(dec.h1),
        "lambda": list(dec.lam.weights),
        "h2": matrix_to_json(dec.h2),
    }
    if g is not None:
        out["g"] = matrix_to_json(g)
    if dec.precision is not None:
        out["precision"] = dec.precision
    return out


def decomposition_from_json(obj):
    """Returns ``(decomposition, g or None)``."""
    for key in ("group", "n", "p", "h1", "lambda", "h2"):
        if key not in obj:
            raise ValueError(f"decomposition JSON lacks {key!r}")
    tag = GroupTag(str(obj["group"]), int(obj["n"]), int(obj["p"]))
    precision = obj.get("precision")
    h1 = matrix_from_json(obj["h1"], tag.p, precision)
    h2 = matrix_from_json(obj["h2"], tag.p, precision)
    lam = Cocharacter(tuple(obj["lambda"]), tag)
    g = matrix_from_json(obj["g"], tag.p) if "g" in obj else None
    return CartanDecomposition(h1, lam, h2, tag, precision), g


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True)
