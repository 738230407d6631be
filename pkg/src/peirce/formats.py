"""JSON documents: raw structure constants and generalized matrix specs."""

from __future__ import annotations

import json

import numpy as np

from .ring import FiniteRing, RingError, verify_axioms

VERSION = 1


class SchemaError(RingError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def _need(doc, key, path, kind):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if key not in doc:
        raise SchemaError(f"{path}.{key}" if path else key, "missing field")
    val = doc[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise SchemaError(f"{path}.{key}" if path else key, "expected an integer")
    if kind is not int and not isinstance(val, kind):
        raise SchemaError(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return val


def _int_list(val, n, path, bounds=None):
    if not isinstance(val, list):
        raise SchemaError(path, "expected a list")
    if len(val) != n:
        raise SchemaError(path, f"expected {n} coordinates, got {len(val)}")
    for a, v in enumerate(val):
        if not isinstance(v, int) or isinstance(v, bool):
            raise SchemaError(f"{path}[{a}]", "expected an integer")
        if bounds is not None and not 0 <= v < bounds[a]:
            raise SchemaError(f"{path}[{a}]", f"coordinate {v} out of range [0, {bounds[a]})")
    return val


def structure_from_dict(doc):
    """Ring from a version-1 structure document; axioms are checked, not enforced.

    The returned ring carries ``axiom_report`` and ``valid`` attributes.
    """
    version = _need(doc, "version", "", int)
    if version != VERSION:
        raise SchemaError("version", f"unsupported version {version}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("name", "expected a string")
    basis = _need(doc, "basis", "", list)
    names, orders = [], []
    for i, b in enumerate(basis):
        names.append(_need(b, "name", f"basis[{i}]", str))
        m = _need(b, "order", f"basis[{i}]", int)
        if m < 2:
            raise SchemaError(f"basis[{i}].order", "order must be >= 2")
        orders.append(m)
    k = len(orders)
    one = _int_list(_need(doc, "one", "", list), k, "one", orders)
    mul = _need(doc, "mul", "", list)
    if len(mul) != k:
        raise SchemaError("mul", f"expected {k} rows, got {len(mul)}")
    for i, row in enumerate(mul):
        if not isinstance(row, list) or len(row) != k:
            raise SchemaError(f"mul[{i}]", f"expected {k} entries")
        for j, vec in enumerate(row):
            _int_list(vec, k, f"mul[{i}][{j}]", orders)
    ring = FiniteRing(orders, mul if k else [], one, names=tuple(names), name=name)
    report = verify_axioms(ring)
    ring.axiom_report = report
    ring.valid = report.ok
    return ring


def structure_to_dict(ring):
    return {
        "version": VERSION,
        "name": ring.name,
        "basis": [{"name": n, "order": m} for n, m in zip(ring.names, ring.orders)],
        "one": list(ring.one),
        "mul": ring.table.tolist(),
    }


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_structure_json(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON: {exc}") from None
    return structure_from_dict(doc)


def save_structure_json(ring, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(structure_to_dict(ring)))


# -- generalized matrix specs -------------------------------------------------


def genmatrix_from_dict(doc, base_dir=None):
    """Spec document::

        {"version": 1, "kind": "gen_matrix", "name": ..., "n": 2,
         "diagonal": ["GF(2)", {structure document}, ...],
         "modules": [{"i": 1, "j": 2, "orders": [2], "names": ["m"]}],
         "products": [{"i": 1, "j": 1, "l": 2, "table": [[[1]]]}]}

    Slot indices are 1-based.
    """
    from .constructors import GenMatrixSpec, gen_matrix
    from .parser import build, parse_expr

    version = _need(doc, "version", "", int)
    if version != VERSION:
        raise SchemaError("version", f"unsupported version {version}")
    if doc.get("kind", "gen_matrix") != "gen_matrix":
        raise SchemaError("kind", "expected 'gen_matrix'")
    n = _need(doc, "n", "", int)
    if n < 1:
        raise SchemaError("n", "n must be >= 1")
    diag = _need(doc, "diagonal", "", list)
    if len(diag) != n:
        raise SchemaError("diagonal", f"expected {n} rings, got {len(diag)}")
    rings = []
    for a, d in enumerate(diag):
        if isinstance(d, str):
            rings.append(build(parse_expr(d), base_dir))
        elif isinstance(d, dict):
            try:
                r = structure_from_dict(d)
            except SchemaError as exc:
                raise SchemaError(f"diagonal[{a}].{exc.path}", str(exc).split(": ", 1)[-1]) from None
            rings.append(r)
        else:
            raise SchemaError(f"diagonal[{a}]", "expected an expression string or structure object")
    spec = GenMatrixSpec(n=n, diagonal=rings, name=doc.get("name", ""))
    for a, mod in enumerate(doc.get("modules", [])):
        p = f"modules[{a}]"
        i = _need(mod, "i", p, int) - 1
        j = _need(mod, "j", p, int) - 1
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise SchemaError(p, "slot must be off-diagonal and within range")
        orders = _need(mod, "orders", p, list)
        for b, m in enumerate(orders):
            if not isinstance(m, int) or m < 2:
                raise SchemaError(f"{p}.orders[{b}]", "order must be an integer >= 2")
        spec.modules[(i, j)] = tuple(orders)
        if "names" in mod:
            spec.module_names[(i, j)] = tuple(mod["names"])
    for a, pr in enumerate(doc.get("products", [])):
        p = f"products[{a}]"
        i = _need(pr, "i", p, int) - 1
        j = _need(pr, "j", p, int) - 1
        l = _need(pr, "l", p, int) - 1
        if not all(0 <= v < n for v in (i, j, l)):
            raise SchemaError(p, "slot index out of range")
        table = _need(pr, "table", p, list)
        try:
            arr = np.array(table, dtype=np.int64)
        except (ValueError, TypeError):
            raise SchemaError(f"{p}.table", "not a rectangular integer array") from None
        spec.products[(i, j, l)] = arr
    return gen_matrix(spec)


def load_genmatrix_json(path):
    import os

    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("", f"invalid JSON: {exc}") from None
    if isinstance(doc, dict) and "basis" in doc and "mul" in doc:
        return structure_from_dict(doc)
    return genmatrix_from_dict(doc, os.path.dirname(os.path.abspath(path)))
