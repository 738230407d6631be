"""Text and JSON rendering of analysis results."""

from __future__ import annotations

import json

from .analysis import to_builtin
from .ideals import EXCEEDS_CAP


def _fmt(v):
    if v is EXCEEDS_CAP:
        return "exceeds cap"
    if isinstance(v, (list, tuple)):
        if not v:
            return "none"
        if all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            return "(" + ", ".join(str(x) for x in v) + ")"
        return ", ".join(_fmt(x) for x in v)
    return str(v)


def _block_label(i):
    return "{" + "".join(str(x) for x in i) + "}"


def render_json(obj):
    return json.dumps(to_builtin(obj), sort_keys=True, indent=2) + "\n"


def _render_blocks(blocks):
    n = len(blocks)
    cells = []
    for row in blocks:
        line = []
        for b in row:
            i, j = b["row"], b["col"]
            name = f"R{i}" if i == j else f"M{i}{j}"
            line.append(f"{name}[{b['size']}]")
        cells.append(line)
    width = max(len(c) for line in cells for c in line)
    out = ["  " + "  ".join(c.ljust(width) for c in line) for line in cells]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = blocks[i][j], blocks[j][i]
            if a["size"] > 1 and b["size"] > 1:
                rel = "=" if a["zero_pairing"] and b["zero_pairing"] else "!="
                out.append(f"  M{i + 1}{j + 1}*M{j + 1}{i + 1} {rel} 0")
    return out


def render_analysis(doc):
    lines = [f"ring: {doc['name']}  |R| = {doc['size']}  basis size {doc['basis_size']}",
             f"Peirce dimension: {doc['dimension']}"]
    idems = doc.get("idempotents") or []
    if idems:
        lines.append("complete set of orthogonal 1-Peirce idempotents:")
        for a, e in enumerate(idems):
            c = doc["corners"][a]
            lines.append(f"  e{a + 1} = {_fmt(e)}  corner size {c['size']}  dimension {c['dimension']}")
    chain = doc.get("dyadic_chain") or []
    if chain:
        lines.append("dyadic chain:")
        for p in chain:
            lines.append("  " + " ".join(_block_label(b) for b in p))
    if doc.get("blocks"):
        lines.append("Peirce blocks:")
        lines.extend(_render_blocks(doc["blocks"]))
    dm = doc.get("d_minus")
    if dm:
        lines.append(f"D(R)-: size {dm['size']}  nilpotency index {dm['nilpotency_index']}")
    rad = doc.get("radicals") or {}
    if "refused" in rad:
        lines.append(f"radicals: refused ({rad['refused']})")
    elif rad:
        lines.append(f"J(R): size {rad['J']['size']}  method {rad['method']}"
                     f"  nilpotency index {rad['nilpotency_index_of_J']}")
        lines.append(f"B(R): size {rad['B']['size']}  method {rad['prime_method']}")
        lines.append("radical methods run: " + ", ".join(rad["methods_run"]))
    for d in doc.get("designated") or []:
        lines.append(f"designated {d['label']} = {_fmt(d['element'])}: corner size {d['corner_size']}"
                     f"  dimension {d['corner_dimension']}")
    checks = doc.get("checks") or []
    if checks:
        lines.append("checks:")
        for c in checks:
            tag = "PASS" if c["pass"] else "FAIL"
            extra = ""
            if "expected" in c or "actual" in c:
                extra = f"  expected {c.get('expected')!r} got {c.get('actual')!r}"
            lines.append(f"  [{tag}] {c['name']} ({c['source']}): {c['claim']}{extra}")
    return "\n".join(lines) + "\n"


def render_dict(doc):
    """Generic key: value rendering for command results that are not analyses."""
    lines = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            for row in val:
                lines.append("  " + "  ".join(f"{k}={_fmt(row[k])}" for k in sorted(row)))
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            for k in sorted(val):
                lines.append(f"  {k}: {_fmt(val[k])}")
        else:
            lines.append(f"{key}: {_fmt(val)}")
    return "\n".join(lines) + "\n"


def emit_report(obj, fmt="text"):
    """Render ``obj`` (an analysis dict or a plain result dict) as text or JSON."""
    if fmt == "json":
        return render_json(obj)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, dict) and "checks" in obj and "dimension" in obj and "basis_size" in obj:
        return render_analysis(obj)
    return render_dict(to_builtin(obj))
