"""Structured-text (JSON) documents for groups, modules, cochains and
crossed extensions, plus the inline shorthands used on the command line.

Groups::

    {"cyclic": 9}
    {"symmetric": 3}
    {"product": [{"cyclic": 3}, {"cyclic": 3}]}
    {"table": [[0, 1], [1, 0]]}

or inline ``cyclic:9``, ``s3``, ``symmetric:3``, ``cyclic:3*cyclic:3``, or a
path to a ``.json`` file holding one of the above.

Modules (over an already parsed group)::

    {"exponents": [3], "action": "trivial" | "sign"
                               | {"generator_matrices": {"1": [[2]]}}
                               | {"element_matrices": [[[1]], [[2]]]}}

or inline ``trivial:3``, ``trivial:2x2``, ``sign:3``.

Crossed extensions::

    {"name": "X9", "G": <group>, "M": <module over G>, "T": <group>,
     "R": <group>, "boundary": [...|T| R-indices...],
     "raction": [[...|T| T-indices...] per R-element],
     "pi": [...|R| G-indices...], "iota": [T-index per generator of M]}

All indices are 0-based. Validation errors carry ``$.key[i]...`` paths.
"""

from __future__ import annotations

import json
import os
from typing import Any

import numpy as np

from .algebra import FiniteGroup, GModule, build_cyclic, direct_product, symmetric_group, validate_group, validate_module
from .cochains import Cochain
from .crossed import CrossedExtension, validate_crossed_extension, validate_crossed_module
from .errors import ValidationError

__all__ = [
    "parse_group",
    "parse_module",
    "parse_extension",
    "load_document",
    "load_extension",
    "group_to_doc",
    "module_to_doc",
    "extension_to_doc",
    "cochain_to_doc",
    "cochain_from_doc",
    "render_json",
    "fixture_dir",
]


def fixture_dir() -> str:
    """Directory of the shipped fixture corpus."""
    return os.path.join(os.path.dirname(__file__), "fixtures", "v1")


def render_json(doc: Any) -> str:
    """Canonical rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_document(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}", path="$") from None
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON in {path}: {e.msg} (line {e.lineno})", path="$") from None


def _at(path: str, fn, *args):
    """Run a validator, re-raising its errors under ``path``."""
    try:
        return fn(*args)
    except ValidationError as e:
        if e.path and e.path.startswith(path):
            raise
        inner = str(e)
        if e.path:
            inner = inner[len(e.path) + 2:]
            sub = e.path[1:] if e.path.startswith("$") else e.path
            raise ValidationError(inner, path=path + sub, witness=e.witness) from None
        raise ValidationError(inner, path=path, witness=e.witness) from None


def _int(v, path: str, lo: int = 0) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < lo:
        raise ValidationError(f"expected an integer >= {lo}, got {v!r}", path=path)
    return v


def parse_group(spec, path: str = "$", base_dir: str | None = None) -> FiniteGroup:
    if isinstance(spec, str):
        s = spec.strip()
        if s.endswith(".json"):
            full = s if base_dir is None or os.path.isabs(s) else os.path.join(base_dir, s)
            return parse_group(load_document(full), path, os.path.dirname(full))
        if "*" in s:
            parts = [parse_group(p, path, base_dir) for p in s.split("*")]
            out = parts[0]
            for p in parts[1:]:
                out = direct_product(out, p)
            return out
        low = s.lower()
        if low in ("s3", "symmetric:3"):
            return symmetric_group(3)
        if low.startswith("symmetric:"):
            return _at(path, symmetric_group, _int(_parse_int(low[10:], path), path, 1))
        if low.startswith("cyclic:"):
            return _at(path, build_cyclic, _int(_parse_int(low[7:], path), path, 1))
        raise ValidationError(f"unknown group shorthand {spec!r}", path=path)
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ValidationError("group must be an object with exactly one of cyclic/symmetric/product/table",
                              path=path)
    (key, val), = spec.items()
    if key == "cyclic":
        return _at(path, build_cyclic, _int(val, path + ".cyclic", 1))
    if key == "symmetric":
        return _at(path, symmetric_group, _int(val, path + ".symmetric", 1))
    if key == "product":
        if not isinstance(val, list) or not val:
            raise ValidationError("product must be a non-empty list", path=path + ".product")
        parts = [parse_group(v, f"{path}.product[{i}]", base_dir) for i, v in enumerate(val)]
        out = parts[0]
        for p in parts[1:]:
            out = direct_product(out, p)
        return out
    if key == "table":
        if not isinstance(val, list) or not all(isinstance(r, list) for r in val):
            raise ValidationError("table must be a list of rows", path=path + ".table")
        for i, row in enumerate(val):
            for j, v in enumerate(row):
                if isinstance(v, bool) or not isinstance(v, int):
                    raise ValidationError(f"non-integer entry {v!r}", path=f"{path}.table[{i}][{j}]")
        return _at(path + ".table", validate_group, val)
    raise ValidationError(f"unknown group key {key!r}", path=path)


def _parse_int(s: str, path: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ValidationError(f"expected an integer, got {s!r}", path=path) from None


def parse_module(spec, G: FiniteGroup, path: str = "$", base_dir: str | None = None) -> GModule:
    if isinstance(spec, str):
        s = spec.strip()
        if s.endswith(".json"):
            full = s if base_dir is None or os.path.isabs(s) else os.path.join(base_dir, s)
            return parse_module(load_document(full), G, path, os.path.dirname(full))
        kind, _, rest = s.partition(":")
        if kind not in ("trivial", "sign") or not rest:
            raise ValidationError(f"unknown module shorthand {spec!r}", path=path)
        exps = [_parse_int(x, path) for x in rest.split("x")]
        return _at(path, validate_module, G, exps, kind, s)
    if not isinstance(spec, dict) or "exponents" not in spec:
        raise ValidationError("module must be an object with 'exponents'", path=path)
    unknown = set(spec) - {"exponents", "action", "name"}
    if unknown:
        raise ValidationError(f"unknown module keys {sorted(unknown)}", path=path)
    exps = spec["exponents"]
    if not isinstance(exps, list):
        raise ValidationError("exponents must be a list", path=path + ".exponents")
    exps = [_int(d, f"{path}.exponents[{i}]") for i, d in enumerate(exps)]
    return _at(path + ".action", validate_module, G, exps, spec.get("action", "trivial"), spec.get("name", ""))


def _index_list(val, n: int, bound: int, path: str) -> list[int]:
    if not isinstance(val, list) or len(val) != n:
        raise ValidationError(f"expected a list of {n} indices", path=path)
    for i, v in enumerate(val):
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < bound:
            raise ValidationError(f"index {v!r} out of range [0, {bound})", path=f"{path}[{i}]")
    return val


def parse_extension(doc, base_dir: str | None = None, name: str = "") -> CrossedExtension:
    if not isinstance(doc, dict):
        raise ValidationError("extension document must be an object", path="$")
    missing = [k for k in ("G", "M", "T", "R", "boundary", "raction", "pi", "iota") if k not in doc]
    if missing:
        raise ValidationError(f"missing keys {missing}", path="$")
    G = parse_group(doc["G"], "$.G", base_dir)
    M = parse_module(doc["M"], G, "$.M", base_dir)
    T = parse_group(doc["T"], "$.T", base_dir)
    R = parse_group(doc["R"], "$.R", base_dir)
    bd = _index_list(doc["boundary"], T.order, R.order, "$.boundary")
    ra = doc["raction"]
    if not isinstance(ra, list) or len(ra) != R.order:
        raise ValidationError(f"expected {R.order} rows", path="$.raction")
    for r, row in enumerate(ra):
        _index_list(row, T.order, T.order, f"$.raction[{r}]")
    pi = _index_list(doc["pi"], R.order, G.order, "$.pi")
    iota = _index_list(doc["iota"], M.rank, T.order, "$.iota")
    xm = validate_crossed_module(T, R, bd, ra)
    return validate_crossed_extension(xm, G, M, iota, pi, name=doc.get("name", name))


def load_extension(path: str) -> CrossedExtension:
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_extension(load_document(path), os.path.dirname(path), name)


# ---------------------------------------------------------------------------
# emitters


def group_to_doc(G: FiniteGroup) -> dict:
    if np.array_equal(G.table, build_cyclic(G.order).table):
        return {"cyclic": G.order}
    return {"table": G.table.tolist()}


def module_to_doc(M: GModule) -> dict:
    trivial = all(np.array_equal(M.action[g], np.eye(M.rank, dtype=np.int64) % M.moduli[:, None])
                  for g in range(M.group.order))
    action = "trivial" if trivial else {"element_matrices": M.action.tolist()}
    return {"exponents": list(M.exponents), "action": action}


def extension_to_doc(xe: CrossedExtension) -> dict:
    gens = []
    for i in range(xe.M.rank):
        e = tuple(int(i == j) for j in range(xe.M.rank))
        gens.append(int(xe.iota[xe.M.index_of(e)]))
    return {
        "name": xe.name,
        "G": group_to_doc(xe.G),
        "M": module_to_doc(xe.M),
        "T": group_to_doc(xe.T),
        "R": group_to_doc(xe.R),
        "boundary": xe.xm.boundary.tolist(),
        "raction": xe.xm.raction.tolist(),
        "pi": xe.pi.tolist(),
        "iota": gens,
    }


def cochain_to_doc(G: FiniteGroup, M: GModule, phi: Cochain) -> dict:
    """Self-contained cochain document (carries its group and module)."""
    return {
        "group": group_to_doc(G),
        "module": module_to_doc(M),
        "degree": phi.degree,
        "values": phi.values.tolist(),
    }


def cochain_from_doc(doc) -> tuple[FiniteGroup, GModule, Cochain]:
    if not isinstance(doc, dict):
        raise ValidationError("cochain document must be an object", path="$")
    for k in ("group", "module", "degree", "values"):
        if k not in doc:
            raise ValidationError(f"missing key {k!r}", path="$")
    G = parse_group(doc["group"], "$.group")
    M = parse_module(doc["module"], G, "$.module")
    n = _int(doc["degree"], "$.degree")
    vals = doc["values"]
    if not isinstance(vals, list) or len(vals) != G.order ** n:
        raise ValidationError(f"expected {G.order ** n} values", path="$.values")
    arr = np.zeros((len(vals), M.rank), dtype=np.int64)
    for i, v in enumerate(vals):
        if not isinstance(v, list) or len(v) != M.rank:
            raise ValidationError(f"expected a list of {M.rank} residues", path=f"$.values[{i}]")
        for j, x in enumerate(v):
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < M.exponents[j]:
                raise ValidationError(f"residue {x!r} out of range", path=f"$.values[{i}][{j}]")
        arr[i] = v
    return G, M, Cochain(n, arr)
