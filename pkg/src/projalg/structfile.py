"""Structure-constant files (UTF-8 JSON).

    {
      "base": "Q",
      "dim": 4,
      "flavor": "associative" | "jordan" | "jts" | "jordan-lie" | "lie-jordan",
      "bilinear": {"product": t[i][j][k], "bracket": ...},
      "trilinear": {"triple": t[i][j][k][l]},
      "coupling": "1/4" | null,
      "involution": m[i][k] | null,
      "labels": ["e1", ...]
    }

Fields appear in this order on output.  Scalars are exact strings ("2/3", "1+i")
in the base field.  Errors name the file and a byte offset.
"""

from __future__ import annotations

import json
from typing import Union

from .jordan import FiniteAlgebra, Tensor, TripleSystem
from .jordan_lie import JORDAN_LIE, LIE_JORDAN, Coupling, TwoProductAlgebra, detect_coupling
from .rings import RingError
from .ringspec import parse_element, parse_ring

FLAVORS = ("associative", "jordan", "jts", JORDAN_LIE, LIE_JORDAN)
FIELDS = ("base", "dim", "flavor", "bilinear", "trilinear", "coupling", "involution", "labels")

Structure = Union[FiniteAlgebra, TripleSystem, TwoProductAlgebra]


class StructFileError(RingError):
    def __init__(self, message, path="<string>", offset=0):
        super().__init__(f"{path}: byte {offset}: {message}")
        self.path = path
        self.offset = offset


# ---------------------------------------------------------------------------
# writing


def _scalars(K, obj):
    if isinstance(obj, list):
        return [_scalars(K, x) for x in obj]
    return K.fmt(obj)


def to_document(s: Structure) -> dict:
    K = s.K
    doc = {"base": K.spec, "dim": s.dim}
    bil, tri, coupling, involution = {}, {}, None, None
    if isinstance(s, FiniteAlgebra):
        flavor = s.flavor
        bil["product"] = s.product.nested()
        involution = s.involution
    elif isinstance(s, TripleSystem):
        flavor = "jts"
        tri["triple"] = s.triple.nested()
    else:
        flavor = s.flavor
        bil["bracket"] = s.bracket.nested()
        if flavor == JORDAN_LIE:
            bil["product"] = s.second.nested()
        else:
            tri["triple"] = s.second.nested()
        c = s.coupling or detect_coupling(s)
        coupling = K.fmt(c.value) if c.status == "constant" else None
    doc["flavor"] = flavor
    doc["bilinear"] = {k: _scalars(K, v) for k, v in bil.items()}
    doc["trilinear"] = {k: _scalars(K, v) for k, v in tri.items()}
    doc["coupling"] = coupling
    doc["involution"] = None if involution is None else [[K.fmt(c) for c in row] for row in involution]
    doc["labels"] = list(s.labels)
    return doc


def dumps(s: Structure) -> str:
    """Deterministic text: one top-level field per line, tensors compact."""
    doc = to_document(s)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(doc[k], separators=(',', ':'), ensure_ascii=False)}" for k in FIELDS)
    return "{\n" + body + "\n}\n"


def dump(s: Structure, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(s))


# ---------------------------------------------------------------------------
# reading


class _Locator:
    """Maps decoded values back to byte offsets in the source text (first occurrence)."""

    def __init__(self, text, path):
        self.text = text
        self.path = path

    def offset_of(self, token, start_key=None):
        start = 0
        if start_key is not None:
            k = self.text.find(json.dumps(start_key))
            start = max(k, 0)
        pos = self.text.find(token, start)
        if pos < 0:
            pos = start
        return len(self.text[:pos].encode("utf-8"))

    def error(self, message, token=None, key=None):
        off = self.offset_of(token, key) if token is not None else self.offset_of(json.dumps(key)) if key else 0
        return StructFileError(message, self.path, off)


def _tensor(K, shape, out_dim, data, loc, key, name):
    def walk(node, depth, where):
        want = shape[depth] if depth < len(shape) else out_dim
        if not isinstance(node, list) or len(node) != want:
            raise loc.error(f"{key}.{name}{where}: expected a list of length {want}", None, key)
        if depth == len(shape):
            out = []
            for n, x in enumerate(node):
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise loc.error(f"{key}.{name}{where}[{n}]: scalars must be exact strings", json.dumps(x), name)
                try:
                    out.append(parse_element(K, str(x)))
                except RingError as exc:
                    raise loc.error(f"{key}.{name}{where}[{n}]: {exc}", json.dumps(x), name) from None
            return out
        return [walk(c, depth + 1, f"{where}[{n}]") for n, c in enumerate(node)]

    return Tensor.from_nested(K, shape, out_dim, walk(data, 0, ""))


def loads(text: str, path: str = "<string>") -> Structure:
    loc = _Locator(text, path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructFileError(exc.msg, path, len(text[: exc.pos].encode("utf-8"))) from None
    if not isinstance(doc, dict):
        raise StructFileError("top level must be an object", path, 0)
    for k in doc:
        if k not in FIELDS:
            raise loc.error(f"unknown field {k!r}", json.dumps(k))
    for k in ("base", "dim", "flavor"):
        if k not in doc:
            raise StructFileError(f"missing field {k!r}", path, 0)
    try:
        K = parse_ring(doc["base"])
    except (RingError, TypeError) as exc:
        raise loc.error(f"base: {exc}", None, "base") from None
    if not K.is_field:
        raise loc.error(f"base {K.spec} is not a field", None, "base")
    d = doc["dim"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise loc.error("dim must be a positive integer", None, "dim")
    flavor = doc["flavor"]
    if flavor not in FLAVORS:
        raise loc.error(f"flavor must be one of {', '.join(FLAVORS)}", None, "flavor")
    bil = doc.get("bilinear") or {}
    tri = doc.get("trilinear") or {}
    if not isinstance(bil, dict) or not isinstance(tri, dict):
        raise loc.error("bilinear and trilinear must be objects", None, "bilinear")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != d):
        raise loc.error(f"labels must be a list of {d} strings", None, "labels")

    def need(section, table, name, arity):
        if name not in table:
            raise loc.error(f"flavor {flavor} needs {section}.{name}", None, section)
        return _tensor(K, (d,) * arity, d, table[name], loc, section, name)

    involution = None
    if doc.get("involution") is not None:
        rows = doc["involution"]
        if not isinstance(rows, list) or len(rows) != d:
            raise loc.error(f"involution must be a {d} x {d} matrix", None, "involution")
        involution = [tuple(r) for r in _tensor(K, (d,), d, rows, loc, "involution", "matrix").nested()]

    coupling = None
    if doc.get("coupling") is not None:
        try:
            coupling = Coupling("constant", parse_element(K, str(doc["coupling"])))
        except RingError as exc:
            raise loc.error(f"coupling: {exc}", None, "coupling") from None

    name = path
    if flavor in ("associative", "jordan"):
        return FiniteAlgebra(K, d, need("bilinear", bil, "product", 2), labels, involution, None, name, flavor)
    if flavor == "jts":
        return TripleSystem(K, d, need("trilinear", tri, "triple", 3), labels, name)
    bracket = need("bilinear", bil, "bracket", 2)
    if flavor == JORDAN_LIE:
        second = need("bilinear", bil, "product", 2)
    else:
        second = need("trilinear", tri, "triple", 3)
    return TwoProductAlgebra(K, d, bracket, second, flavor, coupling, labels, name)


def load(path: str) -> Structure:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise StructFileError(exc.strerror or str(exc), path, 0) from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise StructFileError("not UTF-8", path, exc.start) from None
    return loads(text, path)


__all__ = ["FLAVORS", "StructFileError", "dump", "dumps", "load", "loads", "to_document"]
