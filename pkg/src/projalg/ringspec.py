"""Text grammar for rings, involutions and element literals.

    RING       := "Z" | "Q" | "Qi" | "F" INT | "Zmod(" INT ")" | "Fq(" INT "," INT ")"
                | "Dual(" RING ")" | "Mat(" INT "," RING ")" | "Func(" INT "," RING ")"
                | "Poly(" RING ")"
    INVOLUTION := "id" | "conj" | "transpose" | "conjtranspose" | "sign(" INT "," INT ")"
                | "dualflip" | "pointwise(" INVOLUTION ")"

Whitespace is ignored.  Element literals are atoms (``3``, ``-2/3``, ``1+2i``)
or nested ``[...]`` / ``(...)`` groups whose meaning depends on the ring.
"""

from __future__ import annotations

import re

from .rings import (
    DualRing,
    FiniteFieldExt,
    FuncRing,
    GaussianRationals,
    Integers,
    Involution,
    MatrixRing,
    ModularRing,
    PolyRing,
    PrimeField,
    Rationals,
    Ring,
    RingError,
)

GRAMMAR = __doc__.split("\n\n")[1]


class SpecError(RingError):
    """Unparseable ring, involution or literal text."""

    def __init__(self, message, text="", pos=0):
        super().__init__(f"{message} at offset {pos} in {text!r}" if text else message)
        self.pos = pos


class _Cursor:
    def __init__(self, text):
        self.text = re.sub(r"\s+", "", text)
        self.pos = 0

    def peek(self, s):
        return self.text.startswith(s, self.pos)

    def take(self, s):
        if not self.peek(s):
            raise SpecError(f"expected {s!r}", self.text, self.pos)
        self.pos += len(s)

    def int(self):
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise SpecError("expected an integer", self.text, self.pos)
        self.pos = m.end()
        return int(m.group())

    def done(self):
        if self.pos != len(self.text):
            raise SpecError("trailing input", self.text, self.pos)


def _ring_ast(c: _Cursor):
    for head in ("Dual(", "Mat(", "Func(", "Poly(", "Zmod(", "Fq("):
        if c.peek(head):
            c.take(head)
            if head == "Zmod(":
                node = ("Zmod", c.int())
            elif head == "Fq(":
                p = c.int()
                c.take(",")
                node = ("Fq", p, c.int())
            elif head in ("Mat(", "Func("):
                n = c.int()
                c.take(",")
                node = (head[:-1], n, _ring_ast(c))
            else:
                node = (head[:-1], _ring_ast(c))
            c.take(")")
            return node
    if c.peek("Qi"):
        c.take("Qi")
        return ("Qi",)
    if c.peek("Q"):
        c.take("Q")
        return ("Q",)
    if c.peek("Z"):
        c.take("Z")
        return ("Z",)
    if c.peek("F"):
        c.take("F")
        return ("F", c.int())
    raise SpecError("expected a ring", c.text, c.pos)


def _inv_ast(c: _Cursor) -> Involution:
    if c.peek("sign("):
        c.take("sign(")
        p = c.int()
        c.take(",")
        q = c.int()
        c.take(")")
        return Involution("sign", (p, q))
    if c.peek("pointwise("):
        c.take("pointwise(")
        inner = _inv_ast(c)
        c.take(")")
        return Involution("pointwise", inner=inner)
    for word in ("conjtranspose", "transpose", "dualflip", "conj", "id"):
        if c.peek(word):
            c.take(word)
            return Involution(word)
    raise SpecError("expected an involution", c.text, c.pos)


def parse_involution(text: str) -> Involution:
    c = _Cursor(text)
    inv = _inv_ast(c)
    c.done()
    return inv


def _build(ast, inv):
    head = ast[0]
    inner_inv = inv.inner if inv is not None and inv.kind == "pointwise" else None
    if head == "Z":
        return Integers(inv)
    if head == "Q":
        return Rationals(inv)
    if head == "Qi":
        return GaussianRationals(inv)
    if head == "F":
        return PrimeField(ast[1], inv)
    if head == "Zmod":
        return ModularRing(ast[1], inv)
    if head == "Fq":
        return FiniteFieldExt(ast[1], ast[2], inv)
    if head == "Dual":
        return DualRing(_build(ast[1], inner_inv), inv)
    if head == "Mat":
        return MatrixRing(ast[1], _build(ast[2], None), inv)
    if head == "Func":
        return FuncRing(ast[1], _build(ast[2], inner_inv), inv)
    if head == "Poly":
        return PolyRing(_build(ast[1], None), inv)
    raise SpecError(f"unknown ring {head}")


def parse_ring(text: str, involution: str | Involution | None = None) -> Ring:
    """Build a ring from its grammar text, e.g. ``parse_ring("Mat(2,F2)", "transpose")``."""
    c = _Cursor(text)
    ast = _ring_ast(c)
    c.done()
    inv = parse_involution(involution) if isinstance(involution, str) else involution
    return _build(ast, inv)


# ---------------------------------------------------------------------------
# literals

_DELIMS = "[](),;"


def tokenize_literal(text: str):
    """Parse nested ``[...]``/``(...)`` groups into lists/tuples of atom strings."""
    s = re.sub(r"\s+", "", text)
    pos = 0

    def value():
        nonlocal pos
        if pos >= len(s):
            raise SpecError("unexpected end of literal", s, pos)
        ch = s[pos]
        if ch in "[(":
            close = "]" if ch == "[" else ")"
            pos += 1
            items = [value()]
            while pos < len(s) and s[pos] in ",;":
                pos += 1
                items.append(value())
            if pos >= len(s) or s[pos] != close:
                raise SpecError(f"expected {close!r}", s, pos)
            pos += 1
            return items if ch == "[" else tuple(items)
        start = pos
        while pos < len(s) and s[pos] not in _DELIMS:
            pos += 1
        if start == pos:
            raise SpecError("empty atom", s, pos)
        return s[start:pos]

    out = value()
    if pos != len(s):
        raise SpecError("trailing input", s, pos)
    return out


def parse_element(ring: Ring, text: str):
    """Payload of the element literal ``text`` in ``ring``."""
    try:
        return ring.from_literal(tokenize_literal(text))
    except SpecError:
        raise
    except (ValueError, ZeroDivisionError, TypeError, IndexError) as exc:
        raise SpecError(f"bad literal {text!r} for {ring.spec}: {exc}") from exc


def _split_ring_suffix(text: str):
    if "@" in text:
        body, ring_text = text.rsplit("@", 1)
        return body.strip(), ring_text.strip()
    return text.strip(), None


def parse_point_literal(text: str, ring: Ring | None = None):
    """``point[s;r] @ RING`` -> (ring, (s, r)) with payloads."""
    body, ring_text = _split_ring_suffix(text)
    if ring_text is not None:
        given = parse_ring(ring_text, ring.involution if ring is not None else None)
        if ring is not None and given.spec != ring.spec:
            raise SpecError(f"point ring {given.spec} differs from --ring {ring.spec}")
        ring = ring or given
    if ring is None:
        raise SpecError("point literal needs a ring (use '@ RING' or --ring)")
    compact = re.sub(r"\s+", "", body)
    if not (compact.startswith("point[") and compact.endswith("]")):
        raise SpecError("expected point[s;r]", compact, 0)
    inner = compact[len("point["):-1]
    depth, cut = 0, None
    for i, ch in enumerate(inner):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == ";" and depth == 0:
            cut = i
            break
    if cut is None:
        raise SpecError("point literal needs two components separated by ';'", compact, 0)
    return ring, (parse_element(ring, inner[:cut]), parse_element(ring, inner[cut + 1:]))


def parse_group_literal(text: str, ring: Ring | None = None):
    """``[[a,b],[c,d]] @ RING`` -> (ring, (a, b, c, d)) with payloads."""
    body, ring_text = _split_ring_suffix(text)
    if ring_text is not None and ring is None:
        ring = parse_ring(ring_text)
    if ring is None:
        raise SpecError("group element literal needs a ring")
    obj = tokenize_literal(body)
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(r, list) and len(r) == 2 for r in obj)):
        raise SpecError("expected [[a,b],[c,d]]", body, 0)
    return ring, tuple(ring.from_literal(x) for r in obj for x in r)
