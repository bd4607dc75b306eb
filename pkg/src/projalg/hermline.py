"""Sesquilinear forms on A^2 and the Hermitian, skew-Hermitian and unitary lines.

For an invertible B the form is beta(x, y) = sum_ij x_i^* b_ij y_j.  Its
orthocomplement map on A P^1 is computed from the frame of a point through
the beta-adjoint phi(g) = B^-1 (g^*)^t B, using (g.x)^perp = phi(g)^-1 . x^perp
and the closed form (o+)^perp = B^-1 . o-.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from .projline import (
    GroupElement,
    NotAPointError,
    Point,
    act,
    enumerate_points,
    frame_ring,
    o_minus,
    o_plus,
    point,
    point_eq,
    transversal,
)
from .rings import Ring, RingError

FORM_NAMES = ("omega", "theta", "sigma")


@dataclass(frozen=True)
class SesquiForm:
    """A non-degenerate (skew-)Hermitian form given by its 2x2 matrix B over A."""

    ring: Ring
    matrix: tuple
    name: str = "custom"
    #: +1 if (B^*)^t = B, -1 if (B^*)^t = -B (both in characteristic 2)
    symmetry: int = 1

    @property
    def inverse(self):
        return frame_ring(self.ring).inv(self.matrix)


def star_transpose(A: Ring, g):
    """(g^*)^t for a 2x2 matrix payload over A."""
    s = A.star
    return (s(g[0]), s(g[2]), s(g[1]), s(g[3]))


def _make_form(A: Ring, B, name: str) -> SesquiForm:
    G = frame_ring(A)
    B = tuple(A.coerce(x) for x in B)
    if G.inv(B) is None:
        raise RingError(f"form matrix {G.fmt(B)} is not invertible")
    Bt = star_transpose(A, B)
    if Bt == B:
        sym = 1
    elif Bt == G.neg(B):
        sym = -1
    else:
        raise RingError(f"form matrix {G.fmt(B)} is neither Hermitian nor skew-Hermitian")
    return SesquiForm(A, B, name, sym)


def omega(A: Ring) -> SesquiForm:
    """x1^* y2 - x2^* y1."""
    return _make_form(A, (A.zero, A.one, A.neg(A.one), A.zero), "omega")


def theta(A: Ring) -> SesquiForm:
    """x1^* y2 + x2^* y1."""
    return _make_form(A, (A.zero, A.one, A.one, A.zero), "theta")


def sigma(A: Ring) -> SesquiForm:
    """x1^* y1 - x2^* y2."""
    return _make_form(A, (A.one, A.zero, A.zero, A.neg(A.one)), "sigma")


def custom_form(A: Ring, B) -> SesquiForm:
    return _make_form(A, B, "custom")


def form_by_name(A: Ring, name: str) -> SesquiForm:
    try:
        return {"omega": omega, "theta": theta, "sigma": sigma}[name](A)
    except KeyError:
        raise RingError(f"unknown form {name!r}; expected one of {FORM_NAMES}") from None


def form_eval(form: SesquiForm, x, y):
    """beta(x, y) for payload pairs x, y."""
    A = form.ring
    b = form.matrix
    x = [A.star(A.coerce(t)) for t in x]
    y = [A.coerce(t) for t in y]
    total = A.zero
    for i in range(2):
        for j in range(2):
            total = A.add(total, A.mul(A.mul(x[i], b[2 * i + j]), y[j]))
    return total


def phi_adjoint(form: SesquiForm, g) -> GroupElement:
    """B^-1 (g^*)^t B, the adjoint of g with respect to the form."""
    A = form.ring
    G = frame_ring(A)
    m = g.matrix if isinstance(g, GroupElement) else tuple(A.coerce(t) for t in g)
    out = G.mul(G.mul(form.inverse, star_transpose(A, m)), form.matrix)
    return GroupElement(A, out, check=False)


def orthocomplement(form: SesquiForm, x: Point) -> Point:
    """x^perp with respect to the form."""
    A = form.ring
    if x.ring != A:
        raise RingError("point and form over different rings")
    G = frame_ring(A)
    g = GroupElement(A, x.frame, inverse=x.frame_inverse)
    phi = phi_adjoint(form, g)
    seed = G.mul(form.inverse, GroupElement.swap(A).matrix)  # frame of B^-1 . o-
    return Point(A, G.mul(phi.inverse().matrix, seed), check=False)


# ---------------------------------------------------------------------------
# fixed lines


KINDS = {"h": "omega", "sh": "theta", "u": "sigma"}


@dataclass(frozen=True)
class FixedLine:
    """The fixed-point set of the orthocomplement map of ``form``."""

    form: SesquiForm
    kind: str = "custom"

    @property
    def ring(self):
        return self.form.ring

    def base_points(self):
        """The transversal pair of base points: (o+, o-), or the two diagonals for P_u."""
        A = self.ring
        if self.kind == "u":
            return point(A, A.one, A.one), point(A, A.one, A.neg(A.one))
        return o_plus(A), o_minus(A)


def fixed_line(A: Ring, kind: str) -> FixedLine:
    """``kind`` is one of 'h' (from omega), 'sh' (theta), 'u' (sigma)."""
    if kind not in KINDS:
        raise RingError(f"unknown fixed line {kind!r}; expected h, sh or u")
    return FixedLine(form_by_name(A, KINDS[kind]), kind)


def line_of_form(form: SesquiForm) -> FixedLine:
    kind = {v: k for k, v in KINDS.items()}.get(form.name, "custom")
    return FixedLine(form, kind)


def in_fixed_line(line: FixedLine, x: Point) -> bool:
    return point_eq(orthocomplement(line.form, x), x)


def enumerate_fixed_line(line: FixedLine) -> Iterator[Point]:
    for x in enumerate_points(line.ring):
        if in_fixed_line(line, x):
            yield x


def unitary_elements(A: Ring) -> list:
    """U(A, *) = {a : a^* a = a a^* = 1} for finite A."""
    one = A.one
    return [a for a in A.element_list if A.mul(A.star(a), a) == one and A.mul(a, A.star(a)) == one]


def unitary_embed(A: Ring, a) -> Point:
    """The point (1, a)A of the unitary line for a *-unitary a."""
    a = A.coerce(a)
    sa = A.star(a)
    if A.mul(sa, a) != A.one or A.mul(a, sa) != A.one:
        raise RingError(f"{A.fmt(a)} is not *-unitary")
    return Point(A, (A.one, A.one, A.zero, a), check=False)


def unitary_image(A: Ring) -> dict:
    """How much of the unitary line the embedding a -> (1, a)A covers (finite A)."""
    line = fixed_line(A, "u")
    image = {unitary_embed(A, a).key() for a in unitary_elements(A)}
    size = sum(1 for _ in enumerate_fixed_line(line))
    return {"unitaries": len(image), "line": size, "surjective": len(image) == size}


def complex_type_iso(x: Point) -> Point:
    """dia(i, 1).x, carrying the Hermitian line onto the skew-Hermitian one."""
    A = x.ring
    i = A.complex_unit()
    if i is None:
        raise RingError(f"{A!r} has no element i with i^2 = -1 and i^* = -i")
    return act(GroupElement.diag(A, i, A.one), x)


# ---------------------------------------------------------------------------
# isometry groups and orbits


def isometry_group(form: SesquiForm) -> list:
    """All g in M(2, A) with phi(g) g = 1, i.e. (g^*)^t B g = B (finite A, exhaustive)."""
    A = form.ring
    if not A.finite:
        raise RingError(f"{A.spec} is infinite; cannot list the isometry group")
    B = form.matrix
    add, mul, star = A.add, A.mul, A.star
    els = A.element_list
    stars = {a: star(a) for a in els}
    b11, b12, b21, b22 = B
    group = []
    # (g^* t B g)_{kl} = sum_ij g_ik^* b_ij g_jl with g = [[a, b], [c, d]]
    for a in els:
        sa = stars[a]
        for c in els:
            sc = stars[c]
            # row vector r1 = (a^*, c^*) B
            r1 = (add(mul(sa, b11), mul(sc, b21)), add(mul(sa, b12), mul(sc, b22)))
            if add(mul(r1[0], a), mul(r1[1], c)) != b11:
                continue
            for b in els:
                sb = stars[b]
                for d in els:
                    if add(mul(r1[0], b), mul(r1[1], d)) != b12:
                        continue
                    sd = stars[d]
                    r2 = (add(mul(sb, b11), mul(sd, b21)), add(mul(sb, b12), mul(sd, b22)))
                    if add(mul(r2[0], a), mul(r2[1], c)) != b21:
                        continue
                    if add(mul(r2[0], b), mul(r2[1], d)) != b22:
                        continue
                    group.append((a, b, c, d))
    G = frame_ring(A)
    out = []
    for m in group:
        inv = G.mul(G.mul(form.inverse, star_transpose(A, m)), B)
        out.append(GroupElement(A, m, inverse=inv))
    return out


def group_orbit(line: FixedLine, seed: Point, group: Optional[list] = None) -> list:
    """Orbit of ``seed`` under the isometry group of the line's form (breadth-first closure)."""
    if group is None:
        group = isometry_group(line.form)
    orbit = {seed.key(): seed}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for g in group:
            y = act(g, x)
            k = y.key()
            if k not in orbit:
                orbit[k] = y
                queue.append(y)
    return list(orbit.values())


@dataclass
class OrbitReport:
    line_size: int
    group_order: int
    plus: list
    minus: list

    @property
    def relation(self) -> str:
        a = {p.key() for p in self.plus}
        b = {p.key() for p in self.minus}
        if a == b:
            return "equal"
        if a & b:
            return "overlapping"
        return "disjoint"

    @property
    def transitive(self) -> bool:
        return len(self.plus) == self.line_size


def orbit_report(line: FixedLine) -> OrbitReport:
    """Orbits X+ and X- of the two base points under the isometry group."""
    group = isometry_group(line.form)
    fixed = list(enumerate_fixed_line(line))
    p, m = line.base_points()
    return OrbitReport(len(fixed), len(group), group_orbit(line, p, group), group_orbit(line, m, group))


def herm_elements(A: Ring) -> list:
    return [a for a in A.element_list if A.star(a) == a]


def aherm_elements(A: Ring) -> list:
    return [a for a in A.element_list if A.star(a) == A.neg(a)]


def chart_slice(line: FixedLine, y: Point) -> list:
    """Points of the fixed line transversal to y."""
    return [x for x in enumerate_fixed_line(line) if transversal(x, y)]


__all__ = [
    "FixedLine",
    "NotAPointError",
    "OrbitReport",
    "SesquiForm",
    "aherm_elements",
    "chart_slice",
    "complex_type_iso",
    "custom_form",
    "enumerate_fixed_line",
    "fixed_line",
    "form_by_name",
    "form_eval",
    "group_orbit",
    "herm_elements",
    "in_fixed_line",
    "isometry_group",
    "line_of_form",
    "omega",
    "orbit_report",
    "orthocomplement",
    "phi_adjoint",
    "sigma",
    "star_transpose",
    "theta",
    "unitary_elements",
    "unitary_embed",
    "unitary_image",
]
