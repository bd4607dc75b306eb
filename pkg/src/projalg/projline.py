"""The projective line over a ring.

A point is stored with a *frame*: an invertible 2x2 matrix over A whose second
column generates the point and whose first column generates a complement.
GL(2, A) acts from the left on frames.  Frames are payloads of
``MatrixRing(2, A)`` in row-major order ``(g11, g12, g21, g22)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Optional

from . import linalg
from .rings import (
    DualRing,
    Elem,
    FuncRing,
    Integers,
    MatrixRing,
    PolyRing,
    Ring,
    RingError,
    _xgcd_payload,
)


class NotAPointError(RingError):
    """A vector or frame that does not define a point of the projective line."""


class _Infinity:
    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "oo"


INFINITY = _Infinity()


@lru_cache(maxsize=None)
def frame_ring(A: Ring) -> MatrixRing:
    """The ring M(2, A) in which frames and group elements live."""
    if A.commutative:
        return MatrixRing(2, A)
    return MatrixRing(2, A, None)


def _mat(A, m):
    if isinstance(m, GroupElement):
        return m.matrix
    return tuple(A.coerce(x) for x in m)


class GroupElement:
    """An element of GL(2, A); ``*`` composes."""

    __slots__ = ("ring", "matrix", "_inverse")

    def __init__(self, ring: Ring, matrix, inverse=None, check=True):
        self.ring = ring
        if len(matrix) == 2 and isinstance(matrix[0], (list, tuple)) and len(matrix[0]) == 2 and not isinstance(matrix[0], Elem):
            matrix = (matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1])
        self.matrix = _mat(ring, matrix)
        if inverse is None and check:
            inverse = frame_ring(ring).inv(self.matrix)
            if inverse is None:
                raise NotAPointError(f"matrix {frame_ring(ring).fmt(self.matrix)} is not invertible")
        self._inverse = inverse

    @classmethod
    def identity(cls, A):
        G = frame_ring(A)
        return cls(A, G.one, inverse=G.one)

    @classmethod
    def swap(cls, A):
        m = (A.zero, A.one, A.one, A.zero)
        return cls(A, m, inverse=m)

    @classmethod
    def translation(cls, A, a):
        """[[1, a], [0, 1]]."""
        a = A.coerce(a)
        return cls(A, (A.one, a, A.zero, A.one), inverse=(A.one, A.neg(a), A.zero, A.one))

    @classmethod
    def diag(cls, A, a, d):
        return cls(A, (A.coerce(a), A.zero, A.zero, A.coerce(d)))

    def inverse(self) -> "GroupElement":
        if self._inverse is None:
            self._inverse = frame_ring(self.ring).inv(self.matrix)
        return GroupElement(self.ring, self._inverse, inverse=self.matrix)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        G = frame_ring(self.ring)
        return GroupElement(self.ring, G.mul(self.matrix, other.matrix), check=False)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.ring == other.ring and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"GroupElement({frame_ring(self.ring).fmt(self.matrix)} @ {self.ring.spec})"


class Point:
    """A point of A P^1 carried by an invertible frame."""

    def __init__(self, ring: Ring, frame, check=True):
        self.ring = ring
        self.frame = _mat(ring, frame)
        if check and self.frame_inverse is None:
            raise NotAPointError(f"frame {frame_ring(ring).fmt(self.frame)} is not invertible")

    @cached_property
    def frame_inverse(self):
        return frame_ring(self.ring).inv(self.frame)

    @property
    def generator(self):
        """The spanning vector (second frame column) as a payload pair."""
        return (self.frame[1], self.frame[3])

    @property
    def complement(self):
        return (self.frame[0], self.frame[2])

    def key(self):
        """Canonical hashable key: equal points have equal keys."""
        return _canonical_key(self.ring, *self.generator)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return point_eq(self, other)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        A = self.ring
        s, r = self.generator
        return f"point[{A.fmt(s)};{A.fmt(r)}]"


def _canonical_key(A: Ring, v1, v2):
    if A.finite:
        mul = A.mul
        return min((mul(v1, u), mul(v2, u)) for u in A.units)
    if A.is_field:
        if v2 != A.zero:
            return (A.mul(v1, A.inv(v2)), A.one)
        return (A.one, A.zero)
    if getattr(A, "is_pid", False):
        u = A.normal_unit(v2 if v2 != A.zero else v1)
        return (A.mul(v1, u), A.mul(v2, u))
    raise TypeError(f"points over {A.spec} have no canonical key")


def o_plus(A: Ring) -> Point:
    """The second factor 0 + A."""
    return Point(A, frame_ring(A).one, check=False)


def o_minus(A: Ring) -> Point:
    """The first factor A + 0."""
    return Point(A, GroupElement.swap(A).matrix, check=False)


# ---------------------------------------------------------------------------
# completing a vector to a frame


def _invertible(A, w1, v1, w2, v2):
    return frame_ring(A).inv((w1, v1, w2, v2)) is not None


def _complete_matrix_over_field(A: MatrixRing, v1, v2):
    K, n = A.inner, A.n
    cols = [[v1[i * n + j] for i in range(n)] + [v2[i * n + j] for i in range(n)] for j in range(n)]
    if linalg.rank(K, cols) < n:
        return None
    chosen = []
    current = list(cols)
    r = n
    for k in range(2 * n):
        e = [K.one if i == k else K.zero for i in range(2 * n)]
        if linalg.rank(K, current + [e]) > r:
            current.append(e)
            chosen.append(k)
            r += 1
            if r == 2 * n:
                break
    # W has columns e_k for k in chosen
    w = [[K.one if chosen[j] == i else K.zero for j in range(n)] for i in range(2 * n)]
    w1 = tuple(w[i][j] for i in range(n) for j in range(n))
    w2 = tuple(w[n + i][j] for i in range(n) for j in range(n))
    return w1, w2


def complete_vector(A: Ring, v1, v2):
    """A vector w with [w | v] invertible, or None if v spans no point.

    Uses the structure of A where it decides the question outright (fields,
    PIDs, function rings, dual numbers, matrices over a field) and exhaustive
    search over A^2 otherwise.
    """
    zero, one = A.zero, A.one
    for w in ((one, zero), (zero, one)):
        if _invertible(A, w[0], v1, w[1], v2):
            return w
    if A.is_field and A.commutative:
        return None
    if getattr(A, "is_pid", False):
        g, a, b = _xgcd_payload(A, v2, v1) if (v1 != zero or v2 != zero) else (zero, zero, zero)
        if g != one:
            return None
        return (a, b)
    if isinstance(A, FuncRing):
        parts = [complete_vector(A.inner, x, y) for x, y in zip(v1, v2)]
        if any(p is None for p in parts):
            return None
        return tuple(p[0] for p in parts), tuple(p[1] for p in parts)
    if isinstance(A, DualRing):
        w = complete_vector(A.inner, v1[0], v2[0])
        if w is None:
            return None
        return (w[0], A.inner.zero), (w[1], A.inner.zero)
    if isinstance(A, MatrixRing) and A.inner.is_field and A.inner.commutative:
        return _complete_matrix_over_field(A, v1, v2)
    if A.finite:
        return search_completion(A, v1, v2)
    raise RingError(f"cannot decide admissibility of vectors over {A.spec}")


def search_completion(A: Ring, v1, v2):
    """Exhaustive search for a complement vector (finite rings)."""
    els = A.element_list
    for w1 in els:
        for w2 in els:
            if _invertible(A, w1, v1, w2, v2):
                return (w1, w2)
    return None


def point_from_vector(A: Ring, v) -> Optional[Point]:
    """The point spanned by ``v = (v1, v2)``, or None if no invertible completion exists."""
    v1, v2 = (A.coerce(x) for x in v)
    w = complete_vector(A, v1, v2)
    if w is None:
        return None
    return Point(A, (w[0], v1, w[1], v2))


def point(A: Ring, v1, v2) -> Point:
    """Like :func:`point_from_vector` but raising on inadmissible vectors."""
    p = point_from_vector(A, (v1, v2))
    if p is None:
        raise NotAPointError(f"({A.fmt(A.coerce(v1))}, {A.fmt(A.coerce(v2))}) spans no point over {A.spec}")
    return p


def point_from_coord(A: Ring, a) -> Point:
    """The point spanned by (a, 1)."""
    return Point(A, GroupElement.translation(A, a).matrix, check=False)


# ---------------------------------------------------------------------------
# incidence


def _same_ring(x, y):
    if x.ring != y.ring:
        raise RingError(f"points over different rings: {x.ring!r} vs {y.ring!r}")


def point_eq(x: Point, y: Point) -> bool:
    """Equal iff frame(x)^-1 frame(y) is lower triangular."""
    _same_ring(x, y)
    A = x.ring
    xi = x.frame_inverse
    # (1,2) entry of xi * frame(y)
    e = A.add(A.mul(xi[0], y.frame[1]), A.mul(xi[1], y.frame[3]))
    return e == A.zero


def transversal(x: Point, y: Point) -> bool:
    """True iff A^2 is the direct sum of x and y."""
    _same_ring(x, y)
    (a, c), (b, d) = x.generator, y.generator
    return frame_ring(x.ring).inv((a, b, c, d)) is not None


def act(g, x: Point) -> Point:
    """g.x for g in GL(2, A)."""
    A = x.ring
    if isinstance(g, GroupElement):
        if g.ring != A:
            raise RingError("group element and point over different rings")
        m = g.matrix
    else:
        m = _mat(A, g)
    return Point(A, frame_ring(A).mul(m, x.frame), check=not isinstance(g, GroupElement))


def chart_map(chart: Point) -> GroupElement:
    """The group element swap . frame(chart)^-1, which carries ``chart`` to o-."""
    A = chart.ring
    inv = GroupElement(A, chart.frame_inverse, inverse=chart.frame)
    return GroupElement.swap(A) * inv


def affine_coord(x: Point, chart: Optional[Point] = None):
    """Affine coordinate of x in the chart of points transversal to ``chart`` (default o-).

    Returns a payload, or None when x is not transversal to ``chart``.
    """
    A = x.ring
    if chart is not None:
        _same_ring(x, chart)
        if not point_eq(chart, o_minus(A)):
            x = act(chart_map(chart), x)
    v1, v2 = x.generator
    u = A.inv(v2)
    if u is None:
        return None
    return A.mul(v1, u)


# ---------------------------------------------------------------------------
# principal ideal rings: A P^1 = Frac(A) + {oo}


def _check_pid(A):
    if not (isinstance(A, Integers) or (isinstance(A, PolyRing) and A.inner.is_field)):
        raise RingError(f"{A.spec} is not a supported principal ideal ring")


def _reduce_pair(A, s, r):
    g, _, _ = _xgcd_payload(A, r, s)
    if g != A.one:
        s, rem1 = A.divmod(s, g)
        r, rem2 = A.divmod(r, g)
        assert rem1 == A.zero and rem2 == A.zero
    u = A.normal_unit(r if r != A.zero else s)
    return A.mul(s, u), A.mul(r, u)


def pid_from_fraction(A: Ring, q) -> Point:
    """The point spanned by (s, r) for q = s/r; INFINITY maps to the span of (1, 0).

    Over Z, ``q`` may be an int or Fraction; over polynomial rings, a pair
    ``(s, r)`` of payloads or Elems.
    """
    _check_pid(A)
    if q is INFINITY:
        s, r = A.one, A.zero
    elif isinstance(A, Integers) and isinstance(q, (int, Fraction)):
        q = Fraction(q)
        s, r = q.numerator, q.denominator
    else:
        s, r = (A.coerce(x) for x in q)
        if r == A.zero:
            raise ZeroDivisionError("denominator is zero; use INFINITY")
        s, r = _reduce_pair(A, s, r)
    g, a, b = _xgcd_payload(A, r, s)
    if g != A.one:
        raise NotAPointError("numerator and denominator are not coprime")
    # a r - b s = 1, so [[a, s], [b, r]] has determinant 1
    return Point(A, (a, s, b, r))


def pid_to_fraction(x: Point):
    """Inverse of :func:`pid_from_fraction`: a Fraction (Z), a reduced (s, r) pair, or INFINITY."""
    A = x.ring
    _check_pid(A)
    s, r = _reduce_pair(A, *x.generator)
    if r == A.zero:
        return INFINITY
    if isinstance(A, Integers):
        return Fraction(s, r)
    return (s, r)


# ---------------------------------------------------------------------------
# finite rings


def enumerate_points(A: Ring) -> Iterator[Point]:
    """Every point of A P^1 once, first representative in A x A order."""
    if not A.finite:
        raise RingError(f"{A.spec} is infinite; cannot enumerate points")
    seen, bad = set(), set()
    els = A.element_list
    for v1 in els:
        for v2 in els:
            key = _canonical_key(A, v1, v2)
            if key in seen or key in bad:
                continue
            w = complete_vector(A, v1, v2)
            if w is None:
                bad.add(key)
                continue
            seen.add(key)
            yield Point(A, (w[0], v1, w[1], v2), check=False)


def enumerate_group(A: Ring) -> Iterator[GroupElement]:
    """All of GL(2, A) for finite A."""
    if not A.finite:
        raise RingError(f"{A.spec} is infinite")
    G = frame_ring(A)
    els = A.element_list
    for a in els:
        for b in els:
            for c in els:
                for d in els:
                    m = (a, b, c, d)
                    inv = G.inv(m)
                    if inv is not None:
                        yield GroupElement(A, m, inverse=inv)


def random_group_element(A: Ring, rng) -> GroupElement:
    G = frame_ring(A)
    while True:
        m = tuple(A.random(rng) for _ in range(4))
        inv = G.inv(m)
        if inv is not None:
            return GroupElement(A, m, inverse=inv)
