"""Jordan-Lie and Lie-Jordan algebras, coupling constants and quantization.

A Jordan-Lie algebra carries a bracket and a Jordan product with
(x.y).z - x.(y.z) = -C([[x,y],z] - [x,[y,z]]); a Lie-Jordan algebra carries a
bracket and a Jordan triple product with T(x,y,z) - T(y,x,z) = C[[x,y],z].
Quantization builds V + iV over R = K[X]/(X^2 - C) with xy = x.y + i[x,y].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .jordan import (
    AlgebraError,
    FiniteAlgebra,
    Report,
    Tensor,
    TripleSystem,
    _Tally,
    _label_vector,
    assoc_triple,
    check_associative,
    check_jordan,
    check_jts,
    commutator,
    eigenspace,
    jordan_from_assoc,
    jts_from_jordan,
    restrict_tensor,
    unit_vec,
    vadd,
    vlin,
    vscale,
    vsub,
)
from .rings import CharacteristicTwoError, QuadraticRing, Ring

JORDAN_LIE = "jordan-lie"
LIE_JORDAN = "lie-jordan"


@dataclass(frozen=True)
class Coupling:
    """Outcome of coupling detection: status is 'constant', 'indeterminate' or 'inconsistent'."""

    status: str
    value: object = None
    witness: Optional[tuple] = None

    @property
    def indeterminate(self):
        return self.status == "indeterminate"

    @property
    def consistent(self):
        return self.status != "inconsistent"


@dataclass
class TwoProductAlgebra:
    """A bracket together with a Jordan product (flavor jordan-lie) or a triple (lie-jordan).

    ``ambient`` and ``embedding`` record where the basis lives when the algebra
    was cut out of an associative algebra (used by the Hermitian realization).
    """

    K: Ring
    dim: int
    bracket: Tensor
    second: Tensor
    flavor: str
    coupling: Optional[Coupling] = None
    labels: list = None
    name: str = "algebra"
    ambient: Optional[FiniteAlgebra] = None
    embedding: Optional[list] = None

    def __post_init__(self):
        d = self.dim
        if self.flavor not in (JORDAN_LIE, LIE_JORDAN):
            raise AlgebraError(f"unknown flavor {self.flavor!r}")
        if self.bracket.shape != (d, d) or self.bracket.out_dim != d:
            raise AlgebraError("bracket tensor does not match the dimension")
        want = (d, d) if self.flavor == JORDAN_LIE else (d, d, d)
        if self.second.shape != want or self.second.out_dim != d:
            raise AlgebraError(f"{self.flavor} second product must have shape {want}")
        if self.labels is None:
            self.labels = [f"e{i + 1}" for i in range(d)]

    @property
    def jordan(self) -> FiniteAlgebra:
        if self.flavor != JORDAN_LIE:
            raise AlgebraError("not a Jordan-Lie algebra")
        return FiniteAlgebra(self.K, self.dim, self.second, self.labels, name=self.name)

    @property
    def triple_system(self) -> TripleSystem:
        if self.flavor != LIE_JORDAN:
            raise AlgebraError("not a Lie-Jordan algebra")
        return TripleSystem(self.K, self.dim, self.second, self.labels, self.name)

    def replace(self, **kw) -> "TwoProductAlgebra":
        data = dict(self.__dict__)
        data.update(kw)
        return TwoProductAlgebra(**data)


# ---------------------------------------------------------------------------
# checkers


def _check_lie(V: TwoProductAlgebra, rep: Report):
    K, d, br = V.K, V.dim, V.bracket
    b = br.table
    anti = _Tally("antisymmetry", V.labels)
    for i in range(d):
        for j in range(i, d):
            anti.record(b[(i, j)] == tuple(K.neg(c) for c in b[(j, i)]), (i, j))
    jac = _Tally("Jacobi", V.labels)
    for x, y, z in itertools.product(range(d), repeat=3):
        s = vadd(K, vadd(K, br(x, b[(y, z)]), br(y, b[(z, x)])), br(z, b[(x, y)]))
        jac.record(all(c == K.zero for c in s), (x, y, z))
    rep.results += [anti.result(), jac.result()]


def _coupling_terms(V: TwoProductAlgebra, i, j, k):
    """(lhs, rhs) with lhs = C * rhs the coupling axiom on basis vectors."""
    K, br, b = V.K, V.bracket, V.bracket.table
    if V.flavor == JORDAN_LIE:
        p, t = V.second, V.second.table
        lhs = vsub(K, p(t[(i, j)], k), p(i, t[(j, k)]))
        rhs = tuple(K.neg(c) for c in vsub(K, br(b[(i, j)], k), br(i, b[(j, k)])))
    else:
        t = V.second.table
        lhs = vsub(K, t[(i, j, k)], t[(j, i, k)])
        rhs = br(b[(i, j)], k)
    return lhs, rhs


def _check_coupling(V: TwoProductAlgebra, C, name) -> object:
    K, d = V.K, V.dim
    C = K.coerce(C)
    tally = _Tally(name, V.labels)
    for i, j, k in itertools.product(range(d), repeat=3):
        lhs, rhs = _coupling_terms(V, i, j, k)
        tally.record(lhs == vscale(K, C, rhs), (i, j, k))
    return tally.result(f"C={K.fmt(C)}")


def check_jordan_lie(V: TwoProductAlgebra, C=None) -> Report:
    """Lie bracket, Jordan product, bracket acting by derivations of the product, and
    associators proportional with constant C (default: the stored coupling)."""
    if V.flavor != JORDAN_LIE:
        raise AlgebraError("check_jordan_lie needs a jordan-lie algebra")
    K, d = V.K, V.dim
    C = _resolve_C(V, C)
    rep = Report(V.name)
    _check_lie(V, rep)
    jr = check_jordan(V.jordan)
    rep.extend(jr, "Jordan product: ")
    br, p = V.bracket, V.second
    b, t = br.table, p.table
    der = _Tally("derivation", V.labels)
    for x, u, v in itertools.product(range(d), repeat=3):
        lhs = br(x, t[(u, v)])
        rhs = vadd(K, p(b[(x, u)], v), p(u, b[(x, v)]))
        der.record(lhs == rhs, (x, u, v))
    rep.results.append(der.result())
    rep.results.append(_check_coupling(V, C, "coupling"))
    return rep


def check_lie_jordan(V: TwoProductAlgebra, C=None, budget: int = 10 ** 6) -> Report:
    """Lie bracket, Jordan triple system, bracket acting by derivations of T, and
    T(x,y,z) - T(y,x,z) = C[[x,y],z]."""
    if V.flavor != LIE_JORDAN:
        raise AlgebraError("check_lie_jordan needs a lie-jordan algebra")
    K, d = V.K, V.dim
    C = _resolve_C(V, C)
    rep = Report(V.name)
    _check_lie(V, rep)
    rep.extend(check_jts(V.triple_system, budget), "triple: ")
    br, T = V.bracket, V.second
    b, t = br.table, T.table
    der = _Tally("derivation", V.labels)
    for x, u, v, w in itertools.product(range(d), repeat=4):
        lhs = br(x, t[(u, v, w)])
        rhs = vadd(K, vadd(K, T(b[(x, u)], v, w), T(u, b[(x, v)], w)), T(u, v, b[(x, w)]))
        der.record(lhs == rhs, (x, u, v, w))
    rep.results.append(der.result())
    rep.results.append(_check_coupling(V, C, "coupling"))
    return rep


def _resolve_C(V, C):
    if C is not None:
        return V.K.coerce(C)
    coup = V.coupling or detect_coupling(V)
    return coup.value if coup.consistent else V.K.zero


def detect_coupling(V: TwoProductAlgebra) -> Coupling:
    """Solve lhs = C * rhs over all basis triples and coordinates for the scalar C."""
    K, d = V.K, V.dim
    value = None
    first = None
    for i, j, k in itertools.product(range(d), repeat=3):
        lhs, rhs = _coupling_terms(V, i, j, k)
        for a, r in zip(lhs, rhs):
            if r == K.zero:
                if a != K.zero:
                    return Coupling("inconsistent", None, (V.labels[i], V.labels[j], V.labels[k]))
                continue
            c = K.mul(a, K.inv(r))
            if value is None:
                value, first = c, (i, j, k)
            elif c != value:
                return Coupling("inconsistent", None, (V.labels[i], V.labels[j], V.labels[k]))
    if value is None:
        return Coupling("indeterminate", K.zero)
    return Coupling("constant", value, tuple(V.labels[n] for n in first))


def with_detected_coupling(V: TwoProductAlgebra) -> TwoProductAlgebra:
    return V.replace(coupling=detect_coupling(V))


# ---------------------------------------------------------------------------
# constructors


def lie_jordan_from_involution(A: FiniteAlgebra) -> TwoProductAlgebra:
    """The -1 eigenspace of the involution with [x,y] = xy - yx and T(x,y,z) = xyz + zyx."""
    K = A.K
    if K.characteristic == 2:
        raise CharacteristicTwoError(f"the eigenspace split needs 1/2 in {K.spec}")
    if A.involution is None:
        raise AlgebraError(f"{A.name} carries no involution")
    sub = eigenspace(A, -1)
    if sub.dim == 0:
        raise AlgebraError(f"{A.name} has no skew elements")
    bracket = restrict_tensor(commutator(A), sub, "bracket")
    triple = restrict_tensor(assoc_triple(A).triple, sub, "triple product")
    labels = [_label_vector(K, v, A.labels) for v in sub.basis]
    V = TwoProductAlgebra(K, sub.dim, bracket, triple, LIE_JORDAN, None, labels, f"Skew({A.name})", A, sub.basis)
    return with_detected_coupling(V)


def jordan_lie_from_hermitian(A: FiniteAlgebra) -> TwoProductAlgebra:
    """Herm(A,*) with x.y = (xy + yx)/2 and [x,y] = i(xy - yx)."""
    K = A.K
    if A.i_unit is None:
        raise AlgebraError(f"{A.name} has no designated i with i^2 = -1 and i^* = -i")
    if A.involution is None:
        raise AlgebraError(f"{A.name} carries no involution")
    J = jordan_from_assoc(A)
    i = A.i_unit
    comm = commutator(A)
    ibr = Tensor.from_function(K, (A.dim, A.dim), A.dim, lambda a, b: A.mul(i, comm.table[(a, b)]))
    sub = eigenspace(A, 1)
    bracket = restrict_tensor(ibr, sub, "bracket")
    product = restrict_tensor(J.product, sub, "Jordan product")
    labels = [_label_vector(K, v, A.labels) for v in sub.basis]
    V = TwoProductAlgebra(K, sub.dim, bracket, product, JORDAN_LIE, None, labels, f"Herm({A.name})", A, sub.basis)
    return with_detected_coupling(V)


def jordan_lie_from_assoc(A: FiniteAlgebra) -> TwoProductAlgebra:
    """A with x.y = (xy + yx)/2 and the commutator bracket."""
    J = jordan_from_assoc(A)
    emb = [unit_vec(A.K, A.dim, i) for i in range(A.dim)]
    V = TwoProductAlgebra(A.K, A.dim, commutator(A), J.product, JORDAN_LIE, None, A.labels, f"Sym({A.name})", A, emb)
    return with_detected_coupling(V)


def classical(J: FiniteAlgebra) -> TwoProductAlgebra:
    """A commutative algebra with the zero bracket."""
    zero = Tensor.zero(J.K, (J.dim, J.dim), J.dim)
    return with_detected_coupling(TwoProductAlgebra(J.K, J.dim, zero, J.product, JORDAN_LIE, None, J.labels, J.name))


def to_lie_jordan(V: TwoProductAlgebra, factor=None) -> TwoProductAlgebra:
    """Keep the bracket and replace the Jordan product by its triple product."""
    T = jts_from_jordan(V.jordan, factor)
    W = V.replace(second=T.triple, flavor=LIE_JORDAN, coupling=None, name=f"T({V.name})")
    return with_detected_coupling(W)


def jordan_product_obstruction(V: TwoProductAlgebra) -> dict:
    """Certificate that no bilinear product x.y yields V's triple as
    T(x,y,z) = f(x.(y.z) - y.(x.z) + (x.y).z) for any scalar f != 0.

    Such a T has T(x,y,.) + T(y,x,.) = 2f L_{x.y}, so the operators
    S_ij = T(e_i,e_j,.) + T(e_j,e_i,.) span a space of dimension at most dim V.
    A larger rank makes the linear system S_ij = L_{w_ij} inconsistent.
    """
    K, d, t = V.K, V.dim, V.second.table
    rows = []
    for i in range(d):
        for j in range(i, d):
            rows.append([c for k in range(d) for c in vadd(K, t[(i, j, k)], t[(j, i, k)])])
    r = linalg.rank(K, rows)
    return {"rank": r, "dim": d, "obstructed": r > d}


# ---------------------------------------------------------------------------
# quantization


@dataclass
class QuantizedAlgebra:
    """V_R = V + iV over R = K[X]/(X^2 - C), as a 2*dim algebra over K.

    Basis e_1..e_d, ie_1..ie_d; ``conjugation`` is the matrix of a + ib -> a - ib.
    """

    source: TwoProductAlgebra
    C: object
    R: QuadraticRing
    algebra: FiniteAlgebra
    checks: Report = field(default_factory=lambda: Report("quantization"))

    @property
    def K(self):
        return self.source.K

    @property
    def dim(self):
        return self.algebra.dim

    def i_action(self, v):
        """i.(a + ib) = Cb + ia."""
        K, d = self.K, self.source.dim
        a, b = v[:d], v[d:]
        return vscale(K, self.C, b) + tuple(a)

    def r_action(self, r, v):
        """(r0 + r1 i).v"""
        K = self.K
        return vadd(K, vscale(K, r[0], v), vscale(K, r[1], self.i_action(v)))

    def mul(self, x, y):
        return self.algebra.mul(x, y)


class QuantizationError(AlgebraError):
    pass


def _quantized_product(V: TwoProductAlgebra, C) -> Tensor:
    K, d = V.K, V.dim
    p, b = V.second.table, V.bracket.table
    def value(j, k):
        jj, kk = j % d, k % d
        jp, bk = p[(jj, kk)], b[(jj, kk)]
        n_i = (j >= d) + (k >= d)
        if n_i == 0:  # e_j e_k = e_j.e_k + i[e_j,e_k]
            return jp + bk
        if n_i == 1:  # i(e_j e_k) = C[e_j,e_k] + i e_j.e_k
            return vscale(K, C, bk) + jp
        # i^2 (e_j e_k) = C e_j.e_k + i C[e_j,e_k]
        return vscale(K, C, jp) + vscale(K, C, bk)

    return Tensor.from_function(K, (2 * d, 2 * d), 2 * d, value)


def quantize(V: TwoProductAlgebra, C=None) -> QuantizedAlgebra:
    """Quantize a Jordan-Lie algebra; C defaults to the detected coupling (0 if indeterminate)."""
    if V.flavor != JORDAN_LIE:
        raise AlgebraError("quantize needs a jordan-lie algebra")
    K, d = V.K, V.dim
    if C is None:
        coup = V.coupling or detect_coupling(V)
        if not coup.consistent:
            raise QuantizationError(f"{V.name} has no coupling constant")
        C = coup.value
    C = K.coerce(C)
    R = QuadraticRing(K, C)
    prod = _quantized_product(V, C)
    conj = [unit_vec(K, 2 * d, j) if j < d else tuple(K.neg(c) for c in unit_vec(K, 2 * d, j)) for j in range(2 * d)]
    labels = list(V.labels) + [f"i({lab})" for lab in V.labels]
    alg = FiniteAlgebra(K, 2 * d, prod, labels, conj, None, f"Q({V.name}, C={K.fmt(C)})")
    rep = Report(alg.name)
    rep.extend(check_associative(alg))
    rep.results.append(check_involution(alg))
    if not rep.passed:
        raise QuantizationError(f"quantization of {V.name} with C={K.fmt(C)} failed:\n{rep}")
    return QuantizedAlgebra(V, C, R, alg, rep)


def check_involution(A: FiniteAlgebra):
    """(xy)^* = y^* x^* on basis pairs and ** = id."""
    K, d = A.K, A.dim
    tally = _Tally("involution", A.labels)
    for j in range(d):
        tally.record(A.star(A.star(unit_vec(K, d, j))) == unit_vec(K, d, j), (j,))
    for j, k in itertools.product(range(d), repeat=2):
        ej, ek = unit_vec(K, d, j), unit_vec(K, d, k)
        tally.record(A.star(A.mul(ej, ek)) == A.mul(A.star(ek), A.star(ej)), (j, k))
    return tally.result()


@dataclass
class SplitDecomposition:
    s: object
    u: tuple
    v: tuple
    checks: Report


def split_decomposition(Q: QuantizedAlgebra) -> SplitDecomposition:
    """For C = s^2 != 0: idempotents u = 1/2 + i/(2s), v = 1/2 - i/(2s) of R with
    uv = 0, u + v = 1, and V_R = uV_R x vV_R."""
    K, R, C = Q.K, Q.R, Q.C
    if C == K.zero:
        raise AlgebraError("C = 0 does not split")
    s = K.sqrt(C)
    if s is None:
        raise AlgebraError(f"C = {K.fmt(C)} is not a square in {K.spec}")
    h = K.half()
    t = K.mul(h, K.inv(s))
    u, v = (h, t), (h, K.neg(t))
    rep = Report("split decomposition")
    ring = _Tally("idempotents")
    ring.record(R.mul(u, u) == u, ("uu=u",))
    ring.record(R.mul(v, v) == v, ("vv=v",))
    ring.record(R.mul(u, v) == R.zero, ("uv=0",))
    ring.record(R.add(u, v) == R.one, ("u+v=1",))
    rep.results.append(ring.result())
    n = Q.dim
    basis = [unit_vec(K, n, j) for j in range(n)]
    ortho = _Tally("uV.vV=0", Q.algebra.labels)
    for j, k in itertools.product(range(n), repeat=2):
        prod = Q.mul(Q.r_action(u, basis[j]), Q.r_action(v, basis[k]))
        ortho.record(all(c == K.zero for c in prod), (j, k))
    rep.results.append(ortho.result())
    uV = [Q.r_action(u, e) for e in basis]
    vV = [Q.r_action(v, e) for e in basis]
    ru, rv = linalg.rank(K, uV), linalg.rank(K, vV)
    dims = _Tally("direct sum")
    dims.record(ru + rv == n and linalg.rank(K, uV + vV) == n, (ru, rv))
    rep.results.append(dims.result(f"dim uV={ru} dim vV={rv}"))
    return SplitDecomposition(s, u, v, rep)


def hermitian_realization(Q: QuantizedAlgebra) -> tuple:
    """The K-linear map a + ib -> a - (i_A/2) b from V_R into the ambient algebra of a
    Hermitian Jordan-Lie algebra, with a report on bijectivity, multiplicativity and
    compatibility with the involutions.  Returns (matrix rows, report)."""
    V = Q.source
    A = V.ambient
    if A is None or V.embedding is None or A.i_unit is None:
        raise AlgebraError(f"{V.name} was not built from a Hermitian part with a designated i")
    K, n = Q.K, Q.dim
    lam = vscale(K, K.neg(K.half()), A.i_unit)
    images = list(V.embedding) + [A.mul(lam, e) for e in V.embedding]

    def phi(x):
        return vlin(K, zip(x, images), A.dim)

    rep = Report(f"realization of {Q.algebra.name} in {A.name}")
    bij = _Tally("bijective")
    r = linalg.rank(K, images)
    bij.record(r == n == A.dim, (r, A.dim))
    rep.results.append(bij.result())
    hom = _Tally("multiplicative", Q.algebra.labels)
    star = _Tally("involution", Q.algebra.labels)
    basis = [unit_vec(K, n, j) for j in range(n)]
    for j, k in itertools.product(range(n), repeat=2):
        hom.record(phi(Q.mul(basis[j], basis[k])) == A.mul(images[j], images[k]), (j, k))
    for j in range(n):
        star.record(phi(Q.algebra.star(basis[j])) == A.star(images[j]), (j,))
    rep.results += [hom.result(), star.result()]
    return images, rep


__all__ = [
    "Coupling",
    "JORDAN_LIE",
    "LIE_JORDAN",
    "QuantizationError",
    "QuantizedAlgebra",
    "SplitDecomposition",
    "TwoProductAlgebra",
    "check_involution",
    "check_jordan_lie",
    "check_lie_jordan",
    "classical",
    "detect_coupling",
    "hermitian_realization",
    "jordan_lie_from_assoc",
    "jordan_lie_from_hermitian",
    "jordan_product_obstruction",
    "lie_jordan_from_involution",
    "quantize",
    "split_decomposition",
    "to_lie_jordan",
    "with_detected_coupling",
]
