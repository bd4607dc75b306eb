"""Finite-dimensional algebras, Jordan algebras, Jordan triple systems and Jordan pairs.

Everything is given by structure constants over an exact base field K (a
:class:`~projalg.rings.Ring` with ``is_field``).  Vectors are tuples of K
payloads; a multilinear map is a :class:`Tensor` holding its values on basis
tuples.  Checkers never raise on failed identities: they return a
:class:`Report` whose entries carry a witness tuple of basis labels.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import linalg
from .rings import CharacteristicTwoError, MatrixRing, Ring, RingError

#: maximal number of basis tuples evaluated by an exhaustive identity check
BUDGET = 10 ** 6


class AlgebraError(RingError):
    """Malformed algebra data or a failed precondition of a construction."""


# ---------------------------------------------------------------------------
# reports


@dataclass
class AxiomResult:
    name: str
    passed: bool
    checked: int = 0
    failures: int = 0
    witness: Optional[tuple] = None
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        out = f"{self.name}: {status} ({self.checked} checked"
        out += f", {self.failures} failed)" if self.failures else ")"
        if self.witness is not None:
            out += f" witness={self.witness}"
        if self.detail:
            out += f" {self.detail}"
        return out


@dataclass
class Report:
    subject: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name):
        return any(r.name == name for r in self.results)

    def extend(self, other: "Report", prefix: str = ""):
        for r in other.results:
            self.results.append(AxiomResult(prefix + r.name, r.passed, r.checked, r.failures, r.witness, r.detail))

    def lines(self) -> list:
        return [f"{self.subject}: {'pass' if self.passed else 'FAIL'}"] + ["  " + r.line() for r in self.results]

    def __str__(self):
        return "\n".join(self.lines())


class _Tally:
    """Accumulates one identity's evaluations into an AxiomResult."""

    def __init__(self, name, labels=None):
        self.name = name
        self.labels = labels
        self.checked = 0
        self.failures = 0
        self.witness = None

    def record(self, ok: bool, idx):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = self._label(idx)

    def _label(self, idx):
        if self.labels is None or not all(isinstance(i, int) for i in idx):
            return tuple(idx)
        return tuple(self.labels[i] for i in idx)

    def result(self, detail="") -> AxiomResult:
        return AxiomResult(self.name, self.failures == 0, self.checked, self.failures, self.witness, detail)


# ---------------------------------------------------------------------------
# vectors and tensors


def zero_vec(K, n):
    return (K.zero,) * n


def unit_vec(K, n, i):
    return tuple(K.one if j == i else K.zero for j in range(n))


def vadd(K, u, v):
    return tuple(K.add(a, b) for a, b in zip(u, v))


def vsub(K, u, v):
    return tuple(K.sub(a, b) for a, b in zip(u, v))


def vscale(K, c, v):
    return tuple(K.mul(c, a) for a in v)


def vlin(K, terms, n):
    """sum of c * v over (c, v) pairs."""
    out = [K.zero] * n
    for c, v in terms:
        if c == K.zero:
            continue
        for k, a in enumerate(v):
            if a != K.zero:
                out[k] = K.add(out[k], K.mul(c, a))
    return tuple(out)


def random_vec(K, n, rng):
    return tuple(K.random(rng) for _ in range(n))


class Tensor:
    """A multilinear map V_1 x ... x V_r -> W stored by its values on basis tuples."""

    def __init__(self, K: Ring, shape: Sequence[int], out_dim: int, table: dict):
        self.K = K
        self.shape = tuple(shape)
        self.out_dim = out_dim
        self.table = table

    @classmethod
    def from_function(cls, K, shape, out_dim, fn: Callable):
        table = {}
        for idx in itertools.product(*(range(n) for n in shape)):
            v = tuple(fn(*idx))
            if len(v) != out_dim:
                raise AlgebraError(f"value at {idx} has length {len(v)}, expected {out_dim}")
            table[idx] = v
        return cls(K, shape, out_dim, table)

    @classmethod
    def zero(cls, K, shape, out_dim):
        z = zero_vec(K, out_dim)
        return cls.from_function(K, shape, out_dim, lambda *idx: z)

    @property
    def arity(self):
        return len(self.shape)

    def __call__(self, *args):
        """Evaluate on vectors; an int argument stands for that basis vector."""
        K = self.K
        zero, is_zero, add, mul = K.zero, K.is_zero, K.add, K.mul
        supports = []
        for a in args:
            if isinstance(a, int):
                supports.append(((a, None),))
            else:
                supports.append(tuple((i, c) for i, c in enumerate(a) if not is_zero(c)))
        out = [zero] * self.out_dim
        table = self.table
        for combo in itertools.product(*supports):
            coef = None  # None stands for 1
            for _, c in combo:
                if c is not None:
                    coef = c if coef is None else mul(coef, c)
            vec = table[tuple(i for i, _ in combo)]
            for k, t in enumerate(vec):
                if not is_zero(t):
                    out[k] = add(out[k], t if coef is None else mul(coef, t))
        return tuple(out)

    def scaled(self, lam) -> "Tensor":
        K = self.K
        return Tensor(K, self.shape, self.out_dim, {i: vscale(K, lam, v) for i, v in self.table.items()})

    def plus(self, other: "Tensor") -> "Tensor":
        K = self.K
        return Tensor(K, self.shape, self.out_dim, {i: vadd(K, v, other.table[i]) for i, v in self.table.items()})

    def mutated(self, idx, k, delta) -> "Tensor":
        """Copy with the single coefficient (idx, k) shifted by ``delta``."""
        table = dict(self.table)
        v = list(table[idx])
        v[k] = self.K.add(v[k], delta)
        table[idx] = tuple(v)
        return Tensor(self.K, self.shape, self.out_dim, table)

    def random_mutation(self, rng: random.Random) -> "Tensor":
        idx = tuple(rng.randrange(n) for n in self.shape)
        k = rng.randrange(self.out_dim)
        nonzero = [a for a in (self.K.from_int(j) for j in range(1, 4)) if a != self.K.zero]
        return self.mutated(idx, k, rng.choice(nonzero))

    def nested(self):
        """Nested lists t[i][j]...[k] of payloads."""

        def build(prefix):
            if len(prefix) == len(self.shape):
                return list(self.table[prefix])
            return [build(prefix + (i,)) for i in range(self.shape[len(prefix)])]

        return build(())

    @classmethod
    def from_nested(cls, K, shape, out_dim, data):
        def get(idx):
            node = data
            for i in idx:
                node = node[i]
            return node

        return cls.from_function(K, shape, out_dim, lambda *idx: get(idx))

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.K == other.K
            and self.shape == other.shape
            and self.out_dim == other.out_dim
            and self.table == other.table
        )

    def __repr__(self):
        return f"Tensor({self.K.spec}, shape={self.shape}, out={self.out_dim})"


# ---------------------------------------------------------------------------
# algebras and triple systems


def _require_field(K):
    if not K.is_field:
        raise AlgebraError(f"base {K.spec} is not a field")


def _default_labels(n, stem="e"):
    return [f"{stem}{i + 1}" for i in range(n)]


@dataclass
class FiniteAlgebra:
    """A bilinear product on K^dim.

    ``involution`` (optional) is a list of the images of the basis vectors;
    ``i_unit`` (optional) the coordinates of a central i with i^2 = -1, i^* = -i.
    """

    K: Ring
    dim: int
    product: Tensor
    labels: list = None
    involution: Optional[list] = None
    i_unit: Optional[tuple] = None
    name: str = "algebra"
    #: "associative" or "jordan": which checker the algebra is meant for
    flavor: str = "associative"

    def __post_init__(self):
        _require_field(self.K)
        if self.product.shape != (self.dim, self.dim) or self.product.out_dim != self.dim:
            raise AlgebraError("product tensor does not match the dimension")
        if self.labels is None:
            self.labels = _default_labels(self.dim)

    def mul(self, x, y):
        return self.product(x, y)

    def basis(self, i):
        return unit_vec(self.K, self.dim, i)

    def star(self, v):
        if self.involution is None:
            raise AlgebraError(f"{self.name} carries no involution")
        return vlin(self.K, zip(v, self.involution), self.dim)

    def identity(self):
        """The two-sided unit, or None."""
        K, d = self.K, self.dim
        rows, rhs = [], []
        for j in range(d):
            for k in range(d):
                rows.append([self.product.table[(i, j)][k] for i in range(d)])
                rhs.append(K.one if j == k else K.zero)
                rows.append([self.product.table[(j, i)][k] for i in range(d)])
                rhs.append(K.one if j == k else K.zero)
        sol = linalg.solve(K, rows, rhs)
        return None if sol is None else tuple(sol)

    def with_product(self, product: Tensor, name=None, flavor=None) -> "FiniteAlgebra":
        return FiniteAlgebra(
            self.K, self.dim, product, self.labels, self.involution, self.i_unit, name or self.name, flavor or self.flavor
        )


@dataclass
class TripleSystem:
    K: Ring
    dim: int
    triple: Tensor
    labels: list = None
    name: str = "triple system"

    def __post_init__(self):
        _require_field(self.K)
        if self.triple.shape != (self.dim,) * 3 or self.triple.out_dim != self.dim:
            raise AlgebraError("triple tensor does not match the dimension")
        if self.labels is None:
            self.labels = _default_labels(self.dim)

    def __call__(self, x, y, z):
        return self.triple(x, y, z)


@dataclass
class JordanPair:
    """Modules V+ (dim dplus) and V- (dim dminus) with T+: V+ V- V+ -> V+ and T-: V- V+ V- -> V-."""

    K: Ring
    dplus: int
    dminus: int
    tplus: Tensor
    tminus: Tensor
    labels_plus: list = None
    labels_minus: list = None
    name: str = "Jordan pair"

    def __post_init__(self):
        _require_field(self.K)
        p, m = self.dplus, self.dminus
        if self.tplus.shape != (p, m, p) or self.tplus.out_dim != p:
            raise AlgebraError("T+ tensor shape does not match (V+, V-, V+) -> V+")
        if self.tminus.shape != (m, p, m) or self.tminus.out_dim != m:
            raise AlgebraError("T- tensor shape does not match (V-, V+, V-) -> V-")
        if self.labels_plus is None:
            self.labels_plus = _default_labels(p, "p")
        if self.labels_minus is None:
            self.labels_minus = _default_labels(m, "m")


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of K^n with an echelon basis; coordinates are read off the pivots."""

    def __init__(self, K, n, vectors):
        rows, pivots = linalg.rref(K, [list(v) for v in vectors]) if vectors else ([], [])
        self.K = K
        self.n = n
        self.basis = [tuple(r) for r in rows[: len(pivots)]]
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, v):
        """Coordinates of v in the echelon basis, or None if v is not in the subspace."""
        c = tuple(v[p] for p in self.pivots)
        if vlin(self.K, zip(c, self.basis), self.n) != tuple(v):
            return None
        return c

    def vector(self, c):
        return vlin(self.K, zip(c, self.basis), self.n)


def kernel_subspace(K, n, linear_map: Callable) -> Subspace:
    """Kernel of a K-linear map K^n -> K^m given as a function on vectors."""
    images = [linear_map(unit_vec(K, n, i)) for i in range(n)]
    m = len(images[0]) if images else 0
    rows = [[images[i][k] for i in range(n)] for k in range(m)]
    return Subspace(K, n, linalg.nullspace(K, rows, n))


def restrict_tensor(t: Tensor, sub: Subspace, what="product") -> Tensor:
    """The tensor on sub^r, requiring closure (values back in sub)."""
    d = sub.dim

    def value(*idx):
        v = t(*(sub.basis[i] for i in idx))
        c = sub.coords(v)
        if c is None:
            raise AlgebraError(f"{what} leaves the subspace at basis tuple {idx}")
        return c

    return Tensor.from_function(t.K, (d,) * t.arity, d, value)


def _label_vector(K, v, labels):
    terms = []
    for c, lab in zip(v, labels):
        if c == K.zero:
            continue
        if c == K.one:
            terms.append(lab)
        elif c == K.neg(K.one):
            terms.append("-" + lab)
        else:
            terms.append(f"{K.fmt(c)}*{lab}")
    return "+".join(terms).replace("+-", "-") or "0"


def subalgebra(A: FiniteAlgebra, sub: Subspace, name: str) -> "FiniteAlgebra":
    product = restrict_tensor(A.product, sub)
    inv = None
    if A.involution is not None:
        inv = []
        for b in sub.basis:
            c = sub.coords(A.star(b))
            if c is None:
                inv = None
                break
            inv.append(c)
    labels = [_label_vector(A.K, b, A.labels) for b in sub.basis]
    return FiniteAlgebra(A.K, sub.dim, product, labels, inv, None, name, A.flavor)


def eigenspace(A: FiniteAlgebra, sign: int) -> Subspace:
    """{a : a^* = sign * a}."""
    K = A.K
    s = K.from_int(sign)
    return kernel_subspace(K, A.dim, lambda v: vsub(K, A.star(v), vscale(K, s, v)))


# ---------------------------------------------------------------------------
# constructors


def _matrix_labels(R: MatrixRing):
    n, inner = R.n, R.inner
    cells = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    if inner.dim == 1:
        return cells
    if inner.dim == 2 and inner.spec == "Qi":
        return [p + c for c in cells for p in ("", "i")]
    return [f"{c}.{k}" for c in cells for k in range(inner.dim)]


def algebra_from_ring(A: Ring) -> FiniteAlgebra:
    """The ring A as an associative algebra over its scalar field, with its involution."""
    K = A.scalars
    if K is None or A.dim is None:
        raise AlgebraError(f"{A.spec} is not a finite-dimensional algebra over a field")
    d = A.dim
    basis = [A.from_coords(unit_vec(K, d, i)) for i in range(d)]
    product = Tensor.from_function(K, (d, d), d, lambda i, j: A.coords(A.mul(basis[i], basis[j])))
    try:
        involution = [tuple(A.coords(A.star(b))) for b in basis]
    except RingError:
        involution = None
    i_unit = None
    try:
        i = A.complex_unit()
        if i is not None:
            i_unit = tuple(A.coords(i))
    except RingError:
        pass
    labels = _matrix_labels(A) if isinstance(A, MatrixRing) else _default_labels(d)
    return FiniteAlgebra(K, d, product, labels, involution, i_unit, A.spec)


def matrix_algebra(n: int, K: Ring) -> FiniteAlgebra:
    """M(n, K) with matrix units E_ij."""
    return algebra_from_ring(MatrixRing(n, K, "transpose"))


def commutator(A: FiniteAlgebra) -> Tensor:
    K = A.K
    return Tensor.from_function(
        K, (A.dim, A.dim), A.dim, lambda i, j: vsub(K, A.product.table[(i, j)], A.product.table[(j, i)])
    )


def check_associative(A: FiniteAlgebra) -> Report:
    _K, d, p = A.K, A.dim, A.product
    tally = _Tally("associativity", A.labels)
    for i, j, k in itertools.product(range(d), repeat=3):
        tally.record(p(p.table[(i, j)], k) == p(i, p.table[(j, k)]), (i, j, k))
    return Report(A.name, [tally.result()])


def symmetrized(A: FiniteAlgebra) -> Tensor:
    """x . y = (xy + yx)/2."""
    K = A.K
    h = K.half()
    t = A.product.table
    return Tensor.from_function(K, (A.dim, A.dim), A.dim, lambda i, j: vscale(K, h, vadd(K, t[(i, j)], t[(j, i)])))


def jordan_from_assoc(A: FiniteAlgebra, check: bool = True) -> FiniteAlgebra:
    """The special Jordan algebra (A, (xy + yx)/2)."""
    if check:
        rep = check_associative(A)
        if not rep.passed:
            raise AlgebraError(f"{A.name} is not associative: {rep['associativity'].line()}")
    return A.with_product(symmetrized(A), f"J({A.name})", "jordan")


def hermitian_part(A: FiniteAlgebra) -> FiniteAlgebra:
    """Herm(A, *) = {a : a^* = a} with the Jordan product (xy + yx)/2."""
    J = jordan_from_assoc(A)
    return subalgebra(J, eigenspace(A, 1), f"Herm({A.name})")


def _rect_labels(p: int, q: int):
    """Matrix units E_rc of the p x q matrices, row-major."""
    return [f"E{r + 1}{c + 1}" for r in range(p) for c in range(q)]


def _matprod(K, a, b, n, m, k):
    """(n x m) . (m x k) for row-major payload tuples."""
    return tuple(
        _dotk(K, (a[i * m + t] for t in range(m)), (b[t * k + j] for t in range(m))) for i in range(n) for j in range(k)
    )


def _dotk(K, u, v):
    s = K.zero
    for x, y in zip(u, v):
        s = K.add(s, K.mul(x, y))
    return s


def _transpose(a, n, m):
    return tuple(a[i * m + j] for j in range(m) for i in range(n))


def rect_triple(p: int, q: int, K: Ring) -> TripleSystem:
    """T(x, y, z) = x y^t z + z y^t x on p x q matrices."""
    d = p * q
    E = [unit_vec(K, d, i) for i in range(d)]

    def value(a, b, c):
        x, y, z = E[a], E[b], E[c]
        yt = _transpose(y, p, q)
        t1 = _matprod(K, _matprod(K, x, yt, p, q, p), z, p, p, q)
        t2 = _matprod(K, _matprod(K, z, yt, p, q, p), x, p, p, q)
        return vadd(K, t1, t2)

    return TripleSystem(K, d, Tensor.from_function(K, (d, d, d), d, value), _rect_labels(p, q), f"M({p},{q};{K.spec})")


def rect_pair(p: int, q: int, K: Ring) -> JordanPair:
    """V+ = p x q, V- = q x p matrices with T(x, y, z) = xyz + zyx on both sides."""
    dp = dm = p * q
    Ep = [unit_vec(K, dp, i) for i in range(dp)]
    Em = [unit_vec(K, dm, i) for i in range(dm)]

    def tp(a, b, c):
        x, y, z = Ep[a], Em[b], Ep[c]
        return vadd(
            K,
            _matprod(K, _matprod(K, x, y, p, q, p), z, p, p, q),
            _matprod(K, _matprod(K, z, y, p, q, p), x, p, p, q),
        )

    def tm(a, b, c):
        x, y, z = Em[a], Ep[b], Em[c]
        return vadd(
            K,
            _matprod(K, _matprod(K, x, y, q, p, q), z, q, q, p),
            _matprod(K, _matprod(K, z, y, q, p, q), x, q, q, p),
        )

    return JordanPair(
        K,
        dp,
        dm,
        Tensor.from_function(K, (dp, dm, dp), dp, tp),
        Tensor.from_function(K, (dm, dp, dm), dm, tm),
        _rect_labels(p, q),
        _rect_labels(q, p),
        f"({p}x{q}, {q}x{p}) over {K.spec}",
    )


def assoc_triple(A: FiniteAlgebra) -> TripleSystem:
    """T(x, y, z) = xyz + zyx."""
    K, p = A.K, A.product
    t = p.table

    def value(a, b, c):
        return vadd(K, p(t[(a, b)], c), p(t[(c, b)], a))

    return TripleSystem(K, A.dim, Tensor.from_function(K, (A.dim,) * 3, A.dim, value), A.labels, f"T({A.name})")


def jts_from_jordan(J: FiniteAlgebra, factor=None) -> TripleSystem:
    """T(x, y, z) = factor * (x.(y.z) - y.(x.z) + (x.y).z), factor 1 by default.

    With the default, a special Jordan algebra with x.y = (xy + yx)/2 gives
    T = (xyz + zyx)/2; ``factor=1/2`` gives (xyz + zyx)/4.
    """
    K, p = J.K, J.product
    if K.characteristic == 2:
        raise CharacteristicTwoError(f"triple product needs 1/2 in {K.spec}")
    f = K.one if factor is None else K.coerce(factor)
    t = p.table

    def value(a, b, c):
        v = vadd(K, vsub(K, p(a, t[(b, c)]), p(b, t[(a, c)])), p(t[(a, b)], c))
        return v if f == K.one else vscale(K, f, v)

    return TripleSystem(K, J.dim, Tensor.from_function(K, (J.dim,) * 3, J.dim, value), J.labels, f"T({J.name})")


def jts_to_pair(T: TripleSystem) -> JordanPair:
    return JordanPair(T.K, T.dim, T.dim, T.triple, T.triple, T.labels, T.labels, f"({T.name}, {T.name})")


# ---------------------------------------------------------------------------
# checkers


def _rng(seed):
    return random.Random(seed)


def check_jordan(J: FiniteAlgebra, samples: int = 500, seed: int = 0) -> Report:
    """Commutativity on basis pairs, and x.(x^2.y) = x^2.(x.y) on its full
    linearization over all basis tuples, plus ``samples`` random pairs (every
    pair when the algebra has at most 64 elements)."""
    K, d, p = J.K, J.dim, J.product
    t = p.table
    rep = Report(J.name)
    j1 = _Tally("commutativity", J.labels)
    for i in range(d):
        for j in range(i, d):
            j1.record(t[(i, j)] == t[(j, i)], (i, j))
    rep.results.append(j1.result())

    # linearization: sum over cyclic (a, b, c) of a.((b.c).y) - (b.c).(a.y)
    lin = _Tally("Jordan identity linearized", J.labels)
    for a, b, c in itertools.combinations_with_replacement(range(d), 3):
        bc, ca, ab = t[(b, c)], t[(c, a)], t[(a, b)]
        for y in range(d):
            lhs = vadd(K, vadd(K, p(a, p(bc, y)), p(b, p(ca, y))), p(c, p(ab, y)))
            rhs = vadd(K, vadd(K, p(bc, t[(a, y)]), p(ca, t[(b, y)])), p(ab, t[(c, y)]))
            lin.record(lhs == rhs, (a, b, c, y))
    detail = ""
    if K.characteristic in (2, 3):
        detail = "(linearization is not a complete certificate in characteristic 2 or 3)"
    rep.results.append(lin.result(detail))

    direct = _Tally("Jordan identity direct", J.labels)
    rng = _rng(seed)

    def jordan_ok(x, y):
        x2 = p(x, x)
        return p(x, p(x2, y)) == p(x2, p(x, y))

    pairs = []
    if K.finite and K.size() ** d <= 64:
        vecs = list(itertools.product(K.element_list, repeat=d))
        pairs = [(x, y) for x in vecs for y in vecs]
    for _ in range(samples):
        pairs.append((random_vec(K, d, rng), random_vec(K, d, rng)))
    for x, y in pairs:
        ok = jordan_ok(x, y)
        direct.checked += 1
        if not ok:
            direct.failures += 1
            if direct.witness is None:
                direct.witness = (_label_vector(K, x, J.labels), _label_vector(K, y, J.labels))
    rep.results.append(direct.result())
    return rep


def _five_term(Tsig, Tother, a, b, x, y, z, K):
    """T(a,b,T(x,y,z)) - T(T(a,b,x),y,z) + T(x,T'(b,a,y),z) - T(x,y,T(a,b,z))."""
    lhs = Tsig(a, b, Tsig(x, y, z))
    r1 = Tsig(Tsig(a, b, x), y, z)
    r2 = Tsig(x, Tother(b, a, y), z)
    r3 = Tsig(x, y, Tsig(a, b, z))
    return lhs == vadd(K, vsub(K, r1, r2), r3)


def _five_tuples(dims, budget, rng, samples=2000):
    """Basis 5-tuples (a, b, x, y, z), exhaustive within budget, else three basis slots + random fill."""
    total = 1
    for n in dims:
        total *= n
    if total <= budget:
        yield from itertools.product(*(range(n) for n in dims))
        return
    for _ in range(samples):
        yield tuple(rng.randrange(n) for n in dims)


def _jp_side(name, Ts, To, ds, do, labels_s, labels_o, K, budget, seed):
    rng = _rng(seed)
    t1 = _Tally(f"{name}outer symmetry")
    for a, b, c in itertools.product(range(ds), range(do), range(ds)):
        if a <= c:
            t1.record(Ts.table[(a, b, c)] == Ts.table[(c, b, a)], (labels_s[a], labels_o[b], labels_s[c]))
    t2 = _Tally(f"{name}five-term identity")
    exhaustive = ds ** 3 * do ** 2 <= budget
    for a, b, x, y, z in _five_tuples((ds, do, ds, do, ds), budget, rng):
        if exhaustive:
            args = (a, b, x, y, z)
        else:
            # three basis slots (a, b, y) and random fill for x, z
            args = (a, b, random_vec(K, ds, rng), y, random_vec(K, ds, rng))
        ok = _five_term(Ts, To, *args, K)
        t2.record(ok, (labels_s[a], labels_o[b]) + ((labels_s[x], labels_o[y], labels_s[z]) if exhaustive else (labels_o[y],)))
    detail = "" if exhaustive else "(sampled)"
    return t1.result(), t2.result(detail)


def check_jts(T: TripleSystem, budget: int = BUDGET, seed: int = 0) -> Report:
    """Outer symmetry T(x,y,z) = T(z,y,x) and the five-term identity
    T(a,b,T(x,y,z)) = T(T(a,b,x),y,z) - T(x,T(b,a,y),z) + T(x,y,T(a,b,z))."""
    r1, r2 = _jp_side("", T.triple, T.triple, T.dim, T.dim, T.labels, T.labels, T.K, budget, seed)
    return Report(T.name, [r1, r2])


def check_jordan_pair(P: JordanPair, budget: int = BUDGET, seed: int = 0) -> Report:
    """Outer symmetry and the five-term identity on both sides; the middle term uses the opposite map."""
    rep = Report(P.name)
    rep.results.extend(
        _jp_side("V+ ", P.tplus, P.tminus, P.dplus, P.dminus, P.labels_plus, P.labels_minus, P.K, budget, seed)
    )
    rep.results.extend(
        _jp_side("V- ", P.tminus, P.tplus, P.dminus, P.dplus, P.labels_minus, P.labels_plus, P.K, budget, seed)
    )
    return rep


__all__ = [
    "AlgebraError",
    "AxiomResult",
    "BUDGET",
    "FiniteAlgebra",
    "JordanPair",
    "Report",
    "Subspace",
    "Tensor",
    "TripleSystem",
    "algebra_from_ring",
    "assoc_triple",
    "check_associative",
    "check_jordan",
    "check_jordan_pair",
    "check_jts",
    "commutator",
    "eigenspace",
    "hermitian_part",
    "jordan_from_assoc",
    "jts_from_jordan",
    "jts_to_pair",
    "kernel_subspace",
    "matrix_algebra",
    "rect_pair",
    "rect_triple",
    "restrict_tensor",
    "subalgebra",
    "symmetrized",
]
