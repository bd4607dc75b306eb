import itertools
import random
from fractions import Fraction

import pytest

import oracles
from projalg import linalg
from projalg.jordan import (
    AlgebraError,
    FiniteAlgebra,
    algebra_from_ring,
    eigenspace,
    matrix_algebra,
    rect_triple,
    restrict_tensor,
)
from projalg.jordan_lie import (
    LIE_JORDAN,
    QuantizationError,
    check_jordan_lie,
    check_lie_jordan,
    classical,
    detect_coupling,
    hermitian_realization,
    jordan_lie_from_assoc,
    jordan_lie_from_hermitian,
    jordan_product_obstruction,
    lie_jordan_from_involution,
    quantize,
    split_decomposition,
    to_lie_jordan,
    with_detected_coupling,
)
from projalg.rings import CharacteristicTwoError, PrimeField, Rationals
from projalg.ringspec import parse_ring

Q = Rationals()
F = Fraction


# -- fixtures built through the package -------------------------------------


def sym_mat2():
    return jordan_lie_from_assoc(matrix_algebra(2, Q))


def herm2(inv="conjtranspose"):
    return jordan_lie_from_hermitian(algebra_from_ring(parse_ring("Mat(2,Qi)", inv)))


def func3(K=Q):
    A = algebra_from_ring(parse_ring(f"Func(3,{K.spec})"))
    return classical(A.with_product(A.product, flavor="jordan"))


def o3():
    return lie_jordan_from_involution(matrix_algebra(3, Q))


def o3_rect():
    # o(3) with T(x, y, z) = x y^t z + z y^t x from the rectangular 3 x 3 triple
    V = o3()
    sub = eigenspace(matrix_algebra(3, Q), -1)
    T = restrict_tensor(rect_triple(3, 3, Q).triple, sub)
    return with_detected_coupling(V.replace(second=T, coupling=None))


# -- independent per-triple coupling from plain matrices --------------------


def _jl_pairs(basis, br, prod):
    for x, y, z in itertools.product(basis, repeat=3):
        lhs = oracles.madd(prod(prod(x, y), z), oracles.mscale(-1, prod(x, prod(y, z))))
        rhs = oracles.mscale(-1, oracles.madd(br(br(x, y), z), oracles.mscale(-1, br(x, br(y, z)))))
        yield lhs, rhs


def _lj_pairs(basis, br, T):
    for x, y, z in itertools.product(basis, repeat=3):
        yield oracles.madd(T(x, y, z), oracles.mscale(-1, T(y, x, z))), br(br(x, y), z)


def _comm(x, y):
    return oracles.madd(oracles.mm(x, y), oracles.mscale(-1, oracles.mm(y, x)))


def _jordan(x, y):
    return oracles.mscale(F(1, 2), oracles.madd(oracles.mm(x, y), oracles.mm(y, x)))


def _xyz_zyx(x, y, z):
    return oracles.madd(oracles.mm(oracles.mm(x, y), z), oracles.mm(oracles.mm(z, y), x))


def _transpose(m):
    return [list(r) for r in zip(*m)]


def oracle_sym_mat2():
    basis = [oracles.unit_matrix(2, i, j) for i in range(2) for j in range(2)]
    return oracles.proportionality(_jl_pairs(basis, _comm, _jordan))


def oracle_herm2():
    z = [[0, 0], [0, 0]]
    e11 = oracles.complex_block([[1, 0], [0, 0]], z)
    e22 = oracles.complex_block([[0, 0], [0, 1]], z)
    s = oracles.complex_block([[0, 1], [1, 0]], z)
    a = oracles.complex_block(z, [[0, 1], [-1, 0]])
    i = oracles.complex_block(z, [[1, 0], [0, 1]])
    basis = [[[F(c) for c in row] for row in m] for m in (e11, s, a, e22)]
    return oracles.proportionality(_jl_pairs(basis, lambda x, y: oracles.mm(i, _comm(x, y)), _jordan))


def oracle_func3():
    basis = [[[F(int(r == c == k)) for c in range(3)] for r in range(3)] for k in range(3)]
    zero = lambda x, y: oracles.mscale(0, x)  # noqa: E731
    return oracles.proportionality(_jl_pairs(basis, zero, oracles.mm))


def _o3_basis():
    return [oracles.madd(oracles.unit_matrix(3, i, j), oracles.mscale(-1, oracles.unit_matrix(3, j, i))) for i, j in ((0, 1), (0, 2), (1, 2))]


def oracle_o3():
    return oracles.proportionality(_lj_pairs(_o3_basis(), _comm, _xyz_zyx))


def oracle_o3_rect():
    def T(x, y, z):
        yt = _transpose(y)
        return oracles.madd(oracles.mm(oracles.mm(x, yt), z), oracles.mm(oracles.mm(z, yt), x))

    return oracles.proportionality(_lj_pairs(_o3_basis(), _comm, T))


@pytest.mark.parametrize(
    "build,oracle,expected",
    [
        (sym_mat2, oracle_sym_mat2, F(1, 4)),
        (herm2, oracle_herm2, F(-1, 4)),
        (o3, oracle_o3, F(1)),
        (o3_rect, oracle_o3_rect, F(-1)),
    ],
    ids=["Sym(Mat(2,Q))", "Herm(2,Qi)", "o(3) xyz+zyx", "o(3) rectangular"],
)
def test_detected_coupling_matches_oracle(build, oracle, expected):
    status, value = oracle()
    assert (status, value) == ("constant", expected)
    c = detect_coupling(build())
    assert c.status == "constant"
    assert c.value == expected


def test_commutative_zero_bracket_is_indeterminate():
    assert oracle_func3() == ("indeterminate", None)
    for V in (func3(), func3(PrimeField(5)), classical(algebra_from_ring(parse_ring("Fq(3,2)")))):
        c = detect_coupling(V)
        assert c.indeterminate
        assert c.value == V.K.zero
        assert check_jordan_lie(V).passed


def test_zero_bracket_on_a_non_associative_jordan_algebra_is_inconsistent():
    c = detect_coupling(classical(herm2().jordan))
    assert c.status == "inconsistent"


def test_herm2_with_split_involution():
    V = herm2("sign(1,1)")
    assert detect_coupling(V).value == F(-1, 4)


# -- axiom checkers ---------------------------------------------------------


@pytest.mark.parametrize("build", [sym_mat2, herm2, func3], ids=["Sym(Mat(2,Q))", "Herm(2,Qi)", "Func(3,Q)"])
def test_jordan_lie_axioms(build):
    rep = check_jordan_lie(build())
    assert rep.passed, str(rep)


def test_wrong_coupling_fails():
    V = sym_mat2()
    assert not check_jordan_lie(V, C=F(1, 2)).passed
    assert check_jordan_lie(V, C=F(1, 4)).passed


def test_lie_jordan_o3():
    V = o3()
    assert V.dim == 3 and V.flavor == LIE_JORDAN
    rep = check_lie_jordan(V)
    assert rep.passed, str(rep)
    assert rep["coupling"].detail == "C=1"
    assert check_lie_jordan(o3_rect()).passed


def test_o3_triple_does_not_come_from_a_jordan_product():
    cert = jordan_product_obstruction(o3())
    assert cert == {"rank": 6, "dim": 3, "obstructed": True}
    # a triple that does come from a Jordan product is not obstructed
    W = to_lie_jordan(sym_mat2())
    assert not jordan_product_obstruction(W)["obstructed"]


def test_jordan_lie_to_lie_jordan():
    W = to_lie_jordan(sym_mat2())
    assert W.flavor == LIE_JORDAN
    assert W.coupling.value == F(1, 2)
    assert check_lie_jordan(W).passed
    assert to_lie_jordan(sym_mat2(), F(1, 2)).coupling.value == F(1, 4)


# -- scaling covariance ------------------------------------------------------


@pytest.mark.parametrize("lam", [F(2), F(-3), F(1, 5)])
def test_coupling_scales(lam):
    V = sym_mat2()
    C = V.coupling.value
    assert detect_coupling(V.replace(bracket=V.bracket.scaled(lam))).value == C / lam ** 2
    assert detect_coupling(V.replace(second=V.second.scaled(lam))).value == C * lam ** 2
    W = o3()
    assert detect_coupling(W.replace(second=W.second.scaled(lam))).value == W.coupling.value * lam
    assert detect_coupling(W.replace(bracket=W.bracket.scaled(lam))).value == W.coupling.value / lam ** 2


# -- quantization -----------------------------------------------------------


def test_quantize_commutative():
    Qz = quantize(func3(), C=0)
    assert Qz.C == 0
    assert Qz.checks.passed
    assert Qz.checks["associativity"].checked == 6 ** 3


def test_quantize_symmetrized_matrices():
    Qz = quantize(sym_mat2())
    assert Qz.C == F(1, 4)
    assert Qz.checks.passed
    split = split_decomposition(Qz)
    assert split.checks.passed, str(split.checks)
    R = Qz.R
    assert R.mul(split.u, split.v) == R.zero
    assert split.checks["direct sum"].detail == "dim uV=4 dim vV=4"


def test_quantize_hermitian():
    Qz = quantize(herm2())
    assert Qz.C == F(-1, 4)
    assert Qz.checks.passed
    images, rep = hermitian_realization(Qz)
    assert rep.passed, str(rep)
    assert len(images) == 8


def test_realization_structure_constants_match_mat2_qi():
    # after the basis alignment the quantized product is the product of M(2, Qi) over Q
    Qz = quantize(herm2())
    images, _ = hermitian_realization(Qz)
    M = algebra_from_ring(parse_ring("Mat(2,Qi)", "conjtranspose"))
    P = [list(r) for r in zip(*images)]  # columns are images
    Pinv = linalg.inverse(Q, P)
    for j, k in itertools.product(range(8), repeat=2):
        prod = M.mul(images[j], images[k])
        coords = tuple(sum((Pinv[r][c] * prod[c] for c in range(8)), F(0)) for r in range(8))
        assert coords == Qz.algebra.product.table[(j, k)]


def test_quantize_rejects_wrong_coupling():
    with pytest.raises(QuantizationError):
        quantize(sym_mat2(), C=F(1, 2))


def test_quantize_rejects_lie_jordan():
    with pytest.raises(AlgebraError):
        quantize(o3())


def test_i_action_squares_to_C():
    Qz = quantize(sym_mat2())
    v = tuple(F(n) for n in range(8))
    assert Qz.i_action(Qz.i_action(v)) == tuple(Qz.C * c for c in v)


def test_split_needs_a_square():
    with pytest.raises(AlgebraError):
        split_decomposition(quantize(herm2()))  # -1/4 is not a square in Q
    with pytest.raises(AlgebraError):
        split_decomposition(quantize(func3(), C=0))


def test_characteristic_two():
    A = algebra_from_ring(parse_ring("Mat(2,F2)", "transpose"))
    with pytest.raises(CharacteristicTwoError):
        lie_jordan_from_involution(A)
    with pytest.raises(CharacteristicTwoError):
        jordan_lie_from_assoc(A)


def test_missing_involution():
    A = matrix_algebra(2, Q)
    A = FiniteAlgebra(A.K, A.dim, A.product, A.labels)
    with pytest.raises(AlgebraError):
        lie_jordan_from_involution(A)
    with pytest.raises(AlgebraError):
        jordan_lie_from_hermitian(A)


# -- soundness: single-entry mutations are detected -------------------------


MUTATIONS = 20


def _mutants(t, seed):
    rng = random.Random(seed)
    return [t.random_mutation(rng) for _ in range(MUTATIONS)]


def test_mutations_break_jordan_lie_product():
    V = sym_mat2()
    assert all(not check_jordan_lie(V.replace(second=m)).passed for m in _mutants(V.second, 11))


def test_mutations_break_jordan_lie_bracket():
    V = sym_mat2()
    assert all(not check_jordan_lie(V.replace(bracket=m)).passed for m in _mutants(V.bracket, 12))


def test_mutations_break_lie_jordan_triple():
    V = o3()
    assert all(not check_lie_jordan(V.replace(second=m)).passed for m in _mutants(V.second, 13))


def test_mutations_break_lie_jordan_bracket():
    V = o3()
    assert all(not check_lie_jordan(V.replace(bracket=m)).passed for m in _mutants(V.bracket, 14))


def test_mutation_makes_coupling_inconsistent():
    V = sym_mat2()
    m = V.second.mutated((0, 0), 0, 1)
    c = detect_coupling(V.replace(second=m, coupling=None))
    assert c.status == "inconsistent"
    assert c.witness is not None
