import itertools
import random
from fractions import Fraction

import pytest

from projalg.jordan import (
    BUDGET,
    AlgebraError,
    FiniteAlgebra,
    Tensor,
    TripleSystem,
    algebra_from_ring,
    assoc_triple,
    check_associative,
    check_jordan,
    check_jordan_pair,
    check_jts,
    commutator,
    hermitian_part,
    jordan_from_assoc,
    jts_from_jordan,
    jts_to_pair,
    matrix_algebra,
    rect_pair,
    rect_triple,
    symmetrized,
)
from projalg.rings import CharacteristicTwoError, PrimeField, Rationals
from projalg.ringspec import parse_ring

Q = Rationals()
F5 = PrimeField(5)


def herm2_qi():
    return hermitian_part(algebra_from_ring(parse_ring("Mat(2,Qi)", "conjtranspose")))


# -- plain 2x2 matrix arithmetic, independent of the package ----------------


def _mm(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _unit(n):
    m = [[Fraction(0)] * 2 for _ in range(2)]
    m[n // 2][n % 2] = Fraction(1)
    return m


def _flat(m):
    return tuple(m[i][j] for i in range(2) for j in range(2))


def test_matrix_algebra_structure_constants():
    A = matrix_algebra(2, Q)
    for a, b in itertools.product(range(4), repeat=2):
        assert A.product.table[(a, b)] == _flat(_mm(_unit(a), _unit(b)))


def test_special_triple_is_half_of_xyz_plus_zyx():
    J = jordan_from_assoc(matrix_algebra(2, Q))
    T = jts_from_jordan(J)
    for a, b, c in itertools.product(range(4), repeat=3):
        x, y, z = _unit(a), _unit(b), _unit(c)
        xyz, zyx = _mm(_mm(x, y), z), _mm(_mm(z, y), x)
        want = tuple(Fraction(u + v, 2) for u, v in zip(_flat(xyz), _flat(zyx)))
        assert T.triple.table[(a, b, c)] == want
    # as a whole tensor: half the associative triple
    assert T.triple == assoc_triple(matrix_algebra(2, Q)).triple.scaled(Fraction(1, 2))
    assert jts_from_jordan(J, Fraction(1, 2)).triple == T.triple.scaled(Fraction(1, 2))


# -- the functor chain ------------------------------------------------------


@pytest.mark.parametrize(
    "spec",
    [("Mat(2,Q)", "transpose"), ("Mat(2,F5)", "transpose"), ("Func(3,F5)", None), ("Func(3,Q)", None), ("Mat(2,Qi)", "conjtranspose")],
    ids=str,
)
def test_associative_to_jordan_to_triple(spec):
    A = algebra_from_ring(parse_ring(*spec))
    assert check_associative(A).passed
    J = jordan_from_assoc(A)
    assert check_jordan(J).passed
    T = jts_from_jordan(J)
    assert check_jts(T).passed
    assert check_jordan_pair(jts_to_pair(T)).passed


def test_herm2_qi_is_jordan():
    H = herm2_qi()
    assert H.dim == 4
    rep = check_jordan(H)
    assert rep.passed, str(rep)
    assert check_jts(jts_from_jordan(H)).passed


def test_hermitian_part_is_not_associative():
    assert not check_associative(herm2_qi()).passed


@pytest.mark.parametrize("p,q", [(1, 2), (2, 2), (2, 1), (1, 3)])
@pytest.mark.parametrize("K", [Q, F5], ids=["Q", "F5"])
def test_rect_triples(p, q, K):
    rep = check_jts(rect_triple(p, q, K))
    assert rep.passed, str(rep)
    assert "sampled" not in rep["five-term identity"].detail
    assert rep["five-term identity"].checked == (p * q) ** 5


def test_rect_pair():
    rep = check_jordan_pair(rect_pair(2, 2, PrimeField(3)))
    assert rep.passed, str(rep)
    assert len(rep.results) == 4


def test_rect_pair_non_square():
    assert check_jordan_pair(rect_pair(1, 3, Q)).passed


def test_sampled_five_term_identity():
    rep = check_jts(rect_triple(2, 2, Q), budget=100)
    assert rep.passed
    assert rep["five-term identity"].detail == "(sampled)"


def test_commutator_is_antisymmetric():
    A = matrix_algebra(2, Q)
    br = commutator(A)
    for a, b in itertools.product(range(4), repeat=2):
        assert br.table[(a, b)] == tuple(-c for c in br.table[(b, a)])


def test_characteristic_two():
    A = matrix_algebra(2, PrimeField(2))
    with pytest.raises(CharacteristicTwoError):
        symmetrized(A)
    with pytest.raises(CharacteristicTwoError):
        jts_from_jordan(A)


def test_non_associative_input_rejected():
    A = matrix_algebra(2, Q)
    bad = A.with_product(A.product.mutated((0, 0), 1, 1))
    with pytest.raises(AlgebraError):
        jordan_from_assoc(bad)


def test_non_field_base_rejected():
    with pytest.raises(AlgebraError):
        FiniteAlgebra(parse_ring("Zmod(4)"), 1, Tensor.zero(parse_ring("Zmod(4)"), (1, 1), 1))


# -- tensors ----------------------------------------------------------------


def test_tensor_is_multilinear():
    A = matrix_algebra(2, Q)
    rng = random.Random(0)
    p = A.product
    for _ in range(50):
        x = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4))
        y = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
        mx = [[x[0], x[1]], [x[2], x[3]]]
        my = [[y[0], y[1]], [y[2], y[3]]]
        assert p(x, y) == _flat(_mm(mx, my))


def test_tensor_nested_round_trip():
    T = rect_triple(2, 2, F5).triple
    assert Tensor.from_nested(F5, T.shape, T.out_dim, T.nested()) == T


# -- soundness: single-entry mutations are detected -------------------------


MUTATIONS = 20


def _mutations(t, seed):
    rng = random.Random(seed)
    return [t.random_mutation(rng) for _ in range(MUTATIONS)]


def test_mutations_break_associativity():
    A = matrix_algebra(2, Q)
    assert check_associative(A).passed
    assert all(not check_associative(A.with_product(m)).passed for m in _mutations(A.product, 1))


def test_mutations_break_jordan():
    J = jordan_from_assoc(matrix_algebra(2, Q))
    assert check_jordan(J).passed
    assert all(not check_jordan(J.with_product(m)).passed for m in _mutations(J.product, 2))


def test_mutations_break_jts():
    T = rect_triple(2, 2, Q)
    assert check_jts(T).passed
    assert all(not check_jts(TripleSystem(Q, 4, m, T.labels)).passed for m in _mutations(T.triple, 3))


def test_mutations_break_jordan_pair():
    P = rect_pair(2, 2, PrimeField(3))
    bad = []
    for n, m in enumerate(_mutations(P.tplus, 4)):
        if n % 2:
            bad.append(type(P)(P.K, P.dplus, P.dminus, m, P.tminus, P.labels_plus, P.labels_minus))
        else:
            m2 = P.tminus.random_mutation(random.Random(n))
            bad.append(type(P)(P.K, P.dplus, P.dminus, P.tplus, m2, P.labels_plus, P.labels_minus))
    assert all(not check_jordan_pair(b).passed for b in bad)


def test_failure_reports_a_witness():
    A = matrix_algebra(2, Q)
    rep = check_associative(A.with_product(A.product.mutated((0, 1), 0, 1)))
    r = rep["associativity"]
    assert r.failures > 0
    assert all(w in A.labels for w in r.witness)
    assert "FAIL" in str(rep)


def test_budget_constant():
    assert BUDGET == 10 ** 6
