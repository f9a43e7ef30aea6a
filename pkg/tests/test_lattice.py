from math import gcd
import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import fraction_det, random_matrix, seeded
from wogtoric.errors import InputError
from wogtoric.lattice import (ToricMatrix, canonical, conformal_leq, det, emit_matrix, kernel_basis,
                              minus, null_dim, parse_binomial, parse_matrix, plus, rank,
                              render_binomial, restrict)

TRIANGLE = ToricMatrix([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
ALT4 = ToricMatrix.from_columns([(1, 3, 0, 0), (0, 3, 1, 0), (0, 0, 1, 5), (1, 0, 0, 5)])
TWO_TRIANGLES = ToricMatrix.from_columns([
    (1, 1, 0, 0, 0), (0, 1, 1, 0, 0), (1, 0, 1, 0, 0),
    (1, 0, 0, 1, 0), (0, 0, 0, 1, 1), (1, 0, 0, 0, 1),
])

moves = st.lists(st.integers(-6, 6), min_size=1, max_size=7).map(tuple)


def pair_of_moves():
    return st.integers(1, 6).flatmap(
        lambda m: st.tuples(*[st.lists(st.integers(-4, 4), min_size=m, max_size=m).map(tuple)] * 2))


# ---------------------------------------------------------------------------
# matrix type


def test_matrix_rejects_zero_column():
    with pytest.raises(InputError):
        ToricMatrix([[1, 0], [2, 0]])


def test_matrix_rejects_negative_and_ragged():
    with pytest.raises(InputError):
        ToricMatrix([[1, -1]])
    with pytest.raises(InputError):
        ToricMatrix([[1, 1], [1]])


def test_degree_and_kernel_membership():
    assert ALT4.degree((1, 0, 1, 0)) == (1, 3, 1, 5)
    assert ALT4.in_kernel((1, -1, 1, -1))
    assert not ALT4.in_kernel((1, 0, 0, 0))


# ---------------------------------------------------------------------------
# kernel basis


def test_kernel_single_row():
    assert kernel_basis(ToricMatrix([[1, 1]])) == [(1, -1)]


def test_kernel_unweighted_triangle_is_trivial():
    assert kernel_basis(TRIANGLE) == []


def test_kernel_alternating_four_cycle():
    assert kernel_basis(ALT4) == [(1, -1, 1, -1)]


def _saturated(A, basis):
    """A full-rank integer basis spans the whole lattice iff its maximal minors have gcd 1."""
    k = len(basis)
    if k != null_dim(A):
        return False
    if k == 0:
        return True
    g = 0
    for cols in itertools.combinations(range(A.m), k):
        g = gcd(g, fraction_det([[b[c] for c in cols] for b in basis]))
    return g == 1


def test_kernel_basis_is_saturated_on_random_matrices():
    rng = seeded(11)
    for _ in range(200):
        A = random_matrix(rng)
        basis = kernel_basis(A)
        for v in basis:
            assert A.in_kernel(v)
        assert _saturated(A, basis), A


def test_kernel_basis_spans_box_vectors():
    # every kernel vector in the box [-5, 5]^m is an integer combination of the basis
    rng = seeded(12)
    checked = 0
    for _ in range(60):
        A = random_matrix(rng, max_rows=3, max_cols=4)
        basis = kernel_basis(A)
        if not basis:
            continue
        B = sympy.Matrix(basis).T
        for v in itertools.product(range(-5, 6), repeat=A.m):
            if any(v) and A.in_kernel(v):
                sol, free = B.gauss_jordan_solve(sympy.Matrix(v))
                assert free.shape[0] == 0
                assert all(x.is_integer for x in sol), (A, v)
                assert B * sol == sympy.Matrix(v)
                checked += 1
    assert checked > 50


# ---------------------------------------------------------------------------
# rank, null_dim, det


def test_null_dim_two_triangles_sharing_vertex():
    assert null_dim(TWO_TRIANGLES) == 1


def test_null_dim_tree_is_zero():
    path = ToricMatrix.from_columns([(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)])
    assert null_dim(path) == 0


def test_rank_of_diagonal():
    assert rank(ToricMatrix([[2, 0], [0, 3]])) == 2
    assert rank(ToricMatrix([[2, 0, 0, 1], [0, 3, 0, 0], [0, 0, 5, 0]])) == 3
    assert rank(ToricMatrix([[1, 0], [0, 4], [0, 0]])) == 2


def test_rank_matches_sympy():
    rng = seeded(13)
    for _ in range(100):
        A = random_matrix(rng)
        assert rank(A) == sympy.Matrix(A.rows).rank()


def test_det_examples():
    assert det(ToricMatrix([[7]])) == 7
    assert det(ALT4) == 0
    assert abs(det(TRIANGLE)) == 2


def test_det_needs_square():
    with pytest.raises(InputError):
        det(ToricMatrix([[1, 2]]))


def test_det_matches_fraction_elimination():
    rng = seeded(14)
    for _ in range(100):
        k = rng.randint(1, 5)
        M = [[rng.randint(0, 9) for _ in range(k)] for _ in range(k)]
        for j in range(k):
            M[j][j] += 1
        assert det(ToricMatrix(M)) == fraction_det(M)


# ---------------------------------------------------------------------------
# conformal order and restriction


def test_conformal_leq_examples():
    assert conformal_leq((0, 0, 0), (2, -1, 1))
    assert conformal_leq((1, -1, 0), (2, -1, 1))
    assert not conformal_leq((1, -1), (-1, 1))


def test_conformal_leq_length_mismatch():
    with pytest.raises(InputError):
        conformal_leq((1,), (1, 0))


@given(moves)
def test_conformal_leq_reflexive(v):
    assert conformal_leq(v, v)


@given(pair_of_moves())
def test_conformal_leq_antisymmetric(uv):
    u, v = uv
    if conformal_leq(u, v) and conformal_leq(v, u):
        assert u == v


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(lambda m: st.tuples(
    *[st.lists(st.integers(-3, 3), min_size=m, max_size=m).map(tuple)] * 3)))
def test_conformal_leq_transitive(uvw):
    u, v, w = uvw
    if conformal_leq(u, v) and conformal_leq(v, w):
        assert conformal_leq(u, w)


def test_restrict_examples():
    v = (1, -1, 1, -1)
    assert restrict(v, []) == (0, 0, 0, 0)
    assert restrict(v, range(4)) == v
    assert restrict(v, {0, 1}) == (1, -1, 0, 0)


def test_restrict_rejects_bad_index():
    with pytest.raises(InputError):
        restrict((1, 2), [2])


@given(moves, st.data())
def test_restrict_is_conformally_below(v, data):
    S = data.draw(st.sets(st.integers(0, len(v) - 1)))
    assert conformal_leq(restrict(v, S), v)


@given(moves)
def test_sign_identities(v):
    neg = tuple(-x for x in v)
    assert plus(neg) == minus(v)
    assert minus(neg) == plus(v)
    assert tuple(a - b for a, b in zip(plus(v), minus(v))) == v


@given(moves)
def test_canonical_sign(v):
    c = canonical(v)
    assert c == canonical(tuple(-x for x in v))
    nz = [x for x in c if x]
    assert not nz or nz[0] > 0


# ---------------------------------------------------------------------------
# binomial text


def test_render_examples():
    assert render_binomial((1, -1, 1, -1)) == "e1*e3 - e2*e4"
    assert render_binomial((0, 0, 0)) == "0"
    assert render_binomial((1, 3, 0, -2)) == "e1*e2^3 - e4^2"


@given(moves)
def test_render_negation_swaps_sides(v):
    if not any(v):
        return
    lhs, rhs = render_binomial(v).split(" - ")
    assert render_binomial(tuple(-x for x in v)) == f"{rhs} - {lhs}"


@given(moves)
def test_render_parse_round_trip(v):
    names = [f"e{i + 1}" for i in range(len(v))]
    text = render_binomial(v, names)
    assert parse_binomial(text, names) == v
    assert render_binomial(parse_binomial(text, names), names) == text


def test_parse_binomial_rejects_garbage():
    with pytest.raises(InputError):
        parse_binomial("e1*e9 - e2", ["e1", "e2"])
    with pytest.raises(InputError):
        parse_binomial("e1", ["e1", "e2"])


# ---------------------------------------------------------------------------
# matrix text format


def test_matrix_text_round_trip():
    rng = seeded(15)
    for _ in range(30):
        A = random_matrix(rng)
        text = emit_matrix(A)
        assert parse_matrix(text) == A
        assert emit_matrix(parse_matrix(text)) == text


def test_matrix_text_comments_and_errors():
    assert parse_matrix("# a comment\nmatrix 1 2\n1 1  # row\n") == ToricMatrix([[1, 1]])
    for bad in ["", "matrix 1\n1", "matrix 2 2\n1 1\n", "matrix 1 2\n1 x\n", "mat 1 1\n1\n"]:
        with pytest.raises(InputError):
            parse_matrix(bad)
