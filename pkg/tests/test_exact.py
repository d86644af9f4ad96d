from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic_y3.exact import intmat
from cubic_y3.exact.cyclotomic import CUBE_ROOTS, OMEGA, Cyclotomic, field_value, to_json_value
from cubic_y3.exact import fieldlin

from oracles import determinantal_divisors_snf, eigen_sign_count, fraction_rank, int_det

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(rows, cols, elements=small_ints):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def random_unimodular(rng: random.Random, n: int, steps: int = 12):
    u = intmat.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        u = [list(r) for r in u]
        u[i] = [a + k * b for a, b in zip(u[i], u[j])]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], u[i]
    return u


# --- HNF ---------------------------------------------------------------------


def test_hnf_small_example():
    # hand reduction: (6,8) - 3(2,4) = (0,-4); then (2,4) + (0,-4) = (2,0)
    h, u = intmat.hnf([[2, 4], [6, 8]])
    assert h == [[2, 0], [0, 4]]
    assert intmat.matmul(u, [[2, 4], [6, 8]]) == h
    assert abs(intmat.det(u)) == 1


def test_hnf_rank_deficient_drops_to_zero_rows():
    h, u = intmat.hnf([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    nonzero = [r for r in h if any(r)]
    assert nonzero == [[1, 0, 1], [0, 1, 1]]
    assert intmat.matmul(u, [[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == h


@settings(max_examples=60, deadline=None)
@given(matrices(4, 5))
def test_hnf_is_row_equivalent_and_canonical(m):
    h, u = intmat.hnf(m)
    assert intmat.is_unimodular(u)
    assert intmat.matmul(u, m) == h
    # pivots positive, entries above pivots reduced
    col = -1
    for r, row in enumerate(h):
        if not any(row):
            assert all(not any(x) for x in h[r:])
            break
        c = next(k for k, x in enumerate(row) if x)
        assert c > col and row[c] > 0
        for above in h[:r]:
            assert 0 <= above[c] < row[c]
        col = c


# --- SNF and determinants -----------------------------------------------------


def test_snf_examples():
    assert intmat.snf([[2, 4], [6, 8]]) == [2, 4]
    assert intmat.snf([[2, 0], [0, 3]]) == [1, 6]
    assert intmat.snf([[0, 0], [0, 0]]) == []
    assert intmat.snf([[2, 1], [1, 2]]) == [1, 3]


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_snf_matches_determinantal_divisors(m):
    assert intmat.snf(m) == determinantal_divisors_snf(m)


@settings(max_examples=60, deadline=None)
@given(matrices(5, 5, st.integers(-20, 20)))
def test_det_and_rank_against_oracles(m):
    assert intmat.det(m) == int_det(m)
    assert intmat.rank(m) == fraction_rank(m)


def test_unimodular_invariance_100_random_6x6():
    rng = random.Random(2024)
    for _ in range(100):
        m = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(6)]
        u = random_unimodular(rng, 6)
        w = random_unimodular(rng, 6)
        um = intmat.matmul(u, m)
        assert intmat.hnf(um)[0] == intmat.hnf(m)[0]
        assert intmat.snf(intmat.matmul(um, w)) == intmat.snf(m)


# --- kernels and lattices ------------------------------------------------------


def test_kernel_saturated_example():
    k = intmat.kernel_saturated([[2, 4, 6]])
    assert len(k) == 2
    for v in k:
        assert 2 * v[0] + 4 * v[1] + 6 * v[2] == 0
    # saturated: the kernel basis spans a primitive sublattice
    assert intmat.snf(k) == [1, 1]


@settings(max_examples=50, deadline=None)
@given(matrices(3, 5))
def test_kernel_saturated_properties(m):
    k = intmat.kernel_saturated(m)
    assert len(k) == 5 - fraction_rank(m)
    for v in k:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if k:
        assert intmat.snf(k) == [1] * len(k)


def test_lattice_basis_and_coordinates():
    basis = intmat.lattice_basis([[2, 0, 0], [0, 3, 0], [2, 3, 0]], 3)
    assert len(basis) == 2
    assert intmat.echelon_coordinates(basis, [4, 9, 0]) is not None
    assert intmat.echelon_coordinates(basis, [1, 0, 0]) is None


# --- symmetric forms ------------------------------------------------------------


def test_signature_hyperbolic_and_a2():
    assert intmat.signature([[0, 1], [1, 0]]) == (1, 1)
    assert intmat.signature([[2, 1], [1, 2]]) == (2, 0)
    assert intmat.signature([[-2, -1], [-1, -2]]) == (0, 2)


@settings(max_examples=60, deadline=None)
@given(matrices(5, 5, st.integers(-5, 5)))
def test_signature_against_sylvester_oracle(m):
    g = [[m[i][j] + m[j][i] for j in range(5)] for i in range(5)]
    if intmat.det(g) == 0:
        return
    assert intmat.signature(g) == eigen_sign_count(g)


def test_sym_invariants_with_radical():
    g = [[2, 1, 3], [1, 2, 3], [3, 3, 6]]  # third row is the sum of the first two
    inv = intmat.sym_invariants(g)
    assert inv.rank == 2
    assert inv.determinant == 3
    assert inv.signature == (2, 0)
    assert list(inv.invariant_factors) == [1, 3]


def test_sym_invariants_rejects_asymmetric():
    with pytest.raises(ValueError):
        intmat.sym_invariants([[1, 2], [3, 4]])


# --- rational and cyclotomic linear algebra ---------------------------------------


def test_fieldlin_int_inputs_stay_exact():
    assert fieldlin.det([[1, 2], [3, 4]]) == -2
    assert isinstance(fieldlin.solve([[2, 0], [0, 4]], [1, 1])[1], Fraction)
    assert fieldlin.solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]


def test_fieldlin_over_eisenstein_field():
    w = OMEGA
    m = [[Cyclotomic(1), w], [w, w * w]]  # second row = w * first row
    assert fieldlin.rank(m) == 1
    ns = fieldlin.nullspace(m)
    assert len(ns) == 1
    assert all(not (a * ns[0][0] + b * ns[0][1]) for a, b in m)


rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 7))
cyc = st.builds(Cyclotomic, rationals, rationals)


@settings(max_examples=100, deadline=None)
@given(cyc, cyc, cyc)
def test_cyclotomic_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if a:
        assert a * a.inv() == 1
        assert (b / a) * a == b
    assert (a * b).norm() == a.norm() * b.norm()
    assert a.conj().conj() == a


def test_cube_roots():
    w = OMEGA
    assert w**3 == 1
    assert 1 + w + w * w == 0
    assert len(set(CUBE_ROOTS)) == 3
    assert all(r**3 == 1 for r in CUBE_ROOTS)


@settings(max_examples=50, deadline=None)
@given(cyc)
def test_cyclotomic_json_round_trip(a):
    assert field_value(to_json_value(a)) == a
