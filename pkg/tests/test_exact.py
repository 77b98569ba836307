from fractions import Fraction
import random

import pytest

from akharmonic.config import RANDOM_SEED
from akharmonic.errors import InputError, PreconditionError
from akharmonic.exact import (
    I_UNIT, ONE, ZERO, MatrixQ, Subspace, as_scalar, conj, eigensplit_involution, i_power,
    intersect, inverse, is_zero, rank_kernel, scalar, to_text,
)


def test_scalar_text():
    assert to_text(scalar(Fraction(1, 2))) == "1/2"
    assert to_text(I_UNIT) == "i"
    assert to_text(scalar(1, -2)) == "1-2*i"
    assert to_text(scalar(0, Fraction(-1, 3))) == "-1/3*i"
    assert to_text(ZERO) == "0"


def test_scalar_arithmetic_is_exact():
    z = scalar(Fraction(1, 3), 2)
    assert z * inverse(z) == ONE
    assert conj(z) == scalar(Fraction(1, 3), -2)
    assert i_power(2) == -ONE
    assert i_power(-1) == -I_UNIT
    assert is_zero(I_UNIT * I_UNIT + ONE)


def test_floats_are_rejected():
    with pytest.raises(InputError, match="floats forbidden"):
        as_scalar(0.5)


def test_rank_and_kernel_of_gaussian_matrix():
    m = MatrixQ.from_rows([[ONE, I_UNIT], [I_UNIT, -ONE]])
    rank, space = rank_kernel(m)
    assert rank == 1
    assert space.dim == 1
    assert space.contains([ONE, I_UNIT])
    assert not space.contains([I_UNIT, ONE])
    assert space == Subspace.span(2, [[-I_UNIT, ONE]])


def test_intersection():
    a = Subspace.span(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.span(3, [[0, 1, 0], [0, 0, 1]])
    assert intersect(a, b) == Subspace.span(3, [[0, 1, 0]])
    assert a.sum(b) == Subspace.full(3)
    assert a.intersect(b).is_subspace_of(a)


def test_ambient_mismatch():
    with pytest.raises(InputError):
        intersect(Subspace.full(2), Subspace.full(3))


def test_eigensplit_of_swap():
    plus, minus = eigensplit_involution(MatrixQ.from_rows([[0, 1], [1, 0]]))
    assert plus == Subspace.span(2, [[1, 1]])
    assert minus == Subspace.span(2, [[1, -1]])


def test_eigensplit_needs_involution():
    with pytest.raises(PreconditionError):
        eigensplit_involution(MatrixQ.from_rows([[1, 1], [0, 1]]))


def test_inverse_and_solve():
    m = MatrixQ.from_rows([[2, 1], [1, 1]])
    assert m @ m.inverse() == MatrixQ.identity(2)
    assert m.solve([3, 2]) == (ONE, ONE)
    with pytest.raises(PreconditionError):
        MatrixQ.from_rows([[1, 2], [2, 4]]).inverse()
    assert MatrixQ.from_rows([[1, 0], [1, 0]]).solve([1, 2]) is None


def test_determinant_and_real_entries():
    m = MatrixQ.from_rows([[Fraction(1, 2), 3], [1, 4]])
    assert m.det() == scalar(-1)
    assert m.to_fractions() == [[Fraction(1, 2), Fraction(3)], [Fraction(1), Fraction(4)]]
    with pytest.raises(PreconditionError):
        MatrixQ.from_rows([[I_UNIT]]).to_fractions()


def test_conjugate_subspace_with_permutation():
    space = Subspace.span(2, [[ONE, I_UNIT]])
    swapped = space.conjugate([(1, 1), (0, 1)])
    assert swapped == Subspace.span(2, [[-I_UNIT, ONE]])


def test_zero_size_kernel():
    rank, space = rank_kernel(MatrixQ.zeros(0, 3))
    assert rank == 0
    assert space == Subspace.full(3)


def _random_scalar(rng):
    return scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))


def _random_matrix(rng, rows, cols):
    return MatrixQ.from_rows([[_random_scalar(rng) for _ in range(cols)] for _ in range(rows)], cols)


def test_field_axioms_on_random_triples():
    rng = random.Random(RANDOM_SEED)
    for _ in range(50):
        a, b, c = (_random_scalar(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert conj(conj(a)) == a
        assert conj(a + b) == conj(a) + conj(b)
        assert conj(a * b) == conj(a) * conj(b)
        if not is_zero(a):
            assert a * inverse(a) == ONE


def test_rank_is_transpose_invariant():
    rng = random.Random(RANDOM_SEED)
    for _ in range(20):
        inner = rng.randint(1, 3)
        m = _random_matrix(rng, 5, inner) @ _random_matrix(rng, inner, 4)
        assert m.rank() == m.transpose().rank()
        assert m.rank() <= inner
        rank, space = rank_kernel(m)
        assert rank + space.dim == m.cols


def test_intersection_and_sum_dimensions():
    rng = random.Random(RANDOM_SEED)
    for _ in range(20):
        a = Subspace.span(5, [[_random_scalar(rng) for _ in range(5)] for _ in range(rng.randint(0, 4))])
        shared = list(a.basis[:rng.randint(0, a.dim)])
        b = Subspace.span(5, shared + [[_random_scalar(rng) for _ in range(5)] for _ in range(rng.randint(0, 3))])
        assert intersect(a, b).dim + a.sum(b).dim == a.dim + b.dim


def test_eigensplit_of_star_on_flat_two_forms(torus):
    # e12, e13, e14, e23, e24, e34
    plus, minus = eigensplit_involution(torus.op("star_real", 2))
    assert plus == Subspace.span(6, [[1, 0, 0, 0, 0, 1], [0, 1, 0, 0, -1, 0], [0, 0, 1, 1, 0, 0]])
    assert minus == Subspace.span(6, [[1, 0, 0, 0, 0, -1], [0, 1, 0, 0, 1, 0], [0, 0, 1, -1, 0, 0]])
