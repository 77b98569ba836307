# Exterior algebra on a finite set of generators, stored over strictly increasing multi-indices

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple
import logging

from akharmonic.errors import InputError
from akharmonic.exact import ZERO, MatrixQ, Number, Scalar, as_scalar, is_zero, to_text

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]


def multi_indices(n: int, k: int) -> List[MultiIndex]:
    """Canonical (lexicographic) basis of k-forms on n generators"""
    if k < 0 or k > n:
        return []
    return list(combinations(range(n), k))


def exterior_dim(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def sort_sign(indices: Sequence[int]) -> Tuple[int, MultiIndex]:
    """Sign of the sorting permutation and the sorted index; sign 0 on repeats"""
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


def complement(n: int, index: MultiIndex) -> MultiIndex:
    present = set(index)
    return tuple(i for i in range(n) if i not in present)


def bidegree(index: MultiIndex, m: int) -> Tuple[int, int]:
    """(p, q) of a monomial when generators 0..m-1 are (1,0) and m..2m-1 are (0,1)"""
    p = sum(1 for i in index if i < m)
    return p, len(index) - p


@dataclass(frozen=True)
class Form:
    """A homogeneous k-form: sorted (multi-index, coefficient) pairs with nonzero coefficients"""
    n: int
    degree: int
    terms: Tuple[Tuple[MultiIndex, Scalar], ...]

    def __post_init__(self):
        for index, _ in self.terms:
            if len(index) != self.degree:
                raise InputError(f"multi-index {index} in a {self.degree}-form")
            if any(a >= b for a, b in zip(index, index[1:])):
                raise InputError(f"multi-index {index} is not strictly increasing")
            if index and (index[0] < 0 or index[-1] >= self.n):
                raise InputError(f"multi-index {index} out of range for {self.n} generators")

    @classmethod
    def from_dict(cls, n: int, degree: int, coefficients: Mapping[MultiIndex, Number]) -> "Form":
        cleaned = {}
        for index, value in coefficients.items():
            value = as_scalar(value)
            if not is_zero(value):
                cleaned[tuple(index)] = value
        return cls(n, degree, tuple(sorted(cleaned.items())))

    @classmethod
    def zero(cls, n: int, degree: int) -> "Form":
        return cls(n, degree, ())

    @classmethod
    def monomial(cls, n: int, index: Sequence[int], coefficient: Number = 1) -> "Form":
        sign, ordered = sort_sign(index)
        if sign == 0:
            return cls.zero(n, len(index))
        return cls.from_dict(n, len(ordered), {ordered: as_scalar(coefficient) * as_scalar(sign)})

    @classmethod
    def one_form(cls, coefficients: Sequence[Number]) -> "Form":
        return cls.from_dict(len(coefficients), 1, {(i,): c for i, c in enumerate(coefficients)})

    @classmethod
    def from_vector(cls, n: int, degree: int, vector: Sequence[Number]) -> "Form":
        basis = multi_indices(n, degree)
        if len(vector) != len(basis):
            raise InputError(f"vector of length {len(vector)} for {len(basis)} basis {degree}-forms")
        return cls.from_dict(n, degree, dict(zip(basis, vector)))

    def as_dict(self) -> Dict[MultiIndex, Scalar]:
        return dict(self.terms)

    def coefficient(self, index: MultiIndex) -> Scalar:
        return self.as_dict().get(tuple(index), ZERO)

    def to_vector(self) -> Tuple[Scalar, ...]:
        coefficients = self.as_dict()
        return tuple(coefficients.get(index, ZERO) for index in multi_indices(self.n, self.degree))

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "Form"):
        if (self.n, self.degree) != (other.n, other.degree):
            raise InputError(
                f"cannot add a {other.degree}-form on {other.n} generators "
                f"to a {self.degree}-form on {self.n}"
            )

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        acc = self.as_dict()
        for index, value in other.terms:
            acc[index] = acc.get(index, ZERO) + value
        return Form.from_dict(self.n, self.degree, acc)

    def __neg__(self) -> "Form":
        return Form(self.n, self.degree, tuple((index, -value) for index, value in self.terms))

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c: Number) -> "Form":
        c = as_scalar(c)
        return Form.from_dict(self.n, self.degree, {index: c * value for index, value in self.terms})

    def wedge(self, other: "Form") -> "Form":
        if self.n != other.n:
            raise InputError(f"wedge of forms on {self.n} and {other.n} generators")
        acc: Dict[MultiIndex, Scalar] = {}
        for left, a in self.terms:
            for right, b in other.terms:
                sign, index = sort_sign(left + right)
                if sign:
                    term = a * b if sign > 0 else -(a * b)
                    acc[index] = acc.get(index, ZERO) + term
        return Form.from_dict(self.n, self.degree + other.degree, acc)

    def __xor__(self, other: "Form") -> "Form":
        return self.wedge(other)

    def project(self, p: int, q: int, m: int) -> "Form":
        """Bigraded component of type (p, q)"""
        return Form(self.n, self.degree,
                    tuple((index, v) for index, v in self.terms if bidegree(index, m) == (p, q)))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for index, value in self.terms:
            name = "^".join(f"e{i + 1}" for i in index) or "1"
            parts.append(f"({to_text(value)})*{name}")
        return " + ".join(parts)


def wedge_all(n: int, factors: Iterable[Form]) -> Form:
    result = Form.monomial(n, ())
    for factor in factors:
        result = result.wedge(factor)
    return result


def forms_to_matrix(columns: Sequence[Form], n: int, degree: int) -> MatrixQ:
    """Matrix whose j-th column is the coordinate vector of columns[j]"""
    rows = exterior_dim(n, degree)
    vectors = [f.to_vector() for f in columns]
    return MatrixQ.from_function(rows, len(vectors), lambda i, j: vectors[j][i])


def derivation_matrices(n: int, generator_differentials: Sequence[Form]) -> List[MatrixQ]:
    """Matrices of the degree-one anti-derivation fixed by its values on generators.

    Entry k maps k-forms to (k+1)-forms, for k = 0..n.
    """
    if len(generator_differentials) != n:
        raise InputError(f"{len(generator_differentials)} generator differentials for {n} generators")
    matrices = []
    for k in range(n + 1):
        columns = []
        for index in multi_indices(n, k):
            total = Form.zero(n, k + 1)
            for r, generator in enumerate(index):
                before = Form.monomial(n, index[:r])
                after = Form.monomial(n, index[r + 1:])
                term = before.wedge(generator_differentials[generator]).wedge(after)
                total = total + (term if r % 2 == 0 else -term)
            columns.append(total)
        matrices.append(forms_to_matrix(columns, n, k + 1))
    return matrices
