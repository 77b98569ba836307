# Exact linear algebra over the Gaussian rationals Q(i)

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union
import logging

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from akharmonic.errors import InputError, PreconditionError

logger = logging.getLogger(__name__)

# ==================== Scalars ====================

Scalar = QQ_I.dtype

Number = Union[int, Fraction, str, Scalar]


def _to_qq(value) -> "QQ.dtype":
    fr = Fraction(value)
    return QQ(fr.numerator, fr.denominator)


def _qq_to_fraction(value) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def scalar(re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0) -> Scalar:
    """Build the Gaussian rational re + im*i from exact rational parts"""
    return QQ_I(_to_qq(re), _to_qq(im))


ZERO = scalar(0)
ONE = scalar(1)
I_UNIT = scalar(0, 1)


def as_scalar(value: Number) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, float):
        raise InputError(f"floats forbidden; write {Fraction(value).limit_denominator()} as p/q")
    return scalar(value)


def real_part(z: Scalar) -> Fraction:
    return _qq_to_fraction(z.x)


def imag_part(z: Scalar) -> Fraction:
    return _qq_to_fraction(z.y)


def conj(z: Scalar) -> Scalar:
    return QQ_I(z.x, -z.y)


def is_zero(z: Scalar) -> bool:
    return z.x == 0 and z.y == 0


def is_real(z: Scalar) -> bool:
    return z.y == 0


def inverse(z: Scalar) -> Scalar:
    norm = z.x * z.x + z.y * z.y
    if norm == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    return QQ_I(z.x / norm, -z.y / norm)


def i_power(n: int) -> Scalar:
    """i**n for any integer n"""
    return (ONE, I_UNIT, -ONE, -I_UNIT)[n % 4]


def _fraction_text(fr: Fraction) -> str:
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def to_text(z: Scalar) -> str:
    """Stable textual form: "p/q", "p/q*i" or "a+b*i" with exact rationals"""
    re, im = real_part(z), imag_part(z)
    if im == 0:
        return _fraction_text(re)
    imag = "i" if abs(im) == 1 else f"{_fraction_text(abs(im))}*i"
    if re == 0:
        return imag if im > 0 else f"-{imag}"
    sign = "+" if im > 0 else "-"
    return f"{_fraction_text(re)}{sign}{imag}"


# ==================== Matrices ====================

@dataclass(frozen=True)
class MatrixQ:
    """Dense exact matrix, entries stored row-major"""
    rows: int
    cols: int
    entries: Tuple[Scalar, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"matrix shape {self.rows}x{self.cols} does not match {len(self.entries)} entries"
            )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls.from_function(n, n, lambda i, j: ONE if i == j else ZERO)

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable[[int, int], Scalar]) -> "MatrixQ":
        return cls(rows, cols, tuple(as_scalar(fn(i, j)) for i in range(rows) for j in range(cols)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], cols: Optional[int] = None) -> "MatrixQ":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise InputError("column count required for an empty row list")
            cols = len(rows[0])
        for idx, r in enumerate(rows):
            if len(r) != cols:
                raise InputError(f"row {idx} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, tuple(as_scalar(x) for r in rows for x in r))

    @staticmethod
    def vstack(*blocks: "MatrixQ", cols: Optional[int] = None) -> "MatrixQ":
        if cols is None:
            if not blocks:
                raise InputError("vstack of nothing needs an explicit column count")
            cols = blocks[0].cols
        for b in blocks:
            if b.cols != cols:
                raise InputError(f"vstack column mismatch: {b.cols} != {cols}")
        entries = tuple(x for b in blocks for x in b.entries)
        return MatrixQ(len(entries) // cols if cols else sum(b.rows for b in blocks), cols, entries)

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(self.entry(i, j) for i in range(self.rows))

    def to_rows(self) -> List[Tuple[Scalar, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "MatrixQ":
        return MatrixQ.from_function(self.cols, self.rows, lambda i, j: self.entry(j, i))

    def _check_same_shape(self, other: "MatrixQ"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "MatrixQ":
        return MatrixQ(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: Number) -> "MatrixQ":
        c = as_scalar(c)
        return MatrixQ(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return MatrixQ.zeros(self.rows, other.cols)
        return MatrixQ._from_domain_matrix(self._domain_matrix() * other._domain_matrix())

    def apply(self, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        if len(vector) != self.cols:
            raise InputError(f"vector of length {len(vector)} applied to {self.rows}x{self.cols}")
        return tuple(
            sum((self.entry(i, j) * vector[j] for j in range(self.cols)), ZERO)
            for i in range(self.rows)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatrixQ":
        return MatrixQ.from_function(len(rows), len(cols), lambda i, j: self.entry(rows[i], cols[j]))

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise PreconditionError(f"determinant of non-square {self.rows}x{self.cols} matrix")
        if self.rows == 0:
            return ONE
        return self._domain_matrix().det()

    def to_fractions(self) -> List[List[Fraction]]:
        """Entries as Fractions; the matrix must be real"""
        if not self.is_real():
            raise PreconditionError("matrix has non-real entries")
        return [[real_part(x) for x in self.row(i)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(is_zero(x) for x in self.entries)

    def is_real(self) -> bool:
        return all(is_real(x) for x in self.entries)

    def first_nonzero(self) -> Optional[Tuple[int, int]]:
        for idx, x in enumerate(self.entries):
            if not is_zero(x):
                return divmod(idx, self.cols)
        return None

    # ---------- elimination ----------

    def _domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(r) for r in self.to_rows()], (self.rows, self.cols), QQ_I)

    @staticmethod
    def _from_domain_matrix(dm: DomainMatrix) -> "MatrixQ":
        rows, cols = dm.shape
        return MatrixQ(rows, cols, tuple(dm[i, j].element for i in range(rows) for j in range(cols)))

    def rref(self) -> Tuple["MatrixQ", Tuple[int, ...]]:
        """Reduced row echelon form and pivot columns"""
        if self.rows == 0 or self.cols == 0:
            return self, ()
        reduced, pivots = self._domain_matrix().rref()
        return MatrixQ._from_domain_matrix(reduced), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "MatrixQ":
        n = self.rows
        if n != self.cols:
            raise PreconditionError(f"inverse of non-square {self.rows}x{self.cols} matrix")
        ident = MatrixQ.identity(n)
        augmented = MatrixQ.from_rows([self.row(i) + ident.row(i) for i in range(n)], 2 * n)
        reduced, pivots = augmented.rref()
        if pivots != tuple(range(n)):
            raise PreconditionError("matrix is not invertible")
        return MatrixQ.from_function(n, n, lambda i, j: reduced.entry(i, n + j))

    def solve(self, rhs: Sequence[Number]) -> Optional[Tuple[Scalar, ...]]:
        """One solution x of M x = rhs, or None when the system is inconsistent"""
        rhs = [as_scalar(x) for x in rhs]
        if len(rhs) != self.rows:
            raise InputError(f"right-hand side of length {len(rhs)} for {self.rows} rows")
        augmented = MatrixQ.from_rows([self.row(i) + (rhs[i],) for i in range(self.rows)], self.cols + 1)
        reduced, pivots = augmented.rref()
        if self.cols in pivots:
            return None
        solution = [ZERO] * self.cols
        for r, p in enumerate(pivots):
            solution[p] = reduced.entry(r, self.cols)
        return tuple(solution)


# ==================== Subspaces ====================

@dataclass(frozen=True)
class Subspace:
    """Subspace of Q(i)^ambient stored by its canonical reduced echelon basis.

    Build instances with Subspace.span so that equal spaces compare equal.
    """
    ambient: int
    basis: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Sequence[Number]]) -> "Subspace":
        rows = [tuple(as_scalar(x) for x in v) for v in vectors]
        for v in rows:
            if len(v) != ambient:
                raise InputError(f"vector of length {len(v)} in ambient dimension {ambient}")
        if not rows or ambient == 0:
            return cls(ambient, ())
        reduced, pivots = MatrixQ.from_rows(rows, ambient).rref()
        return cls(ambient, tuple(reduced.row(r) for r in range(len(pivots))))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(MatrixQ.identity(ambient).to_rows()))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> MatrixQ:
        """Basis vectors as rows"""
        return MatrixQ.from_rows(self.basis, self.ambient)

    def contains(self, vector: Sequence[Number]) -> bool:
        return Subspace.span(self.ambient, list(self.basis) + [vector]).dim == self.dim

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(other.contains(v) for v in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def annihilator(self) -> MatrixQ:
        """A matrix whose kernel is exactly this subspace"""
        if self.dim == 0:
            return MatrixQ.identity(self.ambient)
        _, complement = rank_kernel(self.matrix())
        return MatrixQ.from_rows(complement.basis, self.ambient)

    def image(self, m: MatrixQ) -> "Subspace":
        if m.cols != self.ambient:
            raise InputError(f"cannot map ambient {self.ambient} through {m.rows}x{m.cols}")
        return Subspace.span(m.rows, [m.apply(v) for v in self.basis])

    def transformed(self, fn: Callable[[Tuple[Scalar, ...]], Sequence[Scalar]],
                    ambient: Optional[int] = None) -> "Subspace":
        """Span of fn applied to the basis; fn may be conjugate-linear"""
        return Subspace.span(self.ambient if ambient is None else ambient, [fn(v) for v in self.basis])

    def conjugate(self, permutation: Sequence[Tuple[int, int]]) -> "Subspace":
        """Coefficient-wise conjugate, then move coordinate i to permutation[i] = (target, sign)"""
        if len(permutation) != self.ambient:
            raise InputError(f"permutation of length {len(permutation)} in ambient dimension {self.ambient}")

        def apply(v):
            out = [ZERO] * self.ambient
            for i, (target, sign) in enumerate(permutation):
                out[target] = conj(v[i]) if sign > 0 else -conj(v[i])
            return out

        return self.transformed(apply)

    def _check_ambient(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise InputError(f"ambient dimension mismatch: {self.ambient} != {other.ambient}")


# ==================== Operations ====================

def rank_kernel(m: MatrixQ) -> Tuple[int, Subspace]:
    """Rank of m and its kernel, both exact"""
    if m.rows == 0 or m.cols == 0:
        return 0, Subspace.full(m.cols)
    reduced, pivots = m.rref()
    free = [j for j in range(m.cols) if j not in pivots]
    vectors = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced.entry(r, f)
        vectors.append(v)
    return len(pivots), Subspace.span(m.cols, vectors)


def kernel(m: MatrixQ) -> Subspace:
    return rank_kernel(m)[1]


def stacked_kernel(constraints: Sequence[MatrixQ], cols: int) -> Subspace:
    """Common kernel of several constraint matrices on the same domain"""
    return kernel(MatrixQ.vstack(*constraints, cols=cols))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b, computed as the kernel of the stacked annihilators"""
    if a.ambient != b.ambient:
        raise InputError(f"ambient dimension mismatch: {a.ambient} != {b.ambient}")
    return kernel(MatrixQ.vstack(a.annihilator(), b.annihilator(), cols=a.ambient))


def eigensplit_involution(op: MatrixQ) -> Tuple[Subspace, Subspace]:
    """(+1, -1) eigenspaces of an involution"""
    if op.rows != op.cols:
        raise PreconditionError(f"involution must be square, got {op.rows}x{op.cols}")
    ident = MatrixQ.identity(op.rows)
    square = op @ op
    if square != ident:
        i, j = (square - ident).first_nonzero()
        raise PreconditionError(f"op² != id (first deviation at entry ({i}, {j}))")
    return kernel(op - ident), kernel(op + ident)
