# Domain models for invariant almost Hermitian structures

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple
import enum

from akharmonic.errors import InputError

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


class HarmonicFamily(str, enum.Enum):
    DELBAR_PQ = "delbar-pq"
    DEL_DELBAR_PQ = "del+delbar-pq"
    DELTA_K = "delta-k"
    DELTA_DELTABAR_K = "delta+deltabar-k"
    D_PQ = "d-pq"
    D_DC_K = "d+dc-k"
    ANTI_INVARIANT_J = "antiinvariant-J"
    DE_RHAM_K = "deRham-k"

    @property
    def bigraded(self) -> bool:
        return self in (HarmonicFamily.DELBAR_PQ, HarmonicFamily.DEL_DELBAR_PQ, HarmonicFamily.D_PQ)


class CheckStatus(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


class Hypothesis(str, enum.Enum):
    DIM_FOUR = "dim=4"
    UNIMODULAR = "unimodular"
    INTEGRABLE = "integrable"
    ALMOST_KAHLER = "almost-kahler"


def _matrix(rows: Sequence[Sequence], n: int, label: str) -> RationalMatrix:
    rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"{label} must be a {n}x{n} matrix")
    return rows


@dataclass(frozen=True)
class ManifoldSpec:
    """Structure constants, J and g of an even-dimensional Lie algebra in a fixed real frame.

    structure_constants[k][i][j] = c^k_{ij}, so [e_i, e_j] = sum_k c^k_{ij} e_k
    and de^k = -sum_{i<j} c^k_{ij} e^i ^ e^j.
    J[i][j] is the e_i-coefficient of J e_j; g[i][j] = g(e_i, e_j).
    """
    name: str
    dim: int
    structure_constants: Tuple[RationalMatrix, ...]
    J: RationalMatrix
    g: RationalMatrix
    parameters: Tuple[Tuple[str, Fraction], ...] = field(default=())

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 2:
            raise InputError(f"dimension must be a positive even integer, got {self.dim}")
        if len(self.structure_constants) != self.dim:
            raise InputError(f"expected {self.dim} structure-constant matrices")
        for k, block in enumerate(self.structure_constants):
            if len(block) != self.dim or any(len(r) != self.dim for r in block):
                raise InputError(f"structure constants c^{k + 1} must be {self.dim}x{self.dim}")
        if len(self.J) != self.dim or any(len(r) != self.dim for r in self.J):
            raise InputError(f"J must be a {self.dim}x{self.dim} matrix")
        if len(self.g) != self.dim or any(len(r) != self.dim for r in self.g):
            raise InputError(f"metric must be a {self.dim}x{self.dim} matrix")

    @classmethod
    def build(cls, name: str, dim: int, brackets: dict, J: Sequence[Sequence], g: Sequence[Sequence],
              parameters: Sequence[Tuple[str, Fraction]] = ()) -> "ManifoldSpec":
        """Build from {(i, j): {k: c^k_ij}} with 0-based indices; antisymmetry is filled in"""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), values in brackets.items():
            for k, value in values.items():
                c[k][i][j] = Fraction(value)
                c[k][j][i] = -Fraction(value)
        return cls(
            name=name,
            dim=dim,
            structure_constants=tuple(tuple(tuple(r) for r in block) for block in c),
            J=_matrix(J, dim, "J"),
            g=_matrix(g, dim, "metric"),
            parameters=tuple((p, Fraction(v)) for p, v in parameters),
        )

    @property
    def m(self) -> int:
        return self.dim // 2

    def c(self, k: int, i: int, j: int) -> Fraction:
        return self.structure_constants[k][i][j]

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
        """[x, y] for frame-coordinate vectors"""
        n = self.dim
        result = [Fraction(0)] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                for k in range(n):
                    c = self.structure_constants[k][i][j]
                    if c:
                        result[k] += x[i] * y[j] * c
        return result

    def apply_J(self, x: Sequence[Fraction]) -> List[Fraction]:
        return [sum((self.J[i][j] * x[j] for j in range(self.dim)), Fraction(0)) for i in range(self.dim)]

    def unit(self, i: int) -> List[Fraction]:
        return [Fraction(int(j == i)) for j in range(self.dim)]

    def with_structure(self, J: Sequence[Sequence], g: Sequence[Sequence], name: str = None) -> "ManifoldSpec":
        return ManifoldSpec(
            name=name or self.name,
            dim=self.dim,
            structure_constants=self.structure_constants,
            J=_matrix(J, self.dim, "J"),
            g=_matrix(g, self.dim, "metric"),
            parameters=self.parameters,
        )
