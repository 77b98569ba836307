# Harmonic spaces of the invariant complex as exact kernel intersections

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging

from akharmonic.errors import ConsistencyError, InputError, PreconditionError
from akharmonic.exact import MatrixQ, Subspace, eigensplit_involution, intersect, rank_kernel, stacked_kernel
from akharmonic.forms import Form, forms_to_matrix, multi_indices
from akharmonic.geometry import OperatorSuite, build_suite
from akharmonic.models import HarmonicFamily, ManifoldSpec
from akharmonic.schemas import BettiNumbers, HarmonicNumbers, HarmonicReport, StructureFlags
from akharmonic.specfile import digest

logger = logging.getLogger(__name__)

Degree = Union[int, Tuple[int, int]]

# each constraint is a chain of operators applied right to left
SYSTEMS: Dict[HarmonicFamily, Tuple[Tuple[str, ...], ...]] = {
    HarmonicFamily.DELBAR_PQ: (("delbar",), ("del", "star")),
    HarmonicFamily.DEL_DELBAR_PQ: (("del",), ("delbar",), ("del", "delbar", "star")),
    HarmonicFamily.DELTA_K: (("deltabar",), ("delta", "star")),
    HarmonicFamily.DELTA_DELTABAR_K: (("delta",), ("deltabar",), ("delta", "deltabar", "star")),
    HarmonicFamily.D_PQ: (("d",), ("d", "star")),
    HarmonicFamily.D_DC_K: (("d",), ("dc",), ("dc", "d", "star")),
    HarmonicFamily.ANTI_INVARIANT_J: (("d",), ("d", "star")),
    HarmonicFamily.DE_RHAM_K: (("d_real",), ("d_real", "star_real")),
}


@dataclass(frozen=True)
class HarmonicQuery:
    family: HarmonicFamily
    degree: Degree

    def __post_init__(self):
        try:
            family = HarmonicFamily(self.family)
        except ValueError:
            raise InputError(f"unknown harmonic family {self.family!r}")
        object.__setattr__(self, "family", family)
        if family.bigraded:
            if not (isinstance(self.degree, tuple) and len(self.degree) == 2):
                raise InputError(f"{family.value} needs a bidegree (p, q), got {self.degree!r}")
            object.__setattr__(self, "degree", (int(self.degree[0]), int(self.degree[1])))
        elif isinstance(self.degree, tuple):
            raise InputError(f"{family.value} needs a degree k, got {self.degree!r}")
        if family is HarmonicFamily.ANTI_INVARIANT_J and self.degree != 2:
            raise InputError("antiinvariant-J lives on 2-forms only")

    @property
    def total_degree(self) -> int:
        return sum(self.degree) if isinstance(self.degree, tuple) else self.degree

    def label(self) -> str:
        if isinstance(self.degree, tuple):
            return f"{self.family.value}({self.degree[0]},{self.degree[1]})"
        return f"{self.family.value}({self.degree})"

    def check_range(self, m: int):
        n = 2 * m
        if isinstance(self.degree, tuple):
            p, q = self.degree
            if not (0 <= p <= m and 0 <= q <= m):
                raise InputError(f"bidegree ({p},{q}) outside 0..{m} for {self.label()}")
        elif not 0 <= self.degree <= n:
            raise InputError(f"degree {self.degree} outside 0..{n} for {self.label()}")


def _allowed(query: HarmonicQuery, m: int):
    if query.family.bigraded:
        return {query.degree}
    if query.family is HarmonicFamily.ANTI_INVARIANT_J:
        return {(m, 0), (0, m)}
    return None


def solve(query: HarmonicQuery, suite: OperatorSuite) -> Subspace:
    """
    Solve one harmonic system on the invariant complex

    Args:
        query: family and degree
        suite: assembled operators of a four-dimensional spec

    Returns:
        Subspace of A^k in theta-coordinates (real e-coordinates for deRham-k)
    """
    if suite.n != 4:
        raise PreconditionError(f"harmonic systems need dimension 4, got {suite.n}")
    query.check_range(suite.m)
    k = query.total_degree
    constraints: List[MatrixQ] = [suite.chain(names, k) for names in SYSTEMS[query.family]]
    allowed = _allowed(query, suite.m)
    if allowed is not None:
        constraints.append(suite.outside_mask(k, allowed))
    return stacked_kernel(constraints, suite.dim(k))


@dataclass(frozen=True)
class HarmonicSpace:
    query: HarmonicQuery
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


class HarmonicSolver:
    """Solves and caches harmonic systems over one operator suite"""

    def __init__(self, suite: OperatorSuite):
        self.suite = suite
        self._cache: Dict[HarmonicQuery, HarmonicSpace] = {}

    def solve(self, family: HarmonicFamily, degree: Degree) -> HarmonicSpace:
        query = HarmonicQuery(family, degree)
        if query not in self._cache:
            self._cache[query] = HarmonicSpace(query, solve(query, self.suite))
            logger.debug(f"{query.label()} -> dimension {self._cache[query].dim}")
        return self._cache[query]

    def space(self, family: HarmonicFamily, degree: Degree) -> Subspace:
        return self.solve(family, degree).space

    def dim(self, family: HarmonicFamily, degree: Degree) -> int:
        return self.solve(family, degree).dim


def betti(suite: OperatorSuite, solver: Optional[HarmonicSolver] = None) -> BettiNumbers:
    """Invariant Betti numbers and the star eigensplit of harmonic 2-forms.

    Harmonic and cohomological counts are computed independently and must agree.
    """
    if suite.n != 4:
        raise PreconditionError(f"Betti numbers with b+ and b- need dimension 4, got {suite.n}")
    if not suite.unimodular:
        raise PreconditionError(f"{suite.spec.name} is not unimodular")
    solver = solver or HarmonicSolver(suite)
    harmonic = [solver.space(HarmonicFamily.DE_RHAM_K, k) for k in range(suite.n + 1)]
    b = [space.dim for space in harmonic]
    for k in range(suite.n + 1):
        closed = rank_kernel(suite.op("d_real", k))[1].dim
        exact = suite.op("d_real", k - 1).rank()
        if closed - exact != b[k]:
            logger.error(f"b_{k}: harmonic {b[k]} vs cohomology {closed - exact} on {suite.spec.name}")
            raise ConsistencyError(f"harmonic and cohomological b_{k} differ: {b[k]} != {closed - exact}")
    plus, minus = eigensplit_involution(suite.op("star_real", 2))
    b_plus = intersect(plus, harmonic[2]).dim
    b_minus = intersect(minus, harmonic[2]).dim
    if b_plus + b_minus != b[2]:
        raise ConsistencyError(f"b+ + b- = {b_plus + b_minus} but b_2 = {b[2]}")
    return BettiNumbers(b=b, b_plus=b_plus, b_minus=b_minus)


def anti_invariant_real(suite: OperatorSuite) -> Subspace:
    """Real closed and coclosed 2-forms with alpha(JX, JY) = -alpha(X, Y), in the e-basis"""
    n, J = suite.n, suite.spec.J
    pulled = [Form.one_form([J[k][l] for l in range(n)]) for k in range(n)]
    jstar = forms_to_matrix([pulled[i].wedge(pulled[j]) for i, j in multi_indices(n, 2)], n, 2)
    constraints = [
        jstar + MatrixQ.identity(suite.dim(2)),
        suite.op("d_real", 2),
        suite.chain(("d_real", "star_real"), 2),
    ]
    return stacked_kernel(constraints, suite.dim(2))


def full_report(spec: Union[ManifoldSpec, OperatorSuite], solver: Optional[HarmonicSolver] = None) -> HarmonicReport:
    """
    Every harmonic dimension of a four-dimensional spec

    Args:
        spec: a validated spec, or its assembled suite
        solver: optional solver to share cached spaces with verification

    Returns:
        HarmonicReport without checks attached
    """
    suite = spec if isinstance(spec, OperatorSuite) else build_suite(spec)
    if suite.n != 4:
        raise PreconditionError(f"reports need dimension 4, got {suite.n}")
    solver = solver or HarmonicSolver(suite)
    m, n = suite.m, suite.n
    bidegrees = [(p, q) for p in range(m + 1) for q in range(m + 1)]

    def graded(family: HarmonicFamily) -> List[int]:
        return [solver.dim(family, k) for k in range(n + 1)]

    def bigraded(family: HarmonicFamily) -> Dict[str, int]:
        return {f"{p},{q}": solver.dim(family, (p, q)) for p, q in bidegrees}

    h_minus = solver.dim(HarmonicFamily.ANTI_INVARIANT_J, 2)
    real_count = anti_invariant_real(suite).dim
    if real_count != h_minus:
        logger.error(f"h^-_J: complex {h_minus} vs real {real_count} on {suite.spec.name}")
        raise ConsistencyError(f"anti-invariant harmonic forms: complex dimension {h_minus}, real {real_count}")

    numbers = HarmonicNumbers(
        delbar=[[solver.dim(HarmonicFamily.DELBAR_PQ, (p, q)) for q in range(m + 1)] for p in range(m + 1)],
        del_delbar_pq=bigraded(HarmonicFamily.DEL_DELBAR_PQ),
        delta_k=graded(HarmonicFamily.DELTA_K),
        delta_deltabar_k=graded(HarmonicFamily.DELTA_DELTABAR_K),
        d_pq=bigraded(HarmonicFamily.D_PQ),
        d_dc_k=graded(HarmonicFamily.D_DC_K),
        h_minus_J=h_minus,
    )
    report = HarmonicReport(
        spec_digest=digest(suite.spec),
        name=suite.spec.name,
        orientation=1 if suite.pfaffian > 0 else -1,
        flags=StructureFlags(
            integrable=suite.integrable,
            almost_kahler=suite.almost_kahler,
            unimodular=suite.unimodular,
        ),
        betti=betti(suite, solver),
        h=numbers,
    )
    logger.info(f"✓ Report for {suite.spec.name}: h^1_(d+dc) = {numbers.d_dc_k[1]}, h^-_J = {h_minus}")
    return report
