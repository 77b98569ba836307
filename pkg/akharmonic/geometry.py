# Invariant almost Hermitian geometry: validation, complex coframe and the operator suite

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple
import logging
import random

from akharmonic.config import RANDOM_ENTRY_BOUND
from akharmonic.errors import ConsistencyError, PreconditionError
from akharmonic.exact import (
    I_UNIT, ONE, ZERO, MatrixQ, Scalar, Subspace, as_scalar, conj, i_power, is_zero,
    real_part, imag_part, scalar, to_text,
)
from akharmonic.forms import (
    Form, MultiIndex, bidegree, complement, derivation_matrices, exterior_dim,
    forms_to_matrix, multi_indices, sort_sign, wedge_all,
)
from akharmonic.models import ManifoldSpec
from akharmonic.schemas import ValidationEntry, ValidationReport

logger = logging.getLogger(__name__)

# ==================== Text helpers ====================

def index_text(index: MultiIndex) -> str:
    return "e" + "".join(str(i + 1) for i in index) if index else "1"


def frame_text(vector: Sequence[Fraction], prefix: str = "e") -> str:
    terms = []
    for i, c in enumerate(vector):
        c = Fraction(c)
        if c == 0:
            continue
        name = f"{prefix}{i + 1}"
        terms.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
    return " + ".join(terms) if terms else "0"


def matrix_defect(lhs: MatrixQ, rhs: MatrixQ) -> Optional[Tuple[int, int, Scalar, Scalar]]:
    """First entry where two equally shaped matrices differ, or None"""
    if (lhs.rows, lhs.cols) != (rhs.rows, rhs.cols):
        raise ConsistencyError(f"comparing {lhs.rows}x{lhs.cols} with {rhs.rows}x{rhs.cols}")
    position = (lhs - rhs).first_nonzero()
    if position is None:
        return None
    i, j = position
    return i, j, lhs.entry(i, j), rhs.entry(i, j)


def rational_matrix(rows: Sequence[Sequence[Fraction]]) -> MatrixQ:
    return MatrixQ.from_rows(rows, len(rows[0]) if rows else 0)

# ==================== Validation ====================

def generator_differentials(spec: ManifoldSpec) -> List[Form]:
    """de^k = -sum_{i<j} c^k_ij e^i ^ e^j in the real coframe"""
    n = spec.dim
    return [
        Form.from_dict(n, 2, {(i, j): -spec.c(k, i, j) for i in range(n) for j in range(i + 1, n)})
        for k in range(n)
    ]


def exterior_derivative(spec: ManifoldSpec) -> List[MatrixQ]:
    """Matrices of d on real invariant k-forms in the e-basis, k = 0..dim"""
    return derivation_matrices(spec.dim, generator_differentials(spec))


def nijenhuis(spec: ManifoldSpec, x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
    """N_J(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]"""
    jx, jy = spec.apply_J(x), spec.apply_J(y)
    a = spec.bracket(jx, jy)
    b = spec.apply_J(spec.bracket(jx, y))
    c = spec.apply_J(spec.bracket(x, jy))
    e = spec.bracket(x, y)
    return [a[k] - b[k] - c[k] - e[k] for k in range(spec.dim)]


def nijenhuis_table(spec: ManifoldSpec) -> Dict[Tuple[int, int], List[Fraction]]:
    """Nonzero values of N_J on frame pairs i < j"""
    table = {}
    for i in range(spec.dim):
        for j in range(i + 1, spec.dim):
            value = nijenhuis(spec, spec.unit(i), spec.unit(j))
            if any(value):
                table[(i, j)] = value
    return table


def positivity_witness(g: Sequence[Sequence[Fraction]]) -> Optional[List[Fraction]]:
    """A nonzero x with x^T g x <= 0 when the symmetric part of g is not positive definite.

    Walks the leading blocks: once g[:k, :k] is known to be positive definite, solving
    g[:k, :k] y = -g[:k, k] leaves the Schur value g[k][k] + y.b, which is x^T g x for x = (y, 1, 0...).
    """
    n = len(g)
    sym = [[(g[i][j] + g[j][i]) / 2 for j in range(n)] for i in range(n)]
    for k in range(n):
        if k == 0:
            if sym[0][0] <= 0:
                return [Fraction(1)] + [Fraction(0)] * (n - 1)
            continue
        block = rational_matrix([row[:k] for row in sym[:k]])
        b = [sym[i][k] for i in range(k)]
        y = [real_part(v) for v in block.solve([-x for x in b])]
        if sym[k][k] + sum(yi * bi for yi, bi in zip(y, b)) <= 0:
            return y + [Fraction(1)] + [Fraction(0)] * (n - k - 1)
    return None


def _quadratic(g: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Fraction:
    n = len(g)
    return sum((x[i] * g[i][j] * x[j] for i in range(n) for j in range(n)), Fraction(0))


def _entry(check: str, witness: Optional[str] = None, detail: Optional[str] = None) -> ValidationEntry:
    return ValidationEntry(check=check, passed=witness is None, witness=witness, detail=detail)


def _check_antisymmetry(spec: ManifoldSpec) -> ValidationEntry:
    n = spec.dim
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                if spec.c(k, i, j) != -spec.c(k, j, i):
                    return _entry("antisymmetry",
                                  f"c^{k + 1}_{i + 1}{j + 1} = {spec.c(k, i, j)}, "
                                  f"c^{k + 1}_{j + 1}{i + 1} = {spec.c(k, j, i)}")
    return _entry("antisymmetry")


def _check_jacobi(spec: ManifoldSpec) -> ValidationEntry:
    n = spec.dim
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                ei, ej, el = spec.unit(i), spec.unit(j), spec.unit(l)
                terms = (
                    spec.bracket(spec.bracket(ei, ej), el),
                    spec.bracket(spec.bracket(ej, el), ei),
                    spec.bracket(spec.bracket(el, ei), ej),
                )
                total = [sum(t[k] for t in terms) for k in range(n)]
                if any(total):
                    return _entry("jacobi", f"[[e{i + 1},e{j + 1}],e{l + 1}] + cyclic = {frame_text(total)}")
    return _entry("jacobi")


def _check_d_squared(d_real: Sequence[MatrixQ], n: int) -> ValidationEntry:
    for k in range(n - 1):
        square = d_real[k + 1] @ d_real[k]
        position = square.first_nonzero()
        if position is not None:
            i, j = position
            source, target = multi_indices(n, k)[j], multi_indices(n, k + 2)[i]
            return _entry("d-squared",
                          f"d(d {index_text(source)}) has coefficient "
                          f"{to_text(square.entry(i, j))} on {index_text(target)}")
    return _entry("d-squared")


def _check_unimodular(spec: ManifoldSpec) -> ValidationEntry:
    for i in range(spec.dim):
        trace = sum((spec.c(j, i, j) for j in range(spec.dim)), Fraction(0))
        if trace != 0:
            return _entry("unimodular", f"trace ad(e{i + 1}) = {trace}")
    return _entry("unimodular")


def _check_j_squared(spec: ManifoldSpec) -> ValidationEntry:
    J = rational_matrix(spec.J)
    defect = matrix_defect(J @ J, -MatrixQ.identity(spec.dim))
    if defect:
        i, j, value, _ = defect
        return _entry("J-squared", f"(J^2)[{i + 1}][{j + 1}] = {to_text(value)}")
    return _entry("J-squared")


def _check_metric_symmetric(spec: ManifoldSpec) -> ValidationEntry:
    n = spec.dim
    for i in range(n):
        for j in range(i + 1, n):
            if spec.g[i][j] != spec.g[j][i]:
                return _entry("metric-symmetric",
                              f"g[{i + 1}][{j + 1}] = {spec.g[i][j]}, g[{j + 1}][{i + 1}] = {spec.g[j][i]}")
    return _entry("metric-symmetric")


def _check_metric_positive(spec: ManifoldSpec) -> ValidationEntry:
    x = positivity_witness(spec.g)
    if x is None:
        return _entry("metric-positive")
    return _entry("metric-positive", f"x = {frame_text(x)} gives g(x, x) = {_quadratic(spec.g, x)}")


def _check_compatible(spec: ManifoldSpec) -> ValidationEntry:
    J, g = rational_matrix(spec.J), rational_matrix(spec.g)
    defect = matrix_defect(J.transpose() @ g @ J, g)
    if defect:
        i, j, value, expected = defect
        return _entry("J-compatible",
                      f"g(Je{i + 1}, Je{j + 1}) = {to_text(value)} but g(e{i + 1}, e{j + 1}) = {to_text(expected)}")
    return _entry("J-compatible")


def check_structure(spec: ManifoldSpec, d_real: Optional[Sequence[MatrixQ]] = None) -> List[ValidationEntry]:
    """Every structural check on a spec, in a fixed order"""
    if d_real is None:
        d_real = exterior_derivative(spec)
    jacobi = _check_jacobi(spec)
    d_squared = _check_d_squared(d_real, spec.dim)
    agree = _entry(
        "jacobi-d-squared-agree",
        None if jacobi.passed == d_squared.passed
        else f"jacobi {'holds' if jacobi.passed else 'fails'} but d^2 = 0 {'holds' if d_squared.passed else 'fails'}",
    )
    return [
        _check_antisymmetry(spec),
        jacobi,
        d_squared,
        agree,
        _check_unimodular(spec),
        _check_j_squared(spec),
        _check_metric_symmetric(spec),
        _check_metric_positive(spec),
        _check_compatible(spec),
    ]


def validate(spec: ManifoldSpec) -> ValidationReport:
    """
    Validate a spec and compute its integrability

    Args:
        spec: structure constants, J and g in a fixed frame

    Returns:
        ValidationReport with one entry per check; failures carry witnesses
    """
    return validate_with_suite(spec)[0]


def validate_with_suite(spec: ManifoldSpec) -> Tuple[ValidationReport, Optional["OperatorSuite"]]:
    """validate(), also returning the operator suite when the structure checks let one be built"""
    suite = None
    entries = check_structure(spec)
    j_ok = next(e for e in entries if e.check == "J-squared").passed
    table = nijenhuis_table(spec) if j_ok else {}
    report = ValidationReport(
        name=spec.name,
        dim=spec.dim,
        entries=entries,
        integrable=(not table) if j_ok else None,
        unimodular=next(e for e in entries if e.check == "unimodular").passed,
        nijenhuis={f"e{i + 1},e{j + 1}": frame_text(v) for (i, j), v in table.items()},
    )
    if all(e.passed for e in entries if e.check != "unimodular"):
        suite = build_suite(spec, entries=entries)
        integrable = not table
        report.entries.append(_entry(
            "integrability-cross-check",
            None if suite.mubar_vanishes == integrable
            else f"N_J {'vanishes' if integrable else 'is nonzero'} but mubar "
                 f"{'vanishes' if suite.mubar_vanishes else 'is nonzero'}",
            detail="N_J = 0 iff mubar = 0",
        ))
    if report.passed:
        logger.info(f"✓ Validated {spec.name}: integrable={report.integrable}")
    else:
        logger.info(f"Spec {spec.name} failed: {', '.join(e.check for e in report.failures())}")
    return report, suite

# ==================== Coframe and forms ====================

def complex_coframe(spec: ManifoldSpec) -> Tuple[MatrixQ, MatrixQ]:
    """(1,0)-coframe phi and its conjugate, as m x n matrices of e-coordinates.

    Rows come from the reduced echelon form of pi^{1,0} e^j = (e^j - i e^j o J) / 2.
    """
    n, m = spec.dim, spec.m
    J = rational_matrix(spec.J)
    if J @ J != -MatrixQ.identity(n):
        raise PreconditionError("J^2 != -Id, no (1,0) coframe exists")
    half = scalar(Fraction(1, 2))
    rows = [
        [half * ((ONE if l == j else ZERO) - I_UNIT * J.entry(j, l)) for l in range(n)]
        for j in range(n)
    ]
    reduced, pivots = MatrixQ.from_rows(rows, n).rref()
    if len(pivots) != m:
        logger.error(f"pi^(1,0) has rank {len(pivots)} on a {n}-dimensional coframe")
        raise ConsistencyError(f"(1,0)-projection has rank {len(pivots)}, expected {m}")
    phi = MatrixQ.from_rows([reduced.row(r) for r in range(m)], n)
    phibar = MatrixQ.from_rows([[conj(x) for x in phi.row(r)] for r in range(m)], n)
    return phi, phibar


def fundamental_form(spec: ManifoldSpec, d_real: Optional[Sequence[MatrixQ]] = None) -> Tuple[Form, bool]:
    """omega(X, Y) = g(JX, Y) and whether d omega = 0"""
    n = spec.dim
    if d_real is None:
        d_real = exterior_derivative(spec)
    w = [[sum((spec.J[l][i] * spec.g[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    omega = Form.from_dict(n, 2, {(i, j): w[i][j] for i in range(n) for j in range(i + 1, n)})
    closed = MatrixQ.from_rows([omega.to_vector()], d_real[2].cols).transpose()
    return omega, (d_real[2] @ closed).is_zero()


def pfaffian(omega: Form, m: int) -> Fraction:
    """omega^m / m! as a multiple of e^{1..n}"""
    top = wedge_all(omega.n, [omega] * m).coefficient(tuple(range(omega.n)))
    if imag_part(top) != 0:
        raise ConsistencyError("fundamental form has a non-real top power")
    return real_part(top) / factorial(m)


def hodge_star(spec: ManifoldSpec, pf: Fraction) -> List[MatrixQ]:
    """Real star matrices in the e-basis for the volume form pf * e^{1..n}.

    Entry (comp(I), J) is sign(I, comp I) * det(g^{-1}[I, J]) * pf.
    """
    n = spec.dim
    ginv = rational_matrix(spec.g).inverse()
    scale = as_scalar(pf)
    stars = []
    for k in range(n + 1):
        sources = multi_indices(n, k)
        targets = multi_indices(n, n - k)

        def entry(r: int, c: int) -> Scalar:
            index = complement(n, targets[r])
            sign, _ = sort_sign(index + targets[r])
            return ginv.submatrix(index, sources[c]).det() * scale * as_scalar(sign)

        stars.append(MatrixQ.from_function(len(targets), len(sources), entry))
    return stars

# ==================== Operator assembly ====================

COMPONENT_SHIFTS = {(2, -1): "mu", (1, 0): "del", (0, 1): "delbar", (-1, 2): "mubar"}

# each relation is a sum of compositions a o b that must vanish on every degree
RELATIONS = {
    "mubar-squared": (("mubar", "mubar"),),
    "mubar-delbar": (("mubar", "delbar"), ("delbar", "mubar")),
    "delbar-squared": (("delbar", "delbar"), ("mubar", "del"), ("del", "mubar")),
    "mixed": (("mu", "mubar"), ("mubar", "mu"), ("del", "delbar"), ("delbar", "del")),
    "del-squared": (("del", "del"), ("mu", "delbar"), ("delbar", "mu")),
    "mu-del": (("mu", "del"), ("del", "mu")),
    "mu-squared": (("mu", "mu"),),
}

# degree shift of each operator; None marks the star (k -> n - k)
_SHIFTS = {
    "d": 1, "mu": 1, "del": 1, "delbar": 1, "mubar": 1, "delta": 1, "deltabar": 1, "dc": 1,
    "J": 0, "Jinv": 0, "star": None, "d_real": 1, "star_real": None,
}


def split_d(d: Sequence[MatrixQ], n: int, m: int) -> Dict[str, List[MatrixQ]]:
    """Bidegree components mu, del, delbar, mubar of d written in the theta basis"""
    parts: Dict[str, List[MatrixQ]] = {name: [] for name in COMPONENT_SHIFTS.values()}
    for k, dk in enumerate(d):
        sources, targets = multi_indices(n, k), multi_indices(n, k + 1)
        masks = {name: [ZERO] * (dk.rows * dk.cols) for name in parts}
        for i, target in enumerate(targets):
            tp, tq = bidegree(target, m)
            for j, source in enumerate(sources):
                value = dk.entry(i, j)
                if is_zero(value):
                    continue
                sp, sq = bidegree(source, m)
                name = COMPONENT_SHIFTS.get((tp - sp, tq - sq))
                if name is None:
                    logger.error(f"d maps bidegree {(sp, sq)} to {(tp, tq)}")
                    raise ConsistencyError(
                        f"d has a component of bidegree ({tp - sp},{tq - sq}) on degree {k}"
                    )
                masks[name][i * dk.cols + j] = value
        for name, entries in masks.items():
            parts[name].append(MatrixQ(dk.rows, dk.cols, tuple(entries)))
    return parts


def j_action(n: int, m: int, inverse: bool = False) -> List[MatrixQ]:
    """J on A^{p,q} is multiplication by i^(p-q)"""
    actions = []
    for k in range(n + 1):
        basis = multi_indices(n, k)
        powers = []
        for index in basis:
            p, q = bidegree(index, m)
            powers.append(i_power(q - p if inverse else p - q))
        actions.append(MatrixQ.from_function(len(basis), len(basis), lambda i, j: powers[i] if i == j else ZERO))
    return actions


def dc_operator(d: Sequence[MatrixQ], n: int, m: int) -> List[MatrixQ]:
    """d^c = J^{-1} d J on every degree"""
    forward, backward = j_action(n, m), j_action(n, m, inverse=True)
    return [backward[k + 1] @ d[k] @ forward[k] if k < n else d[k] for k in range(n + 1)]


@dataclass(frozen=True, eq=False)
class OperatorSuite:
    """Every operator of the invariant complex, per degree, in the theta = (phi, conj phi) basis.

    Real e-basis versions of d and the star ("d_real", "star_real") are kept for Betti numbers.
    """
    spec: ManifoldSpec
    coframe: MatrixQ
    change: Tuple[MatrixQ, ...]
    change_inverse: Tuple[MatrixQ, ...]
    tables: Dict[str, Tuple[MatrixQ, ...]]
    omega: Form
    volume: Form
    pfaffian: Fraction
    integrable: bool
    almost_kahler: bool
    unimodular: bool

    @property
    def n(self) -> int:
        return self.spec.dim

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def mubar_vanishes(self) -> bool:
        return all(matrix.is_zero() for matrix in self.tables["mubar"])

    def dim(self, k: int) -> int:
        return exterior_dim(self.n, k)

    def op(self, name: str, k: int) -> MatrixQ:
        """Matrix of an operator on degree k; zero-size outside 0..n"""
        if name not in self.tables:
            raise PreconditionError(f"unknown operator {name}")
        if 0 <= k <= self.n:
            return self.tables[name][k]
        return MatrixQ.zeros(self.dim(self.target(name, k)), 0)

    def target(self, name: str, k: int) -> int:
        shift = _SHIFTS[name]
        return self.n - k if shift is None else k + shift

    def chain(self, names: Sequence[str], k: int) -> MatrixQ:
        """names[0] o names[1] o ... o names[-1] as a map out of degree k"""
        result, degree = None, k
        for name in reversed(names):
            matrix = self.op(name, degree)
            result = matrix if result is None else matrix @ result
            degree = self.target(name, degree)
        return result

    def compose(self, pairs: Iterable[Tuple[str, str]], k: int) -> MatrixQ:
        """Sum of a o b over the given pairs, as a map out of degree k"""
        total = None
        for a, b in pairs:
            product = self.chain((a, b), k)
            total = product if total is None else total + product
        return total

    def basis(self, k: int) -> List[MultiIndex]:
        return multi_indices(self.n, k)

    def bidegree_indices(self, k: int, allowed: Set[Tuple[int, int]]) -> List[int]:
        return [i for i, index in enumerate(self.basis(k)) if bidegree(index, self.m) in allowed]

    def outside_mask(self, k: int, allowed: Set[Tuple[int, int]]) -> MatrixQ:
        """Rows picking out the theta-coordinates whose bidegree is not allowed"""
        keep = set(self.bidegree_indices(k, allowed))
        size = self.dim(k)
        rows = [[ONE if j == i else ZERO for j in range(size)] for i in range(size) if i not in keep]
        return MatrixQ.from_rows(rows, size)

    def bigraded(self, k: int, p: int, q: int) -> Subspace:
        """A^{p,q} as a subspace of A^k"""
        size = self.dim(k)
        return Subspace.span(size, [
            [ONE if j == i else ZERO for j in range(size)] for i in self.bidegree_indices(k, {(p, q)})
        ])

    def conjugation(self, k: int) -> List[Tuple[int, int]]:
        """Conjugation sends theta-basis element i of A^k to (target, sign)"""
        basis = self.basis(k)
        position = {index: i for i, index in enumerate(basis)}
        out = []
        for index in basis:
            swapped = [a + self.m if a < self.m else a - self.m for a in index]
            sign, ordered = sort_sign(swapped)
            out.append((position[ordered], sign))
        return out

    def conjugate(self, space: Subspace, k: int) -> Subspace:
        return space.conjugate(self.conjugation(k))

    def to_theta(self, form: Form) -> Tuple[Scalar, ...]:
        return self.change_inverse[form.degree].apply(form.to_vector())

    def from_theta(self, k: int, vector: Sequence[Scalar]) -> Form:
        return Form.from_vector(self.n, k, self.change[k].apply(vector))


def _change_of_basis(coframe: MatrixQ, n: int) -> List[MatrixQ]:
    theta = [Form.one_form(coframe.row(a)) for a in range(n)]
    return [
        forms_to_matrix([wedge_all(n, [theta[a] for a in index]) for index in multi_indices(n, k)], n, k)
        for k in range(n + 1)
    ]


def _require_zero(label: str, matrices: Iterable[Tuple[int, MatrixQ]]):
    for k, matrix in matrices:
        position = matrix.first_nonzero()
        if position is not None:
            logger.error(f"{label} fails on degree {k} at entry {position}")
            raise ConsistencyError(f"{label} fails on degree {k}")


def build_suite(spec: ManifoldSpec, entries: Optional[List[ValidationEntry]] = None) -> OperatorSuite:
    """
    Assemble every operator of the invariant complex

    Args:
        spec: a spec whose structural checks pass (unimodularity is recorded, not required)
        entries: structural check results already computed for this spec

    Returns:
        OperatorSuite with d, its four components, delta, deltabar, d^c, J and the star
    """
    n, m = spec.dim, spec.m
    d_real = exterior_derivative(spec)
    if entries is None:
        entries = check_structure(spec, d_real)
    failed = [e.check for e in entries if not e.passed and e.check != "unimodular"]
    if failed:
        raise PreconditionError(f"spec {spec.name} failed validation: {', '.join(failed)}")
    unimodular = all(e.passed for e in entries if e.check == "unimodular")

    phi, phibar = complex_coframe(spec)
    coframe = MatrixQ.vstack(phi, phibar)
    change = _change_of_basis(coframe, n)
    change_inverse = [t.inverse() for t in change]

    d = [change_inverse[k + 1] @ d_real[k] @ change[k] if k < n else MatrixQ.zeros(0, 1)
         for k in range(n + 1)]
    parts = split_d(d, n, m)
    tables: Dict[str, Tuple[MatrixQ, ...]] = {"d": tuple(d), "d_real": tuple(d_real)}
    tables.update({name: tuple(matrices) for name, matrices in parts.items()})
    tables["delta"] = tuple(a + b for a, b in zip(parts["del"], parts["mubar"]))
    tables["deltabar"] = tuple(a + b for a, b in zip(parts["delbar"], parts["mu"]))
    tables["dc"] = tuple(dc_operator(d, n, m))
    tables["J"] = tuple(j_action(n, m))
    tables["Jinv"] = tuple(j_action(n, m, inverse=True))

    omega, almost_kahler = fundamental_form(spec, d_real)
    pf = pfaffian(omega, m)
    if pf == 0:
        raise PreconditionError("fundamental form is degenerate")
    det_g = real_part(rational_matrix(spec.g).det())
    if pf * pf != det_g:
        logger.error(f"Pf(omega)^2 = {pf * pf} but det g = {det_g}")
        raise ConsistencyError("volume normalisation: Pf(omega)^2 != det g")
    star_real = hodge_star(spec, pf)
    tables["star_real"] = tuple(star_real)
    tables["star"] = tuple(change_inverse[n - k] @ star_real[k] @ change[k] for k in range(n + 1))

    suite = OperatorSuite(
        spec=spec,
        coframe=coframe,
        change=tuple(change),
        change_inverse=tuple(change_inverse),
        tables=tables,
        omega=omega,
        volume=Form.monomial(n, tuple(range(n)), pf),
        pfaffian=pf,
        integrable=not nijenhuis_table(spec),
        almost_kahler=almost_kahler,
        unimodular=unimodular,
    )

    _require_zero("d^2 = 0", ((k, suite.compose([("d_real", "d_real")], k)) for k in range(n + 1)))
    for name, pairs in RELATIONS.items():
        _require_zero(f"relation {name}", ((k, suite.compose(pairs, k)) for k in range(n + 1)))
    i_times = [(b - a).scale(I_UNIT) for a, b in zip(tables["delta"], tables["deltabar"])]
    _require_zero("d^c = i(deltabar - delta)", ((k, tables["dc"][k] - i_times[k]) for k in range(n + 1)))

    logger.info(f"✓ Assembled operator suite for {spec.name} (Pf = {pf}, almost Kahler = {almost_kahler})")
    return suite

# ==================== Random structures ====================

def random_structure(spec: ManifoldSpec, rng: random.Random, bound: int = RANDOM_ENTRY_BOUND) -> ManifoldSpec:
    """Conjugate (J, g) by a random rational invertible S: J' = S J S^-1, g' = S^-T g S^-1"""
    n = spec.dim
    while True:
        s = MatrixQ.from_rows([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)], n)
        if not is_zero(s.det()):
            break
    s_inv = s.inverse()
    J = s @ rational_matrix(spec.J) @ s_inv
    g = s_inv.transpose() @ rational_matrix(spec.g) @ s_inv
    return spec.with_structure(J.to_fractions(), g.to_fractions(), name=f"{spec.name}~random")
