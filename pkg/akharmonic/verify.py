# Verification of the structural identities, decompositions and the almost Kahler table

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import logging
import math

from akharmonic.config import SWEEP_WORKERS
from akharmonic.errors import InputError, PreconditionError
from akharmonic.exact import I_UNIT, MatrixQ, Subspace, is_real, is_zero, kernel, real_part, stacked_kernel, to_text
from akharmonic.forms import Form, bidegree, multi_indices
from akharmonic.geometry import RELATIONS, OperatorSuite, index_text, matrix_defect, validate_with_suite
from akharmonic.harmonics import HarmonicSolver, betti, full_report
from akharmonic.models import CheckStatus, HarmonicFamily as F, Hypothesis, ManifoldSpec
from akharmonic.schemas import CheckResult, SweepResult, SweepSample
from akharmonic.specfile import fraction_text

logger = logging.getLogger(__name__)

# ==================== Result helpers ====================

def _passed(check_id: str, anchor: str, detail: Optional[str] = None) -> CheckResult:
    return CheckResult(id=check_id, status=CheckStatus.PASS, anchor=anchor, detail=detail)


def _failed(check_id: str, anchor: str, witness: str, detail: Optional[str] = None) -> CheckResult:
    return CheckResult(id=check_id, status=CheckStatus.FAIL, anchor=anchor, witness=witness, detail=detail)


def _not_applicable(check_id: str, anchor: str, missing: Iterable[Hypothesis]) -> CheckResult:
    reason = ", ".join(h.value for h in missing)
    return CheckResult(id=check_id, status=CheckStatus.NOT_APPLICABLE, anchor=anchor,
                       detail=f"hypothesis not met: {reason}")


def _outcome(check_id: str, anchor: str, witness: Optional[str], detail: Optional[str] = None) -> CheckResult:
    if witness is None:
        return _passed(check_id, anchor, detail)
    return _failed(check_id, anchor, witness, detail)


def _matrix_identity(check_id: str, anchor: str,
                     cases: Iterable[Tuple[int, MatrixQ, MatrixQ]]) -> CheckResult:
    for k, lhs, rhs in cases:
        defect = matrix_defect(lhs, rhs)
        if defect:
            i, j, left, right = defect
            return _failed(check_id, anchor,
                           f"degree {k}, entry ({i}, {j}): {to_text(left)} != {to_text(right)}")
    return _passed(check_id, anchor)


def _vector_text(vector) -> str:
    return "(" + ", ".join(to_text(x) for x in vector) + ")"


def _space_witness(lhs: Subspace, rhs: Subspace) -> Optional[str]:
    """None when the spaces coincide, otherwise a basis vector on one side only"""
    if lhs == rhs:
        return None
    for v in lhs.basis:
        if not rhs.contains(v):
            return f"left side contains {_vector_text(v)} (dims {lhs.dim} vs {rhs.dim})"
    for v in rhs.basis:
        if not lhs.contains(v):
            return f"right side contains {_vector_text(v)} (dims {lhs.dim} vs {rhs.dim})"
    return f"dims {lhs.dim} vs {rhs.dim}"


def _direct_sum_witness(total: Subspace, first: Subspace, second: Subspace) -> Optional[str]:
    overlap = first.intersect(second)
    if overlap.dim:
        return f"summands meet in {_vector_text(overlap.basis[0])}"
    return _space_witness(total, first.sum(second))


def _dimension_witness(computed: int, expected: int) -> Optional[str]:
    return None if computed == expected else f"computed {computed}, expected {expected}"


def _missing(suite: OperatorSuite, required: Sequence[Hypothesis]) -> List[Hypothesis]:
    flags = {
        Hypothesis.DIM_FOUR: suite.n == 4,
        Hypothesis.UNIMODULAR: suite.unimodular,
        Hypothesis.INTEGRABLE: suite.integrable,
        Hypothesis.ALMOST_KAHLER: suite.almost_kahler,
    }
    return [h for h in required if not flags[h]]

# ==================== Structural identities ====================

def verify_structural(suite: OperatorSuite) -> List[CheckResult]:
    """
    Check every matrix identity of the operator suite

    Args:
        suite: assembled operators

    Returns:
        CheckResults sorted by id; the complex-case identities are not-applicable unless J is integrable
    """
    n, m = suite.n, suite.m
    degrees = range(n + 1)
    results = []

    results.append(_matrix_identity("structural.d-squared", "d^2 = 0", (
        (k, suite.chain(name_pair, k), MatrixQ.zeros(suite.dim(k + 2), suite.dim(k)))
        for k in degrees for name_pair in (("d", "d"), ("d_real", "d_real"))
    )))
    results.append(_matrix_identity("structural.d-components", "d = mu + del + delbar + mubar", (
        (k, suite.op("d", k), suite.op("mu", k) + suite.op("del", k) + suite.op("delbar", k) + suite.op("mubar", k))
        for k in degrees
    )))
    for name, pairs in RELATIONS.items():
        results.append(_matrix_identity(
            f"structural.relation.{name}",
            " + ".join(f"{a} {b}" for a, b in pairs) + " = 0",
            ((k, suite.compose(pairs, k), MatrixQ.zeros(suite.dim(k + 2), suite.dim(k))) for k in degrees),
        ))
    results.append(_matrix_identity("structural.delta-definitions", "delta = del + mubar, deltabar = delbar + mu", (
        case for k in degrees for case in (
            (k, suite.op("delta", k), suite.op("del", k) + suite.op("mubar", k)),
            (k, suite.op("deltabar", k), suite.op("delbar", k) + suite.op("mu", k)),
        )
    )))
    results.append(_matrix_identity("structural.d-delta-sum", "d = delta + deltabar", (
        (k, suite.op("d", k), suite.op("delta", k) + suite.op("deltabar", k)) for k in degrees
    )))
    results.append(_matrix_identity("structural.dc-identity", "d^c = J^-1 d J = i(deltabar - delta)", (
        case for k in degrees for case in (
            (k, suite.op("dc", k), suite.chain(("Jinv", "d", "J"), k)),
            (k, suite.op("dc", k), (suite.op("deltabar", k) - suite.op("delta", k)).scale(I_UNIT)),
        )
    )))
    results.append(_matrix_identity("structural.star-squared", "star star = (-1)^(k(n-k))", (
        (k, suite.chain((star, star), k), MatrixQ.identity(suite.dim(k)).scale((-1) ** (k * (n - k))))
        for k in degrees for star in ("star", "star_real")
    )))
    results.append(_check_star_bidegree(suite))
    results.append(_check_omega(suite))
    results.append(_check_form_norms(suite))

    anchor = "delta deltabar = del delbar + mubar mu"
    missing = _missing(suite, [Hypothesis.DIM_FOUR])
    if missing:
        results.append(_not_applicable("structural.delta-deltabar-product", anchor, missing))
    else:
        results.append(_matrix_identity("structural.delta-deltabar-product", anchor, (
            (k, suite.chain(("delta", "deltabar"), k), suite.compose((("del", "delbar"), ("mubar", "mu")), k))
            for k in degrees
        )))

    results.append(_outcome(
        "structural.integrability", "N_J = 0 iff mubar = 0",
        None if suite.integrable == suite.mubar_vanishes
        else f"N_J {'vanishes' if suite.integrable else 'is nonzero'}, "
             f"mubar {'vanishes' if suite.mubar_vanishes else 'is nonzero'}",
    ))
    results.extend(_complex_case(suite))
    return sorted(results, key=lambda r: r.id)


def _check_star_bidegree(suite: OperatorSuite) -> CheckResult:
    anchor = "star maps A^{p,q} to A^{m-q,m-p}"
    n, m = suite.n, suite.m
    for k in range(n + 1):
        star = suite.op("star", k)
        sources, targets = multi_indices(n, k), multi_indices(n, n - k)
        for j, source in enumerate(sources):
            p, q = bidegree(source, m)
            for i, target in enumerate(targets):
                if not is_zero(star.entry(i, j)) and bidegree(target, m) != (m - q, m - p):
                    return _failed("structural.star-bidegree", anchor,
                                   f"star of theta-{index_text(source)} has a {bidegree(target, m)} component")
    return _passed("structural.star-bidegree", anchor)


def _check_omega(suite: OperatorSuite) -> CheckResult:
    anchor = "omega is a real (1,1)-form and omega^m = m! vol"
    n, m = suite.n, suite.m
    coordinates = suite.to_theta(suite.omega)
    for i, index in enumerate(multi_indices(n, 2)):
        if not is_zero(coordinates[i]) and bidegree(index, m) != (1, 1):
            return _failed("structural.omega", anchor, f"omega has a {bidegree(index, m)} component")
    star_one = Form.from_vector(n, n, suite.op("star_real", 0).column(0))
    power = Form.monomial(n, ())
    for _ in range(m):
        power = power.wedge(suite.omega)
    factorial = math.factorial(m)
    if power != star_one.scale(factorial):
        return _failed("structural.omega", anchor, f"omega^{m} = {power} but star(1) = {star_one}")
    return _passed("structural.omega", anchor)


def _check_form_norms(suite: OperatorSuite) -> CheckResult:
    """<e^I, e^I> > 0, read off e^I ^ star e^I = <e^I, e^I> vol"""
    anchor = "<alpha, alpha> > 0 for every nonzero real basis form"
    n = suite.n
    top = tuple(range(n))
    for k in range(n + 1):
        star = suite.op("star_real", k)
        for j, index in enumerate(multi_indices(n, k)):
            dual = Form.from_vector(n, n - k, star.column(j))
            value = Form.monomial(n, index).wedge(dual).coefficient(top)
            norm = real_part(value) / suite.pfaffian
            if not is_real(value) or norm <= 0:
                return _failed("structural.form-norms", anchor,
                               f"<{index_text(index)}, {index_text(index)}> = {to_text(value)}/{suite.pfaffian}")
    return _passed("structural.form-norms", anchor)


def _complex_case(suite: OperatorSuite) -> List[CheckResult]:
    checks = {
        "complex.del-squared": "del^2 = 0",
        "complex.delbar-squared": "delbar^2 = 0",
        "complex.del-delbar": "del delbar + delbar del = 0",
        "complex.bott-chern": "ker del ∩ ker delbar = ker d ∩ ker d^c on every A^{p,q}",
    }
    missing = _missing(suite, [Hypothesis.INTEGRABLE])
    if missing:
        return [_not_applicable(check_id, anchor, missing) for check_id, anchor in checks.items()]
    n, m = suite.n, suite.m
    zero = lambda k: MatrixQ.zeros(suite.dim(k + 2), suite.dim(k))
    results = [
        _matrix_identity("complex.del-squared", checks["complex.del-squared"],
                         ((k, suite.chain(("del", "del"), k), zero(k)) for k in range(n + 1))),
        _matrix_identity("complex.delbar-squared", checks["complex.delbar-squared"],
                         ((k, suite.chain(("delbar", "delbar"), k), zero(k)) for k in range(n + 1))),
        _matrix_identity("complex.del-delbar", checks["complex.del-delbar"],
                         ((k, suite.compose((("del", "delbar"), ("delbar", "del")), k), zero(k))
                          for k in range(n + 1))),
    ]
    witness = None
    for p in range(m + 1):
        for q in range(m + 1):
            k = p + q
            mask = suite.outside_mask(k, {(p, q)})
            left = stacked_kernel([suite.op("del", k), suite.op("delbar", k), mask], suite.dim(k))
            right = stacked_kernel([suite.op("d", k), suite.op("dc", k), mask], suite.dim(k))
            witness = _space_witness(left, right)
            if witness:
                witness = f"A^({p},{q}): {witness}"
                break
        if witness:
            break
    results.append(_outcome("complex.bott-chern", checks["complex.bott-chern"], witness))
    return results

# ==================== Almost Hermitian identities ====================

_HERMITIAN = [Hypothesis.DIM_FOUR, Hypothesis.UNIMODULAR]


def verify_almost_hermitian(suite: OperatorSuite, solver: Optional[HarmonicSolver] = None) -> List[CheckResult]:
    """
    Decompositions of harmonic 2- and 3-forms and the dimension identities valid for any compatible metric

    Args:
        suite: assembled operators
        solver: optional solver shared with the report

    Returns:
        CheckResults sorted by id
    """
    anchors = {
        "decomposition.deltabar-degree-2": "H^2_deltabar = H^{1,1}_delbar + H_J",
        "decomposition.delta-deltabar-degree-2": "H^2_{delta+deltabar} = H^{1,1}_{del+delbar} + H_J",
        "decomposition.delta-deltabar-degree-3": "H^3_{delta+deltabar} = H^{2,1}_{del+delbar} + conj H^{2,1}_{del+delbar}",
        "dimension.delta-deltabar-degree-2": "h^2_{delta+deltabar} = b^- + 1 + h^-_J",
        "dimension.del-delbar-11": "h^{1,1}_{del+delbar} = b^- + 1",
        "dimension.del-delbar-21": "h^{2,1}_{del+delbar} = h^3_{delta+deltabar} / 2",
        "duality.deltabar": "conj star H^k_deltabar = H^{4-k}_deltabar",
        "identity.delta-deltabar-degree-1": "H^1_{delta+deltabar} = A^1 ∩ ker delta ∩ ker deltabar = H^1_{d+dc}",
        "dimension.lowest-highest": "h^0 = h^4 = 1 for deltabar, delta+deltabar and d+dc",
    }
    missing = _missing(suite, _HERMITIAN)
    if missing:
        return sorted((_not_applicable(i, a, missing) for i, a in anchors.items()), key=lambda r: r.id)

    solver = solver or HarmonicSolver(suite)
    b = betti(suite, solver)
    h_J = solver.space(F.ANTI_INVARIANT_J, 2)
    results = []

    def check(check_id: str, witness: Optional[str]):
        results.append(_outcome(check_id, anchors[check_id], witness))

    check("decomposition.deltabar-degree-2", _direct_sum_witness(
        solver.space(F.DELTA_K, 2), solver.space(F.DELBAR_PQ, (1, 1)), h_J))
    check("decomposition.delta-deltabar-degree-2", _direct_sum_witness(
        solver.space(F.DELTA_DELTABAR_K, 2), solver.space(F.DEL_DELBAR_PQ, (1, 1)), h_J))
    h21 = solver.space(F.DEL_DELBAR_PQ, (2, 1))
    check("decomposition.delta-deltabar-degree-3", _direct_sum_witness(
        solver.space(F.DELTA_DELTABAR_K, 3), h21, suite.conjugate(h21, 3)))

    check("dimension.delta-deltabar-degree-2",
          _dimension_witness(solver.dim(F.DELTA_DELTABAR_K, 2), b.b_minus + 1 + h_J.dim))
    check("dimension.del-delbar-11", _dimension_witness(solver.dim(F.DEL_DELBAR_PQ, (1, 1)), b.b_minus + 1))
    check("dimension.del-delbar-21",
          _dimension_witness(2 * h21.dim, solver.dim(F.DELTA_DELTABAR_K, 3)))

    witness = None
    for k in range(suite.n + 1):
        image = solver.space(F.DELTA_K, k).image(suite.op("star", k))
        witness = _space_witness(suite.conjugate(image, suite.n - k), solver.space(F.DELTA_K, suite.n - k))
        if witness:
            witness = f"degree {k}: {witness}"
            break
    check("duality.deltabar", witness)

    closed = stacked_kernel([suite.op("delta", 1), suite.op("deltabar", 1)], suite.dim(1))
    harmonic = solver.space(F.DELTA_DELTABAR_K, 1)
    check("identity.delta-deltabar-degree-1",
          _space_witness(harmonic, closed) or _space_witness(harmonic, solver.space(F.D_DC_K, 1)))

    witness = None
    for family in (F.DELTA_K, F.DELTA_DELTABAR_K, F.D_DC_K):
        for k in (0, suite.n):
            if solver.dim(family, k) != 1:
                witness = f"{family.value}({k}) = {solver.dim(family, k)}"
                break
        if witness:
            break
    check("dimension.lowest-highest", witness)
    return sorted(results, key=lambda r: r.id)

# ==================== Almost Kahler table ====================

_KAHLER = [Hypothesis.DIM_FOUR, Hypothesis.ALMOST_KAHLER, Hypothesis.UNIMODULAR]

_GRADED_ROWS = {"deltabar": F.DELTA_K, "delta-deltabar": F.DELTA_DELTABAR_K, "d-dc": F.D_DC_K}
_D_CELLS = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2)]


def table_ids() -> List[str]:
    """Ids of the sixteen table cells"""
    ids = [f"table.{row}.{k}" for row in _GRADED_ROWS for k in (1, 2, 3)]
    ids += [f"table.d.{p}-{q}" for p, q in _D_CELLS]
    return ids


def expected_table(h1: int, b1: int, b_minus: int, h_minus_J: int, integrable: bool) -> Dict[str, Fraction]:
    """Table values in terms of h^1_{d+dc}, b_1, b^- and h^-_J"""
    middle = Fraction(b_minus + 1 + h_minus_J)
    half = Fraction(h1, 2)
    table = {}
    for row in ("deltabar", "delta-deltabar"):
        table.update({f"table.{row}.1": Fraction(h1), f"table.{row}.2": middle, f"table.{row}.3": Fraction(h1)})
    table.update({"table.d-dc.1": Fraction(h1), "table.d-dc.2": middle, "table.d-dc.3": Fraction(b1)})
    # closed (2,0)-forms survive only when J is integrable
    top = Fraction(h_minus_J, 2) if integrable else Fraction(0)
    table.update({
        "table.d.1-0": half, "table.d.0-1": half,
        "table.d.2-0": top, "table.d.0-2": top,
        "table.d.1-1": Fraction(b_minus + 1),
        "table.d.2-1": half, "table.d.1-2": half,
    })
    return table


def verify_almost_kahler(suite: OperatorSuite, solver: Optional[HarmonicSolver] = None) -> List[CheckResult]:
    """
    Every table cell plus the (1,0)-form identities of almost Kahler four-manifolds

    Args:
        suite: assembled operators
        solver: optional solver shared with the report

    Returns:
        CheckResults sorted by id; not-applicable unless d omega = 0
    """
    anchors = {check_id: "almost Kahler table" for check_id in table_ids()}
    anchors.update({
        "identity.delbar-closed-10": "A^{1,0} ∩ ker delbar = A^{1,0} ∩ ker d ∩ ker d^*",
        "identity.star-10": "star H^{1,0}_delbar = H^{2,1}_{del+delbar}",
        "identity.star-01": "star H^{0,1}_delbar = H^{1,2}_{del+delbar}",
        "identity.dc-degree-1": "h^1_{d+dc} = 2 h^{1,0}_d",
        "identity.harmonic-10": "H^{1,0}_d = H^{1,0}_delbar = A^{1,0} ∩ ker d",
        "identity.odd-d-numbers": "h^{1,0}_d = h^{0,1}_d = h^{2,1}_d = h^{1,2}_d = h^{1,0}_delbar",
        "dimension.delbar-11": "h^{1,1}_delbar = b^- + 1",
        "duality.deltabar-equals-delta-deltabar": "h^k_deltabar = h^k_{delta+deltabar}",
    })
    missing = _missing(suite, _KAHLER)
    if missing:
        return sorted((_not_applicable(i, a, missing) for i, a in anchors.items()), key=lambda r: r.id)

    solver = solver or HarmonicSolver(suite)
    b = betti(suite, solver)
    h1 = solver.dim(F.D_DC_K, 1)
    h_minus_J = solver.dim(F.ANTI_INVARIANT_J, 2)
    expected = expected_table(h1, b.b[1], b.b_minus, h_minus_J, suite.integrable)
    computed = {f"table.{row}.{k}": solver.dim(family, k) for row, family in _GRADED_ROWS.items() for k in (1, 2, 3)}
    computed.update({f"table.d.{p}-{q}": solver.dim(F.D_PQ, (p, q)) for p, q in _D_CELLS})
    results = [
        _outcome(check_id, anchors[check_id],
                 None if computed[check_id] == expected[check_id]
                 else f"computed {computed[check_id]}, expected {fraction_text(expected[check_id])}",
                 detail=f"b_1 = {b.b[1]}, b^- = {b.b_minus}, h^1_(d+dc) = {h1}, h^-_J = {h_minus_J}")
        for check_id in table_ids()
    ]

    def check(check_id: str, witness: Optional[str]):
        results.append(_outcome(check_id, anchors[check_id], witness))

    forms_10 = suite.bigraded(1, 1, 0)
    delbar_closed = forms_10.intersect(kernel(suite.op("delbar", 1)))
    d_closed = forms_10.intersect(kernel(suite.op("d", 1)))
    harmonic_d = solver.space(F.D_PQ, (1, 0))
    harmonic_delbar = solver.space(F.DELBAR_PQ, (1, 0))
    check("identity.delbar-closed-10", _space_witness(delbar_closed, harmonic_d))
    check("identity.harmonic-10",
          _space_witness(harmonic_d, harmonic_delbar) or _space_witness(harmonic_d, d_closed))
    check("identity.star-10", _space_witness(
        harmonic_delbar.image(suite.op("star", 1)), solver.space(F.DEL_DELBAR_PQ, (2, 1))))
    check("identity.star-01", _space_witness(
        solver.space(F.DELBAR_PQ, (0, 1)).image(suite.op("star", 1)), solver.space(F.DEL_DELBAR_PQ, (1, 2))))
    check("identity.dc-degree-1", _dimension_witness(h1, 2 * harmonic_d.dim))

    odd = {(p, q): solver.dim(F.D_PQ, (p, q)) for p, q in ((1, 0), (0, 1), (2, 1), (1, 2))}
    witness = None
    for (p, q), value in odd.items():
        if value != harmonic_delbar.dim:
            witness = f"h^({p},{q})_d = {value} but h^(1,0)_delbar = {harmonic_delbar.dim}"
            break
    check("identity.odd-d-numbers", witness)
    check("dimension.delbar-11", _dimension_witness(solver.dim(F.DELBAR_PQ, (1, 1)), b.b_minus + 1))

    witness = None
    for k in range(suite.n + 1):
        left, right = solver.dim(F.DELTA_K, k), solver.dim(F.DELTA_DELTABAR_K, k)
        if left != right:
            witness = f"degree {k}: {left} != {right}"
            break
    check("duality.deltabar-equals-delta-deltabar", witness)
    return sorted(results, key=lambda r: r.id)

# ==================== Suites ====================

SUITES: Dict[str, Callable[[OperatorSuite, HarmonicSolver], List[CheckResult]]] = {
    "structural": lambda suite, solver: verify_structural(suite),
    "almost-hermitian": verify_almost_hermitian,
    "almost-kahler": verify_almost_kahler,
}


def run_suites(suite: OperatorSuite, solver: Optional[HarmonicSolver] = None,
               names: Optional[Sequence[str]] = None) -> List[CheckResult]:
    """Run the named suites (all by default) and return every result sorted by id"""
    names = list(names or SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise InputError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    solver = solver or HarmonicSolver(suite)
    results = [result for name in names for result in SUITES[name](suite, solver)]
    failed = [r.id for r in results if r.status == CheckStatus.FAIL]
    if failed:
        logger.warning(f"{suite.spec.name}: {len(failed)} check(s) failed: {', '.join(failed)}")
    else:
        logger.info(f"✓ {suite.spec.name}: {len(results)} checks, none failed")
    return sorted(results, key=lambda r: r.id)

# ==================== Sweeps ====================

# cells whose value the almost Kahler theory pins independently of the metric
_CONSTANT_PREFIXES = ("delta_k[", "delta_deltabar_k[", "d_pq[", "d_dc_k[", "del_delbar_pq[")
_METRIC_DEPENDENT = ("del_delbar_pq[1,2]",)


def _sample(family: Callable[[Fraction], ManifoldSpec], value: Fraction) -> Tuple[SweepSample, Optional[ManifoldSpec]]:
    text = fraction_text(value)
    try:
        spec = family(value)
        validation, suite = validate_with_suite(spec)
        if not validation.passed:
            failed = ", ".join(e.check for e in validation.failures())
            logger.warning(f"Sample {text} is invalid: {failed}")
            return SweepSample(value=text, valid=False, error=f"validation failed: {failed}"), None
        solver = HarmonicSolver(suite)
        report = full_report(suite, solver)
        report.checks = run_suites(suite, solver)
    except (InputError, PreconditionError) as e:
        logger.warning(f"Sample {text} skipped: {e}")
        return SweepSample(value=text, valid=False, error=str(e)), None
    return SweepSample(value=text, valid=True, report=report), spec


def sweep(family: Callable[[Fraction], ManifoldSpec], parameter: str, values: Sequence[Fraction],
          name: str = "sweep", workers: int = SWEEP_WORKERS) -> SweepResult:
    """
    Recompute the report over a one-parameter family

    Args:
        family: builds the spec for one parameter value
        parameter: parameter name, for the result only
        values: at least two rational samples
        name: family name
        workers: thread count; results keep the input order

    Returns:
        SweepResult with per-sample reports, the variation table and the constancy checks
    """
    if len(values) < 2:
        raise InputError(f"a sweep needs at least two values, got {len(values)}")
    values = [Fraction(v) for v in values]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda v: _sample(family, v), values))
    else:
        outcomes = [_sample(family, v) for v in values]
    samples = [sample for sample, _ in outcomes]
    valid = [(sample, spec) for sample, spec in outcomes if sample.valid]

    variation: Dict[str, List[int]] = {}
    for sample, _ in valid:
        for cell, value in sample.report.cells().items():
            variation.setdefault(cell, [])
            if value not in variation[cell]:
                variation[cell].append(value)
    variation = {cell: sorted(seen) for cell, seen in variation.items()}
    varying = sorted(cell for cell, seen in variation.items() if len(seen) > 1)

    anchor = "table values do not depend on the almost Kahler metric"
    reasons = []
    if len(valid) < 2:
        reasons.append(f"{len(valid)} valid sample(s)")
    if not all(sample.report.flags.almost_kahler for sample, _ in valid):
        reasons.append("a sample is not almost Kahler")
    if len({spec.J for _, spec in valid}) > 1:
        reasons.append("J varies across samples")

    checks = []
    if reasons:
        checks.append(CheckResult(id="sweep.constancy", status=CheckStatus.NOT_APPLICABLE,
                                  anchor=anchor, detail="; ".join(reasons)))
    else:
        for cell in sorted(variation):
            if not cell.startswith(_CONSTANT_PREFIXES) or cell in _METRIC_DEPENDENT:
                continue
            seen = variation[cell]
            checks.append(_outcome(f"sweep.constant.{cell}", anchor,
                                   None if len(seen) == 1 else f"values {seen} across {parameter}"))
    result = SweepResult(
        name=name,
        parameter=parameter,
        values=[fraction_text(v) for v in values],
        samples=samples,
        variation=variation,
        varying=varying,
        constancy_checked=not reasons,
        checks=checks,
    )
    logger.info(f"✓ Swept {name} over {parameter} = {', '.join(result.values)}: {len(varying)} varying cell(s)")
    return result
