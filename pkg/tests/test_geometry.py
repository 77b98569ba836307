from fractions import Fraction
import random

import pytest

from akharmonic import catalog
from akharmonic.config import RANDOM_SAMPLES, RANDOM_SEED
from akharmonic.errors import PreconditionError
from akharmonic.exact import I_UNIT, ONE, ZERO
from akharmonic.forms import Form
from akharmonic.geometry import (
    build_suite, complex_coframe, exterior_derivative, nijenhuis, nijenhuis_table, random_structure, validate,
    validate_with_suite,
)
from akharmonic.harmonics import betti
from akharmonic.models import CheckStatus, ManifoldSpec
from akharmonic.verify import verify_structural

IDENTITY = [[1 if i == j else 0 for j in range(4)] for i in range(4)]


@pytest.mark.parametrize("entry_id", catalog.ids())
def test_catalog_entries_validate(entry_id):
    report = validate(catalog.load(entry_id))
    assert report.passed, [e.check for e in report.failures()]
    assert report.unimodular


def test_nijenhuis_of_kodaira_thurston():
    spec = catalog.load("kodaira-thurston-ak")
    assert nijenhuis(spec, spec.unit(0), spec.unit(1)) == [0, 0, 0, 1]
    report = validate(spec)
    assert report.integrable is False
    assert report.nijenhuis["e1,e2"] == "e4"


def test_integrable_structures():
    for entry_id in ("kodaira-thurston-herm", "t4-kahler"):
        spec = catalog.load(entry_id)
        assert nijenhuis_table(spec) == {}
        assert validate(spec).integrable is True


def test_j_squared_failure_has_witness():
    spec = catalog.load("t4-kahler").with_structure(IDENTITY, IDENTITY)
    report = validate(spec)
    assert not report.passed
    failed = {e.check: e for e in report.failures()}
    assert "J-squared" in failed
    assert failed["J-squared"].witness == "(J^2)[1][1] = 1"
    assert report.integrable is None
    with pytest.raises(PreconditionError):
        build_suite(spec)


def test_validation_hands_back_its_suite():
    report, suite = validate_with_suite(catalog.load("kodaira-thurston-ak"))
    assert report.passed
    assert suite.almost_kahler and suite.pfaffian == -1
    report, suite = validate_with_suite(catalog.load("t4-kahler").with_structure(IDENTITY, IDENTITY))
    assert not report.passed
    assert suite is None


def test_indefinite_metric_is_rejected():
    torus = catalog.load("t4-kahler")
    spec = torus.with_structure(torus.J, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    failed = {e.check: e for e in validate(spec).failures()}
    assert list(failed) == ["metric-positive"]
    assert failed["metric-positive"].witness == "x = e3 gives g(x, x) = -1"


def test_non_unimodular_algebra():
    torus = catalog.load("t4-kahler")
    spec = ManifoldSpec.build("affine", 4, {(0, 1): {1: 1}}, torus.J, IDENTITY)
    report = validate(spec)
    assert report.unimodular is False
    assert [e.check for e in report.failures()] == ["unimodular"]
    suite = build_suite(spec)
    assert not suite.unimodular
    with pytest.raises(PreconditionError):
        betti(suite)


def test_broken_jacobi_identity():
    torus = catalog.load("t4-kahler")
    # [e1,e2] = e3, [e1,e3] = e1: the cyclic sum on e1, e2, e3 is -e3
    spec = ManifoldSpec.build("broken", 4, {(0, 1): {2: 1}, (0, 2): {0: 1}}, torus.J, IDENTITY)
    checks = {e.check: e.passed for e in validate(spec).entries}
    assert checks["jacobi"] is False
    assert checks["d-squared"] is False
    assert checks["jacobi-d-squared-agree"] is True


def test_complex_coframe_rows():
    phi, phibar = complex_coframe(catalog.load("kodaira-thurston-ak"))
    assert phi.row(0) == (ONE, ZERO, I_UNIT, ZERO)
    assert phi.row(1) == (ZERO, ONE, ZERO, I_UNIT)
    assert phibar.row(0) == (ONE, ZERO, -I_UNIT, ZERO)
    torus_phi, _ = complex_coframe(catalog.load("t4-kahler"))
    assert torus_phi.row(0) == (ONE, I_UNIT, ZERO, ZERO)


def test_exterior_derivative():
    d = exterior_derivative(catalog.load("kodaira-thurston-ak"))
    e4 = Form.monomial(4, (3,))
    assert d[1].apply(e4.to_vector()) == Form.monomial(4, (0, 1)).to_vector()
    assert d[2].apply(Form.monomial(4, (2, 3)).to_vector()) == Form.monomial(4, (0, 1, 2), -1).to_vector()
    assert d[2].apply(Form.monomial(4, (0, 3)).to_vector()) == Form.zero(4, 3).to_vector()


def test_pfaffian_and_star_orientation(kt_ak, kt_herm, torus):
    assert kt_ak.pfaffian == -1
    assert kt_herm.pfaffian == 1
    assert torus.pfaffian == 1
    e13 = Form.monomial(4, (0, 2)).to_vector()
    assert kt_ak.op("star_real", 2).apply(e13) == Form.monomial(4, (1, 3)).to_vector()
    assert kt_herm.op("star_real", 2).apply(e13) == Form.monomial(4, (1, 3), -1).to_vector()


def test_structure_flags(kt_ak, kt_herm, torus):
    assert (kt_ak.integrable, kt_ak.almost_kahler, kt_ak.mubar_vanishes) == (False, True, False)
    assert (kt_herm.integrable, kt_herm.almost_kahler, kt_herm.mubar_vanishes) == (True, False, True)
    assert (torus.integrable, torus.almost_kahler, torus.mubar_vanishes) == (True, True, True)


def test_theta_coordinates_round_trip(kt_ak):
    omega = kt_ak.omega
    assert kt_ak.from_theta(2, kt_ak.to_theta(omega)) == omega
    assert kt_ak.volume == Form.monomial(4, (0, 1, 2, 3), Fraction(-1))


def test_operator_outside_range_is_empty(kt_ak):
    assert kt_ak.op("d", -1).cols == 0
    assert kt_ak.op("d", -1).rows == 1
    with pytest.raises(PreconditionError):
        kt_ak.op("laplacian", 1)


@pytest.mark.slow
@pytest.mark.parametrize("entry_id", catalog.ids())
def test_random_structures_pass_structural_checks(entry_id):
    rng = random.Random(RANDOM_SEED)
    base = catalog.load(entry_id)
    for _ in range(RANDOM_SAMPLES):
        spec = random_structure(base, rng)
        assert validate(spec).passed
        results = verify_structural(build_suite(spec))
        assert not [r.id for r in results if r.status == CheckStatus.FAIL]
