from fractions import Fraction

import pytest

from akharmonic import catalog, geometry
from akharmonic.errors import InputError
from akharmonic.models import CheckStatus
from akharmonic.verify import (
    expected_table, run_suites, sweep, table_ids, verify_almost_hermitian, verify_almost_kahler, verify_structural,
)


def _statuses(results):
    return {r.id: r.status for r in results}


def _failures(results):
    return [(r.id, r.witness) for r in results if r.status == CheckStatus.FAIL]


@pytest.mark.parametrize("entry_id", catalog.ids())
def test_structural_identities_hold(assembled, entry_id):
    results = verify_structural(assembled.suite(entry_id))
    assert _failures(results) == []
    assert [r.id for r in results] == sorted(r.id for r in results)


def test_complex_identities_need_integrable_j(kt_ak, torus):
    torus_status = _statuses(verify_structural(torus))
    ak_status = _statuses(verify_structural(kt_ak))
    for check_id in ("complex.del-squared", "complex.delbar-squared", "complex.del-delbar", "complex.bott-chern"):
        assert torus_status[check_id] == CheckStatus.PASS
        assert ak_status[check_id] == CheckStatus.NOT_APPLICABLE


@pytest.mark.parametrize("entry_id", catalog.ids())
def test_almost_hermitian_suite(assembled, entry_id):
    results = verify_almost_hermitian(assembled.suite(entry_id), assembled.solver(entry_id))
    assert len(results) == 9
    assert all(r.status == CheckStatus.PASS for r in results), _failures(results)


@pytest.mark.parametrize("entry_id", ["t4-kahler", "kodaira-thurston-ak", "kodaira-thurston-jt"])
def test_almost_kahler_suite(assembled, entry_id):
    results = verify_almost_kahler(assembled.suite(entry_id), assembled.solver(entry_id))
    assert all(r.status == CheckStatus.PASS for r in results), _failures(results)
    assert set(table_ids()) <= {r.id for r in results}


def test_almost_kahler_suite_skips_hermitian_structure(kt_herm):
    results = verify_almost_kahler(kt_herm)
    assert {r.status for r in results} == {CheckStatus.NOT_APPLICABLE}
    assert "almost-kahler" in results[0].detail


def test_table_shape():
    ids = table_ids()
    assert len(ids) == 16
    assert len(set(ids)) == 16
    assert "table.d.2-0" in ids


def test_expected_table_values():
    table = expected_table(h1=2, b1=3, b_minus=2, h_minus_J=1, integrable=False)
    assert table["table.deltabar.2"] == 4
    assert table["table.d-dc.3"] == 3
    assert table["table.d.1-0"] == 1
    assert table["table.d.2-0"] == 0
    assert table["table.d.1-1"] == 3
    integrable = expected_table(h1=4, b1=4, b_minus=3, h_minus_J=2, integrable=True)
    assert integrable["table.d.0-2"] == 1
    assert integrable["table.delta-deltabar.2"] == 6
    assert expected_table(h1=3, b1=3, b_minus=0, h_minus_J=0, integrable=False)["table.d.2-1"] == Fraction(3, 2)


def test_run_suites(kt_ak):
    results = run_suites(kt_ak, names=["structural"])
    assert all(r.id.startswith(("structural.", "complex.")) for r in results)
    with pytest.raises(InputError, match="unknown suite"):
        run_suites(kt_ak, names=["structural", "kahler"])


def _family(entry_id):
    return lambda value: catalog.load(entry_id, {"t": value})


def test_almost_kahler_sweep_is_constant():
    result = sweep(_family("kodaira-thurston-ak"), "t", [Fraction(1), Fraction(2), Fraction(3)])
    assert result.constancy_checked
    assert result.values == ["1", "2", "3"]
    assert result.varying == []
    assert result.checks
    assert all(c.status == CheckStatus.PASS for c in result.checks)
    assert "sweep.constant.d_dc_k[1]" in {c.id for c in result.checks}
    assert "sweep.constant.del_delbar_pq[1,2]" not in {c.id for c in result.checks}


def test_sweep_over_hermitian_family_is_not_checked():
    result = sweep(_family("kodaira-thurston-herm"), "t", [Fraction(1), Fraction(2)])
    assert not result.constancy_checked
    assert [c.id for c in result.checks] == ["sweep.constancy"]
    assert result.checks[0].status == CheckStatus.NOT_APPLICABLE
    assert "not almost Kahler" in result.checks[0].detail


def test_sweep_with_varying_j_is_not_checked():
    result = sweep(_family("kodaira-thurston-jt"), "t", [Fraction(0), Fraction(1)], workers=2)
    assert not result.constancy_checked
    assert "J varies" in result.checks[0].detail
    assert [s.value for s in result.samples] == ["0", "1"]
    assert [s.report.cells()["d_dc_k[1]"] for s in result.samples] == [2, 2]


def test_invalid_samples_are_kept():
    result = sweep(_family("kodaira-thurston-ak"), "t", [Fraction(1), Fraction(-1), Fraction(2)])
    assert [s.valid for s in result.samples] == [True, False, True]
    assert "metric-positive" in result.samples[1].error
    assert result.constancy_checked


def test_sweep_needs_two_values():
    with pytest.raises(InputError):
        sweep(_family("kodaira-thurston-ak"), "t", [Fraction(1)])


def test_sweep_assembles_operators_once_per_sample(monkeypatch):
    built = []
    assemble = geometry.build_suite

    def counting(spec, *args, **kwargs):
        built.append(dict(spec.parameters)["t"])
        return assemble(spec, *args, **kwargs)

    monkeypatch.setattr(geometry, "build_suite", counting)
    result = sweep(_family("kodaira-thurston-ak"), "t", [Fraction(1), Fraction(2)], workers=1)
    assert all(s.valid for s in result.samples)
    assert built == [1, 2]
