from fractions import Fraction

import pytest

from akharmonic import catalog
from akharmonic.errors import InputError
from akharmonic.specfile import parse_spec


def test_ids_and_entries():
    assert catalog.ids() == ["t4-kahler", "kodaira-thurston-ak", "kodaira-thurston-herm", "kodaira-thurston-jt"]
    assert catalog.entry("t4-kahler").expected["b[1]"] == 4
    with pytest.raises(InputError, match="unknown catalog id"):
        catalog.entry("k3")


def test_load_uses_default_parameters():
    spec = catalog.load("kodaira-thurston-ak")
    assert spec.name == "kodaira-thurston-ak"
    assert spec.parameters == (("t", Fraction(1)),)
    assert catalog.load("kodaira-thurston-jt").J[0][3] == 0


def test_export_round_trip(tmp_path):
    paths = catalog.export(tmp_path / "out")
    assert [p.stem for p in paths] == catalog.ids()
    for path in paths:
        assert parse_spec(path) == catalog.load(path.stem)


def test_export_to_a_file_fails(tmp_path):
    blocker = tmp_path / "taken"
    blocker.write_text("", encoding="utf-8")
    with pytest.raises(InputError, match="cannot export"):
        catalog.export(blocker)
