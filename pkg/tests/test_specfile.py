import re
from fractions import Fraction

import pytest

from akharmonic import catalog
from akharmonic.errors import InputError, SpecSyntaxError
from akharmonic.specfile import digest, parse_document, parse_rational, parse_spec, parse_text, serialize

HEADER = """\
[meta]
name = sample
param s = 2

[algebra]
dim 4
"""

TAIL = """
[J]
0 -1 0 0
1 0 0 0
0 0 0 -1
0 0 1 0

[metric]
1 0 0 0
0 1 0 0
0 0 s 0
0 0 0 s
"""


def test_differential_lines_set_structure_constants():
    spec = parse_text(HEADER + "d e4 = e1^e2 - 1/2*e1^e3\n" + TAIL)
    assert spec.c(3, 0, 1) == -1
    assert spec.c(3, 1, 0) == 1
    assert spec.c(3, 0, 2) == Fraction(1, 2)
    assert spec.g[2][2] == 2
    assert spec.parameters == (("s", Fraction(2)),)


def test_bracket_lines_and_swapped_indices():
    spec = parse_text(HEADER + "c 4 2 1 = 1\n" + TAIL)
    assert spec.c(3, 0, 1) == -1


def test_parameter_expressions():
    spec = catalog.load("kodaira-thurston-jt", {"t": Fraction(1, 2)})
    assert spec.J[1][3] == Fraction(-5, 4)
    assert spec.g[0][0] == Fraction(5, 4)


def test_overrides():
    spec = catalog.load("kodaira-thurston-ak", {"t": Fraction(2)})
    assert spec.g[1][1] == 2
    assert dict(spec.parameters) == {"t": 2}
    with pytest.raises(InputError, match="no parameter 'u'"):
        catalog.load("kodaira-thurston-ak", {"u": Fraction(1)})


def test_floats_are_forbidden():
    with pytest.raises(SpecSyntaxError, match="floats forbidden; write 1/2") as info:
        parse_document(HEADER + TAIL.replace("0 0 s 0", "0 0 0.5 0"))
    assert info.value.line == 17
    assert info.value.column == 5
    with pytest.raises(InputError, match="floats forbidden; write 1/4"):
        parse_rational("0.25")


def test_rationals():
    assert parse_rational(" -3/4 ") == Fraction(-3, 4)
    with pytest.raises(InputError):
        parse_rational("abc")
    with pytest.raises(InputError):
        parse_rational("1/0")


@pytest.mark.parametrize("text,message", [
    (HEADER + "d e4 = e1^e1\n" + TAIL, "vanishes"),
    (HEADER + "d e5 = e1^e2\n" + TAIL, "outside 1..4"),
    (HEADER + "d e4 = e1^e2\nd e4 = e1^e3\n" + TAIL, "given twice"),
    (HEADER + "c 4 1 2 = 1\nd e4 = e1^e2\n" + TAIL, "c^4_12 given twice (first on line 7)"),
    (HEADER + "d e4 = e1^e2\nc 4 1 2 = -1\n" + TAIL, "c^4_12 given twice (first on line 7)"),
    (HEADER + "d e4 = e1^e2 + e2^e1\n" + TAIL, "c^4_12 given twice"),
    (HEADER + "c 4 1 2 = 1\nc 4 2 1 = -1\n" + TAIL, "c^4_12 given twice"),
    (HEADER + "d e4 = u*e1^e2\n" + TAIL, "unknown parameter 'u'"),
    (HEADER + "d e4 = e1 e2\n" + TAIL, "cannot read a term"),
    (HEADER + TAIL + "\n[extra]\n", "unknown section"),
    (HEADER, "missing section [J]"),
    ("dim 4\n", "outside of any section"),
    (HEADER + TAIL.replace("0 0 0 s", "0 0 s"), "row has 3 entries"),
])
def test_syntax_errors(text, message):
    with pytest.raises(SpecSyntaxError, match=re.escape(message)):
        parse_document(text)


def test_syntax_error_location():
    text = HEADER + "d e4 = e1^e2 + e1 e3\n" + TAIL
    with pytest.raises(SpecSyntaxError) as info:
        parse_document(text)
    assert info.value.line == 7
    assert info.value.column > 1
    assert str(info.value).startswith("line 7, column")


def test_serialize_round_trip():
    for entry_id in catalog.ids():
        spec = catalog.load(entry_id)
        text = serialize(spec)
        assert parse_text(text) == spec
        assert serialize(parse_text(text)) == text


def test_digest_is_stable():
    spec = catalog.load("kodaira-thurston-ak")
    assert digest(spec).startswith("sha256:")
    assert digest(spec) == digest(catalog.load("kodaira-thurston-ak"))
    assert digest(spec) != digest(catalog.load("kodaira-thurston-ak", {"t": Fraction(2)}))


def test_spec_files(tmp_path):
    path = tmp_path / "torus.spec"
    path.write_text(catalog.T4_KAHLER, encoding="utf-8")
    assert parse_spec(path) == catalog.load("t4-kahler")
    with pytest.raises(InputError, match="cannot read"):
        parse_spec(tmp_path / "missing.spec")
