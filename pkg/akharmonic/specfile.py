# Line-oriented spec files: [meta], [algebra], [J] and [metric] sections

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union
import hashlib
import logging
import re

from sympy import Expr, Rational, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from akharmonic.errors import InputError, SpecSyntaxError
from akharmonic.models import ManifoldSpec

logger = logging.getLogger(__name__)

SECTIONS = ("meta", "algebra", "J", "metric")
REQUIRED_SECTIONS = ("algebra", "J", "metric")

_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_ENTRY_CHARS = re.compile(r"^[0-9A-Za-z_+\-*/()^ ]+$")
_IDENTIFIER = re.compile(r"[A-Za-z_]\w*")
_DECIMAL = re.compile(r"\d*\.\d*")
_SECTION = re.compile(r"^\[(\w+)\]$")
_D_LINE = re.compile(r"^d\s+e(\d+)\s*=\s*(.+)$")
_C_LINE = re.compile(r"^c\s+(\d+)\s+(\d+)\s+(\d+)\s*=\s*(.+)$")
_PARAM_LINE = re.compile(r"^param\s+([A-Za-z_]\w*)\s*=\s*(.+)$")
_NAME_LINE = re.compile(r"^name\s*=\s*(.+)$")
_DIM_LINE = re.compile(r"^dim\s+(\d+)$")
_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\([^()]*\)|\d+(?:/\d+)?|[A-Za-z_]\w*)\s*\*\s*)?e(\d+)\s*\^\s*e(\d+)\s*"
)


def fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse an integer or p/q, rejecting decimals"""
    text = text.strip()
    if "." in text:
        raise InputError(_float_message(text))
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}")


def _float_message(text: str) -> str:
    match = _DECIMAL.search(text)
    try:
        suggestion = fraction_text(Fraction(match.group(0)))
    except (AttributeError, ValueError, ZeroDivisionError):
        return "floats forbidden; write p/q"
    return f"floats forbidden; write {suggestion}"


def _parse_entry(text: str, symbols: Mapping[str, Symbol], line: int, column: int) -> Expr:
    if "." in text:
        raise SpecSyntaxError(_float_message(text), line, column)
    if not _ENTRY_CHARS.match(text):
        raise SpecSyntaxError(f"unexpected character in entry {text!r}", line, column)
    for name in _IDENTIFIER.findall(text):
        if name not in symbols:
            raise SpecSyntaxError(f"unknown parameter {name!r}", line, column)
    try:
        return parse_expr(text, local_dict=dict(symbols), transformations=_TRANSFORMATIONS)
    except Exception as e:
        raise SpecSyntaxError(f"cannot parse entry {text!r}: {e}", line, column)


def _evaluate(expr: Expr, values: Mapping[Symbol, Fraction]) -> Fraction:
    result = expr.subs({s: Rational(v.numerator, v.denominator) for s, v in values.items()})
    if not result.is_Rational:
        raise InputError(f"entry {expr} is not a rational number for {dict((str(s), str(v)) for s, v in values.items())}")
    return Fraction(int(result.p), int(result.q))


@dataclass
class SpecDocument:
    """A parsed spec file whose entries may still depend on parameters"""
    name: str
    dim: int
    brackets: Dict[Tuple[int, int, int], Expr] = field(default_factory=dict)
    J: List[List[Expr]] = field(default_factory=list)
    metric: List[List[Expr]] = field(default_factory=list)
    parameters: Dict[str, Fraction] = field(default_factory=dict)

    def instantiate(self, overrides: Optional[Mapping[str, Fraction]] = None) -> ManifoldSpec:
        """Substitute parameter values (defaults unless overridden) and build the spec"""
        values = dict(self.parameters)
        for key, value in (overrides or {}).items():
            if key not in values:
                raise InputError(f"spec {self.name} has no parameter {key!r}")
            values[key] = Fraction(value)
        substitution = {Symbol(key): value for key, value in values.items()}
        brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (k, i, j), expr in self.brackets.items():
            brackets.setdefault((i, j), {})[k] = _evaluate(expr, substitution)
        return ManifoldSpec.build(
            name=self.name,
            dim=self.dim,
            brackets=brackets,
            J=[[_evaluate(x, substitution) for x in row] for row in self.J],
            g=[[_evaluate(x, substitution) for x in row] for row in self.metric],
            parameters=list(values.items()),
        )


class _Parser:
    def __init__(self, text: str, default_name: str):
        self.lines = text.splitlines()
        self.document = SpecDocument(name=default_name, dim=0)
        self.symbols: Dict[str, Symbol] = {}
        self.seen: List[str] = []
        self.differentials: Dict[int, int] = {}
        self.origins: Dict[Tuple[int, int, int], int] = {}

    def parse(self) -> SpecDocument:
        section = None
        for number, raw in enumerate(self.lines, start=1):
            content = raw.split("#", 1)[0].rstrip()
            stripped = content.strip()
            if not stripped:
                continue
            offset = len(content) - len(content.lstrip()) + 1
            header = _SECTION.match(stripped)
            if header:
                section = header.group(1)
                if section not in SECTIONS:
                    raise SpecSyntaxError(f"unknown section [{section}]", number, offset)
                if section in self.seen:
                    raise SpecSyntaxError(f"duplicate section [{section}]", number, offset)
                if section in ("J", "metric") and not self.document.dim:
                    raise SpecSyntaxError(f"[{section}] before the algebra dimension", number, offset)
                self.seen.append(section)
                continue
            if section is None:
                raise SpecSyntaxError("content outside of any section", number, offset)
            getattr(self, f"_{section.lower()}_line")(stripped, number, offset, content)

        for required in REQUIRED_SECTIONS:
            if required not in self.seen:
                raise SpecSyntaxError(f"missing section [{required}]")
        for label, rows in (("J", self.document.J), ("metric", self.document.metric)):
            if len(rows) != self.document.dim:
                raise SpecSyntaxError(f"[{label}] has {len(rows)} rows, expected {self.document.dim}")
        return self.document

    def _meta_line(self, stripped: str, number: int, offset: int, content: str):
        param = _PARAM_LINE.match(stripped)
        if param:
            key, value = param.group(1), param.group(2)
            if key in self.symbols:
                raise SpecSyntaxError(f"parameter {key!r} declared twice", number, offset)
            if key in ("d", "c", "e") or re.fullmatch(r"e\d+", key):
                raise SpecSyntaxError(f"reserved parameter name {key!r}", number, offset)
            column = content.index(value) + 1
            expr = _parse_entry(value.strip(), {}, number, column)
            self.symbols[key] = Symbol(key)
            self.document.parameters[key] = _evaluate(expr, {})
            return
        name = _NAME_LINE.match(stripped)
        if name:
            self.document.name = name.group(1).strip()
            return
        raise SpecSyntaxError(f"expected 'name = ...' or 'param NAME = VALUE', got {stripped!r}", number, offset)

    def _algebra_line(self, stripped: str, number: int, offset: int, content: str):
        dim = _DIM_LINE.match(stripped)
        if dim:
            if self.document.dim:
                raise SpecSyntaxError("dimension declared twice", number, offset)
            self.document.dim = int(dim.group(1))
            if self.document.dim <= 0 or self.document.dim % 2:
                raise SpecSyntaxError(f"dimension must be a positive even integer, got {self.document.dim}",
                                      number, offset)
            return
        if not self.document.dim:
            raise SpecSyntaxError("'dim N' must come first in [algebra]", number, offset)
        d_line = _D_LINE.match(stripped)
        if d_line:
            self._differential(int(d_line.group(1)), d_line.group(2), number, content)
            return
        c_line = _C_LINE.match(stripped)
        if c_line:
            k, i, j = (self._frame_index(c_line.group(g), number, offset) for g in (1, 2, 3))
            if i == j:
                raise SpecSyntaxError(f"c {k + 1} {i + 1} {j + 1}: bracket of a vector with itself", number, offset)
            value = c_line.group(4)
            expr = _parse_entry(value.strip(), self.symbols, number, content.rindex(value) + 1)
            if i > j:
                i, j, expr = j, i, -expr
            self._store(k, i, j, expr, number, offset)
            return
        raise SpecSyntaxError(f"expected 'dim N', 'd eK = ...' or 'c K I J = ...', got {stripped!r}", number, offset)

    def _j_line(self, stripped: str, number: int, offset: int, content: str):
        self.document.J.append(self._row(stripped, number, content, "J"))

    def _metric_line(self, stripped: str, number: int, offset: int, content: str):
        self.document.metric.append(self._row(stripped, number, content, "metric"))

    def _row(self, stripped: str, number: int, content: str, label: str) -> List[Expr]:
        tokens = stripped.split()
        if len(tokens) != self.document.dim:
            raise SpecSyntaxError(f"[{label}] row has {len(tokens)} entries, expected {self.document.dim}",
                                  number, len(content) - len(content.lstrip()) + 1)
        row, start = [], 0
        for token in tokens:
            column = content.index(token, start)
            start = column + len(token)
            row.append(_parse_entry(token, self.symbols, number, column + 1))
        return row

    def _frame_index(self, text: str, number: int, column: int) -> int:
        index = int(text)
        if not 1 <= index <= self.document.dim:
            raise SpecSyntaxError(f"frame index {index} outside 1..{self.document.dim}", number, column)
        return index - 1

    def _store(self, k: int, i: int, j: int, expr: Expr, number: int, column: int):
        key = (k, i, j)
        if key in self.origins:
            raise SpecSyntaxError(f"c^{k + 1}_{i + 1}{j + 1} given twice (first on line {self.origins[key]})",
                                  number, column)
        self.origins[key] = number
        if expr != 0:
            self.document.brackets[key] = expr

    def _differential(self, generator: int, rhs: str, number: int, content: str):
        k = self._frame_index(str(generator), number, 1)
        if k in self.differentials:
            raise SpecSyntaxError(f"d e{k + 1} given twice (first on line {self.differentials[k]})", number, 1)
        self.differentials[k] = number
        start = content.index("=") + 1
        body = content[start:]
        if body.strip() == "0":
            return
        position, first = 0, True
        while position < len(body) and body[position:].strip():
            term = _TERM.match(body, position)
            if not term or term.end() == position or (not first and not term.group(1)):
                raise SpecSyntaxError(f"cannot read a term 'coef*ei^ej' in {body.strip()!r}",
                                      number, start + position + 1)
            sign, coefficient, a, b = term.groups()
            column = start + term.start() + 1
            expr = _parse_entry(coefficient.strip("()") if coefficient else "1", self.symbols, number, column)
            if sign == "-":
                expr = -expr
            i, j = self._frame_index(a, number, column), self._frame_index(b, number, column)
            if i == j:
                raise SpecSyntaxError(f"e{i + 1}^e{j + 1} vanishes", number, column)
            if i > j:
                i, j, expr = j, i, -expr
            # de^k = -sum c^k_ij e^i ^ e^j
            self._store(k, i, j, -expr, number, column)
            position, first = term.end(), False


def parse_document(text: str, source: str = "<spec>") -> SpecDocument:
    """
    Parse spec text into a document with unsubstituted parameters

    Args:
        text: spec file contents
        source: name used when the file carries no [meta] name

    Returns:
        SpecDocument ready for instantiate()
    """
    document = _Parser(text, default_name=Path(source).stem or source).parse()
    logger.info(f"✓ Parsed spec {document.name} (dim {document.dim}, parameters {list(document.parameters)})")
    return document


def parse_text(text: str, params: Optional[Mapping[str, Fraction]] = None, source: str = "<spec>") -> ManifoldSpec:
    return parse_document(text, source).instantiate(params)


def read_document(path: Union[str, Path]) -> SpecDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read spec file {path}: {e}")
    return parse_document(text, source=str(path))


def parse_spec(path: Union[str, Path], params: Optional[Mapping[str, Fraction]] = None) -> ManifoldSpec:
    return read_document(path).instantiate(params)


def serialize(spec: ManifoldSpec) -> str:
    """Canonical text: explicit c-triples and fully substituted matrices"""
    lines = ["[meta]", f"name = {spec.name}"]
    lines += [f"param {key} = {fraction_text(value)}" for key, value in spec.parameters]
    lines += ["", "[algebra]", f"dim {spec.dim}"]
    for k in range(spec.dim):
        for i in range(spec.dim):
            for j in range(i + 1, spec.dim):
                value = spec.c(k, i, j)
                if value:
                    lines.append(f"c {k + 1} {i + 1} {j + 1} = {fraction_text(value)}")
    for label, matrix in (("J", spec.J), ("metric", spec.g)):
        lines += ["", f"[{label}]"]
        lines += [" ".join(fraction_text(x) for x in row) for row in matrix]
    return "\n".join(lines) + "\n"


def digest(spec: ManifoldSpec) -> str:
    return "sha256:" + hashlib.sha256(serialize(spec).encode("utf-8")).hexdigest()
