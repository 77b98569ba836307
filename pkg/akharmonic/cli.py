# Command line: validate, report, verify, sweep and catalog

from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import click

from akharmonic import catalog
from akharmonic.config import DEFAULT_FORMAT, SUPPORTED_FORMATS, SWEEP_WORKERS
from akharmonic.errors import ConsistencyError, HarmonicError, InputError
from akharmonic.geometry import build_suite, validate
from akharmonic.harmonics import HarmonicSolver, full_report
from akharmonic.models import CheckStatus
from akharmonic.schemas import HarmonicReport, SweepResult, ValidationReport, VerificationReport
from akharmonic.specfile import SpecDocument, digest, parse_rational, read_document
from akharmonic.verify import SUITES, run_suites, sweep as run_sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_CONSISTENCY = 3

# ==================== Helpers ====================

def _document(target: str) -> SpecDocument:
    """A catalog id or a path to a spec file"""
    if target in catalog.CATALOG:
        return catalog.entry(target).document()
    if Path(target).exists():
        return read_document(target)
    raise InputError(f"{target!r} is neither a catalog id ({', '.join(catalog.ids())}) nor a spec file")


def _overrides(params: Sequence[str]) -> Dict[str, Fraction]:
    values = {}
    for item in params:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise InputError(f"--param expects NAME=VALUE, got {item!r}")
        values[name.strip()] = parse_rational(value)
    return values


def _emit(text: str, out: Optional[str]):
    """Write the whole buffered output at once"""
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot write {out}: {e}")
        click.echo(f"✓ Wrote {out}")
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _run(action):
    """Map library errors onto exit codes"""
    try:
        code = action()
    except ConsistencyError as e:
        logger.error(f"Consistency failure: {e}")
        click.echo(f"Internal consistency failure: {e}", err=True)
        raise SystemExit(EXIT_CONSISTENCY)
    except HarmonicError as e:
        click.echo(f"Error: {e}", err=True)
        raise SystemExit(EXIT_INPUT)
    raise SystemExit(code or EXIT_OK)

# ==================== Text layouts ====================

def _validation_text(report: ValidationReport) -> str:
    lines = [f"{report.name} (dim {report.dim})"]
    for entry in report.entries:
        mark = "✓" if entry.passed else "✗"
        line = f"  {mark} {entry.check}"
        if entry.witness:
            line += f": {entry.witness}"
        lines.append(line)
    lines.append(f"integrable: {report.integrable}")
    lines.append(f"unimodular: {report.unimodular}")
    for pair, value in report.nijenhuis.items():
        lines.append(f"  N_J({pair}) = {value}")
    return "\n".join(lines) + "\n"


def _row(label: str, cells: Sequence[str], widths: Sequence[int]) -> str:
    return f"{label:<22}|" + "|".join(f"{cell:^{width}}" for cell, width in zip(cells, widths))


def _report_text(report: HarmonicReport) -> str:
    h, b = report.h, report.betti
    flags = report.flags
    lines = [
        f"{report.name}  ({report.level}, orientation {report.orientation:+d})",
        f"{report.spec_digest}",
        f"integrable={flags.integrable}  almost_kahler={flags.almost_kahler}  unimodular={flags.unimodular}",
        f"b = {' '.join(str(x) for x in b.b)}   b+ = {b.b_plus}   b- = {b.b_minus}   h^-_J = {h.h_minus_J}",
        "",
    ]
    widths = (13, 19, 13)

    def graded(values: List[int]) -> List[str]:
        return [str(values[1]), str(values[2]), str(values[3])]

    lines.append(_row("k", ["1", "2", "3"], widths))
    lines.append(_row("(p,q)", ["(1,0) (0,1)", "(2,0) (1,1) (0,2)", "(2,1) (1,2)"], widths))
    lines.append("-" * (22 + sum(widths) + len(widths)))
    lines.append(_row("h^k_deltabar", graded(h.delta_k), widths))
    lines.append(_row("h^k_delta+deltabar", graded(h.delta_deltabar_k), widths))
    d = h.d_pq
    lines.append(_row("h^{p,q}_d", [
        f"{d['1,0']:>3}   {d['0,1']:<3}",
        f"{d['2,0']:>3}   {d['1,1']:^3}   {d['0,2']:<3}",
        f"{d['2,1']:>3}   {d['1,2']:<3}",
    ], widths))
    lines.append(_row("h^k_d+dc", graded(h.d_dc_k), widths))
    lines.append("")
    lines.append(f"h^k_deltabar, k = 0..4:        {' '.join(str(x) for x in h.delta_k)}")
    lines.append(f"h^k_delta+deltabar, k = 0..4:  {' '.join(str(x) for x in h.delta_deltabar_k)}")
    lines.append(f"h^k_d+dc, k = 0..4:            {' '.join(str(x) for x in h.d_dc_k)}")
    lines.append("h^{p,q}_delbar          h^{p,q}_del+delbar")
    for p, row in enumerate(h.delbar):
        right = " ".join(str(h.del_delbar_pq[f"{p},{q}"]) for q in range(len(row)))
        lines.append(f"  p={p}: {' '.join(str(x) for x in row):<16} p={p}: {right}")
    if report.checks:
        lines.append("")
        lines.extend(_check_lines(report.checks))
    return "\n".join(lines) + "\n"


def _check_lines(checks) -> List[str]:
    marks = {CheckStatus.PASS: "✓", CheckStatus.FAIL: "✗", CheckStatus.NOT_APPLICABLE: "-"}
    lines = []
    for check in checks:
        line = f"  {marks[check.status]} {check.id}"
        if check.witness:
            line += f": {check.witness}"
        elif check.status == CheckStatus.NOT_APPLICABLE and check.detail:
            line += f" ({check.detail})"
        lines.append(line)
    counts = {status: sum(1 for c in checks if c.status == status) for status in CheckStatus}
    lines.append(f"{counts[CheckStatus.PASS]} passed, {counts[CheckStatus.FAIL]} failed, "
                 f"{counts[CheckStatus.NOT_APPLICABLE]} not applicable")
    return lines


def _sweep_text(result: SweepResult) -> str:
    lines = [f"{result.name}: sweep over {result.parameter} = {', '.join(result.values)}"]
    for sample in result.samples:
        if not sample.valid:
            lines.append(f"  {result.parameter} = {sample.value}: invalid ({sample.error})")
            continue
        report = sample.report
        failed = [c.id for c in report.checks if c.status == CheckStatus.FAIL]
        lines.append(
            f"  {result.parameter} = {sample.value}: h^1_d+dc = {report.h.d_dc_k[1]}, "
            f"h^-_J = {report.h.h_minus_J}, almost_kahler = {report.flags.almost_kahler}, "
            f"failed checks = {len(failed)}"
        )
    lines.append("varying cells: " + (", ".join(
        f"{cell} {result.variation[cell]}" for cell in result.varying) or "none"))
    lines.append("")
    lines.extend(_check_lines(result.checks))
    return "\n".join(lines) + "\n"

# ==================== Commands ====================

_format_option = click.option("--format", "fmt", type=click.Choice(SUPPORTED_FORMATS), default=DEFAULT_FORMAT,
                              show_default=True, help="Output layout")
_out_option = click.option("--out", type=click.Path(dir_okay=False), default=None,
                           help="Write output to this file instead of stdout")
_param_option = click.option("--param", "params", multiple=True, metavar="NAME=VALUE",
                             help="Override a spec parameter with a rational value (repeatable)")


@click.group()
def cli():
    """Exact harmonic numbers of invariant almost Hermitian structures on 4-dimensional Lie algebras."""


@cli.command("validate")
@click.argument("target")
@_param_option
@_format_option
@_out_option
def validate_command(target: str, params: Tuple[str, ...], fmt: str, out: Optional[str]):
    """Check a spec: Jacobi, unimodularity, J^2 = -1, metric, compatibility and integrability."""
    def action():
        spec = _document(target).instantiate(_overrides(params))
        report = validate(spec)
        text = report.model_dump_json(indent=2) + "\n" if fmt == "json" else _validation_text(report)
        _emit(text, out)
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED
    _run(action)


@cli.command("report")
@click.argument("target")
@_param_option
@_format_option
@_out_option
def report_command(target: str, params: Tuple[str, ...], fmt: str, out: Optional[str]):
    """Every harmonic number of a spec, laid out as the almost Kahler table."""
    def action():
        spec = _document(target).instantiate(_overrides(params))
        suite = build_suite(spec)
        solver = HarmonicSolver(suite)
        report = full_report(suite, solver)
        report.checks = run_suites(suite, solver)
        _emit(report.to_json() + "\n" if fmt == "json" else _report_text(report), out)
        return EXIT_OK
    _run(action)


@cli.command("verify")
@click.argument("target")
@_param_option
@click.option("--suite", "suites", multiple=True, type=click.Choice(list(SUITES)),
              help="Suite to run (repeatable; default all)")
@click.option("--strict", is_flag=True, help="Count not-applicable results of requested suites as failures")
@_format_option
@_out_option
def verify_command(target: str, params: Tuple[str, ...], suites: Tuple[str, ...], strict: bool,
                   fmt: str, out: Optional[str]):
    """Run the verification suites; exit 1 when an applicable check fails."""
    def action():
        spec = _document(target).instantiate(_overrides(params))
        suite = build_suite(spec)
        names = list(suites) or list(SUITES)
        report = VerificationReport(
            spec_digest=digest(spec),
            name=spec.name,
            suites=names,
            checks=run_suites(suite, HarmonicSolver(suite), names),
        )
        if fmt == "json":
            text = report.to_json() + "\n"
        else:
            text = "\n".join([f"{spec.name}: {', '.join(names)}"] + _check_lines(report.checks)) + "\n"
        _emit(text, out)
        return EXIT_CHECK_FAILED if report.failures(strict=strict and bool(suites)) else EXIT_OK
    _run(action)


@cli.command("sweep")
@click.argument("target")
@click.option("--param", "parameter", required=True, metavar="NAME", help="Parameter to vary")
@click.option("--values", required=True, metavar="CSV", help="Comma-separated rational values")
@click.option("--workers", type=int, default=SWEEP_WORKERS, show_default=True, help="Samples evaluated in parallel")
@_format_option
@_out_option
def sweep_command(target: str, parameter: str, values: str, workers: int, fmt: str, out: Optional[str]):
    """Recompute the report over rational values of one parameter."""
    def action():
        document = _document(target)
        if parameter not in document.parameters:
            raise InputError(f"spec {document.name} has no parameter {parameter!r}")
        samples = [parse_rational(v) for v in values.split(",") if v.strip()]
        result = run_sweep(lambda v: document.instantiate({parameter: v}), parameter, samples,
                           name=document.name, workers=workers)
        _emit(result.to_json() + "\n" if fmt == "json" else _sweep_text(result), out)
        failed = [c for c in result.checks if c.status == CheckStatus.FAIL]
        failed += [c for s in result.samples if s.valid for c in s.report.checks if c.status == CheckStatus.FAIL]
        return EXIT_CHECK_FAILED if failed else EXIT_OK
    _run(action)


@cli.group("catalog", invoke_without_command=True)
@click.pass_context
def catalog_group(ctx: click.Context):
    """List the built-in specs."""
    if ctx.invoked_subcommand is None:
        lines = [f"{item.id:<24}{item.summary}" for item in catalog.CATALOG.values()]
        _emit("\n".join(lines) + "\n", None)


@catalog_group.command("show")
@click.argument("entry_id")
def catalog_show(entry_id: str):
    """Print the spec text of a catalog entry."""
    _run(lambda: _emit(catalog.entry(entry_id).text, None))


@catalog_group.command("export")
@click.argument("directory", type=click.Path(file_okay=False))
def catalog_export(directory: str):
    """Write every catalog entry to DIRECTORY."""
    def action():
        paths = catalog.export(directory)
        _emit("\n".join(f"✓ {path}" for path in paths) + "\n", None)
    _run(action)
