"""Command-line front end: ``ftm validate|classify|threats|templates``.

Exit codes: 0 success, 1 violations (or unmatched flows with --strict),
2 parse error, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from ftm.dsl import ParseError, parse_model
from ftm.model import ProcessClass, SystemModel
from ftm.report import FORMATS, render_report
from ftm.threats import ValidationRequired, enumerate_threats
from ftm.typology import builtin_typology, classify_model
from ftm.validator import ValidationReport, validation_report

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftm", description="Threat-model-as-code engine for carrier/channel system models.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=FORMATS, default="md", help="output format (default: md)")

    p = sub.add_parser("validate", help="check a model against the compatibility matrix")
    p.add_argument("file", help="model file (.ftm), or - for stdin")
    add_format(p)

    p = sub.add_parser("classify", help="match each flow against the built-in templates")
    p.add_argument("file", help="model file (.ftm), or - for stdin")
    p.add_argument("--class", dest="process_class", choices=[c.value for c in ProcessClass],
                   help="only consider templates of this process class")
    p.add_argument("--strict", action="store_true", help="exit 1 if any flow matches no template")
    add_format(p)

    p = sub.add_parser("threats", help="enumerate the threat list of a valid model")
    p.add_argument("file", help="model file (.ftm), or - for stdin")
    p.add_argument("-o", "--output", help="write the report to this path instead of stdout")
    add_format(p)

    p = sub.add_parser("templates", help="print the built-in typology catalog")
    add_format(p)
    return parser


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(
    args: Sequence[str],
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
    stdin: Optional[TextIO] = None,
) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    stdin = sys.stdin if stdin is None else stdin

    try:
        ns = build_parser().parse_args(list(args))
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    if ns.command == "templates":
        stdout.write(render_report(builtin_typology(), ns.format))
        return EXIT_OK

    try:
        text = _read(ns.file, stdin)
    except (OSError, UnicodeDecodeError) as exc:
        stderr.write(f"ftm: cannot read {ns.file}: {exc}\n")
        return EXIT_USAGE
    try:
        model = parse_model(text)
    except ParseError as exc:
        name = "<stdin>" if ns.file == "-" else ns.file
        stderr.write(f"{name}:{exc.line}:{exc.column}: {exc.code}: {exc.message}\n")
        return EXIT_PARSE

    if ns.command == "validate":
        report = validation_report(model)
        stdout.write(render_report(report, ns.format))
        return EXIT_OK if report.ok else EXIT_VIOLATIONS
    if ns.command == "classify":
        return _classify(model, ns, stdout)
    return _threats(model, ns, stdout)


def _classify(model: SystemModel, ns: argparse.Namespace, stdout: TextIO) -> int:
    report = validation_report(model)
    if not report.ok:
        stdout.write(render_report(report, ns.format))
        return EXIT_VIOLATIONS
    pclass = ProcessClass(ns.process_class) if ns.process_class else None
    result = classify_model(model, process_class=pclass)
    stdout.write(render_report(result, ns.format))
    if ns.strict and result.unmatched:
        return EXIT_VIOLATIONS
    return EXIT_OK


def _threats(model: SystemModel, ns: argparse.Namespace, stdout: TextIO) -> int:
    try:
        threats = enumerate_threats(model)
    except ValidationRequired as exc:
        stdout.write(render_report(ValidationReport(model.name, tuple(exc.violations)), ns.format))
        return EXIT_VIOLATIONS
    out = render_report(threats, ns.format)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
