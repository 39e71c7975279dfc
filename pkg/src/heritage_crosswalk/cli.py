"""Command-line entry point: ``ch-crosswalk {convert,validate,matrix,roundtrip}``.

Exit codes: 0 ok, 2 usage, 3 parse failure, 4 schema violation, 5 loss
(strict mode, or a non-empty round-trip diff), 6 I/O failure. Directory
inputs are processed file by file and return the worst status.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .codecs import decode, encode
from .codecs.model import DEFAULT_BASE_URI, mint_uri
from .crosswalk import builtin_table, coverage_matrix, exact_diff, map_backward, map_forward
from .errors import (
    CodecError,
    InvalidBase,
    MalformedDocument,
    SchemaViolation,
    UnknownQualifier,
)
from .pivot import parse_pivot, read_pivot, serialize_pivot, validate_pivot
from .reporting import render_loss, summarize
from .standards import Standard

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SCHEMA = 4
EXIT_LOSS = 5
EXIT_IO = 6

BASE_URI_ENV = "CH_CROSSWALK_BASE_URI"
PIVOT = "pivot"


@dataclass(frozen=True)
class CliConfig:
    command: str
    source: str | None = None
    target: str | None = None
    input_path: Path | None = None
    output_path: Path | None = None
    loss_report_path: Path | None = None
    base_uri: str = DEFAULT_BASE_URI
    strict: bool = False
    fmt: str | None = None


class CliFailure(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _standard_token(text: str) -> str:
    if text.strip().lower() == PIVOT:
        return PIVOT
    try:
        return Standard.parse(text).value
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown standard {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ch-crosswalk", description="Cultural-heritage metadata crosswalk.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_from=False, needs_to=False):
        p.add_argument("--input", type=Path, required=True)
        p.add_argument("--output", type=Path)
        p.add_argument("--base-uri")
        if needs_from:
            p.add_argument("--from", dest="source", type=_standard_token, required=True)
        if needs_to:
            p.add_argument("--to", "--via", dest="target", type=_standard_token, required=True)

    convert = sub.add_parser("convert", help="convert records between pivot JSON and the standards")
    common(convert, needs_from=True, needs_to=True)
    convert.add_argument("--loss-report", type=Path)
    convert.add_argument("--strict", action="store_true", help="fail with status 5 when anything is dropped")
    convert.add_argument("--format", choices=("json", "text"), default="json", help="loss report format")

    validate = sub.add_parser("validate", help="check records against the pivot schema")
    common(validate)
    validate.add_argument("--from", dest="source", type=_standard_token, default=PIVOT)

    matrix = sub.add_parser("matrix", help="print the coverage matrix")
    matrix.add_argument("--format", choices=("csv", "markdown", "json"), default="csv")
    matrix.add_argument("--output", type=Path)

    roundtrip = sub.add_parser("roundtrip", help="pivot -> standard -> pivot, diffing Exact properties")
    common(roundtrip, needs_to=True)
    roundtrip.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def write_atomic(path: Path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_text(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CliFailure(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CliFailure(EXIT_PARSE, f"{path}: not UTF-8 ({exc.reason})") from None


def _emit(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        write_atomic(path, text)
    except OSError as exc:
        raise CliFailure(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from None


def _suffix(token: str) -> str:
    return ".json" if token == PIVOT else Standard(token).file_suffix


def _inputs(path: Path, token: str) -> list[Path]:
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.is_file() and p.suffix == _suffix(token))
    if not path.exists():
        raise CliFailure(EXIT_IO, f"no such input: {path}")
    return [path]


def _read_record(path: Path, token: str, warn):
    """Read one input as a validated pivot record."""
    text = _read_text(path)
    if token == PIVOT:
        return parse_pivot(text)
    model = decode(text, Standard(token))
    record, ambiguities = map_backward(model)
    for a in ambiguities:
        warn(f"{path}: {a}")
    violations = validate_pivot(record)
    if violations:
        raise SchemaViolation(f"recovered record is invalid: {violations[0]}", violations)
    return record


def _failure_status(exc: Exception) -> int:
    if isinstance(exc, CliFailure):
        return exc.status
    if isinstance(exc, (MalformedDocument, CodecError)):
        return EXIT_PARSE
    if isinstance(exc, (SchemaViolation, UnknownQualifier)):
        return EXIT_SCHEMA
    if isinstance(exc, InvalidBase):
        return EXIT_USAGE
    if isinstance(exc, OSError):
        return EXIT_IO
    raise exc


def _convert_one(cfg: CliConfig, path: Path, out: Path | None, loss_out: Path | None, warn):
    record = _read_record(path, cfg.source, warn)
    if cfg.target == PIVOT:
        _emit(out, serialize_pivot(record))
        return EXIT_OK, None
    model, report = map_forward(record, Standard(cfg.target), builtin_table(), cfg.base_uri)
    _emit(out, encode(model).text)
    if loss_out is not None:
        _emit(loss_out, render_loss(report, cfg.fmt or "json"))
    return (EXIT_LOSS if cfg.strict and report.lossy else EXIT_OK), report


def cmd_convert(cfg: CliConfig, warn) -> int:
    if cfg.source == cfg.target:
        raise CliFailure(EXIT_USAGE, "--from and --to must differ")
    mint_uri("x", cfg.base_uri)  # reject a bad base before touching files
    files = _inputs(cfg.input_path, cfg.source)
    if not cfg.input_path.is_dir():
        status, _ = _convert_one(cfg, files[0], cfg.output_path, cfg.loss_report_path, warn)
        return status

    if cfg.output_path is None:
        raise CliFailure(EXIT_USAGE, "a directory input needs --output DIR")
    loss_ext = ".loss.json" if (cfg.fmt or "json") == "json" else ".loss.txt"
    status, reports, failures = EXIT_OK, [], []
    for path in files:
        out = cfg.output_path / (path.stem + _suffix(cfg.target))
        loss_out = cfg.loss_report_path / (path.stem + loss_ext) if cfg.loss_report_path else None
        try:
            one, report = _convert_one(cfg, path, out, loss_out, warn)
        except Exception as exc:  # noqa: BLE001 - one bad file must not stop the batch
            one = _failure_status(exc)
            failures.append((str(path), str(exc)))
            warn(f"{path}: {exc}")
            report = None
        if report is not None:
            reports.append(report)
        status = max(status, one)
    summary = summarize(reports)
    summary.failures.extend(failures)
    sys.stdout.write(summary.render("json" if cfg.fmt == "json" else "text"))
    return status


def cmd_validate(cfg: CliConfig, warn) -> int:
    status = EXIT_OK
    for path in _inputs(cfg.input_path, cfg.source):
        try:
            if cfg.source == PIVOT:
                violations = validate_pivot(read_pivot(_read_text(path)))
            else:
                record, ambiguities = map_backward(decode(_read_text(path), Standard(cfg.source)))
                for a in ambiguities:
                    warn(f"{path}: {a}")
                violations = validate_pivot(record)
        except Exception as exc:  # noqa: BLE001
            print(f"{path}: {exc}")
            status = max(status, _failure_status(exc))
            continue
        if violations:
            status = max(status, EXIT_SCHEMA)
            for v in violations:
                print(f"{path}: {v}")
        else:
            print(f"{path}: ok")
    return status


def cmd_matrix(cfg: CliConfig, warn) -> int:
    matrix = coverage_matrix(builtin_table())
    if cfg.fmt == "markdown":
        text = matrix.to_markdown()
    elif cfg.fmt == "json":
        text = json.dumps(matrix.to_dict(), ensure_ascii=False, indent=2) + "\n"
    else:
        text = matrix.to_csv()
    _emit(cfg.output_path, text)
    return EXIT_OK


def cmd_roundtrip(cfg: CliConfig, warn) -> int:
    if cfg.target == PIVOT:
        raise CliFailure(EXIT_USAGE, "roundtrip needs a standard to go through")
    standard = Standard(cfg.target)
    status = EXIT_OK
    lines = []
    for path in _inputs(cfg.input_path, PIVOT):
        try:
            record = parse_pivot(_read_text(path))
            model, _ = map_forward(record, standard, builtin_table(), cfg.base_uri)
            recovered, _ = map_backward(decode(encode(model).text, standard))
        except Exception as exc:  # noqa: BLE001
            lines.append(f"{path}: {exc}")
            status = max(status, _failure_status(exc))
            continue
        diff = exact_diff(record, recovered, standard)
        if diff:
            status = max(status, EXIT_LOSS)
            lines += [f"{path}: {d}" for d in diff]
        else:
            lines.append(f"{path}: no differences via {standard.display_name}")
    _emit(cfg.output_path, "\n".join(lines) + "\n")
    return status


COMMANDS = {"convert": cmd_convert, "validate": cmd_validate, "matrix": cmd_matrix, "roundtrip": cmd_roundtrip}


def config_from_args(args: argparse.Namespace, environ=os.environ) -> CliConfig:
    base = getattr(args, "base_uri", None) or environ.get(BASE_URI_ENV) or DEFAULT_BASE_URI
    return CliConfig(
        command=args.command,
        source=getattr(args, "source", None),
        target=getattr(args, "target", None),
        input_path=getattr(args, "input", None),
        output_path=getattr(args, "output", None),
        loss_report_path=getattr(args, "loss_report", None),
        base_uri=base,
        strict=getattr(args, "strict", False),
        fmt=getattr(args, "format", None),
    )


def run(cfg: CliConfig) -> int:
    warn = lambda msg: print(msg, file=sys.stderr)  # noqa: E731
    try:
        return COMMANDS[cfg.command](cfg, warn)
    except Exception as exc:  # noqa: BLE001
        status = _failure_status(exc)
        warn(f"ch-crosswalk: {exc}")
        return status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
