__all__ = [
    "CSV_FIELDS",
    "CodeRow",
    "Writer",
    "EchoWriter",
    "UnwritableOutput",
    "open_output",
    "code_row",
    "write_csv",
    "format_table",
    "render_code_table",
    "code_rows_to_json",
    "witness_to_json",
    "group_to_json",
    "report_to_json",
    "summary_line",
    "format_witness",
    "render_report",
    "render_json",
]


import csv
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Iterable, Iterator, List, Optional, Protocol, Sequence, Tuple

import click

from cotree.analysis.report import GroupSummary, SweepKind, SweepReport, Witness
from cotree.core.code import variance_numerator
from cotree.core.error import InputError
from cotree.core.utils import FileSystemPath, JsonDict, dump_json, format_number

CSV_FIELDS = ("code", "length", "weight", "var_num", "var_den", "a", "b", "sum")

CodeRow = Tuple[str, str, str, str, str, str, str, str]

UNITS = {
    SweepKind.REFLECTION: "codes",
    SweepKind.CONJECTURE: "codes",
    SweepKind.COMPLETENESS: "pairs",
    SweepKind.BLOCK_PROPOSITION: "block sizes",
    SweepKind.HOMOMORPHISM: "trials",
    SweepKind.CONVERSE: "codes",
    SweepKind.VARIANCE_FLIP: "codes",
}

FINDINGS = {SweepKind.CONVERSE, SweepKind.VARIANCE_FLIP}


class Writer(Protocol):
    def write(self, text: str) -> Any:
        ...


class EchoWriter:
    """Writer forwarding everything to standard output through click."""

    def write(self, text: str) -> int:
        click.echo(text, nl=False)
        return len(text)


class UnwritableOutput(InputError):
    """Raised when the output file can't be opened for writing."""

    path: FileSystemPath
    reason: str

    def __init__(self, path: FileSystemPath, reason: str):
        super().__init__(path, reason)
        self.path = path
        self.reason = reason

    def __str__(self) -> str:
        return f'Couldn\'t write output to "{self.path}": {self.reason}.'


@contextmanager
def open_output(out: Optional[FileSystemPath] = None) -> Iterator[Writer]:
    """Yield a writer for the given path, or for standard output."""
    if out is None:
        yield EchoWriter()
        return

    try:
        stream = open(out, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UnwritableOutput(out, exc.strerror or str(exc)) from None

    with stream:
        yield stream


def code_row(bits: str, a: int, b: int, cube_sum: Optional[int] = None) -> CodeRow:
    """Return the csv fields describing a code and the pair it leads to.

    >>> code_row("1011", 7, 12)
    ('1011', '4', '3', '5', '2', '7', '12', '19')
    >>> code_row("", 1, 2)
    ('', '0', '0', '', '', '1', '2', '3')
    """
    var_num = var_den = ""

    if bits:
        if cube_sum is None:
            cube_sum = variance_numerator(bits)
        variance = Fraction(cube_sum, len(bits))
        var_num, var_den = str(variance.numerator), str(variance.denominator)

    return (
        bits,
        str(len(bits)),
        str(bits.count("1")),
        var_num,
        var_den,
        str(a),
        str(b),
        str(a + b),
    )


def write_csv(rows: Iterable[Sequence[str]], writer: Writer):
    csv_writer = csv.writer(writer, lineterminator="\n")
    csv_writer.writerow(CSV_FIELDS)
    csv_writer.writerows(rows)


def format_table(rows: Sequence[Sequence[str]]) -> List[str]:
    """Align columns with two spaces of separation.

    >>> format_table([["code", "a"], ["1011", "7"]])
    ['code  a', '1011  7']
    """
    if not rows:
        return []
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]


def render_code_table(rows: Iterable[CodeRow]) -> str:
    table = [["code", "a", "b", "sum", "weight", "var"]]
    for bits, _, weight, var_num, var_den, a, b, total in rows:
        variance = _format_variance(var_num, var_den) or "-"
        table.append([bits or "-", a, b, total, weight, variance])
    return "".join(line + "\n" for line in format_table(table))


def _format_variance(var_num: str, var_den: str) -> Optional[str]:
    if not var_num:
        return None
    return var_num if var_den == "1" else f"{var_num}/{var_den}"


def code_rows_to_json(rows: Iterable[CodeRow]) -> List[JsonDict]:
    return [
        {
            "code": bits,
            "length": int(length),
            "weight": int(weight),
            "var": _format_variance(var_num, var_den),
            "a": a,
            "b": b,
            "sum": total,
        }
        for bits, length, weight, var_num, var_den, a, b, total in rows
    ]


def witness_to_json(witness: Witness) -> JsonDict:
    data: JsonDict = {
        "codes": [code.bits for code in witness.codes],
        "pairs": [[str(pair.a), str(pair.b)] for pair in witness.pairs],
        "values": {label: format_number(value) for label, value in witness.values},
    }
    if witness.claim:
        data["claim"] = witness.claim
    return data


def group_to_json(group: GroupSummary) -> JsonDict:
    data: JsonDict = {"length": group.length}
    if group.weight is not None:
        data["weight"] = group.weight
    if group.variance is not None:
        data["variance"] = format_number(group.variance)
    data.update(
        count=group.count,
        min_norm=str(group.min_norm),
        min_code=group.min_code,
        max_norm=str(group.max_norm),
        max_code=group.max_code,
    )
    return data


def report_to_json(report: SweepReport) -> JsonDict:
    return {
        "kind": report.kind.value,
        "range": {
            key: None if value is None else format_number(value)
            for key, value in report.range.items()
        },
        "checked_count": report.checked_count,
        "violations": [witness_to_json(witness) for witness in report.violations],
        "truncated": report.truncated,
        "extremal": {
            "groups": [group_to_json(group) for group in report.groups],
            **{key: format_number(value) for key, value in report.stats.items()},
        },
    }


def summary_line(report: SweepReport) -> str:
    """Return the one-line outcome of a report.

    >>> summary_line(SweepReport(SweepKind.REFLECTION, checked_count=254))
    'checked 254 codes, 0 violations'
    """
    label = "witnesses" if report.kind in FINDINGS else "violations"
    count = len(report.violations)
    line = f"checked {report.checked_count} {UNITS[report.kind]}, {count} {label}"
    if report.truncated:
        line += f" (truncated at {report.cap})"
    return line


def format_witness(witness: Witness) -> str:
    """Render a witness on a single line.

    >>> from cotree.analysis.sweep import verify_converse_failure
    >>> format_witness(verify_converse_failure())
    '10011 [9,16]  01110 [7,18]  norm(c1)=25 norm(c2)=25  (equal norms without reflection)'
    """
    if witness.codes:
        parts = [
            f"{code.bits or '-'} {pair}"
            for code, pair in zip(witness.codes, witness.pairs)
        ]
        parts += [str(pair) for pair in witness.pairs[len(witness.codes) :]]
    else:
        parts = [str(pair) for pair in witness.pairs]

    if witness.values:
        parts.append(
            " ".join(f"{label}={format_number(value)}" for label, value in witness.values)
        )
    if witness.claim:
        parts.append(f"({witness.claim})")

    return "  ".join(parts)


def render_report(report: SweepReport) -> str:
    """Render a report as human-readable text."""
    lines = [summary_line(report)]

    if any(group.variance is not None for group in report.groups):
        table = [["weight", "var", "count", "min", "min_code", "max", "max_code"]]
        for group in report.groups:
            table.append(
                [
                    str(group.weight),
                    format_number(group.variance or 0),
                    str(group.count),
                    str(group.min_norm),
                    group.min_code,
                    str(group.max_norm),
                    group.max_code,
                ]
            )
        lines.append("")
        lines.extend(format_table(table))

    if report.violations:
        lines.append("")
        lines.extend(format_witness(witness) for witness in report.violations)

    return "".join(line + "\n" for line in lines)


def render_json(report: SweepReport) -> str:
    return dump_json(report_to_json(report))
