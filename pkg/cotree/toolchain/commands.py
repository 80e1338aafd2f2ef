import logging
from typing import Optional, Sequence, Tuple

import click

from cotree.analysis.conjecture import scan_conjecture
from cotree.analysis.explore import find_converse_failures, find_variance_flips
from cotree.analysis.report import SweepReport
from cotree.analysis.sharding import ShardPool
from cotree.analysis.sweep import (
    completeness_check,
    sample_homomorphism,
    verify_block_proposition,
    verify_converse_failure,
    verify_reflection,
)
from cotree.analysis.walk import iter_tree, walk_codes
from cotree.core.code import (
    cluster_average,
    cluster_variance,
    is_palindrome,
    parse_code,
    refl,
    weight,
)
from cotree.core.pair import apply_code
from cotree.core.pair import decode as decode_pair
from cotree.core.pair import norm1, parse_pair, trajectory
from cotree.core.utils import dump_json, format_number
from cotree.toolchain.cli import cotree
from cotree.toolchain.config import CliConfig, OutputFormat, load_cli_config
from cotree.toolchain.export import (
    code_row,
    code_rows_to_json,
    format_table,
    format_witness,
    open_output,
    render_code_table,
    render_json,
    render_report,
    summary_line,
    witness_to_json,
    write_csv,
)

logger = logging.getLogger(__name__)


cap_option = click.option(
    "-c",
    "--cap",
    "violation_cap",
    metavar="COUNT",
    type=int,
    help="Maximum number of reported witnesses.  [default: 100]",
)

shards_option = click.option(
    "-j",
    "--shards",
    metavar="COUNT",
    type=int,
    help="Number of prefix shards swept in parallel.  [default: cpu count]",
)

out_option = click.option(
    "-o",
    "--out",
    metavar="PATH",
    help="Write the output to a file instead of standard output.",
)


def format_option(*choices: str):
    return click.option(
        "-f",
        "--format",
        "output_format",
        type=click.Choice(list(choices)),
        default="table",
        show_default=True,
        help="Output format.",
    )


def emit_report(report: SweepReport, config: CliConfig):
    """Write the report in the configured format."""
    with open_output(config.out) as writer:
        if config.format == "json":
            writer.write(render_json(report))
        else:
            writer.write(render_report(report))

    if config.out:
        logger.info("Report written to %s.", config.out)


def log_summary(report: SweepReport):
    """Log the outcome of a report whose output only lists codes."""
    if report.ok:
        logger.info("Scan %s.", summary_line(report))
        return

    logger.warning("Scan %s.", summary_line(report))
    if report.violations:
        logger.warning("First witness: %s", format_witness(report.violations[0]))


def exit_on_violations(report: SweepReport):
    if not report.ok:
        raise click.exceptions.Exit(1)


@cotree.command()
@click.argument("pair", nargs=-1)
def encode(pair: Sequence[str]):
    """Print the code leading to a coprime pair."""
    config = load_cli_config(command="encode", pair=" ".join(pair))
    click.echo(decode_pair(parse_pair(config.pair or "")).bits)


@cotree.command()
@click.argument("code", default="")
@click.option(
    "-t",
    "--trace",
    is_flag=True,
    help="Print every pair visited on the way.",
)
@click.option(
    "-g",
    "--generators",
    "labeled",
    is_flag=True,
    help="Label every traced step with its generator.",
)
def decode(code: str, trace: bool, labeled: bool):
    """Print the pair reached by following a code from the root."""
    config = load_cli_config(
        command="decode",
        code=code,
        trace=trace or labeled,
        labeled=labeled,
    )
    parsed = parse_code(config.code or "")

    if config.trace:
        click.echo(trajectory(parsed).format_chain(config.labeled))

    pair = apply_code(parsed)
    click.echo(f"{pair.a} {pair.b}")


@cotree.command()
@click.argument("code")
def stats(code: str):
    """Print the statistics of a nonempty code."""
    config = load_cli_config(command="stats", code=code)
    parsed = parse_code(config.code or "")
    pair = apply_code(parsed)

    rows = [
        ["code", parsed.bits],
        ["length", str(len(parsed))],
        ["weight", str(weight(parsed))],
        ["avg", format_number(cluster_average(parsed))],
        ["var", format_number(cluster_variance(parsed))],
        ["pair", str(pair)],
        ["sum", str(norm1(pair))],
        ["palindrome", "yes" if is_palindrome(parsed) else "no"],
    ]

    for line in format_table(rows):
        click.echo(line)


@cotree.command()
@click.option(
    "--reflection",
    "max_len",
    metavar="MAX_LEN",
    type=int,
    help="Check the reflection theorem for every code up to this length.",
)
@click.option(
    "--completeness",
    "max_b",
    metavar="MAX_B",
    type=int,
    help="Check that every coprime pair up to this entry is reached once.",
)
@click.option(
    "--blocks",
    "max_j",
    metavar="MAX_J",
    type=int,
    help="Check the block code identities up to this block size.",
)
@click.option(
    "--homomorphism",
    metavar="TRIALS SEED",
    type=int,
    nargs=2,
    help="Check the homomorphism identities on seeded random pairs.",
)
@click.option(
    "--converse",
    is_flag=True,
    help="Re-verify the equal-norm pair that isn't a reflection.",
)
@shards_option
@cap_option
@format_option("table", "json")
@out_option
def verify(
    max_len: Optional[int],
    max_b: Optional[int],
    max_j: Optional[int],
    homomorphism: Optional[Tuple[int, int]],
    converse: bool,
    shards: Optional[int],
    violation_cap: Optional[int],
    output_format: OutputFormat,
    out: Optional[str],
):
    """Run an exhaustive verification sweep."""
    trials, seed = homomorphism or (None, None)

    config = load_cli_config(
        command="verify",
        max_len=max_len,
        max_b=max_b,
        max_j=max_j,
        trials=trials,
        seed=seed,
        converse=converse,
        shards=shards,
        violation_cap=violation_cap,
        format=output_format,
        out=out,
    )

    cap = config.violation_cap

    if config.converse:
        witness = verify_converse_failure()
        first, second = witness.codes
        with open_output(config.out) as writer:
            if config.format == "json":
                writer.write(dump_json(witness_to_json(witness)))
            else:
                writer.write(format_witness(witness) + "\n")
        if not witness.verify() or refl(first) == second:
            raise click.exceptions.Exit(1)
        return

    if config.max_len:
        report = verify_reflection(config.max_len, ShardPool(config.shards), cap)
    elif config.max_b:
        report = completeness_check(config.max_b, cap)
    elif config.max_j:
        report = verify_block_proposition(config.max_j, cap)
    else:
        report = sample_homomorphism(config.trials or 1, config.seed, cap=cap)

    emit_report(report, config)
    exit_on_violations(report)


@cotree.command()
@click.option(
    "-n",
    "--len",
    "length",
    metavar="LEN",
    type=int,
    help="Length of the scanned codes.",
)
@click.option(
    "-w",
    "--weight",
    "weight_filter",
    metavar="WEIGHT",
    type=int,
    help="Only scan the codes with this many ones.",
)
@cap_option
@format_option("table", "csv", "json")
@out_option
@shards_option
@click.option(
    "--ceiling",
    metavar="LEN",
    type=int,
    help="Largest length accepted without complaint.  [default: 28]",
)
def scan(
    length: Optional[int],
    weight_filter: Optional[int],
    violation_cap: Optional[int],
    output_format: OutputFormat,
    out: Optional[str],
    shards: Optional[int],
    ceiling: Optional[int],
):
    """Scan the codes of a length for variance conjecture violations."""
    config = load_cli_config(
        command="scan",
        length=length,
        weight=weight_filter,
        violation_cap=violation_cap,
        format=output_format,
        out=out,
        shards=shards,
        ceiling=ceiling,
    )
    length = config.length or 1

    report = scan_conjecture(
        length,
        config.weight,
        config.violation_cap,
        ShardPool(config.shards),
    )

    if config.format == "csv":
        with open_output(config.out) as writer:
            write_csv(
                (
                    code_row(bits, a, b, cubes)
                    for bits, a, b, cubes in walk_codes(length, weight=config.weight)
                ),
                writer,
            )
        log_summary(report)
    else:
        emit_report(report, config)

    exit_on_violations(report)


@cotree.command("enumerate")
@click.option(
    "-d",
    "--depth",
    metavar="DEPTH",
    type=int,
    help="Depth of the deepest listed vertices.",
)
@format_option("table", "csv", "json")
@out_option
@click.option(
    "--ceiling",
    metavar="DEPTH",
    type=int,
    help="Largest depth accepted without complaint.  [default: 28]",
)
def enumerate_tree(
    depth: Optional[int],
    output_format: OutputFormat,
    out: Optional[str],
    ceiling: Optional[int],
):
    """List the vertices of the tree up to a depth."""
    config = load_cli_config(
        command="enumerate",
        depth=depth,
        format=output_format,
        out=out,
        ceiling=ceiling,
    )

    rows = (
        code_row(code.bits, pair.a, pair.b) for code, pair in iter_tree(config.depth or 0)
    )

    with open_output(config.out) as writer:
        if config.format == "csv":
            write_csv(rows, writer)
        elif config.format == "json":
            writer.write(dump_json(code_rows_to_json(rows)))
        else:
            writer.write(render_code_table(rows))


@cotree.command()
@click.option(
    "--converse",
    "converse_len",
    metavar="LEN",
    type=int,
    help="Find equal-norm codes of this length that aren't reflections.",
)
@click.option(
    "--flips",
    "flips_len",
    metavar="LEN",
    type=int,
    help="Find codes of this length whose variance order flips on extension.",
)
@cap_option
@format_option("table", "json")
@out_option
@click.option(
    "--ceiling",
    metavar="LEN",
    type=int,
    help="Largest length accepted without complaint.  [default: 20]",
)
def search(
    converse_len: Optional[int],
    flips_len: Optional[int],
    violation_cap: Optional[int],
    output_format: OutputFormat,
    out: Optional[str],
    ceiling: Optional[int],
):
    """Search for codes related to the theorem and the conjecture."""
    config = load_cli_config(
        command="search",
        converse_len=converse_len,
        flips_len=flips_len,
        violation_cap=violation_cap,
        format=output_format,
        out=out,
        ceiling=ceiling,
    )

    if config.converse_len:
        report = find_converse_failures(config.converse_len, config.violation_cap)
    else:
        report = find_variance_flips(config.flips_len or 1, config.violation_cap)

    emit_report(report, config)
