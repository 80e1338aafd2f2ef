import json
from pathlib import Path
from typing import List

import pytest
from click.testing import CliRunner
from pytest_insta import SnapshotFixture

from cotree import __version__
from cotree.toolchain.cli import cotree


def run(*args: str):
    return CliRunner().invoke(cotree, list(args))


def tokens(output: str, skip: int = 0) -> List[List[str]]:
    return [line.split() for line in output.splitlines()[skip:]]


@pytest.mark.parametrize(
    "args, output",
    [
        (["encode", "7", "12"], "1011\n"),
        (["encode", "7,12"], "1011\n"),
        (["encode", "[13,19]"], "0000101\n"),
        (["encode", "1", "2"], "\n"),
        (["decode", "1011"], "7 12\n"),
        (["decode", "1101"], "8 11\n"),
        (["decode"], "1 2\n"),
        (["decode", ""], "1 2\n"),
        (["enc", "8", "11"], "1101\n"),
    ],
)
def test_encode_decode(args: List[str], output: str):
    result = run(*args)
    assert result.exit_code == 0
    assert result.output == output


def test_trace():
    result = run("decode", "--trace", "0101")
    assert result.exit_code == 0
    assert result.output == "[1,2] ↦ [1,3] ↦ [3,4] ↦ [3,7] ↦ [7,10]\n7 10\n"


def test_trace_generators():
    result = run("decode", "--generators", "0101")
    assert result.exit_code == 0
    assert result.output == "[1,2] ↦τ0 [1,3] ↦τ1 [3,4] ↦τ0 [3,7] ↦τ1 [7,10]\n7 10\n"


@pytest.mark.parametrize(
    "args, exit_code, message",
    [
        (["encode", "4", "6"], 1, "NotInTree"),
        (["encode", "3", "2"], 1, "NotInTree"),
        (["encode", "seven", "12"], 2, "Expected two positive integers"),
        (["encode"], 2, "Expected two positive integers"),
        (["decode", "10a1"], 2, "InvalidCharacter: 'a' at position 3"),
        (["stats", ""], 2, "Invalid arguments."),
        (["stats", "0120"], 2, "InvalidCharacter"),
        (["scan", "--len", "0"], 2, "Invalid arguments."),
        (["scan", "--len", "29"], 2, "exceeds the ceiling 28"),
        (["scan", "--len", "4", "--weight", "5"], 2, "Weight 5 exceeds the length 4"),
        (["enumerate", "--depth", "-1"], 2, "Invalid arguments."),
        (["verify"], 2, "Select exactly one of"),
        (["verify", "--reflection", "3", "--blocks", "3"], 2, "Select exactly one of"),
        (["verify", "--completeness", "1"], 2, "Invalid arguments."),
        (["search"], 2, "Select exactly one of"),
        (["search", "--flips", "40"], 2, "Length 40 exceeds the ceiling 20"),
        (["search", "--converse", "60"], 2, "Length 60 exceeds the ceiling 20"),
    ],
)
def test_errors(args: List[str], exit_code: int, message: str):
    result = run(*args)
    assert result.exit_code == exit_code
    assert message in result.output


def test_usage_errors():
    assert run("scan", "--len", "four").exit_code == 2
    assert run("e", "7", "12").exit_code == 2
    assert run("frobnicate").exit_code == 2


def test_stats():
    result = run("stats", "1000")
    assert result.exit_code == 0
    assert tokens(result.output) == [
        ["code", "1000"],
        ["length", "4"],
        ["weight", "1"],
        ["avg", "5/2"],
        ["var", "7"],
        ["pair", "[2,9]"],
        ["sum", "11"],
        ["palindrome", "no"],
    ]


@pytest.mark.parametrize(
    "code, weight, var, total",
    [("0101", "2", "1", "17"), ("1", "1", "1", "5"), ("0110", "2", "5/2", "15")],
)
def test_stats_table_rows(code: str, weight: str, var: str, total: str):
    rows = dict(tokens(run("stats", code).output))
    assert (rows["weight"], rows["var"], rows["sum"]) == (weight, var, total)


@pytest.mark.parametrize(
    "args, output",
    [
        (["--reflection", "7"], "checked 254 codes, 0 violations\n"),
        (["--reflection", "4", "--shards", "2"], "checked 30 codes, 0 violations\n"),
        (["--completeness", "200"], "checked 12231 pairs, 0 violations\n"),
        (["--blocks", "10"], "checked 9 block sizes, 0 violations\n"),
        (["--homomorphism", "1000", "42"], "checked 1000 trials, 0 violations\n"),
        (["--homomorphism", "1", "0"], "checked 1 trials, 0 violations\n"),
    ],
)
def test_verify(args: List[str], output: str):
    result = run("verify", "--shards", "1", *args)
    assert result.exit_code == 0
    assert result.output == output


def test_verify_converse():
    result = run("verify", "--converse")
    assert result.exit_code == 0
    assert result.output == (
        "10011 [9,16]  01110 [7,18]  norm(c1)=25 norm(c2)=25"
        "  (equal norms without reflection)\n"
    )


def test_verify_json():
    result = run("verify", "--blocks", "2", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["kind"] == "BlockProposition"
    assert data["checked_count"] == 1
    assert data["range"] == {"min_j": "2", "max_j": "2"}
    assert data["extremal"] == {"groups": [], "block_norm": "14", "alternating_norm": "17"}


def test_scan():
    result = run("scan", "--len", "4", "--shards", "1")
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "checked 16 codes, 0 violations"


def test_scan_table():
    result = run("scan", "--len", "4", "--weight", "2", "--shards", "1")
    assert result.exit_code == 0
    assert tokens(result.output) == [
        ["checked", "6", "codes,", "0", "violations"],
        [],
        ["weight", "var", "count", "min", "min_code", "max", "max_code"],
        ["2", "1", "2", "17", "0101", "17", "0101"],
        ["2", "5/2", "2", "15", "0110", "16", "1001"],
        ["2", "4", "2", "14", "0011", "14", "0011"],
    ]


def test_scan_csv():
    result = run("scan", "--len", "4", "--weight", "2", "--format", "csv")
    assert result.exit_code == 0
    assert result.output == (
        "code,length,weight,var_num,var_den,a,b,sum\n"
        "0011,4,2,4,1,5,9,14\n"
        "0101,4,2,1,1,7,10,17\n"
        "0110,4,2,5,2,4,11,15\n"
        "1001,4,2,5,2,7,9,16\n"
        "1010,4,2,1,1,5,12,17\n"
        "1100,4,2,4,1,3,11,14\n"
    )


def test_scan_csv_violations():
    result = run("scan", "--len", "5", "--weight", "2", "--format", "csv")
    assert result.exit_code == 1
    assert "code,length,weight,var_num,var_den,a,b,sum" in result.output
    assert "00110,5,2,17,5,5,14,19" in result.output
    assert "Scan checked 10 codes," in result.output
    assert "First witness: " in result.output


def test_scan_json(snapshot: SnapshotFixture):
    result = run("scan", "--len", "4", "--weight", "2", "--format", "json")
    assert result.exit_code == 0
    assert snapshot("json") == json.loads(result.output)


def test_scan_out(tmp_path: Path):
    path = tmp_path / "report.json"
    result = run("scan", "--len", "6", "--format", "json", "--out", str(path))
    assert result.output == ""
    data = json.loads(path.read_text())
    assert data["kind"] == "Conjecture"
    assert data["checked_count"] == 64
    assert result.exit_code == (1 if data["violations"] or data["truncated"] else 0)


def test_scan_shards():
    outputs = [
        run("scan", "--len", "16", "--shards", shards, "--format", "json").output
        for shards in ["1", "8"]
    ]
    assert outputs[0] == outputs[1]


def test_unwritable_output(tmp_path: Path):
    path = tmp_path / "missing" / "report.csv"
    result = run("scan", "--len", "4", "--format", "csv", "--out", str(path))
    assert result.exit_code == 2
    assert "Couldn't write output" in result.output


def test_enumerate_table():
    result = run("enumerate", "--depth", "1")
    assert result.exit_code == 0
    assert tokens(result.output) == [
        ["code", "a", "b", "sum", "weight", "var"],
        ["-", "1", "2", "3", "0", "-"],
        ["0", "1", "3", "4", "0", "1"],
        ["1", "2", "3", "5", "1", "1"],
    ]


def test_enumerate_csv(snapshot: SnapshotFixture):
    result = run("enumerate", "--depth", "2", "--format", "csv")
    assert result.exit_code == 0
    assert snapshot() == result.output


LENGTH_4_TABLE = [
    "0001,4,1,7,1,5,6,11",
    "0010,4,1,5,2,4,9,13",
    "0011,4,2,4,1,5,9,14",
    "0100,4,1,5,2,3,10,13",
    "0101,4,2,1,1,7,10,17",
    "0110,4,2,5,2,4,11,15",
    "0111,4,3,7,1,7,11,18",
    "1000,4,1,7,1,2,9,11",
    "1001,4,2,5,2,7,9,16",
    "1010,4,2,1,1,5,12,17",
    "1011,4,3,5,2,7,12,19",
    "1100,4,2,4,1,3,11,14",
    "1101,4,3,5,2,8,11,19",
    "1110,4,3,7,1,5,13,18",
]


def test_enumerate_depth_4():
    result = run("enumerate", "--depth", "4", "--format", "csv")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 32
    assert lines[1] == ",0,0,,,1,2,3"

    mixed = [
        line
        for line in lines[1:]
        if line.split(",")[1] == "4" and line.split(",")[2] in ("1", "2", "3")
    ]
    assert mixed == LENGTH_4_TABLE


def test_enumerate_json():
    result = run("enumerate", "--depth", "0", "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.output) == [
        {"code": "", "length": 0, "weight": 0, "var": None, "a": "1", "b": "2", "sum": "3"}
    ]


def test_enumerate_deterministic():
    assert run("enumerate", "--depth", "6").output == run("enum", "--depth", "6").output


def test_search_converse():
    result = run("search", "--converse", "5", "--cap", "1000")
    assert result.exit_code == 0
    assert "01110 [7,18]  10011 [9,16]  norm(c1)=25 norm(c2)=25" in result.output


def test_search_flips():
    result = run("search", "--flips", "7", "--cap", "100000")
    assert result.exit_code == 0
    assert (
        "1010111 [29,46]  1110110 [18,49]"
        "  var(c1)=31/7 var(c2)=37/7 var(c1+1)=17/2 var(c2+1)=19/4"
    ) in result.output


def test_version():
    result = run("--version")
    assert result.exit_code == 0
    assert __version__ in result.output
