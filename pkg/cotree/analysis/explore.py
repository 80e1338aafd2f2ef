__all__ = [
    "find_converse_failures",
    "find_variance_flips",
]


import logging
from bisect import bisect_left, bisect_right
from collections import defaultdict
from fractions import Fraction
from heapq import merge
from itertools import islice
from typing import Dict, Iterator, List, Optional, Tuple

from cotree.core.code import Code
from cotree.core.pair import apply_code

from .report import GroupSummary, SweepKind, SweepReport, Witness
from .walk import walk_codes

logger = logging.getLogger(__name__)

RunKey = Tuple[int, int]


def _unreflected_pairs(members: List[str]) -> Iterator[Tuple[str, str]]:
    for i, first in enumerate(members):
        for second in members[i + 1 :]:
            if second != first[::-1]:
                yield first, second


def find_converse_failures(length: int, cap: Optional[int] = 100) -> SweepReport:
    """Find equal-length codes sharing a norm without being reflections of each other.

    Only the codes are indexed by norm. Witnesses are produced lazily in
    lexicographic order and the search stops as soon as the cap is exceeded.
    """
    if length < 1:
        raise ValueError(f"Code length must be positive, got {length}.")

    report = SweepReport(SweepKind.CONVERSE, range={"length": length}, cap=cap)
    by_norm: Dict[int, List[str]] = defaultdict(list)
    group = GroupSummary(length=length)

    for bits, a, b, _ in walk_codes(length):
        by_norm[a + b].append(bits)
        group.add(bits, a + b)
        report.checked_count += 1

    colliding = [
        members
        for members in by_norm.values()
        if len({min(bits, bits[::-1]) for bits in members}) > 1
    ]

    candidates = merge(*(_unreflected_pairs(members) for members in colliding))
    limit = None if cap is None else cap + 1

    for first, second in islice(candidates, limit):
        first_pair, second_pair = apply_code(first), apply_code(second)
        norm = first_pair.a + first_pair.b
        witness = Witness(
            codes=(Code(first), Code(second)),
            pairs=(first_pair, second_pair),
            values=(("norm(c1)", norm), ("norm(c2)", norm)),
            claim="equal norms without reflection",
        )
        if not report.add_violation(witness):
            break

    logger.info("Found %d norm collision group(s) at length %d.", len(colliding), length)
    report.groups = [group]
    report.stats = {"distinct_norms": len(by_norm), "collision_groups": len(colliding)}
    return report


def _trailing_run(bits: str) -> RunKey:
    return int(bits[-1]), len(bits) - len(bits.rstrip(bits[-1]))


def _growth(run: RunKey, bit: int) -> int:
    """Increase of the run-length cube sum when the bit is appended."""
    last, size = run
    return 3 * size * size + 3 * size + 1 if last == bit else 1


def find_variance_flips(length: int, cap: Optional[int] = 100) -> SweepReport:
    """Find equal-weight codes whose variance order reverses once the same bit is appended.

    The variances of codes of equal length share a denominator, so the order
    only depends on the run-length cube sums. A flip needs the cube sum of the
    second code to fall strictly between the two extended cube sums, which is
    looked up with a bisection over the codes of the same weight and trailing run.
    """
    if length < 1:
        raise ValueError(f"Code length must be positive, got {length}.")

    report = SweepReport(SweepKind.VARIANCE_FLIP, range={"length": length}, cap=cap)
    index: Dict[int, Dict[RunKey, List[Tuple[int, str]]]] = defaultdict(
        lambda: defaultdict(list)
    )

    for bits, _, _, cubes in walk_codes(length):
        index[bits.count("1")][_trailing_run(bits)].append((cubes, bits))
        report.checked_count += 1

    for runs in index.values():
        for members in runs.values():
            members.sort()

    for first, _, _, first_cubes in walk_codes(length):
        first_run = _trailing_run(first)
        found: List[Tuple[str, int, int, int]] = []

        for bit in (0, 1):
            first_growth = _growth(first_run, bit)
            for run, members in index[first.count("1")].items():
                second_growth = _growth(run, bit)
                upper = first_cubes + first_growth - second_growth
                start = bisect_right(members, (first_cubes, "~"))
                stop = bisect_left(members, (upper, ""))
                for second_cubes, second in members[start:stop]:
                    found.append((second, bit, second_cubes, second_growth))

        for second, bit, second_cubes, second_growth in sorted(found):
            witness = Witness(
                codes=(Code(first), Code(second)),
                pairs=(apply_code(first), apply_code(second)),
                values=(
                    ("var(c1)", Fraction(first_cubes, length)),
                    ("var(c2)", Fraction(second_cubes, length)),
                    (
                        f"var(c1+{bit})",
                        Fraction(first_cubes + _growth(first_run, bit), length + 1),
                    ),
                    (
                        f"var(c2+{bit})",
                        Fraction(second_cubes + second_growth, length + 1),
                    ),
                ),
                claim=f"appending {bit} reverses the variance order",
            )
            if not report.add_violation(witness):
                return report

    return report
