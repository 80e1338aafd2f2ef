__all__ = [
    "scan_conjecture",
    "naive_scan_conjecture",
    "conjecture_range",
    "Candidate",
]


import logging
from bisect import bisect_right
from fractions import Fraction
from functools import partial
from itertools import accumulate
from typing import Dict, List, Optional, Sequence, Tuple

from cotree.core.code import Code, cluster_variance, iter_codes, weight
from cotree.core.pair import Pair, apply_code, norm1
from cotree.core.utils import log_time

from .report import GroupSummary, SweepKind, SweepReport, Witness, merge_groups
from .sharding import ShardPool
from .walk import walk_codes

logger = logging.getLogger(__name__)

DEFAULT_CAP = 100

# (bits, weight, variance, a, b)
Candidate = Tuple[str, int, Fraction, int, int]


def conjecture_range(length: int, weight_filter: Optional[int]) -> Dict[str, Optional[int]]:
    return {"length": length, "weight": weight_filter}


def _check_arguments(length: int, weight_filter: Optional[int], cap: int):
    if length < 1:
        raise ValueError(f"Code length must be positive, got {length}.")
    if weight_filter is not None and not 0 <= weight_filter <= length:
        raise ValueError(f"Weight must be between 0 and {length}, got {weight_filter}.")
    if cap < 0:
        raise ValueError(f"Witness cap can't be negative, got {cap}.")


def _conjecture_witness(first: Candidate, second: Candidate) -> Witness:
    bits1, _, var1, a1, b1 = first
    bits2, _, var2, a2, b2 = second
    return Witness(
        codes=(Code(bits1), Code(bits2)),
        pairs=(Pair(a1, b1), Pair(a2, b2)),
        values=(
            ("var(c1)", var1),
            ("var(c2)", var2),
            ("norm(c1)", a1 + b1),
            ("norm(c2)", a2 + b2),
        ),
        claim="smaller variance implies larger norm",
    )


def _build_report(
    length: int,
    weight_filter: Optional[int],
    cap: int,
    groups: List[GroupSummary],
    pairs: Sequence[Tuple[Candidate, Candidate]],
) -> SweepReport:
    report = SweepReport(
        SweepKind.CONJECTURE,
        range=conjecture_range(length, weight_filter),
        checked_count=sum(group.count for group in groups),
        groups=groups,
        cap=cap,
    )
    for first, second in pairs:
        if not report.add_violation(_conjecture_witness(first, second)):
            break
    return report


class _Thresholds:
    """Largest norm among the codes of a weight with a strictly larger variance."""

    def __init__(self, groups: Sequence[GroupSummary]):
        self.variances: Dict[int, List[Fraction]] = {}
        self.suffix_max: Dict[int, List[int]] = {}

        by_weight: Dict[int, List[GroupSummary]] = {}
        for group in groups:
            by_weight.setdefault(group.weight or 0, []).append(group)

        for w, table in by_weight.items():
            table.sort(key=lambda group: group.variance or 0)
            self.variances[w] = [group.variance or Fraction(0) for group in table]
            maxima = [group.max_norm for group in reversed(table)]
            self.suffix_max[w] = list(accumulate(maxima, max))[::-1]

    def above(self, w: int, variance: Fraction) -> Optional[int]:
        variances = self.variances.get(w, [])
        index = bisect_right(variances, variance)
        if index >= len(variances):
            return None
        return self.suffix_max[w][index]

    def violates(self, w: int, variance: Fraction, norm: int) -> bool:
        threshold = self.above(w, variance)
        return threshold is not None and threshold >= norm


def _group_shard(
    length: int,
    weight_filter: Optional[int],
    prefix: str,
) -> List[GroupSummary]:
    groups: Dict[Tuple[int, Fraction], GroupSummary] = {}

    for bits, a, b, cubes in walk_codes(length, prefix, weight_filter):
        key = (bits.count("1"), Fraction(cubes, length))
        if (group := groups.get(key)) is None:
            group = groups[key] = GroupSummary(length, key[0], key[1])
        group.add(bits, a + b)

    return merge_groups(groups.values())


def _first_violators(
    length: int,
    weight_filter: Optional[int],
    limit: int,
    thresholds: _Thresholds,
    prefix: str,
) -> List[Candidate]:
    found: List[Candidate] = []

    for bits, a, b, cubes in walk_codes(length, prefix, weight_filter):
        w, variance = bits.count("1"), Fraction(cubes, length)
        if thresholds.violates(w, variance, a + b):
            found.append((bits, w, variance, a, b))
            if len(found) >= limit:
                break

    return found


def _matching_partners(
    length: int,
    weight_filter: Optional[int],
    limit: int,
    pending: Sequence[Candidate],
    prefix: str,
) -> List[List[Candidate]]:
    by_weight: Dict[int, List[int]] = {}
    for index, (_, w, _, _, _) in enumerate(pending):
        by_weight.setdefault(w, []).append(index)

    partners: List[List[Candidate]] = [[] for _ in pending]

    for bits, a, b, cubes in walk_codes(length, prefix, weight_filter):
        w = bits.count("1")
        if w not in by_weight:
            continue
        variance = Fraction(cubes, length)
        for index in by_weight[w]:
            _, _, pending_variance, pa, pb = pending[index]
            if (
                pending_variance < variance
                and pa + pb <= a + b
                and len(partners[index]) < limit
            ):
                partners[index].append((bits, w, variance, a, b))

    return partners


def scan_conjecture(
    length: int,
    weight_filter: Optional[int] = None,
    cap: int = DEFAULT_CAP,
    pool: Optional[ShardPool] = None,
) -> SweepReport:
    """Scan every code of the given length for conjecture violations.

    A violation is an ordered pair (c1, c2) with equal weight,
    var(c1) < var(c2) and norm(c1) <= norm(c2). Codes with equal variance
    are never compared.

    The scan makes up to three streaming passes. The first collects the
    count and extreme norms of every (weight, variance) group. A code c1
    violates the conjecture exactly when some group of its weight with a
    larger variance reaches a norm at least as large, so the second pass
    finds the first violating codes in lexicographic order and the third
    collects their partners, again in lexicographic order.
    """
    _check_arguments(length, weight_filter, cap)
    pool = pool or ShardPool()
    limit = cap + 1

    with log_time("Conjecture scan of length %d.", length), pool.activate():
        prefixes = pool.prefixes(length)

        logger.info("Collecting variance groups of length %d.", length)
        groups = merge_groups(
            *pool.map(partial(_group_shard, length, weight_filter), prefixes)
        )
        thresholds = _Thresholds(groups)

        if not any(
            thresholds.violates(group.weight or 0, group.variance or 0, group.min_norm)
            for group in groups
        ):
            return _build_report(length, weight_filter, cap, groups, [])

        if not cap:
            report = _build_report(length, weight_filter, cap, groups, [])
            report.truncated = True
            return report

        logger.info("Locating violations of length %d.", length)
        task = partial(_first_violators, length, weight_filter, limit, thresholds)
        pending = [
            candidate
            for shard_result in pool.map(task, prefixes)
            for candidate in shard_result
        ][:limit]

        task = partial(_matching_partners, length, weight_filter, limit, pending)
        partners: List[List[Candidate]] = [[] for _ in pending]
        for shard_result in pool.map(task, prefixes):
            for index, found in enumerate(shard_result):
                partners[index].extend(found)

    pairs = [(first, second) for first, found in zip(pending, partners) for second in found]
    return _build_report(length, weight_filter, cap, groups, pairs[:limit])


def naive_scan_conjecture(
    length: int,
    weight_filter: Optional[int] = None,
    cap: int = DEFAULT_CAP,
) -> SweepReport:
    """Compare every pair of codes of equal weight directly. Only practical for short codes."""
    _check_arguments(length, weight_filter, cap)

    candidates: List[Candidate] = []
    groups: Dict[Tuple[int, Fraction], GroupSummary] = {}

    for code in iter_codes(length, weight_filter):
        pair = apply_code(code)
        candidate = (code.bits, weight(code), cluster_variance(code), pair.a, pair.b)
        candidates.append(candidate)

        key = (candidate[1], candidate[2])
        if key not in groups:
            groups[key] = GroupSummary(length, key[0], key[1])
        groups[key].add(code.bits, norm1(pair))

    by_weight: Dict[int, List[Candidate]] = {}
    for candidate in candidates:
        by_weight.setdefault(candidate[1], []).append(candidate)

    pairs: List[Tuple[Candidate, Candidate]] = []

    for first in candidates:
        for second in by_weight[first[1]]:
            if (
                first[2] < second[2]
                and norm1(Pair(first[3], first[4])) <= norm1(Pair(second[3], second[4]))
            ):
                pairs.append((first, second))
        if len(pairs) > cap:
            break

    return _build_report(length, weight_filter, cap, merge_groups(groups.values()), pairs)
