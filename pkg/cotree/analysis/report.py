__all__ = [
    "SweepKind",
    "Number",
    "Witness",
    "GroupSummary",
    "SweepReport",
    "merge_groups",
]


import re
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from cotree.core.code import Code, cluster_variance
from cotree.core.pair import Pair, apply_code, norm1

Number = Union[int, Fraction]

VALUE_LABEL_REGEX = re.compile(r"(norm|var|min)\(c(\d+)(?:\+([01]))?\)")


class SweepKind(str, Enum):
    REFLECTION = "Reflection"
    CONJECTURE = "Conjecture"
    COMPLETENESS = "Completeness"
    BLOCK_PROPOSITION = "BlockProposition"
    HOMOMORPHISM = "Homomorphism"
    CONVERSE = "Converse"
    VARIANCE_FLIP = "VarianceFlip"


@dataclass(frozen=True)
class Witness:
    """Codes, pairs and compared quantities showing where a claim was tested.

    Values are labeled like ``norm(c1)``, ``var(c2)`` or ``var(c1+0)`` where
    ``c1`` refers to the first code and ``+0`` to the code extended by a bit.
    """

    codes: Tuple[Code, ...] = ()
    pairs: Tuple[Pair, ...] = ()
    values: Tuple[Tuple[str, Number], ...] = ()
    claim: str = ""

    @property
    def sort_key(self) -> Tuple[Tuple[str, ...], Tuple[Tuple[int, int], ...]]:
        return (
            tuple(code.bits for code in self.codes),
            tuple((pair.a, pair.b) for pair in self.pairs),
        )

    def value(self, label: str) -> Number:
        return dict(self.values)[label]

    def verify(self) -> bool:
        """Re-evaluate the codes and check that they reproduce the stored values."""
        for code, pair in zip(self.codes, self.pairs):
            if apply_code(code) != pair:
                return False

        for label, value in self.values:
            if not (match := VALUE_LABEL_REGEX.fullmatch(label)):
                continue

            stat, index, bit = match.groups()
            code = self.codes[int(index) - 1]
            if bit is not None:
                code = code + bit

            if stat == "var":
                actual: Number = cluster_variance(code)
            elif stat == "norm":
                actual = norm1(apply_code(code))
            else:
                actual = min(apply_code(code))

            if actual != value:
                return False

        return True


@dataclass
class GroupSummary:
    """Count and extreme norms of the codes sharing a length, weight and variance."""

    length: int
    weight: Optional[int] = None
    variance: Optional[Fraction] = None
    count: int = 0
    min_norm: int = 0
    min_code: str = ""
    max_norm: int = 0
    max_code: str = ""

    @property
    def key(self) -> Tuple[int, int, Fraction]:
        return (
            self.length,
            -1 if self.weight is None else self.weight,
            Fraction(-1) if self.variance is None else self.variance,
        )

    def add(self, bits: str, norm: int):
        """Account for one more code of the group."""
        if not self.count or (norm, bits) < (self.min_norm, self.min_code):
            self.min_norm, self.min_code = norm, bits
        if not self.count or (-norm, bits) < (-self.max_norm, self.max_code):
            self.max_norm, self.max_code = norm, bits
        self.count += 1

    def merge(self, other: "GroupSummary") -> bool:
        if other.key != self.key:
            return False
        if not other.count:
            return True
        if not self.count:
            self.count = other.count
            self.min_norm, self.min_code = other.min_norm, other.min_code
            self.max_norm, self.max_code = other.max_norm, other.max_code
            return True

        if (other.min_norm, other.min_code) < (self.min_norm, self.min_code):
            self.min_norm, self.min_code = other.min_norm, other.min_code
        if (-other.max_norm, other.max_code) < (-self.max_norm, self.max_code):
            self.max_norm, self.max_code = other.max_norm, other.max_code
        self.count += other.count
        return True


def merge_groups(*tables: Iterable[GroupSummary]) -> List[GroupSummary]:
    """Merge group summaries by key, returning them sorted by key."""
    merged: Dict[Tuple[int, int, Fraction], GroupSummary] = {}

    for table in tables:
        for group in table:
            if current := merged.get(group.key):
                current.merge(group)
            else:
                merged[group.key] = replace(group)

    return [merged[key] for key in sorted(merged)]


@dataclass
class SweepReport:
    """Outcome of an exhaustive verification or search."""

    kind: SweepKind
    range: Dict[str, Any] = field(default_factory=dict)
    checked_count: int = 0
    violations: List[Witness] = field(default_factory=list)
    groups: List[GroupSummary] = field(default_factory=list)
    stats: Dict[str, Number] = field(default_factory=dict)
    cap: Optional[int] = None
    truncated: bool = False

    @property
    def ok(self) -> bool:
        """Whether the swept claim held everywhere in range."""
        return not self.violations and not self.truncated

    def add_violation(self, witness: Witness) -> bool:
        """Record a witness and return whether the cap leaves room for more."""
        if self.cap is not None and len(self.violations) >= self.cap:
            self.truncated = True
            return False
        self.violations.append(witness)
        return True

    def merge(self, other: "SweepReport") -> "SweepReport":
        """Combine two partial reports over disjoint parts of the same range.

        Stats are counters and add up.
        """
        if other.kind != self.kind:
            raise ValueError(f"Can't merge {other.kind.value} into {self.kind.value}.")

        violations = sorted(
            [*self.violations, *other.violations],
            key=lambda witness: witness.sort_key,
        )
        truncated = self.truncated or other.truncated
        if self.cap is not None and len(violations) > self.cap:
            del violations[self.cap :]
            truncated = True

        stats = dict(self.stats)
        for key, value in other.stats.items():
            stats[key] = stats.get(key, 0) + value

        return SweepReport(
            kind=self.kind,
            range=self.range,
            checked_count=self.checked_count + other.checked_count,
            violations=violations,
            groups=merge_groups(self.groups, other.groups),
            stats=stats,
            cap=self.cap,
            truncated=truncated,
        )
