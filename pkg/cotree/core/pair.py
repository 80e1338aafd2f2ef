__all__ = [
    "Pair",
    "Trajectory",
    "ROOT",
    "CodeLike",
    "tau0",
    "tau1",
    "tau",
    "add",
    "scale",
    "reduce",
    "norm1",
    "apply_code",
    "apply_code_from",
    "decode",
    "trajectory",
    "is_tree_pair",
    "children",
    "depth",
    "fold_bits",
    "parse_pair",
]


import re
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Tuple, Union

from .code import Code
from .error import InvalidPairText, NotInTree, RootReached

CodeLike = Union[Code, str]

PAIR_REGEX = re.compile(r"\s*\[?\s*(\d+)\s*(?:,|\s)\s*(\d+)\s*\]?\s*")


@dataclass(frozen=True)
class Pair:
    """Element [a,b] of Z² with nonnegative entries."""

    a: int
    b: int

    def __add__(self, other: "Pair") -> "Pair":
        return Pair(self.a + other.a, self.b + other.b)

    def __rmul__(self, k: int) -> "Pair":
        return Pair(k * self.a, k * self.b)

    def __iter__(self) -> Iterator[int]:
        yield self.a
        yield self.b

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


ROOT = Pair(1, 2)


@dataclass(frozen=True)
class Trajectory:
    """Pairs visited while applying a code, excluding the implicit start."""

    start: Pair
    steps: Tuple[Tuple[int, Pair], ...]

    @property
    def final(self) -> Pair:
        return self.steps[-1][1] if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def format_chain(self, labeled: bool = False) -> str:
        """Render the visit sequence as an arrow chain.

        >>> trajectory("10").format_chain()
        '[1,2] ↦ [2,3] ↦ [2,5]'
        >>> trajectory("10").format_chain(labeled=True)
        '[1,2] ↦τ1 [2,3] ↦τ0 [2,5]'
        """
        chain = [str(self.start)]
        for bit, pair in self.steps:
            chain.append(f"↦τ{bit} {pair}" if labeled else f"↦ {pair}")
        return " ".join(chain)


def tau0(p: Pair) -> Pair:
    return Pair(p.a, p.a + p.b)


def tau1(p: Pair) -> Pair:
    return Pair(p.b, p.a + p.b)


def tau(bit: int, p: Pair) -> Pair:
    """Apply the generator selected by the given bit."""
    return tau1(p) if bit else tau0(p)


def add(p: Pair, q: Pair) -> Pair:
    return p + q


def scale(k: int, p: Pair) -> Pair:
    return k * p


def norm1(p: Pair) -> int:
    return abs(p.a) + abs(p.b)


def is_tree_pair(p: Pair) -> bool:
    """Return whether the pair is a vertex of the tree.

    >>> is_tree_pair(Pair(7, 12)), is_tree_pair(Pair(2, 4)), is_tree_pair(Pair(3, 2))
    (True, False, False)
    """
    return 0 < p.a < p.b and gcd(p.a, p.b) == 1


def reduce(p: Pair) -> Pair:
    """Return the parent of a tree pair, undoing the generator that produced it."""
    if not is_tree_pair(p):
        raise NotInTree(p)
    if p == ROOT:
        raise RootReached(p)
    if p.b > 2 * p.a:
        return Pair(p.a, p.b - p.a)
    return Pair(p.b - p.a, p.a)


def children(p: Pair) -> Tuple[Pair, Pair]:
    return tau0(p), tau1(p)


def fold_bits(a: int, b: int, bits: str) -> Tuple[int, int]:
    """Left fold of the generators over a bit string, on raw integers."""
    for bit in bits:
        a, b = (b, a + b) if bit == "1" else (a, a + b)
    return a, b


def apply_code_from(p: Pair, c: CodeLike) -> Pair:
    return Pair(*fold_bits(p.a, p.b, Code.coerce(c).bits))


def apply_code(c: CodeLike) -> Pair:
    """Walk the code from the root, applying the leftmost bit first.

    >>> apply_code("1011")
    Pair(a=7, b=12)
    """
    return apply_code_from(ROOT, c)


def trajectory(c: CodeLike, start: Pair = ROOT) -> Trajectory:
    steps: list[Tuple[int, Pair]] = []
    current = start
    for bit in Code.coerce(c):
        current = tau(bit, current)
        steps.append((bit, current))
    return Trajectory(start, tuple(steps))


def _walk_to_root(p: Pair) -> Iterator[str]:
    if not is_tree_pair(p):
        raise NotInTree(p)
    a, b = p.a, p.b
    while (a, b) != (1, 2):
        if b > 2 * a:
            a, b = a, b - a
            yield "0"
        else:
            a, b = b - a, a
            yield "1"


def decode(p: Pair) -> Code:
    """Return the unique code leading from the root to the given tree pair.

    >>> decode(Pair(13, 19))
    Code(bits='0000101')
    """
    return Code("".join(_walk_to_root(p))[::-1])


def depth(p: Pair) -> int:
    return sum(1 for _ in _walk_to_root(p))


def parse_pair(text: str) -> Pair:
    """Parse two positive integers written as "a,b", "a b" or "[a,b]".

    >>> parse_pair("7 12"), parse_pair("[13,19]")
    (Pair(a=7, b=12), Pair(a=13, b=19))
    """
    match = PAIR_REGEX.fullmatch(text)
    if not match:
        raise InvalidPairText(text)
    a, b = int(match[1]), int(match[2])
    if a < 1 or b < 1:
        raise InvalidPairText(text)
    return Pair(a, b)
