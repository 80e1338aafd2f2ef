__all__ = [
    "CodeRecord",
    "walk_codes",
    "iter_tree",
    "enumerate_tree",
]


from itertools import groupby
from typing import Iterator, List, Optional, Tuple

from cotree.core.code import Code
from cotree.core.pair import Pair, fold_bits

CodeRecord = Tuple[str, int, int, int]


def _run_state(bits: str) -> Tuple[int, int]:
    lengths = [sum(1 for _ in group) for _, group in groupby(bits)]
    if not lengths:
        return 0, 0
    return sum(length**3 for length in lengths[:-1]), lengths[-1]


def walk_codes(
    length: int,
    prefix: str = "",
    weight: Optional[int] = None,
) -> Iterator[CodeRecord]:
    """Yield (bits, a, b, cube_sum) for every code of the given length.

    Codes come out in lexicographic order and only those starting with the
    prefix are visited. The cube sum is the variance numerator, so the
    cluster variance is ``cube_sum / length``.

    >>> list(walk_codes(2))
    [('00', 1, 4, 8), ('01', 3, 4, 2), ('10', 2, 5, 2), ('11', 3, 5, 8)]
    """
    if len(prefix) > length:
        return

    a, b = fold_bits(1, 2, prefix)
    closed, run = _run_state(prefix)
    stack = [(prefix, a, b, prefix.count("1"), closed, run)]

    while stack:
        bits, a, b, ones, closed, run = stack.pop()
        free = length - len(bits)

        if not free:
            if weight is None or ones == weight:
                yield bits, a, b, closed + run**3
            continue

        for bit in "10":
            next_ones = ones + (bit == "1")
            if weight is not None and not next_ones <= weight <= next_ones + free - 1:
                continue

            if bits and bits[-1] == bit:
                next_closed, next_run = closed, run + 1
            else:
                next_closed, next_run = closed + run**3, 1

            if bit == "1":
                stack.append((bits + bit, b, a + b, next_ones, next_closed, next_run))
            else:
                stack.append((bits + bit, a, a + b, next_ones, next_closed, next_run))


def iter_tree(depth: int) -> Iterator[Tuple[Code, Pair]]:
    """Yield the vertices up to the given depth, level by level in lexicographic order."""
    level = [("", 1, 2)]

    for current_depth in range(depth + 1):
        for bits, a, b in level:
            yield Code(bits), Pair(a, b)
        if current_depth < depth:
            level = [
                child
                for bits, a, b in level
                for child in ((bits + "0", a, a + b), (bits + "1", b, a + b))
            ]


def enumerate_tree(depth: int) -> List[Tuple[Code, Pair]]:
    """Return all 2^(depth+1) - 1 vertices up to the given depth.

    >>> [(str(code), str(pair)) for code, pair in enumerate_tree(1)]
    [('', '[1,2]'), ('0', '[1,3]'), ('1', '[2,3]')]
    """
    return list(iter_tree(depth))
