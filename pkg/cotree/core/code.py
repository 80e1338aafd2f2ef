__all__ = [
    "Code",
    "parse_code",
    "format_code",
    "refl",
    "is_palindrome",
    "weight",
    "complement",
    "runs",
    "cluster_number",
    "cluster_average",
    "cluster_variance",
    "variance_numerator",
    "append_variance",
    "block_code",
    "alternating_code",
    "iter_codes",
]


from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, groupby, product
from typing import Iterator, List, Optional, Tuple, Union

from .error import EmptyCode, InvalidCharacter, PositionOutOfRange

BITS = frozenset("01")


@dataclass(frozen=True)
class Code:
    """Finite sequence of bits, stored as its text form."""

    bits: str = ""

    def __post_init__(self):
        if not BITS.issuperset(self.bits):
            position = next(i for i, ch in enumerate(self.bits, 1) if ch not in BITS)
            raise InvalidCharacter(self.bits, position)

    @classmethod
    def coerce(cls, value: Union["Code", str]) -> "Code":
        return value if isinstance(value, Code) else cls(value)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return (1 if ch == "1" else 0 for ch in self.bits)

    def __getitem__(self, index: int) -> int:
        return 1 if self.bits[index] == "1" else 0

    def __add__(self, other: Union["Code", str]) -> "Code":
        return Code(self.bits + str(other))

    def __str__(self) -> str:
        return self.bits


def parse_code(text: str) -> Code:
    """Parse a bit string, leftmost character first.

    >>> parse_code("1011")
    Code(bits='1011')
    >>> parse_code("10a1")
    Traceback (most recent call last):
    InvalidCharacter: 'a' at position 3 in '10a1'.
    """
    return Code(text)


def format_code(c: Code) -> str:
    return c.bits


def refl(c: Code) -> Code:
    return Code(c.bits[::-1])


def is_palindrome(c: Code) -> bool:
    return c.bits == c.bits[::-1]


def weight(c: Code) -> int:
    return c.bits.count("1")


def complement(c: Code) -> Code:
    return Code(c.bits.translate(str.maketrans("01", "10")))


def runs(c: Code) -> List[Tuple[int, int]]:
    """Return the maximal constant runs as (bit, length) pairs.

    >>> runs(Code("1000"))
    [(1, 1), (0, 3)]
    """
    return [(int(bit), sum(1 for _ in group)) for bit, group in groupby(c.bits)]


def cluster_number(c: Code, i: int) -> int:
    """Count the positions k whose stretch between i and k is constant."""
    n = len(c.bits)
    if not 1 <= i <= n:
        raise PositionOutOfRange(c.bits, i)

    bit = c.bits[i - 1]
    left = i - 1
    while left > 0 and c.bits[left - 1] == bit:
        left -= 1
    right = i
    while right < n and c.bits[right] == bit:
        right += 1

    return right - left


def variance_numerator(bits: str) -> int:
    """Sum of the cubes of the run lengths of a raw bit string."""
    return sum(sum(1 for _ in group) ** 3 for _, group in groupby(bits))


def cluster_average(c: Code) -> Fraction:
    if not c.bits:
        raise EmptyCode("cluster_average")
    return Fraction(sum(length**2 for _, length in runs(c)), len(c.bits))


def cluster_variance(c: Code) -> Fraction:
    """Mean of the squared cluster numbers, equal to the run-length cube sum over n.

    >>> cluster_variance(Code("1010111"))
    Fraction(31, 7)
    """
    if not c.bits:
        raise EmptyCode("cluster_variance")
    return Fraction(variance_numerator(c.bits), len(c.bits))


def append_variance(c: Code, bit: int) -> Fraction:
    """Return the variance of the code extended by one bit, using only its runs."""
    code_runs = runs(c)
    total = sum(length**3 for _, length in code_runs)

    if code_runs and code_runs[-1][0] == bit:
        last = code_runs[-1][1]
        total += (last + 1) ** 3 - last**3
    else:
        total += 1

    return Fraction(total, len(c.bits) + 1)


def block_code(j: int, leading: int = 1) -> Code:
    """Return 1ʲ0ʲ, or 0ʲ1ʲ when the leading bit is 0."""
    first, second = ("1", "0") if leading else ("0", "1")
    return Code(first * j + second * j)


def alternating_code(j: int, leading: int = 0) -> Code:
    """Return (01)ʲ, or (10)ʲ when the leading bit is 1."""
    return Code(("10" if leading else "01") * j)


def iter_codes(
    length: int,
    weight: Optional[int] = None,
    prefix: Union[Code, str] = "",
) -> Iterator[Code]:
    """Yield every code of the given length in lexicographic order.

    >>> [str(c) for c in iter_codes(4, weight=3, prefix="1")]
    ['1011', '1101', '1110']
    """
    head = Code.coerce(prefix).bits
    free = length - len(head)
    if free < 0:
        return

    if weight is None:
        for tail in product("01", repeat=free):
            yield Code(head + "".join(tail))
        return

    ones = weight - head.count("1")
    zeros = free - ones
    if ones < 0 or zeros < 0:
        return

    for zero_positions in combinations(range(free), zeros):
        tail = ["1"] * free
        for position in zero_positions:
            tail[position] = "0"
        yield Code(head + "".join(tail))
