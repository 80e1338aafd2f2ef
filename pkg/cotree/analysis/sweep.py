__all__ = [
    "euclid_gcd",
    "totient",
    "fibonacci",
    "verify_reflection",
    "verify_converse_failure",
    "completeness_check",
    "verify_block_proposition",
    "sample_homomorphism",
]


import logging
import random
from functools import partial
from typing import Optional, Set, Tuple

from cotree.core.code import Code, alternating_code, block_code
from cotree.core.pair import (
    Pair,
    apply_code,
    decode,
    fold_bits,
    norm1,
    reduce,
    scale,
    tau0,
    tau1,
)
from cotree.core.utils import log_time

from .report import GroupSummary, SweepKind, SweepReport, Witness
from .sharding import ShardPool
from .walk import walk_codes

logger = logging.getLogger(__name__)


def euclid_gcd(a: int, b: int) -> int:
    """Greatest common divisor by repeated remainders, kept apart from math.gcd."""
    while b:
        a, b = b, a % b
    return abs(a)


def totient(n: int) -> int:
    """Euler's totient by trial division.

    >>> [totient(n) for n in range(1, 11)]
    [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    """
    result = n
    remaining = n
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            while remaining % p == 0:
                remaining //= p
            result -= result // p
        p += 1
    if remaining > 1:
        result -= result // remaining
    return result


def fibonacci(i: int) -> int:
    """Return F_i with F_1 = F_2 = 1.

    >>> [fibonacci(i) for i in (1, 2, 3, 4, 10)]
    [1, 1, 2, 3, 55]
    """
    if i < 1:
        raise ValueError(f"Fibonacci index must be positive, got {i}.")
    previous, current = 0, 1
    for _ in range(i - 1):
        previous, current = current, previous + current
    return current


def _reflection_shard(length: int, cap: Optional[int], prefix: str) -> SweepReport:
    report = SweepReport(SweepKind.REFLECTION, cap=cap)
    group = GroupSummary(length=length)
    palindromes = 0

    for bits, a, b, _ in walk_codes(length, prefix):
        report.checked_count += 1
        group.add(bits, a + b)

        mirrored = bits[::-1]
        if bits == mirrored:
            palindromes += 1
            continue
        if bits > mirrored:
            continue

        ma, mb = fold_bits(1, 2, mirrored)
        if a + b != ma + mb:
            report.add_violation(
                Witness(
                    codes=(Code(bits), Code(mirrored)),
                    pairs=(Pair(a, b), Pair(ma, mb)),
                    values=(("norm(c1)", a + b), ("norm(c2)", ma + mb)),
                    claim="reflection preserves the norm",
                )
            )

    report.groups = [group]
    report.stats = {f"palindromes[{length}]": palindromes}
    return report


def verify_reflection(
    max_len: int,
    pool: Optional[ShardPool] = None,
    cap: Optional[int] = 100,
) -> SweepReport:
    """Check that every code and its reflection lead to pairs with the same norm."""
    if max_len < 1:
        raise ValueError(f"Maximum length must be positive, got {max_len}.")

    pool = pool or ShardPool()
    report = SweepReport(SweepKind.REFLECTION, range={"max_len": max_len}, cap=cap)

    with log_time("Reflection sweep up to length %d.", max_len), pool.activate():
        for length in range(1, max_len + 1):
            logger.info("Sweeping reflections of length %d.", length)
            task = partial(_reflection_shard, length, cap)
            for partial_report in pool.map(task, pool.prefixes(length)):
                report = report.merge(partial_report)

    return report


def verify_converse_failure() -> Witness:
    """Return two codes with equal norms that are not reflections of each other."""
    c1, c2 = Code("10011"), Code("01110")
    p1, p2 = apply_code(c1), apply_code(c2)
    return Witness(
        codes=(c1, c2),
        pairs=(p1, p2),
        values=(("norm(c1)", norm1(p1)), ("norm(c2)", norm1(p2))),
        claim="equal norms without reflection",
    )


def completeness_check(max_b: int, cap: Optional[int] = 100) -> SweepReport:
    """Check that every coprime pair 1 <= a < b <= max_b is reached exactly once."""
    if max_b < 2:
        raise ValueError(f"Maximum entry must be at least 2, got {max_b}.")

    report = SweepReport(SweepKind.COMPLETENESS, range={"max_b": max_b}, cap=cap)
    seen: Set[str] = set()
    deepest: Tuple[int, str] = (0, "")

    with log_time("Completeness check up to %d.", max_b):
        for b in range(2, max_b + 1):
            for a in range(1, b):
                if euclid_gcd(a, b) != 1:
                    continue

                report.checked_count += 1
                pair = Pair(a, b)
                code = decode(pair)
                reached = apply_code(code)

                if reached != pair:
                    report.add_violation(
                        Witness(
                            codes=(code,),
                            pairs=(reached, pair),
                            claim="decoded code leads back to the pair",
                        )
                    )
                elif code.bits in seen:
                    report.add_violation(
                        Witness(
                            codes=(code,),
                            pairs=(pair,),
                            claim="distinct pairs have distinct codes",
                        )
                    )

                seen.add(code.bits)
                deepest = max(deepest, (len(code), code.bits))

    report.stats = {
        "totient_sum": sum(totient(b) for b in range(2, max_b + 1)),
        "max_depth": deepest[0],
    }
    return report


def verify_block_proposition(max_j: int, cap: Optional[int] = 100) -> SweepReport:
    """Check the Fibonacci closed form and the block versus alternating norm order."""
    if max_j < 2:
        raise ValueError(f"Maximum block size must be at least 2, got {max_j}.")

    report = SweepReport(
        SweepKind.BLOCK_PROPOSITION,
        range={"min_j": 2, "max_j": max_j},
        cap=cap,
    )

    for j in range(2, max_j + 1):
        report.checked_count += 1

        ones_first, zeros_first = block_code(j, leading=1), block_code(j, leading=0)
        alternating, flipped = alternating_code(j, 0), alternating_code(j, 1)
        block_pair, reversed_pair = apply_code(ones_first), apply_code(zeros_first)
        alternating_pair, flipped_pair = apply_code(alternating), apply_code(flipped)

        closed_form = Pair(
            fibonacci(j + 2),
            fibonacci(j + 4) + (j - 1) * fibonacci(j + 2),
        )

        if block_pair != closed_form:
            report.add_violation(
                Witness(
                    codes=(ones_first,),
                    pairs=(block_pair, closed_form),
                    values=(("j", j),),
                    claim="Fibonacci closed form of 1^j 0^j",
                )
            )

        if norm1(block_pair) != norm1(reversed_pair):
            report.add_violation(
                Witness(
                    codes=(ones_first, zeros_first),
                    pairs=(block_pair, reversed_pair),
                    values=(
                        ("norm(c1)", norm1(block_pair)),
                        ("norm(c2)", norm1(reversed_pair)),
                    ),
                    claim="1^j 0^j and 0^j 1^j have equal norms",
                )
            )

        if norm1(alternating_pair) != norm1(flipped_pair):
            report.add_violation(
                Witness(
                    codes=(alternating, flipped),
                    pairs=(alternating_pair, flipped_pair),
                    values=(
                        ("norm(c1)", norm1(alternating_pair)),
                        ("norm(c2)", norm1(flipped_pair)),
                    ),
                    claim="(01)^j and (10)^j have equal norms",
                )
            )

        if not norm1(block_pair) < norm1(alternating_pair):
            report.add_violation(
                Witness(
                    codes=(ones_first, alternating),
                    pairs=(block_pair, alternating_pair),
                    values=(
                        ("norm(c1)", norm1(block_pair)),
                        ("norm(c2)", norm1(alternating_pair)),
                    ),
                    claim="1^j 0^j has a smaller norm than (01)^j",
                )
            )

        if not min(block_pair) < min(alternating_pair):
            report.add_violation(
                Witness(
                    codes=(ones_first, alternating),
                    pairs=(block_pair, alternating_pair),
                    values=(
                        ("min(c1)", min(block_pair)),
                        ("min(c2)", min(alternating_pair)),
                    ),
                    claim="1^j 0^j has a smaller minimum entry than (01)^j",
                )
            )

    report.stats = {
        "block_norm": norm1(apply_code(block_code(max_j))),
        "alternating_norm": norm1(apply_code(alternating_code(max_j))),
    }
    return report


def sample_homomorphism(
    trials: int,
    seed: int,
    bound: int = 2**64,
    cap: Optional[int] = 100,
) -> SweepReport:
    """Check additivity and the scalar action of both generators on seeded random pairs."""
    if trials < 1:
        raise ValueError(f"Number of trials must be positive, got {trials}.")

    rng = random.Random(seed)
    report = SweepReport(
        SweepKind.HOMOMORPHISM,
        range={"trials": trials, "seed": seed, "bound": bound},
        cap=cap,
    )

    for _ in range(trials):
        report.checked_count += 1

        u = Pair(rng.randint(0, bound), rng.randint(0, bound))
        v = Pair(rng.randint(0, bound), rng.randint(0, bound))
        k = rng.randint(0, bound)

        for name, generator in [("tau0", tau0), ("tau1", tau1)]:
            if generator(u + v) != generator(u) + generator(v):
                report.add_violation(
                    Witness(
                        pairs=(u, v),
                        claim=f"{name} is additive",
                    )
                )
            if generator(scale(k, u)) != scale(k, generator(u)):
                report.add_violation(
                    Witness(
                        pairs=(u,),
                        values=(("k", k),),
                        claim=f"{name} commutes with the scalar action",
                    )
                )

    lhs = reduce(Pair(1, 4)) + reduce(Pair(2, 3))
    rhs = reduce(Pair(3, 7))
    if lhs == rhs:
        report.add_violation(
            Witness(
                pairs=(lhs, rhs),
                claim="reduce is not additive on [1,4] + [2,3]",
            )
        )

    report.stats = {"identities_checked": 4 * trials}
    return report
