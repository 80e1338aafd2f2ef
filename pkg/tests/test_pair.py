from math import gcd

import pytest

from cotree import (
    ROOT,
    Code,
    InvalidCharacter,
    InvalidPairText,
    NotInTree,
    Pair,
    RootReached,
    apply_code,
    apply_code_from,
    children,
    decode,
    depth,
    is_tree_pair,
    iter_codes,
    iter_tree,
    norm1,
    parse_pair,
    reduce,
    scale,
    tau0,
    tau1,
    trajectory,
)


@pytest.mark.parametrize(
    "code, pair",
    [
        ("", Pair(1, 2)),
        ("0", Pair(1, 3)),
        ("1", Pair(2, 3)),
        ("1011", Pair(7, 12)),
        ("1101", Pair(8, 11)),
        ("1010000", Pair(5, 27)),
        ("0000101", Pair(13, 19)),
        ("10011", Pair(9, 16)),
        ("01110", Pair(7, 18)),
        ("1100", Pair(3, 11)),
        ("0101", Pair(7, 10)),
    ],
)
def test_apply_code(code: str, pair: Pair):
    assert apply_code(code) == pair
    assert decode(pair) == Code(code)
    assert depth(pair) == len(code)


def test_golden_chains():
    assert (
        trajectory("1011").format_chain()
        == "[1,2] ↦ [2,3] ↦ [2,5] ↦ [5,7] ↦ [7,12]"
    )
    assert (
        trajectory("1101").format_chain()
        == "[1,2] ↦ [2,3] ↦ [3,5] ↦ [3,8] ↦ [8,11]"
    )
    assert norm1(apply_code("1011")) == norm1(apply_code("1101")) == 19
    assert norm1(apply_code("1010000")) == norm1(apply_code("0000101")) == 32


def test_trajectory():
    path = trajectory("0101")
    assert len(path) == 4
    assert path.final == Pair(7, 10)
    assert [bit for bit, _ in path.steps] == [0, 1, 0, 1]
    assert trajectory("").format_chain() == "[1,2]"


def test_invalid_code():
    with pytest.raises(InvalidCharacter) as exc_info:
        apply_code("10a1")
    assert exc_info.value.position == 3
    assert exc_info.value.exit_code == 2


def test_generators():
    assert tau0(Pair(3, 4)) == Pair(3, 7)
    assert tau1(Pair(3, 4)) == Pair(4, 7)
    assert children(Pair(2, 5)) == (Pair(2, 7), Pair(5, 7))


def test_reduce():
    assert reduce(Pair(1, 4)) == Pair(1, 3)
    assert reduce(Pair(2, 3)) == Pair(1, 2)
    assert reduce(Pair(3, 7)) == Pair(3, 4)
    assert reduce(Pair(1, 4)) + reduce(Pair(2, 3)) == Pair(2, 5) != reduce(Pair(3, 7))


@pytest.mark.parametrize("pair", [Pair(2, 4), Pair(3, 2), Pair(0, 1), Pair(5, 5)])
def test_reduce_not_in_tree(pair: Pair):
    with pytest.raises(NotInTree):
        reduce(pair)
    with pytest.raises(NotInTree):
        decode(pair)


def test_reduce_root():
    with pytest.raises(RootReached):
        reduce(ROOT)


def test_decode_every_pair():
    for b in range(2, 60):
        for a in range(1, b):
            pair = Pair(a, b)
            if gcd(a, b) != 1:
                assert not is_tree_pair(pair)
                continue
            code = decode(pair)
            assert apply_code(code) == pair
            if pair != ROOT:
                assert apply_code(code.bits[:-1]) == reduce(pair)


@pytest.mark.parametrize("length", range(17))
def test_round_trip(length: int):
    reached: set[Pair] = set()
    for code in iter_codes(length):
        pair = apply_code(code)
        assert is_tree_pair(pair)
        assert decode(pair) == code
        reached.add(pair)
    assert len(reached) == 2**length


def test_generator_images_disjoint():
    vertices = [pair for _, pair in iter_tree(12)]
    assert not {tau0(pair) for pair in vertices} & {tau1(pair) for pair in vertices}
    for pair in vertices:
        left, right = tau0(pair), tau1(pair)
        assert left.b > 2 * left.a
        assert right.b < 2 * right.a


def test_gcd_preserved():
    for a in range(31):
        for b in range(31):
            pair = Pair(a, b)
            assert gcd(*tau0(pair)) == gcd(a, b)
            assert gcd(*tau1(pair)) == gcd(a, b)
            if not is_tree_pair(pair):
                with pytest.raises(NotInTree):
                    reduce(pair)
            elif pair != ROOT:
                assert gcd(*reduce(pair)) == gcd(a, b) == 1
                assert pair in children(reduce(pair))

def test_additivity():
    u, v = Pair(3, 10), Pair(7, 2)
    for generator in [tau0, tau1]:
        assert generator(u + v) == generator(u) + generator(v)
        assert generator(scale(5, u)) == scale(5, generator(u)) == 5 * generator(u)


def test_children_share_sum():
    for length in range(8):
        for code in iter_codes(length):
            parent = apply_code(code)
            left, right = apply_code(code + "0"), apply_code(code + "1")
            assert left.b == right.b == parent.a + parent.b
            assert right.a > left.a
            assert norm1(left) > norm1(parent)
            assert norm1(right) > norm1(parent)


def test_tau1_decomposition():
    for _, pair in iter_tree(10):
        if pair == ROOT:
            continue
        step = tau1(pair)
        difference = (step.a - pair.a, step.b - pair.b)
        assert sorted(difference) == sorted(reduce(pair))


def test_replay_from_seeds():
    for length in range(1, 9):
        for code in iter_codes(length):
            assert apply_code_from(Pair(1, 1), code) == apply_code(code.bits[1:])
            assert apply_code_from(Pair(0, 1), "1" + code.bits) == apply_code_from(
                Pair(1, 1), code
            )


@pytest.mark.parametrize(
    "text, pair",
    [
        ("7 12", Pair(7, 12)),
        ("7,12", Pair(7, 12)),
        ("[7,12]", Pair(7, 12)),
        (" 4 , 6 ", Pair(4, 6)),
    ],
)
def test_parse_pair(text: str, pair: Pair):
    assert parse_pair(text) == pair


@pytest.mark.parametrize("text", ["", "7", "a b", "0 5", "1 2 3", "-1 2"])
def test_parse_pair_error(text: str):
    with pytest.raises(InvalidPairText):
        parse_pair(text)
