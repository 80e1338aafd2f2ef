import pytest

from cotree import ShardError, ShardPool, shard_prefixes


def square(number: int) -> int:
    return number * number


def divide(number: int) -> float:
    return 1 / number


@pytest.mark.parametrize(
    "length, shards, prefixes",
    [
        (5, 1, [""]),
        (5, 2, ["0", "1"]),
        (5, 3, ["00", "01", "10", "11"]),
        (5, 4, ["00", "01", "10", "11"]),
        (2, 64, ["00", "01", "10", "11"]),
        (0, 8, [""]),
    ],
)
def test_prefixes(length: int, shards: int, prefixes: list[str]):
    assert shard_prefixes(length, shards) == prefixes


def test_inline():
    pool = ShardPool()

    with pool.activate():
        assert pool.resolved_executor is None
        assert pool.map(square, [3, 1, 2]) == [9, 1, 4]


def test_process_pool():
    pool = ShardPool(3)

    with pool.activate():
        assert pool.resolved_executor is not None
        assert pool.map(square, range(10)) == [n * n for n in range(10)]

    assert pool.resolved_executor is None


def test_nested():
    pool = ShardPool(2)

    with pool.activate():
        executor = pool.resolved_executor
        with pool.activate():
            assert pool.resolved_executor is executor
        assert pool.map(square, [4, 5]) == [16, 25]


@pytest.mark.parametrize("shards", [1, 2])
def test_error(shards: int):
    msg = 'Shard task "tests.test_sharding.divide" raised an exception.'

    with pytest.raises(ShardError) as exc_info:
        with ShardPool(shards).activate() as pool:
            pool.map(divide, [1, 0])

    assert str(exc_info.value) == msg
    assert isinstance(exc_info.value.__cause__, ZeroDivisionError)
