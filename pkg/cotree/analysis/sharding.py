__all__ = [
    "ShardPool",
    "ShardError",
    "shard_prefixes",
    "default_shards",
]


import logging
import os
from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Iterable, Iterator, List, Optional, TypeVar

from cotree.core.error import BubbleException, WrappedException
from cotree.core.utils import format_obj, pop_traceback

T = TypeVar("T")
U = TypeVar("U")


logger = logging.getLogger(__name__)


class ShardError(WrappedException):
    """Raised when a shard task raises an exception."""

    task: Any

    def __init__(self, task: Any):
        super().__init__(task)
        self.task = task

    def __str__(self) -> str:
        return f"Shard task {format_obj(getattr(self.task, 'func', self.task))} raised an exception."


def default_shards() -> int:
    return os.cpu_count() or 1


def shard_prefixes(length: int, shards: int) -> List[str]:
    """Split the codes of the given length into ordered prefix shards.

    Concatenating the shards in the returned order gives back the full
    lexicographic order.

    >>> shard_prefixes(5, 1)
    ['']
    >>> shard_prefixes(5, 3)
    ['00', '01', '10', '11']
    >>> shard_prefixes(1, 8)
    ['0', '1']
    """
    bits = min(length, max(0, (shards - 1).bit_length()))
    return ["".join(prefix) for prefix in product("01", repeat=bits)]


@dataclass
class ShardPool:
    """Runs shard tasks inline or on a process pool while preserving their order."""

    shards: int = 1
    resolved_executor: Optional[Executor] = None

    @contextmanager
    def activate(self) -> Iterator["ShardPool"]:
        """Ensure that the process pool is running for the duration of the scope."""
        if self.shards <= 1 or self.resolved_executor is not None:
            yield self
            return

        with ProcessPoolExecutor(max_workers=self.shards) as executor:
            self.resolved_executor = executor
            try:
                yield self
            finally:
                self.resolved_executor = None

    def prefixes(self, length: int) -> List[str]:
        return shard_prefixes(length, self.shards)

    def map(self, task: Callable[[T], U], items: Iterable[T]) -> List[U]:
        """Run the task on every item and return the results in item order."""
        items = list(items)
        logger.debug("Running %d shard(s) of %s.", len(items), format_obj(task))

        try:
            if self.resolved_executor is None or len(items) <= 1:
                return [task(item) for item in items]
            return list(self.resolved_executor.map(task, items))
        except BubbleException:
            raise
        except Exception as exc:
            raise ShardError(task) from pop_traceback(exc)
