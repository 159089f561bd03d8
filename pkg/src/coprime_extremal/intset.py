"""Dense subsets of ``{1, ..., n}``."""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np

from .errors import InvalidArgument


class IntSet:
    """Immutable subset of ``[1, n]`` backed by a boolean mask.

    ``mask[m]`` is True iff ``m`` is a member; ``mask[0]`` is always False.
    Two sets compare equal when they have the same members, whatever
    their universe bound.
    """

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: np.ndarray | None = None):
        if n < 0:
            raise InvalidArgument(f"universe bound must be >= 0, got {n}")
        if mask is None:
            mask = np.zeros(n + 1, dtype=bool)
        else:
            mask = np.array(mask, dtype=bool, copy=True)
            if mask.shape != (n + 1,):
                raise InvalidArgument(f"mask must have length n + 1 = {n + 1}")
            mask[0] = False
        mask.flags.writeable = False
        self.n = n
        self.mask = mask

    @classmethod
    def from_iterable(cls, n: int, members: Iterable[int]) -> IntSet:
        mask = np.zeros(n + 1, dtype=bool)
        for m in members:
            if not 1 <= m <= n:
                raise InvalidArgument(f"{m} is outside [1, {n}]")
            mask[m] = True
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> IntSet:
        return cls(n, np.ones(n + 1, dtype=bool))

    @classmethod
    def multiples(cls, n: int, divisors: Iterable[int]) -> IntSet:
        """Integers in ``[1, n]`` divisible by at least one of ``divisors``."""
        mask = np.zeros(n + 1, dtype=bool)
        for d in divisors:
            if d < 1:
                raise InvalidArgument(f"divisor must be positive, got {d}")
            mask[d::d] = True
        return cls(n, mask)

    def members(self) -> list[int]:
        return [int(m) for m in np.flatnonzero(self.mask)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return int(np.count_nonzero(self.mask))

    def __contains__(self, m: object) -> bool:
        return isinstance(m, (int, np.integer)) and 1 <= m <= self.n and bool(self.mask[m])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntSet):
            return NotImplemented
        a, b = self._aligned(other)
        return bool(np.array_equal(a, b))

    def __hash__(self) -> int:
        return hash(tuple(self.members()))

    def __repr__(self) -> str:
        items = self.members()
        if len(items) > 12:
            shown = ", ".join(map(str, items[:12])) + ", ..."
        else:
            shown = ", ".join(map(str, items))
        return f"IntSet(n={self.n}, {{{shown}}}, size={len(items)})"

    def _aligned(self, other: IntSet) -> tuple[np.ndarray, np.ndarray]:
        size = max(self.n, other.n) + 1
        a = np.zeros(size, dtype=bool)
        b = np.zeros(size, dtype=bool)
        a[: self.n + 1] = self.mask
        b[: other.n + 1] = other.mask
        return a, b

    def _combine(self, other: IntSet, op) -> IntSet:
        a, b = self._aligned(other)
        return IntSet(len(a) - 1, op(a, b))

    def __or__(self, other: IntSet) -> IntSet:
        return self._combine(other, np.logical_or)

    def __and__(self, other: IntSet) -> IntSet:
        return self._combine(other, np.logical_and)

    def __sub__(self, other: IntSet) -> IntSet:
        return self._combine(other, lambda a, b: a & ~b)

    def isdisjoint(self, other: IntSet) -> bool:
        return len(self & other) == 0

    def issubset(self, other: IntSet) -> bool:
        return len(self - other) == 0

    def __le__(self, other: IntSet) -> bool:
        return self.issubset(other)

    def with_members(self, extra: Iterable[int]) -> IntSet:
        extra = list(extra)
        n = max([self.n, *extra])
        mask = np.zeros(n + 1, dtype=bool)
        mask[: self.n + 1] = self.mask
        for m in extra:
            if m < 1:
                raise InvalidArgument(f"{m} is not a positive integer")
            mask[m] = True
        return IntSet(n, mask)
