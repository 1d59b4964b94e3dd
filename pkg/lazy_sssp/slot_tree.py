"""
Counting tree over cache slots.

A bottom-up sum tree with power-of-two capacity. Leaves hold the number of
cache entries stored at a slot; internal nodes hold subtree totals, so suffix
counts cost O(log D).
"""

from typing import List


class SlotTree:
    """
    Integer sum tree indexed by cache slot.

    Args:
        slots: Number of addressable slots, ``0 .. slots - 1``

    Examples:
        >>> t = SlotTree(10)
        >>> t.add(3, 1)
        >>> t.add(7, 2)
        >>> t.suffix(4)
        2
        >>> t.suffix(0)
        3
    """

    __slots__ = ("_size", "_values")

    def __init__(self, slots: int):
        assert slots > 0
        size = 1
        while size < slots:
            size <<= 1
        self._size = size
        self._values: List[int] = [0] * (2 * size)

    def add(self, slot: int, delta: int) -> None:
        assert 0 <= slot < self._size
        idx = slot + self._size
        while idx >= 1:
            self._values[idx] += delta
            idx >>= 1

    def count(self, start: int, end: int) -> int:
        """Number of entries in slots ``[start, end)``."""
        start = max(start, 0) + self._size
        end = min(end, self._size) + self._size
        res = 0
        while start < end:
            if start & 1:
                res += self._values[start]
                start += 1
            if end & 1:
                end -= 1
                res += self._values[end]
            start >>= 1
            end >>= 1
        return res

    def suffix(self, start: int) -> int:
        """Number of entries in slots ``>= start``; negative starts count everything."""
        if start <= 0:
            return self._values[1]
        return self.count(start, self._size)

    def __getitem__(self, slot: int) -> int:
        return self._values[slot + self._size]

    @property
    def total(self) -> int:
        return self._values[1]

    def __len__(self) -> int:
        return self._size
