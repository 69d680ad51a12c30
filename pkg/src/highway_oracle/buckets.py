from __future__ import annotations

from heapq import heappop, heappush


class MonotoneError(AssertionError):
    pass


class BucketQueue:
    """Bucket queue over non-negative integer priorities.

    Items are popped a whole bucket at a time.  Priorities must stay above
    the last popped bucket; a violating push raises :class:`MonotoneError`
    instead of silently reordering the search.
    """

    def __init__(self):
        self._buckets: dict[int, list] = {}
        self._keys: list[int] = []
        self.last = -1

    def __bool__(self):
        return bool(self._keys)

    def __len__(self):
        return sum(len(b) for b in self._buckets.values())

    def push(self, priority: int, item) -> None:
        if priority <= self.last:
            raise MonotoneError(f"push at {priority} after popping {self.last}")
        bucket = self._buckets.get(priority)
        if bucket is None:
            self._buckets[priority] = bucket = []
            heappush(self._keys, priority)
        bucket.append(item)

    def pop_bucket(self) -> tuple[int, list]:
        priority = heappop(self._keys)
        self.last = priority
        return priority, self._buckets.pop(priority)
