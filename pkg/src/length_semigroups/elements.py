from __future__ import annotations

from bisect import bisect_left
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .transform import Transformation


class ElementSet:
    """Deduplicated, canonically sorted set of transformations on a common X_n.

    Membership is a binary search over the sorted image tuples.
    """

    def __init__(self, elements: Iterable[Transformation], n: int | None = None,
                 presorted: bool = False):
        elems = list(elements) if presorted else sorted(set(elements))
        if n is None:
            if not elems:
                raise ValueError("cannot infer n from an empty set")
            n = elems[0].n
        for a in elems:
            if a.n != n:
                raise ValueError(f"mixed domain sizes: {a.n} != {n}")
        self.n = n
        self.elements: tuple[Transformation, ...] = tuple(elems)
        self._keys = [a.images for a in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Transformation]:
        return iter(self.elements)

    def __getitem__(self, i: int) -> Transformation:
        return self.elements[i]

    def __contains__(self, a: object) -> bool:
        return isinstance(a, Transformation) and self.index(a) is not None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.n == other.n and self._keys == other._keys

    def __repr__(self) -> str:
        return f"ElementSet(n={self.n}, size={len(self)})"

    def index(self, a: Transformation) -> int | None:
        i = bisect_left(self._keys, a.images)
        if i < len(self._keys) and self._keys[i] == a.images:
            return i
        return None

    def issubset(self, other: ElementSet) -> bool:
        return all(a in other for a in self)

    def as_set(self) -> set[Transformation]:
        return set(self.elements)

    @cached_property
    def array(self) -> np.ndarray:
        """(size, n) array of 1-indexed images, rows in canonical order."""
        if not self.elements:
            return np.zeros((0, self.n), dtype=np.int8)
        return np.array(self._keys, dtype=np.int8)
