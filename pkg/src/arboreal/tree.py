"""Spherically homogeneous rooted trees truncated at a finite depth.

A vertex at level ``n`` is its digit sequence ``(a_1, ..., a_n)`` with
``0 <= a_i < m_i``. Vertices of one level are ordered lexicographically and
numbered in mixed radix, so the descendants of a vertex at any deeper level
form a contiguous range of indices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

__all__ = [
    "SphericalIndex",
    "VertexAddress",
    "level_size",
    "metric",
    "in_cylinder",
    "residual_vertices",
]


@dataclass(frozen=True)
class VertexAddress:
    digits: tuple[int, ...] = ()

    def __init__(self, digits: Sequence[int] = ()):
        object.__setattr__(self, "digits", tuple(int(d) for d in digits))

    @property
    def level(self) -> int:
        return len(self.digits)

    def truncate(self, n: int) -> VertexAddress:
        if not 0 <= n <= self.level:
            raise ValueError(f"cannot truncate a level-{self.level} vertex to level {n}")
        return VertexAddress(self.digits[:n])

    def is_descendant_of(self, other: VertexAddress) -> bool:
        """True when ``other`` is an ancestor of this vertex or equal to it."""
        return self.digits[: other.level] == other.digits

    def to_text(self) -> str:
        return ",".join(map(str, self.digits))

    @classmethod
    def parse(cls, text: str) -> VertexAddress:
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"bad vertex {text!r}; expected comma-separated digits") from None

    def __str__(self) -> str:
        return self.to_text()


# A boundary point truncated at the full depth is just a deepest vertex.
PathPrefix = VertexAddress


@dataclass(frozen=True)
class SphericalIndex:
    entries: tuple[int, ...]

    def __init__(self, entries: Sequence[int]):
        entries = tuple(int(m) for m in entries)
        bad = [m for m in entries if m < 2]
        if bad:
            raise ValueError(f"branching numbers must be >= 2, got {list(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def uniform(cls, m: int, depth: int) -> SphericalIndex:
        return cls([m] * depth)

    @property
    def depth(self) -> int:
        return len(self.entries)

    def branching(self, n: int) -> int:
        """``m_n``, the number of children of a level ``n-1`` vertex."""
        return self.entries[n - 1]

    def level_size(self, n: int) -> int:
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} outside 0..{self.depth}")
        return math.prod(self.entries[:n])

    def validate(self, v: VertexAddress) -> None:
        if v.level > self.depth:
            raise ValueError(f"vertex {v} is deeper than the tree (depth {self.depth})")
        for i, (a, m) in enumerate(zip(v.digits, self.entries)):
            if not 0 <= a < m:
                raise ValueError(f"digit {a} at level {i + 1} outside 0..{m - 1}")

    def index(self, v: VertexAddress | Sequence[int]) -> int:
        digits = v.digits if isinstance(v, VertexAddress) else tuple(v)
        k = 0
        for a, m in zip(digits, self.entries):
            k = k * m + a
        return k

    def vertex(self, n: int, k: int) -> VertexAddress:
        size = self.level_size(n)
        if not 0 <= k < size:
            raise ValueError(f"index {k} outside level {n} of size {size}")
        digits = []
        for m in reversed(self.entries[:n]):
            k, a = divmod(k, m)
            digits.append(a)
        return VertexAddress(reversed(digits))

    def vertices(self, n: int) -> Iterator[VertexAddress]:
        for k in range(self.level_size(n)):
            yield self.vertex(n, k)

    def descendant_range(self, v: VertexAddress, n: int) -> range:
        """Indices at level ``n`` of the descendants of ``v``."""
        self.validate(v)
        if n < v.level or n > self.depth:
            raise ValueError(f"level {n} is not below vertex {v}")
        span = math.prod(self.entries[v.level : n])
        start = self.index(v) * span
        return range(start, start + span)

    def parent(self, v: VertexAddress) -> VertexAddress:
        self.validate(v)
        if v.level == 0:
            raise ValueError("the root has no parent")
        return VertexAddress(v.digits[:-1])

    def children(self, v: VertexAddress) -> list[VertexAddress]:
        self.validate(v)
        if v.level >= self.depth:
            raise ValueError(f"vertex {v} is on the deepest level")
        return [VertexAddress(v.digits + (a,)) for a in range(self.entries[v.level])]

    def to_json(self, v: VertexAddress | None = None) -> str:
        doc: dict = {"index": list(self.entries)}
        if v is not None:
            doc["vertex"] = list(v.digits)
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> tuple[SphericalIndex, VertexAddress | None]:
        doc = json.loads(text)
        tree = cls(doc["index"])
        v = None
        if "vertex" in doc:
            v = VertexAddress(doc["vertex"])
            tree.validate(v)
        return tree, v


def level_size(m: SphericalIndex | Sequence[int], n: int) -> int:
    tree = m if isinstance(m, SphericalIndex) else SphericalIndex(m)
    return tree.level_size(n)


def metric(p: VertexAddress, q: VertexAddress) -> Fraction:
    """``0`` for equal prefixes, else ``1/2^m`` with ``m`` the first level where they differ."""
    if p.level != q.level:
        raise ValueError(f"prefixes of different depths: {p.level} vs {q.level}")
    for m, (a, b) in enumerate(zip(p.digits, q.digits), start=1):
        if a != b:
            return Fraction(1, 2**m)
    return Fraction(0)


def in_cylinder(p: VertexAddress, x_n: VertexAddress) -> bool:
    return x_n.level <= p.level and p.is_descendant_of(x_n)


def residual_vertices(
    tree: SphericalIndex, x: VertexAddress, n: int, i: int
) -> list[VertexAddress]:
    """Level-``i`` descendants of ``x_n`` that do not descend from ``x_{n+1}``.

    For ``i == n`` this is ``[x_n]``. The sets for ``n = 0..i`` partition level ``i``.
    """
    tree.validate(x)
    if x.level != tree.depth:
        raise ValueError("the base path must reach the full depth")
    if not 0 <= n <= i <= tree.depth:
        raise ValueError(f"need 0 <= n <= i <= depth, got n={n}, i={i}")
    x_n = x.truncate(n)
    if i == n:
        return [x_n]
    inner = tree.descendant_range(x.truncate(n + 1), i)
    return [
        tree.vertex(i, k)
        for k in tree.descendant_range(x_n, i)
        if k not in inner
    ]
