"""Permutations of {0, ..., degree-1}.

Composition follows function application: ``g * h`` (and ``compose(g, h)``)
maps ``p`` to ``g(h(p))``, so the right factor acts first.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

__all__ = [
    "Perm",
    "compose",
    "power",
    "inverse",
    "order_and_parity",
    "noncommuting_stabilizer_witness",
]


class Perm:
    """An immutable permutation stored in one-line (image list) form."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not images:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Perm:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> Perm:
        cycles = [tuple(int(p) for p in c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=-1) + 1
        if degree is None:
            degree = max(top, 1)
        elif top > degree:
            raise ValueError(f"cycle point {top - 1} out of range for degree {degree}")
        images = list(range(degree))
        seen: set[int] = set()
        for c in cycles:
            if len(set(c)) != len(c) or seen.intersection(c):
                raise ValueError(f"cycles must be disjoint and repetition-free: {cycles}")
            seen.update(c)
            for a, b in zip(c, c[1:] + c[:1]):
                images[a] = b
        return cls._trusted(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Perm:
        """Parse ``[1,2,0]`` (image list) or ``(0 1 2)(3 4)`` (cycles)."""
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise ValueError(f"could not parse permutation {text!r}")
            body = s[1:-1].strip()
            images = [int(t) for t in re.split(r"[,\s]+", body) if t]
            p = cls(images)
            if degree is not None and degree != p.degree:
                if degree < p.degree:
                    raise ValueError(f"{text!r} has degree {p.degree}, expected {degree}")
                p = p.extended(degree)
            return p
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*", s):
            raise ValueError(f"could not parse permutation {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", s):
            pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
            if len(pts) > 1:
                cycles.append(pts)
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p]

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __invert__(self) -> Perm:
        return inverse(self)

    def __pow__(self, k: int) -> Perm:
        return power(self, k)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"

    def __str__(self) -> str:
        return self.cycle_string()

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def support(self) -> list[int]:
        return [i for i, p in enumerate(self.images) if i != p]

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if include_fixed or len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def to_list(self) -> list[int]:
        return list(self.images)

    def extended(self, degree: int) -> Perm:
        """The same permutation on a larger point set (new points fixed)."""
        if degree < self.degree:
            raise ValueError("cannot shrink a permutation")
        return Perm._trusted(self.images + tuple(range(self.degree, degree)))

    @property
    def order(self) -> int:
        return order_and_parity(self)[0]

    @property
    def is_even(self) -> bool:
        return order_and_parity(self)[1] == "even"


def _check_degrees(g: Perm, h: Perm) -> None:
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")


def compose(g: Perm, h: Perm) -> Perm:
    """``p -> g(h(p))``."""
    _check_degrees(g, h)
    gi = g.images
    return Perm._trusted(tuple([gi[i] for i in h.images]))


def inverse(g: Perm) -> Perm:
    inv = [0] * g.degree
    for i, p in enumerate(g.images):
        inv[p] = i
    return Perm._trusted(tuple(inv))


def power(g: Perm, k: int) -> Perm:
    """``g**k`` for any integer ``k``, computed cycle by cycle."""
    images = [0] * g.degree
    for c in g.cycles(include_fixed=True):
        n = len(c)
        shift = k % n
        for idx, p in enumerate(c):
            images[p] = c[(idx + shift) % n]
    return Perm._trusted(tuple(images))


def order_and_parity(g: Perm) -> tuple[int, str]:
    lengths = [len(c) for c in g.cycles()]
    order = math.lcm(*lengths) if lengths else 1
    transpositions = sum(n - 1 for n in lengths)
    return order, ("even" if transpositions % 2 == 0 else "odd")


def noncommuting_stabilizer_witness(x_size: int, g: Perm, x: int) -> Perm:
    """A 3-cycle fixing ``x`` that does not commute with ``g``.

    ``g`` must be a non-identity even permutation of ``x_size >= 5`` points
    fixing ``x``. With ``y`` the smallest point moved by ``g`` and ``u`` the
    smallest point outside ``{x, y, g(y), g^-1(y)}``, the witness is the
    cycle ``(y g^-1(y) u)``: then ``g tau (y) = y`` while ``tau g (y) != y``.
    """
    if g.degree != x_size:
        raise ValueError(f"g has degree {g.degree}, expected {x_size}")
    if x_size < 5:
        raise ValueError("need at least 5 points")
    if not 0 <= x < x_size:
        raise ValueError(f"point {x} out of range")
    if g.is_identity():
        raise ValueError("g must not be the identity")
    if g(x) != x:
        raise ValueError("g must fix x")
    if not g.is_even:
        raise ValueError("g must be an even permutation")
    y = g.support()[0]
    g_inv_y = g.images.index(y)
    excluded = {x, y, g(y), g_inv_y}
    u = next(p for p in range(x_size) if p not in excluded)
    return Perm.from_cycles([(y, g_inv_y, u)], x_size)
