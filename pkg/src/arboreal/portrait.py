"""Automorphisms of a truncated tree stored as portraits.

A portrait assigns to every vertex ``v`` above the deepest level a
permutation of ``v``'s children. Decorations are *labelled by image*: to move
a vertex ``(d_1, ..., d_n)`` the digits are rewritten top-down, and the new
digit ``e_{i+1}`` is ``dec(e_1 ... e_i)(d_{i+1})``, read at the ancestor
that has already been moved. With this convention one level of a portrait
acts exactly like a wreath element ``(x, y) -> (s(x), f(s(x))(y))``.
"""

from __future__ import annotations

import json
from typing import Callable, Mapping, Sequence

from .perm import Perm
from .tree import SphericalIndex, VertexAddress

__all__ = ["Portrait", "wreath_act", "wreath_decompose", "wreath_assemble"]


class Portrait:
    __slots__ = ("tree", "decorations", "_hash")

    def __init__(self, tree: SphericalIndex, decorations: Sequence[Sequence[Perm]]):
        decorations = tuple(tuple(level) for level in decorations)
        if len(decorations) != tree.depth:
            raise ValueError(f"need {tree.depth} decoration levels, got {len(decorations)}")
        for i, level in enumerate(decorations):
            if len(level) != tree.level_size(i):
                raise ValueError(
                    f"level {i} needs {tree.level_size(i)} decorations, got {len(level)}"
                )
            m = tree.entries[i]
            for p in level:
                if p.degree != m:
                    raise ValueError(f"decoration of degree {p.degree} on a level with {m} children")
        self.tree = tree
        self.decorations = decorations
        self._hash = hash((tree, decorations))

    @classmethod
    def identity(cls, tree: SphericalIndex) -> Portrait:
        return cls(
            tree,
            [[Perm.identity(m)] * tree.level_size(i) for i, m in enumerate(tree.entries)],
        )

    @classmethod
    def from_decorations(
        cls, tree: SphericalIndex, decorations: Mapping[VertexAddress, Perm]
    ) -> Portrait:
        """A portrait that is trivial except at the listed vertices."""
        levels = [[Perm.identity(m)] * tree.level_size(i) for i, m in enumerate(tree.entries)]
        for v, p in decorations.items():
            tree.validate(v)
            if v.level >= tree.depth:
                raise ValueError(f"vertex {v} is on the deepest level and has no children")
            levels[v.level][tree.index(v)] = p
        return cls(tree, levels)

    @classmethod
    def from_level_perms(cls, tree: SphericalIndex, perms: Sequence[Perm]) -> Portrait:
        """The coordinatewise action: every level-``i`` vertex carries ``perms[i]``."""
        if len(perms) != tree.depth:
            raise ValueError(f"need {tree.depth} level permutations, got {len(perms)}")
        for i, (p, m) in enumerate(zip(perms, tree.entries)):
            if p.degree != m:
                raise ValueError(f"level {i + 1} permutation has degree {p.degree}, expected {m}")
        return cls(tree, [[p] * tree.level_size(i) for i, p in enumerate(perms)])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Portrait)
            and self.tree == other.tree
            and self.decorations == other.decorations
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        moved = [
            f"{self.tree.vertex(i, k)}:{p.cycle_string()}"
            for i, level in enumerate(self.decorations)
            for k, p in enumerate(level)
            if not p.is_identity()
        ]
        return f"Portrait({list(self.tree.entries)}, {{{', '.join(moved)}}})"

    def is_identity(self) -> bool:
        return all(p.is_identity() for level in self.decorations for p in level)

    def decoration(self, v: VertexAddress) -> Perm:
        return self.decorations[v.level][self.tree.index(v)]

    def apply(self, v: VertexAddress) -> VertexAddress:
        self.tree.validate(v)
        out: list[int] = []
        k = 0
        for i, d in enumerate(v.digits):
            e = self.decorations[i][k](d)
            out.append(e)
            k = k * self.tree.entries[i] + e
        return VertexAddress(out)

    __call__ = apply

    def level_images(self, n: int) -> tuple[int, ...]:
        """One-line form of the permutation induced on level ``n``."""
        if not 0 <= n <= self.tree.depth:
            raise ValueError(f"level {n} outside 0..{self.tree.depth}")
        head: tuple[int, ...] = (0,)
        for i in range(n):
            m = self.tree.entries[i]
            dec = self.decorations[i]
            head = tuple(
                head[k] * m + dec[head[k]].images[y] for k in range(len(head)) for y in range(m)
            )
        return head

    def level_restriction(self, n: int) -> Perm:
        return Perm._trusted(self.level_images(n))

    def _check_shape(self, other: Portrait) -> None:
        if self.tree != other.tree:
            raise ValueError("portraits live on different trees")

    def __mul__(self, other: Portrait) -> Portrait:
        """``(a * b)(v) == a(b(v))``."""
        self._check_shape(other)
        out = []
        for i in range(self.tree.depth):
            a_head = self.level_images(i)
            da, db = self.decorations[i], other.decorations[i]
            level = [None] * len(da)
            for w, p in enumerate(db):
                u = a_head[w]
                level[u] = da[u] * p
            out.append(level)
        return Portrait(self.tree, out)

    def __invert__(self) -> Portrait:
        out = []
        for i in range(self.tree.depth):
            head = self.level_images(i)
            dec = self.decorations[i]
            out.append([~dec[head[w]] for w in range(len(dec))])
        return Portrait(self.tree, out)

    def __pow__(self, k: int) -> Portrait:
        base = self if k >= 0 else ~self
        result = Portrait.identity(self.tree)
        for _ in range(abs(k)):
            result = base * result
        return result

    def fixes(self, v: VertexAddress) -> bool:
        return self.apply(v) == v

    def to_doc(self) -> dict | None:
        def node(v: VertexAddress) -> dict | None:
            subtree_trivial = True
            for i in range(v.level, self.tree.depth):
                r = self.tree.descendant_range(v, i)
                if any(not self.decorations[i][k].is_identity() for k in r):
                    subtree_trivial = False
                    break
            if subtree_trivial:
                return None
            doc: dict = {"perm": self.decoration(v).to_list()}
            if v.level + 1 < self.tree.depth:
                doc["children"] = [node(c) for c in self.tree.children(v)]
            return doc

        return node(VertexAddress(()))

    def to_json(self) -> str:
        return json.dumps({"index": list(self.tree.entries), "portrait": self.to_doc()})

    @classmethod
    def from_doc(cls, tree: SphericalIndex, doc: dict | None) -> Portrait:
        decs: dict[VertexAddress, Perm] = {}

        def walk(v: VertexAddress, node: dict | None) -> None:
            if node is None:
                return
            decs[v] = Perm(node["perm"])
            children = node.get("children")
            if children is None:
                return
            if v.level + 1 >= tree.depth or len(children) != tree.entries[v.level]:
                raise ValueError(f"bad children list at vertex {v}")
            for a, child in enumerate(children):
                walk(VertexAddress(v.digits + (a,)), child)

        walk(VertexAddress(()), doc)
        return cls.from_decorations(tree, decs)

    @classmethod
    def from_json(cls, text: str) -> Portrait:
        doc = json.loads(text)
        return cls.from_doc(SphericalIndex(doc["index"]), doc["portrait"])


def wreath_act(s: Perm, f: Callable[[int], Perm], point: tuple[int, int]) -> tuple[int, int]:
    """``(x, y) -> (s(x), f(s(x))(y))``."""
    x, y = point
    sx = s(x)
    return sx, f(sx)(y)


def wreath_decompose(a: Portrait, i: int) -> tuple[Perm, Callable[[int], Perm]]:
    """Split the action on level ``i + 1`` into a head on ``V_i`` and a tail ``V_i -> Sym(m_{i+1})``."""
    if not 0 <= i < a.tree.depth:
        raise ValueError(f"level {i} outside 0..{a.tree.depth - 1}")
    head = a.level_restriction(i)
    tails = a.decorations[i]
    return head, tails.__getitem__


def wreath_assemble(head: Perm, tail: Callable[[int], Perm], m: int) -> Perm:
    """The permutation of ``V_i x {0..m-1}`` (numbered ``x*m + y``) given by ``wreath_act``."""
    images = []
    for x in range(head.degree):
        for y in range(m):
            x2, y2 = wreath_act(head, tail, (x, y))
            images.append(x2 * m + y2)
    return Perm._trusted(tuple(images))
