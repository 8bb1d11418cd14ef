"""Level groups of a tree action and the chains they carry.

A :class:`LevelGroupSystem` is a finite set of portraits on a truncated tree.
Its level-``n`` group is generated by their restrictions to ``V_n``. Everything
that mentions an interior vertex (stabilizers of ``x_n``, kernels of the
restriction to ``V_n``) is computed in the faithful action on *all* vertices
of levels ``0..d`` and then read off on the leaves, so every returned group
acts on ``V_d``.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from typing import Sequence

from .perm import Perm
from .permgroup import PermGroup
from .portrait import Portrait
from .tree import SphericalIndex, VertexAddress

__all__ = ["LevelGroupSystem", "ChainPoint", "project", "restrict_to_leaves"]


def project(g: Perm, tree: SphericalIndex, n: int, level: int | None = None) -> Perm:
    """The permutation of ``V_n`` induced by a permutation ``g`` of ``V_level`` (default: leaves)."""
    level = tree.depth if level is None else level
    if not 0 <= n <= level:
        raise ValueError(f"cannot project level {level} to level {n}")
    span = tree.level_size(level) // tree.level_size(n)
    return Perm._trusted(tuple(g(k * span) // span for k in range(tree.level_size(n))))


def restrict_to_leaves(g: Perm, tree: SphericalIndex) -> Perm:
    """Leaf part of a permutation of all vertices (levels stacked root first)."""
    off = sum(tree.level_size(i) for i in range(tree.depth))
    return Perm._trusted(tuple(p - off for p in g.images[off:]))


@dataclass(frozen=True)
class ChainPoint:
    path: VertexAddress
    stabilizers: tuple[PermGroup, ...]
    indices: tuple[int, ...]


class LevelGroupSystem:
    """Portraits on a truncated tree together with their level groups.

    ``order_bounds`` optionally maps a level to a proven upper bound on the
    order of its level group (for instance when every generator is known to
    lie in an iterated wreath product). Bounds only speed up the computation.
    """

    def __init__(
        self,
        tree: SphericalIndex,
        generators: Sequence[Portrait],
        order_bounds: dict[int, int] | None = None,
        name: str = "",
    ):
        for a in generators:
            if a.tree != tree:
                raise ValueError("generator lives on a different tree")
        self.tree = tree
        self.generators: tuple[Portrait, ...] = tuple(generators)
        self.order_bounds = dict(order_bounds or {})
        self.name = name
        self._levels: dict[int, PermGroup] = {}
        self._tree_group: PermGroup | None = None
        self._lock = threading.Lock()

    @property
    def depth(self) -> int:
        return self.tree.depth

    def level_group(self, n: int) -> PermGroup:
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} outside 0..{self.depth}")
        with self._lock:
            G = self._levels.get(n)
            if G is None:
                gens = [a.level_restriction(n) for a in self.generators]
                G = PermGroup(gens, self.tree.level_size(n), order_bound=self.order_bounds.get(n))
                self._levels[n] = G
        return G

    def truncated(self, depth: int) -> LevelGroupSystem:
        """The same action read on the first ``depth`` levels only."""
        if not 1 <= depth <= self.depth:
            raise ValueError(f"depth {depth} outside 1..{self.depth}")
        if depth == self.depth:
            return self
        tree = SphericalIndex(self.tree.entries[:depth])
        gens = [Portrait(tree, a.decorations[:depth]) for a in self.generators]
        bounds = {n: b for n, b in self.order_bounds.items() if n <= depth}
        return LevelGroupSystem(tree, gens, bounds, self.name)

    def level_orders(self) -> list[int]:
        return [self.level_group(n).order for n in range(self.depth + 1)]

    def _offsets(self) -> list[int]:
        out, total = [], 0
        for i in range(self.depth + 1):
            out.append(total)
            total += self.tree.level_size(i)
        return out

    def vertex_point(self, v: VertexAddress) -> int:
        """Index of ``v`` in the action on all vertices."""
        self.tree.validate(v)
        return self._offsets()[v.level] + self.tree.index(v)

    def tree_group(self) -> PermGroup:
        """The action on the vertices of every level at once (faithful, same order as level ``d``)."""
        with self._lock:
            if self._tree_group is None:
                offs = self._offsets()
                degree = offs[-1] + self.tree.level_size(self.depth)
                gens = []
                for a in self.generators:
                    images: list[int] = []
                    for i in range(self.depth + 1):
                        images.extend(offs[i] + p for p in a.level_images(i))
                    gens.append(Perm._trusted(tuple(images)))
                bound = self.order_bounds.get(self.depth)
                self._tree_group = PermGroup(gens, degree, order_bound=bound)
            return self._tree_group

    def _leaf_group(self, H: PermGroup) -> PermGroup:
        gens = [restrict_to_leaves(g, self.tree) for g in H.strong_generators()]
        return PermGroup(gens, self.tree.level_size(self.depth), order_bound=H.order)

    def vertex_stabilizer(self, v: VertexAddress) -> PermGroup:
        """Elements of the depth-``d`` level group fixing ``v`` (any level), acting on leaves."""
        if v.level == self.depth:
            return self.level_group(self.depth).point_stabilizer(self.tree.index(v))
        if v.level == 0:
            return self.level_group(self.depth)
        T = self.tree_group()
        return self._leaf_group(T.point_stabilizer(self.vertex_point(v)))

    def vertex_stabilizer_chain(self, x: VertexAddress) -> ChainPoint:
        self._check_path(x)
        G = self.level_group(self.depth)
        stabs = []
        indices = []
        for n in range(self.depth + 1):
            S = self.vertex_stabilizer(x.truncate(n))
            stabs.append(S)
            indices.append(G.order // S.order)
        return ChainPoint(x, tuple(stabs), tuple(indices))

    def core(self, n: int) -> PermGroup:
        """Kernel of the restriction from level ``d`` to level ``n``; checked to be normal."""
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} outside 0..{self.depth}")
        G = self.level_group(self.depth)
        if n == 0:
            return G
        if n == self.depth:
            return PermGroup([], G.degree)
        T = self.tree_group()
        offs = self._offsets()
        points = list(range(offs[n], offs[n] + self.tree.level_size(n)))
        C = self._leaf_group(T.pointwise_stabilizer(points))
        if not C.is_normal_in(G):
            raise ArithmeticError(f"kernel at level {n} failed the normality check")
        return C

    def core_by_conjugates(self, n: int, x: VertexAddress, limit: int = 10**5) -> PermGroup:
        """The intersection of all conjugates of the stabilizer of ``x_n``, by enumeration."""
        G = self.level_group(self.depth)
        if G.order > limit:
            raise ValueError(f"group of order {G.order} exceeds the enumeration limit {limit}")
        Gn = self.vertex_stabilizer(x.truncate(n))
        elements = list(G.elements())
        keep = [h for h in Gn.elements() if all(Gn.contains(~g * h * g) for g in elements)]
        return PermGroup(keep, G.degree)

    def discriminant_truncation(self, x: VertexAddress) -> PermGroup:
        self._check_path(x)
        return self.level_group(self.depth).point_stabilizer(self.tree.index(x))

    def coset_labeling(self, x: VertexAddress, n: int) -> dict[VertexAddress, Perm]:
        """For each ``v`` in ``V_n`` a level-``d`` element ``g`` with ``g x_n = v``.

        The label of ``v`` names the coset ``g G_n``. The conjugation identity
        ``Stab(g x_n) = g Stab(x_n) g^-1`` is checked for every label.
        """
        self._check_path(x)
        G = self.level_group(self.depth)
        x_n = x.truncate(n)
        span = self.tree.level_size(self.depth) // self.tree.level_size(n)
        leaf = self.tree.index(x_n) * span
        trans = G.orbit_transversal(leaf)
        labels: dict[VertexAddress, Perm] = {}
        for q, g in trans.items():
            v = self.tree.vertex(n, q // span)
            labels.setdefault(v, g)
        if len(labels) != self.tree.level_size(n):
            raise ValueError(f"the level-{n} action is not transitive")
        base = self.vertex_stabilizer(x_n)
        for v, g in labels.items():
            target = self.vertex_stabilizer(v)
            if target.order != base.order or not all(
                target.contains(g * h * ~g) for h in base.generators
            ):
                raise ArithmeticError(f"conjugation identity fails at vertex {v}")
        return labels

    def _check_path(self, x: VertexAddress) -> None:
        self.tree.validate(x)
        if x.level != self.depth:
            raise ValueError(f"path must have length {self.depth}, got {x.level}")

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "index": list(self.tree.entries),
            "generators": [a.to_doc() for a in self.generators],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2)

    @classmethod
    def from_doc(cls, doc: dict) -> LevelGroupSystem:
        # Order bounds are not serialized: a bound read from a file is not proven.
        tree = SphericalIndex(doc["index"])
        gens = [Portrait.from_doc(tree, g) for g in doc["generators"]]
        return cls(tree, gens, name=doc.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> LevelGroupSystem:
        return cls.from_doc(json.loads(text))
