"""Stabilizer and centralizer chains at a finite depth, and what they suggest.

``K_n`` is the part of the path stabilizer acting trivially below ``x_n``.
``Z_n`` is the part of ``K_n`` commuting with everything that preserves the
cylinder of ``x_n``. At a finite depth the centralizer can only be bounded
from above: deep decorations may commute by accident. Every classification
flag is evidence over the computed horizon, never a proof.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from typing import Sequence

from .chains import LevelGroupSystem, project
from .perm import Perm
from .permgroup import PermGroup
from .portrait import Portrait
from .tree import SphericalIndex, VertexAddress

__all__ = [
    "max_enum",
    "stabilizer_K",
    "cylinder_preserving",
    "centralizer_Z_upper",
    "brute_force_K",
    "brute_force_Z",
    "kernel_level",
    "ChainRow",
    "ChainReport",
    "chain_report",
    "classify_flags",
    "NonHausdorffVerdict",
    "non_hausdorff_check",
]

HORIZON_CAVEAT = (
    "All flags are evidence over the computed horizon only: boundedness of an "
    "infinite chain cannot be decided from a finite truncation, and "
    "z_upper_order is an upper bound that deep decorations may inflate."
)


def max_enum() -> int:
    """Brute-force cap, read from ``ARBOREAL_MAX_ENUM`` (default ``2**20``)."""
    raw = os.environ.get("ARBOREAL_MAX_ENUM")
    if raw is None:
        return 2**20
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ARBOREAL_MAX_ENUM must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("ARBOREAL_MAX_ENUM must be positive")
    return value


def _leaves_below(sys: LevelGroupSystem, x: VertexAddress, n: int) -> range:
    return sys.tree.descendant_range(x.truncate(n), sys.depth)


def stabilizer_K(sys: LevelGroupSystem, x: VertexAddress, n: int) -> PermGroup:
    """Elements of the depth-``d`` group fixing every leaf below ``x_n``."""
    sys._check_path(x)
    if not 0 <= n <= sys.depth:
        raise ValueError(f"level {n} outside 0..{sys.depth}")
    return sys.level_group(sys.depth).pointwise_stabilizer(list(_leaves_below(sys, x, n)))


def cylinder_preserving(sys: LevelGroupSystem, x: VertexAddress, n: int) -> PermGroup:
    """Elements of the depth-``d`` group mapping the cylinder of ``x_n`` to itself."""
    sys._check_path(x)
    return sys.vertex_stabilizer(x.truncate(n))


def centralizer_Z_upper(
    sys: LevelGroupSystem, x: VertexAddress, n: int, limit: int | None = None
) -> PermGroup:
    """Elements of ``K_n`` commuting with every cylinder-preserving element.

    An upper bound for the true centralizer group at level ``n``.
    """
    K = stabilizer_K(sys, x, n)
    if K.is_trivial():
        return K
    U = cylinder_preserving(sys, x, n)
    found = K.centralizer_elements(U.generators, limit=limit)
    return PermGroup(found, K.degree)


def brute_force_K(sys: LevelGroupSystem, x: VertexAddress, n: int) -> list[Perm]:
    """``K_n`` by filtering every element of the path stabilizer."""
    D = sys.discriminant_truncation(x)
    cap = max_enum()
    if D.order > cap:
        raise ValueError(f"discriminant of order {D.order} exceeds the enumeration cap {cap}")
    below = list(_leaves_below(sys, x, n))
    return [g for g in D.elements() if all(g(p) == p for p in below)]


def brute_force_Z(sys: LevelGroupSystem, x: VertexAddress, n: int) -> list[Perm]:
    """The centralizer bound by testing each element of ``K_n`` against each cylinder-preserving element."""
    K = brute_force_K(sys, x, n)
    U = cylinder_preserving(sys, x, n)
    cap = max_enum()
    if U.order > cap:
        raise ValueError(f"group of order {U.order} exceeds the enumeration cap {cap}")
    others = list(U.elements())
    return [g for g in K if all(g * h == h * g for h in others)]


def kernel_level(sys: LevelGroupSystem, elements: Sequence[Perm]) -> int:
    """Deepest level on which every element of ``elements`` acts trivially."""
    level = 0
    for n in range(sys.depth + 1):
        if all(project(g, sys.tree, n).is_identity() for g in elements):
            level = n
        else:
            break
    return level


@dataclass
class ChainRow:
    n: int
    k_order: int
    z_upper_order: int
    flags: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {
            "n": self.n,
            "k_order": str(self.k_order),
            "z_upper_order": str(self.z_upper_order),
            "flags": self.flags,
        }


@dataclass
class ChainReport:
    depth: int
    path: tuple[int, ...]
    buffer: int
    rows: list[ChainRow]
    flags: dict = field(default_factory=dict)
    horizon_caveat: str = HORIZON_CAVEAT
    system: str = ""

    def to_doc(self) -> dict:
        return {
            "system": self.system,
            "depth": self.depth,
            "buffer": self.buffer,
            "path": list(self.path),
            "rows": [r.to_doc() for r in self.rows],
            "flags": self.flags,
            "horizon_caveat": self.horizon_caveat,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["depth", "buffer", "n", "k_order", "z_upper_order", "z_proper", "kernel_level", "k_cross_check"])
        for r in self.rows:
            w.writerow([
                self.depth,
                self.buffer,
                r.n,
                r.k_order,
                r.z_upper_order,
                r.flags.get("z_proper"),
                r.flags.get("kernel_level"),
                r.flags.get("k_cross_check"),
            ])
        return buf.getvalue()

    @classmethod
    def from_doc(cls, doc: dict) -> ChainReport:
        rows = [
            ChainRow(r["n"], int(r["k_order"]), int(r["z_upper_order"]), r.get("flags", {}))
            for r in doc["rows"]
        ]
        return cls(
            depth=doc["depth"],
            path=tuple(doc["path"]),
            buffer=doc.get("buffer", 0),
            rows=rows,
            flags=doc.get("flags", {}),
            horizon_caveat=doc.get("horizon_caveat", HORIZON_CAVEAT),
            system=doc.get("system", ""),
        )


def chain_report(
    sys: LevelGroupSystem, x: VertexAddress, n_max: int, buffer: int = 2
) -> ChainReport:
    """``K_n`` and the centralizer bound for ``n = 0..n_max`` at the system's depth."""
    if n_max < 0 or buffer < 0:
        raise ValueError("n_max and buffer must be non-negative")
    if n_max + buffer > sys.depth:
        raise ValueError(
            f"n_max + buffer = {n_max + buffer} exceeds the depth {sys.depth}"
        )
    sys._check_path(x)
    cap = max_enum()
    disc_order = sys.discriminant_truncation(x).order
    rows = []
    for n in range(n_max + 1):
        K = stabilizer_K(sys, x, n)
        Z = centralizer_Z_upper(sys, x, n)
        if disc_order <= cap:
            cross = len(brute_force_K(sys, x, n)) == K.order
        else:
            cross = None
        zgens = list(Z.generators)
        rows.append(ChainRow(
            n,
            K.order,
            Z.order,
            {
                "z_proper": Z.order < K.order,
                "kernel_level": kernel_level(sys, zgens),
                "k_cross_check": cross,
            },
        ))
    report = ChainReport(sys.depth, x.digits, buffer, rows, system=sys.name)
    report.flags = classify_flags(report)
    return report


def classify_flags(report: ChainReport) -> dict:
    ks = [r.k_order for r in report.rows]
    zs = [r.z_upper_order for r in report.rows]
    wild = len(ks) > 1 and all(a < b for a, b in zip(ks, ks[1:]))
    stable = len(ks) > 1 and ks[-1] == ks[-2]
    flat = wild and all(z == k for z, k in zip(zs, ks))
    return {
        "wild_evidence": wild,
        "stable_evidence": stable,
        "finite_type_evidence": True,
        "flat_type_evidence": flat,
        "dynamically_wild_evidence": wild and any(z < k for z, k in zip(zs, ks)),
        "algebraically_stable_evidence": len(zs) > 1 and zs[-1] == zs[-2],
        "horizon": {
            "depth": report.depth,
            "n_max": report.rows[-1].n if report.rows else None,
            "buffer": report.buffer,
        },
    }


@dataclass
class NonHausdorffVerdict:
    """Per-level outcome of the two conditions, for ``l = 0..d-2``."""

    fixes_point: bool
    moves_inside: list[bool]
    fixed_subtree: list[VertexAddress | None]

    @property
    def condition2(self) -> bool:
        return bool(self.moves_inside) and all(self.moves_inside)

    @property
    def condition3(self) -> bool:
        return bool(self.fixed_subtree) and all(v is not None for v in self.fixed_subtree)

    @property
    def consistent(self) -> bool:
        return self.fixes_point and self.condition2 and self.condition3


def non_hausdorff_check(a: Portrait, x: VertexAddress) -> NonHausdorffVerdict:
    """Scan the cylinders of ``x_l`` for ``l <= d-2``.

    Condition (2) at ``l``: ``a`` moves some leaf below ``x_l``. Condition (3)
    at ``l``: some vertex below ``x_l`` and off the path has all of its leaves
    fixed by ``a``; the first such vertex in level-then-index order is
    recorded. A portrait not fixing ``x`` is reported through ``fixes_point``
    rather than raised, so that it fails the verdict visibly.
    """
    tree = a.tree
    tree.validate(x)
    d = tree.depth
    if x.level != d:
        raise ValueError(f"path must have length {d}")
    leaves = a.level_images(d)
    fixes = leaves[tree.index(x)] == tree.index(x)
    moves, fixed = [], []
    for ell in range(d - 1):
        x_l = x.truncate(ell)
        below = tree.descendant_range(x_l, d)
        moves.append(any(leaves[k] != k for k in below))
        found = None
        for level in range(ell + 1, d + 1):
            on_path = tree.index(x.truncate(level))
            for k in tree.descendant_range(x_l, level):
                if k == on_path:
                    continue
                v = tree.vertex(level, k)
                if all(leaves[p] == p for p in tree.descendant_range(v, d)):
                    found = v
                    break
            if found is not None:
                break
        fixed.append(found)
    return NonHausdorffVerdict(fixes, moves, fixed)
