"""Builders for the three families of tree actions and their exact oracles.

* product actions of alternating groups, generated by two elements whose
  coordinates are Miller-type cycle pairs;
* iterated wreath products of transitive groups;
* products of two tree actions on the product tree.

Every builder certifies its output by an exact group order.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

from sympy import isprime, nextprime
from sympy.ntheory.modular import crt

from .chains import LevelGroupSystem
from .classify import centralizer_Z_upper, cylinder_preserving, stabilizer_K
from .perm import Perm, noncommuting_stabilizer_witness
from .permgroup import PermGroup, alternating_group, cyclic_group, symmetric_group
from .portrait import Portrait
from .tree import SphericalIndex, VertexAddress, residual_vertices

__all__ = [
    "CertificationError",
    "ProductLevel",
    "ProductConfig",
    "WreathConfig",
    "validate_po",
    "miller_generators",
    "crt_exponent",
    "crt_isolation_check",
    "build_theorem1",
    "theorem1_level_order",
    "product_K_order",
    "certify_product_centralizer",
    "build_wreath",
    "wreath_order",
    "expected_S_order",
    "expected_K_order",
    "structural_K_order",
    "odometer",
    "build_product_action",
    "product_leaf_perm",
    "ProductWitness",
    "product_proper_containment_witness",
    "nonhausdorff_witness_construct",
    "prime_scheme",
    "parse_group",
    "parse_config",
    "preset",
    "PRESETS",
    "build",
    "config_to_json",
    "product_path",
]


class CertificationError(ArithmeticError):
    """A construction did not reach the group order it is supposed to have."""


@dataclass(frozen=True)
class ProductLevel:
    p1: int
    p2: int
    o: int


@dataclass(frozen=True)
class ProductConfig:
    levels: tuple[ProductLevel, ...]
    depth: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if self.depth is None:
            object.__setattr__(self, "depth", len(self.levels))

    @classmethod
    def of(cls, *triples: tuple[int, int, int], depth: int | None = None) -> ProductConfig:
        return cls(tuple(ProductLevel(*t) for t in triples), depth)

    @property
    def used(self) -> tuple[ProductLevel, ...]:
        return self.levels[: self.depth]

    @property
    def sizes(self) -> list[int]:
        return [lv.o for lv in self.used]


@dataclass(frozen=True)
class WreathConfig:
    index: tuple[int, ...]
    groups: tuple[PermGroup, ...]
    depth: int | None = None
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(self.index))
        object.__setattr__(self, "groups", tuple(self.groups))
        if self.depth is None:
            object.__setattr__(self, "depth", len(self.index))
        if len(self.groups) != len(self.index):
            raise ValueError("need one group per level")
        if not 1 <= self.depth <= len(self.index):
            raise ValueError(f"depth {self.depth} outside 1..{len(self.index)}")
        for i, (m, A) in enumerate(zip(self.index, self.groups), start=1):
            if A.degree != m:
                raise ValueError(f"level {i} group has degree {A.degree}, expected {m}")
            if not A.is_transitive():
                raise ValueError(f"level {i} group is not transitive")

    @classmethod
    def uniform(cls, group: PermGroup, depth: int, name: str = "") -> WreathConfig:
        return cls((group.degree,) * depth, (group,) * depth, depth, (name,) * depth)

    @property
    def tree(self) -> SphericalIndex:
        return SphericalIndex(self.index[: self.depth])


def validate_po(cfg: ProductConfig) -> list[str]:
    """Violations of the size and prime conditions; empty when the config is valid."""
    problems = []
    if not cfg.levels:
        problems.append("no levels")
    if not 1 <= cfg.depth <= len(cfg.levels):
        problems.append(f"depth {cfg.depth} outside 1..{len(cfg.levels)}")
    seen: dict[int, int] = {}
    for n, lv in enumerate(cfg.levels, start=1):
        for p in (lv.p1, lv.p2):
            if p < 3 or not isprime(p):
                problems.append(f"level {n}: {p} is not an odd prime")
            if p in seen:
                problems.append(f"level {n}: prime {p} already used at level {seen[p]}")
            seen.setdefault(p, n)
        if lv.p1 > lv.o or lv.p2 > lv.o:
            problems.append(f"level {n}: need p1, p2 <= o, got {lv.p1}, {lv.p2}, o={lv.o}")
        if lv.o >= lv.p1 + lv.p2:
            problems.append(f"level {n}: need o < p1 + p2, got o={lv.o} >= {lv.p1 + lv.p2}")
    return problems


def miller_generators(l1: int, l2: int, n: int, budget: int = 10_000) -> tuple[Perm, Perm]:
    """A cycle of length ``l1`` and one of length ``l2`` generating ``Alt(n)``.

    ``s1 = (0 1 ... l1-1)``. The support of ``s2`` is ``{l1, ..., n-1}`` plus
    ``l1 + l2 - n`` points of ``{0..l1-1}``; supports and cycle arrangements
    are tried in lexicographic order and the first pair whose group has
    order ``n!/2`` is returned.
    """
    for name, v in (("l1", l1), ("l2", l2)):
        if v < 3 or v % 2 == 0:
            raise ValueError(f"{name} must be odd and >= 3, got {v}")
    if not (l1 <= n and l2 <= n and n < l1 + l2):
        raise ValueError(f"need l1, l2 <= n < l1 + l2, got l1={l1}, l2={l2}, n={n}")
    s1 = Perm.from_cycles([range(l1)], n)
    target = math.factorial(n) // 2
    tail = list(range(l1, n))
    tried = 0
    for overlap in itertools.combinations(range(l1), l1 + l2 - n):
        support = sorted(overlap + tuple(tail))
        first, rest = support[0], support[1:]
        for arrangement in itertools.permutations(rest):
            s2 = Perm.from_cycles([(first, *arrangement)], n)
            if PermGroup([s1, s2], n).order == target:
                return s1, s2
            tried += 1
            if tried >= budget:
                raise CertificationError(f"no generating pair found within {budget} candidates")
    raise CertificationError("search space exhausted without a generating pair")


def _primes(cfg: ProductConfig, a: int) -> list[int]:
    if a not in (1, 2):
        raise ValueError(f"slot must be 1 or 2, got {a}")
    return [lv.p1 if a == 1 else lv.p2 for lv in cfg.used]


def crt_exponent(cfg: ProductConfig, a: int, k: int) -> int:
    """Least ``s > 0`` with ``s = 1 mod p(a,k)`` and ``s = 0 mod p(a,i)`` for the other levels."""
    primes = _primes(cfg, a)
    if not 1 <= k <= len(primes):
        raise ValueError(f"level {k} outside 1..{len(primes)}")
    residues = [1 if i == k else 0 for i in range(1, len(primes) + 1)]
    s, modulus = crt(primes, residues)
    s = int(s)
    return s if s > 0 else int(modulus)


def _cycle_pairs(cfg: ProductConfig) -> list[tuple[Perm, Perm]]:
    return [miller_generators(lv.p1, lv.p2, lv.o) for lv in cfg.used]


def build_theorem1(cfg: ProductConfig) -> LevelGroupSystem:
    problems = validate_po(cfg)
    if problems:
        raise ValueError("; ".join(problems))
    tree = SphericalIndex(cfg.sizes)
    pairs = _cycle_pairs(cfg)
    gens = [Portrait.from_level_perms(tree, [p[a] for p in pairs]) for a in (0, 1)]
    return LevelGroupSystem(tree, gens, name="product")


def theorem1_level_order(cfg: ProductConfig, n: int) -> int:
    return math.prod(math.factorial(o) // 2 for o in cfg.sizes[:n])


def product_K_order(cfg: ProductConfig, n: int) -> int:
    """Structural ``|K_n|``: coordinates up to ``n`` fix the path digit, deeper ones are trivial."""
    return math.prod(math.factorial(o - 1) // 2 for o in cfg.sizes[:n])


def crt_isolation_check(cfg: ProductConfig) -> dict[tuple[int, int], bool]:
    """For each slot ``a`` and level ``k``: is ``s_a^s(a,k)`` on ``V_N`` the cycle ``s_{a,k}`` alone?"""
    tree = SphericalIndex(cfg.sizes)
    N = tree.depth
    pairs = _cycle_pairs(cfg)
    out = {}
    for a in (1, 2):
        coords = [p[a - 1] for p in pairs]
        sigma = Portrait.from_level_perms(tree, coords).level_restriction(N)
        for k in range(1, N + 1):
            s = crt_exponent(cfg, a, k)
            isolated = [coords[i] if i == k - 1 else Perm.identity(tree.entries[i]) for i in range(N)]
            expected = Portrait.from_level_perms(tree, isolated).level_restriction(N)
            out[(a, k)] = sigma**s == expected
    return out


@dataclass
class CentralizerCertificate:
    """Outcome of the witness search that rules out every nontrivial element of ``K_n``."""

    n: int
    k_order: int
    exhaustive: bool
    checked: int
    failures: list[Perm]

    @property
    def trivial(self) -> bool:
        return not self.failures


def _coordinates(g: Perm, sizes: Sequence[int], x: Sequence[int]) -> list[Perm]:
    """Per-coordinate permutations of a product-form leaf permutation."""
    tree = SphericalIndex(sizes)
    out = []
    for i, m in enumerate(sizes):
        images = []
        for a in range(m):
            digits = list(x)
            digits[i] = a
            images.append(tree.vertex(len(sizes), g(tree.index(digits))).digits[i])
        out.append(Perm(images))
    return out


def certify_product_centralizer(
    sys: LevelGroupSystem, cfg: ProductConfig, x: VertexAddress, n: int, enum_limit: int = 10**5
) -> CentralizerCertificate:
    """Find, for every nontrivial ``g`` in ``K_n``, a cylinder-preserving ``h`` with ``gh != hg``.

    Small ``K_n`` is enumerated and each element gets a witness lifted from the
    three-cycle construction, checked against the group directly. For large
    ``K_n`` the group is a direct product of point stabilizers in alternating
    groups; an element is nontrivial iff some coordinate is, and a witness in
    that coordinate lifts to the product. Whether a witness exists depends only
    on the conjugacy class of that coordinate under ``Sym(X minus x)``, so one
    representative per even cycle type is checked.
    """
    K = stabilizer_K(sys, x, n)
    U = cylinder_preserving(sys, x, n)
    tree = sys.tree
    sizes = list(tree.entries)
    d = tree.depth
    failures: list[Perm] = []
    checked = 0
    if K.order <= enum_limit:
        for g in K.elements():
            if g.is_identity():
                continue
            checked += 1
            coords = _coordinates(g, sizes, x.digits)
            i = next(i for i, c in enumerate(coords) if not c.is_identity())
            tau = noncommuting_stabilizer_witness(sizes[i], coords[i], x.digits[i])
            lift = [tau if j == i else Perm.identity(sizes[j]) for j in range(d)]
            h = Portrait.from_level_perms(tree, lift).level_restriction(d)
            if not (U.contains(h) and g * h != h * g):
                failures.append(g)
        return CentralizerCertificate(n, K.order, True, checked, failures)
    for i in range(n):
        size, point = sizes[i], x.digits[i]
        others = [p for p in range(size) if p != point]
        for shape in _even_cycle_types(size - 1):
            cycles, pos = [], 0
            for length in shape:
                cycles.append(others[pos : pos + length])
                pos += length
            g_i = Perm.from_cycles(cycles, size)
            tau = noncommuting_stabilizer_witness(size, g_i, point)
            lift_g = [g_i if j == i else Perm.identity(sizes[j]) for j in range(d)]
            lift_h = [tau if j == i else Perm.identity(sizes[j]) for j in range(d)]
            g = Portrait.from_level_perms(tree, lift_g).level_restriction(d)
            h = Portrait.from_level_perms(tree, lift_h).level_restriction(d)
            checked += 1
            if not (K.contains(g) and U.contains(h) and g * h != h * g):
                failures.append(g)
    return CentralizerCertificate(n, K.order, False, checked, failures)


def _even_cycle_types(m: int) -> list[tuple[int, ...]]:
    """Cycle types (parts >= 2) of nontrivial even permutations of ``m`` points."""
    out = []

    def rec(remaining: int, largest: int, parts: list[int]) -> None:
        if parts and sum(p - 1 for p in parts) % 2 == 0:
            out.append(tuple(parts))
        for p in range(min(largest, remaining), 1, -1):
            rec(remaining - p, p, parts + [p])

    rec(m, m, [])
    return out


def wreath_order(cfg: WreathConfig, d: int | None = None) -> int:
    d = cfg.depth if d is None else d
    tree = SphericalIndex(cfg.index[:d])
    return math.prod(cfg.groups[i].order ** tree.level_size(i) for i in range(d))


def build_wreath(cfg: WreathConfig) -> LevelGroupSystem:
    """One portrait per generator of each level group, placed at the all-zero vertex."""
    tree = cfg.tree
    gens = []
    for i in range(tree.depth):
        v = VertexAddress((0,) * i)
        for g in cfg.groups[i].generators:
            gens.append(Portrait.from_decorations(tree, {v: g}))
    bounds = {n: wreath_order(cfg, n) for n in range(1, tree.depth + 1)}
    sys = LevelGroupSystem(tree, gens, bounds, name="wreath")
    got = sys.level_group(tree.depth).order
    if got != bounds[tree.depth]:
        raise CertificationError(f"wreath generators give order {got}, expected {bounds[tree.depth]}")
    return sys


def _check_wreath_args(cfg: WreathConfig, x: VertexAddress, n: int, d: int) -> tuple[SphericalIndex, VertexAddress]:
    if not 1 <= d <= cfg.depth:
        raise ValueError(f"depth {d} outside 1..{cfg.depth}")
    tree = SphericalIndex(cfg.index[:d])
    if x.level < d:
        raise ValueError(f"path of length {x.level} is shorter than depth {d}")
    x = x.truncate(d)
    tree.validate(x)
    if not 0 <= n <= d:
        raise ValueError(f"level {n} outside 0..{d}")
    return tree, x


def expected_S_order(cfg: WreathConfig, x: VertexAddress, n: int, d: int) -> int:
    tree, x = _check_wreath_args(cfg, x, n, d)
    if n >= d:
        raise ValueError(f"need n < d, got n={n}, d={d}")
    A = cfg.groups[n]
    out = A.point_stabilizer(x.digits[n]).order
    for i in range(n + 1, d):
        out *= cfg.groups[i].order ** len(residual_vertices(tree, x, n, i))
    return out


def expected_K_order(cfg: WreathConfig, x: VertexAddress, n: int, d: int) -> int:
    _check_wreath_args(cfg, x, n, d)
    return math.prod(expected_S_order(cfg, x, i, d) for i in range(n))


def structural_K_order(cfg: WreathConfig, x: VertexAddress, n: int, d: int) -> int:
    """``|K_n|`` in the full wreath product by classifying every decorated vertex.

    Vertices below ``x_n`` carry the identity, path vertices above it carry a
    stabilizer of the next path digit, and all other vertices are free.
    """
    tree, x = _check_wreath_args(cfg, x, n, d)
    out = 1
    for i in range(d):
        A = cfg.groups[i]
        for v in tree.vertices(i):
            if i >= n and v.is_descendant_of(x.truncate(n)):
                continue
            if i < n and v == x.truncate(i):
                out *= A.point_stabilizer(x.digits[i]).order
            else:
                out *= A.order
    return out


def odometer(m: int, depth: int) -> LevelGroupSystem:
    """The adding machine on the ``m``-ary tree: regular cyclic level groups."""
    tree = SphericalIndex.uniform(m, depth)
    step = Perm.from_cycles([range(m)], m)
    # with image labels, digit i+1 moves iff the already-moved digits 1..i are all 0
    decs = {VertexAddress((0,) * i): step for i in range(depth)}
    a = Portrait.from_decorations(tree, decs)
    bounds = {n: m**n for n in range(depth + 1)}
    return LevelGroupSystem(tree, [a], bounds, name="odometer")


def _padded(entries: Sequence[int], depth: int) -> list[int]:
    return list(entries) + [1] * (depth - len(entries))



def build_product_action(sysH: LevelGroupSystem, sysG: LevelGroupSystem) -> LevelGroupSystem:
    """The two actions side by side on the tree with level sets ``X_n x Y_n``.

    A product digit is ``a * m_G + b``. A shallower factor is padded with
    one-point levels.
    """
    d = max(sysH.depth, sysG.depth)
    mh = _padded(sysH.tree.entries, d)
    mg = _padded(sysG.tree.entries, d)
    tree = SphericalIndex([a * b for a, b in zip(mh, mg)])

    def lift(a: Portrait, left: bool) -> Portrait:
        levels = []
        for i in range(d):
            level = []
            own_m = (mh if left else mg)[i]
            for k in range(tree.level_size(i)):
                kh, kg = _split_index(k, i, mh, mg)
                own_k = kh if left else kg
                if i < a.tree.depth:
                    p = a.decorations[i][own_k]
                else:
                    p = Perm.identity(own_m)
                if left:
                    images = [p(c // mg[i]) * mg[i] + c % mg[i] for c in range(tree.entries[i])]
                else:
                    images = [(c // mg[i]) * mg[i] + p(c % mg[i]) for c in range(tree.entries[i])]
                level.append(Perm._trusted(tuple(images)))
            levels.append(level)
        return Portrait(tree, levels)

    gens = [lift(h, True) for h in sysH.generators] + [lift(g, False) for g in sysG.generators]
    bounds = {}
    for n in range(d + 1):
        oh = sysH.level_group(min(n, sysH.depth)).order
        og = sysG.level_group(min(n, sysG.depth)).order
        bounds[n] = oh * og
    return LevelGroupSystem(tree, gens, bounds, name="product-action")


def _split_index(k: int, level: int, mh: Sequence[int], mg: Sequence[int]) -> tuple[int, int]:
    """Indices in the two factors of a product vertex given by its index."""
    digits = []
    for i in reversed(range(level)):
        k, c = divmod(k, mh[i] * mg[i])
        digits.append(c)
    digits.reverse()
    kh = kg = 0
    for i, c in enumerate(digits):
        kh = kh * mh[i] + c // mg[i]
        kg = kg * mg[i] + c % mg[i]
    return kh, kg


def _join_index(kh: int, kg: int, level: int, mh: Sequence[int], mg: Sequence[int]) -> int:
    ah, ag = [], []
    for i in reversed(range(level)):
        kh, a = divmod(kh, mh[i])
        kg, b = divmod(kg, mg[i])
        ah.append(a)
        ag.append(b)
    k = 0
    for i, (a, b) in enumerate(zip(reversed(ah), reversed(ag))):
        k = k * mh[i] * mg[i] + a * mg[i] + b
    return k


def product_leaf_perm(
    sysH: LevelGroupSystem, sysG: LevelGroupSystem, h: Perm | None, g: Perm | None
) -> Perm:
    """The leaf permutation of the product action given by a pair of leaf permutations."""
    d = max(sysH.depth, sysG.depth)
    mh = _padded(sysH.tree.entries, d)
    mg = _padded(sysG.tree.entries, d)
    nh, ng = math.prod(mh), math.prod(mg)
    h = h or Perm.identity(nh)
    g = g or Perm.identity(ng)
    images = [0] * (nh * ng)
    for kh in range(nh):
        for kg in range(ng):
            images[_join_index(kh, kg, d, mh, mg)] = _join_index(h(kh), g(kg), d, mh, mg)
    return Perm._trusted(tuple(images))


def product_path(sysH: LevelGroupSystem, sysG: LevelGroupSystem, x: VertexAddress, y: VertexAddress) -> VertexAddress:
    d = max(sysH.depth, sysG.depth)
    mg = _padded(sysG.tree.entries, d)
    xs = list(x.digits) + [0] * (d - x.level)
    ys = list(y.digits) + [0] * (d - y.level)
    return VertexAddress([a * mg[i] + b for i, (a, b) in enumerate(zip(xs, ys))])


@dataclass
class ProductWitness:
    g: Perm
    s: Perm
    r: Perm
    lifted_g: Perm
    lifted_pair: Perm
    in_k: bool
    in_u: bool
    noncommuting: bool
    k_order: int
    k_order_h: int
    k_order_g: int

    @property
    def verified(self) -> bool:
        return (
            self.in_k
            and self.in_u
            and self.noncommuting
            and self.k_order == self.k_order_h * self.k_order_g
        )


def product_proper_containment_witness(
    sysH: LevelGroupSystem,
    sysG: LevelGroupSystem,
    x: VertexAddress,
    y: VertexAddress,
    n: int,
    product: LevelGroupSystem | None = None,
) -> ProductWitness:
    """An element of ``K_n`` of the product outside its centralizer group.

    ``g`` in ``K_n`` of the second factor and a cylinder-preserving ``s`` with
    ``g s != s g`` are found among generators; then ``(id, g)`` lies in ``K_n``
    of the product and fails to commute with ``(r, s)``.
    """
    KG = stabilizer_K(sysG, y, n)
    if KG.is_trivial():
        raise ValueError(f"K_{n} of the second factor is trivial at depth {sysG.depth}")
    ZG = centralizer_Z_upper(sysG, y, n)
    if ZG.order >= KG.order:
        raise ValueError(f"the centralizer bound equals K_{n} in the second factor")
    UG = cylinder_preserving(sysG, y, n)
    pair = next(
        ((g, s) for g in KG.generators for s in UG.generators if g * s != s * g), None
    )
    if pair is None:
        raise ArithmeticError("no non-commuting generator pair despite a proper centralizer")
    g, s = pair
    UH = cylinder_preserving(sysH, x, n) if n <= sysH.depth else sysH.level_group(sysH.depth)
    r = UH.generators[0] if UH.generators else UH.identity()
    prod = product or build_product_action(sysH, sysG)
    z = product_path(sysH, sysG, x, y)
    lifted_g = product_leaf_perm(sysH, sysG, None, g)
    lifted_pair = product_leaf_perm(sysH, sysG, r, s)
    K = stabilizer_K(prod, z, n)
    U = cylinder_preserving(prod, z, n)
    KH = stabilizer_K(sysH, x, min(n, sysH.depth))
    return ProductWitness(
        g=g,
        s=s,
        r=r,
        lifted_g=lifted_g,
        lifted_pair=lifted_pair,
        in_k=K.contains(lifted_g),
        in_u=U.contains(lifted_pair),
        noncommuting=lifted_g * lifted_pair != lifted_pair * lifted_g,
        k_order=K.order,
        k_order_h=KH.order,
        k_order_g=KG.order,
    )


def nonhausdorff_witness_construct(cfg: WreathConfig, x: VertexAddress, d: int | None = None) -> Portrait:
    """A portrait fixing ``x`` that is nontrivial in every cylinder yet trivial on open pieces.

    The smallest sibling of ``x_k`` is decorated with the first nontrivial
    generator of the group at level ``k + 1``, for ``k = d-1, d-3, ...`` down
    to 1. The decoration at ``d-1`` lies in every cylinder ``x_l`` with
    ``l <= d-2``, and undecorated siblings give the fixed pieces.
    """
    d = cfg.depth if d is None else d
    if d < 4:
        raise ValueError(f"depth {d} is too shallow; need at least 4")
    tree, x = _check_wreath_args(cfg, x, 0, d)
    decs = {}
    for k in range(d - 1, 0, -2):
        A = cfg.groups[k]
        if not A.generators:
            raise ValueError(f"level {k + 1} group is trivial")
        parent = x.digits[: k - 1]
        sib = next(a for a in range(tree.entries[k - 1]) if a != x.digits[k - 1])
        decs[VertexAddress(parent + (sib,))] = A.generators[0]
    return Portrait.from_decorations(tree, decs)


def prime_scheme(N: int) -> ProductConfig:
    """Consecutive odd primes in pairs with ``o = p1 + p2 - 1``."""
    if N < 1:
        raise ValueError("need at least one level")
    levels = []
    p = 2
    for _ in range(N):
        p1 = nextprime(p)
        p2 = nextprime(p1)
        levels.append(ProductLevel(int(p1), int(p2), int(p1 + p2 - 1)))
        p = p2
    return ProductConfig(tuple(levels))


_GROUP_NAME = re.compile(r"^(C|A|Alt|S|Sym)(\d+)$")


def parse_group(spec: str | Sequence[str], degree: int | None = None) -> PermGroup:
    """``C4``, ``A5``/``Alt5``, ``S3``/``Sym3``, or a list of permutation strings."""
    if isinstance(spec, str):
        m = _GROUP_NAME.match(spec.strip())
        if not m:
            raise ValueError(f"unknown group {spec!r}")
        kind, k = m.group(1), int(m.group(2))
        if degree is not None and degree != k:
            raise ValueError(f"group {spec} acts on {k} points, level has {degree}")
        if kind == "C":
            return cyclic_group(k)
        if kind in ("A", "Alt"):
            return alternating_group(k)
        return symmetric_group(k)
    if degree is None:
        raise ValueError("explicit generators need the level size")
    return PermGroup([Perm.parse(s, degree) for s in spec], degree)


def parse_config(doc: dict) -> ProductConfig | WreathConfig:
    """A product or wreath config from its JSON document."""
    if not isinstance(doc, dict):
        raise ValueError("config must be a JSON object")
    family = doc.get("family")
    if family == "product":
        try:
            levels = tuple(ProductLevel(int(lv["p1"]), int(lv["p2"]), int(lv["o"])) for lv in doc["levels"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad product level: {exc}") from None
        cfg = ProductConfig(levels, doc.get("depth"))
        problems = validate_po(cfg)
        if problems:
            raise ValueError("; ".join(problems))
        return cfg
    if family == "wreath":
        try:
            index = [int(m) for m in doc["index"]]
            names = doc["groups"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"bad wreath config: {exc}") from None
        if len(names) != len(index):
            raise ValueError("need one group per level")
        groups = tuple(parse_group(g, m) for g, m in zip(names, index))
        labels = tuple(g if isinstance(g, str) else "custom" for g in names)
        return WreathConfig(tuple(index), groups, doc.get("depth"), labels)
    raise ValueError(f"unknown family {family!r}; expected 'product' or 'wreath'")


def preset(name: str, depth: int | None = None) -> ProductConfig | WreathConfig:
    """Named configs: ``theorem1-default``, ``alt-wreath``, ``cyclic-wreath-<k>``.

    ``cyclic-wreath-<k>`` has depth 4 unless ``depth`` asks for another.
    """
    if name in PRESETS:
        doc = dict(PRESETS[name])
        if depth is not None:
            doc["depth"] = depth
        return parse_config(doc)
    m = re.fullmatch(r"cyclic-wreath-(\d+)", name)
    if m and int(m.group(1)) >= 2:
        k, d = int(m.group(1)), depth or 4
        return parse_config({"family": "wreath", "index": [k] * d, "groups": [f"C{k}"] * d, "depth": d})
    raise ValueError(f"unknown preset {name!r}")


PRESETS = {
    "theorem1-default": {
        "family": "product",
        "levels": [{"p1": 3, "p2": 5, "o": 5}, {"p1": 7, "p2": 11, "o": 13}],
        "depth": 2,
    },
    "alt-wreath": {"family": "wreath", "index": [5, 5], "groups": ["A5", "A5"], "depth": 2},
}


def build(cfg: ProductConfig | WreathConfig) -> LevelGroupSystem:
    """Build and certify a system from either config family."""
    if isinstance(cfg, ProductConfig):
        sys = build_theorem1(cfg)
        for n in range(sys.depth + 1):
            got = sys.level_group(n).order
            if got != theorem1_level_order(cfg, n):
                raise CertificationError(f"level {n} has order {got}, expected {theorem1_level_order(cfg, n)}")
        return sys
    return build_wreath(cfg)


def config_to_json(cfg: ProductConfig | WreathConfig) -> str:
    if isinstance(cfg, ProductConfig):
        doc = {
            "family": "product",
            "levels": [{"p1": lv.p1, "p2": lv.p2, "o": lv.o} for lv in cfg.levels],
            "depth": cfg.depth,
        }
    else:
        doc = {
            "family": "wreath",
            "index": list(cfg.index),
            "groups": [
                name if name and name != "custom" else [g.cycle_string() for g in A.generators]
                for name, A in itertools.zip_longest(cfg.names, cfg.groups, fillvalue="")
            ],
            "depth": cfg.depth,
        }
    return json.dumps(doc, sort_keys=True)
