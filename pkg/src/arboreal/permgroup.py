"""Finite permutation groups given by generators.

Orders and membership come from a base and strong generating set built by
Schreier-Sims. Two builders share one chain structure:

* ``_deterministic_schreier_sims`` checks every Schreier generator and is
  used whenever nothing is known about the group order;
* ``_random_schreier_sims`` sifts random elements until the product of the
  basic orbit lengths reaches a *proven* upper bound on the order, which
  certifies the chain. It is used for base changes (the order is already
  known) and for groups whose order is bounded by construction. If the bound
  is not reached within the round budget the chain is completed
  deterministically, so the result is exact either way.
"""

from __future__ import annotations

import itertools
import random
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .perm import Perm

__all__ = [
    "PermGroup",
    "QuotientVerdict",
    "equivariant_quotient_check",
    "symmetric_group",
    "alternating_group",
    "cyclic_group",
    "enumerate_by_closure",
]

Images = tuple  # raw one-line form used inside the algorithms


def _mul(a: Images, b: Images) -> Images:
    return tuple([a[i] for i in b])


def _inv(a: Images) -> Images:
    out = [0] * len(a)
    for i, p in enumerate(a):
        out[p] = i
    return tuple(out)


class _Chain:
    """Stabilizer chain: base points, per-level generators and transversals."""

    def __init__(self, degree: int, base: Sequence[int] = ()):
        self.degree = degree
        self.identity: Images = tuple(range(degree))
        self.base: list[int] = []
        self.gens: list[list[Images]] = []
        self.trans: list[dict[int, Images]] = []
        self._tinv: list[dict[int, Images]] = []
        for b in base:
            self.add_base_point(b)

    def add_base_point(self, b: int) -> None:
        self.base.append(b)
        self.gens.append([])
        self.trans.append({b: self.identity})
        self._tinv.append({b: self.identity})

    def tinv(self, level: int, beta: int) -> Images:
        cache = self._tinv[level]
        u = cache.get(beta)
        if u is None:
            u = cache[beta] = _inv(self.trans[level][beta])
        return u

    def extend_orbit(self, level: int) -> None:
        trans = self.trans[level]
        gens = self.gens[level]
        queue = list(trans)
        for p in queue:
            up = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = _mul(s, up)
                    queue.append(q)

    def add_strong(self, h: Images, first: int, last: int) -> None:
        for level in range(first, last + 1):
            self.gens[level].append(h)
            self.extend_orbit(level)

    def sift(self, g: Images, start: int = 0) -> tuple[Images, int]:
        for level in range(start, len(self.base)):
            b = self.base[level]
            beta = g[b]
            if beta == b:
                continue
            if beta not in self.trans[level]:
                return g, level
            g = _mul(self.tinv(level, beta), g)
        return g, len(self.base)

    def new_base_point(self, h: Images, prefer: Sequence[int] = ()) -> int:
        for p in prefer:
            if h[p] != p and p not in self.base:
                return p
        return next(i for i, p in enumerate(h) if i != p)

    def order(self, start: int = 0) -> int:
        out = 1
        for t in self.trans[start:]:
            out *= len(t)
        return out

    def strong_generators(self, start: int = 0) -> list[Images]:
        seen = set()
        out = []
        for gens in self.gens[start:]:
            for g in gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def sub_chain(self, start: int) -> _Chain:
        """The chain of the pointwise stabilizer of ``base[:start]``."""
        c = _Chain.__new__(_Chain)
        c.degree = self.degree
        c.identity = self.identity
        c.base = self.base[start:]
        c.gens = [list(g) for g in self.gens[start:]]
        c.trans = [dict(t) for t in self.trans[start:]]
        c._tinv = [dict(t) for t in self._tinv[start:]]
        return c


def _seed_chain(gens: list[Images], degree: int, base: Sequence[int]) -> _Chain:
    chain = _Chain(degree, base)
    for g in gens:
        if all(g[b] == b for b in chain.base):
            chain.add_base_point(chain.new_base_point(g, base))
    for g in gens:
        # g fixes base[:j] where j is the first level it moves
        j = next(i for i, b in enumerate(chain.base) if g[b] != b)
        for level in range(j + 1):
            chain.gens[level].append(g)
    for level in range(len(chain.base)):
        chain.extend_orbit(level)
    return chain


def _deterministic_schreier_sims(chain: _Chain, prefer: Sequence[int] = ()) -> _Chain:
    """Complete ``chain`` so that every Schreier generator sifts to the identity."""
    ident = chain.identity
    checked: list[set[tuple[int, int]]] = [set() for _ in chain.base]
    i = len(chain.base) - 1
    while i >= 0:
        restart = False
        trans = chain.trans[i]
        gens = chain.gens[i]
        done = checked[i]
        for beta in list(trans):
            u_beta = trans[beta]
            for k, s in enumerate(gens):
                if (beta, k) in done:
                    continue
                gamma = s[beta]
                su = _mul(s, u_beta)
                if su == trans[gamma]:
                    done.add((beta, k))
                    continue
                h = _mul(chain.tinv(i, gamma), su)
                h, j = chain.sift(h, i + 1)
                if h == ident:
                    done.add((beta, k))
                    continue
                if j == len(chain.base):
                    chain.add_base_point(chain.new_base_point(h, prefer))
                    checked.append(set())
                chain.add_strong(h, i + 1, j)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return chain


class _ProductReplacement:
    """Product replacement random elements (seeded, reproducible)."""

    def __init__(self, gens: list[Images], degree: int, rng: random.Random):
        ident = tuple(range(degree))
        gens = gens or [ident]
        slots = list(gens)
        while len(slots) < 10:
            slots.extend(gens)
        self.slots = slots[: max(10, len(gens))]
        self.acc = ident
        self.rng = rng
        for _ in range(50):
            self.next()

    def next(self) -> Images:
        r = self.rng
        n = len(self.slots)
        i, j = r.randrange(n), r.randrange(n - 1)
        if j >= i:
            j += 1
        other = self.slots[j] if r.random() < 0.5 else _inv(self.slots[j])
        if r.random() < 0.5:
            self.slots[i] = _mul(self.slots[i], other)
        else:
            self.slots[i] = _mul(other, self.slots[i])
        self.acc = _mul(self.acc, self.slots[i])
        return self.acc


def _random_schreier_sims(
    gens: list[Images],
    degree: int,
    bound: int,
    base: Sequence[int] = (),
    seed: int = 0,
    max_idle: int = 400,
) -> tuple[_Chain, bool]:
    """Chain whose orbit product reaches ``bound`` (returns ``True`` then)."""
    chain = _seed_chain(gens, degree, base)
    if chain.order() == bound:
        return chain, True
    if not gens:
        return chain, chain.order() == bound
    pr = _ProductReplacement(gens, degree, random.Random(seed))
    ident = chain.identity
    idle = 0
    while idle < max_idle:
        h, j = chain.sift(pr.next())
        if h == ident:
            idle += 1
            continue
        idle = 0
        if j == len(chain.base):
            chain.add_base_point(chain.new_base_point(h, base))
        chain.add_strong(h, 0, j)
        order = chain.order()
        if order == bound:
            return chain, True
        if order > bound:
            raise ValueError(f"order bound {bound} is violated (found at least {order})")
    return chain, False


def _build_chain(
    gens: list[Images], degree: int, base: Sequence[int] = (), bound: int | None = None,
    seed: int = 0,
) -> _Chain:
    if bound is not None:
        chain, ok = _random_schreier_sims(gens, degree, bound, base, seed)
        if ok:
            return chain
        return _deterministic_schreier_sims(chain, base)
    return _deterministic_schreier_sims(_seed_chain(gens, degree, base), base)


class PermGroup:
    """A permutation group on ``{0, ..., degree-1}``.

    ``order_bound`` may be supplied when an upper bound on the order is known
    by construction (for example, the generators lie in a wreath product of
    known order). The group order is still computed exactly; the bound only
    lets the randomized builder stop early once it is met.
    """

    def __init__(
        self,
        generators: Iterable[Perm],
        degree: int | None = None,
        *,
        order_bound: int | None = None,
    ):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(g for g in gens if not g.is_identity())
        self._order_bound = order_bound
        self._chain: _Chain | None = None
        self._lock = threading.Lock()

    @classmethod
    def _from_chain(cls, chain: _Chain) -> PermGroup:
        G = cls([Perm._trusted(g) for g in chain.strong_generators()], chain.degree)
        G._chain = chain
        return G

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators)
        return f"PermGroup(degree={self.degree}, generators=[{gens}])"

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    raw = [g.images for g in self.generators]
                    self._chain = _build_chain(raw, self.degree, bound=self._order_bound)
        return self._chain

    @property
    def base(self) -> list[int]:
        return list(self.chain.base)

    def strong_generators(self) -> list[Perm]:
        return [Perm._trusted(g) for g in self.chain.strong_generators()]

    @property
    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order

    def is_trivial(self) -> bool:
        return not self.generators

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise ValueError(f"degree mismatch: {g.degree} vs {self.degree}")
        h, _ = self.chain.sift(g.images)
        return h == self.chain.identity

    __contains__ = contains

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: PermGroup) -> bool:
        """True iff every generator conjugated by every generator of ``other`` stays here."""
        for h in self.generators:
            for g in other.generators:
                if not self.contains(g * h * ~g):
                    return False
        return self.is_subgroup_of(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order == other.order
            and self.is_subgroup_of(other)
        )

    __hash__ = None  # type: ignore[assignment]

    def _check_point(self, p: int) -> None:
        if not 0 <= p < self.degree:
            raise ValueError(f"point {p} out of range for degree {self.degree}")

    def orbit(self, p: int) -> set[int]:
        self._check_point(p)
        seen = {p}
        queue = [p]
        gens = [g.images for g in self.generators]
        for q in queue:
            for g in gens:
                r = g[q]
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return seen

    def orbit_transversal(self, p: int) -> dict[int, Perm]:
        """For each point ``q`` in the orbit of ``p`` an element mapping ``p`` to ``q``."""
        self._check_point(p)
        ident = tuple(range(self.degree))
        trans = {p: ident}
        queue = [p]
        gens = [g.images for g in self.generators]
        for q in queue:
            for g in gens:
                r = g[q]
                if r not in trans:
                    trans[r] = _mul(g, trans[q])
                    queue.append(r)
        return {q: Perm._trusted(u) for q, u in trans.items()}

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                orb = sorted(self.orbit(p))
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def pointwise_stabilizer(self, points: Sequence[int], seed: int = 0) -> PermGroup:
        """The subgroup fixing every point of ``points``."""
        for p in points:
            self._check_point(p)
        pts = list(dict.fromkeys(points))
        moved = set()
        for g in self.generators:
            moved.update(g.support())
        pts = [p for p in pts if p in moved]
        if not pts:
            return self
        chain = self.chain
        if chain.base[: len(pts)] == pts:
            return PermGroup._from_chain(chain.sub_chain(len(pts)))
        raw = [g.images for g in self.generators]
        new = _build_chain(raw, self.degree, base=pts, bound=self.order, seed=seed)
        return PermGroup._from_chain(new.sub_chain(len(pts)))

    def point_stabilizer(self, p: int) -> PermGroup:
        return self.pointwise_stabilizer([p])

    def elements(self) -> Iterator[Perm]:
        """Every element exactly once, as products of transversal elements."""
        chain = self.chain
        levels = [list(t.values()) for t in chain.trans]

        def rec(level: int, prefix: Images) -> Iterator[Images]:
            if level == len(levels):
                yield prefix
                return
            for u in levels[level]:
                yield from rec(level + 1, _mul(prefix, u))

        for g in rec(0, chain.identity):
            yield Perm._trusted(g)

    def random_element(self, rng: random.Random) -> Perm:
        g = self.chain.identity
        for t in self.chain.trans:
            g = _mul(g, t[rng.choice(sorted(t))])
        return Perm._trusted(g)

    def minimal_block(self, a: int, b: int) -> list[list[int]]:
        """Finest partition preserved by the group with ``a`` and ``b`` in one block."""
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        gens = [g.images for g in self.generators]
        queue = deque([(a, b)])
        parent[find(b)] = find(a)
        while queue:
            x, y = queue.popleft()
            for g in gens:
                gx, gy = find(g[x]), find(g[y])
                if gx != gy:
                    parent[gy] = gx
                    queue.append((g[x], g[y]))
        blocks: dict[int, list[int]] = {}
        for p in range(self.degree):
            blocks.setdefault(find(p), []).append(p)
        return sorted(blocks.values())

    def is_primitive(self) -> tuple[bool, list[list[int]] | None]:
        """Primitivity of a transitive group, with a block system when imprimitive."""
        if not self.is_transitive():
            raise ValueError("primitivity is defined for transitive groups only")
        for k in range(1, self.degree):
            blocks = self.minimal_block(0, k)
            if len(blocks) > 1:
                return False, blocks
        return True, None

    def centralizer_elements(self, elements: Sequence[Perm], limit: int | None = None) -> list[Perm]:
        """All elements of this group commuting with each of ``elements``.

        Backtrack over images of base points. Once the image of a base point
        is chosen, commuting with ``elements`` forces the image of its whole
        orbit under them; contradictions prune the branch.
        """
        chain = self.chain
        S = [s.images for s in elements if not s.is_identity()]
        levels = [(chain.base[i], list(chain.trans[i].items())) for i in range(len(chain.base))]
        found: list[Perm] = []

        def propagate(forced: dict[int, int], used: set[int], p: int, img: int) -> bool:
            queue = [(p, img)]
            while queue:
                a, b = queue.pop()
                if a in forced:
                    if forced[a] != b:
                        return False
                    continue
                if b in used:
                    return False
                forced[a] = b
                used.add(b)
                for s in S:
                    queue.append((s[a], s[b]))
            return True

        def rec(level: int, prefix: Images, forced: dict[int, int], used: set[int]) -> None:
            if limit is not None and len(found) >= limit:
                return
            if level == len(levels):
                if all(_mul(prefix, s) == _mul(s, prefix) for s in S):
                    found.append(Perm._trusted(prefix))
                return
            b, trans = levels[level]
            want = forced.get(b)
            for beta, u in trans:
                img = prefix[beta]
                if want is not None and img != want:
                    continue
                f2, u2 = dict(forced), set(used)
                if want is None and not propagate(f2, u2, b, img):
                    continue
                rec(level + 1, _mul(prefix, u), f2, u2)

        rec(0, chain.identity, {}, set())
        return found


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    gens = [Perm.from_cycles([range(n)], n), Perm.from_cycles([(0, 1)], n)]
    return PermGroup(gens, n)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], n)
    gens = [Perm.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return PermGroup(gens, n)


def cyclic_group(n: int) -> PermGroup:
    """The cyclic group generated by an ``n``-cycle (regular on ``n`` points)."""
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([Perm.from_cycles([range(n)], n)], n)


def enumerate_by_closure(generators: Sequence[Perm], degree: int, limit: int | None = None) -> set[Perm]:
    """All group elements by breadth-first closure under the generators.

    Independent of the stabilizer-chain machinery; used as an oracle.
    """
    ident = tuple(range(degree))
    gens = [g.images for g in generators]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if limit is not None and len(seen) > limit:
                        raise ValueError(f"group has more than {limit} elements")
        frontier = nxt
    return {Perm._trusted(x) for x in seen}


@dataclass
class QuotientVerdict:
    equivariant: bool
    primitive: bool | None
    source_size: int
    quotient_size: int
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """False only when an equivariant map from a primitive action has a forbidden size."""
        if not (self.equivariant and self.primitive):
            return True
        return self.quotient_size in (1, self.source_size)


def equivariant_quotient_check(
    group: PermGroup,
    f: Sequence[int] | Callable[[int], int],
    quotient_action: Sequence[Perm] | None = None,
) -> QuotientVerdict:
    """Check that a surjection ``f`` from the points onto ``{0..|Q|-1}`` is equivariant.

    Without ``quotient_action`` the action on ``Q`` is the one induced by ``f``
    and equivariance means it is well defined. Violations are reported as
    ``(generator index, s, t)``: ``f(s) == f(t)`` but ``f(g s) != f(g t)``,
    or, with an explicit action, ``t == s`` and ``f(g s) != g_Q f(s)``.
    """
    n = group.degree
    values = [f(p) for p in range(n)] if callable(f) else list(f)
    if len(values) != n:
        raise ValueError(f"map has {len(values)} values for {n} points")
    q_size = len(set(values))
    if sorted(set(values)) != list(range(q_size)):
        raise ValueError("map must be onto {0, ..., |Q|-1}")
    violations = []
    gens = list(group.generators)
    if quotient_action is not None:
        if len(quotient_action) != len(gens):
            raise ValueError("need one quotient permutation per generator")
        for k, (g, gq) in enumerate(zip(gens, quotient_action)):
            for s in range(n):
                if values[g(s)] != gq(values[s]):
                    violations.append((k, s, s))
    else:
        for k, g in enumerate(gens):
            image_of: dict[int, tuple[int, int]] = {}
            for s in range(n):
                q, gq = values[s], values[g(s)]
                if q in image_of and image_of[q][0] != gq:
                    violations.append((k, image_of[q][1], s))
                else:
                    image_of.setdefault(q, (gq, s))
    primitive = group.is_primitive()[0] if group.is_transitive() else None
    return QuotientVerdict(not violations, primitive, n, q_size, violations)


def all_surjections(n: int, q: int) -> Iterator[tuple[int, ...]]:
    """Every surjection from ``n`` points onto ``q`` labels (brute-force helper)."""
    for values in itertools.product(range(q), repeat=n):
        if len(set(values)) == q:
            yield values
