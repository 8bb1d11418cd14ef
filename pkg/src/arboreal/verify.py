"""Verification suites behind ``arboreal verify``.

Each suite returns a list of :class:`Check`. A suite passes when every check
does. Expected values come from closed forms (factorials, powers), not from
the code being checked.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from .chains import project
from .classify import (
    brute_force_K,
    brute_force_Z,
    centralizer_Z_upper,
    cylinder_preserving,
    non_hausdorff_check,
    stabilizer_K,
)
from .constructions import (
    ProductConfig,
    WreathConfig,
    build,
    build_wreath,
    certify_product_centralizer,
    crt_isolation_check,
    expected_K_order,
    nonhausdorff_witness_construct,
    odometer,
    parse_group,
    product_K_order,
    product_proper_containment_witness,
    structural_K_order,
)
from .perm import Perm
from .permgroup import PermGroup, alternating_group
from .portrait import Portrait
from .tree import SphericalIndex, VertexAddress, metric

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_doc(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _eq(name: str, got, want) -> Check:
    return Check(name, got == want, f"got {got}, expected {want}")


def _zeros(d: int) -> VertexAddress:
    return VertexAddress((0,) * d)


def lemma41() -> list[Check]:
    cfg = ProductConfig.of((3, 5, 5), (7, 11, 13))
    sys = build(cfg)
    checks = [
        _eq("level-2 order", sys.level_group(2).order, (math.factorial(5) // 2) * (math.factorial(13) // 2)),
        _eq("level-1 order", sys.level_group(1).order, math.factorial(5) // 2),
    ]
    for (a, k), ok in sorted(crt_isolation_check(cfg).items()):
        checks.append(Check(f"isolation a={a} k={k}", ok))
    for n in range(sys.depth + 1):
        checks.append(Check(f"level {n} transitive", sys.level_group(n).is_transitive()))
    return checks


def prop46() -> list[Check]:
    checks = []
    cfg = ProductConfig.of((3, 5, 5), (7, 11, 13))
    sys = build(cfg)
    x = _zeros(2)
    want = {1: 12, 2: 12 * (math.factorial(12) // 2)}
    for n, order in want.items():
        checks.append(_eq(f"structural K_{n}", product_K_order(cfg, n), order))
        checks.append(_eq(f"chain K_{n}", stabilizer_K(sys, x, n).order, order))
        cert = certify_product_centralizer(sys, cfg, x, n)
        checks.append(Check(
            f"witness for every nontrivial element of K_{n}",
            cert.trivial,
            f"{cert.checked} checked, {'all elements' if cert.exhaustive else 'one per conjugacy class'}",
        ))
        checks.append(_eq(f"centralizer search Z_{n}", centralizer_Z_upper(sys, x, n).order, 1))

    small = ProductConfig.of((3, 5, 5))
    ssys = build(small)
    x1 = _zeros(1)
    K = brute_force_K(ssys, x1, 1)
    checks.append(_eq("brute K_1 at the reduced config", len(K), 12))
    U = list(cylinder_preserving(ssys, x1, 1).elements())
    lonely = [g for g in K if not g.is_identity() and all(g * h == h * g for h in U)]
    checks.append(Check("brute force: no nontrivial central element", not lonely, f"{len(K) - 1} elements"))
    cert = certify_product_centralizer(ssys, small, x1, 1)
    checks.append(Check("witnesses at the reduced config", cert.trivial and cert.checked == 11))
    return checks


def primitivity() -> list[Check]:
    checks = [Check(f"Alt({n}) primitive", alternating_group(n).is_primitive()[0]) for n in range(3, 13)]
    C4 = PermGroup([Perm.from_cycles([(0, 1, 2, 3)], 4)], 4)
    prim, blocks = C4.is_primitive()
    preserved = blocks is not None and all(
        len({next(i for i, b in enumerate(blocks) if g(p) in b) for p in block}) == 1
        for g in C4.generators
        for block in blocks
    )
    checks.append(Check("<(0 1 2 3)> imprimitive", not prim and preserved, f"blocks {blocks}"))
    return checks


def _binary(depth: int) -> WreathConfig:
    return WreathConfig.uniform(parse_group("C2"), depth, "C2")


def wreath_kn() -> list[Check]:
    cfg = _binary(4)
    sys = build_wreath(cfg)
    x = _zeros(4)
    checks = [
        _eq("depth-4 order", sys.level_group(4).order, 2**15),
        _eq("brute K_1", len(brute_force_K(sys, x, 1)), 128),
        _eq("formula K_1", expected_K_order(cfg, x, 1, 4), 128),
    ]
    cfg5 = _binary(5)
    x5 = _zeros(5)
    for n in (1, 2):
        checks.append(_eq(
            f"depth 5 structural vs formula K_{n}",
            structural_K_order(cfg5, x5, n, 5),
            expected_K_order(cfg5, x5, n, 5),
        ))
    return checks


def wreath_z_kernel() -> list[Check]:
    sys = build_wreath(_binary(4))
    x = _zeros(4)
    Z = brute_force_Z(sys, x, 1)
    trivial_on_v3 = all(project(g, sys.tree, 3).is_identity() for g in Z)
    return [
        Check("brute centralizer trivial on V_3", trivial_on_v3, f"{len(Z)} elements"),
        _eq("backtrack agrees with brute force", centralizer_Z_upper(sys, x, 1).order, len(Z)),
    ]


def nonhausdorff() -> list[Check]:
    cfg = _binary(6)
    x = _zeros(6)
    w = nonhausdorff_witness_construct(cfg, x)
    v = non_hausdorff_check(w, x)
    ident = non_hausdorff_check(Portrait.identity(cfg.tree), x)
    full = non_hausdorff_check(Portrait.from_level_perms(cfg.tree, [Perm([1, 0])] * 6), x)
    return [
        Check("witness consistent at l = 0..4", v.consistent and len(v.moves_inside) == 5),
        Check("identity fails condition (2)", not ident.condition2),
        Check("fully decorated fails condition (3)", not full.condition3),
    ]


def product_witness() -> list[Check]:
    G = build_wreath(_binary(5))
    H = odometer(2, 5)
    x = _zeros(5)
    w = product_proper_containment_witness(H, G, x, x, 1)
    return [
        Check("witness in K_1", w.in_k),
        Check("partner preserves the cylinder", w.in_u),
        Check("pair does not commute", w.noncommuting),
        _eq("|K_1| multiplies", w.k_order, w.k_order_h * w.k_order_g),
        _eq("|K_1| value", w.k_order, 2**15),
    ]


METRIC_SHAPES = ((2,) * 8, (3, 2, 5, 2), (5, 13), (2, 3, 2, 3, 2, 3))


def metric_suite(samples: int = 10_000, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for shape in METRIC_SHAPES:
        tree = SphericalIndex(shape)

        def near(p: VertexAddress) -> VertexAddress:
            # keep a random-length prefix so that close and equal pairs are common
            keep = rng.randrange(tree.depth + 1)
            tail = [rng.randrange(m) for m in shape[keep:]]
            return VertexAddress(p.digits[:keep] + tuple(tail))

        bad = []
        for _ in range(samples):
            p = VertexAddress(rng.randrange(m) for m in shape)
            q, r = near(p), near(p)
            dpq, dqr, dpr = metric(p, q), metric(q, r), metric(p, r)
            if dpr > max(dpq, dqr) or dpq != metric(q, p) or (dpq == 0) != (p == q):
                bad.append((p, q, r))
        checks.append(Check(f"ultrametric on {list(shape)}", not bad, f"{samples} triples, {len(bad)} failures"))
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "lemma41": lemma41,
    "prop46": prop46,
    "primitivity": primitivity,
    "wreath-kn": wreath_kn,
    "wreath-z-kernel": wreath_z_kernel,
    "nonhausdorff": nonhausdorff,
    "product-witness": product_witness,
    "metric": metric_suite,
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
