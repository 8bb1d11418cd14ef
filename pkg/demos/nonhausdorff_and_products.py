"""A non-Hausdorff element, and a product action where Z_n is smaller than K_n."""

from arboreal.classify import non_hausdorff_check
from arboreal.constructions import (
    WreathConfig,
    build_wreath,
    nonhausdorff_witness_construct,
    odometer,
    parse_group,
    product_proper_containment_witness,
)
from arboreal.tree import VertexAddress

cfg = WreathConfig.uniform(parse_group("C2"), 6, "C2")
x = VertexAddress([0] * 6)
w = nonhausdorff_witness_construct(cfg, x)
print(w)
verdict = non_hausdorff_check(w, x)
for ell, (moves, piece) in enumerate(zip(verdict.moves_inside, verdict.fixed_subtree)):
    print(f"l={ell}: moves inside {moves}, fixed piece at {piece.to_text() if piece else None}")
print("consistent:", verdict.consistent)

H = odometer(2, 5)
G = build_wreath(WreathConfig.uniform(parse_group("C2"), 5, "C2"))
y = VertexAddress([0] * 5)
pw = product_proper_containment_witness(H, G, y, y, 1)
print(f"g = {pw.g}")
print(f"s = {pw.s}")
print(f"|K_1| = {pw.k_order} = {pw.k_order_h} * {pw.k_order_g}")
print("(id, g) in K_1 and not central:", pw.verified)
