"""Stabilizer and centralizer chains in the binary iterated wreath product."""

from arboreal.chains import project
from arboreal.classify import brute_force_Z, chain_report
from arboreal.constructions import (
    WreathConfig,
    build_wreath,
    expected_K_order,
    parse_group,
    structural_K_order,
)
from arboreal.tree import VertexAddress, residual_vertices

cfg = WreathConfig.uniform(parse_group("C2"), 4, "C2")
system = build_wreath(cfg)
x = VertexAddress([0, 0, 0, 0])

print("level orders:", system.level_orders())

# the residual sets split each level by where a vertex leaves the path
for i in range(1, 5):
    sizes = [len(residual_vertices(system.tree, x, n, i)) for n in range(i + 1)]
    print(f"level {i}: residual sizes {sizes}")

for n in range(4):
    print(f"|K_{n}|: formula {expected_K_order(cfg, x, n, 4)}, structural {structural_K_order(cfg, x, n, 4)}")

report = chain_report(system, x, n_max=2)
print(report.to_csv(), end="")
print({k: v for k, v in report.flags.items() if k.endswith("evidence")})

# the surviving centralizer elements only touch the deepest level
Z = brute_force_Z(system, x, 1)
print("Z_1 bound:", [str(g) for g in Z])
print("trivial on V_3:", all(project(g, system.tree, 3).is_identity() for g in Z))
