import math

import pytest

from arboreal.chains import LevelGroupSystem, project
from arboreal.constructions import ProductConfig, WreathConfig, build, build_wreath, odometer, parse_group
from arboreal.perm import Perm
from arboreal.permgroup import enumerate_by_closure
from arboreal.portrait import Portrait
from arboreal.tree import SphericalIndex, VertexAddress

V = VertexAddress


def binary(depth):
    return build_wreath(WreathConfig.uniform(parse_group("C2"), depth, "C2"))


@pytest.fixture(scope="module")
def theorem1():
    return build(ProductConfig.of((3, 5, 5), (7, 11, 13)))


@pytest.fixture(scope="module")
def regular():
    # Z/3 x Z/5 acting on itself: abelian and regular on the leaves
    T = SphericalIndex([3, 5])
    gens = [
        Portrait.from_level_perms(T, [Perm([1, 2, 0]), Perm.identity(5)]),
        Portrait.from_level_perms(T, [Perm.identity(3), Perm([1, 2, 3, 4, 0])]),
    ]
    return LevelGroupSystem(T, gens)


def test_level_groups(theorem1):
    T = SphericalIndex([2, 2])
    assert LevelGroupSystem(T, []).level_group(2).order == 1
    assert theorem1.level_group(1).order == math.factorial(5) // 2
    sys = binary(4)
    G3 = sys.level_group(3)
    assert G3.order == 2 ** (1 + 2 + 4) == len(enumerate_by_closure(G3.generators, 8))
    assert sys.level_group(0).order == 1
    with pytest.raises(ValueError):
        sys.level_group(5)


def test_projection_equivariance():
    sys = binary(4)
    T = sys.tree
    for a in sys.generators:
        for n in range(T.depth):
            up, down = a.level_restriction(n + 1), a.level_restriction(n)
            assert project(up, T, n, n + 1) == down
    # level groups project onto each other
    for n in range(T.depth):
        image = [project(g, T, n, n + 1) for g in sys.level_group(n + 1).generators]
        assert sys.level_group(n).order == len(enumerate_by_closure(image, T.level_size(n)))


def test_vertex_stabilizer_chain(theorem1, regular):
    sys = binary(4)
    x = V([0, 0, 0, 0])
    chain = sys.vertex_stabilizer_chain(x)
    assert chain.stabilizers[1].order == 2**14
    assert list(chain.indices) == [sys.tree.level_size(n) for n in range(5)]
    orders = [S.order for S in chain.stabilizers]
    assert all(a >= 2 * b for a, b in zip(orders, orders[1:]))
    for S, T in zip(chain.stabilizers, chain.stabilizers[1:]):
        assert T.is_subgroup_of(S)
    y = V([0, 0])
    c = theorem1.vertex_stabilizer_chain(y)
    assert list(c.indices) == [1, 5, 65]
    trivial = LevelGroupSystem(SphericalIndex([2, 2]), []).vertex_stabilizer_chain(y)
    assert all(S.order == 1 for S in trivial.stabilizers)


def test_vertex_stabilizer_oracle():
    sys = binary(3)
    elements = enumerate_by_closure(sys.level_group(3).generators, 8)
    for v in [V([0]), V([1, 0]), V([1, 1, 0])]:
        span = range(sys.tree.index(v) * 2 ** (3 - v.level), (sys.tree.index(v) + 1) * 2 ** (3 - v.level))
        want = {g for g in elements if g(span[0]) in span}
        assert set(sys.vertex_stabilizer(v).elements()) == want


def test_cores(theorem1):
    sys = binary(3)
    assert sys.core(3).order == 1
    assert sys.core(1).order == 64
    assert sys.core(0) == sys.level_group(3)
    assert theorem1.core(1).order == math.factorial(13) // 2
    x = V([0, 0, 0])
    for n in range(4):
        C = sys.core(n)
        assert C == sys.core_by_conjugates(n, x)
        assert C.is_normal_in(sys.level_group(3))
        assert C.is_subgroup_of(sys.vertex_stabilizer(x.truncate(n)))


def test_core_by_conjugates_refuses_big_groups(theorem1):
    with pytest.raises(ValueError):
        theorem1.core_by_conjugates(1, V([0, 0]))


def test_discriminant(theorem1, regular):
    assert binary(4).discriminant_truncation(V([0, 0, 0, 0])).order == 2**11
    assert theorem1.discriminant_truncation(V([0, 0])).order == 12 * (math.factorial(12) // 2)
    assert regular.discriminant_truncation(V([0, 0])).order == 1
    assert odometer(2, 5).discriminant_truncation(V([1, 0, 1, 1, 0])).order == 1
    for sys, x in [(binary(4), V([1, 0, 1, 1])), (theorem1, V([2, 7]))]:
        G = sys.level_group(sys.depth)
        assert G.order == sys.tree.level_size(sys.depth) * sys.discriminant_truncation(x).order
    with pytest.raises(ValueError):
        theorem1.discriminant_truncation(V([0]))


def test_coset_labeling(theorem1):
    sys = binary(3)
    x = V([0, 1, 0])
    for n in range(4):
        labels = sys.coset_labeling(x, n)
        assert len(labels) == sys.tree.level_size(n)
        assert labels[x.truncate(n)].is_identity()
        G_n = sys.vertex_stabilizer(x.truncate(n))
        assert sys.level_group(3).order // G_n.order == len(labels)
        span = 2 ** (3 - n)
        for v, g in labels.items():
            assert g(sys.tree.index(x.truncate(n)) * span) // span == sys.tree.index(v)
    assert len(theorem1.coset_labeling(V([0, 0]), 1)) == 5


def test_coset_labeling_needs_transitivity():
    T = SphericalIndex([2, 2])
    sys = LevelGroupSystem(T, [Portrait.from_decorations(T, {V([0]): Perm([1, 0])})])
    with pytest.raises(ValueError):
        sys.coset_labeling(V([0, 0]), 1)


def test_truncation_and_json(theorem1):
    sys = binary(4)
    short = sys.truncated(2)
    assert short.level_orders() == sys.level_orders()[:3]
    back = LevelGroupSystem.from_json(theorem1.to_json())
    assert back.level_orders() == theorem1.level_orders()
    with pytest.raises(ValueError):
        sys.truncated(5)


def test_generators_must_share_the_tree():
    with pytest.raises(ValueError):
        LevelGroupSystem(SphericalIndex([2]), [Portrait.identity(SphericalIndex([3]))])
