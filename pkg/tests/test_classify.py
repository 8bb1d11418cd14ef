import json

import pytest

from arboreal.chains import project
from arboreal.classify import (
    ChainReport,
    ChainRow,
    brute_force_K,
    brute_force_Z,
    centralizer_Z_upper,
    chain_report,
    classify_flags,
    cylinder_preserving,
    kernel_level,
    max_enum,
    non_hausdorff_check,
    stabilizer_K,
)
from arboreal.constructions import (
    ProductConfig,
    WreathConfig,
    build,
    build_wreath,
    nonhausdorff_witness_construct,
    parse_group,
)
from arboreal.perm import Perm
from arboreal.portrait import Portrait
from arboreal.tree import SphericalIndex, VertexAddress

V = VertexAddress


def wreath(group, depth):
    return build_wreath(WreathConfig.uniform(parse_group(group), depth, group))


@pytest.fixture(scope="module")
def binary4():
    return wreath("C2", 4)


@pytest.fixture(scope="module")
def theorem1():
    return build(ProductConfig.of((3, 5, 5), (7, 11, 13)))


def test_K_examples(binary4, theorem1):
    x = V([0, 0, 0, 0])
    assert stabilizer_K(binary4, x, 0).order == 1
    assert stabilizer_K(binary4, x, 1).order == 128 == len(brute_force_K(binary4, x, 1))
    assert stabilizer_K(theorem1, V([0, 0]), 1).order == 12
    with pytest.raises(ValueError):
        stabilizer_K(binary4, x, 5)


def test_K_elements_match_brute_force(binary4):
    x = V([1, 0, 1, 1])
    for n in range(5):
        assert set(stabilizer_K(binary4, x, n).elements()) == set(brute_force_K(binary4, x, n))


def test_K_chain_increases(binary4, theorem1):
    for sys, x in [(binary4, V([0, 1, 1, 0])), (theorem1, V([3, 4]))]:
        Ks = [stabilizer_K(sys, x, n) for n in range(sys.depth + 1)]
        for a, b in zip(Ks, Ks[1:]):
            assert a.is_subgroup_of(b)


def test_Z_examples(binary4, theorem1):
    x = V([0, 0, 0, 0])
    assert centralizer_Z_upper(binary4, x, 0).order == 1
    Z = centralizer_Z_upper(binary4, x, 1)
    assert all(project(g, binary4.tree, 3).is_identity() for g in Z.elements())
    assert kernel_level(binary4, list(Z.generators)) == 3
    assert centralizer_Z_upper(theorem1, V([0, 0]), 1).order == 1


def test_Z_inside_K_and_matches_brute_force(binary4):
    x = V([0, 1, 0, 0])
    for n in range(4):
        Z = centralizer_Z_upper(binary4, x, n)
        K = stabilizer_K(binary4, x, n)
        assert Z.is_subgroup_of(K)
        assert set(Z.elements()) == set(brute_force_Z(binary4, x, n))


@pytest.mark.parametrize("group, depth", [("C2", 3), ("C2", 4), ("C3", 3)])
def test_wreath_centralizers_vanish_above_the_last_level(group, depth):
    sys = wreath(group, depth)
    x = V([0] * depth)
    for n in range(depth + 1):
        Z = centralizer_Z_upper(sys, x, n)
        assert all(project(g, sys.tree, depth - 1).is_identity() for g in Z.elements())


@pytest.mark.parametrize("group, depth", [("C2", 3), ("C3", 2)])
def test_noncentral_elements_have_noncommuting_partners(group, depth):
    sys = wreath(group, depth)
    x = V([0] * depth)
    for n in range(depth + 1):
        Z = set(centralizer_Z_upper(sys, x, n).elements())
        U = list(cylinder_preserving(sys, x, n).elements())
        for g in stabilizer_K(sys, x, n).elements():
            if g not in Z:
                assert any(g * h != h * g for h in U)


def test_max_enum(monkeypatch, binary4):
    monkeypatch.delenv("ARBOREAL_MAX_ENUM", raising=False)
    assert max_enum() == 2**20
    monkeypatch.setenv("ARBOREAL_MAX_ENUM", "100")
    assert max_enum() == 100
    with pytest.raises(ValueError):
        brute_force_K(binary4, V([0, 0, 0, 0]), 1)
    monkeypatch.setenv("ARBOREAL_MAX_ENUM", "lots")
    with pytest.raises(ValueError):
        max_enum()


def test_reports(binary4, theorem1):
    r = chain_report(binary4, V([0, 0, 0, 0]), 2)
    assert [row.k_order for row in r.rows] == [1, 128, 1024]
    assert all(row.z_upper_order <= row.k_order for row in r.rows)
    assert r.flags["wild_evidence"] and r.flags["dynamically_wild_evidence"]
    assert not r.flags["flat_type_evidence"]
    assert "evidence" in r.horizon_caveat
    doc = json.loads(r.to_json())
    assert doc["rows"][1]["k_order"] == "128" and doc["depth"] == 4
    assert ChainReport.from_doc(doc).to_json() == r.to_json()
    assert r.to_json() == chain_report(binary4, V([0, 0, 0, 0]), 2).to_json()
    assert r.to_csv().splitlines()[2].startswith("4,2,1,128,")

    t = chain_report(theorem1, V([0, 0]), 1, buffer=1)
    assert t.flags["wild_evidence"] and t.flags["dynamically_wild_evidence"]
    assert not t.flags["flat_type_evidence"]
    with pytest.raises(ValueError):
        chain_report(binary4, V([0, 0, 0, 0]), 3)


def test_flags_on_synthetic_reports():
    def report(ks, zs):
        rows = [ChainRow(n, k, z) for n, (k, z) in enumerate(zip(ks, zs))]
        return ChainReport(5, (0,) * 5, 2, rows)

    constant = classify_flags(report([1, 1, 1], [1, 1, 1]))
    assert constant["stable_evidence"] and not constant["wild_evidence"]
    flat = classify_flags(report([1, 4, 16], [1, 4, 16]))
    assert flat["flat_type_evidence"] and not flat["dynamically_wild_evidence"]
    dyn = classify_flags(report([1, 4, 16], [1, 1, 1]))
    assert dyn["dynamically_wild_evidence"] and dyn["algebraically_stable_evidence"]
    assert dyn["finite_type_evidence"]
    assert dyn["horizon"] == {"depth": 5, "n_max": 2, "buffer": 2}


def test_non_hausdorff_examples():
    cfg = WreathConfig.uniform(parse_group("C2"), 6, "C2")
    x = V([0] * 6)
    ident = non_hausdorff_check(Portrait.identity(cfg.tree), x)
    assert ident.fixes_point and not any(ident.moves_inside)
    w = non_hausdorff_check(nonhausdorff_witness_construct(cfg, x), x)
    assert w.consistent and len(w.moves_inside) == 5
    full = non_hausdorff_check(Portrait.from_level_perms(cfg.tree, [Perm([1, 0])] * 6), x)
    assert not full.condition3 and all(v is None for v in full.fixed_subtree)


def test_non_hausdorff_fixed_piece_is_off_path():
    T = SphericalIndex([2, 2, 2, 2])
    x = V([0, 0, 0, 0])
    # only the leaves below (0, 0, 0) move: every fixed piece must avoid the path
    a = Portrait.from_decorations(T, {V([0, 0, 1]): Perm([1, 0])})
    v = non_hausdorff_check(a, x)
    for ell, piece in enumerate(v.fixed_subtree):
        assert piece is not None and piece.is_descendant_of(x.truncate(ell))
        assert piece != x.truncate(piece.level)
