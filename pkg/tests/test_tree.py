import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arboreal.tree import (
    SphericalIndex,
    VertexAddress,
    in_cylinder,
    level_size,
    metric,
    residual_vertices,
)

V = VertexAddress


def test_level_sizes():
    assert level_size([2, 3, 2], 2) == 6
    assert level_size([2, 3, 2], 0) == 1
    assert level_size([2, 2, 2, 2], 4) == 16
    with pytest.raises(ValueError):
        level_size([2, 2], 3)


def test_index_entries_must_branch():
    with pytest.raises(ValueError):
        SphericalIndex([2, 1])


def test_parent_and_children():
    T = SphericalIndex([2, 2, 2])
    v = V([0, 1])
    assert T.parent(v) == V([0])
    assert T.children(v) == [V([0, 1, 0]), V([0, 1, 1])]
    assert len(T.children(V())) == 2
    with pytest.raises(ValueError):
        T.parent(V())
    with pytest.raises(ValueError):
        T.children(V([0, 0, 0]))
    with pytest.raises(ValueError):
        T.children(V([0, 2]))


def test_vertex_numbering_is_lexicographic():
    T = SphericalIndex([2, 3, 2])
    for n in range(4):
        listed = list(T.vertices(n))
        assert [v.digits for v in listed] == list(itertools.product(*[range(m) for m in T.entries[:n]]))
        assert [T.index(v) for v in listed] == list(range(T.level_size(n)))


def test_descendant_ranges():
    T = SphericalIndex([2, 3, 2])
    for v in T.vertices(1):
        for n in range(1, 4):
            want = [T.index(w) for w in T.vertices(n) if w.is_descendant_of(v)]
            assert list(T.descendant_range(v, n)) == want


def test_metric_examples():
    p = V([0, 1, 0, 1])
    assert metric(p, V([0, 1, 1, 1])) == Fraction(1, 8)
    assert metric(p, p) == 0
    assert metric(p, V([1, 1, 0, 1])) == Fraction(1, 2)
    with pytest.raises(ValueError):
        metric(V([0]), V([0, 1]))


def test_cylinders():
    assert in_cylinder(V([1, 0, 1]), V())
    assert in_cylinder(V([0, 0, 0]), V([0]))
    assert not in_cylinder(V([0, 1, 0]), V([0, 0]))


def test_residual_examples():
    T = SphericalIndex([2, 2, 2])
    x = V([0, 0, 0])
    assert len(residual_vertices(T, x, 1, 2)) == 1
    assert len(residual_vertices(T, x, 1, 3)) == 2
    assert len(residual_vertices(T, x, 0, 3)) == 4
    assert residual_vertices(T, x, 2, 2) == [V([0, 0])]
    with pytest.raises(ValueError):
        residual_vertices(T, x, 3, 2)
    with pytest.raises(ValueError):
        residual_vertices(T, V([0, 0]), 0, 1)


shapes = st.lists(st.integers(2, 4), min_size=1, max_size=5)


@st.composite
def tree_and_path(draw):
    T = SphericalIndex(draw(shapes))
    x = V([draw(st.integers(0, m - 1)) for m in T.entries])
    return T, x


@settings(max_examples=80, deadline=None)
@given(tree_and_path())
def test_residual_sets_partition_each_level(tp):
    T, x = tp
    for i in range(T.depth + 1):
        parts = [residual_vertices(T, x, n, i) for n in range(i + 1)]
        flat = [v for part in parts for v in part]
        assert len(flat) == len(set(flat)) == T.level_size(i)
        for n in range(i):
            want = math.prod(T.entries[n:i]) - math.prod(T.entries[n + 1 : i])
            assert len(parts[n]) == want
            # the defining property, checked vertex by vertex
            assert all(v.is_descendant_of(x.truncate(n)) and not v.is_descendant_of(x.truncate(n + 1)) for v in parts[n])


@st.composite
def prefix_triples(draw):
    shape = draw(shapes)
    pick = lambda: V([draw(st.integers(0, min(m - 1, 1))) for m in shape])
    return pick(), pick(), pick()


@given(prefix_triples())
def test_metric_is_an_ultrametric(t):
    p, q, r = t
    assert metric(p, r) <= max(metric(p, q), metric(q, r))
    assert metric(p, q) == metric(q, p)
    assert (metric(p, q) == 0) == (p == q)


def test_text_and_json_formats():
    T = SphericalIndex([2, 3, 2])
    v = V([1, 2])
    assert v.to_text() == "1,2" and V.parse("1,2") == v
    assert V.parse("") == V() and V().to_text() == ""
    doc = T.to_json(v)
    assert json.loads(doc) == {"index": [2, 3, 2], "vertex": [1, 2]}
    assert SphericalIndex.from_json(doc) == (T, v)
    with pytest.raises(ValueError):
        V.parse("1,x")
    with pytest.raises(ValueError):
        SphericalIndex.from_json('{"index":[2,2],"vertex":[0,2]}')
