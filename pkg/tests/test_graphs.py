from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from skeinrt.cyclotomic import ctx_new
from skeinrt.graphs import (TrivalentGraph, admissible_triple, brute_force_colorings, check_omega_characterization,
                            circle_graph, count_colorings, dimension_formula_genus1, fly_eyes, graph_signature,
                            iter_colorings, level_shape, mu_exponent, omega, omega_classes, parse_graph, relabel,
                            tetrahedron_graph, theta_graph, twist_classes)
from skeinrt.qnum import exact_constants


def test_admissibility_examples():
    assert admissible_triple(10, 2, 2, 2)
    assert not admissible_triple(8, 2, 2, 2)
    assert not admissible_triple(20, 1, 1, 1)
    assert not admissible_triple(20, 1, 1, 4)


def test_fly_eyes_small_genera():
    th = fly_eyes(2)
    assert len(th.vertices) == 2 and len(th.edges) == 3 and len(set(th.edges)) == 1
    tet = fly_eyes(3)
    assert len(tet.vertices) == 4 and len(tet.edges) == 6
    assert graph_signature(tet) == graph_signature(tetrahedron_graph())
    g4 = fly_eyes(4)
    assert len(g4.vertices) == 6 and len(g4.edges) == 9


@pytest.mark.parametrize("p", [6, 8, 12, 20])
def test_genus_one_count(p):
    assert count_colorings(ctx_new(p), circle_graph()) == dimension_formula_genus1(p) == (p - 2) // 2


@pytest.mark.parametrize("p", [6, 8, 10, 12])
@pytest.mark.parametrize("g", [2, 3])
def test_enumeration_matches_brute_force(p, g):
    ctx = ctx_new(p)
    G = fly_eyes(g)
    assert sorted(iter_colorings(ctx, G)) == brute_force_colorings(ctx, G)


def test_relabel_invariance():
    ctx = ctx_new(12)
    tet = tetrahedron_graph()
    perm = {v: w for v, w in zip(tet.vertices, reversed(tet.vertices))}
    assert count_colorings(ctx, relabel(tet, perm)) == count_colorings(ctx, tet)


def test_parse_round_trip_and_errors():
    g = fly_eyes(4)
    h = parse_graph(g.to_text())
    assert h.edges == g.edges and h.genus == 4
    with pytest.raises(ValueError):
        parse_graph("e0: v0 v1\ne1: v0 v1\n")
    with pytest.raises(ValueError):
        TrivalentGraph(((0, 1), (0, 1), (0, 2)), 2)


@pytest.mark.parametrize("p", [8, 12, 18, 30, 50])
def test_mu_exponent_is_the_twist(p):
    ctx = ctx_new(p)
    qc = exact_constants(ctx)
    for i in range(ctx.max_color + 1):
        assert qc.twist_mu(i) == ctx.A(mu_exponent(ctx, i))


@given(st.sampled_from([n for n in range(6, 202, 2) if level_shape(n)]))
def test_omega_closed_form(p):
    assert check_omega_characterization(p) == []


def test_level_shapes():
    assert level_shape(12) == ("4r", (3,))
    assert level_shape(18) == ("2r2", (3,))
    assert level_shape(50) == ("2r2", (5,))
    assert level_shape(30) == ("2r1r2", (3, 5))
    assert level_shape(16) is None and level_shape(60) is None


@pytest.mark.parametrize("p", [12, 18, 30])
def test_omega_partition_and_twist_classes(p):
    ctx = ctx_new(p)
    classes = omega_classes(ctx)
    assert sorted(itertools.chain(*classes)) == list(range(ctx.max_color + 1))
    for cl in classes:
        for i in cl:
            assert omega(ctx, i) == set(cl)
    G = theta_graph()
    tc = twist_classes(ctx, G)
    assert sum(len(c) for c in tc) == count_colorings(ctx, G)
    for c in tc:
        assert all(tuple(mu_exponent(ctx, x) for x in s) == c.key for s in c.members)
