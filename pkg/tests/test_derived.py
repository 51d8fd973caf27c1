import random
from itertools import product

import pytest

from relgt.corpus import CHAIN_SHIFT_N4, GRAPHS, TABLEAUX
from relgt.derived import (
    build_G_of_L,
    build_Gbar,
    down_edges,
    graph_difference,
    incident_vertices,
    is_realization,
    maximal_chains,
    satisfies,
)
from relgt.errors import NotARealization, ZeroShift
from relgt.graph import TriGraph
from relgt.module import RelationModule, random_realization
from relgt.tableau import Entry, Shift, Tableau, integer_difference, vertices


def arrows(*pairs):
    return frozenset(pairs)


CLOSURE_GBAR = arrows(
    ((4, 3), (3, 3)), ((3, 2), (2, 2)), ((3, 2), (4, 3)), ((3, 3), (4, 4)),
    ((2, 1), (3, 2)), ((2, 1), (1, 1)), ((2, 2), (3, 3)), ((1, 1), (2, 2)),
    ((4, 3), (4, 4)), ((3, 2), (4, 4)), ((2, 1), (3, 3)),
)

# every pairwise difference of (pi,pi,0,-1 | pi,2,0 | 3,2 | 3) evaluated by hand
CLOSURE_G_OF_R = CLOSURE_GBAR | arrows(((4, 1), (4, 2)), ((4, 1), (3, 1)), ((4, 2), (3, 1)))


def test_realization_examples():
    t1, t2 = TABLEAUX["t1"], TABLEAUX["t2"]
    for name in ("realize_left", "realize_right"):
        g = GRAPHS[name]
        assert satisfies(t1, g) and not is_realization(t1, g)
        assert satisfies(t2, g) and is_realization(t2, g)


def test_distinct_classes_realize_empty_graph():
    t = Tableau.from_rows([["a", "b", "c"], ["d", "e"], ["f"]])
    assert satisfies(t, TriGraph(3)) and is_realization(t, TriGraph(3))
    assert not build_G_of_L(t).arrows


def test_g_of_l_for_closure_n4_tableau():
    g = build_G_of_L(TABLEAUX["closure_n4_tableau"])
    assert g.arrows == CLOSURE_G_OF_R
    # pi against 2 is not integral, so no arrow joins (3,2) and (4,1)
    assert ((3, 2), (4, 1)) not in g


def test_gbar_for_closure_n4_graph():
    gbar = build_Gbar(GRAPHS["closure_n4"])
    assert gbar.arrows == CLOSURE_GBAR
    assert ((4, 3), (4, 4)) in gbar


def test_gbar_empty_and_lattice_n4():
    assert not build_Gbar(TriGraph(4)).arrows
    g = GRAPHS["lattice_n4"]
    gbar = build_Gbar(g)
    assert gbar == g
    assert not [a for a in gbar.arrows if a[0][0] == 4 or a[1][0] == 4]


def test_lattice_n4_reduced_graph():
    g, t = GRAPHS["lattice_n4"], TABLEAUX["lattice_n4_seed"]
    reduced = graph_difference(build_G_of_L(t), build_Gbar(g))
    assert reduced.arrows == arrows(
        ((4, 1), (3, 1)), ((4, 2), (4, 3)), ((3, 2), (4, 2)), ((3, 2), (4, 3)), ((4, 4), (3, 3)),
    )
    assert down_edges(reduced) == arrows(((4, 1), (3, 1)), ((4, 4), (3, 3)))
    assert incident_vertices(reduced) == {(4, 1), (3, 1), (4, 2), (4, 3), (3, 2), (4, 4), (3, 3)}


def test_difference_with_itself_is_empty():
    g = GRAPHS["closure_n4"]
    assert not graph_difference(g, g).arrows


def test_maximal_chains_lattice_n4():
    g, t = GRAPHS["lattice_n4"], TABLEAUX["lattice_n4_seed"]
    z = Shift.parse(4, CHAIN_SHIFT_N4)
    expected_g = [((2, 1), (3, 2), (2, 2)), ((2, 1), (1, 1), (2, 2))]
    assert sorted(maximal_chains(g, z)) == sorted(expected_g)
    assert sorted(maximal_chains(build_G_of_L(t), z)) == sorted(expected_g + [((3, 1),), ((3, 3),)])


def test_maximal_chains_isolated_vertex():
    z = Shift.parse(3, "0,0,0|0,0|2")
    assert maximal_chains(TriGraph(3), z) == []
    assert maximal_chains(TriGraph(3), z, include_isolated=True) == [((1, 1),)]


def test_maximal_chains_zero_shift():
    with pytest.raises(ZeroShift):
        maximal_chains(GRAPHS["lattice_n4"], Shift.zero(4))


def test_chain_vertices_are_nonzero_and_maximal():
    rng = random.Random(5)
    g = build_G_of_L(TABLEAUX["closure_n4_tableau"])
    for _ in range(200):
        z = Shift(4, [0] * 4 + [rng.choice([-1, 0, 0, 1]) for _ in range(6)])
        if z.is_zero():
            continue
        for chain in maximal_chains(g, z):
            assert all(z[v] for v in chain)
            assert all((a, b) in g for a, b in zip(chain, chain[1:]))
            ext_in = [a for a, b in g.arrows if b == chain[0] and z[a]]
            ext_out = [b for a, b in g.arrows if a == chain[-1] and z[b]]
            assert not ext_in and not ext_out


def test_omega_plus_count():
    for t in (TABLEAUX["closure_n4_tableau"], TABLEAUX["lattice_n4_seed"], TABLEAUX["lattice_n3_seed"]):
        count = sum(
            1
            for (r, s), (r2, u) in product(vertices(t.n), repeat=2)
            if r2 == r - 1 and (d := integer_difference(t[(r, s)], t[(r2, u)])) is not None and d >= 0
        )
        assert len(down_edges(build_G_of_L(t))) == count


def test_class_shift_preserves_signature():
    g, t = GRAPHS["lattice_n4"], TABLEAUX["lattice_n4_seed"]
    moved = Tableau(4, [Entry(e.sym, e.q + 1) if e.sym == "pi" else e for e in t.entries])
    gbar = build_Gbar(g)
    before = down_edges(graph_difference(build_G_of_L(t), gbar))
    after = down_edges(graph_difference(build_G_of_L(moved), gbar))
    assert before == after


# -- the module-level shortcuts agree with the tableau-level definitions -------------


def family_modules():
    rng = random.Random(11)
    out = [
        RelationModule(GRAPHS["lattice_n3"], TABLEAUX["lattice_n3_seed"]),
        RelationModule(GRAPHS["lattice_n4"], TABLEAUX["lattice_n4_seed"]),
        RelationModule(GRAPHS["realize_left"], TABLEAUX["t2"]),
    ]
    for name in ("finite_dim_n4", "generic_n4", "verma_n4", "cuspidal_n4"):
        g = GRAPHS[name]
        out.append(RelationModule(g, random_realization(g, rng, spread=4)))
    return out


@pytest.mark.parametrize("module", family_modules(), ids=lambda m: f"n{m.n}-{len(m.graph)}arrows")
def test_module_shortcuts_match_definitions(module):
    rng = random.Random(3)
    gbar = build_Gbar(module.graph)
    for _ in range(150):
        z = tuple([0] * module.n + [rng.randint(-3, 3) for _ in range(module.size - module.n)])
        t = module.tableau(z)
        assert module.contains(z) == is_realization(t, module.graph)
        if module.contains(z):
            assert module.signature_of(z) == down_edges(graph_difference(build_G_of_L(t), gbar))
            assert module.graph_of_orientation(module.orientation(z)) == build_G_of_L(t)


@pytest.mark.parametrize("module", family_modules(), ids=lambda m: f"n{m.n}-{len(m.graph)}arrows")
def test_window_rows_have_distinct_same_class_entries(module):
    for z in module.window(2).shifts:
        t = module.tableau(z)
        for k in range(1, t.n):
            row = t.row(k)
            assert len(set(row)) == len(row)


def test_module_rejects_non_realization():
    with pytest.raises(NotARealization):
        RelationModule(GRAPHS["realize_left"], TABLEAUX["t1"])
