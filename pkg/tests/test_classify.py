import json
import random
from fractions import Fraction
from itertools import product

import pytest

from relgt.action import ModuleVector, act
from relgt.classify import (
    LatticeReport,
    build_finite_dimensional,
    classify_window,
    decompose_translation,
    find_step,
    in_submodule_basis,
    is_cyclic_generator,
    precedes_one,
    same_cyclic,
    signature,
    step_generator,
)
from relgt.corpus import GRAPHS, TABLEAUX
from relgt.errors import DifferentModule, NotARealization, NotMonotone, ZeroShift
from relgt.graph import TriGraph, finite_dimensional_graph
from relgt.module import RelationModule
from relgt.tableau import Shift, Tableau, delta, rational_tableau, vertex_index, vertices

G3, L3 = GRAPHS["lattice_n3"], TABLEAUX["lattice_n3_seed"]
M3 = RelationModule(G3, L3)
DOWN_A = ((3, 1), (2, 1))
DOWN_B = ((2, 2), (1, 1))


def s3(z21=0, z11=0):
    """Tableau of the n=3 example module at shift (0,0,0|z21,0|z11)."""
    return M3.tableau((0, 0, 0, z21, 0, z11))


# B1..B4 representatives, read off the entry inequalities
B1 = [s3(0, 3), s3(1, 4)]
B2 = [s3(0, 0), s3(1, -2)]
B3 = [s3(-2, 3), s3(-3, 5)]
B4 = [s3(-2, 0), s3(-3, 2)]


def test_signature_examples():
    assert signature(L3, G3) == {DOWN_B}
    assert signature(TABLEAUX["lattice_n4_seed"], GRAPHS["lattice_n4"]) == {((4, 1), (3, 1)), ((4, 4), (3, 3))}
    generic2 = Tableau.from_rows([["a", "b"], ["c"]])
    assert signature(generic2, TriGraph(2)) == frozenset()
    with pytest.raises(NotARealization):
        signature(TABLEAUX["t1"], GRAPHS["realize_left"])


def test_b_families():
    assert all(signature(t, G3) == frozenset() for t in B1)
    assert all(signature(t, G3) == {DOWN_B} for t in B2)
    assert all(signature(t, G3) == {DOWN_A} for t in B3)
    assert all(signature(t, G3) == {DOWN_A, DOWN_B} for t in B4)


def test_submodule_membership():
    for s in B1 + B2 + B3 + B4:
        assert in_submodule_basis(s, B1[0], G3)
        assert in_submodule_basis(s, s, G3)
    assert in_submodule_basis(B4[0], B1[0], G3)
    assert not in_submodule_basis(B1[0], B4[0], G3)
    with pytest.raises(DifferentModule):
        in_submodule_basis(TABLEAUX["t2"], L3, G3)


def test_cyclic_generation():
    assert same_cyclic(B2[0], B2[1], G3)
    assert not same_cyclic(B2[0], B3[0], G3)
    assert is_cyclic_generator(B1[0], G3)
    assert not is_cyclic_generator(B4[0], G3)
    assert same_cyclic(B3[1], B3[1], G3)


def test_precedes_one_gl2():
    g = finite_dimensional_graph(2)
    top, bottom = rational_tableau([[1, -1], [1]]), rational_tableau([[1, -1], [0]])
    assert precedes_one(top, bottom, g)
    assert precedes_one(top, top, g)
    far = M3.tableau((0, 0, 0, 1, 0, 1))
    assert not precedes_one(L3, far, G3)


def sandwich_ok(module, z, v):
    idx = vertex_index(module.n)
    mid = [0] * module.size
    mid[idx[v]] = z[idx[v]]
    mid = tuple(mid)
    zero = (0,) * module.size
    return (
        z[idx[v]] != 0
        and module.contains(mid)
        and module.signature_of(zero) <= module.signature_of(mid) <= module.signature_of(z)
    )


def test_find_step_single_coordinate():
    z = Shift.parse(3, "0,0,0|0,0|2")
    assert find_step(L3, z, G3) == (1, 1)


def test_find_step_example_against_brute_force():
    z = Shift.parse(3, "0,0,0|1,0|1")
    v = find_step(L3, z, G3)
    assert sandwich_ok(M3, z.z, v)
    assert any(sandwich_ok(M3, z.z, u) for u in vertices(3))


def test_find_step_errors():
    with pytest.raises(ZeroShift):
        find_step(L3, Shift.zero(3), G3)
    r = B4[0]
    with pytest.raises(NotMonotone, match="NotMonotone"):
        find_step(r, B1[0].difference(r), G3)


@pytest.mark.parametrize("name", ["lattice_n3", "lattice_n4"])
def test_find_step_randomized(name):
    g, seed = GRAPHS[name], TABLEAUX[f"{name}_seed"]
    m = RelationModule(g, seed)
    shifts = m.window(2).shifts
    rng = random.Random(17)
    checked = 0
    while checked < 150:
        a, b = rng.choice(shifts), rng.choice(shifts)
        if a == b or not m.signature_of(a) <= m.signature_of(b):
            continue
        r = m.tableau(a)
        z = Shift(m.n, [y - x for x, y in zip(a, b)])
        sub = RelationModule(g, r)
        v = find_step(r, z, g)
        assert sandwich_ok(sub, z.z, v)
        checked += 1


def test_decompose_unit_runs():
    z = Shift.parse(3, "0,0,0|0,0|2")
    step = delta(3, 1, 1)
    assert decompose_translation(L3, z, G3) == [step, step]
    assert decompose_translation(L3, Shift.zero(3), G3) == []


def test_decompose_from_b4_is_monotone():
    r = M3.tableau((0, 0, 0, -3, 0, 0))
    assert signature(r, G3) == {DOWN_A, DOWN_B}
    z = Shift.parse(3, "0,0,0|1,0|1")
    steps = decompose_translation(r, z, G3)
    assert len(steps) == 2
    assert sum((s for s in steps), Shift.zero(3)) == z
    current, sig = r, signature(r, G3)
    for s in steps:
        nxt = current.shift(s)
        assert precedes_one(current, nxt, G3)
        assert signature(nxt, G3) >= sig
        current, sig = nxt, signature(nxt, G3)


def test_decompose_not_monotone():
    r = B4[0]
    with pytest.raises(NotMonotone):
        decompose_translation(r, B1[0].difference(r), G3)


def test_step_generator_matches_direction():
    assert str(step_generator(delta(3, 2, 1))) == "E23"
    assert str(step_generator(-delta(3, 1, 1))) == "E21"


def test_closure_under_generators_lattice_n3():
    from relgt.action import generators

    shifts = M3.window(3).shifts
    for rz in shifts[::5]:
        base = M3.signature_of(rz)
        for sz in shifts:
            if not base <= M3.signature_of(sz):
                continue
            for gen in generators(3):
                for tz, _ in act(gen, ModuleVector.basis(L3, sz), M3).items():
                    assert base <= M3.signature_of(tz)


def test_classify_lattice_n3():
    report = classify_window(G3, L3, 4)
    assert len(report.signatures) == 4
    assert report.maximal() == [frozenset({DOWN_A, DOWN_B})]
    assert report.generators() == [frozenset()]
    assert report.window_size == 81


def test_classify_generic_gl2_is_simple():
    t = Tableau.from_rows([["a", "b"], ["c"]])
    report = classify_window(TriGraph(2), t, 3)
    assert len(report.signatures) == 1


def test_classify_finite_dimensional_is_simple():
    window = build_finite_dimensional((3, 1, 0))
    seed = window.tableaux()[5]
    report = classify_window(window.module.graph, seed, 4)
    assert len(report.signatures) == 1


def test_lattice_report_round_trip_and_formats():
    report = classify_window(G3, L3, 3)
    text = json.dumps(report.to_json(), indent=2)
    again = LatticeReport.from_json(json.loads(text))
    assert json.dumps(again.to_json(), indent=2) == text
    csv_lines = report.to_csv().splitlines()
    assert csv_lines[0] == "id,size,count,simple_submodule,generator,edges"
    assert len(csv_lines) == 5
    dot = report.to_dot()
    edge_lines = [line for line in dot.splitlines() if line.strip().startswith("S") and " -> " in line]
    assert len(edge_lines) == len(report.covers())


def test_classify_jobs_matches_serial():
    serial = classify_window(G3, L3, 3)
    parallel = classify_window(G3, L3, 3, jobs=2)
    assert parallel.to_json() == serial.to_json()


# -- finite-dimensional modules ------------------------------------------------------


def brute_force_patterns(lam) -> int:
    """Count interlacing integer patterns with top row lam by direct search."""
    def count(upper):
        if len(upper) == 1:
            return 1
        total = 0
        for lower in product(*[range(upper[i + 1], upper[i] + 1) for i in range(len(upper) - 1)]):
            total += count(lower)
        return total

    return count(tuple(lam))


@pytest.mark.parametrize("lam", [(0, 0), (1, 0), (2, 1, 0), (0, 0, 0), (3, 3, 1), (2, 0, -1, -1), (4, 2, 1, 0)])
def test_finite_dimensional_counts(lam):
    assert len(build_finite_dimensional(lam)) == brute_force_patterns(lam)


def test_finite_dimensional_small_cases():
    assert len(build_finite_dimensional((0, 0, 0))) == 1
    assert len(build_finite_dimensional((1, 0))) == 2
    assert len(build_finite_dimensional((2, 1, 0))) == 8


def test_finite_dimensional_rejects_non_dominant():
    with pytest.raises(ValueError):
        build_finite_dimensional((0, 1))
    with pytest.raises(ValueError):
        build_finite_dimensional((Fraction(1, 2), 0))
