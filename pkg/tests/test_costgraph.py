from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from levinlab import costgraph as cg
from levinlab import refmachine as rm
from levinlab.mixture import enumerate_programs

ODD = cg.UnitSystem(v_u=Fraction(3, 7), e_u=Fraction(5, 11), s_u=2, m_u=Fraction(1, 9), c=3)


def graph_of(src, inp="", budget=1000):
    r = rm.run(rm.assemble(src), inp, budget)
    return cg.build_graph(r.trace, len(inp))


def test_single_put_graph():
    g = graph_of(".")
    assert g.op_vertices == {"op1"}
    assert g.mem_vertices == {"c0@0", "out0"}
    assert sorted(g.edges) == sorted([cg.Edge("c0@0", "op1", 1), cg.Edge("op1", "out0", 1)])
    assert cg.measure(g).volume == 5


def test_inc_put_graph_by_hand():
    g = graph_of("+.")
    assert g.mem_vertices == {"c0@0", "c0@1", "out0"}
    assert set(g.edges) == {
        cg.Edge("op1", "op2", 2),
        cg.Edge("c0@0", "op1", 1), cg.Edge("op1", "c0@1", 1),
        cg.Edge("c0@1", "op2", 2), cg.Edge("op2", "out0", 2),
    }
    v = cg.measure(g)
    assert (v.time, v.volume, v.energy) == (2, 10, 10)
    # slices: t=0 {c0@0}; t=1 {op1, c0@1, 2 edges}; t=2 {op2, out0, 3 edges}
    assert g.slices() == {0: 1, 1: 4, 2: 5}
    assert v.space == 5


def test_input_vertices_and_self_containment():
    g = graph_of(",.", "1")
    assert g.inputs == {"in0"} and g.time["in0"] == 0
    assert cg.is_self_contained(g).ok
    blocked = graph_of(",.", "")
    sc = cg.is_self_contained(blocked)
    assert not sc.ok
    assert sc.violations == ["op1 demanded external input in0 at t=1"]


def test_graph_size_matches_oracle_exhaustively():
    for p in enumerate_programs(16):
        for inp in ("", "1", "01"):
            r = rm.run(p, inp, 64)
            assert cg.build_graph(r.trace, len(inp)).size() == oracles.graph_size(p.bits, inp, 64)


def test_triangle_graph():
    g = cg.synthetic_derivation_graph([1, 2, 3])
    v = cg.measure(g, ODD)
    assert v.volume == 6 * ODD.v_u and v.space == 3 * ODD.s_u
    with pytest.raises(ValueError):
        cg.synthetic_derivation_graph([])
    with pytest.raises(ValueError):
        cg.synthetic_derivation_graph([1, 0])


def test_combine_sums_and_maxes():
    a = cg.measure(graph_of("+."), ODD)
    b = cg.measure(graph_of("."), ODD)
    c = cg.combine([a, b], ODD)
    assert c.time == 3 and c.volume == a.volume + b.volume
    assert c.space == max(a.space, b.space)
    assert c.total_energy == ODD.d_e * c.volume + c.space * ODD.d_m * ODD.c ** 2


def test_unit_system_rejects_nonpositive():
    with pytest.raises(ValueError):
        cg.UnitSystem(v_u=0)
    assert cg.UnitSystem(v_u="0.5").v_u == Fraction(1, 2)


def test_json_export_shape():
    j = graph_of("+.").to_json()
    assert [v["id"] for v in j["vertices"]] == ["c0@0", "c0@1", "op1", "op2", "out0"]
    assert {"src", "dst", "t"} == set(j["edges"][0])
    assert j["outputs"] == ["out0"] and j["inputs"] == []


programs = st.sampled_from(list(enumerate_programs(20)))


@settings(max_examples=200, deadline=None)
@given(programs, st.text("01", max_size=4), st.integers(1, 120))
def test_slices_partition_graph(p, inp, budget):
    r = rm.run(p, inp, budget)
    g = cg.build_graph(r.trace, len(inp))
    assert sum(g.slices().values()) == len(g.vertices) + len(g.edges)
    assert all(e.src in g.vertices and e.dst in g.vertices for e in g.edges)


@settings(max_examples=200, deadline=None)
@given(programs, st.text("01", max_size=4), st.integers(1, 120))
def test_unit_identities(p, inp, budget):
    r = rm.run(p, inp, budget)
    v = cg.measure(cg.build_graph(r.trace, len(inp)), ODD)
    assert v.energy * ODD.v_u == v.volume * ODD.e_u
    assert v.total_energy == ODD.d_e * v.volume + v.space * ODD.d_m * ODD.c ** 2


def test_empty_graph():
    g = cg.build_graph((), 0)
    assert g.size() == 0 and cg.is_self_contained(g).ok
    assert cg.measure(g, ODD) == cg.ResourceVector()
