"""Causal cost graphs of machine runs and their physical measures.

A run becomes a bipartite-style graph of operation vertices (one per
executed instruction) and memory vertices (one per live cell per state
index, plus input and output bits).  An operation at step ``t`` reads a
cell's state ``t-1`` and writes state ``t``.  Volume and energy count
vertices plus edges; space is the largest synchronous slice.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .refmachine import PUT, READ, READS_CELL, WRITES_CELL, TraceStep


class Edge(NamedTuple):
    src: str
    dst: str
    t: int


@dataclass(frozen=True)
class CompGraph:
    op_vertices: frozenset
    mem_vertices: frozenset
    time: dict = field(compare=False, hash=False)
    edges: tuple = ()
    inputs: frozenset = frozenset()
    outputs: frozenset = frozenset()

    @property
    def vertices(self) -> frozenset:
        return self.op_vertices | self.mem_vertices

    def size(self) -> int:
        return len(self.op_vertices) + len(self.mem_vertices) + len(self.edges)

    def slices(self) -> Counter:
        """Number of vertices and edges at each timestamp."""
        counts = Counter(self.time[v] for v in self.vertices)
        counts.update(e.t for e in self.edges)
        return counts

    def to_json(self) -> dict:
        def order(v):
            return (self.time[v], v)
        return {
            "vertices": [{"id": v, "kind": "op" if v in self.op_vertices else "mem",
                          "t": self.time[v]} for v in sorted(self.vertices, key=order)],
            "edges": [{"src": e.src, "dst": e.dst, "t": e.t}
                      for e in sorted(self.edges, key=lambda e: (e.t, e.src, e.dst))],
            "inputs": sorted(self.inputs, key=order),
            "outputs": sorted(self.outputs, key=order),
        }


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(str(value))


@dataclass(frozen=True)
class UnitSystem:
    """Physical units of the graph model.  Values are kept as exact rationals."""
    v_u: Fraction = Fraction(1)
    e_u: Fraction = Fraction(1)
    s_u: Fraction = Fraction(1)
    m_u: Fraction = Fraction(1)
    c: Fraction = Fraction(299792458)
    k: Fraction = Fraction("1.380649e-23")
    h: Fraction = Fraction("6.62607015e-34")

    def __post_init__(self):
        for name in ("v_u", "e_u", "s_u", "m_u", "c", "k", "h"):
            value = _frac(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, value)

    @property
    def d_e(self) -> Fraction:
        return self.e_u / self.v_u

    @property
    def d_m(self) -> Fraction:
        return self.m_u / self.s_u

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in ("v_u", "e_u", "s_u", "m_u", "c", "k", "h")}


@dataclass(frozen=True)
class ResourceVector:
    time: int = 0
    volume: Fraction = Fraction(0)
    energy: Fraction = Fraction(0)
    space: Fraction = Fraction(0)
    total_energy: Fraction = Fraction(0)
    boundary: Fraction = Fraction(0)

    def get(self, metric: str):
        return {"time": self.time, "volume": self.volume, "energy": self.energy,
                "total-energy": self.total_energy}[metric]


def build_graph(trace: Sequence[TraceStep], input_length: int = 0) -> CompGraph:
    ops, mem, inputs, outputs = set(), set(), set(), set()
    time: dict[str, int] = {}
    edges = []
    touched: dict[int, list[int]] = defaultdict(list)
    cell_edges = []  # (direction, cell, state index, op id, t)

    for j in range(input_length):
        vid = f"in{j}"
        mem.add(vid)
        inputs.add(vid)
        time[vid] = 0

    consumed = emitted = 0
    prev = None
    for st in trace:
        t = st.step
        op = f"op{t}"
        ops.add(op)
        time[op] = t
        if prev is not None:
            edges.append(Edge(prev, op, t))
        prev = op
        if st.opcode in READS_CELL:
            touched[st.cell].append(t - 1)
            cell_edges.append(("r", st.cell, t - 1, op, t))
        if st.opcode == READ:
            if st.bits_read:
                edges.append(Edge(f"in{consumed}", op, t))
                consumed += 1
            else:
                # demanded bit arrives from outside at step t
                vid = f"in{consumed}"
                mem.add(vid)
                inputs.add(vid)
                time[vid] = t
                edges.append(Edge(vid, op, t))
                continue
        if st.opcode in WRITES_CELL:
            touched[st.cell].append(t)
            cell_edges.append(("w", st.cell, t, op, t))
        if st.opcode == PUT:
            vid = f"out{emitted}"
            emitted += 1
            mem.add(vid)
            outputs.add(vid)
            time[vid] = t
            edges.append(Edge(op, vid, t))

    for cell, idx in touched.items():
        for i in range(min(idx), max(idx) + 1):
            vid = f"c{cell}@{i}"
            mem.add(vid)
            time[vid] = i
    for direction, cell, i, op, t in cell_edges:
        vid = f"c{cell}@{i}"
        edges.append(Edge(vid, op, t) if direction == "r" else Edge(op, vid, t))

    return CompGraph(frozenset(ops), frozenset(mem), time, tuple(edges),
                     frozenset(inputs), frozenset(outputs))


def measure(graph: CompGraph, units: UnitSystem = UnitSystem()) -> ResourceVector:
    n = graph.size()
    slices = graph.slices()
    widest = max(slices.values(), default=0)
    volume = n * units.v_u
    space = widest * units.s_u
    return ResourceVector(
        time=len(graph.op_vertices),
        volume=volume,
        energy=n * units.e_u,
        space=space,
        total_energy=units.d_e * volume + space * units.d_m * units.c ** 2,
        boundary=len(graph.inputs & graph.mem_vertices) * units.v_u,
    )


def combine(vectors: Iterable[ResourceVector], units: UnitSystem = UnitSystem()) -> ResourceVector:
    """Resources of several runs executed one after another."""
    vectors = list(vectors)
    volume = sum((v.volume for v in vectors), Fraction(0))
    space = max((v.space for v in vectors), default=Fraction(0))
    return ResourceVector(
        time=sum(v.time for v in vectors),
        volume=volume,
        energy=sum((v.energy for v in vectors), Fraction(0)),
        space=space,
        total_energy=units.d_e * volume + space * units.d_m * units.c ** 2,
        boundary=sum((v.boundary for v in vectors), Fraction(0)),
    )


def synthetic_derivation_graph(slice_sizes: Sequence[int]) -> CompGraph:
    """Edge-free graph with ``slice_sizes[i]`` memory vertices at time ``i``."""
    if not slice_sizes:
        raise ValueError("slice_sizes must be non-empty")
    time = {}
    for i, size in enumerate(slice_sizes):
        if size <= 0:
            raise ValueError("slice sizes must be positive")
        for j in range(size):
            time[f"id{i}.{j}"] = i
    return CompGraph(frozenset(), frozenset(time), time)


class SelfContainment(NamedTuple):
    ok: bool
    violations: list


def is_self_contained(graph: CompGraph) -> SelfContainment:
    """Check that nothing enters the computation after it starts."""
    violations = []
    verts = graph.vertices
    for e in graph.edges:
        for end in (e.src, e.dst):
            if end not in verts:
                violations.append(f"edge {e.src}->{e.dst} leaves the graph at {end}")
    for v in sorted(graph.inputs, key=lambda v: (graph.time.get(v, 0), v)):
        t = graph.time.get(v)
        if t is None:
            violations.append(f"input {v} is not a vertex")
        elif t != 0:
            consumers = sorted(e.dst for e in graph.edges if e.src == v)
            for op in consumers:
                violations.append(f"{op} demanded external input {v} at t={t}")
            if not consumers:
                violations.append(f"input {v} arrives at t={t}")
    return SelfContainment(not violations, violations)

