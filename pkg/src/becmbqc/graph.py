"""
BEC graph states from a JSON description.

Document layout (``version`` must be 1)::

    {
      "version": 1,
      "vertices": [{"id": "b1", "n": 3, "init": [re_a, im_a, re_b, im_b]}, ...],
      "edges": [{"from": "b2", "to": "b1", "kind": "rcz", "time": "pi/4"}, ...]
    }

``init`` defaults to |1/sqrt2, 1/sqrt2>> and ``time`` to pi/4; ``time`` may
be a number or an angle expression. For r-CZ, ``from`` is the vertex whose
Fock index sets the phase on ``to``'s b component.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import pi

import jsonschema

from .angles import parse_angle
from .errors import GraphParseError, ValidationError
from .fock import Register, init_product
from .operators import (
    PLUS,
    CoherentSpec,
    EdgeGate,
    GateKind,
    apply_edge,
    coherent_state,
)

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["version", "vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": 1},
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "n"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "n": {"type": "integer"},
                    "init": {
                        "type": "array",
                        "items": {"type": "number"},
                        "minItems": 4,
                        "maxItems": 4,
                    },
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "kind"],
                "additionalProperties": False,
                "properties": {
                    "from": {"type": "string"},
                    "to": {"type": "string"},
                    "kind": {"enum": ["rcz", "lcz"]},
                    "time": {"type": ["number", "string"]},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Vertex:
    id: str
    n: int
    init: CoherentSpec = PLUS


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    kind: GateKind
    time: float = pi / 4


@dataclass
class GraphSpec:
    vertices: list[Vertex]
    edges: list[Edge] = field(default_factory=list)

    def index(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.vertices)}

    def gates(self) -> list[EdgeGate]:
        idx = self.index()
        return [EdgeGate(e.kind, idx[e.source], idx[e.target], e.time) for e in self.edges]

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "vertices": [
                {
                    "id": v.id,
                    "n": v.n,
                    "init": [
                        complex(v.init.alpha).real, complex(v.init.alpha).imag,
                        complex(v.init.beta).real, complex(v.init.beta).imag,
                    ],
                }
                for v in self.vertices
            ],
            "edges": [
                {"from": e.source, "to": e.target, "kind": e.kind.value, "time": e.time}
                for e in self.edges
            ],
        }


def _path(err) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def graph_from_dict(doc: dict) -> GraphSpec:
    try:
        jsonschema.validate(doc, GRAPH_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"graph document invalid at {_path(exc)}: {exc.message}") from None

    vertices = []
    seen = set()
    for i, v in enumerate(doc["vertices"]):
        vid = v["id"]
        if vid in seen:
            raise ValidationError(f"vertices/{i}: duplicate vertex id {vid!r}")
        seen.add(vid)
        if v["n"] < 0:
            raise ValidationError(f"vertices/{i}: negative particle number {v['n']} for {vid!r}")
        init = PLUS
        if "init" in v:
            ra, ia, rb, ib = v["init"]
            try:
                init = CoherentSpec(complex(ra, ia), complex(rb, ib))
            except ValidationError as exc:
                raise ValidationError(f"vertices/{i}: {exc}") from None
        vertices.append(Vertex(vid, v["n"], init))

    edges = []
    for i, e in enumerate(doc["edges"]):
        for end in ("from", "to"):
            if e[end] not in seen:
                raise ValidationError(f"edges/{i}/{end}: unknown vertex {e[end]!r}")
        if e["from"] == e["to"]:
            raise ValidationError(f"edges/{i}: self-loop on {e['from']!r}")
        t = parse_angle(e.get("time", pi / 4))
        edges.append(Edge(e["from"], e["to"], GateKind(e["kind"]), t))
    return GraphSpec(vertices, edges)


def parse_graph(text: str) -> GraphSpec:
    """Parse and validate a JSON graph document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"JSON syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    return graph_from_dict(doc)


def build_graph_state(g: GraphSpec) -> Register:
    """Prepare every vertex in its init state, then apply every edge gate.

    The gates are diagonal, so edge order does not matter.
    """
    r = init_product([(v.n, coherent_state(v.n, v.init)) for v in g.vertices])
    for gate in g.gates():
        r = apply_edge(r, gate)
    return r


def chain(ns, kind: str = "rcz") -> GraphSpec:
    """Linear chain; for r-CZ each vertex's Fock index shifts its left neighbour."""
    vs = [Vertex(f"b{i + 1}", n) for i, n in enumerate(ns)]
    es = [Edge(vs[i + 1].id, vs[i].id, GateKind(kind)) for i in range(len(vs) - 1)]
    return GraphSpec(vs, es)


def gadget_template(n: int) -> GraphSpec:
    """The four-vertex logical CZ graph: rcz(b2->b1), lcz(b2,b3), rcz(b3->b4)."""
    vs = [Vertex(f"b{i}", n) for i in range(1, 5)]
    es = [
        Edge("b2", "b1", GateKind.RCZ),
        Edge("b2", "b3", GateKind.LCZ),
        Edge("b3", "b4", GateKind.RCZ),
    ]
    return GraphSpec(vs, es)


def composite_template(n: int) -> GraphSpec:
    """A three-body chain (t1-t2-t3) whose output vertex t1 feeds the logical
    CZ tile (c1..c4) through an r-CZ edge t1->c1."""
    three = chain([n, n, n])
    three = GraphSpec(
        [Vertex(f"t{i + 1}", v.n) for i, v in enumerate(three.vertices)],
        [Edge(e.source.replace("b", "t"), e.target.replace("b", "t"), e.kind) for e in three.edges],
    )
    cz = gadget_template(n)
    cz = GraphSpec(
        [Vertex(v.id.replace("b", "c"), v.n) for v in cz.vertices],
        [Edge(e.source.replace("b", "c"), e.target.replace("b", "c"), e.kind) for e in cz.edges],
    )
    link = Edge("t1", "c1", GateKind.RCZ)
    return GraphSpec(three.vertices + cz.vertices, three.edges + cz.edges + [link])


TEMPLATES = {"chain2": lambda n: chain([n, n]), "chain3": lambda n: chain([n, n, n]),
             "cz-gadget": gadget_template, "composite": composite_template}
