"""Flow networks and bounded continuous Petri nets compiled into diagrams."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import diagram as dg
from .diagram import Diagram, Id
from .exactla import DimensionError, QMatrix, mat_mul, parse_rational, qvector
from .polyhedra import HPoly, interval_of_1d, is_feasible, project
from .semantics import evaluate
from .stateful import StatefulProcess, Transition, st_eval, st_transition

UNBOUNDED = None


def _parse_bound(x) -> Optional[Fraction]:
    if x is None or (isinstance(x, float) and math.isinf(x)):
        return UNBOUNDED
    if isinstance(x, str) and x.strip().lower() in ("inf", "+inf", "unbounded", "top"):
        return UNBOUNDED
    return parse_rational(x)


# ---------------------------------------------------------------- gadgets

nonneg = dg.geq_polar  # {(x, x) | x >= 0}
top_scalar = dg.seq(dg.delete, dg.codelete)  # the total relation 1 -> 1


def upper_bound(k: Optional[Fraction]) -> Diagram:
    """``1 -> 0`` accepting exactly ``x <= k`` (anything when unbounded)."""
    source = dg.seq(dg.one, top_scalar if k is UNBOUNDED else dg.scalar(k), dg.geq)
    return dg.seq(dg.tensor(Id(1), source), dg.cocopy, dg.delete)


def bound_filter(k: Optional[Fraction]) -> Diagram:
    """``{(x, x) | x <= k}``."""
    return dg.seq(dg.copy, dg.tensor(Id(1), upper_bound(k)))


def edge(k: Optional[Fraction]) -> Diagram:
    """Capacity gadget ``{(x, x) | 0 <= x <= k}``."""
    k = _parse_bound(k)
    if k is UNBOUNDED:
        return nonneg
    return dg.seq(dg.copy, dg.tensor(Id(1), dg.seq(dg.copy, dg.tensor(dg.seq(dg.geq, dg.cozero),
                                                                       upper_bound(k)))))


def coadd_tree(k: int) -> Diagram:
    return dg.mirror(dg.add_tree(k))


def flow_node(n_in: int, n_out: int) -> Diagram:
    return dg.seq(Id(n_in), dg.add_tree(n_in), coadd_tree(n_out))


def parallel_law(k, q):
    """Two parallel edges equal one edge of the summed capacity."""
    lhs = dg.seq(dg.coadd, dg.tensor(edge(k), edge(q)), dg.add)
    return lhs, edge(parse_rational(k) + parse_rational(q))


def series_law(k, q, l):
    """A downstream edge of capacity ``l >= k + q`` is redundant."""
    rhs = dg.seq(dg.tensor(edge(k), edge(q)), dg.add)
    return dg.seq(rhs, edge(l)), rhs


# ---------------------------------------------------------------- flow networks

@dataclass(frozen=True)
class FlowNetwork:
    nodes: tuple
    source: object
    sink: object
    edges: tuple  # (from, to, capacity or None for unbounded)

    def __post_init__(self):
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        names = set(self.nodes)
        for a, b, c in self.edges:
            if a not in names or b not in names:
                raise ValueError(f"edge {a}->{b} mentions an unknown node")
            if c is not UNBOUNDED and c < 0:
                raise ValueError(f"negative capacity on {a}->{b}")
        if self.source not in names or self.sink not in names:
            raise ValueError("source and sink must be nodes")

    @classmethod
    def make(cls, nodes, source, sink, edges) -> "FlowNetwork":
        return cls(tuple(nodes), source, sink,
                   tuple((a, b, _parse_bound(c)) for a, b, c in edges))

    @classmethod
    def from_json(cls, data: dict) -> "FlowNetwork":
        return cls.make(data["nodes"], data["source"], data["sink"],
                        [(e["from"], e["to"], e["cap"]) for e in data["edges"]])

    def to_json(self) -> dict:
        def cap(c):
            return "inf" if c is UNBOUNDED else f"{c.numerator}/{c.denominator}"
        return {"nodes": list(self.nodes), "source": self.source, "sink": self.sink,
                "edges": [{"from": a, "to": b, "cap": cap(c)} for a, b, c in self.edges]}


def topological_order(net: FlowNetwork) -> list:
    indeg = {v: 0 for v in net.nodes}
    for _, b, _ in net.edges:
        indeg[b] += 1
    ready = [v for v in net.nodes if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a, b, _ in net.edges:
            if a == v:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
    if len(order) != len(net.nodes):
        raise ValueError("flow network has a cycle; the encoder needs a DAG")
    return order


def encode_flow(net: FlowNetwork) -> Diagram:
    """The ``1 -> 1`` diagram relating the flow entering the source to the
    flow leaving the sink."""
    wires = ["in"]  # labels: "in", "out", or an edge index
    stages = [Id(1)]
    for v in topological_order(net):
        ins = [i for i, e in enumerate(net.edges) if e[1] == v]
        outs = [i for i, e in enumerate(net.edges) if e[0] == v]
        if v == net.source:
            ins = ["in"] + ins
        if v == net.sink:
            outs = outs + ["out"]
        front = [w for w in wires if w in ins]
        front.sort(key=ins.index)
        rest = [w for w in wires if w not in ins]
        order = front + rest
        stages.append(dg.permutation([order.index(w) for w in wires]))
        gadgets = [Id(1) if o == "out" else edge(net.edges[o][2]) for o in outs]
        node = dg.seq(flow_node(len(front), len(outs)), dg.tensor(*gadgets))
        stages.append(dg.tensor(node, Id(len(rest))))
        wires = outs + rest
    if wires != ["out"]:
        raise ValueError("flow network could not be layered from source to sink")
    return dg.seq(*stages)


def max_flow(net: FlowNetwork):
    """Largest flow through the network; ``math.inf`` when unbounded."""
    body = evaluate(encode_flow(net)).body
    lo, hi, empty = interval_of_1d(project(body, [0]))
    if empty:
        raise ValueError("flow network admits no flow at all")
    return math.inf if hi == math.inf else hi


# ---------------------------------------------------------------- Petri nets

@dataclass(frozen=True)
class PetriNet:
    places: int
    transitions: int
    pre: QMatrix
    post: QMatrix
    bounds: tuple  # Fraction or UNBOUNDED per place

    def __post_init__(self):
        for name, mtx in (("pre", self.pre), ("post", self.post)):
            if (mtx.rows, mtx.cols) != (self.places, self.transitions):
                raise DimensionError(f"{name} must be {self.places}x{self.transitions}")
            if any(x < 0 for x in mtx.entries):
                raise ValueError(f"{name} has a negative entry")
        if len(self.bounds) != self.places:
            raise DimensionError("one bound per place expected")
        if any(b is not UNBOUNDED and b <= 0 for b in self.bounds):
            raise ValueError("bounds must be positive or unbounded")

    @classmethod
    def make(cls, pre, post, bounds=None) -> "PetriNet":
        pre = [list(r) for r in pre]
        post = [list(r) for r in post]
        p = len(pre)
        t = len(pre[0]) if pre else (len(post[0]) if post else 0)
        if bounds is None:
            bounds = [UNBOUNDED] * p
        return cls(p, t, QMatrix.from_rows(pre, t), QMatrix.from_rows(post, t),
                   tuple(_parse_bound(b) for b in bounds))

    @classmethod
    def from_json(cls, data: dict) -> "PetriNet":
        # sizes may be omitted when the matrices are nonempty
        p = int(data.get("places", len(data["pre"])))
        t = int(data.get("transitions", len(data["pre"][0]) if data["pre"] else 0))
        bounds = tuple(_parse_bound(b) for b in data.get("bounds", ["inf"] * p))
        return cls(p, t, QMatrix.from_rows(data["pre"], t), QMatrix.from_rows(data["post"], t), bounds)

    def to_json(self) -> dict:
        def q(x):
            return f"{x.numerator}/{x.denominator}"
        return {"places": self.places, "transitions": self.transitions,
                "pre": [[q(x) for x in r] for r in self.pre.to_rows()],
                "post": [[q(x) for x in r] for r in self.post.to_rows()],
                "bounds": ["inf" if b is UNBOUNDED else q(b) for b in self.bounds]}


pos_add = dg.seq(dg.tensor(nonneg, nonneg), dg.add)
pos_coadd = dg.seq(dg.coadd, dg.tensor(nonneg, nonneg))


def buffer(bound: Optional[Fraction]) -> Diagram:
    """A register whose stored value never exceeds ``bound``."""
    return dg.seq(bound_filter(bound), dg.register, bound_filter(bound))


def place(bound: Optional[Fraction] = UNBOUNDED) -> Diagram:
    """``1 -> 1`` place: tokens produced on the left, consumed on the right;
    transitions ``(m, i, m - o + i, o)`` with ``i, o >= 0`` and ``o <= m``."""
    return dg.seq(dg.tensor(dg.cup(1), Id(1)),
                  dg.tensor(Id(1), pos_add),
                  dg.tensor(Id(1), buffer(bound)),
                  dg.tensor(Id(1), pos_coadd),
                  dg.tensor(dg.cap(1), Id(1)))


def plain_place() -> Diagram:
    """The place gadget with a bare register and no bound filters."""
    return dg.seq(dg.tensor(dg.cup(1), Id(1)),
                  dg.tensor(Id(1), pos_add),
                  dg.tensor(Id(1), dg.register),
                  dg.tensor(Id(1), pos_coadd),
                  dg.tensor(dg.cap(1), Id(1)))


def encode_petri(net: PetriNet) -> Diagram:
    """Closed ``0 -> 0`` diagram whose registers hold the marking."""
    t, p = net.transitions, net.places
    return dg.seq(dg.cup(t),
                  dg.tensor(dg.power(nonneg, t), Id(t)),
                  dg.tensor(dg.diagram_of_matrix(net.pre, "Right"),
                            dg.diagram_of_matrix(net.post, "Right")),
                  dg.tensor(Id(p), *[place(b) for b in net.bounds]),
                  dg.cap(p))


@lru_cache(maxsize=64)
def petri_process(net: PetriNet) -> StatefulProcess:
    return st_eval(encode_petri(net))


def _in_bounds(net: PetriNet, y) -> bool:
    return all(x >= 0 and (b is UNBOUNDED or x <= b) for x, b in zip(y, net.bounds))


def _check_marking(net: PetriNet, *ms):
    for m in ms:
        if len(m) != net.places:
            raise DimensionError(f"marking of dim {len(m)} for a net with {net.places} places")


def petri_can_step(net: PetriNet, y: Sequence, z: Sequence) -> bool:
    """Is there a firing vector ``t >= 0`` with ``pre t <= y`` and
    ``z = y - pre t + post t``?"""
    y, z = qvector(y), qvector(z)
    _check_marking(net, y, z)
    if not (_in_bounds(net, y) and _in_bounds(net, z)):
        return False
    t = net.transitions
    rows = []
    for j in range(t):
        rows.append([int(i == j) for i in range(t)] + [0])
    for i in range(net.places):
        pre, post = net.pre.row(i), net.post.row(i)
        rows.append([-x for x in pre] + [y[i]])
        eq = [post[j] - pre[j] for j in range(t)] + [y[i] - z[i]]
        rows.append(eq)
        rows.append([-x for x in eq])
    return is_feasible(HPoly.make(t, rows))


def petri_fire(net: PetriNet, y: Sequence, t: Sequence):
    """The marking after firing ``t`` from ``y``, or ``None`` if infeasible."""
    y, t = qvector(y), qvector(t)
    _check_marking(net, y)
    if len(t) != net.transitions:
        raise DimensionError(f"firing vector of dim {len(t)} for {net.transitions} transitions")
    if any(x < 0 for x in t):
        raise ValueError("firing vectors are nonnegative")
    consumed = mat_mul(net.pre, t)
    produced = mat_mul(net.post, t)
    if any(c > x for c, x in zip(consumed, y)):
        return None
    z = tuple(x - c + p for x, c, p in zip(y, consumed, produced))
    return z if _in_bounds(net, z) else None


def petri_step_via_process(net: PetriNet, y: Sequence, z: Sequence) -> bool:
    y, z = qvector(y), qvector(z)
    _check_marking(net, y, z)
    return st_transition(petri_process(net), Transition(y, (), z, ()))
