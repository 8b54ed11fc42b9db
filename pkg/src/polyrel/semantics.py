"""The semantic functor from diagrams to polyhedral relations, normal forms,
the decision procedures built on top of it, and the axiom soundness suite."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from . import diagram as dg
from .diagram import Diagram, Fragment, Gen, Id, Seq, Sym, Tensor
from .exactla import QMatrix
from .polyhedra import (HPoly, PolyRelation, compose_rel, converse_rel, h_to_v,
                        includes_hp, is_feasible, permutation_rel, tensor_rel)


class SemanticsError(ValueError):
    pass


def _eq_rows(row):
    return [tuple(row), tuple(-v for v in row)]


def _generator_relation(g: dg.Generator) -> PolyRelation:
    kind = g.kind
    if kind in (dg.COCOPY, dg.CODELETE, dg.COADD, dg.COZERO, dg.COSCALAR):
        return converse_rel(_generator_relation(dg.Generator(dg.CO[kind], g.k)))
    if kind == dg.COPY:  # (x, y1, y2)
        return PolyRelation(1, 2, HPoly.make(3, _eq_rows((1, -1, 0, 0)) + _eq_rows((1, 0, -1, 0))))
    if kind == dg.DELETE:
        return PolyRelation(1, 0, HPoly(1))
    if kind == dg.ADD:  # (x1, x2, y)
        return PolyRelation(2, 1, HPoly.make(3, _eq_rows((1, 1, -1, 0))))
    if kind == dg.ZERO:
        return PolyRelation(0, 1, HPoly.make(1, _eq_rows((1, 0))))
    if kind == dg.SCALAR:
        return PolyRelation(1, 1, HPoly.make(2, _eq_rows((g.k, -1, 0))))
    if kind == dg.GEQ:
        return PolyRelation(1, 1, HPoly.make(2, [(1, -1, 0)]))
    if kind == dg.ONE:
        return PolyRelation(0, 1, HPoly.make(1, _eq_rows((1, -1))))
    raise SemanticsError("registers have no stateless semantics; use polyrel.stateful")


def sym_relation(n: int, m: int) -> PolyRelation:
    return permutation_rel([m + i for i in range(n)] + list(range(m)))


@lru_cache(maxsize=4096)
def wiring_permutation(d: Diagram) -> Optional[tuple]:
    """``perm`` with output ``perm[i]`` = input ``i`` when ``d`` is built only
    from identities and symmetries, otherwise ``None``."""
    if isinstance(d, Id):
        return tuple(range(d.n))
    if isinstance(d, Sym):
        return tuple([d.m + i for i in range(d.n)] + list(range(d.m)))
    if isinstance(d, Seq):
        pl, pr = wiring_permutation(d.left), wiring_permutation(d.right)
        if pl is None or pr is None:
            return None
        return tuple(pr[j] for j in pl)
    if isinstance(d, Tensor):
        pt, pb = wiring_permutation(d.top), wiring_permutation(d.bottom)
        if pt is None or pb is None:
            return None
        return pt + tuple(len(pt) + j for j in pb)
    return None


def _permute_left(perm, q: PolyRelation) -> PolyRelation:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    n = q.left
    body = q.body.embed(q.body.dim, inv + [n + k for k in range(q.right)])
    return PolyRelation(n, q.right, body)


def _permute_right(p: PolyRelation, perm) -> PolyRelation:
    n = p.left
    body = p.body.embed(p.body.dim, list(range(n)) + [n + j for j in perm])
    return PolyRelation(n, p.right, body)


@lru_cache(maxsize=4096)
def _eval(d: Diagram) -> PolyRelation:
    if isinstance(d, Gen):
        return _generator_relation(d.gen)
    perm = wiring_permutation(d)
    if perm is not None:
        return permutation_rel(perm)
    if isinstance(d, Seq):
        pl, pr = wiring_permutation(d.left), wiring_permutation(d.right)
        if pl is not None:
            return _permute_left(pl, _eval(d.right))
        if pr is not None:
            return _permute_right(_eval(d.left), pr)
        return compose_rel(_eval(d.left), _eval(d.right))
    if isinstance(d, Tensor):
        return tensor_rel(_eval(d.top), _eval(d.bottom))
    raise TypeError(f"not a diagram: {d!r}")


def evaluate(d: Diagram) -> PolyRelation:
    """``[[d]]`` as a polyhedral relation (left variables first)."""
    _, _, frag = dg.validate(d)
    if frag == Fragment.SPP:
        raise SemanticsError("registers have no stateless semantics; use polyrel.stateful")
    return _eval(d)


eval = evaluate  # noqa: A001  (the name used throughout the docs)


def homogenize(p: PolyRelation) -> PolyRelation:
    """Add a fresh right-boundary variable ``y``: rows ``(a, b)`` become
    ``a.z + b y >= 0``, plus ``y >= 0``."""
    d = p.body.dim
    rows = [tuple(r[:d]) + (r[d], 0) for r in p.body.rows]
    rows.append((0,) * d + (1, 0))
    return PolyRelation(p.left, p.right + 1, HPoly.make(d + 1, rows))


def _same_type(c: Diagram, d: Diagram):
    a, b = dg.arity(c), dg.arity(d)
    if a != b:
        raise dg.ArityError(f"comparing a {a[0]}->{a[1]} diagram with a {b[0]}->{b[1]} diagram")


def includes(c: Diagram, d: Diagram) -> bool:
    """Decide ``[[c]] <= [[d]]``."""
    _same_type(c, d)
    return includes_hp(evaluate(c).body, evaluate(d).body)


def equiv(c: Diagram, d: Diagram) -> bool:
    _same_type(c, d)
    p, q = evaluate(c).body, evaluate(d).body
    return includes_hp(p, q) and includes_hp(q, p)


def is_empty(c: Diagram) -> bool:
    return not is_feasible(evaluate(c).body)


# ---------------------------------------------------------------- normal forms

def _constraint_tail(p: int, m: int) -> Diagram:
    """``(geq^p + id_m) ; (cozero^p + id_m)``: forces the first ``p`` wires
    to be nonnegative and discards them."""
    return dg.seq(dg.tensor(dg.power(dg.geq, p), Id(m)),
                  dg.tensor(dg.power(dg.cozero, p), Id(m)))


def nf_of_rows(n: int, m: int, rows, affine: bool) -> Diagram:
    """Polyhedral normal form of ``{(x, y) | A (x; y) + b >= 0}``.

    ``rows`` are ``(a_1..a_{n+m}, b)``.  With ``affine`` false ``b`` must be
    zero and the result avoids ``one``.
    """
    p = len(rows)
    if affine:
        a = QMatrix.from_rows([list(r) for r in rows], n + m + 1)
        head = dg.seq(dg.tensor(Id(n), dg.cup(m), dg.one),
                      dg.tensor(Id(n + m), Sym(m, 1)))
        body = dg.tensor(dg.diagram_of_matrix(a, "Right"), Id(m))
    else:
        if any(r[n + m] != 0 for r in rows):
            raise ValueError("non-homogeneous rows need the affine normal form")
        a = QMatrix.from_rows([list(r[:n + m]) for r in rows], n + m)
        head = dg.tensor(Id(n), dg.cup(m))
        body = dg.tensor(dg.diagram_of_matrix(a, "Right"), Id(m))
    return dg.seq(head, body, _constraint_tail(p, m))


def poly_nf(c: Diagram) -> Diagram:
    n, m, frag = dg.validate(c)
    rel = evaluate(c)
    rows = rel.body.rows
    affine = not dg.within(frag, Fragment.CircGeq) or any(r[n + m] != 0 for r in rows)
    return nf_of_rows(n, m, rows, affine)


def fg_of_generators(n: int, m: int, gens) -> Diagram:
    """``{(x, y) | (x; y) = V z, z >= 0}`` with ``V``'s columns ``gens``."""
    k = len(gens)
    v = QMatrix.from_rows([[g[i] for g in gens] for i in range(n + m)], k)
    return dg.seq(dg.tensor(Id(n), dg.cup(m)),
                  dg.tensor(dg.diagram_of_matrix(v, "Left"), Id(m)),
                  _constraint_tail(k, m))


def fg_nf(c: Diagram) -> Diagram:
    n, m, frag = dg.validate(c)
    if not dg.within(frag, Fragment.CircGeq):
        raise ValueError("finitely generated normal forms are only built for cone diagrams")
    vrep = h_to_v(evaluate(c).body)
    gens = list(vrep.rays) + list(vrep.lines) + [tuple(-x for x in l) for l in vrep.lines]
    return fg_of_generators(n, m, gens)


def matrix_of_functional(c: Diagram) -> QMatrix:
    """Recover ``A`` from a CircRight diagram with ``[[c]] = {(x, A x)}``."""
    n, m, frag = dg.validate(c)
    if frag != Fragment.CircRight:
        raise ValueError("matrix extraction needs a CircRight diagram")
    body = evaluate(c).body
    cols = []
    for i in range(n):
        pinned = body.substitute({j: int(i == j) for j in range(n)})
        v = h_to_v(pinned)
        if len(v.vertices) != 1 or v.rays or v.lines:
            raise SemanticsError("internal error: CircRight diagram is not functional")
        cols.append(v.vertices[0])
    return QMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(m)], n)


# ---------------------------------------------------------------- axioms

PROBE_SCALARS = tuple(Fraction(x) for x in ("-2", "-1", "0", "1/2", "1", "2", "3"))

_CONDITIONS = {
    "any": lambda k: True,
    "nonzero": lambda k: k != 0,
    "positive": lambda k: k > 0,
    "negative": lambda k: k < 0,
}


@dataclass(frozen=True)
class AxiomEntry:
    name: str
    group: str  # "linear", "order" or "affine"
    relation: str  # "Equal" or "LeqIncluded"
    lhs: Diagram
    rhs: Diagram
    instance: str = ""


@dataclass(frozen=True)
class AxiomVerdict:
    entry: AxiomEntry
    forward: bool
    backward: Optional[bool]

    @property
    def passed(self) -> bool:
        if self.entry.relation == "Equal":
            return self.forward and bool(self.backward)
        return self.forward


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _instantiate(template: str, k=None, l=None) -> str:
    out = template
    if k is not None:
        out = out.replace("{k}", _fmt(k))
    if l is not None:
        out = out.replace("{l}", _fmt(l))
        out = out.replace("{k*l}", _fmt(k * l)).replace("{k+l}", _fmt(k + l))
    return out


def load_axioms(probes=PROBE_SCALARS) -> list:
    """The built-in axiom table, scalar families instantiated at ``probes``."""
    raw = json.loads(resources.files("polyrel").joinpath("data/axioms.json").read_text())
    entries = []
    for item in raw["axioms"]:
        params = item.get("params", [])
        cond = _CONDITIONS[item.get("condition", "any")]
        if not params:
            instances = [((), "")]
        elif params == ["k"]:
            instances = [((k,), f"k={_fmt(k)}") for k in probes if cond(k)]
        else:
            instances = [((k, l), f"k={_fmt(k)},l={_fmt(l)}")
                         for k in probes for l in probes if cond(k) and cond(l)]
        for args, label in instances:
            lhs = dg.parse_dsl(_instantiate(item["lhs"], *args))
            rhs = dg.parse_dsl(_instantiate(item["rhs"], *args))
            entries.append(AxiomEntry(item["name"], item["group"], item["relation"],
                                      lhs, rhs, label))
    return entries


def check_axiom(entry: AxiomEntry) -> AxiomVerdict:
    _same_type(entry.lhs, entry.rhs)
    p, q = evaluate(entry.lhs).body, evaluate(entry.rhs).body
    fwd = includes_hp(p, q)
    back = includes_hp(q, p) if entry.relation == "Equal" else None
    return AxiomVerdict(entry, fwd, back)


def axiom_suite(probes=PROBE_SCALARS) -> list:
    return [check_axiom(e) for e in load_axioms(probes)]
