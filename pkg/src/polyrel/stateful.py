"""Stateful polyhedral processes: a register count plus a transition
polyhedron over (state before, left ports, state after, right ports)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import diagram as dg
from .diagram import Diagram, Gen, Id, Seq, Sym, Tensor
from .exactla import DimensionError, qvector
from .polyhedra import (HPoly, PolyRelation, contains_point, includes_hp, project,
                        remove_redundancy)
from .semantics import _generator_relation, _eval as _stateless_eval

MAX_PERM_REGS = 8


class SearchBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class StatefulProcess:
    regs: int
    n: int
    m: int
    rel: PolyRelation

    def __post_init__(self):
        if self.rel.left != self.regs + self.n or self.rel.right != self.regs + self.m:
            raise DimensionError(
                f"process with {self.regs} registers {self.n}->{self.m} needs a "
                f"{self.regs + self.n}->{self.regs + self.m} relation, got "
                f"{self.rel.left}->{self.rel.right}")

    @property
    def body(self) -> HPoly:
        return self.rel.body

    def to_json(self) -> dict:
        return {"regs": self.regs, "n": self.n, "m": self.m, "rel": self.rel.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "StatefulProcess":
        return cls(int(data["regs"]), int(data["n"]), int(data["m"]),
                   PolyRelation.from_json(data["rel"]))


@dataclass(frozen=True)
class Transition:
    u: tuple
    l: tuple
    v: tuple
    r: tuple

    @classmethod
    def make(cls, u=(), l=(), v=(), r=()) -> "Transition":
        return cls(qvector(u), qvector(l), qvector(v), qvector(r))

    def point(self) -> tuple:
        return self.u + self.l + self.v + self.r


def stateless(rel: PolyRelation) -> StatefulProcess:
    return StatefulProcess(0, rel.left, rel.right, rel)


def register_process() -> StatefulProcess:
    # variables (u, l, v, r): v = l, r = u
    rows = [(0, 1, -1, 0, 0), (0, -1, 1, 0, 0), (1, 0, 0, -1, 0), (-1, 0, 0, 1, 0)]
    return StatefulProcess(1, 1, 1, PolyRelation(2, 2, HPoly.make(4, rows)))


def _block(start: int, size: int) -> list:
    return list(range(start, start + size))


def st_compose(p: StatefulProcess, q: StatefulProcess) -> StatefulProcess:
    """Sequential composite; ``p``'s registers come first."""
    if p.m != q.n:
        raise DimensionError(f"cannot compose {p.n}->{p.m} with {q.n}->{q.m}")
    s1, s2, n, k, o = p.regs, q.regs, p.n, p.m, q.m
    # layout: u1 u2 l v1 v2 r | w
    off_u1, off_u2 = 0, s1
    off_l = s1 + s2
    off_v1 = off_l + n
    off_v2 = off_v1 + s1
    off_r = off_v2 + s2
    off_w = off_r + o
    dim = off_w + k
    pb = p.body.embed(dim, _block(off_u1, s1) + _block(off_l, n) + _block(off_v1, s1) + _block(off_w, k))
    qb = q.body.embed(dim, _block(off_u2, s2) + _block(off_w, k) + _block(off_v2, s2) + _block(off_r, o))
    body = remove_redundancy(project(pb.conjoin(qb), range(off_w)))
    return StatefulProcess(s1 + s2, n, o, PolyRelation(s1 + s2 + n, s1 + s2 + o, body))


def st_tensor(p: StatefulProcess, q: StatefulProcess) -> StatefulProcess:
    """Parallel composite; the top process's registers come first."""
    s1, s2 = p.regs, q.regs
    n1, n2, m1, m2 = p.n, q.n, p.m, q.m
    # layout: u1 u2 l1 l2 v1 v2 r1 r2
    off_u2 = s1
    off_l1 = s1 + s2
    off_l2 = off_l1 + n1
    off_v1 = off_l2 + n2
    off_v2 = off_v1 + s1
    off_r1 = off_v2 + s2
    off_r2 = off_r1 + m1
    dim = off_r2 + m2
    pb = p.body.embed(dim, _block(0, s1) + _block(off_l1, n1) + _block(off_v1, s1) + _block(off_r1, m1))
    qb = q.body.embed(dim, _block(off_u2, s2) + _block(off_l2, n2) + _block(off_v2, s2) + _block(off_r2, m2))
    s = s1 + s2
    return StatefulProcess(s, n1 + n2, m1 + m2, PolyRelation(s + n1 + n2, s + m1 + m2, pb.conjoin(qb)))


@lru_cache(maxsize=2048)
def _st_eval(d: Diagram) -> StatefulProcess:
    if isinstance(d, Gen):
        if d.gen.kind == dg.REGISTER:
            return register_process()
        return stateless(_generator_relation(d.gen))
    if isinstance(d, (Id, Sym)):
        return stateless(_stateless_eval(d))
    if isinstance(d, Seq):
        return st_compose(_st_eval(d.left), _st_eval(d.right))
    if isinstance(d, Tensor):
        return st_tensor(_st_eval(d.top), _st_eval(d.bottom))
    raise TypeError(f"not a diagram: {d!r}")


def st_eval(d: Diagram) -> StatefulProcess:
    dg.validate(d)
    return _st_eval(d)


def _check_transition(p: StatefulProcess, t: Transition):
    dims = (len(t.u), len(t.l), len(t.v), len(t.r))
    if dims != (p.regs, p.n, p.regs, p.m):
        raise DimensionError(f"transition of shape {dims} for a process of shape "
                             f"{(p.regs, p.n, p.regs, p.m)}")


def st_transition(p: StatefulProcess, t: Transition) -> bool:
    _check_transition(p, t)
    return contains_point(p.body, t.point())


def st_step_set(p: StatefulProcess, u: Sequence, l: Sequence) -> HPoly:
    """Polyhedron of the ``(v, r)`` reachable in one step from state ``u``
    on left input ``l``."""
    u, l = qvector(u), qvector(l)
    if len(u) != p.regs or len(l) != p.n:
        raise DimensionError(f"state/input of dims {(len(u), len(l))}, expected {(p.regs, p.n)}")
    return p.body.substitute({i: x for i, x in enumerate(u + l)})


def permute_registers(p: StatefulProcess, sigma: Sequence[int]) -> StatefulProcess:
    """Rename register ``i`` to ``sigma[i]`` in both state blocks."""
    s, n, m = p.regs, p.n, p.m
    pos = [sigma[i] for i in range(s)] + _block(s, n)
    pos += [s + n + sigma[i] for i in range(s)] + _block(2 * s + n, m)
    return StatefulProcess(s, n, m, PolyRelation(p.rel.left, p.rel.right, p.body.embed(p.body.dim, pos)))


def st_includes(p: StatefulProcess, q: StatefulProcess, aligned: bool = False) -> bool:
    """Raw inclusion of transition relations, or (``aligned``) inclusion
    up to some register permutation of ``q``."""
    if (p.regs, p.n, p.m) != (q.regs, q.n, q.m):
        return False
    if not aligned:
        return includes_hp(p.body, q.body)
    if p.regs > MAX_PERM_REGS:
        raise SearchBoundExceeded(f"register permutation search is capped at {MAX_PERM_REGS} registers")
    return any(includes_hp(p.body, permute_registers(q, s).body)
               for s in itertools.permutations(range(p.regs)))


def st_equiv_perm(p: StatefulProcess, q: StatefulProcess) -> bool:
    """Equal up to a permutation of registers."""
    if (p.regs, p.n, p.m) != (q.regs, q.n, q.m):
        return False
    if p.regs > MAX_PERM_REGS:
        raise SearchBoundExceeded(f"register permutation search is capped at {MAX_PERM_REGS} registers")
    for sigma in itertools.permutations(range(p.regs)):
        qb = permute_registers(q, sigma).body
        if includes_hp(p.body, qb) and includes_hp(qb, p.body):
            return True
    return False
