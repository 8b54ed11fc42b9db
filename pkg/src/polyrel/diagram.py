"""Diagram terms over the generator signature, plus the textual DSL.

Terms are trees built from :class:`Gen`, :class:`Id`, :class:`Sym`,
:class:`Seq` and :class:`Tensor`.  Nothing is quotiented syntactically;
questions of equality go through :mod:`polyrel.semantics`.

The lower-case helpers (:func:`seq`, :func:`tensor`, ...) are smart
constructors that drop identities; the node classes themselves build terms
verbatim.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactla import QMatrix, parse_rational

# generator kinds
COPY = "Copy"
DELETE = "Delete"
ADD = "Add"
ZERO = "Zero"
SCALAR = "Scalar"
COCOPY = "CoCopy"
CODELETE = "CoDelete"
COADD = "CoAdd"
COZERO = "CoZero"
COSCALAR = "CoScalar"
GEQ = "Geq"
ONE = "One"
REGISTER = "Register"

ARITY = {
    COPY: (1, 2), DELETE: (1, 0), ADD: (2, 1), ZERO: (0, 1), SCALAR: (1, 1),
    COCOPY: (2, 1), CODELETE: (0, 1), COADD: (1, 2), COZERO: (1, 0), COSCALAR: (1, 1),
    GEQ: (1, 1), ONE: (0, 1), REGISTER: (1, 1),
}

RIGHT_KINDS = frozenset({COPY, DELETE, ADD, ZERO, SCALAR})
LEFT_KINDS = frozenset({COCOPY, CODELETE, COADD, COZERO, COSCALAR})

CO = {COPY: COCOPY, DELETE: CODELETE, ADD: COADD, ZERO: COZERO, SCALAR: COSCALAR}
CO.update({v: k for k, v in list(CO.items())})

POLAR = {COPY: COADD, DELETE: COZERO, SCALAR: COSCALAR, ADD: COCOPY, ZERO: CODELETE}
POLAR.update({v: k for k, v in list(POLAR.items())})


@dataclass(frozen=True)
class Generator:
    kind: str
    k: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if (self.kind in (SCALAR, COSCALAR)) != (self.k is not None):
            raise ValueError(f"{self.kind} takes a scalar parameter iff it is (co)scalar")
        if self.k is not None and not isinstance(self.k, Fraction):
            object.__setattr__(self, "k", parse_rational(self.k))

    @property
    def arity(self):
        return ARITY[self.kind]


class Diagram:
    """Base class of diagram nodes; hashes are cached since terms are
    used as memoization keys."""

    __slots__ = ()

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self._fields))
            object.__setattr__(self, "_hash", h)
            return h

    def __str__(self):
        return print_dsl(self)


@dataclass(frozen=True, eq=True)
class Gen(Diagram):
    gen: Generator
    _fields = ("gen",)
    __hash__ = Diagram.__hash__


@dataclass(frozen=True, eq=True)
class Id(Diagram):
    n: int
    _fields = ("n",)
    __hash__ = Diagram.__hash__


@dataclass(frozen=True, eq=True)
class Sym(Diagram):
    """Swap a bundle of ``n`` wires over a bundle of ``m`` wires."""
    n: int
    m: int
    _fields = ("n", "m")
    __hash__ = Diagram.__hash__


@dataclass(frozen=True, eq=True)
class Seq(Diagram):
    left: Diagram
    right: Diagram
    _fields = ("left", "right")
    __hash__ = Diagram.__hash__


@dataclass(frozen=True, eq=True)
class Tensor(Diagram):
    top: Diagram
    bottom: Diagram
    _fields = ("top", "bottom")
    __hash__ = Diagram.__hash__


class Fragment(enum.IntEnum):
    CircRight = 0
    CircLeft = 1
    Circ = 2
    CircGeq = 3
    ACircGeq = 4
    SPP = 5


def within(frag: Fragment, bound: Fragment) -> bool:
    """Is every diagram of ``frag`` also a diagram of ``bound``?"""
    if frag == bound:
        return True
    if bound == Fragment.CircRight or bound == Fragment.CircLeft:
        return False
    return frag <= bound


class ArityError(ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{message} at {path or 'root'}")
        self.path = path


@dataclass
class _Usage:
    right: bool = False
    left: bool = False
    geq: bool = False
    one: bool = False
    reg: bool = False

    def fragment(self) -> Fragment:
        if self.reg:
            return Fragment.SPP
        if self.one:
            return Fragment.ACircGeq
        if self.geq:
            return Fragment.CircGeq
        if self.left and self.right:
            return Fragment.Circ
        if self.left:
            return Fragment.CircLeft
        return Fragment.CircRight


def _check(d: Diagram, path: str, use: _Usage):
    if isinstance(d, Gen):
        kind = d.gen.kind
        if kind in RIGHT_KINDS:
            use.right = True
        elif kind in LEFT_KINDS:
            use.left = True
        elif kind == GEQ:
            use.geq = True
        elif kind == ONE:
            use.one = True
        else:
            use.reg = True
        return d.gen.arity
    if isinstance(d, Id):
        if d.n < 0:
            raise ArityError(f"negative identity width {d.n}", path)
        return d.n, d.n
    if isinstance(d, Sym):
        if d.n < 0 or d.m < 0:
            raise ArityError("negative symmetry width", path)
        return d.n + d.m, d.n + d.m
    if isinstance(d, Seq):
        n1, m1 = _check(d.left, path + ".left", use)
        n2, m2 = _check(d.right, path + ".right", use)
        if m1 != n2:
            raise ArityError(f"sequencing a ?->{m1} diagram into a {n2}->? diagram", path)
        return n1, m2
    if isinstance(d, Tensor):
        n1, m1 = _check(d.top, path + ".top", use)
        n2, m2 = _check(d.bottom, path + ".bottom", use)
        return n1 + n2, m1 + m2
    raise TypeError(f"not a diagram: {d!r}")


def validate(d: Diagram):
    """Return ``(n, m, fragment)`` or raise :class:`ArityError`."""
    use = _Usage()
    n, m = _check(d, "", use)
    return n, m, use.fragment()


def arity(d: Diagram):
    n, m, _ = validate(d)
    return n, m


# ---------------------------------------------------------------- constructors

def gen(kind: str, k=None) -> Gen:
    return Gen(Generator(kind, None if k is None else parse_rational(k)))


copy = gen(COPY)
delete = gen(DELETE)
add = gen(ADD)
zero = gen(ZERO)
cocopy = gen(COCOPY)
codelete = gen(CODELETE)
coadd = gen(COADD)
cozero = gen(COZERO)
geq = gen(GEQ)
one = gen(ONE)
register = gen(REGISTER)


def scalar(k) -> Gen:
    return gen(SCALAR, k)


def coscalar(k) -> Gen:
    return gen(COSCALAR, k)


def ident(n: int) -> Id:
    return Id(n)


def _is_id(d: Diagram) -> bool:
    return isinstance(d, Id) or (isinstance(d, Sym) and (d.n == 0 or d.m == 0))


def seq(*ds: Diagram) -> Diagram:
    """Left-associated sequential composite, dropping identities."""
    if not ds:
        raise ValueError("seq needs at least one diagram")
    out = ds[0]
    for d in ds[1:]:
        m, n = arity(out)[1], arity(d)[0]
        if m != n:
            raise ArityError(f"sequencing a ?->{m} diagram into a {n}->? diagram")
        if _is_id(d):
            continue
        out = d if _is_id(out) else Seq(out, d)
    return out


def tensor(*ds: Diagram) -> Diagram:
    """Left-associated parallel composite; merges identities, drops ``Id(0)``."""
    out = Id(0)
    for d in ds:
        if isinstance(d, Id) and d.n == 0:
            continue
        if isinstance(out, Id) and out.n == 0:
            out = d
        elif isinstance(out, Id) and isinstance(d, Id):
            out = Id(out.n + d.n)
        elif isinstance(d, Id) and isinstance(out, Tensor) and isinstance(out.bottom, Id):
            out = Tensor(out.top, Id(out.bottom.n + d.n))
        else:
            out = Tensor(out, d)
    return out


def power(d: Diagram, k: int) -> Diagram:
    return tensor(*([d] * k))


def permutation(perm: Sequence[int]) -> Diagram:
    """Wiring sending input wire ``i`` to output position ``perm[i]``,
    built from adjacent transpositions."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation: {perm}")
    cur = list(perm)  # cur[pos] = final destination of the wire at pos
    layers = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                layers.append(tensor(Id(i), Sym(1, 1), Id(n - i - 2)))
                changed = True
    return seq(Id(n), *layers)


def copy_tree(k: int) -> Diagram:
    """``1 -> k`` diagram duplicating its input ``k`` times."""
    if k == 0:
        return delete
    if k == 1:
        return Id(1)
    return seq(copy, tensor(Id(1), copy_tree(k - 1)))


def add_tree(k: int) -> Diagram:
    """``k -> 1`` diagram summing its inputs."""
    if k == 0:
        return zero
    if k == 1:
        return Id(1)
    return seq(tensor(Id(1), add_tree(k - 1)), add)


def copy_block(n: int) -> Diagram:
    """``n -> 2n``: ``x |-> (x, x)`` for a bundle of ``n`` wires."""
    perm = [0] * (2 * n)
    for i in range(n):
        perm[2 * i] = i
        perm[2 * i + 1] = n + i
    return seq(Id(n), power(copy, n), permutation(perm))


def cocopy_block(n: int) -> Diagram:
    return mirror(copy_block(n))


def delete_block(n: int) -> Diagram:
    return power(delete, n)


def codelete_block(n: int) -> Diagram:
    return power(codelete, n)


def cup(n: int) -> Diagram:
    """``0 -> 2n`` with semantics ``{(., (x, x))}``."""
    if n == 0:
        return Id(0)
    one_cup = Seq(codelete, copy)
    if n == 1:
        return one_cup
    return seq(tensor(one_cup, cup(n - 1)),
               tensor(Id(1), Sym(1, n - 1), Id(n - 1)))


def cap(n: int) -> Diagram:
    """``2n -> 0`` with semantics ``{((x, x), .)}``."""
    if n == 0:
        return Id(0)
    one_cap = Seq(cocopy, delete)
    if n == 1:
        return one_cap
    return seq(tensor(Id(1), Sym(n - 1, 1), Id(n - 1)),
               tensor(one_cap, cap(n - 1)))


def build_wiring(kind: str, n: int, m: int = 0) -> Diagram:
    kind = kind.lower()
    if kind == "cup":
        return cup(n)
    if kind == "cap":
        return cap(n)
    if kind == "id":
        return Id(n)
    if kind == "sym":
        return Sym(n, m)
    raise ValueError(f"unknown wiring kind {kind!r}")


# ---------------------------------------------------------------- transforms

def mirror(d: Diagram) -> Diagram:
    """Left-right reflection: each generator becomes its co-version.

    Defined on Circ terms; for those it coincides with :func:`opposite`.
    """
    if isinstance(d, Gen):
        g = d.gen
        if g.kind not in CO:
            raise ValueError(f"{g.kind} has no mirror generator")
        return Gen(Generator(CO[g.kind], g.k))
    if isinstance(d, Id):
        return d
    if isinstance(d, Sym):
        return Sym(d.m, d.n)
    if isinstance(d, Seq):
        return Seq(mirror(d.right), mirror(d.left))
    if isinstance(d, Tensor):
        return Tensor(mirror(d.top), mirror(d.bottom))
    raise TypeError(f"not a diagram: {d!r}")


def wrapped_opposite(d: Diagram) -> Diagram:
    """``d^op`` via the compact-closed structure:
    ``(cup_n + id_m) ; (id_n + d + id_m) ; (id_n + cap_m)``."""
    n, m = arity(d)
    return seq(tensor(cup(n), Id(m)), tensor(Id(n), d, Id(m)), tensor(Id(n), cap(m)))


def opposite(d: Diagram) -> Diagram:
    if isinstance(d, Gen):
        kind = d.gen.kind
        if kind == REGISTER:
            raise ValueError("opposite is undefined on diagrams with registers")
        if kind in CO:
            return Gen(Generator(CO[kind], d.gen.k))
        return wrapped_opposite(d)
    if isinstance(d, Id):
        return d
    if isinstance(d, Sym):
        return Sym(d.m, d.n)
    if isinstance(d, Seq):
        return Seq(opposite(d.right), opposite(d.left))
    if isinstance(d, Tensor):
        return Tensor(opposite(d.top), opposite(d.bottom))
    raise TypeError(f"not a diagram: {d!r}")


leq = wrapped_opposite(geq)

# the polar image of geq: {(x, x) | x >= 0}
geq_polar = seq(copy, tensor(seq(geq, cozero), Id(1)))


def polar_syntactic(d: Diagram) -> Diagram:
    if isinstance(d, Gen):
        kind = d.gen.kind
        if kind == GEQ:
            return geq_polar
        if kind in (ONE, REGISTER):
            raise ValueError(f"polar is undefined on {kind}")
        return Gen(Generator(POLAR[kind], d.gen.k))
    if isinstance(d, (Id, Sym)):
        return d
    if isinstance(d, Seq):
        return Seq(polar_syntactic(d.left), polar_syntactic(d.right))
    if isinstance(d, Tensor):
        return Tensor(polar_syntactic(d.top), polar_syntactic(d.bottom))
    raise TypeError(f"not a diagram: {d!r}")


def diagram_of_matrix(a: QMatrix, direction: str = "Right") -> Diagram:
    """Right: ``cols -> rows`` with semantics ``{(x, A x)}``.
    Left: the mirror image, ``rows -> cols`` with ``{(A x, x)}``."""
    if direction.lower() == "left":
        return mirror(diagram_of_matrix(a, "Right"))
    if direction.lower() != "right":
        raise ValueError(f"unknown direction {direction!r}")
    nz_by_col = [[i for i in range(a.rows) if a[i, j] != 0] for j in range(a.cols)]
    col_major = [(i, j) for j in range(a.cols) for i in nz_by_col[j]]
    row_major = sorted(col_major)
    where = {e: pos for pos, e in enumerate(row_major)}
    fan_out = tensor(*[copy_tree(len(c)) for c in nz_by_col])
    scale = tensor(*[Id(1) if a[i, j] == 1 else scalar(a[i, j]) for i, j in col_major])
    shuffle = permutation([where[e] for e in col_major])
    nz_by_row = [sum(1 for j in range(a.cols) if a[i, j] != 0) for i in range(a.rows)]
    fan_in = tensor(*[add_tree(k) for k in nz_by_row])
    return seq(Id(a.cols), fan_out, scale, shuffle, fan_in)


# ---------------------------------------------------------------- DSL

class DSLSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line, self.column = line, col


_TOKEN_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)|([+-]?\d+(?:\s*/\s*\d+)?)|(\S)")
_SPACE_RE = re.compile(r"\s*")

_ATOMS = {
    "copy": copy, "del": delete, "add": add, "zero": zero,
    "cocopy": cocopy, "codel": codelete, "coadd": coadd, "cozero": cozero,
    "geq": geq, "one": one, "reg": register,
}


def _tokenize(text: str):
    toks = []
    pos = _SPACE_RE.match(text, 0).end()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        kind = ("name", "num", "sym")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), pos))
        pos = _SPACE_RE.match(text, m.end()).end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, self.text, tok[2])

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            self.error(f"expected {value!r}, found {t[1] or 'end of input'!r}", t)
        return t

    def nat(self):
        t = self.take()
        if t[0] != "num" or not re.fullmatch(r"\d+", t[1]):
            self.error(f"expected a natural number, found {t[1]!r}", t)
        return int(t[1])

    def rational(self):
        t = self.take()
        if t[0] != "num":
            self.error(f"expected a rational, found {t[1]!r}", t)
        try:
            return parse_rational(t[1])
        except ValueError as exc:
            self.error(str(exc), t)

    def diagram(self):
        d = self.term()
        while self.peek()[1] == ";":
            self.take()
            d = Seq(d, self.term())
        return d

    def term(self):
        d = self.atom()
        while self.peek()[1] == "*":
            self.take()
            d = Tensor(d, self.atom())
        return d

    def atom(self):
        t = self.take()
        if t[1] == "(":
            d = self.diagram()
            self.expect(")")
            return d
        if t[0] != "name":
            self.error(f"unexpected {t[1] or 'end of input'!r}", t)
        name = t[1]
        if name in _ATOMS:
            return _ATOMS[name]
        if name == "leq":
            return leq
        if name in ("scalar", "coscalar"):
            self.expect("(")
            k = self.rational()
            self.expect(")")
            return scalar(k) if name == "scalar" else coscalar(k)
        if name in ("id", "cup", "cap"):
            self.expect("(")
            n = self.nat()
            self.expect(")")
            return {"id": Id, "cup": cup, "cap": cap}[name](n)
        if name == "sym":
            self.expect("(")
            n = self.nat()
            self.expect(",")
            m = self.nat()
            self.expect(")")
            return Sym(n, m)
        self.error(f"unknown generator {name!r}", t)


def parse_dsl(text: str) -> Diagram:
    p = _Parser(text)
    d = p.diagram()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return d


_NAMES = {v.gen.kind: k for k, v in _ATOMS.items()}


def _fmt_scalar(k: Fraction) -> str:
    return str(k.numerator) if k.denominator == 1 else f"{k.numerator}/{k.denominator}"


def print_dsl(d: Diagram) -> str:
    if isinstance(d, Gen):
        g = d.gen
        if g.kind == SCALAR:
            return f"scalar({_fmt_scalar(g.k)})"
        if g.kind == COSCALAR:
            return f"coscalar({_fmt_scalar(g.k)})"
        return _NAMES[g.kind]
    if isinstance(d, Id):
        return f"id({d.n})"
    if isinstance(d, Sym):
        return f"sym({d.n},{d.m})"
    if isinstance(d, Seq):
        return f"({print_dsl(d.left)} ; {print_dsl(d.right)})"
    if isinstance(d, Tensor):
        return f"({print_dsl(d.top)} * {print_dsl(d.bottom)})"
    raise TypeError(f"not a diagram: {d!r}")
