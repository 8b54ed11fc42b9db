"""Exact polyhedral kernel over the rationals.

An :class:`HPoly` is the solution set of finitely many rows ``a.z + b >= 0``.
Rows are stored as primitive integer tuples ``(a_1, ..., a_n, b)``: any
rational row can be scaled by a positive factor to such a tuple without
changing its meaning, and integer arithmetic is much cheaper than
:class:`~fractions.Fraction` arithmetic inside Fourier-Motzkin.
"""
from __future__ import annotations

import contextvars
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .exactla import DimensionError, format_rational, integer_rank, parse_rational, qvector

exact_redundancy = contextvars.ContextVar("exact_redundancy", default=False)

DEFAULT_MAX_FM_ROWS = 100000


class FMRowLimitError(RuntimeError):
    """Fourier-Motzkin produced more rows than ``POLYREL_MAX_FM_ROWS``."""


def max_fm_rows() -> int:
    try:
        return int(os.environ.get("POLYREL_MAX_FM_ROWS", DEFAULT_MAX_FM_ROWS))
    except ValueError:
        return DEFAULT_MAX_FM_ROWS


# ---------------------------------------------------------------- row helpers

def _primitive(vec) -> tuple:
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


def _int_row(values: Sequence) -> tuple:
    fr = [Fraction(v) for v in values]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return _primitive([int(x * den) for x in fr])


def _empty_rows(dim: int) -> tuple:
    return ((0,) * dim + (-1,),)


def _canon(dim: int, rows: Iterable[tuple], hist: Optional[dict] = None):
    """Cheap filters: drop trivial rows, merge same-direction rows, detect
    contradictions between opposite rows.

    Returns the sorted tuple of surviving rows; with ``hist`` given (row ->
    history bitmask) also returns the history map of the survivors.
    """
    best = {}  # coefficient direction -> (const as Fraction, row, history)
    for row in rows:
        coeffs = row[:dim]
        g = 0
        for v in coeffs:
            g = gcd(g, v)
        if g == 0:
            if row[dim] < 0:
                return (_empty_rows(dim), {}) if hist is not None else _empty_rows(dim)
            continue
        key = tuple(v // g for v in coeffs)
        c = Fraction(row[dim], g)
        h = hist.get(row, 0) if hist is not None else 0
        old = best.get(key)
        if old is None or c < old[0] or (c == old[0] and bin(h).count("1") < bin(old[2]).count("1")):
            best[key] = (c, row, h)
    for key, (c, _, _) in best.items():
        neg = tuple(-v for v in key)
        other = best.get(neg)
        if other is not None and c + other[0] < 0:
            return (_empty_rows(dim), {}) if hist is not None else _empty_rows(dim)
    out = []
    new_hist = {}
    for key, (c, row, h) in best.items():
        r = _primitive(key + (c.numerator,)) if c.denominator == 1 else _primitive(
            tuple(v * c.denominator for v in key) + (c.numerator,))
        out.append(r)
        new_hist[r] = new_hist.get(r, 0) | h if r in new_hist else h
    out.sort()
    if hist is not None:
        return tuple(out), new_hist
    return tuple(out)


def _is_empty_rows(dim: int, rows) -> bool:
    return any(not any(r[:dim]) and r[dim] < 0 for r in rows)


# ---------------------------------------------------------------- data types

@dataclass(frozen=True)
class HPoly:
    """``{z in Q^dim | a.z + b >= 0 for every row (a, b)}``."""

    dim: int
    rows: tuple = ()

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.dim + 1:
                raise DimensionError(f"row of length {len(r)} in HPoly of dim {self.dim}")

    @classmethod
    def make(cls, dim: int, rows: Iterable[Sequence] = ()) -> "HPoly":
        """Build from rational rows ``(a_1, ..., a_n, b)``."""
        int_rows = []
        for r in rows:
            r = list(r)
            if len(r) != dim + 1:
                raise DimensionError(f"row of length {len(r)} in HPoly of dim {dim}")
            int_rows.append(_int_row(r))
        return cls(dim, _canon(dim, int_rows))

    @classmethod
    def from_ineqs(cls, dim: int, ineqs: Iterable) -> "HPoly":
        return cls.make(dim, [tuple(coeffs) + (const,) for coeffs, const in ineqs])

    @classmethod
    def universe(cls, dim: int) -> "HPoly":
        return cls(dim, ())

    @classmethod
    def empty(cls, dim: int) -> "HPoly":
        return cls(dim, _empty_rows(dim))

    @property
    def ineqs(self) -> list:
        return [(tuple(Fraction(v) for v in r[:self.dim]), Fraction(r[self.dim])) for r in self.rows]

    @property
    def is_cone(self) -> bool:
        return all(r[self.dim] == 0 for r in self.rows)

    def is_syntactically_empty(self) -> bool:
        return _is_empty_rows(self.dim, self.rows)

    def conjoin(self, other: "HPoly") -> "HPoly":
        if other.dim != self.dim:
            raise DimensionError("conjoining polyhedra of different dims")
        return HPoly(self.dim, _canon(self.dim, self.rows + other.rows))

    def embed(self, dim: int, positions: Sequence[int]) -> "HPoly":
        """Re-index variable ``i`` to ``positions[i]`` in a space of size ``dim``."""
        out = []
        for r in self.rows:
            new = [0] * (dim + 1)
            for i, p in enumerate(positions):
                new[p] += r[i]
            new[dim] = r[self.dim]
            out.append(tuple(new))
        return HPoly(dim, _canon(dim, out))

    def substitute(self, values: dict) -> "HPoly":
        """Pin ``z_i = values[i]`` and drop those variables."""
        keep = [i for i in range(self.dim) if i not in values]
        out = []
        for r in self.rows:
            const = Fraction(r[self.dim]) + sum(
                (r[i] * Fraction(v) for i, v in values.items()), Fraction(0))
            out.append(_int_row([r[i] for i in keep] + [const]))
        return HPoly(len(keep), _canon(len(keep), out))

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "ineqs": [[format_rational(v) for v in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "HPoly":
        return cls.make(int(data["dim"]), [[parse_rational(v) for v in r] for r in data["ineqs"]])


@dataclass(frozen=True)
class PolyRelation:
    """A polyhedral relation ``left -> right``; left variables come first."""

    left: int
    right: int
    body: HPoly

    def __post_init__(self):
        if self.body.dim != self.left + self.right:
            raise DimensionError(
                f"relation {self.left}->{self.right} needs a body of dim "
                f"{self.left + self.right}, got {self.body.dim}")

    def to_json(self) -> dict:
        return {"left": self.left, "right": self.right, **self.body.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "PolyRelation":
        return cls(int(data["left"]), int(data["right"]), HPoly.from_json(data))


def _normalize_ray(v: tuple) -> tuple:
    first = next((x for x in v if x != 0), None)
    if first is None:
        return v
    return tuple(x / abs(first) for x in v)


def _normalize_line(v: tuple) -> tuple:
    first = next((x for x in v if x != 0), None)
    if first is None:
        return v
    return tuple(x / first for x in v)


@dataclass(frozen=True)
class VRep:
    """``conv(vertices) + cone(rays) + span(lines)``.

    Members are normalized and sorted; an empty vertex set together with
    empty rays and lines denotes the empty polyhedron, while rays/lines with
    no vertices are read as a cone.
    """

    dim: int
    vertices: tuple = ()
    rays: tuple = ()
    lines: tuple = ()

    @classmethod
    def make(cls, dim: int, vertices=(), rays=(), lines=()) -> "VRep":
        vs = sorted({qvector(v) for v in vertices})
        rs = sorted({_normalize_ray(qvector(r)) for r in rays if any(r)})
        ls = sorted({_normalize_line(qvector(l)) for l in lines if any(l)})
        for v in vs + rs + ls:
            if len(v) != dim:
                raise DimensionError(f"generator of length {len(v)} in VRep of dim {dim}")
        return cls(dim, tuple(vs), tuple(rs), tuple(ls))

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.rays and not self.lines

    def to_json(self) -> dict:
        def enc(vs):
            return [[format_rational(x) for x in v] for v in vs]
        return {"dim": self.dim, "vertices": enc(self.vertices),
                "rays": enc(self.rays), "lines": enc(self.lines)}

    @classmethod
    def from_json(cls, data: dict) -> "VRep":
        return cls.make(int(data["dim"]), data.get("vertices", ()),
                        data.get("rays", ()), data.get("lines", ()))


# ---------------------------------------------------------------- Fourier-Motzkin

def fm_eliminate_var(h: HPoly, i: int) -> HPoly:
    """Plain Fourier-Motzkin step on variable ``i``.

    Rows with zero coefficient are kept; every (positive, negative) pair is
    combined so that ``z_i`` cancels.  Only duplicates are removed.
    """
    if not 0 <= i < h.dim:
        raise IndexError(f"variable {i} out of range for dim {h.dim}")
    pos, neg, out = [], [], []
    for r in h.rows:
        (pos if r[i] > 0 else neg if r[i] < 0 else out).append(r)
    for p in pos:
        for q in neg:
            a, b = p[i], -q[i]
            out.append(_primitive([b * x + a * y for x, y in zip(p, q)]))
    dropped = {tuple(r[:i] + r[i + 1:]) for r in out}
    return HPoly(h.dim - 1, tuple(sorted(dropped)))


def _substitute_equalities(dim: int, rows: tuple, elim: set) -> tuple:
    """Use implicit equalities (row and its negation both present) to
    eliminate variables in ``elim`` by substitution."""
    while True:
        if _is_empty_rows(dim, rows):
            return rows
        present = set(rows)
        eq = None
        for r in rows:
            neg = tuple(-v for v in r)
            if neg in present and any(r[j] for j in elim):
                eq = r
                break
        if eq is None:
            return rows
        j = max((j for j in elim if eq[j]), key=lambda j: (abs(eq[j]) == 1, -abs(eq[j])))
        ej = eq[j]
        neg_eq = tuple(-v for v in eq)
        out = []
        for r in rows:
            if r == eq or r == neg_eq:
                continue
            rj = r[j]
            if rj == 0:
                out.append(r)
                continue
            sgn = 1 if ej > 0 else -1
            out.append(_primitive([abs(ej) * x - rj * sgn * y for x, y in zip(r, eq)]))
        rows = _canon(dim, out)


def _project_rows(dim: int, rows: tuple, elim: Iterable[int]) -> tuple:
    """Existentially quantify the variables in ``elim``; columns are kept
    (zeroed) so indices stay stable."""
    elim = set(elim)
    limit = max_fm_rows()
    rows = _canon(dim, rows)
    rows = _substitute_equalities(dim, rows, elim)
    if _is_empty_rows(dim, rows):
        return rows
    hist = {r: 1 << n for n, r in enumerate(rows)}
    eliminated = 0
    remaining = {j for j in elim if any(r[j] for r in rows)}
    while remaining:
        def cost(j):
            p = sum(1 for r in rows if r[j] > 0)
            n = sum(1 for r in rows if r[j] < 0)
            return (p * n - p - n, j)
        j = min(remaining, key=cost)
        remaining.discard(j)
        eliminated += 1
        pos, neg, out = [], [], []
        for r in rows:
            (pos if r[j] > 0 else neg if r[j] < 0 else out).append(r)
        new_hist = {r: hist[r] for r in out}
        for p in pos:
            hp = hist[p]
            for q in neg:
                h = hp | hist[q]
                if bin(h).count("1") > eliminated + 1:
                    continue
                a, b = p[j], -q[j]
                r = _primitive([b * x + a * y for x, y in zip(p, q)])
                if r in new_hist:
                    if bin(h).count("1") < bin(new_hist[r]).count("1"):
                        new_hist[r] = h
                else:
                    new_hist[r] = h
                out.append(r)
            if len(out) > limit:
                raise FMRowLimitError(
                    f"Fourier-Motzkin exceeded {limit} rows (POLYREL_MAX_FM_ROWS)")
        rows, hist = _canon(dim, out, new_hist)
        if _is_empty_rows(dim, rows):
            return rows
        remaining = {k for k in remaining if any(r[k] for r in rows)}
    return rows


def _drop_columns(dim: int, rows: tuple, keep: Sequence[int]) -> "HPoly":
    new_dim = len(keep)
    out = [tuple(r[i] for i in keep) + (r[dim],) for r in rows]
    return HPoly(new_dim, _canon(new_dim, [_primitive(r) for r in out]))


def project(h: HPoly, keep: Sequence[int]) -> HPoly:
    """``{z_keep | exists extension in h}``, reindexed to the order of ``keep``."""
    keep = list(keep)
    for i in keep:
        if not 0 <= i < h.dim:
            raise IndexError(f"variable {i} out of range for dim {h.dim}")
    elim = set(range(h.dim)) - set(keep)
    rows = _project_rows(h.dim, h.rows, elim)
    return _drop_columns(h.dim, rows, keep)


def is_feasible(h: HPoly) -> bool:
    rows = _project_rows(h.dim, h.rows, range(h.dim))
    return not _is_empty_rows(h.dim, rows)


def contains_point(h: HPoly, z: Sequence) -> bool:
    if len(z) != h.dim:
        raise DimensionError(f"point of dim {len(z)} for HPoly of dim {h.dim}")
    z = qvector(z)
    for r in h.rows:
        if sum((r[i] * z[i] for i in range(h.dim)), Fraction(r[h.dim])) < 0:
            return False
    return True


def _row_implied(dim: int, others: tuple, row: tuple) -> bool:
    """Is ``row`` implied by ``others``?

    Violation ``row(z) < 0`` is encoded homogeneously: with a scale variable
    ``t >= 1`` the system ``A z + b t >= 0, -(a z + b t) >= 1`` is feasible
    exactly when some point satisfies the others strictly violating ``row``.
    """
    d = dim + 1  # z..., t
    sys = [tuple(r[:dim]) + (r[dim], 0) for r in others]
    sys.append((0,) * dim + (1, -1))
    sys.append(tuple(-v for v in row[:dim]) + (-row[dim], -1))
    rows = _project_rows(d, _canon(d, sys), range(d))
    return _is_empty_rows(d, rows)


def remove_redundancy(h: HPoly, exact: Optional[bool] = None) -> HPoly:
    """Drop duplicate and dominated rows; in exact mode also every row implied
    by the remaining ones."""
    if exact is None:
        exact = exact_redundancy.get()
    rows = _canon(h.dim, h.rows)
    if not exact or _is_empty_rows(h.dim, rows):
        return HPoly(h.dim, rows)
    if not is_feasible(HPoly(h.dim, rows)):
        return HPoly.empty(h.dim)
    kept = list(rows)
    for r in list(rows):
        others = tuple(x for x in kept if x != r)
        if _row_implied(h.dim, others, r):
            kept = list(others)
    return HPoly(h.dim, tuple(kept))


# ---------------------------------------------------------------- relations

def identity_rel(n: int) -> PolyRelation:
    rows = []
    for i in range(n):
        r = [0] * (2 * n + 1)
        r[i], r[n + i] = 1, -1
        rows.append(tuple(r))
        rows.append(tuple(-v for v in r))
    return PolyRelation(n, n, HPoly(2 * n, _canon(2 * n, rows)))


def permutation_rel(perm: Sequence[int]) -> PolyRelation:
    """Relation ``x -> y`` with ``y[perm[i]] = x[i]``."""
    n = len(perm)
    rows = []
    for i, p in enumerate(perm):
        r = [0] * (2 * n + 1)
        r[i], r[n + p] = 1, -1
        rows.append(tuple(r))
        rows.append(tuple(-v for v in r))
    return PolyRelation(n, n, HPoly(2 * n, _canon(2 * n, rows)))


def compose_rel(p: PolyRelation, q: PolyRelation) -> PolyRelation:
    """Relational composite: ``exists w. (x, w) in p and (w, y) in q``."""
    if p.right != q.left:
        raise DimensionError(f"cannot compose {p.left}->{p.right} with {q.left}->{q.right}")
    n, m, o = p.left, p.right, q.right
    dim = n + m + o
    # layout: x (n), y (o), w (m)
    pb = p.body.embed(dim, list(range(n)) + list(range(n + o, n + o + m)))
    qb = q.body.embed(dim, list(range(n + o, n + o + m)) + list(range(n, n + o)))
    rows = _project_rows(dim, pb.rows + qb.rows, range(n + o, dim))
    body = remove_redundancy(_drop_columns(dim, rows, range(n + o)))
    return PolyRelation(n, o, body)


def tensor_rel(p: PolyRelation, q: PolyRelation) -> PolyRelation:
    n1, m1, n2, m2 = p.left, p.right, q.left, q.right
    dim = n1 + n2 + m1 + m2
    pb = p.body.embed(dim, list(range(n1)) + list(range(n1 + n2, n1 + n2 + m1)))
    qb = q.body.embed(dim, list(range(n1, n1 + n2)) + list(range(n1 + n2 + m1, dim)))
    return PolyRelation(n1 + n2, m1 + m2, pb.conjoin(qb))


def converse_rel(p: PolyRelation) -> PolyRelation:
    n, m = p.left, p.right
    body = p.body.embed(n + m, list(range(m, m + n)) + list(range(m)))
    return PolyRelation(m, n, body)


def intersect_rel(p: PolyRelation, q: PolyRelation) -> PolyRelation:
    if (p.left, p.right) != (q.left, q.right):
        raise DimensionError("intersecting relations of different types")
    return PolyRelation(p.left, p.right, p.body.conjoin(q.body))


# ---------------------------------------------------------------- double description

def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def cone_generators(dim: int, constraints: Iterable[Sequence[int]]):
    """Double description for ``{z | a.z >= 0}`` (integer ``a``).

    Returns ``(rays, lines)`` as primitive integer tuples with
    ``cone(rays) + span(lines)`` equal to the cone.  Two rays are combined
    only when adjacent: the processed constraints tight at both have rank
    ``dim - #lines - 2``.
    """
    lines = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays = []  # list of (vector, active bitmask)
    processed = []
    for a in constraints:
        a = tuple(a)
        if not any(a):
            continue
        idx = len(processed)
        processed.append(a)
        bit = 1 << idx
        pivot = next((l for l in lines if _dot(a, l) != 0), None)
        if pivot is not None:
            if _dot(a, pivot) < 0:
                pivot = tuple(-v for v in pivot)
            ap = _dot(a, pivot)
            new_lines = []
            for l in lines:
                if l is pivot or l == pivot or l == tuple(-v for v in pivot):
                    continue
                al = _dot(a, l)
                new_lines.append(_primitive([ap * x - al * y for x, y in zip(l, pivot)]) if al else l)
            new_rays = []
            for r, act in rays:
                ar = _dot(a, r)
                if ar:
                    r = _primitive([ap * x - ar * y for x, y in zip(r, pivot)])
                new_rays.append((r, act | bit))
            full = (1 << idx) - 1
            new_rays.append((_primitive(pivot), full))
            lines, rays = new_lines, new_rays
            continue
        pos, neg, zero = [], [], []
        for r, act in rays:
            ar = _dot(a, r)
            if ar > 0:
                pos.append((r, act, ar))
            elif ar < 0:
                neg.append((r, act, ar))
            else:
                zero.append((r, act | bit))
        if not neg:
            rays = [(r, act) for r, act, _ in pos] + zero
            continue
        target = dim - len(lines) - 2
        rank_cache = {}
        combos = []
        for p, actp, ap in pos:
            for q, actq, aq in neg:
                common = actp & actq
                if bin(common).count("1") < target:
                    continue
                if common not in rank_cache:
                    sub = [processed[k] for k in range(idx) if common >> k & 1]
                    rank_cache[common] = integer_rank(sub)
                if rank_cache[common] != target:
                    continue
                v = _primitive([ap * x - aq * y for x, y in zip(q, p)])
                combos.append((v, common | bit))
        rays = [(r, act) for r, act, _ in pos] + zero + combos
    seen = {}
    for r, _ in rays:
        if any(r):
            seen[r] = None
    return list(seen), lines


def _homogenized_rows(h: HPoly) -> list:
    return [(0,) * h.dim + (1,)] + [tuple(r) for r in h.rows]


def h_to_v(h: HPoly) -> VRep:
    """Generators of ``h``: homogenize, run double description, read rays
    with positive last coordinate as vertices."""
    d = h.dim
    if h.is_syntactically_empty():
        return VRep(d)
    rays, lines = cone_generators(d + 1, _homogenized_rows(h))
    vertices = [tuple(Fraction(x, r[d]) for x in r[:d]) for r in rays if r[d] > 0]
    if not vertices:
        return VRep(d)
    rec = [r[:d] for r in rays if r[d] == 0]
    return VRep.make(d, vertices, rec, [l[:d] for l in lines])


def v_to_h(v: VRep) -> HPoly:
    """Eliminate the multipliers of ``z = sum lam v + sum mu r + sum nu l``
    (``lam, mu >= 0``, ``sum lam = 1`` when vertices are present)."""
    d = v.dim
    if v.is_empty:
        return HPoly.empty(d)
    gens = list(v.vertices) + list(v.rays) + list(v.lines)
    k = len(gens)
    dim = d + k
    rows = []
    for i in range(d):
        r = [Fraction(0)] * (dim + 1)
        r[i] = Fraction(1)
        for j, g in enumerate(gens):
            r[d + j] = -g[i]
        rows.append(_int_row(r))
        rows.append(tuple(-x for x in rows[-1]))
    for j in range(len(v.vertices) + len(v.rays)):
        r = [0] * (dim + 1)
        r[d + j] = 1
        rows.append(tuple(r))
    if v.vertices:
        r = [0] * (dim + 1)
        for j in range(len(v.vertices)):
            r[d + j] = 1
        r[dim] = -1
        rows.append(tuple(r))
        rows.append(tuple(-x for x in r))
    projected = _project_rows(dim, _canon(dim, rows), range(d, dim))
    return remove_redundancy(_drop_columns(dim, projected, range(d)))


def dual_cone(h: HPoly) -> HPoly:
    """``{y | y.x >= 0 for all x in h}`` for a cone ``h``."""
    if not h.is_cone:
        raise ValueError("dual_cone needs a cone (all constants zero)")
    rays, lines = cone_generators(h.dim, [r[:h.dim] for r in h.rows])
    rows = [tuple(r) + (0,) for r in rays]
    rows += [tuple(l) + (0,) for l in lines] + [tuple(-x for x in l) + (0,) for l in lines]
    return HPoly(h.dim, _canon(h.dim, rows))


def homogenize_hpoly(h: HPoly) -> HPoly:
    """``{(z, y) | a.z + b y >= 0, y >= 0}``."""
    rows = [r + (0,) for r in _homogenized_rows(h)]
    return HPoly(h.dim + 1, _canon(h.dim + 1, rows))


def includes_hp(p1: HPoly, p2: HPoly) -> bool:
    """Decide ``p1 <= p2`` by checking the generators of the homogenized
    ``p1`` against the homogenized ``p2``."""
    if p1.dim != p2.dim:
        raise DimensionError(f"comparing polyhedra of dims {p1.dim} and {p2.dim}")
    if p1.is_syntactically_empty():
        return True
    rays, lines = cone_generators(p1.dim + 1, _homogenized_rows(p1))
    if not any(r[p1.dim] > 0 for r in rays):
        return True
    if not is_feasible(p2):
        return False
    target = homogenize_hpoly(p2)
    for r in rays:
        if not contains_point(target, r):
            return False
    for l in lines:
        if not contains_point(target, l) or not contains_point(target, [-x for x in l]):
            return False
    return True


def equal_hp(p1: HPoly, p2: HPoly) -> bool:
    return includes_hp(p1, p2) and includes_hp(p2, p1)


INF = float("inf")


def interval_of_1d(h: HPoly):
    """Tightest ``(lower, upper, empty)`` for a 1-dimensional polyhedron;
    unbounded ends are ``-inf`` / ``inf``."""
    if h.dim != 1:
        raise DimensionError(f"interval_of_1d needs dim 1, got {h.dim}")
    lo, hi = -INF, INF
    for a, b in h.rows:
        if a > 0:
            lo = max(lo, Fraction(-b, a))
        elif a < 0:
            hi = min(hi, Fraction(b, -a))
        elif b < 0:
            return lo, hi, True
    return lo, hi, lo > hi
