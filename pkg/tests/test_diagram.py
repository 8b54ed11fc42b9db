import random

import pytest
from hypothesis import given, settings, strategies as st

from polyrel import diagram as dg
from polyrel.diagram import (ArityError, DSLSyntaxError, Fragment, Gen, Generator, Id, Seq, Sym,
                             Tensor, build_wiring, diagram_of_matrix, opposite, parse_dsl,
                             polar_syntactic, print_dsl, validate)
from polyrel.exactla import QMatrix
from polyrel.semantics import equiv, evaluate
from polyrel.polyhedra import contains_point
import randgen


def test_validate_examples():
    assert validate(dg.copy) == (1, 2, Fragment.CircRight)
    assert validate(Id(0)) == (0, 0, Fragment.CircRight)
    assert validate(Seq(dg.add, dg.copy)) == (2, 2, Fragment.CircRight)
    assert validate(dg.cozero)[2] == Fragment.CircLeft
    assert validate(Tensor(dg.copy, dg.cocopy))[2] == Fragment.Circ
    assert validate(dg.geq)[2] == Fragment.CircGeq
    assert validate(dg.one)[2] == Fragment.ACircGeq
    assert validate(dg.register)[2] == Fragment.SPP


def test_validate_reports_path():
    with pytest.raises(ArityError) as err:
        validate(Tensor(Id(1), Seq(dg.copy, dg.copy)))
    assert ".bottom" in str(err.value)


def test_wiring():
    assert validate(build_wiring("cup", 1))[:2] == (0, 2)
    assert validate(build_wiring("cap", 2))[:2] == (4, 0)
    assert build_wiring("id", 3) == Id(3)
    assert build_wiring("sym", 2, 1) == Sym(2, 1)
    body = evaluate(build_wiring("cup", 1)).body
    assert contains_point(body, (3, 3)) and not contains_point(body, (3, 2))
    body = evaluate(build_wiring("cap", 2)).body
    assert contains_point(body, (1, 2, 1, 2)) and not contains_point(body, (1, 2, 2, 1))


def test_opposite_examples():
    leq = opposite(dg.geq)
    assert validate(leq)[:2] == (1, 1)
    body = evaluate(leq).body
    assert contains_point(body, (1, 2)) and not contains_point(body, (2, 1))
    assert equiv(opposite(Id(2)), Id(2))
    body = evaluate(opposite(dg.copy)).body
    assert contains_point(body, (4, 4, 4)) and not contains_point(body, (4, 3, 4))
    with pytest.raises(ValueError):
        opposite(dg.register)


def test_polar_examples():
    assert polar_syntactic(dg.copy) == dg.coadd
    assert polar_syntactic(dg.scalar(5)) == dg.coscalar(5)
    assert equiv(polar_syntactic(polar_syntactic(dg.geq)), dg.geq)
    for bad in (dg.one, dg.register):
        with pytest.raises(ValueError):
            polar_syntactic(bad)


def test_matrix_examples():
    k1, k2 = 3, -2
    a = QMatrix.from_rows([[k1, 0, 0], [0, 1, 0], [0, 0, k2], [1, 0, 1]])
    d = diagram_of_matrix(a)
    assert validate(d) == (3, 4, Fragment.CircRight)
    body = evaluate(d).body
    assert contains_point(body, (1, 2, 3, 3, 2, -6, 4))
    assert not contains_point(body, (1, 2, 3, 3, 2, -6, 5))
    assert diagram_of_matrix(QMatrix.from_rows([], 3)) == dg.tensor(dg.delete, dg.delete, dg.delete)
    assert diagram_of_matrix(QMatrix.from_rows([[2]])) == dg.scalar(2)
    left = diagram_of_matrix(a, "Left")
    assert validate(left) == (4, 3, Fragment.CircLeft)
    assert contains_point(evaluate(left).body, (3, 2, -6, 4, 1, 2, 3))


def test_dsl_examples():
    with pytest.raises(DSLSyntaxError) as err:
        parse_dsl("copy ; (id(1) * add0)")
    assert "add0" in str(err.value) and err.value.column == 17
    assert parse_dsl("geq") == Gen(Generator("Geq"))
    assert parse_dsl("copy ; (scalar(1/2) * id(1))") == Seq(
        Gen(Generator("Copy")), Tensor(Gen(Generator("Scalar", "1/2")), Id(1)))
    assert parse_dsl("add * add ; copy") == Seq(Tensor(dg.add, dg.add), dg.copy)
    assert parse_dsl("copy;add") == Seq(dg.copy, dg.add)
    with pytest.raises(DSLSyntaxError) as err:
        parse_dsl("copy ;\n (add")
    assert err.value.line == 2
    assert equiv(parse_dsl("leq"), opposite(dg.geq))


def test_print_is_parenthesised():
    d = parse_dsl("copy ; (scalar(-1/2) * id(1)) ; add")
    assert print_dsl(d) == "((copy ; (scalar(-1/2) * id(1))) ; add)"


seeds = st.integers(0, 10 ** 9)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_transform_outputs_validate(seed):
    rng = random.Random(seed)
    c = randgen.diagram(rng, rng.randint(0, 3), 4)
    n, m, frag = validate(c)
    assert validate(opposite(c))[:2] == (m, n)
    assert validate(polar_syntactic(c))[:2] == (n, m)
    assert equiv(opposite(opposite(c)), c)
    back = parse_dsl(print_dsl(c))
    assert back == c
    assert equiv(back, c)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_polar_swaps_fragments(seed):
    rng = random.Random(seed)
    c = randgen.diagram(rng, rng.randint(0, 3), 4, right_only=True)
    assert validate(c)[2] == Fragment.CircRight
    assert validate(polar_syntactic(c))[2] in (Fragment.CircLeft, Fragment.CircRight)
    assert validate(polar_syntactic(dg.mirror(c)))[2] in (Fragment.CircRight, Fragment.CircLeft)
    if any(isinstance(x, Gen) for x in _gens(c)):
        assert validate(polar_syntactic(c))[2] == Fragment.CircLeft


def _gens(d):
    if isinstance(d, Gen):
        yield d
    elif isinstance(d, Seq):
        yield from _gens(d.left)
        yield from _gens(d.right)
    elif isinstance(d, Tensor):
        yield from _gens(d.top)
        yield from _gens(d.bottom)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=0, max_size=3))
def test_matrix_diagram_is_right(rows):
    a = QMatrix.from_rows(rows, 3)
    d = diagram_of_matrix(a)
    assert validate(d)[:2] == (3, a.rows)
    assert validate(d)[2] == Fragment.CircRight
    assert validate(diagram_of_matrix(a, "Left"))[2] in (Fragment.CircLeft, Fragment.CircRight)
