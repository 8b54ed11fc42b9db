"""Acceptance criteria 1-11.

Each test prints one ``PASS``/``FAIL`` line with its measurements; run with
``pytest tests/test_acceptance.py -v`` (lines are printed even when output
capture is on).
"""
import random
import time
from fractions import Fraction

import pytest

from polyrel import diagram as dg
from polyrel.apps import (PetriNet, max_flow, parallel_law, petri_can_step, petri_fire,
                          petri_step_via_process, series_law)
from polyrel.diagram import Fragment, Id, parse_dsl
from polyrel.polyhedra import (HPoly, contains_point, h_to_v, includes_hp,
                               is_feasible, project, v_to_h)
from polyrel.semantics import (PROBE_SCALARS, axiom_suite, equiv, fg_nf, includes, is_empty,
                               poly_nf)
from polyrel.stateful import Transition, st_eval, st_transition
from oracles import edmonds_karp, naive_fm_feasible
import randgen


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
    return emit


def same(p, q):
    return includes_hp(p, q) and includes_hp(q, p)


def test_01_axiom_soundness(report):
    start = time.time()
    verdicts = axiom_suite()
    elapsed = time.time() - start
    failed = [f"{v.entry.name}[{v.entry.instance}]" for v in verdicts if not v.passed]
    groups = {v.entry.group for v in verdicts}
    ok = not failed and elapsed < 10 and groups == {"linear", "order", "affine"} and len(PROBE_SCALARS) == 7
    report(1, ok, f"{len(verdicts) - len(failed)}/{len(verdicts)} axiom instances sound, "
                  f"{elapsed:.2f}s (< 10s); failures: {failed or 'none'}")
    assert ok


def test_02_derived_laws(report):
    start = time.time()
    rng = random.Random(2)
    checks = {
        "transitivity": equiv(parse_dsl("geq ; geq"), dg.geq),
        "reflexivity": includes(Id(1), dg.geq),
        "antisymmetry": includes(parse_dsl("copy ; (geq * leq) ; cocopy"), Id(1)),
    }
    parallel_ok = series_ok = 0
    for _ in range(20):
        k, q = Fraction(rng.randint(0, 12), 2), Fraction(rng.randint(0, 12), 2)
        # half of the triples satisfy k + q <= l, half violate it
        l = k + q + Fraction(rng.randint(0, 6), 2) if rng.random() < 0.5 \
            else max(Fraction(0), k + q - Fraction(rng.randint(1, 6), 2))
        parallel_ok += equiv(*parallel_law(k, q))
        lhs, rhs = series_law(k, q, l)
        series_ok += equiv(lhs, rhs) == (k + q <= l)
    elapsed = time.time() - start
    ok = all(checks.values()) and parallel_ok == 20 and series_ok == 20 and elapsed < 5
    report(2, ok, f"{checks}, parallel-edge law {parallel_ok}/20, series law with side condition "
                  f"{series_ok}/20, {elapsed:.2f}s (< 5s)")
    assert ok


def test_03_fourier_motzkin_oracle(report):
    start = time.time()
    rng = random.Random(3)
    mismatches = members = 0
    for _ in range(200):
        dim = rng.randint(1, 4)
        h = randgen.hpoly(rng, dim)
        keep = sorted(rng.sample(range(dim), rng.randint(1, dim)))
        p = project(h, keep)
        for _ in range(50):
            z = [Fraction(rng.randint(-10, 10), 2) for _ in keep]
            inside = contains_point(p, z)
            pinned = h.substitute(dict(zip(keep, z)))
            oracle = naive_fm_feasible([list(r) for r in pinned.rows]) if pinned.rows else True
            members += inside
            if inside != is_feasible(pinned) or inside != oracle:
                mismatches += 1
    elapsed = time.time() - start
    ok = mismatches == 0 and elapsed < 30
    report(3, ok, f"200 systems x 50 points, {mismatches} mismatches "
                  f"({members} points inside), {elapsed:.2f}s (< 30s)")
    assert ok


def test_04_weyl_minkowski(report):
    start = time.time()
    rng = random.Random(4)
    failures = 0
    for _ in range(200):
        c = randgen.hpoly(rng, rng.randint(1, 4), cone=True)
        v = h_to_v(c)
        good = same(v_to_h(v), c)
        for r in v.rays:
            good &= contains_point(c, r)
        for l in v.lines:
            good &= contains_point(c, l) and contains_point(c, [-x for x in l])
        failures += not good
    elapsed = time.time() - start
    ok = failures == 0 and elapsed < 60
    report(4, ok, f"200 cones, {failures} round-trip/generator failures, {elapsed:.2f}s (< 60s)")
    assert ok


def test_05_polar_properties(report):
    rng = random.Random(5)
    involution = anti = swap = 0
    for _ in range(100):
        c = randgen.diagram(rng, rng.randint(0, 3), 5)
        involution += equiv(dg.polar_syntactic(dg.polar_syntactic(c)), c)
    for _ in range(100):
        n, m = rng.randint(0, 2), rng.randint(0, 2)
        c, d = randgen.typed_diagram(rng, n, m), randgen.typed_diagram(rng, n, m)
        lo = randgen.meet(c, d)
        assert includes(lo, d)
        anti += includes(dg.polar_syntactic(d), dg.polar_syntactic(lo))
    for _ in range(100):
        # tensoring with copy guarantees at least one generator
        c = dg.Tensor(randgen.diagram(rng, rng.randint(0, 3), 5, right_only=True), dg.copy)
        swap += (dg.validate(c)[2] == Fragment.CircRight and
                 dg.validate(dg.polar_syntactic(c))[2] == Fragment.CircLeft)
    ok = involution == anti == swap == 100
    report(5, ok, f"involution {involution}/100, antitonicity {anti}/100, "
                  f"CircRight -> CircLeft {swap}/100")
    assert ok


def test_06_normal_forms(report):
    rng = random.Random(6)
    pnf = fgnf = 0
    for _ in range(100):
        c = randgen.diagram(rng, rng.randint(0, 3), 5, affine=True)
        pnf += equiv(c, poly_nf(c))
    for _ in range(100):
        c = randgen.diagram(rng, rng.randint(0, 3), 5)
        fgnf += equiv(c, fg_nf(c))
    ok = pnf == fgnf == 100
    report(6, ok, f"polyhedral NF {pnf}/100, finitely generated NF {fgnf}/100")
    assert ok


def _certificate_includes(p1, p2) -> bool:
    """Direct generator check of p1 <= p2 (both nonempty)."""
    v = h_to_v(p1)
    recession = HPoly(p2.dim, tuple(r[:p2.dim] + (0,) for r in p2.rows))
    return (all(contains_point(p2, x) for x in v.vertices)
            and all(contains_point(recession, r) for r in v.rays)
            and all(contains_point(recession, l) and contains_point(recession, [-x for x in l])
                    for l in v.lines))


def test_07_homogenization(report):
    rng = random.Random(7)
    agree = trues = 0
    pairs = 0
    while pairs < 200:
        dim = rng.randint(1, 3)
        p1 = randgen.hpoly(rng, dim, max_rows=4)
        if rng.random() < 0.5:
            # a relaxation of p1, so inclusion holds often
            rows = [r[:dim] + (r[dim] + rng.randint(0, 2),) for r in p1.rows if rng.random() < 0.8]
            p2 = HPoly.make(dim, rows)
        else:
            p2 = randgen.hpoly(rng, dim, max_rows=4)
        if not (is_feasible(p1) and is_feasible(p2)):
            continue
        pairs += 1
        got = includes_hp(p1, p2)
        trues += got
        agree += got == _certificate_includes(p1, p2)
    empty = HPoly.make(2, [(1, 0, -1), (-1, 0, 0)])
    some = HPoly.make(2, [(1, 1, -3)])
    specials = includes_hp(empty, some) and includes_hp(empty, empty) and not includes_hp(some, empty)
    ok = agree == 200 and specials
    report(7, ok, f"{agree}/200 agree with the certificate check ({trues} included), "
                  f"empty-set cases {'ok' if specials else 'wrong'}")
    assert ok


def test_08_emptiness(report):
    rng = random.Random(8)
    false_gadget = parse_dsl("one ; cozero")
    base = is_empty(false_gadget)
    tensored = 0
    for _ in range(10):
        c = randgen.diagram(rng, rng.randint(0, 3), 4, affine=True)
        d = dg.Tensor(false_gadget, c) if rng.random() < 0.5 else dg.Tensor(c, false_gadget)
        tensored += is_empty(d)
    ok = base and tensored == 10
    report(8, ok, f"one;cozero empty: {base}; tensored with random diagrams empty {tensored}/10")
    assert ok


def test_09_max_flow(report):
    start = time.time()
    rng = random.Random(9)
    agree = 0
    for _ in range(100):
        net = randgen.flow_network(rng)
        agree += max_flow(net) == edmonds_karp(net.nodes, net.source, net.sink, net.edges)
    elapsed = time.time() - start
    ok = agree == 100
    report(9, ok, f"{agree}/100 networks match the augmenting-path oracle, {elapsed:.2f}s "
                  "(oracle agreement stands in for the unrecoverable example network)")
    assert ok


def test_10_petri_correspondence(report):
    start = time.time()
    rng = random.Random(10)
    mismatches = steps = 0
    for _ in range(40):
        net = randgen.petri_net(rng)
        for _ in range(5):
            y = randgen.marking(rng, net)
            z = None
            if rng.random() < 0.5:
                t = [Fraction(rng.randint(0, 4), 4) for _ in range(net.transitions)]
                z = petri_fire(net, y, t)
            if z is None:
                z = randgen.marking(rng, net)
            direct = petri_can_step(net, y, z)
            steps += direct
            mismatches += direct != petri_step_via_process(net, y, z)
    consumer = PetriNet.make([[1]], [[0]])
    half = (petri_can_step(consumer, [1], ["1/2"]) and petri_step_via_process(consumer, [1], ["1/2"])
            and petri_fire(consumer, [1], ["1/2"]) == (Fraction(1, 2),))
    bounded = PetriNet.make([[0]], [[1]], [1])
    rejects = not petri_can_step(bounded, [1], [2]) and not petri_step_via_process(bounded, [1], [2])
    bounded2 = PetriNet.make([[0]], [[1]], [2])
    rejects &= not petri_step_via_process(bounded2, [2], [3])
    elapsed = time.time() - start
    ok = mismatches == 0 and half and rejects
    report(10, ok, f"200 probes, {mismatches} mismatches ({steps} enabled steps); "
                   f"half firing (1)->(1/2) {half}; bounded rejection {rejects}; {elapsed:.2f}s")
    assert ok


def test_11_register_sos(report):
    rng = random.Random(11)
    reg = st_eval(dg.register)

    def q():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 6))

    accepted = rejected = 0
    for _ in range(100):
        k, l = q(), q()
        accepted += st_transition(reg, Transition.make([k], [l], [l], [k]))
    for _ in range(100):
        u, l, v, r = q(), q(), q(), q()
        while v == l and r == u:
            v = q()
        rejected += not st_transition(reg, Transition.make([u], [l], [v], [r]))
    ok = accepted == 100 and rejected == 100
    report(11, ok, f"accepted (k,l,l,k) {accepted}/100, rejected others {rejected}/100")
    assert ok
