"""Acceptance suite: one PASS/FAIL line per criterion (run with ``pytest -v -s`` to see them)."""

import random
import time
from itertools import product
from math import gcd
from pathlib import Path

import pytest

from ddb.abelian import InvariantFactors, h1_invariants, surjects_onto_z2
from ddb.catalog import (
    SpaceFormDescriptor,
    binary_polyhedral_presentation,
    enumerate_descriptors,
    prism_presentation,
    quaternion_generators,
)
from ddb.cosets import group_order
from ddb.gluing import (
    BALL,
    KLEIN_SIDE,
    SOLID_TORUS,
    SUBLATTICES,
    TORUS_SIDE,
    TWISTED_RP2,
    classify_sphere_leaf,
    gluing_matrices,
    presentation_report,
    recognize_prism,
    torus_gluing_pi1,
)
from ddb.parser import format_presentation, parse_presentation
from ddb.perm import alternating_group, is_perfect, symmetric_group
from ddb.quaternion import quaternion_closure
from ddb.verdicts import RULE_DOUBLE_COVER, Answer, check_structural_rules, decide_flat, decide_spaceform
from ddb.words import Presentation, Word

CORPUS = Path(__file__).parent / "data" / "corpus.txt"


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


def test_criterion_01_binary_polyhedral_orders(report):
    t0 = time.perf_counter()
    got = {}
    for fam, k in (("BinT", 3), ("BinO", 4), ("BinI", 5)):
        enum = group_order(binary_polyhedral_presentation(k))
        quat = len(quaternion_closure(quaternion_generators(SpaceFormDescriptor(fam))))
        got[fam] = (enum, quat)
    elapsed = time.perf_counter() - t0
    ok = got == {"BinT": (24, 24), "BinO": (48, 48), "BinI": (120, 120)} and elapsed < 5.0
    report(1, ok, f"(enumeration, quaternion closure) = {got}, {elapsed:.2f}s (< 5 s)")


def test_criterion_02_klein_sweep(report):
    t0 = time.perf_counter()
    checked, failures = 0, []
    for m in gluing_matrices(3):
        if m.alpha * m.beta == 0:
            continue
        r = torus_gluing_pi1(m, KLEIN_SIDE)
        rec = recognize_prism(r.presentation, m)
        checked += 1
        good = (
            rec is not None
            and rec.valid
            and len(rec.certificate) == 4
            and r.classification.kind == "PrismGroup"
            and r.order == 4 * abs(m.alpha * m.beta)
            and r.invariants.order == 4 * abs(m.beta)
        )
        if not good:
            failures.append(str(m))
    elapsed = time.perf_counter() - t0
    ok = checked > 0 and not failures and elapsed < 60.0
    report(2, ok, f"{checked} matrices, {len(failures)} failures {failures[:5]}, {elapsed:.1f}s (< 60 s)")


def test_criterion_03_abelian_branch(report):
    failures, lens, finite = [], 0, 0
    sides = [(SOLID_TORUS, "first")] + [(TORUS_SIDE, s) for s in sorted(SUBLATTICES)]
    for side, sub in sides:
        for m in gluing_matrices(3):
            r = torus_gluing_pi1(m, side, sub)
            bad = r.classification.kind == "PrismGroup" or r.abelian is not True
            if r.invariants.is_finite:
                finite += 1
                bad |= r.order != r.invariants.order
            if side is SOLID_TORUS and m.beta != 0:
                lens += 1
                bad |= r.order != abs(m.beta)
            if bad:
                failures.append((side.base.value, sub, str(m)))
    ok = not failures
    report(3, ok, f"{lens} lens gluings, {finite} finite groups cross-checked, {len(failures)} failures")


def test_criterion_04_sphere_leaf(report):
    got = {
        (a.base.value, b.base.value): classify_sphere_leaf(a, b).value
        for a, b in [(BALL, BALL), (BALL, TWISTED_RP2), (TWISTED_RP2, TWISTED_RP2)]
    }
    expected = {("pt", "pt"): "S3", ("pt", "RP2"): "RP3", ("RP2", "RP2"): "RP3#RP3"}
    report(4, got == expected, f"{got}")


def test_criterion_05_verdict_table(report):
    descs = enumerate_descriptors(240)
    verdicts = [(d, decide_spaceform(d, verify=False)) for d in descs]
    not_ddb = [d.label for d, v in verdicts if v.answer is Answer.NOT_DDB]
    homogeneous = {d.label for d, v in verdicts if v.answer is Answer.NOT_DDB and v.homogeneous}
    bin_i = h1_invariants(binary_polyhedral_presentation(5))
    parts = {
        "NotDDB count >= 10": len(not_ddb) >= 10,
        "homogeneous set": homogeneous == {"BinT", "BinO", "BinI"},
        "BinI perfect": bin_i.factors == (),
    }
    detail = (
        f"{len(descs)} descriptors, NotDDB = {not_ddb} ({len(not_ddb)}), "
        f"homogeneous = {sorted(homogeneous)}, H1(BinI) = {bin_i}; "
        + ", ".join(f"{k}: {'ok' if v else 'no'}" for k, v in parts.items())
    )
    report(5, all(parts.values()), detail)


def test_criterion_06_flat_obstruction(report):
    answers = {f: decide_flat(InvariantFactors(f)).answer for f in [(), (3,), (2, 0)]}
    expected = {(): Answer.NOT_DDB, (3,): Answer.NOT_DDB, (2, 0): Answer.INCONCLUSIVE}
    golden = presentation_report(parse_presentation("< a | a^3 >"))
    rules = {o.rule: o.status for o in check_structural_rules(golden, aspherical=True)}
    ok = answers == expected and rules[RULE_DOUBLE_COVER] == "violated"
    shown = {str(list(k)): v.value for k, v in answers.items()}
    report(6, ok, f"decide_flat {shown}; aspherical + H1 = Z/3: double-cover rule {rules[RULE_DOUBLE_COVER]}")


def test_criterion_07_perfectness(report):
    results = {}
    for name, g, want in [("A5", alternating_group(5), True), ("S5", symmetric_group(5), False),
                          ("A4", alternating_group(4), False)]:
        t0 = time.perf_counter()
        got = is_perfect(g)
        results[name] = (got, want, time.perf_counter() - t0)
    ok = all(got == want and dt < 1.0 for got, want, dt in results.values())
    report(7, ok, ", ".join(f"{n}: {g} ({dt * 1000:.0f} ms)" for n, (g, _, dt) in results.items()))


def _random_presentation(rng):
    n = rng.randint(1, 3)
    rels = []
    for _ in range(rng.randint(0, 3)):
        syl = [(rng.randrange(n), rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(rng.randint(1, 5))]
        rels.append(Word.of(*syl))
    return Presentation(tuple("abc"[:n]), tuple(rels))


def _parity_surjection_exists(p):
    # a map onto Z/2 is a nonzero vector in (Z/2)^n killing every relator mod 2
    for v in product((0, 1), repeat=p.ngens):
        if any(v) and all(sum(v[g] * e for g, e in r.syllables) % 2 == 0 for r in p.relators):
            return True
    return False


def test_criterion_08_z2_surjection(report):
    rng = random.Random(20240501)
    samples = [_random_presentation(rng) for _ in range(50)]
    disagree = [p.format() for p in samples if surjects_onto_z2(h1_invariants(p)) != _parity_surjection_exists(p)]
    yes = sum(_parity_surjection_exists(p) for p in samples)
    report(8, not disagree, f"50 presentations ({yes} surject), {len(disagree)} disagreements {disagree[:3]}")


def test_criterion_09_prism_double_cover(report):
    checked, exceptions = 0, []
    for beta in range(1, 21):
        for alpha in range(-20, 21):
            if gcd(alpha, beta) != 1:
                continue
            checked += 1
            if not surjects_onto_z2(h1_invariants(prism_presentation(alpha, beta))):
                exceptions.append((alpha, beta))
    report(9, not exceptions, f"{checked} coprime pairs, {len(exceptions)} exceptions")


def test_criterion_10_round_trip(report):
    lines = CORPUS.read_text(encoding="utf-8").splitlines()
    mismatched = [l for l in lines if format_presentation(parse_presentation(l)) != l]
    ok = len(lines) == 30 and not mismatched
    report(10, ok, f"{len(lines)} presentations, {len(mismatched)} mismatches {mismatched[:3]}")
