"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

The lines are printed as they are decided (visible with ``-s``) and repeated
in the terminal summary section "acceptance criteria".
"""

import os
import time

import pytest

from conftest import ACCEPTANCE_LINES
from meshddbs.cli import main
from meshddbs.constructions import Family, build
from meshddbs.lattice_ball import (
    BallSpec,
    ConstraintSpec,
    Parity,
    ball_size_closed,
    ball_size_recurrence,
    enumerate_ball,
)
from meshddbs.search import SearchBudget, exact_search, heuristic_search
from meshddbs.verifier import check_sandwich, verify

from oracles import EVEN_TABLE, K2_DELTA3_LITERATURE, ODD_TABLE

EMITTED = []  # (label, graph, constraint) for the sandwich gate


def record(number: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def cli_stdout(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, out


def test_criterion_01_table_reproduction(capsys):
    start = time.monotonic()
    cells = 0
    ok = True
    for parity, expected in (("even", EVEN_TABLE), ("odd", ODD_TABLE)):
        code, out = cli_stdout(capsys, "table", "--parity", parity)
        rows = [list(map(int, line.split(",")[1:])) for line in out.strip().splitlines()[1:]]
        ok &= code == 0 and rows == expected
        cells += sum(len(r) for r in rows)
    elapsed = time.monotonic() - start
    ok &= cells == 90 and elapsed < 1.0
    record("1", ok, f"even and odd tables, {cells} cells exact, {elapsed:.3f}s (< 1s)")
    assert ok


def test_criterion_02_three_way_counting_oracle():
    start = time.monotonic()
    mismatches = []
    for parity in (Parity.EVEN, Parity.ODD):
        for k in range(5):
            for p in range(7):
                spec = BallSpec(k, p, parity)
                enumerated = 1 if k == 0 else enumerate_ball(spec).order
                values = (ball_size_closed(spec), ball_size_recurrence(spec), enumerated)
                if len(set(values)) != 1:
                    mismatches.append((k, p, parity.value, values))
    elapsed = time.monotonic() - start
    ok = not mismatches and elapsed < 30
    record("2", ok, f"closed = recurrence = enumeration on 70 cells, {len(mismatches)} mismatches, {elapsed:.2f}s (< 30s)")
    assert ok, mismatches


def test_criterion_03_delannoy_symmetry_and_identity():
    bad = []
    for k in range(11):
        for p in range(11):
            if ball_size_closed(BallSpec(k, p)) != ball_size_closed(BallSpec(p, k)):
                bad.append(("symmetry", k, p))
            if k and p:
                for parity in (Parity.EVEN, Parity.ODD):
                    f = lambda a, b: ball_size_closed(BallSpec(a, b, parity))  # noqa: E731
                    if f(k, p) != f(k, p - 1) + f(k - 1, p) + f(k - 1, p - 1):
                        bad.append(("identity", k, p, parity.value))
    record("3", not bad, f"symmetry and neighbour identity on k, p <= 10, {len(bad)} failures")
    assert not bad


def test_criterion_04_construction_certificates():
    start = time.monotonic()
    failures = []
    count = 0
    for family in Family:
        for p in range(family.min_p, 13):
            g, pred = build(family, p)
            c = ConstraintSpec(family.max_degree, pred.diameter)
            r = verify(g, c)
            exact = r.order == pred.order and r.diameter_observed == family.diameter(p)
            if not (r.satisfies and r.connected and r.mesh_valid and exact):
                failures.append((family.value, p, r.order, r.diameter_observed))
            EMITTED.append((f"{family.value}({p})", g, c))
            count += 1
    elapsed = time.monotonic() - start
    ok = not failures and elapsed < 120
    record("4", ok, f"{count} constructions certified with exact order and diameter, "
                    f"{len(failures)} failures, {elapsed:.1f}s (< 120s)")
    assert ok, failures


def test_criterion_05a_average_degree_delta3():
    details = []
    ok = True
    for family in (Family.DELTA3_EVEN, Family.DELTA3_ODD):
        g, pred = build(family, 20)
        avg = g.average_degree()
        ok &= 2.8 <= avg <= 3.0 and verify(g, ConstraintSpec(3, pred.diameter)).satisfies
        details.append(f"{family.value}(20) {avg:.3f}")
        EMITTED.append((f"{family.value}(20)", g, ConstraintSpec(3, pred.diameter)))
    record("5a", ok, "average degree in [2.8, 3.0]: " + ", ".join(details))
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="average degree of the degree-4 families at p = 20 is about 3.72; "
           "the advisory edge polynomials themselves give 3.733, below 3.8",
)
def test_criterion_05b_average_degree_h3_q3():
    details = []
    ok = True
    for family in (Family.H3, Family.Q3):
        g, pred = build(family, 20)
        avg = g.average_degree()
        ok &= 3.8 <= avg <= 4.0
        details.append(f"{family.value}(20) {avg:.3f}")
        EMITTED.append((f"{family.value}(20)", g, ConstraintSpec(4, pred.diameter)))
    record("5b", ok, "average degree in [3.8, 4.0]: " + ", ".join(details))
    assert ok


def test_criterion_06_exact_table_optima():
    details = []
    ok = True
    for D in (2, 3, 4):
        c = ConstraintSpec(3, D)
        start = time.monotonic()
        r = exact_search(2, c)
        elapsed = time.monotonic() - start
        ok &= r.exact and r.best_order == K2_DELTA3_LITERATURE[D][0] and elapsed < 300
        ok &= verify(r.witness, c).satisfies
        details.append(f"D={D}: {r.best_order} {'exact' if r.exact else 'inexact'} {elapsed:.2f}s")
        EMITTED.append((f"exact k=2 delta=3 D={D}", r.witness, c))
    record("6", ok, "; ".join(details))
    assert ok


def test_criterion_07_stretch_optima():
    details = []
    ok = True
    for D in (5, 6):
        c = ConstraintSpec(3, D)
        target = K2_DELTA3_LITERATURE[D][0]
        start = time.monotonic()
        r = exact_search(2, c, SearchBudget(time_limit=600))
        how = "exact" if r.exact else "exact search unfinished"
        if not (r.exact and r.best_order >= target):
            r = heuristic_search(2, c, seed=1, budget=SearchBudget(time_limit=600))
            how = "heuristic seed 1"
        elapsed = time.monotonic() - start
        ok &= r.best_order >= target and verify(r.witness, c).satisfies and elapsed < 600
        details.append(f"D={D}: {r.best_order} >= {target} ({how}, {elapsed:.2f}s)")
        EMITTED.append((f"k=2 delta=3 D={D}", r.witness, c))
    record("7", ok, "; ".join(details))
    assert ok


def test_criterion_09_unconstrained_degree_oracle():
    start = time.monotonic()
    got = []
    for D in (2, 3, 4):
        c = ConstraintSpec(4, D)
        r = exact_search(2, c)
        got.append(r.best_order if r.exact else None)
        EMITTED.append((f"exact k=2 delta=4 D={D}", r.witness, c))
    elapsed = time.monotonic() - start
    ok = got == [5, 8, 13] and elapsed < 300
    record("9", ok, f"exact orders {got} == [5, 8, 13], {elapsed:.2f}s")
    assert ok


def test_criterion_08_sandwich_gate():
    # runs after the tests above in file order, so it sees everything they emitted
    for D in range(2, 9):
        c = ConstraintSpec(3, D)
        EMITTED.append((f"heuristic D={D}", heuristic_search(2, c, seed=0, budget=SearchBudget(max_nodes=10**6)).witness, c))
    for k, p in ((1, 4), (2, 3), (3, 2)):
        for parity in (Parity.EVEN, Parity.ODD):
            spec = BallSpec(k, p, parity)
            EMITTED.append((f"ball {k} {p} {parity.value}", enumerate_ball(spec), ConstraintSpec(2 * k, spec.diameter())))
    failed = [label for label, g, c in EMITTED if not check_sandwich(g, c)]
    ok = len(EMITTED) > 60 and not failed
    record("8", ok, f"{len(EMITTED)} emitted graphs within min(Moore, ball), {len(failed)} failures")
    assert ok, failed


def test_criterion_10_determinism(capsys):
    commands = [
        ("table", "--parity", "even"),
        ("table", "--parity", "odd", "--format", "markdown"),
        ("ball", "--dim", "4", "--radius", "6", "--method", "enumerate"),
        ("construct", "--family", "h3", "--p", "4"),
        ("construct", "--family", "q3", "--p", "4"),
        ("construct", "--family", "delta3-even", "--p", "7"),
        ("construct", "--family", "delta3-odd", "--p", "7"),
        ("search", "--dim", "2", "--max-degree", "3", "--diameter", "5"),
        ("search", "--dim", "2", "--max-degree", "3", "--diameter", "6", "--mode", "heuristic", "--seed", "1"),
        ("bounds", "--dim", "2", "--max-degree", "3", "--diameter", "9"),
    ]
    unstable = [cmd for cmd in commands if cli_stdout(capsys, *cmd) != cli_stdout(capsys, *cmd)]
    optima = {}
    for threads in (1, 2, os.cpu_count() or 1):
        for D in (2, 3, 4, 5, 6):
            r = exact_search(2, ConstraintSpec(3, D), SearchBudget(threads=threads))
            optima.setdefault(D, set()).add((r.best_order, r.exact))
    thread_ok = all(len(v) == 1 for v in optima.values())
    ok = not unstable and thread_ok
    record("10", ok, f"{len(commands)} commands byte-identical on rerun ({len(unstable)} differ); "
                     f"exact optima identical for threads 1, 2, {os.cpu_count() or 1}: {thread_ok}")
    assert ok, unstable
