"""Acceptance criteria 1-9, each at its stated tolerance and time limit.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion at the end of the session.
"""

import json
import time
from pathlib import Path

import pytest

from netop import oracle
from netop.algebra import algebra_from_id
from netop.cli import main
from netop.mutants import BrokenOverlayModel, UnclampedBoundedAlgebra, compose_without_perm
from netop.netmodel import (GAMMA_BOOL_TO_SG, MGPLUS, SG, SG_TO_GAMMA_BOOL, model_from_id,
                            support_morphism)
from netop.networks import SimpleGraph, sg
from netop.algebra import two_range_bound
from netop.serialize import decode_element, dumps_element, loads
from netop.term import Config, eval_term, format_term, parse_term

GOLDEN = Path(__file__).parent / "golden"
SEED = 2024
RANDOM_MODELS = ["dg", "mg", "mgplus", "dmg", "hg", "part-join", "part-meet",
                 "gamma:bk:1", "gamma:bk:2", "gamma:bk:3", "sg*mg"]

_outcomes: dict[int, list[tuple[bool, str]]] = {}
_elapsed: dict[str, float] = {}


def record(criterion: int, ok: bool, note: str) -> None:
    _outcomes.setdefault(criterion, []).append((ok, note))


@pytest.fixture(scope="module", autouse=True)
def summary():
    yield
    print()
    for criterion in range(1, 10):
        results = _outcomes.get(criterion, [])
        ok = bool(results) and all(r for r, _ in results)
        failed = "; ".join(note for r, note in results if not r)
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}"
              + (f" ({failed})" if failed else "") + ("" if results else " (not run)"))


def failures(reports) -> list[str]:
    return [f"{r.subject}:{r.law}" for r in reports if not r.passed]


def verdict(criterion: int, reports, label: str, *, min_cases: int = 0) -> None:
    bad = failures(reports)
    thin = [f"{r.subject}:{r.law} ran {r.cases}" for r in reports if r.passed and r.cases < min_cases]
    record(criterion, not bad and not thin, f"{label}: {', '.join(bad + thin)}")
    assert not bad, f"laws failed: {bad}; first counterexample: " \
        f"{next(r.counterexample for r in reports if not r.passed)}"
    assert not thin, thin


# 1 -------------------------------------------------------------------------

def test_criterion_1_worked_composite():
    text = (GOLDEN / "composite.term").read_text(encoding="utf-8")
    start = time.perf_counter()
    result = eval_term(parse_term(text), Config("sg"))
    encoded = dumps_element(SG, result) + "\n"
    elapsed = time.perf_counter() - start
    expected = sg(9, [(1, 2), (2, 3), (3, 6), (4, 5), (5, 6), (6, 7), (8, 9)])
    golden = (GOLDEN / "composite.json").read_text(encoding="utf-8")
    ok = result == expected and encoded == golden and elapsed < 0.1
    record(1, ok, f"result {result!r}, {elapsed:.3f}s")
    assert result == expected
    assert encoded == golden
    assert elapsed < 0.1


# 2 -------------------------------------------------------------------------

def test_criterion_2_simple_graphs_exhaustive():
    start = time.perf_counter()
    reports = oracle.check_model(SG, max_n=3, mode="exhaustive", seed=SEED)
    _elapsed["sg"] = time.perf_counter() - start
    assert len(reports) == 12
    verdict(2, reports, "sg", min_cases=1)


@pytest.mark.parametrize("ident", RANDOM_MODELS)
def test_criterion_2_randomized(ident):
    start = time.perf_counter()
    reports = oracle.check_model(model_from_id(ident), max_n=6, mode="random", seed=SEED,
                                 samples=1000, cap=3)
    _elapsed[ident] = time.perf_counter() - start
    assert len(reports) == 12
    verdict(2, reports, ident, min_cases=1000)


def test_criterion_2_runtime():
    total = sum(_elapsed.values())
    record(2, total < 60, f"took {total:.1f}s")
    assert len(_elapsed) == 1 + len(RANDOM_MODELS)
    assert total < 60


# 3 -------------------------------------------------------------------------

def test_criterion_3_operad_suite():
    start = time.perf_counter()
    reports = []
    for ident in ("sg", "mgplus", "gamma:bk:2", "petri"):
        reports += oracle.check_operad(model_from_id(ident), max_n=7, seed=SEED, samples=1000)
    elapsed = time.perf_counter() - start
    record(3, elapsed < 60, f"took {elapsed:.1f}s")
    verdict(3, reports, "operad", min_cases=1000)
    assert elapsed < 60


# 4 -------------------------------------------------------------------------

def test_criterion_4_boolean_labelings_are_simple_graphs():
    reports = oracle.check_morphism(SG_TO_GAMMA_BOOL, max_n=4, mode="exhaustive", seed=SEED,
                                    pair_max_n=3, inverse=GAMMA_BOOL_TO_SG)
    reports += oracle.check_morphism(GAMMA_BOOL_TO_SG, max_n=4, mode="exhaustive", seed=SEED,
                                     pair_max_n=3, inverse=SG_TO_GAMMA_BOOL)
    by_law = {r.law: r.cases for r in reports[:6]}
    # 1 + 1 + 2 + 8 + 64 graphs for n <= 4; every pair of the same arity n <= 3
    assert by_law["inverse-left"] == 76
    assert by_law["overlay"] == 1 + 1 + 4 + 64
    verdict(4, reports, "gamma-bool", min_cases=1)


# 5 -------------------------------------------------------------------------

def _support(g) -> SimpleGraph:
    return SimpleGraph(g.n, frozenset(e for e, m in g.mult if m > 0))


def test_criterion_5_cutoff_at_one_is_the_support():
    phi = support_morphism()
    assert phi.source == MGPLUS and phi.target == SG
    reports = oracle.check_morphism(phi, max_n=5, mode="random", seed=SEED, samples=500,
                                    expected=_support)
    operad_laws = [r for r in reports if r.law.startswith("operad-")]
    assert {r.law for r in operad_laws} >= {"operad-composition", "operad-identity"}
    verdict(5, reports, "support", min_cases=500)


# 6 -------------------------------------------------------------------------

ALGEBRAS = [
    ("canonical", SG, {}),
    ("attributes", SG, {}),
    ("range", None, {"L": "3/2"}),
    ("two-range", None, {"L1": "5/2", "L2": "1"}),
    ("degree", None, {}),
]


@pytest.mark.parametrize("kind,model,params", ALGEBRAS, ids=[a[0] for a in ALGEBRAS])
def test_criterion_6_algebra_suites(kind, model, params):
    algebra = algebra_from_id(kind, model, params)
    reports = oracle.check_algebra(algebra, max_n=6, seed=SEED, samples=500)
    laws = {r.law for r in reports}
    assert {"unit", "composition"} <= laws
    if kind in ("range", "two-range", "degree"):
        assert "safety" in laws
    verdict(6, [r for r in reports if not r.law.startswith(("graphic", "disjoint"))],
            kind, min_cases=500)


# 7 -------------------------------------------------------------------------

def test_criterion_7_graphic_action():
    start = time.perf_counter()
    reports = oracle.check_graphic(max_n=4, max_len=4, max_port=2)
    elapsed = time.perf_counter() - start
    record(7, elapsed < 60, f"took {elapsed:.1f}s")
    verdict(7, reports, "graphic", min_cases=1)
    assert elapsed < 60


# 8 -------------------------------------------------------------------------

def _caught(reports) -> bool:
    return any(not r.passed and r.counterexample for r in reports)


def test_criterion_8_mutants_are_caught():
    overlay = oracle.check_model(BrokenOverlayModel(), max_n=3, mode="random", seed=SEED,
                                 samples=1000)
    perm = oracle.check_operad(SG, max_n=6, seed=SEED, samples=1000,
                               compose=compose_without_perm)
    bound = oracle.check_algebra(UnclampedBoundedAlgebra(two_range_bound("2", "1")),
                                 max_n=6, seed=SEED, samples=500)
    caught = {"broken-overlay": _caught(overlay), "drop-perm": _caught(perm),
              "unclamped-bound": _caught(bound)}
    missed = [k for k, v in caught.items() if not v]
    record(8, not missed, f"missed {missed}")
    assert not missed
    assert any(f.endswith(":overlay-assoc") for f in failures(overlay))


# 9 -------------------------------------------------------------------------

def _cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_criterion_9_cli(capsys, tmp_path):
    problems = []
    term_path = GOLDEN / "composite.term"
    term = parse_term(term_path.read_text(encoding="utf-8"))
    if parse_term(format_term(term)) != term:
        problems.append("print/parse round trip")

    code, out, _ = _cli(capsys, "eval", str(term_path))
    if code != 0 or out != (GOLDEN / "composite.json").read_text(encoding="utf-8"):
        problems.append("eval output")
    model, value = decode_element(loads(out))
    if dumps_element(model, value) + "\n" != out:
        problems.append("serialize round trip")

    bad = tmp_path / "bad.term"
    bad.write_text("(net sg 2 {1-3})")
    codes = {
        "pass": _cli(capsys, "check", "model", "--model", "sg", "--max-n", "2", "--exhaustive")[0],
        "counterexample": _cli(capsys, "check", "operad", "--model", "sg",
                               "--mutant", "drop-perm", "--samples", "100")[0],
        "unknown model": _cli(capsys, "check", "model", "--model", "nosuch")[0],
        "parse error": _cli(capsys, "eval", str(bad))[0],
    }
    if codes != {"pass": 0, "counterexample": 1, "unknown model": 2, "parse error": 2}:
        problems.append(f"exit codes {codes}")

    argv = ("check", "operad", "--model", "mgplus", "--samples", "200", "--seed", "7")
    first, second = _cli(capsys, *argv), _cli(capsys, *argv)
    if first != second or not first[1]:
        problems.append("seeded reports differ")
    if any(json.loads(line)["seed"] != 7 for line in first[1].splitlines()):
        problems.append("seed not reported")

    record(9, not problems, ", ".join(problems))
    assert not problems
