from pathlib import Path

import pytest

from spegion import parse
from spegion.checker import Checker
from spegion.effects import Composer, subsumes
from spegion.evaluator import InnerStore, Snapshot, initial_store, trace
from spegion.harness import (audit_store_invariant, check_preservation, check_program_soundness,
                             check_progress, enumerate_terms, generate, initial_state,
                             run_soundness, shrink)
from spegion.printer import print_term
from spegion.syntax import (BOT, GLOBAL, GLOBAL_UNIT, Free, Loc, NewRgn, UnitLit, Var, children,
                            term_depth, term_size)

PROGRAMS = Path(__file__).parent.parent / "examples" / "programs"


def test_generation_is_reproducible():
    for seed in range(50):
        a, b = generate(seed), generate(seed)
        assert print_term(a.term) == print_term(b.term)
        assert a.term == b.term and a.verdict == b.verdict


def test_generated_sizes_bounded():
    progs = [generate(seed) for seed in range(300)]
    assert all(p.size == term_size(p.term) <= 25 for p in progs)
    typed = sum(p.verdict == "typed" for p in progs)
    assert typed > len(progs) // 2


def test_generator_biased_to_regions():
    counts = {"region": 0, "other": 0}
    region_nodes = ("NewRgn", "Split", "FreeRgn")
    for seed in range(200):
        stack = [generate(seed).term]
        while stack:
            e = stack.pop()
            kind = "region" if type(e).__name__ in region_nodes else "other"
            counts[kind] += 1
            stack.extend(children(e))
    # region constructs are 3 of roughly 20 node kinds; weighting should lift them well above 1/7
    assert counts["region"] / (counts["region"] + counts["other"]) > 1 / 6


def test_enumeration_well_typed_and_bounded():
    seen = set()
    for e in enumerate_terms(2):
        assert term_depth(e) <= 2
        Checker().check_program(e)
        key = print_term(e)
        assert key not in seen
        seen.add(key)
    assert len(seen) > 10
    assert len(list(enumerate_terms(1))) < len(seen)
    with pytest.raises(ValueError):
        list(enumerate_terms(5))


def test_progress_on_values_and_steps():
    assert check_progress(Loc(GLOBAL_UNIT), initial_store()) is None
    assert check_progress(NewRgn(2), initial_store()) is None
    cex = check_progress(Var("x"), initial_store())
    assert cex.phase == "progress" and "FreeVariable" in cex.message


def test_preservation_after_newrgn():
    checker = Checker()
    state = initial_state(checker, NewRgn(4))
    nxt, cex = check_preservation(checker, state)
    assert cex is None and nxt.rule == "e-newrgn"
    assert nxt.judgement.effect == BOT
    assert subsumes(nxt.judgement.effect, state.judgement.effect)


def test_preservation_after_free():
    checker = Checker()
    state = initial_state(checker, parse("let r = newrgn [2] in freergn r"))
    rules = []
    while True:
        nxt, cex = check_preservation(checker, state)
        assert cex is None
        if nxt is None:
            break
        rules.append(nxt.rule)
        state = nxt
    assert rules == ["e-newrgn", "e-letL", "e-freergnL"]
    assert state.judgement.effect == BOT


def test_corpus_programs_sound():
    for path in sorted(PROGRAMS.glob("*.spg")):
        typed, cex = check_program_soundness(parse(path.read_text()))
        assert cex is None, (path.name, cex)


def test_store_audit_flags_overflow_and_split_loss():
    snaps, _ = trace(parse("let r = newrgn [6] in split [2] r"))
    assert audit_store_invariant(snaps) is None
    bad = initial_store()
    rho = bad.fresh_region()
    bad.regions[rho] = InnerStore(1)
    for _ in range(2):
        bad.regions[rho].cells[bad.fresh_loc(rho)] = UnitLit()
    cex = audit_store_invariant([Snapshot(0, Var("x"), bad, None)])
    assert cex.phase == "store-invariant"
    # a split that shrinks the parent by the wrong amount
    before = snaps[-2]
    after = snaps[-1]
    broken = after.store.copy()
    parent = next(r for r in before.store.regions if r != GLOBAL)
    broken.regions[parent] = InnerStore(1, dict(broken.regions[parent].cells))
    cex = audit_store_invariant([before, Snapshot(after.index, after.term, broken, "e-splitL")])
    assert cex.phase == "split-conservation"


def test_shrink_finds_smaller_failure():
    big = parse("let a = newrgn [3] in let b = 1 [1] at glob in x")
    fails = lambda e: "x" in print_term(e).split()
    small = shrink(big, fails)
    assert fails(small) and term_size(small) < term_size(big)


def test_small_run_is_clean():
    result = run_soundness(2, 100)
    assert result["counterexamples"] == []
    assert result["checked"] == result["passed"]
    assert result["stats"]["generated_typed"] == 100


# planted bugs: the harness must notice an unsound checker

def test_detects_missing_liveness_check(monkeypatch):
    monkeypatch.setattr(Checker, "_require_live", lambda *a, **k: None)
    result = run_soundness(0, 200, strict_figures=True)
    phases = {c["phase"] for c in result["counterexamples"]}
    assert "progress" in phases
    worst = min(result["counterexamples"], key=lambda c: len(c["term"]))
    assert "MissingRegion" in worst["message"]
    assert len(worst["term"]) < 60


def test_detects_missing_capacity_check(monkeypatch):
    monkeypatch.setattr(Composer, "_check_charge", lambda *a, **k: None)
    result = run_soundness(0, 200)
    phases = {c["phase"] for c in result["counterexamples"]}
    assert "preservation-store" in phases


def test_detects_missing_double_free_check(monkeypatch):
    original = Composer._check

    def lenient(self, atom):
        if not isinstance(atom, Free):
            original(self, atom)
    monkeypatch.setattr(Composer, "_check", lenient)
    monkeypatch.setattr(Checker, "_require_live", lambda *a, **k: None)
    typed, cex = check_program_soundness(parse("let r = newrgn [3] in freergn r; freergn r"),
                                         strict_figures=True)
    assert typed and cex.phase == "progress"
