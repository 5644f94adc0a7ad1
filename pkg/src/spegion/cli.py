"""``spegion`` command line: check, run, trace, soundness.

Exit codes: 0 accepted or ran to a value, 1 rejected / stuck / out of fuel,
2 unreadable input, parse error or internal error.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from .checker import Checker, TypeCheckError
from .evaluator import Done, OutOfFuel, Stuck, default_fuel, evaluate, trace
from .parser import ParseError, parse
from .printer import print_term, print_value

EXIT_OK, EXIT_REJECT, EXIT_ERROR = 0, 1, 2


def diagnostic(err) -> dict:
    """JSON form of any checker, evaluator or parser failure."""
    if isinstance(err, TypeCheckError):
        out = err.to_json()
        out["category"] = out["kind"]
        out["kind"] = err.detail_kind
        out["severity"] = "error"
        return out
    if isinstance(err, ParseError):
        return {"rule": "parse", "kind": "ParseError", "severity": "error", "message": err.message,
                "span": err.span.to_json() if err.span else None}
    if isinstance(err, Stuck):
        return {"rule": "eval", "kind": err.reason, "severity": "error", "message": err.message,
                "span": None, "term": print_term(err.term)}
    if isinstance(err, OutOfFuel):
        return {"rule": "eval", "kind": "OutOfFuel", "severity": "error",
                "message": f"no value after {err.steps} steps", "span": None}
    return {"rule": "internal", "kind": type(err).__name__, "severity": "error",
            "message": str(err), "span": None}


def exit_code(diagnostics: list) -> int:
    """Exit code as a function of the diagnostics alone."""
    if not diagnostics:
        return EXIT_OK
    if any(d["kind"] in ("ParseError", "InputError") or d["rule"] == "internal" for d in diagnostics):
        return EXIT_ERROR
    return EXIT_REJECT


def _emit(diags: list, as_json: bool, payload: dict = None) -> None:
    if as_json:
        body = dict(payload or {})
        body["diagnostics"] = diags
        click.echo(json.dumps(body, indent=2, sort_keys=True))
        return
    for d in diags:
        where = ""
        if d.get("span"):
            where = f"{d['span']['line']}:{d['span']['col']}: "
        click.echo(f"{where}error[{d['kind']}] ({d['rule']}): {d['message']}", err=True)
        if d.get("effect"):
            click.echo(f"  effect so far: {d['effect']}", err=True)


def _load(path: str):
    """Parsed term, or a diagnostic list on failure."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        return None, [{"rule": "input", "kind": "InputError", "severity": "error",
                       "message": str(err), "span": None}]
    try:
        return parse(text), []
    except ParseError as err:
        return None, [diagnostic(err)]


def _typecheck(term, strict_figures: bool):
    try:
        return Checker(strict_figures=strict_figures).check_program(term), []
    except TypeCheckError as err:
        return None, [diagnostic(err)]
    except RecursionError as err:
        return None, [diagnostic(err)]


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log to stderr.")
def main(verbose: bool) -> None:
    """Type-check and run programs of the sized-region calculus."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print the judgement as JSON.")
@click.option("--strict-figures", is_flag=True,
              help="Disable the use-after-free composition check.")
def check(path: str, as_json: bool, strict_figures: bool) -> None:
    """Parse, kind-check and type-check PATH."""
    term, diags = _load(path)
    judgement = None
    if term is not None:
        judgement, diags = _typecheck(term, strict_figures)
    payload = {"accepted": judgement is not None}
    if judgement is not None:
        payload["judgement"] = judgement.to_json()
    _emit(diags, as_json, payload)
    if judgement is not None and not as_json:
        j = judgement.to_json()
        click.echo(f"accepted: {j['type']}")
        click.echo(f"effect: {j['effect']}")
    sys.exit(exit_code(diags))


def _prepare(path: str, unsafe: bool, strict_figures: bool, as_json: bool):
    term, diags = _load(path)
    if term is not None and not unsafe:
        _, diags = _typecheck(term, strict_figures)
    if diags:
        _emit(diags, as_json)
        sys.exit(exit_code(diags))
    return term


def _store_summary(store) -> list:
    lines = []
    for name, region in store.to_json().items():
        lines.append(f"  {name}: {region['size']}/{region['max']} used, {len(region['cells'])} cells")
    return lines


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--fuel", type=click.IntRange(min=1), default=None,
              help="Step budget (default: SPEGION_FUEL or 100000).")
@click.option("--unsafe", is_flag=True, help="Run without type-checking first.")
@click.option("--strict-figures", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
def run(path: str, fuel, unsafe: bool, strict_figures: bool, as_json: bool) -> None:
    """Evaluate PATH and print the final value and store."""
    term = _prepare(path, unsafe, strict_figures, as_json)
    outcome = evaluate(term, fuel=fuel if fuel is not None else default_fuel())
    if isinstance(outcome, Done):
        value = print_value(outcome.store.lookup(outcome.loc))
        if as_json:
            click.echo(json.dumps({"value": value, "location": str(outcome.loc),
                                   "store": outcome.store.to_json(), "diagnostics": []},
                                  indent=2, sort_keys=True))
        else:
            click.echo(value)
            click.echo("store:")
            for line in _store_summary(outcome.store):
                click.echo(line)
        sys.exit(EXIT_OK)
    diags = [diagnostic(outcome)]
    _emit(diags, as_json, {"store": outcome.store.to_json()})
    sys.exit(exit_code(diags))


@main.command("trace")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--fuel", type=click.IntRange(min=1), default=None)
@click.option("--unsafe", is_flag=True, help="Run without type-checking first.")
@click.option("--strict-figures", is_flag=True)
def trace_cmd(path: str, fuel, unsafe: bool, strict_figures: bool) -> None:
    """Print one JSON line per reduction step, then the outcome."""
    term = _prepare(path, unsafe, strict_figures, True)
    snaps, outcome = trace(term, fuel=fuel if fuel is not None else default_fuel())
    for snap in snaps[1:]:
        click.echo(json.dumps(snap.to_json(), sort_keys=True))
    if isinstance(outcome, Done):
        click.echo(json.dumps({"outcome": "value", "location": str(outcome.loc),
                               "value": print_value(outcome.store.lookup(outcome.loc))},
                              sort_keys=True))
        sys.exit(EXIT_OK)
    d = diagnostic(outcome)
    click.echo(json.dumps({"outcome": d["kind"], "message": d["message"]}, sort_keys=True))
    sys.exit(EXIT_REJECT)


@main.command()
@click.option("--depth", type=click.IntRange(0, 4), default=3, show_default=True)
@click.option("--seeds", type=click.IntRange(min=0), default=500, show_default=True)
@click.option("--seed-base", type=int, default=0)
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False), default=None,
              help="Also check every .spg file in this directory.")
@click.option("--report", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report here.")
@click.option("--strict-figures", is_flag=True)
def soundness(depth: int, seeds: int, seed_base: int, corpus_dir, report, strict_figures: bool) -> None:
    """Test progress and preservation on enumerated and generated programs."""
    from .harness import run_soundness
    corpus = []
    if corpus_dir:
        for f in sorted(Path(corpus_dir).glob("*.spg")):
            try:
                corpus.append((f.name, parse(f.read_text(encoding="utf-8"))))
            except ParseError as err:
                click.echo(f"{f}: {err}", err=True)
                sys.exit(EXIT_ERROR)
    result = run_soundness(depth, seeds, corpus=corpus, strict_figures=strict_figures,
                           seed_base=seed_base)
    text = json.dumps(result, indent=2, sort_keys=True)
    if report:
        Path(report).write_text(text + "\n", encoding="utf-8")
    click.echo(f"checked {result['checked']}, passed {result['passed']}, "
               f"counterexamples {len(result['counterexamples'])} in {result['seconds']}s")
    for c in result["counterexamples"][:10]:
        click.echo(f"  [{c['phase']}] {c['term']}: {c['message']}")
    sys.exit(EXIT_OK if not result["counterexamples"] else EXIT_REJECT)


if __name__ == "__main__":
    main()
