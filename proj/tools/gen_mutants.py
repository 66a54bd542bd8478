"""Writes one broken mode theory per axiom class to tests/data/mutants/.

Each mutant is a bundled (or test) theory with a single well-typed edit;
the file name is the axiom the validator must report.
"""
import copy
import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
THEORIES = ROOT / "bundled" / "theories"
OUT = ROOT / "tests" / "data" / "mutants"


def load(path):
    return json.loads(Path(path).read_text())


def replace_row(rows, key, new):
    for i, row in enumerate(rows):
        if row[: len(key)] == key:
            rows[i] = new
            return
    raise KeyError(key)


def mutants():
    trivial = load(THEORIES / "trivial.mt")
    single = load(THEORIES / "single_arrow.mt")
    two = load(THEORIES / "2ltt.mt")
    refl = load(THEORIES / "reflective.mt")
    cells = load(ROOT / "tests" / "data" / "cells.mt")
    monoid = load(ROOT / "tests" / "data" / "monoid.mt")

    t = copy.deepcopy(trivial)
    t["classes"]["sharp"].remove("id:p")
    yield "identity-sharp", t

    t = copy.deepcopy(trivial)
    t["classes"]["transparent"].remove("id:p")
    yield "identity-transparent", t

    t = copy.deepcopy(single)
    t["classes"]["tangible"].remove("mu")
    yield "sharp-transparent-tangible", t

    t = copy.deepcopy(refl)
    t["compose"] = [r for r in t["compose"] if r[:2] != ["nu", "mu"]]
    yield "table-totality", t

    t = copy.deepcopy(monoid)
    replace_row(t["compose"], ["m", "k"], ["m", "k", "id:p"])
    yield "compose-associativity", t

    t = copy.deepcopy(monoid)
    t["compose"].append(["m", "id:p", "k"])
    yield "compose-unit", t

    t = copy.deepcopy(cells)
    replace_row(t["vcompose"], ["a", "b"], ["a", "b", "id:m"])
    yield "vcompose-associativity", t

    t = copy.deepcopy(cells)
    t["vcompose"].append(["a", "id:m", "b"])
    yield "vcompose-unit", t

    t = copy.deepcopy(cells)
    replace_row(t["whisker_left"], ["m", "a"], ["m", "a", "b"])
    replace_row(t["whisker_left"], ["m", "b"], ["m", "b", "a"])
    yield "whisker-left-vcompose", t

    t = copy.deepcopy(cells)
    replace_row(t["whisker_right"], ["a", "m"], ["a", "m", "b"])
    replace_row(t["whisker_right"], ["b", "m"], ["b", "m", "a"])
    yield "whisker-right-vcompose", t

    t = copy.deepcopy(two)
    t["adjoints"][0]["dagger"] = "iota"
    yield "adjoint-typing", t

    t = copy.deepcopy(refl)
    t["cells"].append({"name": "theta", "src": "mu", "dst": "mu"})
    t["vcompose"] += [["theta", "theta", "theta"]]
    t["whisker_left"] += [["nu", "theta", "id:nu_mu"]]
    t["whisker_right"] += [["theta", "nu", "id:id:q"], ["theta", "nu_mu", "theta"]]
    replace_row(t["whisker_left"], ["mu", "eta"], ["mu", "eta", "theta"])
    yield "triangle-left", t


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for axiom, doc in mutants():
        (OUT / f"{axiom}.mt").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
