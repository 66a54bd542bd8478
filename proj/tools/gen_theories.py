#!/usr/bin/env python3
"""Regenerates the saturated mode-theory tables under bundled/theories.

Every bundled theory is locally posetal: between two parallel morphisms there
is at most one 2-cell.  That makes vertical composition and whiskering
determined by the morphism composition table and the hom-preorders, so the
full tables can be computed instead of written by hand.

Usage: python3 tools/gen_theories.py [outdir]
"""

import itertools
import json
import sys
from pathlib import Path


def ident(mode):
    return "id:" + mode


def ident_cell(mor):
    return "id:" + mor


class Theory:
    def __init__(self, modes):
        self.modes = list(modes)
        self.mors = {}  # name -> (src, dst)
        self.comp = {}  # (g, f) -> gf, non-identity pairs only
        self.leq = set()  # (f, g): a cell f => g exists
        self.cell_names = {}  # (f, g) -> preferred name
        self.classes = {"tangible": [], "sharp": [], "transparent": [], "sinister": []}
        self.adjoints = []
        for m in self.modes:
            self.mors[ident(m)] = (m, m)

    def mor(self, name, src, dst):
        self.mors[name] = (src, dst)

    def compose(self, g, f, gf):
        self.comp[(g, f)] = gf

    def cell(self, name, src, dst):
        self.leq.add((src, dst))
        self.cell_names[(src, dst)] = name

    def c(self, g, f):
        sg, tg = self.mors[g]
        sf, tf = self.mors[f]
        assert tf == sg, (g, f)
        if g == ident(tg):
            return f
        if f == ident(sf):
            return g
        return self.comp[(g, f)]

    def closure(self):
        # reflexive-transitive closure of the 2-cell preorder
        rel = set(self.leq)
        for f in self.mors:
            rel.add((f, f))
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return rel

    def cname(self, src, dst):
        if src == dst:
            return ident_cell(src)
        return self.cell_names.get((src, dst), src + "=>" + dst)

    def to_json(self):
        rel = self.closure()
        names = sorted(self.mors)
        composable = [(g, f) for g in names for f in names
                      if self.mors[f][1] == self.mors[g][0]]
        # composition must be closed and respect the preorder on both sides
        for (g, f) in composable:
            self.c(g, f)
        for (a, b) in rel:
            for m in names:
                if self.mors[a][1] == self.mors[m][0]:
                    assert (self.c(m, a), self.c(m, b)) in rel, ("left", m, a, b)
                if self.mors[m][1] == self.mors[a][0]:
                    assert (self.c(a, m), self.c(b, m)) in rel, ("right", a, b, m)
        out = {"modes": self.modes}
        out["morphisms"] = [{"name": n, "src": s, "dst": d}
                            for n, (s, d) in sorted(self.mors.items())
                            if n != ident(s) or s != d]
        out["compose"] = [[g, f, self.c(g, f)] for (g, f) in composable
                          if g != ident(self.mors[g][0]) and f != ident(self.mors[f][0])]
        cells = sorted(rel)
        out["cells"] = [{"name": self.cname(a, b), "src": a, "dst": b}
                        for (a, b) in cells if a != b]
        out["vcompose"] = [[self.cname(b, c), self.cname(a, b), self.cname(a, c)]
                           for (a, b) in cells for (b2, c) in cells
                           if b == b2 and a != b and b != c]
        wl = []
        wr = []
        for (a, b) in cells:
            if a == b:
                continue
            s, t = self.mors[a]
            for m in names:
                if self.mors[m][0] == t and m != ident(t):
                    wl.append([m, self.cname(a, b), self.cname(self.c(m, a), self.c(m, b))])
                if self.mors[m][1] == s and m != ident(s):
                    wr.append([self.cname(a, b), m, self.cname(self.c(a, m), self.c(b, m))])
        out["whisker_left"] = wl
        out["whisker_right"] = wr
        out["classes"] = self.classes
        out["adjoints"] = self.adjoints
        return out


def trivial():
    t = Theory(["p"])
    t.classes = {"tangible": ["id:p"], "sharp": ["id:p"], "transparent": ["id:p"], "sinister": []}
    return t


def single_arrow():
    t = Theory(["p", "q"])
    t.mor("mu", "p", "q")
    every = ["id:p", "id:q", "mu"]
    t.classes = {"tangible": every, "sharp": every, "transparent": every, "sinister": []}
    return t


def two_level():
    t = Theory(["e", "f"])
    t.mor("iota", "e", "f")
    t.mor("iota_inv", "f", "e")
    t.compose("iota", "iota_inv", "id:f")
    t.compose("iota_inv", "iota", "id:e")
    t.classes = {
        "tangible": ["id:e", "id:f", "iota", "iota_inv"],
        "sharp": ["id:e", "id:f"],
        "transparent": ["id:e", "id:f"],
        "sinister": ["iota"],
    }
    t.adjoints = [{"mor": "iota", "dagger": "iota_inv",
                   "unit": "id:id:e", "counit": "id:id:f"}]
    return t


def reflective():
    t = Theory(["p", "q"])
    t.mor("mu", "p", "q")
    t.mor("nu", "q", "p")
    t.mor("nu_mu", "p", "p")
    t.compose("mu", "nu", "id:q")
    t.compose("nu", "mu", "nu_mu")
    t.compose("nu_mu", "nu_mu", "nu_mu")
    t.compose("mu", "nu_mu", "mu")
    t.compose("nu_mu", "nu", "nu")
    t.cell("eta", "id:p", "nu_mu")
    every = ["id:p", "id:q", "mu", "nu", "nu_mu"]
    t.classes = {
        "tangible": every,
        "sharp": every,
        "transparent": ["id:p", "id:q", "nu"],
        "sinister": ["mu"],
    }
    t.adjoints = [{"mor": "mu", "dagger": "nu", "unit": "eta", "counit": "id:id:q"}]
    return t


def comonad():
    t = Theory(["p"])
    t.mor("mu", "p", "p")
    t.compose("mu", "mu", "mu")
    t.cell("eps", "mu", "id:p")
    t.classes = {
        "tangible": ["id:p", "mu"],
        "sharp": ["id:p", "mu"],
        "transparent": ["id:p"],
        "sinister": [],
    }
    return t


def meet_semilattice():
    # the two-element meet-semilattice {0 <= 1}: 1 is the unit of the meet,
    # so it is the identity morphism; 0 is the other element.
    t = Theory(["p"])
    t.mor("zero", "p", "p")
    t.compose("zero", "zero", "zero")
    t.cell("le", "zero", "id:p")
    every = ["id:p", "zero"]
    t.classes = {"tangible": every, "sharp": every, "transparent": every, "sinister": []}
    return t


THEORIES = {
    "trivial": trivial,
    "single_arrow": single_arrow,
    "2ltt": two_level,
    "reflective": reflective,
    "comonad": comonad,
    "meet": meet_semilattice,
}


def dump(data):
    # one table row per line keeps diffs of the saturated tables readable
    lines = ["{"]
    keys = list(data)
    for i, key in enumerate(keys):
        value = data[key]
        sep = "," if i + 1 < len(keys) else ""
        if isinstance(value, list) and value and not isinstance(value[0], str):
            rows = [json.dumps(row) for row in value]
            lines.append("  %s: [" % json.dumps(key))
            lines.extend("    " + r + ("," if j + 1 < len(rows) else "") for j, r in enumerate(rows))
            lines.append("  ]" + sep)
        elif isinstance(value, dict):
            lines.append("  %s: {" % json.dumps(key))
            items = list(value.items())
            lines.extend("    %s: %s%s" % (json.dumps(k), json.dumps(v), "," if j + 1 < len(items) else "")
                         for j, (k, v) in enumerate(items))
            lines.append("  }" + sep)
        else:
            lines.append("  %s: %s%s" % (json.dumps(key), json.dumps(value), sep))
    lines.append("}")
    return "\n".join(lines) + "\n"


def main():
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "bundled/theories")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, build in THEORIES.items():
        data = build().to_json()
        (outdir / (name + ".mt")).write_text(dump(data))


if __name__ == "__main__":
    main()
