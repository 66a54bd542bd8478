"""Brute-force object and arrow counts of the co-dextrification of a poset diagram.

For posets every structure map is forced, so an object is a tuple of
components with comp[nu] <= F_rho(comp[mu]) for every cell mu => nu . rho,
and an arrow is a componentwise <= between two objects.
"""
import itertools
import json
import sys
from pathlib import Path


def theory(path):
    doc = json.loads(Path(path).read_text())
    modes = doc["modes"]
    mors = {f"id:{m}": (m, m) for m in modes}
    for m in doc["morphisms"]:
        mors[m["name"]] = (m["src"], m["dst"])
    comp = {}
    for g, (s, t) in mors.items():
        comp[(f"id:{t}", g)] = g
        comp[(g, f"id:{s}")] = g
    for g, f, gf in doc["compose"]:
        comp[(g, f)] = gf
    cells = [(f"id:{m}", m, m) for m in mors]
    cells += [(c["name"], c["src"], c["dst"]) for c in doc["cells"]]
    return modes, mors, comp, cells


def poset(doc):
    if "chain" in doc:
        els = [str(i) for i in range(doc["chain"])]
        return els, {(a, b) for a in els for b in els if int(a) <= int(b)}
    els = doc["poset"]["elements"]
    le = {(a, a) for a in els} | {tuple(p) for p in doc["poset"].get("leq", [])}
    while True:
        more = {(a, d) for (a, b) in le for (c, d) in le if b == c} - le
        if not more:
            return els, le
        le |= more


def counts(path):
    path = Path(path)
    doc = json.loads(path.read_text())
    modes, mors, comp, cells = theory(path.parent / doc["mode_theory"])
    cats = {m: poset(c) for m, c in doc["categories"].items()}
    fun = {}
    for name, (s, t) in mors.items():
        if name.startswith("id:"):
            fun[name] = {x: x for x in cats[s][0]}
    for name, f in doc.get("functors", {}).items():
        fun[name] = dict(f["objects"])
    # composites not listed in the file
    while any(m not in fun for m in mors):
        for (g, f), gf in comp.items():
            if gf not in fun and g in fun and f in fun:
                fun[gf] = {x: fun[g][fun[f][x]] for x in fun[f]}
    out = {}
    for r in modes:
        into = sorted(m for m, (s, t) in mors.items() if t == r)
        decs = []
        for nu in into:
            for rho, (s, t) in mors.items():
                if t != mors[nu][0]:
                    continue
                for _, mu, dst in cells:
                    if dst == comp[(nu, rho)]:
                        decs.append((mu, nu, rho))
        objs = []
        for choice in itertools.product(*(cats[mors[m][0]][0] for m in into)):
            g = dict(zip(into, choice))
            le = lambda m, a, b: (a, b) in cats[mors[m][0]][1]
            if all(le(nu, g[nu], fun[rho][g[mu]]) for mu, nu, rho in decs):
                objs.append(g)
        arrows = sum(
            all((a[m], b[m]) in cats[mors[m][0]][1] for m in into) for a in objs for b in objs
        )
        out[r] = (len(objs), arrows)
    return out


if __name__ == "__main__":
    for p in sys.argv[1:]:
        print(Path(p).stem, counts(p))
