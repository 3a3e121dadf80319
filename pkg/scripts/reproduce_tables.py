"""Recompute the dimension table and both primitive-monomial tables.

Usage: python3 scripts/reproduce_tables.py [--json OUT]
"""
import argparse
import json

from nilhecke import acceptance as A
from nilhecke.algebra import is_primitive_word, primitive_spaces
from nilhecke.classifier import classify
from nilhecke.coxsys import compile_presentation, params
from nilhecke.groupmodel import wj0_basis
from nilhecke.wordengine import dimension

DIMENSION_ROWS = [
    ("A3", 3), ("A4", 3), ("A5", 3), ("B3", 3), ("B4", 3), ("D4", 3), ("D5", 3), ("F4", 3), ("H3", 3), ("H4", 3),
    ("B2", 4), ("B3", 4), ("B4", 4), ("B5", 4), ("F4", 4), ("H3", 4), ("H4", 4),
    ("H3", 5), ("H4", 5), ("I2(5)", 2), ("I2(6)", 2), ("I2(7)", 4),
]


def dimension_table():
    rows = []
    for name, k in DIMENSION_ROWS:
        p = params(name, k=k)
        words = dimension(compile_presentation(p))
        group = wj0_basis(p.matrix, p.j0()).count
        closed = classify(p, with_witness=False)
        rows.append({"system": name, "k": k, "words": words, "group": group,
                     "closed_form": closed.dim, "formula": closed.formula})
    return rows


def monomial_tables():
    rows = []
    for tab, entries in (("k=3", A.k3_monomial_table()), ("k=4", A.k4_monomial_table())):
        for label, p, monos in entries:
            t = A.table(p)
            rep = primitive_spaces(t)
            rows.append({"table": tab, "system": label, "dim": t.dim, "two_sided_dim": rep.two_sided_dim,
                         "monomials": ["".join(map(str, w)) for w in monos],
                         "primitive": [is_primitive_word(t, w) for w in monos]})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="also write the rows to this file")
    args = ap.parse_args()
    dims = dimension_table()
    print(f"{'system':8} {'k':>3} {'words':>7} {'group':>7} {'closed':>7}  formula")
    for r in dims:
        flag = "" if r["words"] == r["group"] == r["closed_form"] else "  <-- mismatch"
        print(f"{r['system']:8} {r['k']:>3} {r['words']:>7} {r['group']:>7} {str(r['closed_form']):>7}  "
              f"{r['formula']}{flag}")
    print()
    monos = monomial_tables()
    print(f"{'table':5} {'system':12} {'dim':>6} {'socle':>5}  monomials (primitive?)")
    for r in monos:
        marks = ", ".join(f"{w} {'yes' if ok else 'NO'}" for w, ok in zip(r["monomials"], r["primitive"]))
        print(f"{r['table']:5} {r['system']:12} {r['dim']:>6} {r['two_sided_dim']:>5}  {marks}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"dimensions": dims, "monomials": monos}, fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
