"""Regenerate the bundled character tables from explicit group models.

Each group is built as a set of elements with a multiplication; classes,
sizes, orders and inverse classes come from conjugation.  Irreducible
values are filled in from the standard constructions for each family and
the whole table is validated before it is written.

    python3 scripts/build_corpus.py [--check]
"""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import dataclass
from pathlib import Path

from tworoot.chartable import CharacterTable, ConjugacyClass, format_table, parse_table, validate
from tworoot.cyclotomic import Cyclotomic, zeta

DATA = Path(__file__).resolve().parents[1] / "src" / "tworoot" / "data"


@dataclass
class FiniteGroup:
    elements: list
    mul: callable
    identity: object

    def inv(self, g):
        return next(h for h in self.elements if self.mul(g, h) == self.identity)

    def order_of(self, g) -> int:
        x, n = g, 1
        while x != self.identity:
            x, n = self.mul(x, g), n + 1
        return n

    def classes(self) -> list[list]:
        """Conjugacy classes, identity first, then by (element order, least element)."""
        seen, out = set(), []
        for g in self.elements:
            if g in seen:
                continue
            cl = sorted({self.mul(self.mul(h, g), self.inv(h)) for h in self.elements})
            seen.update(cl)
            out.append(cl)
        return sorted(out, key=lambda c: (self.order_of(c[0]), c[0] != self.identity, c[0]))


def _table(name, G: FiniteGroup, rows, funs) -> CharacterTable:
    cls = G.classes()
    where = {g: i for i, c in enumerate(cls) for g in c}
    classes = tuple(ConjugacyClass(len(c), G.order_of(c[0]), where[G.inv(c[0])]) for c in cls)
    reps = [c[0] for c in cls]
    irr = tuple(tuple(_cyc(f(g)) for g in reps) for f in rows)
    functions = {k: tuple(_cyc(f(g)) for g in reps) for k, f in funs.items()}
    return CharacterTable(name, len(G.elements), classes, irr, functions)


def _cyc(v) -> Cyclotomic:
    return v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v)


# -- dihedral of order 30: (k, s) means r^k s^s, s r s = r^-1 ----------------


def dihedral30() -> CharacterTable:
    n = 15
    G = FiniteGroup([(k, s) for s in (0, 1) for k in range(n)],
                    lambda a, b: ((a[0] + (b[0] if a[1] == 0 else -b[0])) % n, a[1] ^ b[1]), (0, 0))
    rows = [lambda g: 1, lambda g: -1 if g[1] else 1]
    for j in range(1, 8):
        rows.append(lambda g, j=j: 0 if g[1] else zeta(n, j * g[0]) + zeta(n, -j * g[0]))

    def example(g):
        # lambda1 + lambda2 - 1 on rotations, the lambdas of C15 trivial on C5
        if g == (0, 0):
            return 16
        if g[1]:
            return 0
        return zeta(3, g[0]) + zeta(3, -g[0]) - 1

    return _table("D30", G, rows, {"example": example})


# -- SL(2,3) as 2x2 matrices over F3 ------------------------------------------


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) % 3 for j in range(2)) for i in range(2))


def sl23() -> CharacterTable:
    mats = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            mats.append(((a, b), (c, d)))
    one = ((1, 0), (0, 1))
    G = FiniteGroup(mats, _matmul, one)
    q8 = {g for g in mats if G.order_of(g) in (1, 2, 4)}
    u = ((1, 1), (0, 1))
    coset = {}
    x = one
    for t in range(3):
        for h in q8:
            coset[_matmul(x, h)] = t
        x = _matmul(x, u)
    omega = lambda g, e: zeta(3, e * coset[g])
    nat = {1: 2, 2: -2, 4: 0, 3: -1, 6: 1}
    big = {1: 3, 2: 3, 4: -1, 3: 0, 6: 0}
    rows = [
        lambda g: 1,
        lambda g: omega(g, 1),
        lambda g: omega(g, 2),
        lambda g: nat[G.order_of(g)],
        lambda g: omega(g, 1) * nat[G.order_of(g)],
        lambda g: omega(g, 2) * nat[G.order_of(g)],
        lambda g: big[G.order_of(g)],
    ]
    # action on the cosets of a Sylow 3-subgroup; count fixed cosets
    P = [one, u, _matmul(u, u)]
    cosets = {frozenset(_matmul(g, p) for p in P) for g in mats}

    def perm8(g):
        return sum(1 for c in cosets if frozenset(_matmul(g, x) for x in c) == c)

    return _table("SL(2,3)", G, rows, {"perm8": perm8, "perm8_constituent": lambda g: perm8(g) - 1})


# -- A5 as even permutations of 0..4 ------------------------------------------


def _compose(a, b):
    return tuple(a[b[i]] for i in range(5))


def _sign(p) -> int:
    s = 1
    for i, j in itertools.combinations(range(5), 2):
        if p[i] > p[j]:
            s = -s
    return s


def a5() -> CharacterTable:
    perms = [p for p in itertools.permutations(range(5)) if _sign(p) == 1]
    G = FiniteGroup(perms, _compose, tuple(range(5)))
    c5 = (1, 2, 3, 4, 0)
    class_a = {_compose(_compose(h, c5), G.inv(h)) for h in perms}
    golden = -zeta(5, 2) - zeta(5, 3)
    other = -zeta(5, 1) - zeta(5, 4)
    fixed = lambda g: sum(1 for i in range(5) if g[i] == i)

    def three(g, swap):
        o = G.order_of(g)
        if o == 5:
            return golden if (g in class_a) != swap else other
        return {1: 3, 2: -1, 3: 0}[o]

    rows = [
        lambda g: 1,
        lambda g: three(g, False),
        lambda g: three(g, True),
        lambda g: fixed(g) - 1,
        lambda g: {1: 5, 2: 1, 3: -1, 5: 0}[G.order_of(g)],
    ]
    return _table("A5", G, rows, {})


BUILDERS = {"dihedral30": dihedral30, "sl23": sl23, "a5": a5}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare against the files on disk, write nothing")
    args = ap.parse_args(argv)
    status = 0
    for name, build in BUILDERS.items():
        table = build()
        cert = validate(table)
        text = "# generated by scripts/build_corpus.py; do not edit\n" + format_table(table)
        assert parse_table(text) == table
        path = DATA / f"{name}.tbl"
        if args.check:
            same = path.exists() and path.read_text() == text
            print(f"{name}: {'ok' if same else 'DIFFERS'}")
            status |= not same
        else:
            path.write_text(text)
            print(f"{name}: wrote {path.name} degrees={list(cert.degrees)}")
    return status


if __name__ == "__main__":
    sys.exit(main())
