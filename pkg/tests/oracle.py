"""Pure-Python brute-force oracle, independent of the package's numpy code.

Rings are plain ``(n, add, mul, one)`` tuples over ``range(n)``; everything
is computed straight from the definitions with nested loops.
"""

from __future__ import annotations

from itertools import product as cartesian


class Ring:
    def __init__(self, n, add, mul, one):
        self.n, self.add, self.mul, self.one = n, add, mul, one
        self.els = range(n)

    def power(self, x, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, x)
        return out


def zn(n: int) -> Ring:
    return Ring(n, lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 1 % n)


def zn_product(a: int, b: int) -> Ring:
    """Z_a x Z_b with index x = x1 + a*x2 (first component least significant)."""

    def split(x):
        return x % a, x // a

    def join(x1, x2):
        return x1 + a * x2

    def add(x, y):
        (x1, x2), (y1, y2) = split(x), split(y)
        return join((x1 + y1) % a, (x2 + y2) % b)

    def mul(x, y):
        (x1, x2), (y1, y2) = split(x), split(y)
        return join((x1 * y1) % a, (x2 * y2) % b)

    return Ring(a * b, add, mul, join(1 % a, 1 % b))


def nilpotents(r: Ring) -> set[int]:
    return {x for x in r.els if r.power(x, r.n) == 0}


def units(r: Ring) -> set[int]:
    return {x for x in r.els if any(r.mul(x, y) == r.one for y in r.els)}


def ideal_closure(r: Ring, gens) -> frozenset[int]:
    cur = {0} | {r.mul(g, x) for g in gens for x in r.els}
    while True:
        nxt = cur | {r.add(a, b) for a in cur for b in cur}
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def ideals(r: Ring) -> list[frozenset[int]]:
    found = {ideal_closure(r, [x]) for x in r.els}
    changed = True
    while changed:
        changed = False
        for a in list(found):
            for b in list(found):
                s = ideal_closure(r, a | b)
                if s not in found:
                    found.add(s)
                    changed = True
    return sorted(found, key=lambda i: (len(i), sorted(i)))


def mult_closure(r: Ring, seed) -> frozenset[int]:
    cur = {r.one} | set(seed)
    while True:
        nxt = cur | {r.mul(a, b) for a in cur for b in cur}
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def radical(r: Ring, i) -> set[int]:
    return {x for x in r.els if r.power(x, r.n) in i}


def s_witnesses(r: Ring, kind: str, i, s) -> list[int]:
    """Every s in S making the defining implication hold for all pairs (a, b)."""
    nil = nilpotents(r)
    rad = radical(r, i)
    out = []
    for sv in sorted(s):
        ok = True
        for a, b in cartesian(r.els, r.els):
            if r.mul(a, b) not in i:
                continue
            sa, sb = r.mul(sv, a), r.mul(sv, b)
            if kind == "S-n":
                good = sa in nil or sb in i
            elif kind == "S-prime":
                good = sa in i or sb in i
            elif kind == "S-primary":
                good = sa in i or sb in rad
            else:
                raise ValueError(kind)
            if not good:
                ok = False
                break
        if ok:
            out.append(sv)
    return out


def is_n_ideal(r: Ring, i) -> bool:
    if r.one in i:
        return False
    nil = nilpotents(r)
    return all(b in i for a, b in cartesian(r.els, r.els) if r.mul(a, b) in i and a not in nil)


def least_n_counterexample(r: Ring, i):
    nil = nilpotents(r)
    for a, b in cartesian(r.els, r.els):
        if r.mul(a, b) in i and a not in nil and b not in i:
            return (a, b)
    return None


def s_n_ideals(r: Ring, s) -> list[frozenset[int]]:
    return [i for i in ideals(r) if not (i & s) and s_witnesses(r, "S-n", i, s)]


def saturation(r: Ring, s) -> set[int]:
    return {x for x in r.els if any(r.mul(x, y) in s for y in r.els)}


def colon(r: Ring, i, s) -> set[int]:
    return {x for x in r.els if r.mul(s, x) in i}


def s_n_nary(r: Ring, i, s, arity: int) -> bool:
    """Some s: whenever a_1...a_k lies in I, some s*a_j is nilpotent or some s*a_j lies in I."""
    nil = nilpotents(r)
    for sv in sorted(s):
        bad = {x for x in r.els if r.mul(sv, x) not in nil and r.mul(sv, x) not in i}
        ok = True
        for tup in cartesian(sorted(bad), repeat=arity):
            prod = r.one
            for x in tup:
                prod = r.mul(prod, x)
            if prod in i:
                ok = False
                break
        if ok:
            return True
    return False


def ideal_product(r: Ring, a, b) -> frozenset[int]:
    return ideal_closure(r, {r.mul(x, y) for x in a for y in b})


def s_n_nary_ideals(r: Ring, i, s, arity: int) -> bool:
    """Ideal-tuple version: I_1...I_k inside I forces some s*I_j inside the nilradical or inside I."""
    nil = nilpotents(r)
    all_i = ideals(r)
    for sv in sorted(s):
        bad = [j for j in all_i
               if not all(r.mul(sv, x) in nil for x in j) and not all(r.mul(sv, x) in i for x in j)]
        ok = True
        for tup in cartesian(bad, repeat=arity):
            prod = frozenset({r.one})
            prod = ideal_closure(r, prod)
            for j in tup:
                prod = ideal_product(r, prod, j)
            if prod <= i:
                ok = False
                break
        if ok:
            return True
    return False


def s_n_ideal_pairs(r: Ring, i, s) -> list[int]:
    """Every s with: JK inside I implies sJ inside the nilradical or sK inside I."""
    nil = nilpotents(r)
    all_i = ideals(r)
    out = []
    for sv in sorted(s):
        if all(all(r.mul(sv, x) in nil for x in j) or all(r.mul(sv, x) in i for x in k)
               for j in all_i for k in all_i if ideal_product(r, j, k) <= i):
            out.append(sv)
    return out


def fraction_classes(r: Ring, s) -> list[frozenset[tuple[int, int]]]:
    """Equivalence classes of pairs (a, t), t in S, under u(a t' - a' t) = 0 for some u in S."""
    sub = {(x, y): next(z for z in r.els if r.add(y, z) == x) for x in r.els for y in r.els}

    def equivalent(p, q):
        (a, t), (b, v) = p, q
        d = sub[r.mul(a, v), r.mul(b, t)]
        return any(r.mul(u, d) == 0 for u in s)

    classes: list[set] = []
    for pair in cartesian(r.els, sorted(s)):
        for c in classes:
            if equivalent(pair, next(iter(c))):
                c.add(pair)
                break
        else:
            classes.append({pair})
    return [frozenset(c) for c in classes]


def localization_kernel(r: Ring, s) -> set[int]:
    """Elements a with a/1 equal to 0/1."""
    return {a for a in r.els if any(r.mul(u, a) == 0 for u in s)}
