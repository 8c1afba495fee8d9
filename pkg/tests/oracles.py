"""Slow, obviously-correct reference implementations used to check the library.

Everything here works on plain frozensets of labels and never calls into
the rank tables, the minor search or the binarity test it is checking.
"""

from itertools import combinations, permutations


def sets_of(m):
    return {frozenset(m.subset(b)) for b in m.bases}


def rank(bases, a):
    a = frozenset(a)
    return max(len(a & b) for b in bases)


def independent(bases, a):
    return any(frozenset(a) <= b for b in bases)


def circuits(bases, ground):
    out = set()
    for k in range(1, len(ground) + 1):
        for c in combinations(sorted(ground), k):
            c = frozenset(c)
            if independent(bases, c):
                continue
            if all(independent(bases, c - {x}) for x in c):
                out.add(c)
    return out


def dual_bases(bases, ground):
    g = frozenset(ground)
    return {g - b for b in bases}


def is_binary(bases, ground):
    """Every circuit meets every cocircuit in an even number of elements."""
    cs = circuits(bases, ground)
    ds = circuits(dual_bases(bases, ground), ground)
    return all(len(c & d) % 2 == 0 for c in cs for d in ds)


def minor(bases, ground, contract, delete):
    """Bases of M / contract \\ delete, via bases meeting ``contract`` maximally."""
    contract, delete = frozenset(contract), frozenset(delete)
    keep = frozenset(ground) - contract - delete
    r_keep = rank(bases, keep | contract) - rank(bases, contract)
    out = set()
    for b in combinations(sorted(keep), r_keep):
        b = frozenset(b)
        if rank(bases, b | contract) == len(b) + rank(bases, contract):
            out.add(b)
    return out, keep


def isomorphic(b1, g1, b2, g2):
    g1, g2 = sorted(g1), sorted(g2)
    if len(g1) != len(g2) or len(b1) != len(b2):
        return False
    for perm in permutations(g2):
        phi = dict(zip(g1, perm))
        if {frozenset(phi[x] for x in b) for b in b1} == b2:
            return True
    return False


def has_minor(bases, ground, nb, ng):
    ground = frozenset(ground)
    k = len(ground) - len(ng)
    if k < 0:
        return False
    for removed in combinations(sorted(ground), k):
        for mask in range(1 << k):
            c = {x for i, x in enumerate(removed) if mask >> i & 1}
            d = set(removed) - c
            mb, keep = minor(bases, ground, c, d)
            if isomorphic(mb, keep, nb, ng):
                return True
    return False


def twosum_circuits(c1, c2, p1, p2):
    """Circuits of a 2-sum: those avoiding the basepoints, plus glued pairs."""
    out = {c for c in c1 if p1 not in c} | {c for c in c2 if p2 not in c}
    for a in c1:
        if p1 in a:
            for b in c2:
                if p2 in b:
                    out.add((a - {p1}) | (b - {p2}))
    return out


def components(bases, ground):
    """Elements are linked when some circuit holds both."""
    cs = circuits(bases, ground)
    comp = {x: {x} for x in ground}
    for c in cs:
        merged = set().union(*(comp[x] for x in c))
        for x in merged:
            comp[x] = merged
    return {frozenset(s) for s in comp.values()}


def free_bases(bases, ground):
    out = set()
    g = frozenset(ground)
    for b in bases:
        if not b or b == g:
            continue
        if all((b - {f}) | {e} in bases for f in b for e in g - b):
            out.add(b)
    return out
