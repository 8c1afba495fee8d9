"""2-sums and the canonical (Cunningham-Edmonds) tree decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count, combinations

from .core import (
    GroundSetOverflow,
    LabelCollision,
    MAX_ELEMENTS,
    Matroid,
    MatroidError,
    bits,
    connectivity,
    is_connected,
    two_separations,
)
from .minors import MinorWitness, has_minor


class BasepointDegenerate(MatroidError):
    pass


class NotConnected(MatroidError):
    pass


class InvalidTree(MatroidError):
    pass


def twosum(m1: Matroid, m2: Matroid, p1: str, p2: str) -> Matroid:
    """2-sum of ``m1`` and ``m2`` along basepoints ``p1`` and ``p2``."""
    for m, p in ((m1, p1), (m2, p2)):
        if m.size < 3:
            raise BasepointDegenerate(f"2-sum parts need at least 3 elements, got {m.size}")
        if m.is_loop(p) or m.is_coloop(p):
            raise BasepointDegenerate(f"basepoint {p} is a loop or coloop")
    left = [x for x in m1.labels if x != p1]
    right = [x for x in m2.labels if x != p2]
    clash = set(left) & set(right)
    if clash:
        raise LabelCollision(f"labels {sorted(clash)} occur on both sides")
    if len(left) + len(right) > MAX_ELEMENTS:
        raise GroundSetOverflow("2-sum exceeds the explicit limit")
    m1 = m1.reorder(left + [p1])
    m2 = m2.reorder(right + [p2])
    pb1 = 1 << len(left)
    pb2 = 1 << len(right)
    shift = len(left)
    with_p1 = [b ^ pb1 for b in m1.bases if b & pb1]
    without_p1 = [b for b in m1.bases if not b & pb1]
    with_p2 = [b ^ pb2 for b in m2.bases if b & pb2]
    without_p2 = [b for b in m2.bases if not b & pb2]
    bases = {b1 | (b2 << shift) for b1 in with_p1 for b2 in without_p2}
    bases |= {b1 | (b2 << shift) for b1 in without_p1 for b2 in with_p2}
    return Matroid(left + right, bases)


def is_rank_one_uniform(m: Matroid) -> bool:
    return m.r == 1 and len(m.bases) == m.size


def is_corank_one_uniform(m: Matroid) -> bool:
    return m.corank == 1 and len(m.bases) == m.size


@dataclass
class TreeDecomposition:
    nodes: list[Matroid]
    edges: list[tuple[int, int, str]] = field(default_factory=list)

    def degree(self, i: int) -> int:
        return sum(1 for a, b, _ in self.edges if i in (a, b))

    def neighbours(self, i: int) -> list[tuple[int, str]]:
        out = []
        for a, b, p in self.edges:
            if a == i:
                out.append((b, p))
            elif b == i:
                out.append((a, p))
        return out

    def path(self, i: int, j: int) -> list[tuple[int, int, str]]:
        """Edges on the tree path from node ``i`` to node ``j``."""
        prev: dict[int, tuple[int, str] | None] = {i: None}
        frontier = [i]
        while frontier:
            nxt = []
            for u in frontier:
                for v, p in self.neighbours(u):
                    if v not in prev:
                        prev[v] = (u, p)
                        nxt.append(v)
            frontier = nxt
        if j not in prev:
            raise InvalidTree("nodes are not joined by a path")
        out = []
        v = j
        while prev[v] is not None:
            u, p = prev[v]
            out.append((u, v, p))
            v = u
        return out[::-1]

    def basepoints(self) -> set[str]:
        return {p for _, _, p in self.edges}


def _part(m: Matroid, side: int, other: int, p: str) -> Matroid:
    """The 2-sum part of ``m`` living on ``side`` plus a new basepoint ``p``."""
    rk = m.rank_table
    keep = list(bits(side))
    r_side = int(rk[side])
    r_other = int(rk[other])
    bases = []
    pb = 1 << len(keep)
    for k in (r_side, r_side - 1):
        for combo in combinations(range(len(keep)), k):
            local = sum(1 << j for j in combo)
            orig = sum(1 << keep[j] for j in combo)
            if k == r_side:
                if rk[orig] == r_side:
                    bases.append(local)
            elif rk[orig | other] - r_other + 1 == r_side and rk[orig] == k:
                bases.append(local | pb)
    return Matroid([m.labels[i] for i in keep] + [p], bases)


def _fresh(taken: set[str]):
    for i in count(1):
        lab = f"#{i}"
        if lab not in taken:
            taken.add(lab)
            yield lab


def tree_decompose(m: Matroid) -> TreeDecomposition:
    if m.size == 0 or not is_connected(m):
        raise NotConnected("tree decompositions need a connected matroid")
    names = _fresh(set(m.labels))
    tree = TreeDecomposition([m])
    stack = [0]
    while stack:
        i = stack.pop()
        node = tree.nodes[i]
        seps = two_separations(node)
        if not seps:
            continue
        a = seps[0]
        b = node.full ^ a
        p = next(names)
        part_a = _part(node, a, b, p)
        part_b = _part(node, b, a, p)
        tree.nodes[i] = part_a
        j = len(tree.nodes)
        tree.nodes.append(part_b)
        moved = set(part_b.labels)
        tree.edges = [
            (j if (x == i and q in moved) else x, j if (y == i and q in moved) else y, q)
            for x, y, q in tree.edges
        ]
        tree.edges.append((i, j, p))
        stack.extend((i, j))
    _merge_uniform(tree)
    return tree


def _merge_uniform(tree: TreeDecomposition) -> None:
    while True:
        for a, b, p in tree.edges:
            na, nb = tree.nodes[a], tree.nodes[b]
            same = (is_rank_one_uniform(na) and is_rank_one_uniform(nb)) or (
                is_corank_one_uniform(na) and is_corank_one_uniform(nb)
            )
            if same:
                break
        else:
            return
        tree.nodes[a] = twosum(na, nb, p, p)
        edges = []
        for x, y, q in tree.edges:
            if q == p:
                continue
            x = a if x == b else x
            y = a if y == b else y
            edges.append((x - (x > b), y - (y > b), q))
        del tree.nodes[b]
        tree.edges = edges


def reconstruct(tree: TreeDecomposition) -> Matroid:
    k = len(tree.nodes)
    if k == 0 or len(tree.edges) != k - 1:
        raise InvalidTree("a tree on k nodes needs k - 1 edges")
    group = list(range(k))
    merged: dict[int, Matroid] = dict(enumerate(tree.nodes))

    def find(x):
        while group[x] != x:
            x = group[x]
        return x

    for a, b, p in tree.edges:
        ga, gb = find(a), find(b)
        if ga == gb:
            raise InvalidTree("the edge set contains a cycle")
        ma, mb = merged.pop(ga), merged.pop(gb)
        if p not in ma.labels or p not in mb.labels:
            raise InvalidTree(f"basepoint {p} missing from an endpoint")
        merged[ga] = twosum(ma, mb, p, p)
        group[gb] = ga
    (result,) = merged.values()
    return result


def canonical_violations(tree: TreeDecomposition) -> list[str]:
    """Reasons ``tree`` is not a canonical tree decomposition (empty if it is)."""
    out = []
    k = len(tree.nodes)
    if len(tree.edges) != k - 1:
        out.append("edge count is not k - 1")
    if k > 1 and len(tree.path(0, k - 1)) == 0:
        out.append("tree is not connected")
    seen: dict[int, set[int]] = {}
    for a, b, p in tree.edges:
        na, nb = tree.nodes[a], tree.nodes[b]
        if set(na.labels) & set(nb.labels) != {p}:
            out.append(f"adjacent nodes {a},{b} share more than {p}")
        for n in (na, nb):
            if p in n.labels and (n.is_loop(p) or n.is_coloop(p)):
                out.append(f"basepoint {p} is a separator")
        if is_rank_one_uniform(na) and is_rank_one_uniform(nb):
            out.append(f"adjacent rank-one uniform nodes {a},{b}")
        if is_corank_one_uniform(na) and is_corank_one_uniform(nb):
            out.append(f"adjacent corank-one uniform nodes {a},{b}")
        seen.setdefault(a, set()).add(b)
        seen.setdefault(b, set()).add(a)
    for i in range(k):
        for j in range(i + 1, k):
            if j in seen.get(i, ()):
                continue
            if set(tree.nodes[i].labels) & set(tree.nodes[j].labels):
                out.append(f"non-adjacent nodes {i},{j} share elements")
    total = sum(n.size for n in tree.nodes) - 2 * len(tree.edges)
    for i, n in enumerate(tree.nodes):
        if n.size < 3 and (k > 1 or total >= 3):
            out.append(f"node {i} has fewer than 3 elements")
        if not (
            connectivity(n).is_three_connected
            or is_rank_one_uniform(n)
            or is_corank_one_uniform(n)
        ):
            out.append(f"node {i} is neither 3-connected nor a uniform rank/corank-one piece")
    return out


def tree_minor_check(tree: TreeDecomposition, m: Matroid) -> list[tuple[int, int, MinorWitness | None]]:
    """For each node pair, look for the path 2-sum of the two labels as a minor of ``m``."""
    out = []
    for i, j in combinations(range(len(tree.nodes)), 2):
        path = tree.path(i, j)
        p1 = path[0][2]
        p2 = path[-1][2]
        mi, mj = tree.nodes[i], tree.nodes[j]
        if p1 != p2:
            mj = mj.relabel({p2: p1})
        target = twosum(mi, mj, p1, p1)
        out.append((i, j, has_minor(m, target)))
    return out


def render(tree: TreeDecomposition, describe=None) -> str:
    """Indented text rendering rooted at node 0."""
    if describe is None:
        describe = lambda n: f"rank {n.r} on {{{' '.join(n.labels)}}}"  # noqa: E731
    lines: list[str] = []
    seen = set()

    def walk(i: int, depth: int, via: str | None):
        seen.add(i)
        prefix = "  " * depth + (f"[{via}] " if via else "")
        lines.append(prefix + f"node {i}: " + describe(tree.nodes[i]))
        for j, p in tree.neighbours(i):
            if j not in seen:
                walk(j, depth + 1, p)

    if tree.nodes:
        walk(0, 0, None)
    return "\n".join(lines)
