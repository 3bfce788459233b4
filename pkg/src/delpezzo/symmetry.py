"""Automorphisms and isomorphisms of negative-curve graphs.

A graph permutation must preserve self-intersections (so roots map to roots,
lines to lines) and every pairwise intersection multiplicity.  The group is
found by backtracking over candidate images, with candidates held as bitmask
ints and pruned by iterated color refinement; the full element list is then
expanded from a stabilizer-chain transversal system, which keeps the search
cost proportional to the number of cosets rather than group order times
backtrack depth.
"""

from __future__ import annotations

from math import gcd

from .catalog import NegativeCurveGraph

AUTOMORPHISM_CAP = 10_000_000


class GroupTooLarge(RuntimeError):
    pass


Perm = tuple[int, ...]


def _wl_colors(mult: tuple[tuple[int, ...], ...]) -> list[int]:
    """Iterated refinement: color by self-intersection, then by the multiset of
    (edge multiplicity, neighbor color) until stable."""
    n = len(mult)
    color = _renumber([(mult[v][v],) for v in range(n)])
    while True:
        sigs = [
            (
                color[v],
                tuple(sorted((mult[v][u], color[u]) for u in range(n) if u != v)),
            )
            for v in range(n)
        ]
        new = _renumber(sigs)
        if new == color:
            return color
        color = new


def _renumber(sigs: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


class _Matcher:
    """Backtracking search for color/multiplicity preserving bijections.

    Set up once per (source, target) pair; supports finding one completion of
    a prescribed partial map, which is all the transversal construction needs.
    """

    def __init__(
        self,
        mult_a: tuple[tuple[int, ...], ...],
        mult_b: tuple[tuple[int, ...], ...],
        colors_a: list[int],
        colors_b: list[int],
    ):
        self.n = len(mult_a)
        self.mult_a = mult_a
        self.mult_b = mult_b
        self.start_masks = [
            sum(1 << w for w in range(self.n) if colors_b[w] == colors_a[v])
            for v in range(self.n)
        ]
        # eq[m][w] = bitmask of w' with mult_b[w'][w] == m (diagonals never
        # collide: off-diagonal multiplicities are >= 0, diagonals negative)
        values = {mult_b[i][j] for i in range(self.n) for j in range(self.n)}
        values |= {mult_a[i][j] for i in range(self.n) for j in range(self.n)}
        self.eq = {
            m: [
                sum(1 << w2 for w2 in range(self.n) if mult_b[w2][w] == m)
                for w in range(self.n)
            ]
            for m in values
        }

    def complete(self, prescribed: dict[int, int]) -> Perm | None:
        """First bijection extending `prescribed`, or None."""
        n = self.n
        cand = list(self.start_masks)
        used = 0
        image: list[int] = [-1] * n
        pairs = list(prescribed.items())
        for v, w in pairs:
            if not (cand[v] >> w) & 1 or (used >> w) & 1:
                return None
            image[v] = w
            used |= 1 << w
        for idx, (v, w) in enumerate(pairs):
            for v2, w2 in pairs[idx + 1 :]:
                if self.mult_a[v][v2] != self.mult_b[w][w2]:
                    return None
        for v, w in pairs:
            row = self.mult_a[v]
            for u in range(n):
                if image[u] < 0:
                    cand[u] &= self.eq[row[u]][w]

        def dfs(assigned: int) -> bool:
            nonlocal used
            if assigned == n:
                return True
            best, best_count = -1, n + 1
            for u in range(n):
                if image[u] >= 0:
                    continue
                c = (cand[u] & ~used).bit_count()
                if c == 0:
                    return False
                if c < best_count:
                    best, best_count = u, c
            v = best
            row = self.mult_a[v]
            free = cand[v] & ~used
            while free:
                low = free & -free
                free ^= low
                w = low.bit_length() - 1
                saved = []
                for u in range(n):
                    if image[u] < 0 and u != v:
                        old = cand[u]
                        new = old & self.eq[row[u]][w]
                        if new != old:
                            saved.append((u, old))
                            cand[u] = new
                image[v] = w
                used |= 1 << w
                if dfs(assigned + 1):
                    return True
                used ^= 1 << w
                image[v] = -1
                for u, old in saved:
                    cand[u] = old
            return False

        return tuple(image) if dfs(len(pairs)) else None


def _matcher(graph: NegativeCurveGraph) -> _Matcher:
    colors = _wl_colors(graph.mult)
    return _Matcher(graph.mult, graph.mult, colors, colors)


def compose(f: Perm, g: Perm) -> Perm:
    """f after g."""
    return tuple(f[x] for x in g)


def automorphisms(
    graph: NegativeCurveGraph, cap: int = AUTOMORPHISM_CAP
) -> list[Perm]:
    """Every automorphism of the graph, sorted (identity first).

    Transversal construction: at level v, find coset representatives of the
    stabilizer of 0..v inside the stabilizer of 0..v-1 by completing the
    partial maps {0..v-1 identity, v -> w}; the group is the set of products
    of one representative per level.
    """
    n = len(graph)
    matcher = _matcher(graph)
    identity = tuple(range(n))
    transversals: list[list[Perm]] = []
    order = 1
    for v in range(n):
        prefix = {i: i for i in range(v)}
        reps = [identity]
        mask = matcher.start_masks[v]
        # cheap candidate narrowing using the prefix constraints
        for i in range(v):
            mask &= matcher.eq[graph.mult[v][i]][i]
        free = mask & ~((1 << v) | sum(1 << i for i in range(v)))
        while free:
            low = free & -free
            free ^= low
            w = low.bit_length() - 1
            g = matcher.complete({**prefix, v: w})
            if g is not None:
                reps.append(g)
        order *= len(reps)
        if order > cap:
            raise GroupTooLarge(
                f"automorphism group order exceeds {cap}; raise the cap to enumerate"
            )
        if len(reps) > 1:
            transversals.append(reps)
    elements: list[Perm] = [identity]
    for reps in reversed(transversals):
        elements = [compose(t, h) for t in reps for h in elements]
    # transversal products are distinct by construction; check, don't trust
    out = sorted(set(elements))
    if len(out) != order:
        raise AssertionError("transversal expansion lost or duplicated elements")
    return out


def find_isomorphism(
    a: NegativeCurveGraph, b: NegativeCurveGraph
) -> Perm | None:
    """A vertex bijection a -> b preserving kinds and multiplicities, if any."""
    if len(a) != len(b) or a.degree != b.degree:
        return None
    ca, cb = _wl_colors(a.mult), _wl_colors(b.mult)
    if sorted(ca) != sorted(cb):
        return None
    return _Matcher(a.mult, b.mult, ca, cb).complete({})


def isomorphic(a: NegativeCurveGraph, b: NegativeCurveGraph) -> bool:
    return find_isomorphism(a, b) is not None


def element_order(perm: Perm) -> int:
    seen = [False] * len(perm)
    order = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        order = order * length // gcd(order, length)
    return order


def cycle_notation(perm: Perm, labels: tuple[str, ...] | None = None) -> str:
    name = (lambda i: labels[i]) if labels else (lambda i: str(i))
    seen = [False] * len(perm)
    cycles = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc, j = [], i
        while not seen[j]:
            seen[j] = True
            cyc.append(name(j))
            j = perm[j]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) if cycles else "()"
