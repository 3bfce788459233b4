#!/usr/bin/env python3
"""Offline generator for src/delpezzo/data/classes.cfg.

Enumerates every root configuration of each catalog Dynkin type inside E_n
(positive roots, pairwise pairings in {0,1}, component shapes as declared),
groups the configurations into classes by a Weyl-invariant pairing key plus
graph isomorphism, matches classes to table rows by line count, and freezes
lexicographically least representatives.  For degree 2 it also computes each
class's remaining-q signature (the q <= 9 with no guaranteed smooth point)
and prints it next to the expected value so discrepancies are loud.

Run from the repository root:  python3 tools/generate_catalog.py [--write]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from delpezzo import catalog as cat
from delpezzo import traces
from delpezzo.lattice import Vec, enumerate_roots, pair
from delpezzo.symmetry import find_isomorphism

# (label, degree, dynkin, rational, verdict, lines); degree-8 row is ad hoc.
ROWS = [
    ("7.1", 7, "A1", "A1", "yes", 2),
    ("6.1", 6, "A1", "A1", "yes", 4),
    ("6.2", 6, "A1", "A1", "yes", 3),
    ("6.3", 6, "A2", "A2", "yes", 2),
    ("6.4", 6, "2A1", "", "yes", 2),
    ("6.5", 6, "2A1", "2A1", "yes", 2),
    ("6.6", 6, "A1+A2", "A1+A2", "yes", 1),
    ("5.1", 5, "A1", "A1", "yes", 7),
    ("5.2", 5, "2A1", "", "yes", 5),
    ("5.3", 5, "2A1", "2A1", "yes", 5),
    ("5.4", 5, "A2", "A2", "yes", 4),
    ("5.5", 5, "A1+A2", "A1+A2", "yes", 3),
    ("5.6", 5, "A3", "A3", "yes", 2),
    ("5.7", 5, "A4", "A4", "yes", 1),
    ("4.1", 4, "A1", "A1", "yes", 12),
    ("4.2", 4, "[2A1]'", "", "yes", 9),
    ("4.3", 4, "[2A1]'", "2A1", "yes", 9),
    ("4.4", 4, "[2A1]''", "", "yes", 8),
    ("4.5", 4, "[2A1]''", "2A1", "yes", 8),
    ("4.6", 4, "A2", "A2", "yes", 8),
    ("4.7", 4, "3A1", "", "yes", 6),
    ("4.8", 4, "3A1", "A1", "yes", 6),
    ("4.9", 4, "3A1", "3A1", "yes", 6),
    ("4.10", 4, "A1+A2", "A1+A2", "yes", 6),
    ("4.11", 4, "[A3]'", "A3", "yes", 5),
    ("4.12", 4, "[A3]''", "A3", "yes", 4),
    ("4.13", 4, "A1+A3", "A1+A3", "yes", 3),
    ("4.14", 4, "A2+2A1", "A2", "yes", 4),
    ("4.15", 4, "A2+2A1", "A2+2A1", "yes", 4),
    ("4.16", 4, "4A1", "", "yes", 4),
    ("4.17", 4, "4A1", "A1", "x", 4),
    ("4.18", 4, "4A1", "2A1", "yes", 4),
    ("4.19", 4, "4A1", "4A1", "yes", 4),
    ("4.20", 4, "A4", "A4", "yes", 3),
    ("4.21", 4, "D4", "D4", "yes", 2),
    ("4.22", 4, "2A1+A3", "A3", "yes", 2),
    ("4.23", 4, "2A1+A3", "2A1+A3", "yes", 2),
    ("4.24", 4, "D5", "D5", "yes", 1),
]

# degree-2 types with the expected remaining-q signature (q <= 9)
DEG2_TYPES = [
    ("A1", {2, 3, 5}),
    ("A2", {2, 4}),
    ("[3A1]'", {2}),
    ("[3A1]''", {2}),
    ("D4", {2}),
    ("A3+2A1", {2}),
    ("2A2+A1", {2}),
    ("A3", {3}),
    ("[4A1]'", {3}),
    ("[4A1]''", {3}),
    ("A4", {4}),
]

ADHOC_81 = """[class]
degree = 8
label = "8.1"
dynkin = "A1"
verdict = "yes"
adhoc = true
roots = []
lines = 0"""


def bits(mask: int):
    while mask:
        low = mask & -mask
        mask ^= low
        yield low.bit_length() - 1


class RootSystem:
    def __init__(self, n: int):
        self.n = n
        allr = enumerate_roots(n)
        self.pos = tuple(v for v in allr if v > tuple(-c for c in v))
        m = len(self.pos)
        self.pm = [[pair(a, b) for b in self.pos] for a in self.pos]
        self.orth = [
            sum(1 << j for j in range(m) if self.pm[i][j] == 0 and i != j)
            for i in range(m)
        ]
        self.adj = [
            sum(1 << j for j in range(m) if self.pm[i][j] == 1) for i in range(m)
        ]
        self.full_mask = (1 << m) - 1
        # pairings against the full root set: Weyl-invariant key material
        self.key_rows = np.array(
            [[pair(a, b) for b in allr] for a in self.pos], dtype=np.int8
        )

    def cheap_key(self, idxs: tuple[int, ...]) -> bytes:
        """Weyl-invariant bucket key: the multiset, over all ambient roots, of
        sorted pairing profiles against the configuration.  Per-root marginals
        are useless here (the Weyl group is transitive on roots); the joint
        profile is what separates e.g. the two 2A1 classes in degree 4."""
        sub = self.key_rows[list(idxs)]
        cols = np.sort(sub, axis=0)
        return cols[:, np.lexsort(cols)].tobytes()

    def chains(self, length: int, allowed: int, directed: bool = False):
        """A_length chains inside the allowed mask (index tuples)."""
        out: list[tuple[int, ...]] = []
        if length == 1:
            return [(i,) for i in bits(allowed)]

        def extend(path: list[int]) -> None:
            if len(path) == length:
                if directed or path[0] < path[-1]:
                    out.append(tuple(path))
                return
            mask = self.adj[path[-1]] & allowed
            for p in path[:-1]:
                mask &= self.orth[p]
            for nxt in bits(mask):
                if nxt in path:
                    continue
                path.append(nxt)
                extend(path)
                path.pop()

        for start in bits(allowed):
            extend([start])
        return out

    def dshapes(self, size: int, allowed: int):
        """D_size shapes: directed chain x1..x_{size-2} plus two leaves on the
        branch end; duplicate orderings are removed by the caller's seen-set."""
        out = []
        for chain in self.chains(size - 2, allowed, directed=True):
            mask = self.adj[chain[-1]] & allowed
            for p in chain[:-1]:
                mask &= self.orth[p]
            leaves = [i for i in bits(mask) if i not in chain]
            for a_i, y1 in enumerate(leaves):
                for y2 in leaves[a_i + 1 :]:
                    if self.pm[y1][y2] == 0:
                        out.append(chain + (y1, y2))
        return out

    def configs_of_type(self, comps: tuple[tuple[str, int], ...]):
        """All root index sets realizing the component multiset (sorted tuples)."""
        ordered = sorted(comps, key=lambda c: (-c[1], c[0]))
        seen: set[tuple[int, ...]] = set()

        def rec(ci: int, allowed: int, chosen: list[int]):
            if ci == len(ordered):
                key = tuple(sorted(chosen))
                if key not in seen:
                    seen.add(key)
                    yield key
                return
            letter, size = ordered[ci]
            if letter == "A":
                shapes = self.chains(size, allowed)
            elif letter == "D":
                shapes = self.dshapes(size, allowed)
            else:
                raise NotImplementedError(f"shape {letter}{size}")
            for shape in shapes:
                new_allowed = allowed
                for i in shape:
                    new_allowed &= self.orth[i]
                yield from rec(ci + 1, new_allowed, chosen + list(shape))

        yield from rec(0, self.full_mask, [])


def make_class(degree: int, label: str, dynkin: str, rational: str,
               verdict: str | None, roots: tuple[Vec, ...]) -> cat.SingularityClass:
    probe = cat.SingularityClass(
        degree=degree, label=label, dynkin=dynkin, simple_roots=roots,
        expected_lines=-1, rational=rational, verdict=verdict,
    )
    nlines = len(cat.lines(probe))
    return cat.SingularityClass(
        degree=degree, label=label, dynkin=dynkin, simple_roots=roots,
        expected_lines=nlines, rational=rational, verdict=verdict,
    )


def orbit_classes(rs: RootSystem, degree: int, dynkin: str):
    """Iso-classes of configurations of one type: (rootset, lines, n_configs)."""
    comps = cat.parse_dynkin(dynkin)
    buckets: dict[bytes, list] = {}
    for idxs in rs.configs_of_type(comps):
        key = rs.cheap_key(idxs)
        rootset = tuple(sorted(rs.pos[i] for i in idxs))
        entry = buckets.get(key)
        if entry is None:
            buckets[key] = [rootset, 1]
        else:
            entry[1] += 1
            if rootset < entry[0]:
                entry[0] = rootset
    # group pairing-key classes by actual graph isomorphism
    classes: list[dict] = []
    for rootset, count in buckets.values():
        probe = make_class(degree, "probe", dynkin, dynkin, None, rootset)
        graph = cat.negative_curve_graph(probe)
        for c in classes:
            if len(c["graph"]) == len(graph) and find_isomorphism(c["graph"], graph):
                c["count"] += count
                if rootset < c["roots"]:
                    c["roots"] = rootset
                break
        else:
            classes.append(
                {"roots": rootset, "graph": graph, "count": count,
                 "lines": len(graph) - len(rootset)}
            )
    return classes


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--write", action="store_true", help="write data/classes.cfg")
    args = ap.parse_args()

    blocks: list[str] = [ADHOC_81]
    t0 = time.time()

    for degree in (7, 6, 5, 4):
        rs = RootSystem(9 - degree)
        rows = [r for r in ROWS if r[1] == degree]
        by_type: dict[str, list] = {}
        for label, _, dynkin, rational, verdict, nlines in rows:
            if dynkin not in by_type:
                by_type[dynkin] = orbit_classes(rs, degree, dynkin)
                found = sorted((c["lines"], c["count"]) for c in by_type[dynkin])
                print(f"degree {degree} {dynkin}: classes (lines, #configs) = {found}")
            matches = [c for c in by_type[dynkin] if c["lines"] == nlines]
            if len(matches) != 1:
                raise SystemExit(
                    f"row {label}: {len(matches)} classes with {nlines} lines"
                )
            cls = make_class(degree, label, dynkin, rational, verdict,
                             matches[0]["roots"])
            cat.validate_class(cls)
            blocks.append(cat.format_catalog((cls,)).strip())

    # degree 2: orbits + remaining-q signatures
    rs = RootSystem(7)
    expected = {name: sig for name, sig in DEG2_TYPES}
    print(f"[{time.time()-t0:.0f}s] E_7 tables ready "
          f"({len(rs.pos)} positive roots)")

    def signature(cls: cat.SingularityClass) -> set[int]:
        return {
            q for q in traces.prime_powers(9)
            if not traces.smooth_point_guaranteed(cls, q)[0]
        }

    for base in sorted({name.rstrip("'") for name, _ in DEG2_TYPES}):
        names = sorted(
            (n for n, _ in DEG2_TYPES if n.rstrip("'") == base),
            key=lambda s: s.count("'"),
        )
        classes = orbit_classes(rs, 2, names[0])
        classes.sort(key=lambda c: -c["lines"])
        for c in classes:
            probe = make_class(2, "probe", names[0], names[0], None, c["roots"])
            c["sig"] = signature(probe)
            c["aut"] = len(traces.class_automorphisms(probe))
        print(f"degree 2 {base}: {len(classes)} classes "
              f"{[(c['lines'], sorted(c['sig'])) for c in classes]} "
              f"[{time.time()-t0:.0f}s]")
        if len(classes) == len(names):
            picked = classes  # primed name = more lines (degree-4 convention)
        else:
            # more lattice classes than table rows: keep those whose signature
            # matches, most lines first; report whatever is left over
            matches = [c for c in classes if c["sig"] == expected[names[0]]]
            if len(matches) < len(names):
                raise SystemExit(
                    f"degree 2 {base}: {len(matches)} signature matches "
                    f"for {len(names)} rows"
                )
            picked = matches[: len(names)]
            for c in classes:
                if c not in picked:
                    print(f"  NOTE extra {base} class not frozen: "
                          f"lines={c['lines']} remaining={sorted(c['sig'])}")
        for name, c in zip(names, picked):
            label = f"2.{name}"
            cls = make_class(2, label, name, name, None, c["roots"])
            cat.validate_class(cls)
            mark = "OK" if c["sig"] == expected[name] else "MISMATCH"
            print(f"  {label}: lines={c['lines']} |Aut|={c['aut']} "
                  f"remaining={sorted(c['sig'])} expected={sorted(expected[name])} "
                  f"{mark}")
            blocks.append(cat.format_catalog((cls,)).strip())

    text = "\n\n".join(blocks) + "\n"
    out = Path(__file__).resolve().parent.parent / "src/delpezzo/data/classes.cfg"
    if args.write:
        out.write_text(text)
        print(f"wrote {out} ({len(blocks)} blocks)")
    else:
        print(f"dry run: would write {len(blocks)} blocks to {out}")


if __name__ == "__main__":
    main()
