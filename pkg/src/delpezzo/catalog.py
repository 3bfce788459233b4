"""Catalog of singular del Pezzo classes and their negative-curve graphs.

A class is a degree d plus a configuration of simple roots in E_{9-d}
(the classes of the -2 curves on the minimal desingularisation).  The -1
curves ("lines") are recovered from the configuration by the effectivity
criterion: an exceptional class v is a line iff v.alpha >= 0 for every
configuration root alpha.  Roots and lines together form a colored
multigraph whose edge multiplicities are intersection numbers; that graph
drives everything downstream (automorphisms, trace profiles, point counts).

Catalog entries live in data/classes.cfg, a small text format:

    [class]
    degree = 4
    label = "4.1"
    dynkin = "A1"
    rational = "A1"
    verdict = "yes"
    roots = [[0,1,-1,0,0,0]]
    lines = 12

`rational` is the Dynkin type of the Galois-invariant singular locus for the
row (empty string = no rational singular point), `verdict` the smooth-point
column ("yes" or "x"; omitted where it is computed live), and `adhoc = true`
marks a row whose desingularisation is not a blow-up of the plane, so the
lattice model does not apply (only degree 8).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .lattice import Vec, enumerate_exceptional, enumerate_roots, lnotation, pair

MINUS_TWO = -2
MINUS_ONE = -1


@dataclass(frozen=True)
class SingularityClass:
    degree: int
    label: str
    dynkin: str
    simple_roots: tuple[Vec, ...]
    expected_lines: int
    rational: str
    verdict: str | None = None
    adhoc: bool = False

    @property
    def rank(self) -> int:
        return 9 - self.degree


@dataclass(frozen=True)
class NegativeCurveGraph:
    """Colored intersection multigraph of the -2 and -1 curves of a class."""

    degree: int
    vertices: tuple[Vec, ...]
    self_int: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def root_indices(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.self_int) if s == MINUS_TWO)

    @property
    def line_indices(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.self_int) if s == MINUS_ONE)


_TERM_RE = re.compile(r"^(\d*)([ADE])(\d+)$")


def parse_dynkin(label: str) -> tuple[tuple[str, int], ...]:
    """Component multiset of a Dynkin label.

    '2A1' and 'A1+A1' both give (('A',1),('A',1)); bracket/prime decorations
    that distinguish lattice orbits of the same abstract type ("[3A1]'") are
    ignored here.  Empty label = empty multiset.
    """
    s = label.strip().rstrip("'")
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if not s:
        return ()
    out: list[tuple[str, int]] = []
    for term in s.split("+"):
        m = _TERM_RE.match(term.strip())
        if not m:
            raise ValueError(f"bad Dynkin label {label!r} (term {term!r})")
        count = int(m.group(1) or "1")
        out.extend([(m.group(2), int(m.group(3)))] * count)
    return tuple(sorted(out))


def format_dynkin(components: tuple[tuple[str, int], ...]) -> str:
    """Inverse-ish of parse_dynkin: ('A',1),('A',1),('A',3) -> '2A1+A3'."""
    if not components:
        return ""
    groups: dict[tuple[str, int], int] = {}
    for comp in sorted(components):
        groups[comp] = groups.get(comp, 0) + 1
    parts = []
    for (letter, size), count in groups.items():
        parts.append(f"{count if count > 1 else ''}{letter}{size}")
    return "+".join(parts)


def lines(cls: SingularityClass) -> tuple[Vec, ...]:
    """The -1 curves of the class, by the effectivity criterion."""
    if cls.adhoc:
        return ()
    candidates = enumerate_exceptional(cls.rank)
    return tuple(
        v for v in candidates if all(pair(v, a) >= 0 for a in cls.simple_roots)
    )


def negative_curve_graph(cls: SingularityClass) -> NegativeCurveGraph:
    if cls.adhoc:
        raise ValueError(
            f"class {cls.label} has no lattice model; graph operations do not apply"
        )
    verts = tuple(cls.simple_roots) + lines(cls)
    nroots = len(cls.simple_roots)
    self_int = (MINUS_TWO,) * nroots + (MINUS_ONE,) * (len(verts) - nroots)
    mult_rows = []
    for i, u in enumerate(verts):
        row = []
        for j, v in enumerate(verts):
            if i == j:
                row.append(self_int[i])
                continue
            m = pair(u, v)
            if m < 0:
                raise ValueError(
                    f"class {cls.label}: negative off-diagonal intersection "
                    f"{lnotation(u)}.{lnotation(v)} = {m}"
                )
            row.append(m)
        mult_rows.append(tuple(row))
    return NegativeCurveGraph(
        degree=cls.degree,
        vertices=verts,
        self_int=self_int,
        mult=tuple(mult_rows),
        labels=tuple(lnotation(v) for v in verts),
    )


def root_components(graph: NegativeCurveGraph) -> tuple[tuple[int, ...], ...]:
    """Connected components of the -2 subgraph, as sorted index tuples."""
    roots = list(graph.root_indices)
    seen: set[int] = set()
    comps: list[tuple[int, ...]] = []
    for start in roots:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in roots:
                if j not in seen and graph.mult[i][j] > 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _component_type(comp: tuple[int, ...], graph: NegativeCurveGraph) -> tuple[str, int]:
    """ADE type of one -2 component; raises if the shape is not a Dynkin diagram."""
    adj = {
        i: [j for j in comp if j != i and graph.mult[i][j] > 0] for i in comp
    }
    degrees = {i: len(adj[i]) for i in comp}
    edge_count = sum(degrees.values()) // 2
    if edge_count != len(comp) - 1:
        raise ValueError(f"-2 component {comp} is not a tree")
    branch = [i for i in comp if degrees[i] >= 3]
    if not branch:
        return ("A", len(comp))
    if len(branch) > 1 or degrees[branch[0]] > 3:
        raise ValueError(f"-2 component {comp} is not an ADE diagram")
    b = branch[0]
    legs = []
    for first in adj[b]:
        length, prev, cur = 1, b, first
        while True:
            nxt = [j for j in adj[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return ("D", legs[2] + 3)
    if legs == [1, 2, 2]:
        return ("E", 6)
    if legs == [1, 2, 3]:
        return ("E", 7)
    if legs == [1, 2, 4]:
        return ("E", 8)
    raise ValueError(f"-2 component {comp} has leg profile {legs}")


def component_types(
    graph: NegativeCurveGraph,
) -> tuple[tuple[tuple[str, int], tuple[int, ...]], ...]:
    """((type, vertex indices), ...) for each -2 component."""
    return tuple(
        (_component_type(c, graph), c) for c in root_components(graph)
    )


def validate_class(cls: SingularityClass) -> None:
    """Structural checks for one catalog entry; raises ValueError on defects."""
    if cls.adhoc:
        if len(lines(cls)) != cls.expected_lines:
            raise ValueError(f"class {cls.label}: ad hoc line count mismatch")
        return
    n = cls.rank
    roots = set(enumerate_roots(n))
    for a in cls.simple_roots:
        if a not in roots:
            raise ValueError(f"class {cls.label}: {a} is not a root of E_{n}")
    for i, a in enumerate(cls.simple_roots):
        for b in cls.simple_roots[i + 1 :]:
            if pair(a, b) not in (0, 1):
                raise ValueError(
                    f"class {cls.label}: root pairing {pair(a, b)} outside {{0,1}}"
                )
    graph = negative_curve_graph(cls)
    found = tuple(sorted(t for t, _ in component_types(graph)))
    want = parse_dynkin(cls.dynkin)
    if found != want:
        raise ValueError(
            f"class {cls.label}: component types {found} != declared {want}"
        )
    nlines = len(lines(cls))
    if nlines != cls.expected_lines:
        raise ValueError(
            f"class {cls.label}: {nlines} lines computed, table says {cls.expected_lines}"
        )


def parse_catalog(text: str) -> tuple[SingularityClass, ...]:
    entries: list[SingularityClass] = []
    block: dict[str, object] | None = None

    def flush() -> None:
        nonlocal block
        if block is None:
            return
        for key in ("degree", "label", "dynkin", "roots", "lines"):
            if key not in block:
                raise ValueError(f"catalog block missing {key!r}: {block}")
        entries.append(
            SingularityClass(
                degree=int(block["degree"]),  # type: ignore[arg-type]
                label=str(block["label"]),
                dynkin=str(block["dynkin"]),
                simple_roots=tuple(tuple(r) for r in block["roots"]),  # type: ignore[union-attr]
                expected_lines=int(block["lines"]),  # type: ignore[arg-type]
                rational=str(block.get("rational", block["dynkin"])),
                verdict=(None if "verdict" not in block else str(block["verdict"])),
                adhoc=bool(block.get("adhoc", False)),
            )
        )
        block = None

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "[class]":
            flush()
            block = {}
            continue
        if block is None:
            raise ValueError(f"catalog data outside a [class] block: {line!r}")
        key, eq, value = line.partition("=")
        if not eq:
            raise ValueError(f"bad catalog line: {line!r}")
        block[key.strip()] = json.loads(value.strip())
    flush()
    labels = [c.label for c in entries]
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate class labels in catalog")
    return tuple(entries)


def format_catalog(entries: tuple[SingularityClass, ...]) -> str:
    chunks = []
    for c in entries:
        body = [
            "[class]",
            f"degree = {c.degree}",
            f'label = "{c.label}"',
            f'dynkin = "{c.dynkin}"',
        ]
        if c.rational != c.dynkin:
            body.append(f'rational = "{c.rational}"')
        if c.verdict is not None:
            body.append(f'verdict = "{c.verdict}"')
        if c.adhoc:
            body.append("adhoc = true")
        body.append(f"roots = {json.dumps([list(r) for r in c.simple_roots])}")
        body.append(f"lines = {c.expected_lines}")
        chunks.append("\n".join(body))
    return "\n\n".join(chunks) + "\n"


@lru_cache(maxsize=None)
def builtin_catalog() -> tuple[SingularityClass, ...]:
    text = resources.files("delpezzo").joinpath("data/classes.cfg").read_text()
    entries = parse_catalog(text)
    for c in entries:
        validate_class(c)
    return entries


def by_label(label: str) -> SingularityClass:
    for c in builtin_catalog():
        if c.label == label:
            return c
    raise KeyError(f"no catalog class labeled {label!r}")


def to_dot(graph: NegativeCurveGraph) -> str:
    """Graphviz rendering: lines filled, roots unfilled, multi-edges repeated."""
    out = ["graph negative_curves {", "  node [shape=circle fontsize=10];"]
    for i, label in enumerate(graph.labels):
        style = "filled" if graph.self_int[i] == MINUS_ONE else "solid"
        out.append(f'  v{i} [label="{label}" style={style}];')
    for i in range(len(graph)):
        for j in range(i + 1, len(graph)):
            out.extend([f"  v{i} -- v{j};"] * graph.mult[i][j])
    out.append("}")
    return "\n".join(out)


def to_json_dict(graph: NegativeCurveGraph) -> dict:
    return {
        "degree": graph.degree,
        "vertices": [
            {
                "label": graph.labels[i],
                "self_intersection": graph.self_int[i],
                "class": list(graph.vertices[i]),
            }
            for i in range(len(graph))
        ],
        "mult": [list(row) for row in graph.mult],
    }
