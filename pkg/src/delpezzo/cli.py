"""Command-line front end.

Exit codes: 0 on success, 1 when `verify` finds a failing check, 2 on
usage errors (unknown class label, malformed file, unsupported q).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass

import click

from . import catalog as cat
from . import checks as checks_mod
from . import hunt as hunt_mod
from . import lattice, symmetry, traces
from .fields import field
from .surfaces import load_surface, quadric_report, surface_report

_THREADS_ENV = "DELPEZZO_THREADS"


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(_THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class CommandConfig:
    subcommand: str
    p: int = 2
    k: int = 1
    class_label: str | None = None
    fmt: str = "markdown"
    out: str | None = None
    threads: int = 1


def _class_or_die(label: str) -> cat.SingularityClass:
    try:
        return cat.by_label(label)
    except KeyError:
        raise click.UsageError(f"unknown class label {label!r}")


def _field_or_die(q: int):
    table = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1),
             8: None, 9: (3, 2), 25: (5, 2), 49: (7, 2)}
    if q not in table or table[q] is None:
        raise click.UsageError(f"unsupported q = {q}")
    p, k = table[q]
    return field(p, k)


def _emit_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


@click.group()
def main() -> None:
    """Singular del Pezzo surfaces over small finite fields."""


@main.group("lattice")
def lattice_group() -> None:
    """Root and exceptional vectors of E_n inside I^(1,n)."""


@lattice_group.command("roots")
@click.option("--n", type=int, required=True)
def lattice_roots(n: int) -> None:
    if not 1 <= n <= lattice.MAX_RANK:
        raise click.UsageError(f"--n must be in 1..{lattice.MAX_RANK}")
    vecs = lattice.enumerate_roots(n)
    for v in vecs:
        click.echo(lattice.format_vector(v))
    click.echo(f"# {len(vecs)} roots at n={n}")


@lattice_group.command("exceptional")
@click.option("--n", type=int, required=True)
def lattice_exceptional(n: int) -> None:
    if not 1 <= n <= lattice.MAX_RANK:
        raise click.UsageError(f"--n must be in 1..{lattice.MAX_RANK}")
    vecs = lattice.enumerate_exceptional(n)
    for v in vecs:
        click.echo(f"{lattice.format_vector(v)}  {lattice.lnotation(v)}")
    click.echo(f"# {len(vecs)} exceptional classes at n={n}")


def _verdict_text(c: cat.SingularityClass) -> str:
    if c.verdict is not None:
        return c.verdict
    open_q = [
        q for q in traces.prime_powers(9)
        if not traces.smooth_point_guaranteed(c, q)[0]
    ]
    return "yes" if not open_q else "open q " + ",".join(str(q) for q in open_q)


@main.command("classes")
@click.option("--degree", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["markdown", "json"]),
              default="markdown")
def classes_cmd(degree: int, fmt: str) -> None:
    """Catalog rows of one degree, with computed line counts next to expected."""
    rows = [c for c in cat.builtin_catalog() if c.degree == degree]
    if not rows:
        raise click.UsageError(f"no catalog classes of degree {degree}")
    if fmt == "json":
        _emit_json([
            {
                "label": c.label,
                "dynkin": c.dynkin,
                "rational": c.rational,
                "lines_expected": c.expected_lines,
                "lines_computed": len(cat.lines(c)),
                "verdict": _verdict_text(c),
            }
            for c in rows
        ])
        return
    click.echo("| Class | Singular points | Rational singular | Lines | Smooth point verdict |")
    click.echo("|---|---|---|---|---|")
    for c in rows:
        computed = len(cat.lines(c))
        lines_cell = f"{c.expected_lines} (computed {computed})"
        click.echo(
            f"| {c.label} | {c.dynkin} | {c.rational} | {lines_cell} | {_verdict_text(c)} |"
        )


@main.command("graph")
@click.option("--class", "class_label", required=True)
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot")
def graph_cmd(class_label: str, fmt: str) -> None:
    """Negative-curve graph of a class, as DOT or JSON."""
    c = _class_or_die(class_label)
    if c.adhoc:
        raise click.UsageError(f"{class_label} has no negative-curve graph")
    g = cat.negative_curve_graph(c)
    if fmt == "dot":
        click.echo(cat.to_dot(g))
    else:
        _emit_json(cat.to_json_dict(g))


def _generating_set(perms) -> list:
    """Small generating set found greedily; perms must form a group."""
    want = len(perms)
    n = len(perms[0])
    identity = tuple(range(n))
    gens: list = []
    closure = {identity}
    for perm in sorted(perms):
        if perm in closure:
            continue
        gens.append(perm)
        frontier = [identity]
        closure = {identity}
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = symmetry.compose(cur, g)
                if nxt not in closure:
                    closure.add(nxt)
                    frontier.append(nxt)
        if len(closure) == want:
            break
    return gens


@main.command("autos")
@click.option("--class", "class_label", required=True)
def autos_cmd(class_label: str) -> None:
    """Order and generators of the graph automorphism group."""
    c = _class_or_die(class_label)
    if c.adhoc:
        raise click.UsageError(f"{class_label} has no negative-curve graph")
    perms = traces.class_automorphisms(c)
    g = cat.negative_curve_graph(c)
    click.echo(f"order {len(perms)}")
    for perm in _generating_set(perms):
        click.echo(symmetry.cycle_notation(perm, g.labels))


@main.command("profiles")
@click.option("--class", "class_label", required=True)
@click.option("--q", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["markdown", "json"]),
              default="markdown")
def profiles_cmd(class_label: str, q: int | None, fmt: str) -> None:
    """Frobenius trace profiles of a class, with counts at q if given."""
    c = _class_or_die(class_label)
    if c.adhoc or c.degree > 6:
        raise click.UsageError(f"{class_label} has no trace profiles here")
    if q is not None:
        _field_or_die(q)
    profs = traces.all_profiles(c)
    if fmt == "json":
        out = []
        for p in profs:
            d = {
                "class_label": p.class_label, "element_order": p.element_order,
                "tr_m": p.tr_m, "tr_f": p.tr_f, "tr_pic": p.tr_pic,
                "tr_en": p.tr_en, "tr_r": p.tr_r, "delta": p.delta, "t": p.t,
            }
            if q is not None:
                d["count"] = traces.point_count(p, q)
            out.append(d)
        _emit_json(out)
        return
    head = "| tr_pic | tr_R | delta | t |"
    sep = "|---|---|---|---|"
    if q is not None:
        head += f" count(q={q}) |"
        sep += "---|"
    click.echo(head)
    click.echo(sep)
    for p in profs:
        row = f"| {p.tr_pic} | {p.tr_r} | {p.delta} | {p.t} |"
        if q is not None:
            row += f" {traces.point_count(p, q)} |"
        click.echo(row)


@main.command("remaining")
@click.option("--qmax", type=int, default=9)
def remaining_cmd(qmax: int) -> None:
    """Degree-2 (class, q) pairs where no smooth point is guaranteed."""
    pairs = traces.remaining_cases(qmax)
    for label, q in pairs:
        click.echo(f"{label} q={q}")
    click.echo(f"# {len(pairs)} cases up to q={qmax}")


@main.command("count")
@click.option("--surface", "path", required=True,
              type=click.Path(exists=True, dir_okay=False))
def count_cmd(path: str) -> None:
    """Point report for a degree-2 surface stored as JSON."""
    try:
        s = load_surface(path)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"malformed surface file: {exc}")
    rep = surface_report(s)
    click.echo(f"{len(rep.points)} points, {len(rep.singular)} singular, "
               f"{len(rep.smooth)} smooth over F_{s.spec.q}")
    for pt in rep.points:
        tag = "singular" if pt in rep.singular else "smooth"
        click.echo(f"[{':'.join(str(x) for x in pt)}]  {tag}")


@main.command("quadric")
@click.option("--file", "path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--q", type=int, required=True)
def quadric_cmd(path: str, q: int) -> None:
    """Classify a quadric in P^3 given as a JSON 4x4 symmetric matrix."""
    spec = _field_or_die(q)
    try:
        with open(path) as fh:
            matrix = json.load(fh)
        rep = quadric_report(spec, matrix)
    except (ValueError, TypeError) as exc:
        raise click.UsageError(f"bad quadric input: {exc}")
    click.echo(f"rank {rep.rank}, {rep.kind}, {rep.count} points over F_{q}")


@main.command("hunt")
@click.option("--q", type=int, required=True)
@click.option("--prefilter", is_flag=True, default=False)
@click.option("--dedup", is_flag=True, default=False)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--threads", type=int, default=_default_threads)
def hunt_cmd(q: int, prefilter: bool, dedup: bool, out: str | None,
             threads: int) -> None:
    """Sweep all degree-2 surfaces over F_q; emit ones with only singular points."""
    spec = _field_or_die(q)
    try:
        entries = hunt_mod.hunt(spec, use_prefilter=prefilter, dedup=dedup,
                                threads=threads)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if out:
        hunt_mod.write_census(out, spec, entries)
        click.echo(f"wrote {len(entries)} entries to {out}")
    for e in entries:
        matches = sorted({lab for lab, _ in hunt_mod.consistency_match(e)})
        flag = " FLAG" if e.flagged else ""
        click.echo(
            f"g2={''.join(map(str, e.surface.g2))} "
            f"g4={''.join(map(str, e.surface.g4))} "
            f"points={len(e.report.points)} branch={e.branch_count}"
            f" matches={','.join(matches) if matches else '-'}{flag}"
        )
    click.echo(f"# {len(entries)} census entries over F_{q}"
               + (" (one per orbit)" if dedup else ""))


@main.command("conics")
@click.option("--q", type=int, required=True)
def conics_cmd(q: int) -> None:
    """Conjugate conic pairs through the standard frame, with witnesses."""
    if q != 3:
        raise click.UsageError("the conic scan is specific to q = 3")
    rep = hunt_mod.conic_pair_scan()
    click.echo(f"pencil size {rep.pencil_size}, rational members {rep.rational_members}")
    for pair in rep.pairs:
        w = ":".join(map(str, pair.witness)) if pair.witness else "none"
        click.echo(f"conic {pair.coeffs} ~ {pair.conjugate}  witness [{w}] "
                   f"norm {pair.norm_value}")


@main.command("verify")
@click.option("--all", "run_all_flag", is_flag=True, required=True)
@click.option("--threads", type=int, default=_default_threads)
@click.option("--seed", type=int, default=checks_mod.DEFAULT_SEED)
def verify_cmd(run_all_flag: bool, threads: int, seed: int) -> None:
    """Run the full acceptance suite and print pass/fail per item."""
    results = checks_mod.run_all(threads=threads, seed=seed)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        click.echo(f"{status} {r.number:2d} {r.name} ({r.seconds:.2f}s) {r.detail}")
        failed += 0 if r.passed else 1
    click.echo(f"# {len(results) - failed}/{len(results)} checks passed")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
