"""Exhaustive search for degree-2 surfaces whose rational points are all singular.

q = 2: the full 2^21 sweep over (g2, g4).  Everything reduces to parities:
a point (P, w) of P(1,1,1,2) with plane part P has F = w^2 + a_P*w + b_P
where a_P = G2(P), b_P = G4(P).  If a_P = 1 the w-roots (present iff
b_P = 0) are smooth because dF/dw = a_P there, so a census surface needs
b_P = 1 at every such P; if a_P = 0 there is exactly one root w = b_P and
it is singular iff both non-chart partials w*dG2/du + dG4/du vanish.  All
of these are XORs of coefficient-subset parities, so the whole g4 axis is
swept as one numpy gather per plane point.

q = 3: odd characteristic, so w -> w - G2/2 absorbs g2 (an admissible
substitution); the sweep covers the reduced family w^2 = -G4 over all
3^15 quartics.  Census conditions per plane point P with v = G4(P):
-v a nonzero square gives two smooth points (dF/dw = 2w /= 0), excluded;
v = 0 gives the single point w = 0, singular iff both non-chart partials
of G4 vanish.  Orbits of the reduced family are GL_3 acting on g4 alone.

q = 4 would need a 4^21 sweep; not supported, the call raises.

Deduplication canonicalizes under coordinate changes A in GL_3 combined
with substitutions w -> w + h(x,y,z) (h quadratic; the weight-2 scaling
lambda^2 is trivial for q <= 3), keeping the lexicographically least
(g2, g4) pair.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import __version__
from . import catalog as cat
from . import traces
from .fields import FieldSpec, field
from .surfaces import (
    G2_MONOMIALS,
    G4_MONOMIALS,
    DegreeTwoSurface,
    SurfaceReport,
    eval_form,
    plane_curve_points,
    projective_points,
    surface_report,
    surface_to_json,
)


# The three known F_2 surfaces with a rational point and no smooth one,
# keyed by singularity type.  Coefficients follow G2_MONOMIALS/G4_MONOMIALS.
KNOWN_EXAMPLES_Q2: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {
    # w^2 + w(y^2+yz+z^2) + x^2yz + xyz^2 + y^4 + y^2z^2 + z^4
    "A1": ((0, 0, 0, 1, 1, 1), (0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1)),
    # w^2 + w*x^2 + x^4 + x^2yz + xy^2z + xyz^2 + y^2z^2
    "3A1": ((1, 0, 0, 0, 0, 0), (1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0)),
    # w^2 + w(y^2+yz+z^2) + xy^2z + xyz^2 + y^4 + y^2z^2 + z^4
    "D4": ((0, 0, 0, 1, 1, 1), (0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1, 0, 1)),
}


@dataclass(frozen=True)
class CensusEntry:
    surface: DegreeTwoSurface
    report: SurfaceReport
    branch_count: int
    orbit_canonical: bool

    @property
    def flagged(self) -> bool:
        """More points than 7 rational singular points could ever explain."""
        return len(self.report.points) > 7


# --- polynomial transforms (shared by dedup at q = 2 and 3) -----------------

def _poly_mul(spec: FieldSpec, d1: dict, d2: dict) -> dict:
    out: dict[tuple[int, int, int], int] = {}
    for e1, c1 in d1.items():
        for e2, c2 in d2.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = spec.add(out.get(e, 0), spec.mul(c1, c2))
    return {e: c for e, c in out.items() if c != 0}


def _compose_matrix(spec: FieldSpec, a, monos) -> list[list[int]]:
    """M with (g o A)_i = sum_j M[i][j] g_j, for A acting by x_i -> sum A[i][j] x_j."""
    rows = []
    for i in range(3):
        row = {}
        for j, e in enumerate(((1, 0, 0), (0, 1, 0), (0, 0, 1))):
            if a[i][j] != 0:
                row[e] = a[i][j]
        rows.append(row)
    index = {e: i for i, e in enumerate(monos)}
    mat = [[0] * len(monos) for _ in range(len(monos))]
    for j, exps in enumerate(monos):
        poly = {(0, 0, 0): 1}
        for var in range(3):
            for _ in range(exps[var]):
                poly = _poly_mul(spec, poly, rows[var])
        for e, c in poly.items():
            mat[index[e]][j] = c
    return mat


@lru_cache(maxsize=None)
def _gl3(spec: FieldSpec) -> tuple:
    """All invertible 3x3 matrices over the prime field (k = 1 only)."""
    assert spec.k == 1
    p = spec.p
    mats = []
    for flat in product(range(p), repeat=9):
        m = (flat[0:3], flat[3:6], flat[6:9])
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        ) % p
        if det != 0:
            mats.append(m)
    return tuple(mats)


# --- plane-point tables ------------------------------------------------------

def _plane_tables(spec: FieldSpec):
    """Per P in P^2: chart index, g2/g4 monomial values, partial values."""
    pts = projective_points(spec, 2)
    tables = []
    for pt in pts:
        chart = next(i for i in range(3) if pt[i] != 0)
        others = [u for u in range(3) if u != chart]
        m2 = tuple(_mono_val(spec, e, pt) for e in G2_MONOMIALS)
        m4 = tuple(_mono_val(spec, e, pt) for e in G4_MONOMIALS)
        d2 = {u: tuple(_dmono_val(spec, e, u, pt) for e in G2_MONOMIALS) for u in others}
        d4 = {u: tuple(_dmono_val(spec, e, u, pt) for e in G4_MONOMIALS) for u in others}
        tables.append((pt, chart, others, m2, m4, d2, d4))
    return tables


def _mono_val(spec: FieldSpec, exps, pt) -> int:
    v = 1
    for x, e in zip(pt, exps):
        for _ in range(e):
            v = spec.mul_table[v][x]
    return v


def _dmono_val(spec: FieldSpec, exps, var, pt) -> int:
    e = exps[var]
    if e % spec.p == 0:
        return 0
    v = e % spec.p
    for i, (x, ei) in enumerate(zip(pt, exps)):
        if i == var:
            ei -= 1
        for _ in range(ei):
            v = spec.mul_table[v][x]
    return v


# --- q = 2 sweep --------------------------------------------------------------

def _pack_mask(vals) -> int:
    m = 0
    for v in vals:
        m = (m << 1) | (v & 1)
    return m


@lru_cache(maxsize=1)
def _parity15() -> np.ndarray:
    n4 = 1 << 15
    axis = np.arange(n4, dtype=np.uint32)
    parity = np.zeros(n4, dtype=np.uint8)
    for b in range(15):
        parity ^= (axis >> b).astype(np.uint8) & 1
    return parity


def _sweep_q2_slice(
    g2_bits: tuple[int, ...], use_prefilter: bool
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    spec = field(2)
    tables = _plane_tables(spec)
    parity = _parity15()
    n4 = 1 << 15
    g4_axis = np.arange(n4, dtype=np.uint32)
    zero_pts = []   # P with a_P = 0: carries one w-root, needs the singular test
    one_pts = []    # P with a_P = 1: roots iff b_P = 0 and they are smooth
    for row in tables:
        a = bin(_pack_mask(g2_bits) & _pack_mask(row[3])).count("1") & 1
        (one_pts if a else zero_pts).append(row)
    if not zero_pts:
        return []   # no surface in this slice has a point that could be singular
    keep = np.ones(n4, dtype=bool)
    if use_prefilter:
        # #B = #X screen: no Artin-Schreier root pair at any a_P = 1 point
        for row in one_pts:
            keep &= parity[g4_axis & _pack_mask(row[4])] == 1
        one_pts = []
    for row in one_pts:
        keep &= parity[g4_axis & _pack_mask(row[4])] == 1
    for pt, chart, others, m2, m4, d2, d4 in zero_pts:
        b = parity[g4_axis & _pack_mask(m4)]
        for u in others:
            hd2 = sum(x & y for x, y in zip(g2_bits, d2[u])) & 1
            cond = (b & hd2) ^ parity[g4_axis & _pack_mask(d4[u])]
            keep &= cond == 0
    out = []
    for g4_int in np.nonzero(keep)[0]:
        g4_bits = tuple((int(g4_int) >> (14 - j)) & 1 for j in range(15))
        out.append((g2_bits, g4_bits))
    return out


def _sweep_q2(
    use_prefilter: bool, threads: int = 1
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    slices = list(product((0, 1), repeat=6))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = pool.map(
                lambda g2: _sweep_q2_slice(g2, use_prefilter), slices
            )
            out = [pair for chunk in chunks for pair in chunk]
    else:
        out = [
            pair for g2 in slices for pair in _sweep_q2_slice(g2, use_prefilter)
        ]
    return out


# --- q = 3 sweep (reduced family) ---------------------------------------------

def _linear_values_mod3(weights: list[int]) -> np.ndarray:
    """Array over all c in F_3^15 (index = sum digit_j * 3^j) of dot(c, weights) mod 3."""
    arr = np.zeros(1, dtype=np.uint8)
    digit = np.arange(3, dtype=np.uint8)
    for w in weights:
        contrib = (digit * (w % 3)) % 3
        arr = (contrib[:, None] + arr[None, :]).reshape(-1) % 3
    return arr


def _sweep_q3() -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    spec = field(3)
    tables = _plane_tables(spec)
    n = 3**15
    keep = np.ones(n, dtype=bool)
    have = np.zeros(n, dtype=bool)
    for pt, chart, others, m2, m4, d2, d4 in tables:
        v = _linear_values_mod3(list(m4))
        # -v a nonzero square (i.e. v == 2 since -1 = 2, squares* = {1}): smooth pair
        keep &= v != 2
        at0 = v == 0
        for u in others:
            dv = _linear_values_mod3(list(d4[u]))
            keep &= ~(at0 & (dv != 0))
        have |= at0
    keep &= have
    out = []
    for idx in np.nonzero(keep)[0]:
        rem = int(idx)
        digits = []
        for _ in range(15):
            digits.append(rem % 3)
            rem //= 3
        out.append(((0,) * 6, tuple(digits)))
    return out


# --- dedup ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def _transform_tables(spec: FieldSpec):
    """(rho2, rho4) composition matrices for every A in GL_3."""
    mats = _gl3(spec)
    rho2 = [np.array(_compose_matrix(spec, a, G2_MONOMIALS), dtype=np.int64) for a in mats]
    rho4 = [np.array(_compose_matrix(spec, a, G4_MONOMIALS), dtype=np.int64) for a in mats]
    return mats, rho2, rho4


def _orbit_images_q2(g2, g4):
    """All (g2', g4') images under GL_3(F_2) x w-shifts, as an iterator."""
    spec = field(2)
    _, rho2, rho4 = _transform_tables(spec)
    g2v = np.array(g2, dtype=np.int64)
    g4v = np.array(g4, dtype=np.int64)
    quads = list(product((0, 1), repeat=6))
    for r2, r4 in zip(rho2, rho4):
        g2p = tuple(int(x) for x in (r2 @ g2v) % 2)
        g4p = (r4 @ g4v) % 2
        for h in quads:
            shifted = g4p.copy()
            _xor_wshift_q2(shifted, h, g2p)
            yield g2p, tuple(int(x) for x in shifted)


def _xor_wshift_q2(g4_vec: np.ndarray, h, g2p) -> None:
    """g4 += h^2 + h*g2' over F_2, in place on a 15-long 0/1 vector."""
    spec = field(2)
    extra = _quartic_of_shift(spec, tuple(h), tuple(g2p))
    g4_vec += np.array(extra, dtype=np.int64)
    g4_vec %= 2


@lru_cache(maxsize=None)
def _quartic_of_shift(spec: FieldSpec, h: tuple, g2: tuple) -> tuple:
    """Coefficients of h^2 + h*g2 (odd q: 2*h*... not used; char 2 only here)."""
    hd = {e: c for e, c in zip(G2_MONOMIALS, h) if c}
    gd = {e: c for e, c in zip(G2_MONOMIALS, g2) if c}
    prod = _poly_mul(spec, hd, hd)
    cross = _poly_mul(spec, hd, gd)
    for e, c in cross.items():
        prod[e] = spec.add(prod.get(e, 0), c)
    return tuple(prod.get(e, 0) for e in G4_MONOMIALS)


def canonical_form(spec: FieldSpec, g2, g4) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically least (g2, g4) in the admissible-substitution orbit."""
    if spec.q == 2:
        best = (tuple(g2), tuple(g4))
        for img in _orbit_images_q2(g2, g4):
            if img < best:
                best = img
        return best
    if spec.q == 3:
        if any(g2):
            raise ValueError("q = 3 canonical form expects the reduced family g2 = 0")
        _, _, rho4 = _transform_tables(spec)
        g4v = np.array(g4, dtype=np.int64)
        best = tuple(g4)
        for r4 in rho4:
            img = tuple(int(x) for x in (r4 @ g4v) % 3)
            if img < best:
                best = img
        return (tuple(g2), best)
    raise ValueError(f"no canonicalization for q = {spec.q}")


def _generator_images(spec: FieldSpec, pair):
    """Images of (g2, g4) under a generating set of the transform group.

    Enough to walk out an orbit by closure; the census is invariant under
    the whole group, so components of the census under these edges are
    exactly the orbits.
    """
    g2, g4 = pair
    mats, rho2, rho4 = _transform_tables(spec)
    g2v = np.array(g2, dtype=np.int64)
    g4v = np.array(g4, dtype=np.int64)
    gens = _gl3_generator_indices(spec)
    p = spec.p
    for gi in gens:
        a = tuple(int(x) % p for x in (rho2[gi] @ g2v))
        b = tuple(int(x) % p for x in (rho4[gi] @ g4v))
        yield (a, b)
    if spec.q == 2:
        for hbit in range(6):
            h = tuple(1 if i == hbit else 0 for i in range(6))
            extra = _quartic_of_shift(spec, h, tuple(g2))
            yield (tuple(g2), tuple((x + y) % 2 for x, y in zip(g4, extra)))


@lru_cache(maxsize=None)
def _gl3_generator_indices(spec: FieldSpec) -> tuple[int, ...]:
    """Indices into _gl3(spec) of a generating set (a transvection, a cyclic
    permutation, and a scalar by a primitive root when p > 2)."""
    mats = _gl3(spec)
    p = spec.p
    wanted = [
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
        ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
    ]
    if p > 2:
        g = next(x for x in range(2, p) if _mult_order(x, p) == p - 1)
        wanted.append(((g, 0, 0), (0, 1, 0), (0, 0, 1)))
    idx = {m: i for i, m in enumerate(mats)}
    reached = {wanted[0]}
    frontier = [wanted[0]]
    while frontier:
        m = frontier.pop()
        for w in wanted:
            nm = _matmul3(m, w, p)
            if nm not in reached:
                reached.add(nm)
                frontier.append(nm)
    if len(reached) != len(mats):
        raise AssertionError("generator set does not span the matrix group")
    return tuple(idx[w] for w in wanted)


def _matmul3(a, b, p: int):
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(3)) % p for j in range(3))
        for i in range(3)
    )


def _mult_order(x: int, p: int) -> int:
    v, n = x % p, 1
    while v != 1:
        v = (v * x) % p
        n += 1
    return n


def _dedup_census(spec: FieldSpec, pairs: list) -> list:
    """Keep the lex-least member of each transform orbit inside the census."""
    pool = set(pairs)
    parent = {pr: pr for pr in pairs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pr in pairs:
        for img in _generator_images(spec, pr):
            if img not in pool:
                raise AssertionError(
                    f"census not closed under transforms: {pr} -> {img}"
                )
            ra, rb = find(pr), find(img)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    reps = {}
    for pr in pairs:
        r = find(pr)
        if r not in reps or pr < reps[r]:
            reps[r] = pr
    return sorted(reps.values())


# --- main entry -----------------------------------------------------------------

def hunt(
    spec: FieldSpec,
    use_prefilter: bool = False,
    dedup: bool = False,
    threads: int = 1,
) -> list[CensusEntry]:
    """Census of surfaces over F_q with >= 1 rational point, all singular."""
    if spec.q == 2:
        pairs = _sweep_q2(use_prefilter, threads=threads)
    elif spec.q == 3:
        pairs = _sweep_q3()
    elif spec.q == 4:
        raise ValueError(
            "q = 4 needs a 4^21 coefficient sweep; not supported at desk scale"
        )
    else:
        raise ValueError(f"unsupported field size {spec.q} (use q in {{2, 3}})")
    pairs.sort()
    if dedup:
        pairs = _dedup_census(spec, pairs)
    entries = []
    for g2, g4 in pairs:
        s = DegreeTwoSurface(spec=spec, g2=g2, g4=g4)
        rep = surface_report(s)
        if not rep.points or rep.smooth:
            raise AssertionError(
                f"sweep produced a non-census surface g2={g2} g4={g4}"
            )
        entries.append(
            CensusEntry(
                surface=s,
                report=rep,
                branch_count=_branch_count(s),
                orbit_canonical=dedup,
            )
        )
    return entries


def _branch_count(s: DegreeTwoSurface) -> int:
    spec = s.spec
    if spec.p == 2:
        coeffs, monos = s.g2, G2_MONOMIALS
    else:
        coeffs, monos = s.g4, G4_MONOMIALS
    if not any(coeffs):
        return spec.q**2 + spec.q + 1
    return len(plane_curve_points(spec, coeffs, monos))


def consistency_match(
    entry: CensusEntry, entries: tuple[cat.SingularityClass, ...] | None = None
) -> list[tuple[str, traces.TraceProfile]]:
    """Degree-2 classes with a profile matching (#points, #singular) at this q."""
    if entries is None:
        entries = tuple(c for c in cat.builtin_catalog() if c.degree == 2)
    q = entry.surface.spec.q
    npts = len(entry.report.points)
    nsing = len(entry.report.singular)
    out = []
    for cls in entries:
        for p in traces.all_profiles(cls):
            if traces.point_count(p, q) == npts and p.delta == nsing:
                out.append((cls.label, p))
    return out


# --- census files ----------------------------------------------------------------

def census_header(spec: FieldSpec) -> dict:
    return {
        "field": {"p": spec.p, "k": spec.k, "modulus": spec.modulus_coeffs() or None},
        "version": __version__,
    }


def entry_to_json(entry: CensusEntry) -> dict:
    return {
        "g2": list(entry.surface.g2),
        "g4": list(entry.surface.g4),
        "points": [list(pt) for pt in entry.report.points],
        "n_points": len(entry.report.points),
        "n_singular": len(entry.report.singular),
        "branch_count": entry.branch_count,
        "canonical": entry.orbit_canonical,
        "flagged": entry.flagged,
    }


def write_census(path: str, spec: FieldSpec, entries: list[CensusEntry]) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps(census_header(spec)) + "\n")
        for e in entries:
            fh.write(json.dumps(entry_to_json(e)) + "\n")


# --- conjugate conics over F_3 -----------------------------------------------------

@dataclass(frozen=True)
class ConicPair:
    coeffs: tuple[int, int, int]       # (xy, xz, yz) coefficients over F_9
    conjugate: tuple[int, int, int]
    witness: tuple[int, int, int] | None
    norm_value: int | None


@dataclass(frozen=True)
class ConicScanReport:
    pencil_size: int
    rational_members: int
    pairs: tuple[ConicPair, ...]


def conic_pair_scan() -> ConicScanReport:
    """Pencil of conics through the standard frame over F_9, conjugate pairs,
    and smooth-point witnesses in P^2(F_3).

    The frame (1:0:0), (0:1:0), (0:0:1), (1:1:1) kills the square terms and
    forces b + c + e = 0 on C = b*xy + c*xz + e*yz, so the pencil is a P^1
    over F_9 with q^2 + 1 = 10 members; 4 are defined over F_3 and the other
    6 fall into 3 Frobenius-conjugate pairs.  A witness for a pair (C, C^phi)
    is a rational plane point P with Norm(C(P)) a nonzero square of F_3.
    """
    f9 = field(3, 2)
    members = [(1, c) for c in f9.elements()] + [(0, 1)]
    conics = []
    for b, c in members:
        e = f9.neg(f9.add(b, c))
        conics.append((b, c, e))
    rational = [t for t in conics if all(x < 3 for x in t)]
    others = [t for t in conics if t not in rational]
    pairs = []
    seen = set()
    for t in others:
        if t in seen:
            continue
        conj = tuple(f9.frobenius(x) for x in t)
        if conj == t or conj not in others:
            raise AssertionError(f"pencil member {t} has no conjugate partner")
        seen.add(t)
        seen.add(conj)
        witness, normval = None, None
        for pt in projective_points(field(3), 2):
            val = _conic_eval(f9, t, pt)
            n = f9.norm(val)
            if n != 0 and field(3).is_square(n):
                witness, normval = pt, n
                break
        pairs.append(
            ConicPair(coeffs=t, conjugate=conj, witness=witness, norm_value=normval)
        )
    return ConicScanReport(
        pencil_size=len(conics), rational_members=len(rational), pairs=tuple(pairs)
    )


def _conic_eval(f9: FieldSpec, bce, pt) -> int:
    x, y, z = pt  # F_3 coords embed as constant-coefficient elements of F_9
    b, c, e = bce
    v = f9.mul(b, f9.mul(x, y))
    v = f9.add(v, f9.mul(c, f9.mul(x, z)))
    return f9.add(v, f9.mul(e, f9.mul(y, z)))
