"""Point counting for degree-2 del Pezzo models and small projective schemes.

A degree-2 surface is F = w^2 + w*G2(x,y,z) + G4(x,y,z) inside the weighted
projective space P(1,1,1,2).  Points are normalized so the first nonzero of
(x,y,z) is 1, plus the distinguished (0,0,0,1) which never lies on X (F = 1
there).  Singularity at a point is the chart Jacobian test: with the chart
coordinate scaled to 1, the three remaining partials must vanish (the Euler
relation makes the verdict chart-independent, degree-12 checks assert it).

Also here: plane curve point lists, the odd-characteristic classification of
quadrics in P^3 with brute-force count cross-check, and counts for
intersections of two quadrics in P^4 (the degree-4 del Pezzo bound).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .fields import FieldSpec, field

Point = tuple[int, ...]
Form = tuple[int, ...]


def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of the given total degree, graded-lex, first var biggest."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


G2_MONOMIALS = monomials(3, 2)  # x^2, xy, xz, y^2, yz, z^2
G4_MONOMIALS = monomials(3, 4)  # x^4, x^3y, ... , z^4
Q5_MONOMIALS = monomials(5, 2)  # quadratic monomials in x0..x4


def eval_form(spec: FieldSpec, coeffs: Form, monos, pt: Point) -> int:
    total = 0
    for c, exps in zip(coeffs, monos):
        if c == 0:
            continue
        term = c
        for v, e in zip(pt, exps):
            for _ in range(e):
                term = spec.mul_table[term][v]
        total = spec.add_table[total][term]
    return total


def eval_partial(spec: FieldSpec, coeffs: Form, monos, var: int, pt: Point) -> int:
    """Value of the formal partial derivative d/d(var) at pt."""
    total = 0
    for c, exps in zip(coeffs, monos):
        e = exps[var]
        if c == 0 or e % spec.p == 0:
            continue
        term = spec.mul_table[c][e % spec.p]
        for i, (v, ei) in enumerate(zip(pt, exps)):
            if i == var:
                ei -= 1
            for _ in range(ei):
                term = spec.mul_table[term][v]
        total = spec.add_table[total][term]
    return total


def projective_points(spec: FieldSpec, n: int) -> list[Point]:
    """Normalized representatives of P^n(F_q): first nonzero coordinate is 1."""
    pts: list[Point] = []
    for lead in range(n + 1):
        prefix = (0,) * lead + (1,)
        for tail in product(spec.elements(), repeat=n - lead):
            pts.append(prefix + tail)
    return pts


def wps_points(spec: FieldSpec) -> list[Point]:
    """Normalized points of P(1,1,1,2): q^3 + q^2 + q + 1 of them."""
    pts: list[Point] = []
    for lead in range(3):
        prefix = (0,) * lead + (1,)
        for tail in product(spec.elements(), repeat=2 - lead):
            for w in spec.elements():
                pts.append(prefix + tail + (w,))
    pts.append((0, 0, 0, 1))
    return pts


@dataclass(frozen=True)
class DegreeTwoSurface:
    spec: FieldSpec
    g2: Form
    g4: Form

    def __post_init__(self) -> None:
        if len(self.g2) != 6 or len(self.g4) != 15:
            raise ValueError("g2 needs 6 coefficients and g4 needs 15")
        if any(not 0 <= c < self.spec.q for c in self.g2 + self.g4):
            raise ValueError("coefficients must be field element indices")


def evaluate(s: DegreeTwoSurface, pt: Point) -> int:
    """F = w^2 + w*G2 + G4 at a normalized point."""
    spec = s.spec
    xyz, w = pt[:3], pt[3]
    val = spec.mul_table[w][w]
    g2v = eval_form(spec, s.g2, G2_MONOMIALS, xyz)
    val = spec.add_table[val][spec.mul_table[w][g2v]]
    return spec.add_table[val][eval_form(spec, s.g4, G4_MONOMIALS, xyz)]


def is_singular_point(s: DegreeTwoSurface, pt: Point) -> bool:
    """Chart Jacobian test at a point of X (pt must satisfy F = 0).

    Chart = first nonzero of (x,y,z); the partials with respect to the other
    two plane coordinates and w must all vanish.  dF/dw = 2w + G2, which in
    characteristic 2 degenerates to G2.
    """
    spec = s.spec
    xyz, w = pt[:3], pt[3]
    chart = next(i for i in range(3) if xyz[i] != 0)
    two_w = spec.mul_table[spec.from_coeffs(2)][w]
    g2v = eval_form(spec, s.g2, G2_MONOMIALS, xyz)
    if spec.add_table[two_w][g2v] != 0:
        return False
    for u in range(3):
        if u == chart:
            continue
        d = spec.mul_table[w][eval_partial(spec, s.g2, G2_MONOMIALS, u, xyz)]
        d = spec.add_table[d][eval_partial(spec, s.g4, G4_MONOMIALS, u, xyz)]
        if d != 0:
            return False
    return True


@dataclass(frozen=True)
class SurfaceReport:
    points: tuple[Point, ...]
    singular: tuple[Point, ...]
    smooth: tuple[Point, ...]


def surface_report(s: DegreeTwoSurface) -> SurfaceReport:
    points, singular, smooth = [], [], []
    for pt in wps_points(s.spec):
        if evaluate(s, pt) != 0:
            continue
        points.append(pt)
        (singular if is_singular_point(s, pt) else smooth).append(pt)
    return SurfaceReport(tuple(points), tuple(singular), tuple(smooth))


def surface_to_json(s: DegreeTwoSurface) -> dict:
    spec = s.spec
    return {
        "p": spec.p,
        "k": spec.k,
        "modulus": spec.modulus_coeffs() or None,
        "g2": list(s.g2),
        "g4": list(s.g4),
    }


def surface_from_json(d: dict) -> DegreeTwoSurface:
    modulus = d.get("modulus")
    spec = field(d["p"], d.get("k", 1), tuple(modulus) if modulus else None)
    return DegreeTwoSurface(spec=spec, g2=tuple(d["g2"]), g4=tuple(d["g4"]))


def load_surface(path: str) -> DegreeTwoSurface:
    with open(path) as fh:
        return surface_from_json(json.load(fh))


def plane_curve_points(spec: FieldSpec, coeffs: Form, monos) -> list[Point]:
    """Points of V(f) in P^2(F_q) for a homogeneous ternary form."""
    if all(c == 0 for c in coeffs):
        raise ValueError("zero polynomial does not cut a curve")
    return [
        pt for pt in projective_points(spec, 2)
        if eval_form(spec, coeffs, monos, pt) == 0
    ]


# --- quadrics in P^3 --------------------------------------------------------

QUADRIC_COUNTS = {
    "repeated_plane": lambda q: q * q + q + 1,
    "plane_pair": lambda q: 2 * q * q + q + 1,
    "line": lambda q: q + 1,
    "cone": lambda q: q * q + q + 1,
    "hyperbolic": lambda q: (q + 1) ** 2,
    "elliptic": lambda q: q * q + 1,
}


@dataclass(frozen=True)
class QuadricReport:
    rank: int
    kind: str
    count: int


def _symmetric_eval(spec: FieldSpec, m, pt: Point) -> int:
    total = 0
    n = len(pt)
    for i in range(n):
        row = 0
        for j in range(n):
            row = spec.add_table[row][spec.mul_table[m[i][j]][pt[j]]]
        total = spec.add_table[total][spec.mul_table[pt[i]][row]]
    return total


def _congruence_diagonal(spec: FieldSpec, m) -> list[int]:
    """Diagonal of a congruent diagonal matrix (odd characteristic)."""
    n = len(m)
    a = [[m[i][j] for j in range(n)] for i in range(n)]
    half = spec.inv(spec.from_coeffs(2))

    def add_row_col(i: int, j: int, c: int) -> None:
        # row_i += c*row_j, then col_i += c*col_j
        for t in range(n):
            a[i][t] = spec.add_table[a[i][t]][spec.mul_table[c][a[j][t]]]
        for t in range(n):
            a[t][i] = spec.add_table[a[t][i]][spec.mul_table[c][a[t][j]]]

    diag = []
    for piv in range(n):
        if a[piv][piv] == 0:
            swap = next(
                (i for i in range(piv + 1, n) if a[i][i] != 0), None
            )
            if swap is not None:
                a[piv], a[swap] = a[swap], a[piv]
                for t in range(n):
                    a[t][piv], a[t][swap] = a[t][swap], a[t][piv]
            else:
                off = next(
                    (i for i in range(piv + 1, n) if a[piv][i] != 0), None
                )
                if off is None:
                    diag.append(0)
                    continue
                add_row_col(piv, off, 1)
        d = a[piv][piv]
        diag.append(d)
        if d == 0:
            continue
        dinv = spec.inv(d)
        for i in range(piv + 1, n):
            if a[i][piv] != 0:
                c = spec.neg(spec.mul_table[a[i][piv]][dinv])
                add_row_col(i, piv, c)
    return diag


def quadric_report(spec: FieldSpec, matrix) -> QuadricReport:
    """Classify a quadric surface in P^3 over odd F_q and brute-check its count."""
    if spec.p == 2:
        raise ValueError("quadric classification is for odd characteristic")
    m = [[int(x) % spec.p if spec.k == 1 else int(x) for x in row] for row in matrix]
    if len(m) != 4 or any(len(r) != 4 for r in m):
        raise ValueError("need a 4x4 matrix")
    if any(not 0 <= x < spec.q for row in m for x in row):
        raise ValueError("entries must be field element indices")
    if any(m[i][j] != m[j][i] for i in range(4) for j in range(4)):
        raise ValueError("matrix must be symmetric")
    if all(x == 0 for row in m for x in row):
        raise ValueError("zero form does not cut a quadric")
    diag = [d for d in _congruence_diagonal(spec, m) if d != 0]
    rank = len(diag)
    prod = 1
    for d in diag:
        prod = spec.mul_table[prod][d]
    if rank == 1:
        kind = "repeated_plane"
    elif rank == 2:
        kind = "plane_pair" if spec.is_square(spec.neg(prod)) else "line"
    elif rank == 3:
        kind = "cone"
    else:
        kind = "hyperbolic" if spec.is_square(prod) else "elliptic"
    count = sum(
        1 for pt in projective_points(spec, 3) if _symmetric_eval(spec, m, pt) == 0
    )
    want = QUADRIC_COUNTS[kind](spec.q)
    if count != want:
        raise AssertionError(
            f"quadric count {count} disagrees with {kind} "
            f"formula {want} over F_{spec.q}"
        )
    return QuadricReport(rank=rank, kind=kind, count=count)


# --- intersections of two quadrics in P^4 -----------------------------------

def quadric_intersection_count(spec: FieldSpec, form1: Form, form2: Form) -> int:
    """#V(Q1, Q2)(F_q) in P^4; forms are 15 coefficients in Q5_MONOMIALS order."""
    count = 0
    for pt in projective_points(spec, 4):
        if eval_form(spec, form1, Q5_MONOMIALS, pt) == 0 and (
            eval_form(spec, form2, Q5_MONOMIALS, pt) == 0
        ):
            count += 1
    return count


def dp4_normal_form(spec: FieldSpec, g, h) -> tuple[Form, Form]:
    """Build (x0*x1 - g, h) with g, h quadratics in x1..x4 (10 coefficients
    each, Q5 order restricted to monomials without x0).  The point
    (1:0:0:0:0) then lies on the intersection and is singular on it."""
    no_x0 = [i for i, e in enumerate(Q5_MONOMIALS) if e[0] == 0]
    if len(g) != len(no_x0) or len(h) != len(no_x0):
        raise ValueError(f"g and h need {len(no_x0)} coefficients")
    f1 = [0] * len(Q5_MONOMIALS)
    f1[Q5_MONOMIALS.index((1, 1, 0, 0, 0))] = 1
    f2 = [0] * len(Q5_MONOMIALS)
    for c_g, c_h, i in zip(g, h, no_x0):
        f1[i] = spec.neg(c_g)
        f2[i] = c_h
    return tuple(f1), tuple(f2)


def singular_on_intersection(spec: FieldSpec, form1: Form, form2: Form,
                             pt: Point) -> bool:
    """Point lies on both quadrics and the 2x5 Jacobian there has rank <= 1."""
    if eval_form(spec, form1, Q5_MONOMIALS, pt) != 0:
        return False
    if eval_form(spec, form2, Q5_MONOMIALS, pt) != 0:
        return False
    j1 = [eval_partial(spec, form1, Q5_MONOMIALS, v, pt) for v in range(5)]
    j2 = [eval_partial(spec, form2, Q5_MONOMIALS, v, pt) for v in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            det = spec.sub(
                spec.mul_table[j1[i]][j2[j]], spec.mul_table[j1[j]][j2[i]]
            )
            if det != 0:
                return False
    return True
