"""Integer lattice I^{1,n} = Z^{n+1} with the form diag(1, -1, ..., -1).

Vectors are plain int tuples (d0, d1, ..., dn) holding coordinates in the
standard basis e0, e1, ..., en.  The anticanonical direction is
k_n = -3 e0 + e1 + ... + en; its orthogonal complement E_n carries the root
system (E_1 empty, E_2 = A1, E_3 = A2+A1, E_4 = A4, E_5 = D5, E_6 = E6,
E_7 = E7).  Roots are the alpha with alpha.alpha = -2 orthogonal to k_n, and
exceptional classes are the v with v.v = v.k_n = -1.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

Vec = tuple[int, ...]

MAX_RANK = 7

# degree n: (number of roots, number of exceptional classes), n = 1..7
ROOT_COUNTS = (0, 2, 8, 20, 40, 72, 126)
EXCEPTIONAL_COUNTS = (1, 3, 6, 10, 16, 27, 56)


def _check_rank(n: int) -> None:
    if not 1 <= n <= MAX_RANK:
        raise ValueError(f"n must lie in 1..{MAX_RANK}, got {n}")


def pair(u: Vec, v: Vec) -> int:
    """Intersection pairing u0*v0 - u1*v1 - ... - un*vn."""
    if len(u) != len(v):
        raise ValueError(f"rank mismatch: {len(u) - 1} vs {len(v) - 1}")
    return u[0] * v[0] - sum(a * b for a, b in zip(u[1:], v[1:]))


def norm(v: Vec) -> int:
    return pair(v, v)


def kvec(n: int) -> Vec:
    """Canonical class k_n = (-3; 1, ..., 1)."""
    _check_rank(n)
    return (-3,) + (1,) * n


def basis_vector(n: int, i: int) -> Vec:
    """e_i as a coordinate tuple in I^{1,n} (i = 0 is the hyperplane slot)."""
    _check_rank(n)
    if not 0 <= i <= n:
        raise ValueError(f"index {i} out of range for n={n}")
    return tuple(1 if j == i else 0 for j in range(n + 1))


def _bounded_scan(n: int, bound: int, k_value: int, self_value: int) -> list[Vec]:
    """All v with |coeffs| <= bound, v.v = self_value and v.k_n = k_value.

    Brute grid scan, vectorized and chunked over d0 so the working set stays
    small even at n = 7, bound = 4.
    """
    width = 2 * bound + 1
    coords = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([coords] * n), indexing="ij")
    tail = np.stack([g.reshape(-1) for g in grids], axis=1)  # width**n rows
    tail_norm = (tail * tail).sum(axis=1)
    tail_sum = tail.sum(axis=1)
    out: list[Vec] = []
    for d0 in range(-bound, bound + 1):
        # v.v = d0^2 - sum(di^2), v.k = -3 d0 - sum(di)
        keep = (d0 * d0 - tail_norm == self_value) & (-3 * d0 - tail_sum == k_value)
        for row in tail[keep]:
            out.append((d0, *(int(x) for x in row)))
    out.sort()
    return out


@lru_cache(maxsize=None)
def enumerate_roots(n: int, bound: int = 3) -> tuple[Vec, ...]:
    """Roots of E_n: alpha.alpha = -2, alpha.k_n = 0, sorted lexicographically.

    A grid scan with |coeff| <= bound is exhaustive for bound >= 3; solutions
    never touch the bound 3 (checked below), so raising the bound cannot add
    vectors.
    """
    _check_rank(n)
    found = _bounded_scan(n, bound, k_value=0, self_value=-2)
    for v in found:
        if max(abs(c) for c in v) >= 3:
            raise AssertionError(f"root enumeration touched the bound: {v}")
    return tuple(found)


@lru_cache(maxsize=None)
def enumerate_exceptional(n: int, bound: int = 3) -> tuple[Vec, ...]:
    """Exceptional classes of I^{1,n}: v.v = v.k_n = -1, sorted lexicographically.

    The only family touching |coeff| = 3 is 3e0 - 2e_i - sum e_j at n = 7;
    anything else at the bound means the scan window was too small.
    """
    _check_rank(n)
    found = _bounded_scan(n, bound, k_value=-1, self_value=-1)
    for v in found:
        if max(abs(c) for c in v) >= 3 and not (v[0] == 3 and min(v) >= -2):
            raise AssertionError(f"exceptional enumeration touched the bound: {v}")
    return tuple(found)


def format_vector(v: Vec) -> str:
    """Text form (d0;d1,...,dn)."""
    return f"({v[0]};{','.join(str(c) for c in v[1:])})"


def parse_vector(text: str) -> Vec:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")) or ";" not in body:
        raise ValueError(f"not a lattice vector literal: {text!r}")
    head, _, rest = body[1:-1].partition(";")
    return (int(head), *(int(p) for p in rest.split(",")))


def lnotation(v: Vec) -> str:
    """Human label for a class: l3, l12 (= l0-l1-l2), l1-l2, l0-l1-l2-l3, ...

    The two-character contraction lij is only used for the conic classes
    e0-ei-ej, matching the usual pictures; everything else renders as a signed
    sum of the li.
    """
    nz = [(i, c) for i, c in enumerate(v) if c]
    if len(nz) == 1 and nz[0][1] == 1 and nz[0][0] >= 1:
        return f"l{nz[0][0]}"
    if (
        len(nz) == 3
        and nz[0] == (0, 1)
        and nz[1][1] == -1
        and nz[2][1] == -1
    ):
        return f"l{nz[1][0]}{nz[2][0]}"
    parts: list[str] = []
    for i, c in nz:
        mag = abs(c)
        term = f"l{i}" if mag == 1 else f"{mag}l{i}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+{term}" if c > 0 else f"-{term}")
    return "".join(parts)
