"""Exact arithmetic in small finite fields F_{p^k}, p in {2,3,5,7}, k in {1,2}.

Elements are plain ints 0..q-1: the element a + b*x (x the residue of the
modulus variable) is encoded as a + b*p.  All operations are table lookups
built once per FieldSpec, so inner loops stay branch-free.  Default moduli
are fixed so output files are bit-reproducible:

    F_4:  x^2 + x + 1
    F_9:  x^2 - x - 1
    F_25: x^2 - 2
    F_49: x^2 - 3

A custom modulus is given as monic coefficient tuple (c0, c1, 1) meaning
c0 + c1*x + x^2 and is checked for irreducibility by exhaustive root search.
"""

from __future__ import annotations

from functools import lru_cache

SUPPORTED_PRIMES = (2, 3, 5, 7)

# x^2 = a + b*x in the default model, i.e. modulus x^2 - b*x - a
_DEFAULT_SQUARE = {2: (1, 1), 3: (1, 1), 5: (2, 0), 7: (3, 0)}


class FieldSpec:
    """Tables for one finite field; elements are ints < q."""

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported characteristic {p}")
        if k not in (1, 2):
            raise ValueError(f"unsupported extension degree {k}")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            if modulus is not None:
                raise ValueError("modulus only applies to k = 2")
            self._square = None
        else:
            if modulus is None:
                self._square = _DEFAULT_SQUARE[p]
            else:
                modulus = tuple(x % p for x in modulus[:-1]) + (modulus[-1],)
                if len(modulus) != 3 or modulus[2] != 1:
                    raise ValueError("modulus must be monic of degree 2")
                if any((r * r + modulus[1] * r + modulus[0]) % p == 0 for r in range(p)):
                    raise ValueError(f"modulus {modulus} is reducible over F_{p}")
                self._square = ((-modulus[0]) % p, (-modulus[1]) % p)
        self._build_tables()

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for e1 in range(q):
            a1, b1 = e1 % p, e1 // p
            for e2 in range(q):
                a2, b2 = e2 % p, e2 // p
                add[e1][e2] = (a1 + a2) % p + ((b1 + b2) % p) * p
                if self.k == 1:
                    mul[e1][e2] = (e1 * e2) % p
                else:
                    c0, c1 = self._square
                    hi = b1 * b2
                    a = (a1 * a2 + hi * c0) % p
                    b = (a1 * b2 + a2 * b1 + hi * c1) % p
                    mul[e1][e2] = a + b * p
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        neg = [0] * q
        for e in range(q):
            a, b = e % p, e // p
            neg[e] = (-a) % p + ((-b) % p) * p
        self.neg_table = tuple(neg)
        inv = [0] * q
        for e in range(1, q):
            inv[e] = next(f for f in range(1, q) if mul[e][f] == 1)
        self.inv_table = tuple(inv)
        self.frob_table = tuple(self.pow_(e, p) for e in range(q))
        self.square_set = frozenset(mul[e][e] for e in range(q))

    # --- element ops ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow_(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        out = 1
        while n:
            if n & 1:
                out = self.mul_table[out][a]
            a = self.mul_table[a][a]
            n >>= 1
        return out

    def frobenius(self, a: int) -> int:
        return self.frob_table[a]

    def norm(self, a: int) -> int:
        """Norm down to F_p (identity for k = 1); result is an int < p."""
        if self.k == 1:
            return a
        n = self.mul_table[a][self.frob_table[a]]
        assert n < self.p, f"norm {n} left the base field"
        return n

    def is_square(self, a: int) -> bool:
        return a in self.square_set

    # --- structure --------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, e: int) -> tuple[int, int]:
        return e % self.p, e // self.p

    def from_coeffs(self, a: int, b: int = 0) -> int:
        return a % self.p + (b % self.p) * self.p

    def modulus_coeffs(self) -> list[int]:
        """Monic modulus as [c0, c1, 1], or [] for prime fields."""
        if self.k == 1:
            return []
        c0, c1 = self._square
        return [(-c0) % self.p, (-c1) % self.p, 1]

    def __repr__(self) -> str:
        return f"F_{self.q}"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self._square) == (other.p, other.k, other._square)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self._square))


@lru_cache(maxsize=None)
def field(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    return FieldSpec(p, k, modulus)
