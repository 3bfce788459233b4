from __future__ import annotations

import random

import pytest

from delpezzo.fields import SUPPORTED_PRIMES, FieldSpec, field

ALL_SPECS = [field(p, k) for p in SUPPORTED_PRIMES for k in (1, 2)]


def triples(spec, rng, cap=3000):
    q = spec.q
    if q**3 <= cap:
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    yield a, b, c
    else:
        for _ in range(cap):
            yield rng.randrange(q), rng.randrange(q), rng.randrange(q)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"F{s.q}")
def test_ring_axioms(spec):
    rng = random.Random(spec.q)
    for a, b, c in triples(spec, rng):
        assert spec.add(a, b) == spec.add(b, a)
        assert spec.mul(a, b) == spec.mul(b, a)
        assert spec.add(spec.add(a, b), c) == spec.add(a, spec.add(b, c))
        assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
        assert spec.mul(a, spec.add(b, c)) == spec.add(spec.mul(a, b), spec.mul(a, c))


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"F{s.q}")
def test_units_and_inverses(spec):
    for a in spec.elements():
        assert spec.add(a, 0) == a
        assert spec.mul(a, 1) == a
        assert spec.add(a, spec.neg(a)) == 0
        if a != 0:
            assert spec.mul(a, spec.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        spec.inv(0)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"F{s.q}")
def test_frobenius(spec):
    for a in spec.elements():
        assert spec.frobenius(a) == spec.pow_(a, spec.p)
        for b in spec.elements():
            if spec.q > 9 and (a * 31 + b) % 7:
                continue
            assert spec.frobenius(spec.add(a, b)) == spec.add(
                spec.frobenius(a), spec.frobenius(b)
            )
    if spec.k == 2:
        for a in spec.elements():
            assert spec.frobenius(spec.frobenius(a)) == a
        fixed = [a for a in spec.elements() if spec.frobenius(a) == a]
        assert len(fixed) == spec.p
    else:
        assert all(spec.frobenius(a) == a for a in spec.elements())


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"F{s.q}")
def test_norm_lands_in_prime_field(spec):
    for a in spec.elements():
        n = spec.norm(a)
        assert 0 <= n < spec.p
        if a != 0:
            assert n != 0
    for a in spec.elements():
        for b in spec.elements():
            if spec.q > 9 and (a * 13 + b) % 5:
                continue
            assert spec.norm(spec.mul(a, b)) == (spec.norm(a) * spec.norm(b)) % spec.p


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"F{s.q}")
def test_square_counts(spec):
    squares = [a for a in spec.elements() if spec.is_square(a)]
    if spec.p == 2:
        assert len(squares) == spec.q
    else:
        assert len(squares) == (spec.q + 1) // 2


def test_coeff_encoding():
    f9 = field(3, 2)
    for a in f9.elements():
        c0, c1 = f9.coeffs(a)
        assert f9.from_coeffs(c0, c1) == a
        assert a == c0 + 3 * c1


def test_f9_arithmetic_facts():
    f9 = field(3, 2)
    x = 3  # the generator, coeffs (0, 1)
    assert f9.mul(x, x) == f9.add(x, 1)  # x^2 = x + 1
    assert f9.frobenius(x) == f9.pow_(x, 3)


def test_f4_all_elements_square():
    f4 = field(2, 2)
    assert all(f4.is_square(a) for a in f4.elements())
    assert f4.add(1, 1) == 0


def test_default_moduli():
    assert field(3, 2).modulus_coeffs() == [2, 2, 1]   # x^2 - x - 1
    assert field(2, 2).modulus_coeffs() == [1, 1, 1]   # x^2 + x + 1
    assert field(5, 2).modulus_coeffs() == [3, 0, 1]   # x^2 - 2
    assert field(7, 2).modulus_coeffs() == [4, 0, 1]   # x^2 - 3
    assert field(3).modulus_coeffs() == []


def test_custom_modulus():
    f9 = field(3, 2, (1, 0, 1))   # x^2 + 1, irreducible mod 3
    x = 3
    assert f9.mul(x, x) == f9.neg(1)


def test_bad_parameters():
    with pytest.raises(ValueError):
        FieldSpec(11)
    with pytest.raises(ValueError):
        FieldSpec(3, 1, (1, 0, 1))   # modulus only makes sense at k = 2
    with pytest.raises(ValueError):
        FieldSpec(3, 2, (2, 0, 1))   # x^2 - 1 splits
    with pytest.raises(ValueError):
        FieldSpec(3, 3)


def test_specs_cached_and_hashable():
    assert field(3, 2) is field(3, 2)
    assert field(3) != field(3, 2)
    assert len({field(2), field(2, 2), field(3)}) == 3
