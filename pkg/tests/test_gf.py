import itertools

import pytest
from hypothesis import given, strategies as st

from agshare.gf import Field, FieldElement, default_modulus, field_new, is_irreducible

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]


def poly_mulmod(a, b, mod, p):
    """Schoolbook product of coefficient lists, reduced by a monic modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    d = len(mod) - 1
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c:
            for j in range(d + 1):
                out[i - d + j] = (out[i - d + j] - c * mod[j]) % p
    return (out + [0] * d)[:d]


def encode(coeffs, p):
    return sum(c * p ** i for i, c in enumerate(coeffs))


def decode(v, p, k):
    return [(v // p ** i) % p for i in range(k)]


def test_prime_field_has_no_modulus_needed():
    F = field_new(7)
    assert F.q == 7 and F.k == 1
    assert [int(e) for e in F.elements()] == list(range(7))


def test_gf4_and_gf8_default_moduli():
    assert default_modulus(2, 2) == (1, 1, 1)        # w^2 + w + 1
    assert default_modulus(2, 3) == (1, 1, 0, 1)     # t^3 + t + 1


def test_gf8_modulus_has_no_root():
    mod = [1, 1, 0, 1]
    assert all(sum(c * x ** i for i, c in enumerate(mod)) % 2 for x in (0, 1))
    assert is_irreducible(mod, 2)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        Field(2, 2, (1, 0, 1))     # (t + 1)^2


@pytest.mark.parametrize("p,k", [(4, 1), (2, 0), (2, 13)])
def test_bad_parameters(p, k):
    with pytest.raises(ValueError):
        Field(p, k)


def test_worked_products():
    assert field_new(7).mul(3, 5) == 1
    F4 = field_new(2, 2)
    w = F4([0, 1])
    assert w * w == F4([1, 1])
    F8 = field_new(2, 3)
    t = F8([0, 1])
    assert t * t ** 2 == F8([1, 1])


@pytest.mark.parametrize("p,k", SMALL)
def test_tables_match_schoolbook_oracle(p, k):
    F = field_new(p, k)
    mod = list(F.modulus)
    for a, b in itertools.product(range(F.q), repeat=2):
        ca, cb = decode(a, p, k), decode(b, p, k)
        assert F.mul(a, b) == encode(poly_mulmod(ca, cb, mod, p), p)
        assert F.add(a, b) == encode([(x + y) % p for x, y in zip(ca, cb)], p)


@pytest.mark.parametrize("p,k", SMALL)
def test_ring_axioms_exhaustive(p, k):
    F = field_new(p, k)
    for a, b, c in itertools.product(range(F.q), repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("p,k", SMALL + [(2, 4), (2, 5), (2, 6), (7, 2)])
def test_fermat(p, k):
    F = field_new(p, k)
    assert all(F.pow(a, F.q - 1) == 1 for a in range(1, F.q))
    assert len({int(e) for e in F.elements()}) == F.q
    assert int(F.elements()[0]) == 0


@given(st.sampled_from(SMALL), st.data())
def test_inverse_and_division(pk, data):
    F = field_new(*pk)
    a = data.draw(st.integers(1, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    assert F.mul(a, F.inv(a)) == 1
    assert F.mul(F.div(b, a), a) == b
    assert F.pow(a, -1) == F.inv(a)
    assert F.add(b, F.neg(b)) == 0
    assert F.sub(b, a) == F.add(b, F.neg(a))


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        field_new(5).inv(0)


def test_cross_field_operations_fail():
    a, b = field_new(5)(1), field_new(7)(1)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(TypeError):
        a * "x"


def test_element_wrapper():
    F = field_new(2, 2)
    x = F(3)
    assert isinstance(x, FieldElement)
    assert x.inverse() * x == F.one()
    assert -x + x == F.zero()
    assert (x / x) == 1
    assert str(F([1, 1])) == "t+1"


def test_serialization_names_modulus():
    assert str(field_new(2, 3)) == "GF(2^3; modulus=[1, 1, 0, 1])"
    assert field_new(7).to_dict() == {"p": 7, "k": 1, "modulus": [0, 1]}
    assert field_new(2, 3) is field_new(2, 3)
