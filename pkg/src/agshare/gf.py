"""Exact arithmetic in small finite fields GF(p^k).

Elements are stored as integers 0 <= v < q whose base-p digits are the
coefficients of the polynomial representative (digit i is the coefficient
of t^i).  Integer order is therefore lexicographic order on coefficient
vectors read from the leading coefficient down, with zero first.

Hot loops elsewhere in the package work directly on these integer
encodings through the precomputed tables of a :class:`Field`;
:class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

__all__ = ["Field", "FieldElement", "field_new", "is_prime"]

MAX_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# --- polynomials over GF(p) as coefficient lists, low degree first ---------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _monics(p, d):
    """All monic polynomials of degree d, in increasing integer encoding."""
    for low in itertools.product(range(p), repeat=d):
        yield list(reversed(low)) + [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim([c % p for c in poly])
    d = len(poly) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for f in _monics(p, e):
            if not _poly_mod(poly, f, p):
                return False
    return True


@functools.lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible polynomial of degree k."""
    if k == 1:
        return (0, 1)
    for f in _monics(p, k):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field GF(p^k) with a fixed polynomial basis."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k!r}")
        if p ** k > MAX_ORDER:
            raise ValueError(f"field order {p}^{k} too large (max {MAX_ORDER})")
        if modulus is None:
            modulus = default_modulus(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            modulus = tuple(_trim(modulus))
            if len(modulus) != k + 1:
                raise ValueError(f"modulus must have degree {k}")
            if modulus[-1] != 1:
                inv = pow(modulus[-1], p - 2, p)
                modulus = tuple(c * inv % p for c in modulus)
            if k > 1 and not is_irreducible(modulus, p):
                raise ValueError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        digits = [self._digits(v) for v in range(q)]
        add = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits[a]
            for b in range(q):
                db = digits[b]
                add[a][b] = self._encode([(x + y) % p for x, y in zip(da, db)])
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                r = _poly_mod(prod, self.modulus, p) if k > 1 else [prod[0] % p]
                mul[a][b] = mul[b][a] = self._encode(r)
        neg = [row.index(0) for row in add]
        inv = [0] + [mul[a].index(1) for a in range(1, q)]
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv
        self.add_np = np.array(add, dtype=np.int64)
        self.mul_np = np.array(mul, dtype=np.int64)
        self.neg_np = np.array(neg, dtype=np.int64)

    def _digits(self, v):
        out = []
        for _ in range(self.k):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def _encode(self, coeffs):
        v = 0
        for c in reversed(list(coeffs) + [0] * (self.k - len(coeffs))):
            v = v * self.p + c
        return v

    # --- integer-encoded fast path ---------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul_table[result][a]
            a = self.mul_table[a][a]
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Encoding of the integer n, i.e. n * 1 in the field."""
        return n % self.p

    def dot(self, u, v) -> int:
        add, mul = self.add_table, self.mul_table
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        return acc

    # --- element wrappers ---------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            coeffs = [int(c) % self.p for c in value]
            if len(coeffs) > self.k:
                raise ValueError("too many coefficients")
            return FieldElement(self, self._encode(coeffs))
        value = int(value)
        if not 0 <= value < self.q:
            raise ValueError(f"encoding {value} out of range for {self}")
        return FieldElement(self, value)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list:
        return [FieldElement(self, v) for v in range(self.q)]

    def coefficients(self, v: int) -> list:
        return self._digits(v)

    def format(self, v: int, var: str = "t") -> str:
        if self.k == 1:
            return str(v)
        terms = []
        for i, c in reversed(list(enumerate(self._digits(v)))):
            if not c:
                continue
            mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if c == 1:
                terms.append(mono)
            else:
                terms.append(str(c) if i == 0 else f"{c}*{mono}")
        return "+".join(terms) or "0"

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __str__(self):
        return f"GF({self.p}^{self.k}; modulus={list(self.modulus)})"

    def __repr__(self):
        return f"Field({self.p}, {self.k}, modulus={list(self.modulus)})"

    def to_dict(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


@functools.lru_cache(maxsize=None)
def _cached_field(p, k, modulus):
    return Field(p, k, modulus)


def field_new(p: int, k: int = 1, modulus=None) -> Field:
    """Construct (or fetch from cache) GF(p^k)."""
    if modulus is not None:
        modulus = tuple(modulus)
    return _cached_field(p, k, modulus)


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise ValueError(f"mixed-field operands: {self.field} and {other.field}")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._check(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._check(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._check(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._check(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def coefficients(self) -> list:
        return self.field.coefficients(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.field.format(self.value)!r} in GF({self.field.q}))"
