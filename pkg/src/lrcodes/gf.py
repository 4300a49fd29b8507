"""Prime-power finite fields GF(p^m).

Elements are encoded as integers in ``[0, q)``: the base-``p`` evaluation of
the coefficient vector in the polynomial basis ``1, x, ..., x^(m-1)``.  All
bulk arithmetic works on numpy integer arrays of these codes through
exp/log tables; :class:`FieldElement` is a small immutable wrapper for
scalar work.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

MAX_ORDER = 2**20
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1 or not is_prime(p):
                raise FieldError(f"not a prime power")
            return p, m
    raise FieldError("unreachable")


# --- dense polynomials over GF(p), lowest degree first -----------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Ben-Or test for a monic polynomial over GF(p) (coefficients low first).

    ``f`` is irreducible iff ``gcd(x^(p^i) - x, f) == 1`` for every
    ``i <= deg(f) / 2``; reducible inputs usually fail at a small ``i``.
    """
    f = _trim(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    h = [0, 1]
    for _ in range(m // 2):
        h = _ppowmod(h, p, f, p)
        g = h + [0] * max(0, 2 - len(h))
        g[1] = (g[1] - 1) % p
        if len(_pgcd(f, g, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``m``.

    Coefficient vectors ``(c0, c1, ..., c_{m-1})`` are compared with the
    constant term most significant.
    """
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


# --- the field ---------------------------------------------------------------

class Field:
    """GF(p^m) with exp/log tables over the integer encoding."""

    def __init__(self, p: int, m: int = 1):
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m}")
        if p**m > MAX_ORDER:
            raise FieldError(f"order {p}^{m} exceeds the supported maximum {MAX_ORDER}")
        self.p = int(p)
        self.m = int(m)
        self.q = self.p**self.m
        self.modulus = smallest_irreducible(self.p, self.m)
        self._weights = self.p ** np.arange(self.m, dtype=np.int64)
        self._build_tables()

    # construction helpers
    def _mult_matrix(self, coeffs) -> np.ndarray:
        """Matrix of ``v -> v * element`` acting on row coefficient vectors."""
        p, m, f = self.p, self.m, list(self.modulus)
        rows = []
        base = _trim(coeffs)
        for i in range(m):
            prod = _pmulmod([0] * i + [1], base, f, p) if base else []
            rows.append(prod + [0] * (m - len(prod)))
        return np.array(rows, dtype=np.int64)

    def _build_tables(self):
        p, m, q, f = self.p, self.m, self.q, list(self.modulus)
        order = q - 1
        factors = prime_factors(order) if order > 1 else []
        gen = None
        for code in range(1, q):
            c = self._digits_py(code)
            if all(_ppowmod(c, order // ell, f, p) != [1] for ell in factors):
                gen = c
                break
        self.generator = self._encode_py(gen)
        # exp table by doubling: block_{2L} = block_L ++ block_L * g^L
        digits = np.zeros((1, m), dtype=np.int64)
        digits[0, 0] = 1
        mat = self._mult_matrix(gen)
        while digits.shape[0] < order:
            digits = np.vstack([digits, digits @ mat % p])
            mat = mat @ mat % p
        digits = digits[:order]
        exp = digits @ self._weights
        self._exp = np.concatenate([exp, exp]).astype(np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        self._log = log
        if self.p == 2:
            self._neg = np.arange(q, dtype=np.int64)
        else:
            dig = self.digits(np.arange(q))
            self._neg = ((-dig) % p) @ self._weights
        self._add_table = None
        if self.p != 2 and q <= _ADD_TABLE_LIMIT:
            dig = self.digits(np.arange(q))
            self._add_table = ((dig[:, None, :] + dig[None, :, :]) % p) @ self._weights
        self._pack_bits = 62 // m
        self._pack_mask = (1 << self._pack_bits) - 1
        self._pack_room = self._pack_mask // (p - 1) if p > 2 else 0
        if p > 2 and m > 1:
            dig = self.digits(np.arange(q))
            self._packed = (dig << (self._pack_bits * np.arange(m))).sum(axis=1)
        self._mul_table = None
        if q <= _ADD_TABLE_LIMIT:
            a = np.arange(q)
            self._mul_table = self.mul(a[:, None], a[None, :])

    def _digits_py(self, code: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return _trim(out)

    def _encode_py(self, coeffs) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs))

    # identity
    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "Field":
        F = make_field(d["p"], d["m"])
        if "modulus" in d and tuple(d["modulus"]) != F.modulus:
            raise FieldError(f"modulus {d['modulus']} is not the canonical {list(F.modulus)}")
        return F

    # representation
    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._weights) % self.p

    def encode(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._weights

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, value)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> GF(p) -> GF(q)."""
        return int(n) % self.p

    # vectorized arithmetic on codes
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a, b]
        return self.encode(self.digits(a) + self.digits(b))

    def neg(self, a):
        return self._neg[np.asarray(a, dtype=np.int64)]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._mul_table is not None:
            return self._mul_table[a, b]
        la, lb = self._log[a], self._log[b]
        out = self._exp[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """Elementwise ``a**e`` for integer exponents (``0**0 == 1``)."""
        a = np.asarray(a, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        if np.any((a == 0) & (e < 0)):
            raise ZeroDivisionError("negative power of zero")
        la = np.maximum(self._log[a], 0)
        out = self._exp[(la * e) % (self.q - 1)]
        return np.where(a == 0, np.where(e == 0, 1, 0), out)

    def sum(self, a, axis=None):
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.m == 1:
            return np.sum(a, axis=axis) % self.p
        if axis is None:
            a, axis = a.reshape(-1), 0
        if axis < 0:
            axis += a.ndim
        # digits packed into bit fields so that integer addition adds them
        # componentwise; chunk so no field overflows
        packed = self._packed[a]
        length = a.shape[axis]
        step = max(1, self._pack_room)
        total = None
        for s in range(0, length, step):
            part = np.take(packed, np.arange(s, min(length, s + step)), axis=axis).sum(axis=axis)
            part = self._unpack(part)
            total = part if total is None else self.add(total, part)
        if total is None:
            shape = list(a.shape)
            del shape[axis]
            return np.zeros(shape, dtype=np.int64)
        return total

    def _unpack(self, packed):
        out = np.zeros_like(packed)
        for i in range(self.m):
            out += ((packed >> (self._pack_bits * i)) & self._pack_mask) % self.p * int(self._weights[i])
        return out

    def dot(self, a, b, axis=-1):
        return self.sum(self.mul(a, b), axis=axis)

    def scale(self, c, v):
        return self.mul(np.asarray(c)[..., None], v)

    # maps to subfields
    def _check_sub(self, sub_degree: int) -> int:
        if sub_degree < 1 or self.m % sub_degree:
            raise FieldError(f"subfield degree {sub_degree} does not divide {self.m}")
        return self.p**sub_degree

    def trace(self, a, sub_degree: int):
        """Relative trace down to the subfield GF(p^sub_degree)."""
        s = self._check_sub(sub_degree)
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        term = a
        for _ in range(self.m // sub_degree):
            out = self.add(out, term)
            term = self.pow(term, s)
        return out

    def norm(self, a, sub_degree: int):
        """Relative norm down to the subfield GF(p^sub_degree)."""
        s = self._check_sub(sub_degree)
        return self.pow(a, (self.q - 1) // (s - 1))

    def subfield(self, sub_degree: int) -> np.ndarray:
        """Codes of the elements of the subfield GF(p^sub_degree), sorted."""
        s = self._check_sub(sub_degree)
        a = np.arange(self.q)
        return a[self.pow(a, s) == a]


@lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> Field:
    """Return GF(p^m); cached, so repeated calls share tables."""
    return Field(p, m)


def field_of_order(q: int) -> Field:
    p, m = prime_power(q)
    return make_field(p, m)


class FieldElement:
    """Immutable scalar in a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        if isinstance(value, FieldElement):
            if value.field != field:
                raise FieldError("element belongs to a different field")
            value = value.value
        value = int(value)
        if not 0 <= value < field.q:
            raise FieldError(f"code {value} out of range for {field!r}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, int(e)))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def trace(self, sub_degree: int) -> "FieldElement":
        return self._wrap(self.field.trace(self.value, sub_degree))

    def norm(self, sub_degree: int) -> "FieldElement":
        return self._wrap(self.field.norm(self.value, sub_degree))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)) and self.field.m == 1:
            return self.value == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def arith(op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch one of add/sub/mul/div/neg/inv/pow by name."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field != a.field:
        raise FieldError("operands live in different fields")
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op]()


def enumerate_field(field: Field) -> list[FieldElement]:
    return field.elements()
