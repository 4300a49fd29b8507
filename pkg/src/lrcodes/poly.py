"""Univariate polynomials and monomials over a finite field."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import Field, FieldElement, FieldError

NEG_INF = float("-inf")


def _code(F: Field, c) -> int:
    if isinstance(c, FieldElement):
        if c.field != F:
            raise FieldError("coefficient from a different field")
        return c.value
    return int(c)


class UniPoly:
    """Polynomial with coefficient codes stored lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [_code(field, c) for c in coeffs]
        for c in cs:
            if not 0 <= c < field.q:
                raise FieldError(f"coefficient {c} out of range for {field!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff: int = 1) -> "UniPoly":
        return cls(field, [0] * degree + [coeff])

    @classmethod
    def x(cls, field: Field) -> "UniPoly":
        return cls(field, [0, 1])

    @property
    def degree(self):
        """Degree; the zero polynomial has degree ``-inf``."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "UniPoly"):
        if isinstance(other, FieldElement):
            other = UniPoly(self.field, [_code(self.field, other)])
        elif isinstance(other, (int, np.integer)):
            other = UniPoly(self.field, [self.field.from_int(other)])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if other.field != self.field:
            raise FieldError("polynomials over different fields")
        return other

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = str(c) if (c != 1 or i == 0) else ""
                terms.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(reversed(terms))

    def _arr(self, length=None) -> np.ndarray:
        a = np.array(self.coeffs, dtype=np.int64)
        if length is not None and length > a.size:
            a = np.concatenate([a, np.zeros(length - a.size, dtype=np.int64)])
        return a

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        L = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, self.field.add(self._arr(L), other._arr(L)))

    __radd__ = __add__

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return UniPoly(self.field, self.field.neg(self._arr()))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, FieldElement)):
            c = _code(self.field, other) if isinstance(other, FieldElement) else self.field.from_int(other)
            return UniPoly(self.field, self.field.mul(self._arr(), c))
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return UniPoly(self.field)
        F = self.field
        prod = F.mul(self._arr()[:, None], other._arr()[None, :])
        out = np.zeros(len(self.coeffs) + len(other.coeffs) - 1, dtype=np.int64)
        for i in range(prod.shape[0]):
            seg = out[i:i + prod.shape[1]]
            out[i:i + prod.shape[1]] = F.add(seg, prod[i])
        return UniPoly(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        d = len(other.coeffs) - 1
        g = other._arr()
        inv_lead = int(F.inv(g[-1]))
        qt = [0] * max(0, len(r) - d)
        for shift in range(len(r) - 1 - d, -1, -1):
            c = int(F.mul(r[shift + d], inv_lead))
            if c:
                qt[shift] = c
                seg = np.array(r[shift:shift + d + 1], dtype=np.int64)
                r[shift:shift + d + 1] = F.sub(seg, F.mul(c, g)).tolist()
        return UniPoly(F, qt), UniPoly(F, r[:d] if d > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __call__(self, x):
        """Horner evaluation at a scalar or an array of codes."""
        F = self.field
        if isinstance(x, FieldElement):
            return FieldElement(F, int(self._horner(np.int64(x.value))))
        return self._horner(np.asarray(x, dtype=np.int64))

    def _horner(self, x):
        F = self.field
        acc = np.zeros_like(x)
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def eval(self, x):
        return self(x)

    def compose_linear(self, a, b) -> "UniPoly":
        """``self(a*t + b)`` as a polynomial in ``t``."""
        lin = UniPoly(self.field, [b, a])
        acc = UniPoly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly(self.field, [c])
        return acc

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def uni_arith(op: str, f: UniPoly, g: UniPoly):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divmod":
        return f.divmod(g)
    if op == "mod":
        return f % g
    raise ValueError(f"unknown operation {op!r}")


def lagrange(F: Field, points) -> UniPoly:
    """Interpolating polynomial of degree < len(points) through ``(x_i, y_i)``."""
    pts = [(_code(F, x), _code(F, y)) for x, y in points]
    if not pts:
        raise ValueError("need at least one point")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    total = UniPoly(F)
    for i, (xi, yi) in enumerate(pts):
        num = UniPoly(F, [1])
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * UniPoly(F, [int(F.neg(xj)), 1])
                den = int(F.mul(den, F.sub(xi, xj)))
        total = total + num * FieldElement(F, int(F.div(yi, den)))
    return total


def lagrange_weights(F: Field, nodes, target) -> np.ndarray:
    """Weights ``w`` with ``h(target) = sum_j w_j h(nodes_j)`` for every
    polynomial ``h`` of degree < len(nodes).

    ``nodes`` may be 2-D (one node set per row) with ``target`` a matching
    1-D array; the result then has the shape of ``nodes``.
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    single = nodes.ndim == 1
    if single:
        nodes = nodes[None, :]
        target = target.reshape(1)
    B, s = nodes.shape
    w = np.ones((B, s), dtype=np.int64)
    for j in range(s):
        num = np.ones(B, dtype=np.int64)
        den = np.ones(B, dtype=np.int64)
        for m in range(s):
            if m != j:
                num = F.mul(num, F.sub(target, nodes[:, m]))
                den = F.mul(den, F.sub(nodes[:, j], nodes[:, m]))
        if np.any(den == 0):
            raise ValueError("interpolation nodes must be distinct")
        w[:, j] = F.div(num, den)
    return w[0] if single else w


def roots(f: UniPoly) -> list[FieldElement]:
    """All roots in the field, by exhaustive scan."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    F = f.field
    vals = f(np.arange(F.q))
    return [FieldElement(F, int(c)) for c in np.flatnonzero(vals == 0)]


@dataclass(frozen=True)
class Monomial:
    """Exponent vector over the coordinates of an evaluation point."""

    exponents: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError("monomial exponents must be nonnegative")

    def evaluate(self, F: Field, coords: np.ndarray) -> np.ndarray:
        """Values at points given as an ``(n, nvars)`` code array."""
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        out = np.ones(coords.shape[0], dtype=np.int64)
        for v, e in enumerate(self.exponents):
            if e:
                out = F.mul(out, F.pow(coords[:, v], e))
        return out

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def label(self) -> str:
        names = self.names or tuple(f"x{i}" for i in range(len(self.exponents)))
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, self.exponents) if e]
        return "*".join(parts) or "1"

    def __str__(self):
        return self.label()
