"""Good polynomials and the Tamo-Barg codes C_k(g)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .evalcode import FORMULA, build_code
from .gf import Field, FieldError
from .poly import UniPoly, lagrange_weights
from .recovery import LocalCode, RecoveryStructure, RepairGroup


@dataclass(frozen=True)
class GoodPolynomial:
    g: UniPoly
    partition: tuple[tuple[int, ...], ...]
    source: str = ""

    @property
    def r(self) -> int:
        return int(self.g.degree) - 1

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(a for part in self.partition for a in part))


def _parts_by_value(F: Field, g: UniPoly, domain) -> tuple[tuple[int, ...], ...]:
    vals = g(np.asarray(domain))
    parts: dict[int, list[int]] = {}
    for a, v in zip(domain, vals):
        parts.setdefault(int(v), []).append(int(a))
    return tuple(sorted(tuple(sorted(p)) for p in parts.values()))


def good_from_multiplicative(F: Field, r: int) -> GoodPolynomial:
    """``g = x^(r+1)`` on the nonzero elements; parts are cosets of the
    order-(r+1) subgroup of the multiplicative group."""
    if r < 1:
        raise ValueError("locality must be at least 1")
    if (F.q - 1) % (r + 1):
        raise ValueError(f"r+1 = {r + 1} does not divide q-1 = {F.q - 1}")
    g = UniPoly.monomial(F, r + 1)
    return GoodPolynomial(g, _parts_by_value(F, g, list(range(1, F.q))), "multiplicative")


def span_gf_p(F: Field, generators) -> list[int]:
    """All GF(p)-linear combinations of ``generators`` (sorted codes)."""
    gens = [int(g) for g in generators]
    out = set()
    for coeffs in itertools.product(range(F.p), repeat=len(gens)):
        acc = 0
        for c, g in zip(coeffs, gens):
            acc = int(F.add(acc, F.mul(c, g)))
        out.add(acc)
    return sorted(out)


def good_from_additive(F: Field, generators) -> GoodPolynomial:
    """``g = prod_{a in H} (x - a)`` for the additive subgroup ``H`` spanned by
    ``generators``; parts are the cosets ``a + H``."""
    H = span_gf_p(F, generators)
    if len(H) != F.p ** len(generators):
        raise ValueError("subgroup generators are not independent over the prime field")
    if len(H) < 2:
        raise ValueError("subgroup must have at least two elements (r >= 1)")
    g = UniPoly(F, [1])
    for a in H:
        g = g * UniPoly(F, [int(F.neg(a)), 1])
    return GoodPolynomial(g, _parts_by_value(F, g, list(range(F.q))), "additive")


def verify_good(g: UniPoly, partition) -> tuple[bool, tuple | None]:
    """Check the good-polynomial conditions; on failure return a witness."""
    parts = [tuple(int(a) for a in p) for p in partition]
    if not parts:
        return False, ("empty partition",)
    size = len(parts[0])
    for p in parts:
        if len(p) != size:
            return False, ("part size", p)
    if g.degree != size:
        return False, ("degree", g.degree, size)
    seen: set[int] = set()
    for p in parts:
        for a in p:
            if a in seen:
                return False, ("overlap", a)
            seen.add(a)
    for p in parts:
        vals = g(np.asarray(p))
        for a, b, va, vb in zip(p, p[1:], vals, vals[1:]):
            if va != vb:
                return False, ("not constant", a, b, int(va), int(vb))
    return True, None


def tb_basis(good: GoodPolynomial, k: int) -> list[UniPoly]:
    r = good.r
    F = good.g.field
    x = UniPoly.x(F)
    basis = []
    gj = UniPoly(F, [1])
    for _ in range(k // r):
        for i in range(r):
            basis.append(gj * x**i)
        gj = gj * good.g
    return basis


def tb_design_distance(n: int, k: int, r: int) -> int:
    return n - k - k // r + 2


def build_tb(good: GoodPolynomial, k: int) -> LocalCode:
    F = good.g.field
    r = good.r
    ok, why = verify_good(good.g, good.partition)
    if not ok:
        raise ValueError(f"not a good polynomial: {why}")
    if r < 1 or k < 1 or k % r:
        raise ValueError(f"k = {k} must be a positive multiple of r = {r}")
    if k // r > len(good.partition):
        raise ValueError("k/r exceeds the number of parts; design distance would not be positive")
    points = np.array(good.domain, dtype=np.int64)
    n = points.size
    basis = tb_basis(good, k)
    code = build_code(F, points, basis, name=f"C_{k}({good.g!r})",
                      design_distance=tb_design_distance(n, k, r), provenance=FORMULA)
    index = {int(a): j for j, a in enumerate(points)}
    groups: list[list[RepairGroup]] = [[] for _ in range(n)]
    for l, part in enumerate(good.partition):
        for a in part:
            others = [b for b in part if b != a]
            lam = lagrange_weights(F, others, a)
            groups[index[a]].append(RepairGroup(index[a], tuple(index[b] for b in others),
                                                tuple(int(v) for v in lam), f"A{l + 1}"))
    structure = RecoveryStructure(n, groups, declared_locality=r, declared_availability=1)
    return LocalCode(code, structure, "tamo-barg",
                     {"q": F.q, "r": r, "k": k, "source": good.source}, extra={"good": good})


def build_tamo_barg(F: Field, r: int, k: int, source: str = "multiplicative",
                    generators=None) -> LocalCode:
    if source == "multiplicative":
        good = good_from_multiplicative(F, r)
    elif source == "additive":
        if generators is None:
            raise ValueError("additive construction needs subgroup generators")
        good = good_from_additive(F, generators)
        if good.r != r:
            raise ValueError(f"subgroup of size {good.r + 1} gives r = {good.r}, not {r}")
    else:
        raise FieldError(f"unknown good-polynomial source {source!r}")
    return build_tb(good, k)
