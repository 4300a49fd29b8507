"""Lifted codes on norm-trace curves: monomials that stay low-degree on every line.

Both families live on a norm-trace curve over GF(Q^e),

    Tr(y) = y + y^Q + ... + y^(Q^(e-1)) = x^D,   D = (Q^e - 1) / (Q - 1),

Hermitian (``Q = q, e = 2``: ``y^q + y = x^(q+1)``) and binary norm-trace
(``Q = 2, e = r``).  A line ``L_{a,b}: x = t, y = a*t + b`` with ``a != 0``
meets the curve where ``m_{a,b}(t) = Tr(a*t + b) - t^D`` vanishes.  A
monomial ``x^i y^j`` is *good* for degree bound ``delta`` when
``t^i (a*t + b)^j mod m_{a,b}`` has degree at most ``delta`` for every line.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field as dc_field

import numpy as np

from .curve_cover import preimages
from .evalcode import EvaluationCode, build_code
from .gf import Field, make_field, prime_power
from .linalg import independent_rows
from .poly import Monomial, lagrange_weights
from .recovery import LocalCode, RecoveryStructure, RepairGroup

REDUCE = "reduce"   # polynomial test: degree of the remainder mod m_{a,b}
POINTS = "points"   # codeword test: values on the rational intersection points


@dataclass(frozen=True)
class NormTraceCurve:
    Q: int
    e: int
    field: Field
    points: np.ndarray  # (n, 2) columns (x, y), sorted

    @property
    def D(self) -> int:
        return (self.Q**self.e - 1) // (self.Q - 1)

    @property
    def name(self) -> str:
        if self.e == 2:
            return f"hermitian q={self.Q}"
        return f"norm-trace Q={self.Q} r={self.e}"

    @property
    def exponent_caps(self) -> tuple[int, int]:
        """Largest candidate exponents ``(a, b)``: x^D and y^(|F|) reduce away."""
        return self.D - 1, self.field.q - 1

    def trace(self, y):
        F = self.field
        out = np.zeros_like(np.asarray(y, dtype=np.int64))
        for i in range(self.e):
            out = F.add(out, F.pow(y, self.Q**i))
        return out

    def satisfies(self, x, y) -> np.ndarray:
        return self.trace(y) == self.field.pow(x, self.D)


def norm_trace_curve(Q: int, e: int) -> NormTraceCurve:
    p, s = prime_power(Q)
    F = make_field(p, s * e)
    if F.q > 2**16:
        raise ValueError(f"field of order {F.q} is beyond desk scale")
    a = np.arange(F.q)
    curve = NormTraceCurve(Q, e, F, np.zeros((0, 2), dtype=np.int64))
    tr_pre = preimages(curve.trace(a))
    xnorm = F.pow(a, curve.D)
    pts = [(x, int(y)) for x in range(F.q) for y in tr_pre.get(int(xnorm[x]), ())]
    pts = np.array(sorted(pts), dtype=np.int64)
    curve = NormTraceCurve(Q, e, F, pts)
    assert np.all(curve.satisfies(pts[:, 0], pts[:, 1]))
    return curve


def hermitian_curve(q: int) -> NormTraceCurve:
    """The Y-form Hermitian curve ``y^q + y = x^(q+1)`` over GF(q^2)."""
    return norm_trace_curve(q, 2)


def binary_norm_trace_curve(r: int) -> NormTraceCurve:
    if r < 2:
        raise ValueError("r must be at least 2")
    return norm_trace_curve(2, r)


# --- lines ------------------------------------------------------------------

@dataclass(frozen=True)
class LineFamily:
    """All lines ``y = alpha*x + beta`` with ``alpha != 0`` (optionally ``alpha = 0`` too)."""

    curve: NormTraceCurve
    alpha: np.ndarray
    beta: np.ndarray

    def __len__(self):
        return self.alpha.size

    def relation(self) -> np.ndarray:
        """Row ``L`` holds ``c`` with ``t^D = sum_i c_i t^i  (mod m_L)``."""
        C, F = self.curve, self.curve.field
        rel = np.zeros((len(self), C.D), dtype=np.int64)
        for i in range(C.e):
            deg = C.Q**i
            rel[:, deg] = F.add(rel[:, deg], F.pow(self.alpha, deg))
        rel[:, 0] = F.add(rel[:, 0], C.trace(self.beta))
        return rel

    def modulus(self, index: int) -> list[int]:
        """Coefficients of ``m_{alpha,beta}(t)``, lowest degree first."""
        F = self.curve.field
        rel = self.relation()[index]
        return [int(c) for c in rel] + [int(F.neg(1))]

    def members(self) -> list[np.ndarray]:
        """Indices of curve points on each line."""
        C, F = self.curve, self.curve.field
        x, y = C.points[:, 0], C.points[:, 1]
        out = []
        for a, b in zip(self.alpha, self.beta):
            out.append(np.flatnonzero(F.add(F.mul(a, x), b) == y))
        return out


def lines(curve: NormTraceCurve, include_horizontal: bool = False) -> LineFamily:
    q = curve.field.q
    start = 0 if include_horizontal else 1
    al, be = np.meshgrid(np.arange(start, q), np.arange(q), indexing="ij")
    return LineFamily(curve, al.reshape(-1), be.reshape(-1))


def intersection_sizes(curve: NormTraceCurve) -> dict[int, int]:
    """Histogram of ``|L cap X|`` over non-horizontal lines."""
    hist: dict[int, int] = {}
    for m in lines(curve).members():
        hist[m.size] = hist.get(m.size, 0) + 1
    return dict(sorted(hist.items()))


# --- the goodness test --------------------------------------------------------

def _times_t(F: Field, Z: np.ndarray, rel: np.ndarray) -> np.ndarray:
    top = Z[:, -1]
    out = np.empty_like(Z)
    out[:, 0] = 0
    out[:, 1:] = Z[:, :-1]
    nz = np.flatnonzero(top)
    if nz.size:
        out[nz] = F.add(out[nz], F.mul(top[nz, None], rel[nz]))
    return out


def reduced_degree_table(curve: NormTraceCurve, a_max: int, b_max: int,
                         fam: LineFamily | None = None) -> np.ndarray:
    """``T[a, b]`` = max over lines of ``deg(t^a (alpha t + beta)^b mod m)``
    (``-1`` for the zero remainder)."""
    F = curve.field
    fam = fam or lines(curve)
    rel = fam.relation()
    L, D = rel.shape
    al, be = fam.alpha, fam.beta
    table = np.full((a_max + 1, b_max + 1), -1, dtype=np.int64)
    Y = np.zeros((L, D), dtype=np.int64)
    Y[:, 0] = 1
    cols = np.arange(D)
    for b in range(b_max + 1):
        Z = Y
        for a in range(a_max + 1):
            nzcols = np.any(Z != 0, axis=0)
            table[a, b] = int(cols[nzcols].max()) if nzcols.any() else -1
            if a < a_max:
                Z = _times_t(F, Z, rel)
        if b < b_max:
            # Y <- Y * (alpha t + beta) mod m
            shifted = _times_t(F, Y, rel)
            Y = F.add(F.mul(al[:, None], shifted), F.mul(be[:, None], Y))
    return table


def reduce_on_line(curve: NormTraceCurve, a: int, b: int, alpha: int, beta: int) -> list[int]:
    """Remainder of ``t^a (alpha t + beta)^b`` mod ``m_{alpha,beta}``, by long division."""
    from .poly import UniPoly

    F = curve.field
    fam = LineFamily(curve, np.array([alpha]), np.array([beta]))
    m = UniPoly(F, fam.modulus(0))
    f = UniPoly.monomial(F, a) * (UniPoly(F, [beta, alpha]) ** b)
    return list((f % m).coeffs)


def _dual_weights(F: Field, t: np.ndarray, delta: int) -> np.ndarray:
    """Parity checks (rows) of {values of polys of degree <= delta at ``t``}."""
    s = t.size
    u = np.ones(s, dtype=np.int64)
    for i in range(s):
        for j in range(s):
            if i != j:
                u[i] = F.mul(u[i], F.sub(t[i], t[j]))
    u = F.inv(u)
    rows = [F.mul(u, F.pow(t, e)) for e in range(s - delta - 1)]
    return np.array(rows, dtype=np.int64).reshape(-1, s)


def points_good_mask(curve: NormTraceCurve, evals: np.ndarray, delta: int,
                     fam: LineFamily | None = None) -> np.ndarray:
    """Per row of ``evals``: True when its values on every line's rational points
    lie on a polynomial of degree <= delta in the line parameter."""
    F = curve.field
    fam = fam or lines(curve)
    alive = np.ones(evals.shape[0], dtype=bool)
    x = curve.points[:, 0]
    for members in fam.members():
        if members.size <= delta + 1:
            continue
        H = _dual_weights(F, x[members], delta)
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        sub = evals[np.ix_(idx, members)]
        syn = F.sum(F.mul(sub[:, None, :], H[None, :, :]), axis=2)
        alive[idx[np.any(syn != 0, axis=1)]] = False
    return alive


def monomial_is_good(a: int, b: int, curve: NormTraceCurve, delta: int,
                     method: str = REDUCE) -> bool:
    a_cap, b_cap = curve.exponent_caps
    if not (0 <= a <= a_cap and 0 <= b <= b_cap):
        raise ValueError(f"exponents ({a}, {b}) outside caps ({a_cap}, {b_cap})")
    if method == REDUCE:
        fam = lines(curve)
        rel = fam.relation()
        F = curve.field
        Y = np.zeros((len(fam), curve.D), dtype=np.int64)
        Y[:, 0] = 1
        for _ in range(b):
            Y = F.add(F.mul(fam.alpha[:, None], _times_t(F, Y, rel)), F.mul(fam.beta[:, None], Y))
        for _ in range(a):
            Y = _times_t(F, Y, rel)
        return not np.any(Y[:, delta + 1:])
    ev = Monomial((a, b)).evaluate(curve.field, curve.points)[None, :]
    return bool(points_good_mask(curve, ev, delta)[0])


@dataclass
class GoodMonomialSet:
    curve: NormTraceCurve
    delta: int
    method: str
    monomials: list[tuple[int, int]]          # every good candidate
    distinct: list[tuple[int, int]]           # duplicates as functions removed
    rank: int
    basis: list[tuple[int, int]] = dc_field(default_factory=list)  # independent subset

    def classify(self, a: int, b: int) -> str:
        return "baseline" if a + b <= self.delta else "sporadic"

    @property
    def baseline_count(self) -> int:
        return sum(1 for a, b in self.monomials if a + b <= self.delta)

    @property
    def sporadic(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in self.monomials if a + b > self.delta]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["a", "b", "class", "in_basis"])
        keep = set(self.basis)
        for a, b in self.monomials:
            w.writerow([a, b, self.classify(a, b), int((a, b) in keep)])
        return buf.getvalue()


def good_monomials(curve: NormTraceCurve, delta: int, method: str = REDUCE) -> GoodMonomialSet:
    """Exhaustive scan of candidate exponents, then deduplication and rank."""
    F = curve.field
    a_cap, b_cap = curve.exponent_caps
    cands = [(a, b) for b in range(b_cap + 1) for a in range(a_cap + 1)]
    if method == REDUCE:
        table = reduced_degree_table(curve, a_cap, b_cap)
        good = [(a, b) for a, b in cands if table[a, b] <= delta]
    elif method == POINTS:
        allev = np.vstack([Monomial(m).evaluate(F, curve.points) for m in cands])
        mask = points_good_mask(curve, allev, delta)
        good = [m for m, ok in zip(cands, mask) if ok]
    else:
        raise ValueError(f"unknown goodness method {method!r}")
    good.sort(key=lambda ab: (ab[0] + ab[1], ab[1]))
    if not good:
        return GoodMonomialSet(curve, delta, method, [], [], 0, [])
    evals = np.vstack([Monomial(m).evaluate(F, curve.points) for m in good])
    _, first = np.unique(evals, axis=0, return_index=True)
    distinct = [good[i] for i in sorted(first)]
    dist_ev = evals[sorted(first)]
    indep = independent_rows(F, dist_ev)
    return GoodMonomialSet(curve, delta, method, good, distinct, len(indep),
                           [distinct[i] for i in indep])


# --- a fast sufficient criterion for binary Hermitian curves -------------------

def lucas_sporadic(a: int, b: int, q: int) -> bool:
    """Sufficient condition for a sporadic good monomial on the Hermitian
    curve over GF(q^2), q = 2^l, from a binary-expansion (Lucas) argument.

    Reading: ``b = w*q + b'`` with ``b' < 2^(l-1)``, ``a < 2^(l-1)``, and some
    ``i in 1..l`` with ``2^i | w`` such that ``a`` and ``b'`` have no bits in
    positions ``0..i-1``.
    """
    l = q.bit_length() - 1
    if q != 1 << l or a > q - 1 or b > q * q - 1 or a + b < q:
        return False
    w, bp = divmod(b, q)
    if bp >= 1 << (l - 1) or a >= 1 << (l - 1) or w == 0:
        return False
    for i in range(1, l + 1):
        low = (1 << i) - 1
        if w % (1 << i) == 0 and not (a & low) and not (bp & low):
            return True
    return False


def fast_filter(a: int, b: int, q: int) -> bool:
    return a + b <= q - 1 or lucas_sporadic(a, b, q)


# --- codes --------------------------------------------------------------------

def line_repair_groups(curve: NormTraceCurve, delta: int, horizontal: bool
                       ) -> list[list[RepairGroup]]:
    """One group per point and per line through it with at least ``delta + 2``
    points: the first ``delta + 1`` other points, Lagrange weights in x."""
    F = curve.field
    x = curve.points[:, 0]
    n = len(curve.points)
    groups: list[list[RepairGroup]] = [[] for _ in range(n)]
    fam = lines(curve, include_horizontal=horizontal)
    for al, be, members in zip(fam.alpha, fam.beta, fam.members()):
        s = members.size
        if s < delta + 2:
            continue
        others = np.array([np.delete(members, t)[: delta + 1] for t in range(s)])
        w = lagrange_weights(F, x[others], x[members])
        for t in range(s):
            tgt = int(members[t])
            groups[tgt].append(RepairGroup(tgt, tuple(int(j) for j in others[t]),
                                           tuple(int(v) for v in w[t]),
                                           f"y={int(al)}x+{int(be)}"))
    return groups


def _lifted_code(curve: NormTraceCurve, delta: int, method: str, horizontal,
                 construction: str, params: dict, targets: dict) -> LocalCode:
    gm = good_monomials(curve, delta, method)
    F = curve.field
    basis = [Monomial(m, ("x", "y")) for m in gm.distinct]
    code = build_code(F, curve.points, basis, name=f"lifted {curve.name} delta={delta}")
    code.point_names = ("x", "y")
    max_a = max(a for a, _ in gm.distinct)
    if horizontal == "auto":
        horizontal = max_a <= delta
    groups = line_repair_groups(curve, delta, bool(horizontal))
    structure = RecoveryStructure(len(curve.points), groups, declared_locality=delta + 1,
                                  meta={"horizontal_lines": bool(horizontal)})
    params = dict(params, delta=delta, method=method, horizontal=bool(horizontal))
    return LocalCode(code, structure, construction, params, targets, extra={"monomials": gm})


HLC_TARGETS = {8: {"n": 512, "k": 75, "locality": 8, "availability": 63}}
NTLC_TARGETS = {6: {"n": 2048, "k": 465, "locality": 30, "availability": 63}}


def build_hermitian_lifted(q: int, method: str = REDUCE, horizontal="auto") -> LocalCode:
    """Length q^3, locality q, availability q^2 - 1 (for q a power of two)."""
    p, _ = prime_power(q)
    if p != 2 or q < 4:
        raise ValueError("Hermitian-lifted codes are built for q >= 4 a power of 2")
    curve = hermitian_curve(q)
    return _lifted_code(curve, q - 1, method, horizontal, "hermitian-lifted", {"q": q},
                        HLC_TARGETS.get(q, {"n": q**3, "locality": q, "availability": q * q - 1}))


LITERAL = "literal"
INTERPOLATION = "interpolation-consistent"


def nt_delta(r: int, convention: str) -> int:
    if convention == LITERAL:
        return 2 ** (r - 1) - 2
    if convention == INTERPOLATION:
        return 2 ** (r - 1) - 3
    raise ValueError(f"unknown degree convention {convention!r}")


def build_nt_lifted(r: int, delta_convention: str = INTERPOLATION,
                    method: str = REDUCE) -> LocalCode:
    if r not in (3, 4, 5, 6):
        raise ValueError("norm-trace lifted codes are supported for r in 3..6")
    curve = binary_norm_trace_curve(r)
    delta = nt_delta(r, delta_convention)
    targets = NTLC_TARGETS.get(r, {"n": 2 ** (2 * r - 1), "locality": 2 ** (r - 1) - 2,
                                   "availability": 2**r - 1})
    lc = _lifted_code(curve, delta, method, False, "nt-lifted",
                      {"r": r, "delta_convention": delta_convention}, targets)
    lc.params["intersection_sizes"] = intersection_sizes(curve)
    return lc
