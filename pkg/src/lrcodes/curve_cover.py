"""Hermitian curves and LRCs from covering maps (recovery along fibers).

Two forms of the Hermitian curve over GF(q^2) are used:

* X-form ``x^q + x = y^(q+1)``: the y-projection has fibers of size ``q``.
* Y-form ``y^q + y = x^(q+1)``: the power maps ``(x, y) -> (x^s, y)`` for
  ``s | q+1`` have fibers ``{(zeta*x, y) : zeta^s = 1}`` of size ``s`` away
  from ``x = 0``.

The forms are isomorphic by swapping the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evalcode import PUBLISHED_TARGET, UNKNOWN, build_code
from .gf import Field, field_of_order, make_field, prime_power
from .linalg import EchelonBasis
from .poly import Monomial, lagrange_weights
from .recovery import LocalCode, RecoveryStructure, RepairGroup

X_FORM = "x"
Y_FORM = "y"


def quadratic_extension(q: int) -> Field:
    p, e = prime_power(q)
    return make_field(p, 2 * e)


def preimages(values: np.ndarray) -> dict[int, np.ndarray]:
    """Map each value to the sorted array of indices where it occurs."""
    order = np.argsort(values, kind="stable")
    sv = values[order]
    cuts = np.flatnonzero(np.diff(sv)) + 1
    return {int(sv[g[0]]): order[g] for g in np.split(np.arange(sv.size), cuts) if g.size}


@dataclass(frozen=True)
class HermitianCurve:
    q: int
    form: str
    field: Field
    points: np.ndarray  # (q^3, 2) columns (x, y)

    def satisfies(self, x, y) -> np.ndarray:
        F, q = self.field, self.q
        if self.form == X_FORM:
            return F.add(F.pow(x, q), x) == F.pow(y, q + 1)
        return F.add(F.pow(y, q), y) == F.pow(x, q + 1)


def hermitian_points(q: int, form: str = X_FORM) -> HermitianCurve:
    """All affine points, sorted by (x, y)."""
    F = quadratic_extension(q)
    a = np.arange(F.q)
    tr = F.add(F.pow(a, q), a)
    nm = F.pow(a, q + 1)
    tr_pre = preimages(tr)
    pts = []
    for v_idx in range(F.q):
        v = int(nm[v_idx])
        for u in tr_pre.get(v, ()):
            # trace-side variable u, norm-side variable v_idx
            pts.append((int(u), v_idx) if form == X_FORM else (v_idx, int(u)))
    pts = np.array(sorted(pts), dtype=np.int64)
    curve = HermitianCurve(q, form, F, pts)
    assert np.all(curve.satisfies(pts[:, 0], pts[:, 1]))
    return curve


def fiber_groups(F: Field, keys: np.ndarray, param: np.ndarray, npoints: int,
                 label: str, size: int | None = None) -> list[list[RepairGroup]]:
    """Lagrange repair groups on fibers of a map.

    Points sharing a key form a fiber; each point is recovered from the other
    members by interpolation in the fiber parameter ``param``.
    """
    groups: list[list[RepairGroup]] = [[] for _ in range(npoints)]
    fibers = preimages(keys)
    for key, members in fibers.items():
        if size is not None and members.size != size:
            raise ValueError(f"fiber {key} has {members.size} points, expected {size}")
        if members.size < 2:
            continue
        s = members.size
        # row t: target members[t], support = the other members
        others = np.array([np.delete(members, t) for t in range(s)])
        w = lagrange_weights(F, param[others], param[members])
        for t in range(s):
            tgt = int(members[t])
            groups[tgt].append(RepairGroup(tgt, tuple(int(j) for j in others[t]),
                                           tuple(int(v) for v in w[t]), f"{label}={key}"))
    return groups


def merge_groups(*lists):
    out = [[] for _ in range(len(lists[0]))]
    for gl in lists:
        for i, gs in enumerate(gl):
            out[i].extend(gs)
    return out


def hermitian_basis(q: int, l: int) -> list[Monomial]:
    return [Monomial((i, j), ("x", "y")) for j in range(l + 1) for i in range(q - 1)]


def build_hermitian_lrc(q: int, l: int) -> LocalCode:
    """C(S, V_l) on the X-form curve; repair groups are y-fibers (locality q-1)."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    curve = hermitian_points(q, X_FORM)
    F, pts = curve.field, curve.points
    code = build_code(F, pts, hermitian_basis(q, l), name=f"Hermitian q={q} l={l}")
    code.point_names = ("x", "y")
    groups = fiber_groups(F, pts[:, 1], pts[:, 0], len(pts), "y", size=q)
    structure = RecoveryStructure(len(pts), groups, declared_locality=q - 1, declared_availability=1)
    return LocalCode(code, structure, "hermitian", {"q": q, "l": l}, extra={"curve": curve})


def power_cover_basis(q: int, s: int, y_cap: int) -> list[Monomial]:
    return [Monomial((a, b), ("x", "y"))
            for b in range(y_cap + 1) for a in range(q + 1) if a % s <= s - 2]


POWER_COVER_TARGETS = {
    # (q, s) -> published [n, k, d]
    (11, 4): (1320, 660, 382),
    (11, 3): (1320, 660, 277),
    (11, 12): (1320, 660, 502),
}


def power_cover_points(q: int) -> tuple[Field, np.ndarray]:
    curve = hermitian_points(q, Y_FORM)
    pts = curve.points[curve.points[:, 0] != 0]
    return curve.field, pts


def build_power_cover_lrc(q: int, s: int, y_cap: int, compute_rank: bool = True) -> LocalCode:
    """Evaluation on the Y-form curve minus the ``x = 0`` fiber, with recovery
    along fibers of ``(x, y) -> (x^s, y)`` (locality ``s - 1``)."""
    if s < 2 or (q + 1) % s:
        raise ValueError(f"s = {s} must be >= 2 and divide q+1 = {q + 1}")
    F, pts = power_cover_points(q)
    basis = power_cover_basis(q, s, y_cap)
    target = POWER_COVER_TARGETS.get((q, s))
    code = build_code(F, pts, basis, name=f"power cover q={q} s={s} y_cap={y_cap}",
                      compute_rank=compute_rank)
    code.point_names = ("x", "y")
    if target:
        code.design_distance, code.distance_provenance = target[2], PUBLISHED_TARGET
    keys = F.pow(pts[:, 0], s) * F.q + pts[:, 1]
    groups = fiber_groups(F, keys, pts[:, 0], len(pts), "(x^s,y)", size=s)
    structure = RecoveryStructure(len(pts), groups, declared_locality=s - 1, declared_availability=1)
    targets = {"n": target[0], "k": target[1], "d": target[2]} if target else {}
    return LocalCode(code, structure, "power-cover", {"q": q, "s": s, "y_cap": y_cap},
                     targets=targets)


def power_cover_rank_profile(q: int, s: int, max_y_cap: int, stop_rank: int | None = None) -> list[int]:
    """Rank of the code for every ``y_cap`` in ``0..max_y_cap`` (one elimination pass),
    stopping early once the rank reaches ``stop_rank`` or full length."""
    F, pts = power_cover_points(q)
    avals = [a for a in range(q + 1) if a % s <= s - 2]
    xp = {a: F.pow(pts[:, 0], a) for a in avals}
    basis = EchelonBasis(F, len(pts))
    profile = []
    ypow = np.ones(len(pts), dtype=np.int64)
    for b in range(max_y_cap + 1):
        for a in avals:
            basis.add(F.mul(xp[a], ypow))
        profile.append(len(basis))
        ypow = F.mul(ypow, pts[:, 1])
        if len(basis) == len(pts) or (stop_rank is not None and len(basis) >= stop_rank):
            break
    return profile


def search_y_cap(q: int, s: int, target_k: int, max_y_cap: int | None = None) -> dict:
    """Smallest ``y_cap`` whose rank reaches ``target_k``; reports the gap if not exact."""
    if max_y_cap is None:
        max_y_cap = q * q
    profile = power_cover_rank_profile(q, s, max_y_cap, stop_rank=target_k)
    for y_cap, k in enumerate(profile):
        if k >= target_k:
            below = profile[y_cap - 1] if y_cap else 0
            return {"y_cap": y_cap, "k": k, "target_k": target_k, "exact": k == target_k,
                    "k_below": below, "gap": k - target_k}
    return {"y_cap": None, "k": profile[-1], "target_k": target_k, "exact": False,
            "k_below": profile[-1], "gap": profile[-1] - target_k}
