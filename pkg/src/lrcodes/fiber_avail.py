"""LRC(2)s on generalized Giulietti-Korchmaros curves.

The curve is the fiber product over the y-line of

    H_q : x^q + x = y^(q+1)
    Y_N : y^(q^2) - y = z^s,      s = (q^N + 1) / (q + 1)

over GF(q^(2N)).  A point (x, y, z) has two disjoint recovery sets: the
other points with the same (x, y) (varying z, size s - 1) and the other
points with the same (y, z) (varying x, size q - 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve_cover import fiber_groups, merge_groups, preimages
from .evalcode import PUBLISHED_TARGET, build_code
from .gf import Field, make_field, prime_power
from .poly import Monomial
from .recovery import LocalCode, RecoveryStructure


def gk_degree(q: int, N: int) -> int:
    return (q**N + 1) // (q + 1)


def gk_point_formula(q: int, N: int) -> int:
    return q ** (2 * N + 2) - q ** (N + 3) + q ** (N + 2) + 1


def gk_l_cap(q: int, N: int) -> int:
    """Exclusive upper bound on ``l``."""
    return q ** (N + 2) + q ** (N + 1) - q - 1


@dataclass(frozen=True)
class GKCurve:
    q: int
    N: int
    field: Field
    affine: np.ndarray  # every affine point, (x, y, z), sorted

    @property
    def s(self) -> int:
        return gk_degree(self.q, self.N)

    @property
    def evaluation_points(self) -> np.ndarray:
        return self.affine[self.affine[:, 2] != 0]

    def satisfies(self, pts) -> np.ndarray:
        F, q = self.field, self.q
        x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
        herm = F.add(F.pow(x, q), x) == F.pow(y, q + 1)
        other = F.sub(F.pow(y, q * q), y) == F.pow(z, self.s)
        return herm & other

    def counts(self) -> dict:
        affine = len(self.affine)
        z0 = int(np.sum(self.affine[:, 2] == 0))
        formula = gk_point_formula(self.q, self.N)
        return {
            "formula_total": formula,
            "affine": affine,
            "affine_z0": z0,
            "evaluation": affine - z0,
            "points_at_infinity": formula - affine,
        }


def gk_points(q: int, N: int) -> GKCurve:
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be an odd integer >= 3")
    p, e = prime_power(q)
    F = make_field(p, 2 * N * e)
    s = gk_degree(q, N)
    a = np.arange(F.q)
    tr_pre = preimages(F.add(F.pow(a, q), a))        # x^q + x
    as_pre = preimages(F.sub(F.pow(a, q * q), a))    # y^(q^2) - y
    ynorm = F.pow(a, q + 1)
    zpow = F.pow(a, s)
    pts = []
    for z in range(F.q):
        for y in as_pre.get(int(zpow[z]), ()):
            for x in tr_pre.get(int(ynorm[y]), ()):
                pts.append((int(x), int(y), z))
    pts = np.array(sorted(pts), dtype=np.int64)
    curve = GKCurve(q, N, F, pts)
    assert np.all(curve.satisfies(pts))
    return curve


def gk_basis(q: int, N: int, l: int) -> list[Monomial]:
    s = gk_degree(q, N)
    return [Monomial((i, kappa, j), ("x", "y", "z"))
            for kappa in range(l + 1) for j in range(s - 1) for i in range(q - 1)]


def gk_dimension(q: int, N: int, l: int) -> int:
    return (gk_degree(q, N) - 1) * (q - 1) * (l + 1)


GK_TARGETS = {(3, 3, 260): {"n": 6048, "k": 3132}}


def build_gk_lrc(q: int, N: int, l: int, verify_rank: bool | None = None,
                 curve: GKCurve | None = None) -> LocalCode:
    """The availability-2 code; rank is eliminated only for small ``l`` by default."""
    if not 0 <= l < gk_l_cap(q, N):
        raise ValueError(f"l = {l} outside [0, {gk_l_cap(q, N)})")
    curve = curve or gk_points(q, N)
    F, s = curve.field, curve.s
    pts = curve.evaluation_points
    if verify_rank is None:
        verify_rank = l <= 2
    basis = gk_basis(q, N, l)
    code = build_code(F, pts, basis, name=f"GK q={q} N={N} l={l}", compute_rank=verify_rank,
                      provenance=PUBLISHED_TARGET if (q, N, l) in GK_TARGETS else "unknown")
    code.point_names = ("x", "y", "z")
    code.meta["k_source"] = "rank" if verify_rank else "monomial count"
    n = len(pts)
    # R2: same (y, z), interpolate in x; R1: same (x, y), interpolate in z
    yz = pts[:, 1] * F.q + pts[:, 2]
    xy = pts[:, 0] * F.q + pts[:, 1]
    r2 = fiber_groups(F, yz, pts[:, 0], n, "R2", size=q)
    r1 = fiber_groups(F, xy, pts[:, 2], n, "R1", size=s)
    structure = RecoveryStructure(n, merge_groups(r2, r1), declared_locality=s - 1,
                                  declared_availability=2)
    return LocalCode(code, structure, "gk", {"q": q, "N": N, "l": l},
                     targets=GK_TARGETS.get((q, N, l), {}), extra={"curve": curve})


def disjoint_pairs(structure: RecoveryStructure) -> bool:
    for gs in structure.groups:
        r2 = [g for g in gs if g.label.startswith("R2")]
        r1 = [g for g in gs if g.label.startswith("R1")]
        if len(r1) != 1 or len(r2) != 1 or set(r1[0].support) & set(r2[0].support):
            return False
    return True
