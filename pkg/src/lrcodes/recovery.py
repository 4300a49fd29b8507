"""Repair groups as linear functionals, certification, and peeling recovery."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import linalg
from .evalcode import ERASED, EvaluationCode
from .gf import Field


@dataclass(frozen=True)
class RepairGroup:
    """``c[target] == sum(lam[j] * c[support[j]])`` for every codeword ``c``."""

    target: int
    support: tuple[int, ...]
    lam: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        if self.target in self.support:
            raise ValueError("a repair group may not read its own target")
        if len(self.support) != len(self.lam):
            raise ValueError("support and coefficient vector differ in length")

    @property
    def size(self) -> int:
        return len(self.support)


class CertificationError(AssertionError):
    def __init__(self, group: RepairGroup, message: str = ""):
        self.group = group
        super().__init__(message or f"repair group for coordinate {group.target} "
                                    f"({group.label or 'unlabelled'}) does not reproduce it")


def max_disjoint(groups: Sequence[RepairGroup], exact_limit: int = 24) -> int:
    """Largest number of pairwise-disjoint supports among ``groups``."""
    sets = [frozenset(g.support) for g in groups]
    if not sets:
        return 0
    total = sum(len(s) for s in sets)
    if len(frozenset().union(*sets)) == total:
        return len(sets)
    if len(sets) > exact_limit:
        chosen: set[int] = set()
        count = 0
        for s in sorted(sets, key=len):
            if chosen.isdisjoint(s):
                chosen |= s
                count += 1
        return count

    best = 0

    def search(i, used, count):
        nonlocal best
        if count + (len(sets) - i) <= best:
            return
        if i == len(sets):
            best = max(best, count)
            return
        if used.isdisjoint(sets[i]):
            search(i + 1, used | sets[i], count + 1)
        search(i + 1, used, count)

    search(0, frozenset(), 0)
    return best


@dataclass
class RecoveryStructure:
    n: int
    groups: list[list[RepairGroup]]
    declared_locality: int | None = None
    declared_availability: int | None = None
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if len(self.groups) != self.n:
            raise ValueError("need one group list per coordinate")

    @property
    def locality(self) -> int:
        return max((g.size for gs in self.groups for g in gs), default=0)

    def availability_of(self, i: int) -> int:
        return max_disjoint(self.groups[i])

    @property
    def availability(self) -> int:
        return min((self.availability_of(i) for i in range(self.n)), default=0)

    def localities(self) -> list[int]:
        """Distinct support sizes, ascending."""
        return sorted({g.size for gs in self.groups for g in gs})

    def ordered(self, i: int, key=None) -> list[RepairGroup]:
        """Groups of coordinate ``i`` cheapest first (stable)."""
        return sorted(self.groups[i], key=key or (lambda g: g.size))

    def all_groups(self):
        for gs in self.groups:
            yield from gs


def certify(code: EvaluationCode, structure: RecoveryStructure, budget: int = 1 << 23) -> dict:
    """Check every group against the generator matrix.

    ``G[:, target] == sum_j lam_j G[:, support_j]`` for all rows is equivalent to
    the identity holding on every codeword.  Raises :class:`CertificationError`
    naming the first violating group.
    """
    F, G = code.field, code.encoding_matrix
    if structure.n != code.n:
        raise ValueError(f"structure has {structure.n} coordinates, code has {code.n}")
    by_size: dict[int, list[RepairGroup]] = {}
    for g in structure.all_groups():
        if not 0 <= g.target < code.n or any(not 0 <= j < code.n for j in g.support):
            raise IndexError(f"repair group for {g.target} has an index outside [0, {code.n})")
        by_size.setdefault(g.size, []).append(g)
    checked = 0
    for size, groups in by_size.items():
        chunk = max(1, budget // max(1, G.shape[0] * max(size, 1)))
        for s in range(0, len(groups), chunk):
            blk = groups[s:s + chunk]
            tgt = np.array([g.target for g in blk])
            sup = np.array([g.support for g in blk], dtype=np.int64).reshape(len(blk), size)
            lam = np.array([g.lam for g in blk], dtype=np.int64).reshape(len(blk), size)
            # (k, B, size) -> (k, B)
            pred = F.sum(F.mul(G[:, sup], lam[None, :, :]), axis=2) if size else np.zeros((G.shape[0], len(blk)), dtype=np.int64)
            bad = np.flatnonzero(np.any(pred != G[:, tgt], axis=0))
            if bad.size:
                raise CertificationError(blk[int(bad[0])])
            checked += len(blk)
    per_coord = [structure.availability_of(i) for i in range(code.n)]
    return {
        "certified": True,
        "groups_checked": checked,
        "locality": structure.locality,
        "localities": structure.localities(),
        "availability": min(per_coord) if per_coord else 0,
        "availability_histogram": _histogram(per_coord),
    }


def check_on_words(F: Field, words, structure: RecoveryStructure) -> list[RepairGroup]:
    """Groups whose functional disagrees with some of the given words (empty when all agree)."""
    words = np.atleast_2d(np.asarray(words, dtype=np.int64))
    by_size: dict[int, list[RepairGroup]] = {}
    for g in structure.all_groups():
        by_size.setdefault(g.size, []).append(g)
    bad = []
    for size, groups in by_size.items():
        chunk = max(1, (1 << 23) // max(1, words.shape[0] * size))
        for s in range(0, len(groups), chunk):
            blk = groups[s:s + chunk]
            sup = np.array([g.support for g in blk], dtype=np.int64).reshape(len(blk), size)
            lam = np.array([g.lam for g in blk], dtype=np.int64).reshape(len(blk), size)
            pred = F.sum(F.mul(words[:, sup], lam[None]), axis=2)
            tgt = words[:, [g.target for g in blk]]
            bad.extend(blk[int(j)] for j in np.flatnonzero(np.any(pred != tgt, axis=0)))
    return bad


def _histogram(values) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return dict(sorted(out.items()))


def derive_lambda(code: EvaluationCode, target: int, support: Sequence[int]) -> np.ndarray | None:
    """Solve ``G[:, target] = G[:, support] @ lam``; ``None`` if no recovery is possible."""
    support = list(support)
    if target in support:
        raise ValueError("support must exclude the target")
    G = code.encoding_matrix
    return linalg.solve(code.field, G[:, support], G[:, target])


def same_functional(code: EvaluationCode, support: Sequence[int], lam_a, lam_b) -> bool:
    """True when two coefficient vectors agree on every codeword."""
    F, G = code.field, code.encoding_matrix
    diff = F.sub(np.asarray(lam_a, dtype=np.int64), np.asarray(lam_b, dtype=np.int64))
    return not np.any(F.sum(F.mul(G[:, list(support)], diff[None, :]), axis=1))


def lambda_from_solve(code: EvaluationCode, target: int, support: Sequence[int],
                      label: str = "") -> RepairGroup | None:
    lam = derive_lambda(code, target, support)
    if lam is None:
        return None
    return RepairGroup(target, tuple(int(s) for s in support), tuple(int(v) for v in lam), label)


@dataclass
class RecoveryReport:
    repaired: list[dict]
    bandwidth: int
    residual: list[int]
    order: str = "ascending support size"

    def to_dict(self) -> dict:
        return {"repaired": self.repaired, "bandwidth": self.bandwidth,
                "residual": self.residual, "order": self.order}


def recover(received, structure: RecoveryStructure, F: Field, group_key=None,
            coordinate_order: Sequence[int] | None = None) -> tuple[list, RecoveryReport]:
    """Peel erasures with local groups until no further repair applies."""
    word = [None if w is ERASED else int(w) for w in received]
    if len(word) != structure.n:
        raise ValueError(f"word length {len(word)} != n = {structure.n}")
    erased = [i for i, w in enumerate(word) if w is ERASED]
    if coordinate_order is not None:
        rank = {c: r for r, c in enumerate(coordinate_order)}
        erased.sort(key=lambda i: rank.get(i, len(rank) + i))
    repaired: list[dict] = []
    bandwidth = 0
    progress = True
    while erased and progress:
        progress = False
        still = []
        for i in erased:
            for g in structure.ordered(i, group_key):
                if all(word[j] is not ERASED for j in g.support):
                    vals = np.array([word[j] for j in g.support], dtype=np.int64)
                    word[i] = int(F.dot(vals, np.array(g.lam, dtype=np.int64)))
                    repaired.append({"index": i, "value": word[i], "support": list(g.support),
                                     "group": g.label})
                    bandwidth += g.size
                    progress = True
                    break
            else:
                still.append(i)
        erased = still
    return word, RecoveryReport(repaired, bandwidth, sorted(erased))


def erased_closure(erased: set[int], structure: RecoveryStructure, group_key=None
                   ) -> tuple[set[int], int, list[int]]:
    """Symbol-free peeling: which erasures are locally repairable.

    Returns ``(residual, bandwidth, sizes_used)``.
    """
    erased = set(erased)
    sizes: list[int] = []
    progress = True
    while erased and progress:
        progress = False
        for i in sorted(erased):
            for g in structure.ordered(i, group_key):
                if erased.isdisjoint(g.support):
                    erased.discard(i)
                    sizes.append(g.size)
                    progress = True
                    break
    return erased, sum(sizes), sizes


@dataclass
class LocalCode:
    """An evaluation code bundled with its recovery structure."""

    code: EvaluationCode
    structure: RecoveryStructure
    construction: str = ""
    params: dict = dc_field(default_factory=dict)
    targets: dict = dc_field(default_factory=dict)
    extra: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> Field:
        return self.code.field

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    def certify(self) -> dict:
        return certify(self.code, self.structure)

    def recover(self, received, **kw):
        return recover(received, self.structure, self.code.field, **kw)
