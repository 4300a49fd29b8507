"""A deterministic storage-cluster simulation: one codeword symbol per node.

Each trial fails some nodes, peels the failures with local repair groups and
records what was read.  Trial ``i`` draws from PCG64 seeded with
``SeedSequence(seed, spawn_key=(i,))``, so trials are independent, any subset
can be replayed, and neighbouring seeds do not share trials.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .evalcode import EvaluationCode
from .recovery import RecoveryStructure, certify, erased_closure, max_disjoint


@dataclass(frozen=True)
class ClusterModel:
    p: float = 0.0
    failed: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"failure probability {self.p} outside [0, 1]")
        if self.seed < 0 or self.seed >= 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def sample(self, n: int, trial: int) -> np.ndarray:
        """Boolean mask of failed nodes for one trial."""
        mask = np.zeros(n, dtype=bool)
        if self.failed is not None:
            idx = np.asarray(self.failed, dtype=np.int64)
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise IndexError(f"failed node outside [0, {n})")
            mask[idx] = True
            return mask
        if self.p > 0:
            rng = np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(trial,)))
            mask = rng.random(n) < self.p
        return mask


@dataclass
class SimReport:
    trials: int
    failures: int
    repaired: int
    locally_repaired_fraction: float | None
    mean_repair_bandwidth: float | None
    max_repair_bandwidth: int
    total_bandwidth: int
    residual: int
    residual_failure_rate: float
    parallel_capacity_histogram: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["parallel_capacity_histogram"] = {str(k): v for k, v in
                                            sorted(self.parallel_capacity_histogram.items())}
        return d


class UncertifiedStructure(ValueError):
    pass


class _GroupIndex:
    """Flat arrays over all groups, for vectorised availability checks."""

    def __init__(self, structure: RecoveryStructure):
        groups = list(structure.all_groups())
        self.groups = groups
        width = max((g.size for g in groups), default=0)
        self.target = np.array([g.target for g in groups], dtype=np.int64)
        sup = np.full((len(groups), max(width, 1)), -1, dtype=np.int64)
        for j, g in enumerate(groups):
            sup[j, :g.size] = g.support
        self.support = sup
        self.n = structure.n
        # coordinates whose groups are pairwise disjoint: capacity = number usable
        self.simple = np.array([max_disjoint(gs) == len(gs) for gs in structure.groups])

    def usable(self, failed: np.ndarray) -> np.ndarray:
        padded = np.append(failed, False)  # index -1 -> the padding slot
        return ~padded[self.support].any(axis=1)

    def capacity(self, failed: np.ndarray) -> np.ndarray:
        """Disjoint usable groups per coordinate."""
        ok = self.usable(failed)
        counts = np.bincount(self.target[ok], minlength=self.n)
        for i in np.flatnonzero(~self.simple):
            gs = [g for g, u in zip(self.groups, ok) if u and g.target == i]
            counts[i] = max_disjoint(gs)
        return counts


def _require_certified(code, structure, certificate):
    if certificate is None:
        try:
            certificate = certify(code, structure)
        except AssertionError as exc:
            raise UncertifiedStructure(str(exc)) from exc
    if not certificate.get("certified"):
        raise UncertifiedStructure("structure has not passed certification")
    return certificate


def simulate(code: EvaluationCode, structure: RecoveryStructure, model: ClusterModel,
             trials: int, certificate: dict | None = None) -> SimReport:
    """Run ``trials`` independent failure rounds; pass a ``certify`` result to skip re-checking."""
    _require_certified(code, structure, certificate)
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    n = structure.n
    index = _GroupIndex(structure)
    limit = structure.declared_locality or structure.locality
    failures = repaired = total_bw = max_bw = residual = bad_trials = 0
    hist: dict[int, int] = {}
    for i in range(trials):
        mask = model.sample(n, i)
        erased = set(int(j) for j in np.flatnonzero(mask))
        left, bw, sizes = erased_closure(erased, structure)
        assert all(s <= limit for s in sizes), "repair read more than the declared locality"
        failures += len(erased)
        repaired += len(erased) - len(left)
        total_bw += bw
        max_bw = max([max_bw, *sizes])
        residual += len(left)
        bad_trials += bool(left)
        cap = index.capacity(mask)[~mask]
        for v, c in zip(*np.unique(cap, return_counts=True)):
            hist[int(v)] = hist.get(int(v), 0) + int(c)
    return SimReport(
        trials=trials,
        failures=failures,
        repaired=repaired,
        locally_repaired_fraction=repaired / failures if failures else None,
        mean_repair_bandwidth=total_bw / repaired if repaired else None,
        max_repair_bandwidth=max_bw,
        total_bandwidth=total_bw,
        residual=residual,
        residual_failure_rate=bad_trials / trials if trials else 0.0,
        parallel_capacity_histogram=hist,
    )


def degraded_read(code: EvaluationCode, structure: RecoveryStructure, hot_coordinate: int,
                  concurrent_readers: int, failed=(), certificate: dict | None = None) -> int:
    """Readers of one symbol served at once: the node itself plus one per
    disjoint repair group whose support is intact."""
    _require_certified(code, structure, certificate)
    if not 0 <= hot_coordinate < structure.n:
        raise IndexError(f"coordinate {hot_coordinate} outside [0, {structure.n})")
    failed = set(failed)
    direct = 0 if hot_coordinate in failed else 1
    usable = [g for g in structure.groups[hot_coordinate] if failed.isdisjoint(g.support)]
    return min(concurrent_readers, direct + max_disjoint(usable))
