"""Upper bounds on the minimum distance of LRCs, and optimality verdicts.

Everything is integer arithmetic.
"""

from __future__ import annotations

import csv
from dataclasses import asdict, dataclass, field
from importlib import resources

OPTIMAL = "optimal"
FEASIBLE = "feasible"
VIOLATES = "violates"

SINGLETON_LRC = "singleton_lrc"
AVAILABILITY_WZ = "availability_wz"
AVAILABILITY_TA = "availability_ta"


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class ParamTuple:
    n: int
    k: int
    d: int
    r: int
    t: int = 1
    q: int | None = None

    def __post_init__(self):
        n, k, d, r, t = self.n, self.k, self.d, self.r, self.t
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        if not 1 <= d <= n:
            raise ValueError(f"need 1 <= d <= n, got d={d}")
        if not 1 <= r <= k:
            raise ValueError(f"need 1 <= r <= k, got r={r}")
        if t < 1:
            raise ValueError(f"need t >= 1, got t={t}")


def singleton_lrc(n: int, k: int, r: int) -> int:
    """Largest ``d`` allowed by ``k + d <= n + 1 - (ceil(k/r) - 1)``."""
    return n - k + 1 - (ceil_div(k, r) - 1)


def availability_bound_wz(n: int, k: int, r: int, t: int) -> int:
    """``d <= n - k - ceil((t(k-1) + 1) / (t(r-1) + 1)) + 2``."""
    return n - k - ceil_div(t * (k - 1) + 1, t * (r - 1) + 1) + 2


def availability_bound_ta(n: int, k: int, r: int, t: int) -> int:
    """``d <= n - sum_{i=0..t} floor((k-1) / r^i)``; assumes all-symbol locality."""
    return n - sum((k - 1) // r**i for i in range(t + 1))


@dataclass
class BoundResult:
    name: str
    max_d: int
    slack: int
    verdict: str
    caveat: str | None = None


@dataclass
class BoundReport:
    params: ParamTuple
    bounds: list[BoundResult] = field(default_factory=list)

    @property
    def governing(self) -> BoundResult:
        return min(self.bounds, key=lambda b: b.max_d)

    @property
    def verdict(self) -> str:
        if any(b.verdict == VIOLATES for b in self.bounds):
            return VIOLATES
        return self.governing.verdict

    def bound(self, name: str) -> BoundResult:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "params": {k: v for k, v in asdict(self.params).items() if v is not None},
            "bounds": [{k: v for k, v in asdict(b).items() if v is not None} for b in self.bounds],
            "verdict": self.verdict,
            "governing": self.governing.name,
        }


def _verdict(slack: int) -> str:
    if slack < 0:
        return VIOLATES
    return OPTIMAL if slack == 0 else FEASIBLE


def classify(params: ParamTuple) -> BoundReport:
    """Evaluate the Singleton-type bound, plus both availability bounds when ``t >= 2``."""
    p = params
    report = BoundReport(p)
    values = [(SINGLETON_LRC, singleton_lrc(p.n, p.k, p.r), None)]
    if p.t >= 2:
        values.append((AVAILABILITY_WZ, availability_bound_wz(p.n, p.k, p.r, p.t), None))
        values.append((AVAILABILITY_TA, availability_bound_ta(p.n, p.k, p.r, p.t),
                       "valid only under all-symbol locality with t disjoint groups"))
    for name, max_d, caveat in values:
        slack = max_d - p.d
        report.bounds.append(BoundResult(name, max_d, slack, _verdict(slack), caveat))
    return report


def load_table(name: str = "table2.csv") -> list[dict]:
    """Rows of a shipped fixture CSV, with integer columns converted."""
    text = resources.files("lrcodes").joinpath("data", name).read_text()
    return read_rows(text.splitlines())


def read_rows(lines) -> list[dict]:
    rows = []
    for row in csv.DictReader(lines):
        rows.append({k: int(v) if v.lstrip("-").isdigit() else v for k, v in row.items()})
    return rows


def classify_rows(rows) -> list[BoundReport]:
    out = []
    for row in rows:
        out.append(classify(ParamTuple(row["n"], row["k"], row["d"], row["r"],
                                       row.get("t", 1), row.get("q"))))
    return out
