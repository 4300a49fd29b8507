"""Evaluation codes C(D, V): points, a function basis, and the generator matrix."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Sequence

import numpy as np

from . import linalg
from .gf import Field, FieldElement
from .poly import Monomial, UniPoly

ERASED = None

# provenance tags for design distances
FORMULA = "formula"
BRUTE_FORCE = "brute-force"
PUBLISHED_TARGET = "published target, unverified"
UNKNOWN = "unknown"


class PoleError(ZeroDivisionError):
    """A basis function is undefined at an evaluation point."""


def evaluate_function(fn, F: Field, coords: np.ndarray) -> np.ndarray:
    coords = np.atleast_2d(coords)
    try:
        if isinstance(fn, Monomial):
            return fn.evaluate(F, coords)
        if isinstance(fn, UniPoly):
            return fn(coords[:, 0])
        return np.asarray(fn(F, coords), dtype=np.int64)
    except ZeroDivisionError as exc:
        raise PoleError(f"basis function {fn} has a pole on the evaluation set") from exc


def function_label(fn) -> str:
    if isinstance(fn, Monomial):
        return fn.label()
    if isinstance(fn, UniPoly):
        return repr(fn)
    return getattr(fn, "__name__", repr(fn))


@dataclass
class EvaluationCode:
    field: Field
    points: np.ndarray
    basis: list
    generator: np.ndarray
    k: int
    independent: list[int]
    design_distance: int | None = None
    distance_provenance: str = UNKNOWN
    name: str = ""
    point_names: tuple[str, ...] = ()
    meta: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dependent_rows(self) -> list[int]:
        keep = set(self.independent)
        return [i for i in range(len(self.basis)) if i not in keep]

    @property
    def encoding_matrix(self) -> np.ndarray:
        return self.generator[self.independent]

    def point_label(self, j: int) -> str:
        pt = self.points[j]
        return str(int(pt[0])) if pt.size == 1 else "(" + ",".join(str(int(c)) for c in pt) + ")"

    def encode(self, message) -> np.ndarray:
        msg = np.asarray([m.value if isinstance(m, FieldElement) else int(m) for m in message],
                         dtype=np.int64)
        if msg.shape != (self.k,):
            raise ValueError(f"message length {msg.size} != k = {self.k}")
        return linalg.matmul(self.field, msg[None, :], self.encoding_matrix)[0]

    def random_codewords(self, count: int, rng: np.random.Generator) -> np.ndarray:
        msgs = rng.integers(0, self.field.q, size=(count, self.k))
        return linalg.matmul(self.field, msgs, self.encoding_matrix)

    def contains(self, word) -> bool:
        """Membership test by solving ``m G = word``."""
        return self.solve_message(word) is not None

    def solve_message(self, word) -> np.ndarray | None:
        word = np.asarray(word, dtype=np.int64)
        return linalg.solve(self.field, self.encoding_matrix.T, word)

    def summary(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "field": self.field.to_dict(),
            "n": self.n,
            "k": self.k,
            "basis_size": len(self.basis),
            "dependent_basis_rows": len(self.dependent_rows),
            "design_distance": self.design_distance,
            "distance_provenance": self.distance_provenance,
        }


def build_code(F: Field, points, basis: Sequence, *, name: str = "",
               design_distance: int | None = None, provenance: str = UNKNOWN,
               compute_rank: bool = True, meta: dict | None = None) -> EvaluationCode:
    """Evaluate every basis function at every point.

    The rank is computed by elimination unless ``compute_rank`` is false, in
    which case the caller vouches for independence of the basis.
    """
    pts = np.asarray(points, dtype=np.int64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[0] == 0:
        raise ValueError("evaluation set is empty")
    if not basis:
        raise ValueError("function basis is empty")
    G = np.vstack([evaluate_function(fn, F, pts) for fn in basis]).astype(np.int64)
    if compute_rank:
        independent = linalg.independent_rows(F, G)
    else:
        independent = list(range(len(basis)))
    return EvaluationCode(F, pts, list(basis), G, len(independent), independent,
                          design_distance, provenance, name, meta=dict(meta or {}))


def encode(code: EvaluationCode, message) -> np.ndarray:
    return code.encode(message)


def _mixed_radix(q: int, width: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, width), dtype=np.int64)
    for j in range(width - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def projective_class_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def min_distance_bruteforce(code: EvaluationCode, work_budget: int = 10**7,
                            batch: int = 1 << 15) -> int | None:
    """Exact minimum distance by scanning one message per scalar class.

    Returns ``None`` when ``(q^k - 1)/(q - 1)`` exceeds ``work_budget``.
    """
    F, k = code.field, code.k
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    if projective_class_count(F.q, k) > work_budget:
        return None
    G = code.encoding_matrix
    best = code.n
    for lead in range(k):
        free = k - lead - 1
        head = G[lead]
        tail = G[lead + 1:]
        total = F.q**free
        for s in range(0, total, batch):
            if free:
                msgs = _mixed_radix(F.q, free, s, min(total, s + batch))
                words = F.add(head[None, :], linalg.matmul(F, msgs, tail))
            else:
                words = head[None, :]
            w = int(np.count_nonzero(words, axis=1).min())
            best = min(best, w)
    return best


def min_distance_oracle(code: EvaluationCode) -> int:
    """Slow reference: every nonzero message, scalar arithmetic only."""
    F, G = code.field, code.encoding_matrix
    best = code.n
    for msg in itertools.product(range(F.q), repeat=code.k):
        if not any(msg):
            continue
        word = [F.zero] * code.n
        for c, row in zip(msg, G):
            if c:
                cf = FieldElement(F, c)
                word = [w + cf * FieldElement(F, int(g)) for w, g in zip(word, row)]
        best = min(best, sum(1 for w in word if w))
    return best


# --- received words -------------------------------------------------------

def parse_word(text: str, F: Field | None = None) -> list[int | None]:
    """Whitespace-separated codes, ``?`` marking an erasure."""
    out: list[int | None] = []
    for tok in text.split():
        if tok == "?":
            out.append(ERASED)
        else:
            v = int(tok)
            if F is not None and not 0 <= v < F.q:
                raise ValueError(f"symbol {v} is not an element of {F!r}")
            out.append(v)
    return out


def format_word(word) -> str:
    return " ".join("?" if w is ERASED else str(int(w)) for w in word)


def erase(word, positions) -> list[int | None]:
    out = [None if w is None else int(w) for w in word]
    for i in positions:
        if not 0 <= i < len(out):
            raise IndexError(f"position {i} outside word of length {len(out)}")
        out[i] = ERASED
    return out
