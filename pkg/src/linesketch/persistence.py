"""Sublevel-set persistence of a series: peaks and valleys with prominence.

Each local minimum opens a component at its value; when two components meet
at a saddle the younger one (higher birth) dies there. The global minimum
never dies by merging and is paired with the global maximum instead, the
merge-tree convention for a single connected series. Ties are broken by
sample index so every value is strictly ordered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TimeSeries
from .errors import ParameterError


@dataclass(frozen=True)
class PersistencePair:
    birth: float
    death: float

    def __post_init__(self):
        if self.death < self.birth:
            raise ParameterError(f"pair death {self.death} below birth {self.birth}")

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (birth, death) pairs, essential pair last."""

    pairs: tuple[PersistencePair, ...]

    @classmethod
    def from_values(cls, values) -> "PersistenceDiagram":
        return cls(tuple(PersistencePair(float(b), float(d)) for b, d in values))

    def __len__(self) -> int:
        return len(self.pairs)

    def births_deaths(self) -> np.ndarray:
        """Pairs as an (n, 2) array; empty diagrams give shape (0, 2)."""
        if not self.pairs:
            return np.empty((0, 2))
        return np.array([[p.birth, p.death] for p in self.pairs])

    def total_persistence(self) -> float:
        return float(sum(p.persistence for p in self.pairs))

    def max_persistence(self) -> float:
        return max((p.persistence for p in self.pairs), default=0.0)

    def to_json(self) -> list[list[float]]:
        return [[p.birth, p.death] for p in self.pairs]


def persistence_diagram(series: TimeSeries) -> PersistenceDiagram:
    """Pair every local minimum with the saddle where its component merges.

    Single sublevel sweep over the ordinates; the surviving component yields
    the essential (global min, global max) pair. Peaks and valleys are both
    captured by this one pairing, no superlevel union is taken.
    """
    ys = series.ys
    n = len(ys)
    order = np.lexsort((np.arange(n), ys))  # ascending by (value, index)

    parent = np.arange(n)

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # birth_index[root] is the representative minimum of the component.
    birth_index = np.arange(n)
    active = np.zeros(n, dtype=bool)
    pairs: list[tuple[float, float]] = []

    def older(i: int, j: int) -> bool:
        """Strict elder order on minima: lower value, then lower index."""
        return (ys[i], i) < (ys[j], j)

    for idx in order:
        active[idx] = True
        neighbors = [nb for nb in (idx - 1, idx + 1) if 0 <= nb < n and active[nb]]
        if not neighbors:
            # Local minimum under the strict order: a component is born.
            birth_index[idx] = idx
        elif len(neighbors) == 1:
            parent[idx] = find(neighbors[0])
        else:
            # Saddle between two components: the younger one dies here.
            ra, rb = find(neighbors[0]), find(neighbors[1])
            ba, bb = birth_index[ra], birth_index[rb]
            elder, younger = (ba, bb) if older(ba, bb) else (bb, ba)
            pairs.append((float(ys[younger]), float(ys[idx])))
            parent[ra] = rb
            parent[idx] = rb
            birth_index[rb] = elder
    pairs.append((float(ys.min()), float(ys.max())))
    pairs.sort()
    return PersistenceDiagram.from_values(pairs)
