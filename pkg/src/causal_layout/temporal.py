"""Dynamic graphs as multisets of directed, instantaneous time-stamped edges."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np


class TemporalGraph:
    """Vertex set plus a multiset of directed time-stamped edges ``(v, w; t)``.

    Vertex names are opaque strings. Internally every vertex gets a dense
    integer index (its position in :attr:`vertex_list`, which is sorted) and
    edges are held as three parallel integer arrays. Duplicate
    ``(v, w, t)`` triples are kept and counted with multiplicity.

    Instances are treated as immutable; the arrays are flagged read-only.
    """

    __slots__ = ("_vertex_list", "_index", "_src", "_dst", "_time")

    def __init__(self, edges: Iterable[tuple[str, str, int]] = (), vertices: Iterable[str] = ()):
        names = set(vertices)
        src_names: list[str] = []
        dst_names: list[str] = []
        times: list[int] = []
        for v, w, t in edges:
            if isinstance(t, bool) or int(t) != t:
                raise ValueError(f"timestamp must be an integer, got {t!r}")
            if t < 0:
                raise ValueError(f"timestamps must be non-negative, got {t}")
            src_names.append(str(v))
            dst_names.append(str(w))
            times.append(int(t))
        names.update(src_names)
        names.update(dst_names)
        self._vertex_list: tuple[str, ...] = tuple(sorted(names))
        self._index = {v: i for i, v in enumerate(self._vertex_list)}
        self._src = np.fromiter((self._index[v] for v in src_names), dtype=np.int64, count=len(src_names))
        self._dst = np.fromiter((self._index[w] for w in dst_names), dtype=np.int64, count=len(dst_names))
        self._time = np.asarray(times, dtype=np.int64)
        for arr in (self._src, self._dst, self._time):
            arr.setflags(write=False)

    @classmethod
    def _from_arrays(cls, vertex_list, src, dst, time) -> "TemporalGraph":
        g = cls.__new__(cls)
        g._vertex_list = tuple(vertex_list)
        g._index = {v: i for i, v in enumerate(g._vertex_list)}
        g._src = np.array(src, dtype=np.int64)
        g._dst = np.array(dst, dtype=np.int64)
        g._time = np.array(time, dtype=np.int64)
        for arr in (g._src, g._dst, g._time):
            arr.setflags(write=False)
        return g

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(self._vertex_list)

    @property
    def vertex_list(self) -> tuple[str, ...]:
        """Vertices in index order (lexicographic)."""
        return self._vertex_list

    def index(self, v: str) -> int:
        return self._index[v]

    @property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Read-only ``(source_index, target_index, time)`` arrays."""
        return self._src, self._dst, self._time

    @property
    def edges(self) -> list[tuple[str, str, int]]:
        names = self._vertex_list
        return [(names[s], names[d], int(t)) for s, d, t in zip(self._src, self._dst, self._time)]

    def __iter__(self) -> Iterator[tuple[str, str, int]]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self._time)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TemporalGraph):
            return NotImplemented
        return self._vertex_list == other._vertex_list and Counter(self.edges) == Counter(other.edges)

    def __repr__(self) -> str:
        return f"TemporalGraph(|V|={len(self._vertex_list)}, |E|={len(self)})"


@dataclass(frozen=True)
class AggregateGraph:
    """Time-aggregated projection: ``(v, w) -> number of activations``."""

    vertices: frozenset[str]
    weights: dict[tuple[str, str], int] = field(default_factory=dict)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return sorted(self.weights)

    def undirected_edges(self) -> list[tuple[str, str]]:
        """Sorted unique vertex pairs ``(a, b)`` with ``a < b``; self-loops dropped."""
        return sorted({(min(v, w), max(v, w)) for v, w in self.weights if v != w})


def aggregate(g: TemporalGraph) -> AggregateGraph:
    """Count how often each directed edge is active in ``g``."""
    src, dst, _ = g.arrays
    names = g.vertex_list
    n = max(len(names), 1)
    keys, counts = np.unique(src * n + dst, return_counts=True)
    weights = {(names[k // n], names[k % n]): int(c) for k, c in zip(keys.tolist(), counts.tolist())}
    return AggregateGraph(g.vertices, weights)


def shuffle_timestamps(g: TemporalGraph, seed: int) -> TemporalGraph:
    """Randomly permute the timestamps over the edges of ``g``.

    The multiset of ``(source, target)`` pairs and the multiset of timestamps
    are both preserved; only their pairing changes.
    """
    rng = np.random.default_rng(seed)
    src, dst, time = g.arrays
    return TemporalGraph._from_arrays(g.vertex_list, src, dst, time[rng.permutation(len(time))])
