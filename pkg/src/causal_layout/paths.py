"""Causal (time-respecting) path statistics.

A causal path ``v0 v1 ... vl`` is a sequence of time-stamped edges
``(v_i, v_{i+1}; t_i)`` with ``0 < t_{i+1} - t_i <= delta``. Its length is the
number of edges, so single time-stamped edges are paths of length one.

Counting convention: every time-respecting window is an occurrence of its own,
including the sub-paths of longer causal paths. The count of a path is the
number of distinct edge tuples (with duplicate time-stamped edges counted with
multiplicity) realising it, so length-one counts coincide with the
time-aggregated edge weights.
"""

from __future__ import annotations

import hashlib
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from .errors import ResourceCapExceeded
from .temporal import TemporalGraph

Path = tuple  # tuple[str, ...], at least two nodes

DEFAULT_PARTIAL_PATH_CAP = 10**8


@dataclass(frozen=True)
class PathCollection:
    """Multiset of paths with integer frequencies.

    ``counts`` maps node tuples to frequencies ``>= 1``; every stored path has
    between 1 and ``max_length`` edges. ``delta`` is ``None`` for collections
    built from observed trajectories.
    """

    counts: Mapping[tuple, int]
    max_length: int
    delta: Optional[int] = None
    _by_length: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.max_length < 1:
            raise ValueError("max_length must be >= 1")
        by_length: dict[int, dict[tuple, int]] = defaultdict(dict)
        for p, c in self.counts.items():
            if len(p) < 2 or len(p) - 1 > self.max_length:
                raise ValueError(f"path {p!r} has length outside [1, {self.max_length}]")
            if c < 1:
                raise ValueError(f"path {p!r} has non-positive count {c}")
            by_length[len(p) - 1][p] = c
        object.__setattr__(self, "_by_length", dict(by_length))

    def of_length(self, length: int) -> dict[tuple, int]:
        """Paths with exactly ``length`` edges and their counts."""
        return self._by_length.get(length, {})

    @property
    def lengths(self) -> list[int]:
        return sorted(self._by_length)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for p in self.counts for v in p)

    def total(self, length: Optional[int] = None) -> int:
        counts = self.counts if length is None else self.of_length(length)
        return sum(counts.values())

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts.items())

    def fingerprint(self) -> str:
        """Stable content hash, used to tag layouts with the data they came from."""
        h = hashlib.sha256()
        h.update(f"{self.max_length}|{self.delta}\n".encode())
        for p in sorted(self.counts):
            h.update(("\x1f".join(p) + f"\x1e{self.counts[p]}\n").encode())
        return h.hexdigest()[:16]


def extract_causal_paths(
    g: TemporalGraph,
    delta: int,
    max_length: int,
    partial_path_cap: int = DEFAULT_PARTIAL_PATH_CAP,
) -> PathCollection:
    """Count all causal paths of length ``1..max_length`` in ``g``.

    Edges are swept in timestamp order. For every timestamp the algorithm
    keeps, per vertex, the partial paths (shorter than ``max_length``) whose
    last edge arrived at that vertex at that time. An edge ``(v, w; t)``
    extends every partial path ending at ``v`` at some time in
    ``[t - delta, t - 1]``; edges sharing a timestamp never chain.

    Parameters
    ----------
    g:
        the dynamic graph
    delta:
        maximum time difference between consecutive edges of a path
    max_length:
        longest path length (in edges) to count
    partial_path_cap:
        abort with :class:`ResourceCapExceeded` once more partial paths than
        this are held in memory at the same time

    Returns
    -------
    PathCollection
    """
    if delta < 1:
        raise ValueError(f"delta must be a positive integer, got {delta}")
    if max_length < 1:
        raise ValueError(f"max_length must be >= 1, got {max_length}")

    src, dst, time = g.arrays
    names = g.vertex_list
    counts: dict[tuple, int] = defaultdict(int)

    if len(time) == 0:
        return PathCollection({}, max_length, delta)

    order = np.argsort(time, kind="stable")
    s_sorted = src[order].tolist()
    d_sorted = dst[order].tolist()
    t_sorted = time[order]
    boundaries = np.flatnonzero(np.diff(t_sorted)) + 1
    starts = [0, *boundaries.tolist()]
    stops = [*boundaries.tolist(), len(t_sorted)]
    t_list = t_sorted.tolist()

    # window of recent timestamps: deque of (t, {vertex: {path: count}})
    window: deque = deque()
    active = 0
    for lo, hi in zip(starts, stops):
        t = t_list[lo]
        while window and window[0][0] < t - delta:
            _, old = window.popleft()
            active -= sum(len(ps) for ps in old.values())
        arriving: dict[int, dict[tuple, int]] = defaultdict(lambda: defaultdict(int))
        for i in range(lo, hi):
            v = s_sorted[i]
            w = d_sorted[i]
            edge = (v, w)
            counts[edge] += 1
            if max_length == 1:
                continue
            arriving[w][edge] += 1
            for _, ends in window:
                partials = ends.get(v)
                if not partials:
                    continue
                for p, c in partials.items():
                    q = p + (w,)
                    counts[q] += c
                    if len(q) <= max_length:  # q has len(q)-1 < max_length edges
                        arriving[w][q] += c
        if max_length > 1:
            active += sum(len(ps) for ps in arriving.values())
            if active > partial_path_cap:
                raise ResourceCapExceeded(
                    f"{active} partial paths held at t={t} exceed the cap of {partial_path_cap}"
                )
            window.append((t, arriving))

    named = {tuple(names[i] for i in p): c for p, c in counts.items()}
    return PathCollection(named, max_length, delta)


def window_trajectories(trajectories: Iterable[tuple[tuple, int]], max_length: int) -> PathCollection:
    """Count every contiguous sub-path (length ``1..max_length``) of observed trajectories.

    Each sub-path occurrence inherits the frequency of its trajectory.
    """
    if max_length < 1:
        raise ValueError(f"max_length must be >= 1, got {max_length}")
    counts: dict[tuple, int] = defaultdict(int)
    for nodes, freq in trajectories:
        nodes = tuple(nodes)
        if len(nodes) < 2:
            raise ValueError(f"trajectory {nodes!r} has fewer than two nodes")
        if freq < 1:
            raise ValueError(f"trajectory {nodes!r} has non-positive frequency {freq}")
        L = len(nodes) - 1
        for length in range(1, min(L, max_length) + 1):
            for start in range(L - length + 1):
                counts[nodes[start:start + length + 1]] += freq
    return PathCollection(dict(counts), max_length, None)


def split(pc: PathCollection, train_fraction: float, seed: int) -> tuple[PathCollection, PathCollection]:
    """Assign every path occurrence to a training set with probability ``train_fraction``.

    Occurrences are assigned independently, so a path with count ``c`` puts a
    binomial share of ``c`` into training and the rest into test.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    if len(pc) == 0:
        raise ValueError("cannot split an empty path collection")
    keys = sorted(pc.counts)
    totals = np.array([pc.counts[p] for p in keys], dtype=np.int64)
    rng = np.random.default_rng(seed)
    train_counts = rng.binomial(totals, train_fraction)
    train = {p: int(c) for p, c in zip(keys, train_counts) if c > 0}
    test = {p: int(n - c) for p, n, c in zip(keys, totals, train_counts) if n - c > 0}
    return (
        PathCollection(train, pc.max_length, pc.delta),
        PathCollection(test, pc.max_length, pc.delta),
    )
