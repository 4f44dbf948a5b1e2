"""Layout quality measures for causal topologies.

* ``edge_crossing``: number of edge pairs whose drawn segments cross;
* ``causal_path_dispersion``: spread of path vertices around their path
  barycentre relative to the spread of all vertices around the layout
  barycentre;
* ``temporal_closeness``: path-based closeness centrality;
* ``closeness_eccentricity``: barycentre distance of the most central
  vertices relative to all vertices.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .paths import PathCollection

GRID_BITS = 30
_EPS = 2.0 ** -53


@dataclass
class MetricReport:
    edge_crossings: int
    dispersion: float
    eccentricity: dict = field(default_factory=dict)
    closeness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eccentricity"] = {str(g): v for g, v in self.eccentricity.items()}
        return d


def barycentre(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("barycentre of an empty point set")
    return pts.mean(axis=0)


# -- edge crossings -----------------------------------------------------------

def snap(coords: np.ndarray) -> np.ndarray:
    """Round coordinates to the ``2**-30`` grid, returned in grid units."""
    return np.round(np.asarray(coords, dtype=float) * 2.0 ** GRID_BITS)


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    det = (int(bx) - int(ax)) * (int(cy) - int(ay)) - (int(by) - int(ay)) * (int(cx) - int(ax))
    return (det > 0) - (det < 0)


def _orient(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Sign of the orientation of ``(a, b, c)`` row-wise, exact for grid points.

    A floating-point evaluation is accepted when it clears its rounding error
    bound; the remaining rows are recomputed with Python integers.
    """
    p1 = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
    p2 = (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    det = p1 - p2
    bound = 4.0 * _EPS * (np.abs(p1) + np.abs(p2))
    sign = np.sign(det).astype(np.int64)
    unsure = np.flatnonzero(np.abs(det) <= bound)
    for r in unsure:
        sign[r] = _orient_exact(a[r, 0], a[r, 1], b[r, 0], b[r, 1], c[r, 0], c[r, 1])
    return sign


def _crossing_mask(a, b, c, d) -> np.ndarray:
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    proper = (o1 * o2 < 0) & (o3 * o4 < 0)
    collinear = (o1 == 0) & (o2 == 0) & (o3 == 0) & (o4 == 0)
    if collinear.any():
        idx = np.flatnonzero(collinear)
        axis = np.where(np.abs(b[idx, 0] - a[idx, 0]) >= np.abs(b[idx, 1] - a[idx, 1]), 0, 1)
        pick = lambda p: p[idx, axis]  # noqa: E731
        lo1 = np.minimum(pick(a), pick(b))
        hi1 = np.maximum(pick(a), pick(b))
        lo2 = np.minimum(pick(c), pick(d))
        hi2 = np.maximum(pick(c), pick(d))
        proper[idx] = np.maximum(lo1, lo2) < np.minimum(hi1, hi2)
    return proper


def edge_crossing(layout, edges: Iterable[tuple], block: int = 256) -> int:
    """Count unordered pairs of edges whose open segments intersect.

    Edges are taken as undirected; duplicates and self-loops are dropped.
    Pairs sharing an endpoint never count. Collinear segments that overlap
    along a positive length count as crossing. Coordinates are snapped to a
    ``2**-30`` grid and the orientation predicate is evaluated exactly there.
    """
    pairs = sorted({(min(v, w), max(v, w)) for v, w in edges if v != w})
    if len(pairs) < 2:
        return 0
    vs = sorted({v for e in pairs for v in e})
    index = {v: i for i, v in enumerate(vs)}
    pts = snap([layout.positions[v] for v in vs])
    u = np.array([index[v] for v, _ in pairs])
    w = np.array([index[v] for _, v in pairs])
    P, Q = pts[u], pts[w]
    lo = np.minimum(P, Q)
    hi = np.maximum(P, Q)
    m = len(pairs)
    total = 0
    for start in range(0, m, block):
        rows = np.arange(start, min(start + block, m))
        i, j = np.meshgrid(rows, np.arange(m), indexing="ij")
        keep = j > i
        i, j = i[keep], j[keep]
        disjoint = (u[i] != u[j]) & (u[i] != w[j]) & (w[i] != u[j]) & (w[i] != w[j])
        boxes = np.all(lo[i] <= hi[j], axis=1) & np.all(lo[j] <= hi[i], axis=1)
        sel = disjoint & boxes
        i, j = i[sel], j[sel]
        if len(i):
            total += int(_crossing_mask(P[i], Q[i], P[j], Q[j]).sum())
    return total


# -- dispersion ---------------------------------------------------------------

def _mean_spread(layout, vertices: Sequence) -> float:
    pts = layout.coords(vertices)
    return float(np.linalg.norm(pts - pts.mean(axis=0), axis=1).mean())


def causal_path_dispersion(layout, pc: PathCollection, lengths: Iterable[int] | None = None) -> float:
    """Frequency-weighted mean per-vertex distance of path vertices to their path barycentre,
    divided by the mean distance of all layout vertices to the layout barycentre.

    Vertices revisited by a path count with multiplicity. ``lengths`` restricts
    the paths considered; by default all are used.
    """
    vs = layout.vertices
    overall = _mean_spread(layout, vs)
    if not overall > 0:
        raise ValueError("all vertices coincide; dispersion is undefined")
    index = {v: i for i, v in enumerate(vs)}
    pts = layout.coords(vs)
    wanted = pc.lengths if lengths is None else sorted(set(lengths))
    weighted = 0.0
    total = 0
    for length in wanted:
        group = pc.of_length(length)
        if not group:
            continue
        keys = sorted(group)
        idx = np.array([[index[v] for v in p] for p in keys])
        freq = np.array([group[p] for p in keys], dtype=float)
        xy = pts[idx]  # (m, length + 1, 2)
        centre = xy.mean(axis=1, keepdims=True)
        spread = np.linalg.norm(xy - centre, axis=2).mean(axis=1)
        weighted += float(spread @ freq)
        total += int(freq.sum())
    if total == 0:
        raise ValueError("no paths to evaluate")
    return (weighted / total) / overall


# -- temporal closeness -------------------------------------------------------

def temporal_closeness(pc: PathCollection, vertices: Iterable) -> dict:
    """Closeness of every vertex from distances along observed paths.

    For each partner ``w`` the number of path occurrences containing both
    ``v`` and ``w`` is divided by the summed distance between their first
    occurrences along those paths; the ratios are summed over partners.
    """
    together: dict = defaultdict(float)
    distance: dict = defaultdict(float)
    for p, c in pc.counts.items():
        first: dict = {}
        for i, v in enumerate(p):
            first.setdefault(v, i)
        nodes = sorted(first)
        for a in range(len(nodes)):
            for b in range(a + 1, len(nodes)):
                key = (nodes[a], nodes[b])
                together[key] += c
                distance[key] += c * abs(first[nodes[a]] - first[nodes[b]])
    cc = {v: 0.0 for v in vertices}
    for (v, w), n in sorted(together.items()):
        d = distance[(v, w)]
        if d > 0:
            if v in cc:
                cc[v] += n / d
            if w in cc:
                cc[w] += n / d
    return cc


def top_fraction(scores: Mapping, gamma: float) -> list:
    """The ``ceil(gamma * |V| / 100)`` highest-scoring vertices, ties by name."""
    if not 0 < gamma <= 100:
        raise ValueError(f"gamma must lie in (0, 100], got {gamma}")
    size = math.ceil(round(gamma * len(scores) / 100.0, 9))
    return sorted(scores, key=lambda v: (-scores[v], v))[:size]


def closeness_eccentricity(layout, closeness: Mapping, gamma: float) -> float:
    """Mean barycentre distance of the top-``gamma`` % closeness vertices over that of all vertices."""
    vs = layout.vertices
    if not vs:
        raise ValueError("empty layout")
    pts = layout.coords(vs)
    dist = np.linalg.norm(pts - pts.mean(axis=0), axis=1)
    mean_all = dist.mean()
    if not mean_all > 0:
        raise ValueError("all vertices coincide; eccentricity is undefined")
    scores = {v: closeness.get(v, 0.0) for v in vs}
    top = set(top_fraction(scores, gamma))
    mask = np.array([v in top for v in vs])
    return float(dist[mask].mean() / mean_all)


def metric_report(layout, pc: PathCollection, edges, gammas=(10,)) -> MetricReport:
    cc = temporal_closeness(pc, layout.vertices)
    return MetricReport(
        edge_crossings=edge_crossing(layout, edges),
        dispersion=causal_path_dispersion(layout, pc),
        eccentricity={g: closeness_eccentricity(layout, cc, g) for g in gammas},
        closeness=cc,
    )
