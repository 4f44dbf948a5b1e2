"""Synthetic dynamic graphs with planted temporal clusters.

The aggregated topology is a random regular graph and carries no cluster
signal. Clusters exist only in the ordering of time stamps: two-edge
sequences ``(v0, v1; t), (v1, v2; t + 1)`` are rewired by exchanging time
stamps so that length-two causal paths preferentially start and end in the
same cluster.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import GenerationError
from .temporal import TemporalGraph

log = logging.getLogger(__name__)

NUM_CLUSTERS = 3


@dataclass(frozen=True)
class ClusterModelParams:
    n: int = 30
    degree: int = 4
    num_sequences: int = 2000
    seed: int = 0
    swaps_per_sequence: int = 1
    # extra sequences starting or ending at one high-activity hub per cluster
    hub_sequences: int = 0
    max_graph_retries: int = 10_000

    def __post_init__(self):
        if self.n < 6 or self.n % NUM_CLUSTERS:
            raise ValueError(f"n must be >= 6 and divisible by 3, got {self.n}")
        if self.degree < 2 or self.degree >= self.n:
            raise ValueError(f"degree must lie in [2, n), got {self.degree}")
        if (self.n * self.degree) % 2:
            raise ValueError(f"n * degree must be even, got {self.n} * {self.degree}")
        if self.num_sequences < 1:
            raise ValueError("num_sequences must be >= 1")
        if self.swaps_per_sequence < 0 or self.hub_sequences < 0:
            raise ValueError("swap and hub counts must be non-negative")


def random_regular_graph(n: int, degree: int, rng: np.random.Generator, max_retries: int = 10_000) -> set:
    """Simple ``degree``-regular graph on ``0..n-1`` by stub pairing with rejection."""
    if (n * degree) % 2 or not 0 <= degree < n:
        raise GenerationError(f"no {degree}-regular graph on {n} vertices")
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(max_retries):
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        lo = pairs.min(axis=1)
        hi = pairs.max(axis=1)
        if np.any(lo == hi):
            continue
        edges = set(zip(lo.tolist(), hi.tolist()))
        if len(edges) == len(pairs):
            return edges
    raise GenerationError(f"no simple {degree}-regular graph on {n} vertices after {max_retries} attempts")


def _vertex_name(i: int) -> str:
    return f"v{i}"


@dataclass(frozen=True)
class ClusterGraph:
    graph: TemporalGraph
    clusters: dict
    hubs: list
    swaps: int
    misses: int


def generate_cluster_graph(
    params: ClusterModelParams, strict: bool = False
) -> tuple[TemporalGraph, dict[str, int]]:
    """Dynamic graph with three temporal clusters; see :func:`generate`."""
    result = generate(params, strict)
    return result.graph, result.clusters


def generate(params: ClusterModelParams, strict: bool = False) -> ClusterGraph:
    """Dynamic graph with three temporal clusters.

    1. draw a random regular graph and split its vertices into three equal
       clusters at random;
    2. emit ``num_sequences`` two-edge sequences ``(v0, v1; 3i), (v1, v2; 3i + 1)``
       with ``v1`` uniform and ``v0, v2`` uniform neighbours of ``v1``;
    3. for each sequence through ``v1``, pick a sequence ``u v1 w`` with
       ``C(u) = C(v1) != C(w)`` and a sequence ``x v1 z`` with
       ``C(z) = C(v1) != C(x)``, and exchange the time stamps of the
       outgoing edges so they become ``u v1 z`` and ``x v1 w``.

    Step 3 only permutes time stamps among edges leaving ``v1``; neither the
    edge multiset nor the time stamp multiset changes. Attempts for which no
    such pair of sequences exists are counted and logged; ``strict`` turns
    them into a :class:`GenerationError`, and a run in which no exchange
    succeeds at all always raises (unless none were requested).
    """
    rng = np.random.default_rng(params.seed)
    n = params.n
    edges = random_regular_graph(n, params.degree, rng, params.max_graph_retries)
    neighbours: list[list[int]] = [[] for _ in range(n)]
    for a, b in sorted(edges):
        neighbours[a].append(b)
        neighbours[b].append(a)

    perm = rng.permutation(n)
    cluster = np.empty(n, dtype=int)
    cluster[perm] = np.arange(n) % NUM_CLUSTERS

    hubs = []
    if params.hub_sequences:
        for c in range(NUM_CLUSTERS):
            members = np.flatnonzero(cluster == c)
            hubs.append(int(rng.choice(members)))

    # each sequence: [v0, v1, v2]; base time is 3 * index
    sequences = []
    for v1 in rng.integers(0, n, size=params.num_sequences).tolist():
        nb = neighbours[v1]
        v0 = nb[int(rng.integers(len(nb)))]
        v2 = nb[int(rng.integers(len(nb)))]
        sequences.append([v0, v1, v2])
    # hub sequences start or end at the hub, so the hub reaches its whole
    # two-hop neighbourhood through causal paths
    for i in range(params.hub_sequences):
        hub = hubs[i % NUM_CLUSTERS]
        mid = neighbours[hub][int(rng.integers(len(neighbours[hub])))]
        far = neighbours[mid][int(rng.integers(len(neighbours[mid])))]
        sequences.append([hub, mid, far] if i % 2 == 0 else [far, mid, hub])

    through: dict[int, list[int]] = {}
    for i, (_, v1, _) in enumerate(sequences):
        through.setdefault(v1, []).append(i)

    swaps = misses = 0
    for i in range(len(sequences)):
        v1 = sequences[i][1]
        for _ in range(params.swaps_per_sequence):
            home = cluster[v1]
            leaves = [j for j in through[v1]
                      if cluster[sequences[j][0]] == home and cluster[sequences[j][2]] != home]
            enters = [j for j in through[v1]
                      if cluster[sequences[j][2]] == home and cluster[sequences[j][0]] != home]
            if not leaves or not enters:
                misses += 1
                continue
            a = leaves[int(rng.integers(len(leaves)))]
            b = enters[int(rng.integers(len(enters)))]
            sequences[a][2], sequences[b][2] = sequences[b][2], sequences[a][2]
            swaps += 1

    if misses:
        log.info("timestamp exchange: %d done, %d attempts found no candidate sequences", swaps, misses)
        if strict:
            raise GenerationError(f"{misses} exchange attempts found no candidate sequences")
    if swaps == 0 and params.swaps_per_sequence:
        raise GenerationError("no timestamp exchange was possible; clusters cannot be planted")

    tedges = []
    for i, (v0, v1, v2) in enumerate(sequences):
        t = 3 * i
        tedges.append((_vertex_name(v0), _vertex_name(v1), t))
        tedges.append((_vertex_name(v1), _vertex_name(v2), t + 1))
    graph = TemporalGraph(tedges, vertices=[_vertex_name(i) for i in range(n)])
    cluster_map = {_vertex_name(i): int(cluster[i]) for i in range(n)}
    return ClusterGraph(graph, cluster_map, [_vertex_name(h) for h in hubs], swaps, misses)


def intra_inter_distance_ratio(layout, cluster_map: Mapping[str, int]) -> float:
    """Mean pairwise distance within clusters over mean pairwise distance across clusters."""
    if len(set(cluster_map.values())) < 2:
        raise ValueError("need at least two clusters")
    vs = sorted(cluster_map)
    pos = np.array([layout.positions[v] for v in vs], dtype=float)
    labels = np.array([cluster_map[v] for v in vs])
    iu = np.triu_indices(len(vs), k=1)
    d = np.linalg.norm(pos[iu[0]] - pos[iu[1]], axis=1)
    same = labels[iu[0]] == labels[iu[1]]
    if not same.any():
        raise ValueError("no cluster has two members")
    return float(d[same].mean() / d[~same].mean())


def cluster_path_bias(pc, cluster_map: Mapping[str, int], length: int = 2) -> float:
    """Ratio of within-cluster to cross-cluster path counts (by endpoints) at one length."""
    within = across = 0
    for p, c in pc.of_length(length).items():
        if cluster_map[p[0]] == cluster_map[p[-1]]:
            within += c
        else:
            across += c
    return within / across if across else float("inf")
