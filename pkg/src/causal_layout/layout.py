"""Time-aware force-directed layout.

Attractive forces from the first-order graph and from De Bruijn models of
order ``2..K`` are superimposed into one coefficient map ``A[v0, vk]`` and fed
to a Fruchterman-Reingold many-body simulation.

Simulation details (all deterministic under ``seed``):

* positions start uniformly at random in the unit square;
* repulsion ``c**2 / d`` acts between every pair of base vertices;
* attraction ``(A[v, w] + A[w, v]) * d**2 / c`` acts on both endpoints with
  opposite signs;
* all displacements of one iteration are computed from the same positions
  and then applied, each capped at the current temperature;
* the temperature decays linearly, ``t0 * (1 - i / N)`` at iteration ``i``.

Results are bit-identical across runs on one platform. Across platforms they
depend on numpy's floating-point reductions (pairwise summation, BLAS-free
here) and the C library's ``sqrt``; IEEE-754 machines agree in practice.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Union

import numpy as np

from . import higher_order
from .errors import LayoutDivergence
from .paths import PathCollection
from .temporal import AggregateGraph

COINCIDENCE_EPS = 1e-9

ALPHA_SCHEMES = {
    "inverse": higher_order.default_alphas,
    "balanced": higher_order.balanced_alphas,
}


@dataclass(frozen=True)
class LayoutConfig:
    max_order: int = 1
    iterations: int = 1000
    # mapping k -> alpha_k, or a scheme name: "inverse" (1/m_k) or "balanced" (m_1/m_k)
    alphas: Union[Mapping[int, float], str, None] = None
    ideal_length: Optional[float] = None  # None: sqrt(1/|V|)
    initial_temperature: Optional[float] = None  # None: 0.1 (unit square side)
    seed: int = 0
    uniform_path_weights: bool = True

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if isinstance(self.alphas, str):
            if self.alphas not in ALPHA_SCHEMES:
                raise ValueError(f"unknown alpha scheme {self.alphas!r}; expected one of {sorted(ALPHA_SCHEMES)}")
        elif self.alphas is not None and any(a < 0 or not math.isfinite(a) for a in self.alphas.values()):
            raise ValueError("alphas must be finite and non-negative")
        if self.ideal_length is not None and not self.ideal_length > 0:
            raise ValueError("ideal_length must be positive")
        if self.initial_temperature is not None and not self.initial_temperature > 0:
            raise ValueError("initial_temperature must be positive")

    def resolve_alphas(self, pc: PathCollection) -> dict[int, float]:
        if self.alphas is None or isinstance(self.alphas, str):
            return ALPHA_SCHEMES[self.alphas or "inverse"](pc, self.max_order)
        return {int(k): float(v) for k, v in self.alphas.items()}

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.alphas is not None and not isinstance(self.alphas, str):
            d["alphas"] = {str(k): float(v) for k, v in sorted(self.alphas.items())}
        return d


@dataclass(frozen=True)
class Layout:
    positions: dict
    provenance: dict = field(default_factory=dict)

    @property
    def vertices(self) -> list:
        return sorted(self.positions)

    def coords(self, vertices: Optional[Iterable] = None) -> np.ndarray:
        vs = self.vertices if vertices is None else list(vertices)
        return np.array([self.positions[v] for v in vs], dtype=float).reshape(len(vs), 2)


def superimpose_forces(
    pc: PathCollection,
    max_order: int,
    alphas: Optional[Mapping[int, float]] = None,
    uniform_path_weights: bool = True,
) -> dict[tuple, float]:
    """Accumulate ``alpha_k * w`` onto ``A[v0, vk]`` for every order-``k`` edge.

    ``alpha_1`` is fixed to 1. With ``uniform_path_weights`` every distinct
    path contributes weight 1 regardless of its frequency. Orders whose
    coefficient is zero contribute no entries at all.
    """
    if alphas is None:
        alphas = higher_order.default_alphas(pc, max_order)
    attraction: dict[tuple, float] = {}
    for k in range(1, max_order + 1):
        g_k = higher_order.build(pc, k)
        alpha = 1.0 if k == 1 else float(alphas.get(k, 0.0))
        if alpha == 0.0:
            continue
        for (u, w), weight in sorted(g_k.edges.items()):
            key = (u[0], w[-1])
            contribution = alpha * (1 if uniform_path_weights else weight)
            attraction[key] = attraction.get(key, 0.0) + contribution
    return attraction


def _symmetric_matrix(vertices: list, attraction: Mapping[tuple, float]) -> np.ndarray:
    index = {v: i for i, v in enumerate(vertices)}
    W = np.zeros((len(vertices), len(vertices)))
    for (v, w), a in sorted(attraction.items()):
        if v == w:
            continue
        i, j = index[v], index[w]
        W[i, j] += a
        W[j, i] += a
    return W


def _coincident_direction(seed: int, i: int, j: int) -> np.ndarray:
    angle = np.random.default_rng([seed & 0xFFFFFFFF, i, j]).uniform(0.0, 2.0 * math.pi)
    return np.array([math.cos(angle), math.sin(angle)])


def pair_geometry(pos: np.ndarray, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise differences ``pos[i] - pos[j]`` and distances.

    Pairs closer than ``COINCIDENCE_EPS`` are pulled apart along a unit vector
    derived from ``(seed, i, j)``; the diagonal gets distance 1 and a zero
    difference so it contributes no force.
    """
    delta = pos[:, None, :] - pos[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", delta, delta))
    np.fill_diagonal(dist, 1.0)
    close = np.argwhere(dist < COINCIDENCE_EPS)
    for i, j in close:
        if i < j:
            u = _coincident_direction(seed, int(i), int(j)) * COINCIDENCE_EPS
            delta[i, j] = u
            delta[j, i] = -u
            dist[i, j] = dist[j, i] = COINCIDENCE_EPS
    return delta, dist


def forces(pos: np.ndarray, W: np.ndarray, ideal_length: float, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Repulsive and attractive force on every vertex, as two ``(n, 2)`` arrays."""
    delta, dist = pair_geometry(pos, seed)
    c = ideal_length
    repulsive = np.einsum("ijk,ij->ik", delta, c * c / (dist * dist))
    attractive = -np.einsum("ijk,ij->ik", delta, W * dist / c)
    return repulsive, attractive


def temperature_schedule(t0: float, iterations: int) -> np.ndarray:
    return t0 * (1.0 - np.arange(iterations) / iterations)


def run_simulation(
    vertices: list,
    attraction: Mapping[tuple, float],
    *,
    iterations: int,
    seed: int,
    ideal_length: Optional[float] = None,
    initial_temperature: Optional[float] = None,
    callback: Optional[Callable[[int, float, np.ndarray], None]] = None,
) -> np.ndarray:
    """Fruchterman-Reingold simulation over ``vertices`` (sorted order is the caller's job).

    ``callback(i, temperature, pos)`` is invoked after every iteration.
    Returns the final ``(n, 2)`` position array.
    """
    n = len(vertices)
    if n == 0:
        raise ValueError("cannot lay out an empty vertex set")
    c = ideal_length if ideal_length is not None else math.sqrt(1.0 / n)
    t0 = initial_temperature if initial_temperature is not None else 0.1
    rng = np.random.default_rng(seed)
    pos = rng.uniform(0.0, 1.0, size=(n, 2))
    W = _symmetric_matrix(vertices, attraction)
    for i, temp in enumerate(temperature_schedule(t0, iterations)):
        # overflow surfaces as non-finite positions, reported below
        with np.errstate(over="ignore", invalid="ignore"):
            rep, att = forces(pos, W, c, seed)
            disp = rep + att
            length = np.sqrt(np.einsum("ij,ij->i", disp, disp))
            moving = length > 0
            step = np.zeros_like(disp)
            step[moving] = disp[moving] / length[moving, None] * np.minimum(length[moving], temp)[:, None]
            pos = pos + step
        if not np.all(np.isfinite(pos)):
            raise LayoutDivergence(i)
        if callback is not None:
            callback(i, float(temp), pos)
    return pos


def _provenance(cfg: LayoutConfig, fingerprint: str, alphas: Mapping[int, float], n: int) -> dict:
    prov = cfg.to_dict()
    prov["alphas"] = {str(k): float(v) for k, v in sorted(alphas.items())}
    prov["ideal_length"] = cfg.ideal_length if cfg.ideal_length is not None else math.sqrt(1.0 / n)
    prov["initial_temperature"] = cfg.initial_temperature if cfg.initial_temperature is not None else 0.1
    prov["data"] = fingerprint
    return prov


def compute_layout(
    pc: PathCollection,
    vertices: Iterable,
    cfg: LayoutConfig,
    callback: Optional[Callable] = None,
) -> Layout:
    """Higher-order time-aware layout of ``vertices`` driven by the paths in ``pc``."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("cannot lay out an empty vertex set")
    missing = pc.vertices - set(vs)
    if missing:
        raise ValueError(f"paths traverse vertices missing from the vertex set: {sorted(missing)[:5]}")
    alphas = cfg.resolve_alphas(pc)
    attraction = superimpose_forces(pc, cfg.max_order, alphas, cfg.uniform_path_weights)
    pos = run_simulation(
        vs,
        attraction,
        iterations=cfg.iterations,
        seed=cfg.seed,
        ideal_length=cfg.ideal_length,
        initial_temperature=cfg.initial_temperature,
        callback=callback,
    )
    positions = {v: (float(x), float(y)) for v, (x, y) in zip(vs, pos)}
    return Layout(positions, _provenance(cfg, pc.fingerprint(), alphas, len(vs)))


def fruchterman_reingold_layout(
    graph: AggregateGraph,
    *,
    iterations: int = 1000,
    seed: int = 0,
    uniform_weights: bool = True,
) -> Layout:
    """Plain first-order layout of a time-aggregated graph."""
    attraction = {e: (1.0 if uniform_weights else float(w)) for e, w in graph.weights.items()}
    vs = sorted(graph.vertices)
    pos = run_simulation(vs, attraction, iterations=iterations, seed=seed)
    positions = {v: (float(x), float(y)) for v, (x, y) in zip(vs, pos)}
    return Layout(positions, {"algorithm": "fruchterman-reingold", "iterations": iterations, "seed": seed})
