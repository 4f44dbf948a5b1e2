"""k-th order De Bruijn graph models of path statistics."""

from __future__ import annotations

from dataclasses import dataclass

from .paths import PathCollection


@dataclass(frozen=True)
class HigherOrderGraph:
    """De Bruijn graph of order ``k``.

    Vertices are ``k``-tuples of base vertices (1-tuples for ``k = 1``); an
    edge ``(v0..v_{k-1}, v1..v_k)`` carries the count of the length-``k``
    path ``v0..v_k``. Only prefixes and suffixes of observed paths appear as
    vertices, so there are no isolated higher-order vertices.
    """

    order: int
    vertices: frozenset
    edges: dict

    def overlap_violations(self) -> list:
        """Edges whose endpoints do not overlap in ``k - 1`` positions."""
        return [(u, w) for u, w in self.edges if len(u) != self.order or len(w) != self.order or u[1:] != w[:-1]]

    def total_weight(self) -> int:
        return sum(self.edges.values())


def build(pc: PathCollection, k: int) -> HigherOrderGraph:
    """Build the order-``k`` model from the length-``k`` paths of ``pc``."""
    if k < 1 or k > pc.max_length:
        raise ValueError(f"order {k} outside [1, {pc.max_length}]")
    edges: dict = {}
    vertices = set()
    for p, c in pc.of_length(k).items():
        u, w = tuple(p[:-1]), tuple(p[1:])
        edges[(u, w)] = edges.get((u, w), 0) + c
        vertices.add(u)
        vertices.add(w)
    return HigherOrderGraph(k, frozenset(vertices), edges)


def unique_path_count(pc: PathCollection, k: int) -> int:
    """Number of distinct paths of length ``k`` (``m_k``)."""
    return len(pc.of_length(k))


def default_alphas(pc: PathCollection, max_order: int) -> dict[int, float]:
    """Inverse unique-path counts ``1 / m_k`` for ``k = 2..max_order``.

    Orders without observed paths get coefficient 0.
    """
    if max_order > pc.max_length:
        raise ValueError(f"order {max_order} exceeds collection max_length {pc.max_length}")
    alphas = {}
    for k in range(2, max_order + 1):
        m = unique_path_count(pc, k)
        alphas[k] = 1.0 / m if m else 0.0
    return alphas


def balanced_alphas(pc: PathCollection, max_order: int) -> dict[int, float]:
    """Coefficients ``m_1 / m_k`` for ``k = 2..max_order``.

    With the first-order coefficient fixed at 1 and unit path weights, every
    order then contributes the same total attraction (``m_1``); up to an
    overall force scale this is ``1 / m_k`` for every order including the
    first. Falls back to :func:`default_alphas` when there are no
    length-one paths.
    """
    m1 = unique_path_count(pc, 1)
    if m1 == 0:
        return default_alphas(pc, max_order)
    return {k: m1 * a for k, a in default_alphas(pc, max_order).items()}
