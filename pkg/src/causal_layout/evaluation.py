"""Cross-validated comparison of layouts across maximum orders."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Mapping, Optional

import numpy as np

from . import metrics
from .layout import LayoutConfig, compute_layout
from .paths import PathCollection, split


@dataclass(frozen=True)
class ExperimentPlan:
    orders: tuple = (1, 2)
    repetitions: int = 100
    train_fraction: float = 0.7
    gamma: float = 10.0
    base_seed: int = 0

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not self.orders or any(k < 1 for k in self.orders):
            raise ValueError("orders must be non-empty and each >= 1")
        if not 0 < self.train_fraction < 1:
            raise ValueError("train_fraction must lie in (0, 1)")


class ExperimentError(RuntimeError):
    def __init__(self, order: int, repetition: int, cause: Exception):
        super().__init__(f"order {order}, repetition {repetition}: {cause}")
        self.order = order
        self.repetition = repetition


def roc_curve(scores: Mapping, positives: Iterable) -> tuple[list, float]:
    """ROC points and AUC for ranking vertices by descending score.

    Ties in score are broken by vertex name so the ranking is strict and
    every step of the curve moves along exactly one axis.
    """
    positives = set(positives)
    n_pos = sum(1 for v in scores if v in positives)
    n_neg = len(scores) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("ROC needs at least one positive and one negative vertex")
    ranking = sorted(scores, key=lambda v: (-scores[v], v))
    tp = fp = 0
    points = [(0.0, 0.0)]
    area = 0
    for v in ranking:
        if v in positives:
            tp += 1
        else:
            fp += 1
            area += tp
        points.append((fp / n_neg, tp / n_pos))
    return points, area / (n_pos * n_neg)


def closeness_roc(layout, test_closeness: Mapping, gamma: float) -> tuple[list, float]:
    """Predict top-``gamma`` % temporal closeness from proximity to the layout barycentre."""
    vs = layout.vertices
    pts = layout.coords(vs)
    dist = np.linalg.norm(pts - pts.mean(axis=0), axis=1)
    scores = {v: -float(d) for v, d in zip(vs, dist)}
    truth = metrics.top_fraction({v: test_closeness.get(v, 0.0) for v in vs}, gamma)
    if not truth:
        raise ValueError(f"gamma={gamma} selects no positive vertices")
    return roc_curve(scores, truth)


@dataclass
class ExperimentReport:
    plan: dict
    config: dict
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["order", "repetition", "seed", "edge_crossings", "dispersion", "eccentricity", "auc"])
        for r in self.rows:
            writer.writerow([r["order"], r["repetition"], r["seed"], r["edge_crossings"],
                             repr(r["dispersion"]), repr(r["eccentricity"]), repr(r["auc"])])
        return buf.getvalue()


def _derived_seed(base_seed: int, repetition: int) -> int:
    return base_seed ^ repetition


def _run_one(args) -> dict:
    pc, vertices, edges, plan, cfg, order, rep, dispersion_lengths = args
    seed = _derived_seed(plan.base_seed, rep)
    try:
        train, test = split(pc, plan.train_fraction, seed)
        layout = compute_layout(train, vertices, replace(cfg, max_order=order, seed=seed))
        cc = metrics.temporal_closeness(test, vertices)
        points, auc = closeness_roc(layout, cc, plan.gamma)
        return {
            "order": order,
            "repetition": rep,
            "seed": seed,
            "edge_crossings": metrics.edge_crossing(layout, edges),
            "dispersion": metrics.causal_path_dispersion(layout, test, dispersion_lengths),
            "eccentricity": metrics.closeness_eccentricity(layout, cc, plan.gamma),
            "auc": auc,
            "roc": [list(p) for p in points],
        }
    except Exception as exc:  # tag with (order, repetition) for the caller
        raise ExperimentError(order, rep, exc) from exc


def _summary(values: list) -> dict:
    arr = np.asarray(values, dtype=float)
    std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return {"mean": float(arr.mean()), "std": std, "stderr": std / math.sqrt(len(arr)), "n": len(arr)}


def run_experiment(
    pc: PathCollection,
    plan: ExperimentPlan,
    cfg: LayoutConfig,
    vertices: Optional[Iterable] = None,
    dispersion_lengths: Optional[Iterable[int]] = None,
    workers: int = 1,
) -> ExperimentReport:
    """Repeated train/test evaluation of layouts for every order in ``plan``.

    Repetition ``r`` splits ``pc`` with seed ``base_seed ^ r`` and lays out the
    training paths with the same seed for every order, so orders are compared
    on identical splits and initial positions. Edge crossings are counted on
    the first-order edges of the full collection; dispersion, eccentricity
    and the closeness prediction use the test paths.
    """
    if max(plan.orders) > pc.max_length:
        raise ValueError(f"collection supports orders up to {pc.max_length}, plan needs {max(plan.orders)}")
    vs = sorted(set(vertices) if vertices is not None else pc.vertices)
    edges = sorted((p[0], p[1]) for p in pc.of_length(1))
    lengths = None if dispersion_lengths is None else tuple(dispersion_lengths)
    jobs = [(pc, vs, edges, plan, cfg, k, r, lengths) for k in plan.orders for r in range(plan.repetitions)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_run_one, jobs))
    else:
        rows = [_run_one(j) for j in jobs]

    summary = {}
    for k in plan.orders:
        sel = [r for r in rows if r["order"] == k]
        summary[str(k)] = {m: _summary([r[m] for r in sel])
                           for m in ("edge_crossings", "dispersion", "eccentricity", "auc")}
    return ExperimentReport(asdict(plan), cfg.to_dict(), rows, summary)
