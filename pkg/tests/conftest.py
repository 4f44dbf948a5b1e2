import random

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_temporal_edges(rng: random.Random, n_vertices=8, n_edges=20, t_max=10, self_loops=False):
    names = [chr(ord("a") + i) for i in range(n_vertices)]
    edges = []
    while len(edges) < n_edges:
        v, w = rng.choice(names), rng.choice(names)
        if v == w and not self_loops:
            continue
        edges.append((v, w, rng.randint(0, t_max)))
    return edges


@pytest.fixture
def toy_edges():
    # five vertices, eight time-stamped edges; only bcd and ace are causal at delta=1
    return [
        ("b", "c", 1), ("c", "d", 2), ("a", "c", 3), ("c", "e", 4),
        ("b", "c", 5), ("c", "d", 6), ("a", "c", 7), ("c", "e", 8),
    ]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
