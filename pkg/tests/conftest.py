"""Suite-wide assertion hook: compactness bounds on every built graph.

Every bond graph constructed anywhere in the test run (fuzz, directed
tests, acceptance sweeps) must satisfy the two compactness bounds: the
crossed-square count is at least n minus the excess, and the perimeter of
the crossed-square region is at most 7 times the excess.
"""

from __future__ import annotations

import pytest

from supdisk.graph import add_build_hook, remove_build_hook

HOOK_STATS = {"checked": 0}


def _compactness_hook(g):
    if g.explicit_edges:
        return  # not a sup-norm bond graph
    f = 8 * g.n - 2 * len(g.edges)
    nb = len(g.quads)
    assert nb >= g.n - f, f"crossed-square count bound failed: {nb} < {g.n} - {f}"
    side_count = {}
    for q in g.quads:
        for e in q.sides:
            side_count[e] = side_count.get(e, 0) + 1
    perimeter = sum(1 for v in side_count.values() if v == 1)
    assert perimeter <= 7 * f, f"region perimeter bound failed: {perimeter} > 7*{f}"
    HOOK_STATS["checked"] += 1


@pytest.fixture(scope="session", autouse=True)
def compactness_guard():
    add_build_hook(_compactness_hook)
    yield
    remove_build_hook(_compactness_hook)
