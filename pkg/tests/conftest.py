from __future__ import annotations

import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pvgkit.geometry import PointSet

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def point_sets(draw, min_size: int = 1, max_size: int = 12, span: int = 6) -> PointSet:
    """Distinct points on a small grid, so collinear runs are common."""
    cells = draw(
        st.lists(
            st.tuples(st.integers(0, span), st.integers(0, span)),
            min_size=min_size,
            max_size=max_size,
            unique=True,
        )
    )
    return PointSet(cells)


def random_point_set(rng: random.Random, n: int, span: int) -> PointSet:
    cells: set[tuple[int, int]] = set()
    while len(cells) < n:
        cells.add((rng.randint(0, span), rng.randint(0, span)))
    out = sorted(cells)
    rng.shuffle(out)
    return PointSet(out)


def grid_points(w: int, h: int) -> PointSet:
    return PointSet([(x, y) for y in range(h) for x in range(w)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: (int(k.split("-")[0]), k)):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
