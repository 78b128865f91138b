from functools import lru_cache

import pytest

from secantkit.combinatorics import Shape
from secantkit.flattening import flattening_space
from secantkit.prolongation import generic_ideal_part

ACCEPTANCE_SHAPES = [
    ((1, 1, 1), 3),
    ((1, 1, 1), 4),
    ((1, 1), 3),
    ((2,), 3),
    ((2,), 4),
    ((2, 1), 3),
    ((3,), 3),
    ((3,), 4),
]

# shapes small enough for explicit subspaces in unit tests
SMALL_SHAPES = [((1, 1, 1), 3), ((1, 1), 3), ((2,), 3), ((2,), 4), ((2, 1), 3), ((3,), 3)]


@lru_cache(maxsize=None)
def cached_flattening(delta, r):
    return flattening_space(Shape(delta, r))


@lru_cache(maxsize=None)
def cached_ideal(delta, r):
    return generic_ideal_part(Shape(delta, r))


@pytest.fixture(params=SMALL_SHAPES, ids=lambda s: f"d{''.join(map(str, s[0]))}_r{s[1]}")
def small_shape(request):
    return Shape(*request.param)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, list[tuple[bool, str]]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.setdefault(number, []).append((ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        parts = ACCEPTANCE_LINES[number]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
