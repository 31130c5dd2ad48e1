from __future__ import annotations

import random

import pytest

from ellcode.curve import EllipticCurve
from ellcode.errors import SingularCurve
from ellcode.field import ExtField

# fields used across the property suites: (p, m)
SMALL_FIELDS = [(2, 4), (2, 5), (3, 3), (5, 1), (7, 2)]

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def random_curve(F: ExtField, rng: random.Random, shape: str = "general") -> EllipticCurve:
    """Random nonsingular curve; shape picks which coefficients may be nonzero."""
    masks = {
        "general": (1, 1, 1, 1, 1),
        "short": (0, 0, 0, 1, 1),
        "char2_supersingular": (0, 0, 1, 1, 1),
        "char2_ordinary": (1, 1, 0, 0, 1),
    }
    mask = masks[shape]
    while True:
        a = [rng.randrange(F.order) if on else 0 for on in mask]
        if shape == "char2_ordinary":
            a[0] = 1
        try:
            return EllipticCurve(F, *a)
        except SingularCurve:
            continue


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20241016)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
