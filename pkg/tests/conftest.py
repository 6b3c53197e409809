import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tiltstab.chern import General, NumClass, PolarizedGeometry, Proportional

_ACCEPTANCE_LINES = []


def small_fractions(max_num=60, max_den=12):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def num_classes(draw, geom=None, proportional=None, nonzero_rank=False):
    if geom is None:
        geom = PolarizedGeometry(draw(st.integers(1, 200)))
    r = draw(small_fractions(8, 3))
    if nonzero_rank:
        r = r if r != 0 else Fraction(1)
    use_prop = draw(st.booleans()) if proportional is None else proportional
    if use_prop:
        c1 = Proportional(draw(small_fractions(20, 6)))
    else:
        q1 = draw(small_fractions(200, 6))
        q2 = draw(st.one_of(st.none(), small_fractions(200, 6)))
        if q2 is not None and q1 * q1 < geom.d * q2:
            q2 = q1 * q1 / geom.d - draw(st.integers(0, 5))
        c1 = General(q1, q2)
    return NumClass(r, c1, draw(small_fractions(300, 8)), draw(small_fractions(300, 24)), geom,
                    draw(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(-1, 3)])))


def random_fraction(rng: random.Random, num=60, den=12) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_class(rng: random.Random, geom: PolarizedGeometry, proportional=True, nonzero_rank=False) -> NumClass:
    r = Fraction(rng.randint(-6, 6), rng.randint(1, 2))
    if nonzero_rank and r == 0:
        r = Fraction(1)
    if proportional:
        c1 = Proportional(random_fraction(rng, 20, 6))
    else:
        q1 = random_fraction(rng, 200, 6)
        c1 = General(q1, q1 * q1 / geom.d - rng.randint(0, 4))
    return NumClass(r, c1, random_fraction(rng, 300, 8), random_fraction(rng, 300, 24), geom)


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion and assert it."""

    def record(number, description, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {description}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
