import math

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mahlerent.poly import LaurentPoly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

LOG2 = math.log(2.0)
LEHMER_TEXT = "t^10+t^9-t^7-t^6-t^5-t^4-t^3+t+1"
LEHMER_COEFFS = (1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)
LEHMER_MEASURE = 0.16235761200773815
GOLDEN_LOG = math.log((1 + math.sqrt(5)) / 2)


def polys(max_degree=6, height=5, min_degree=0, allow_offset=False):
    """Nonzero Laurent polynomials with small coefficients."""

    @st.composite
    def build(draw):
        d = draw(st.integers(min_degree, max_degree))
        cs = draw(st.lists(st.integers(-height, height), min_size=d + 1, max_size=d + 1))
        cs[0] = cs[0] or draw(st.sampled_from([c for c in range(-height, height + 1) if c]))
        cs[-1] = cs[-1] or draw(st.sampled_from([c for c in range(-height, height + 1) if c]))
        off = draw(st.integers(-4, 4)) if allow_offset else 0
        return LaurentPoly(cs, off)

    return build()

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
