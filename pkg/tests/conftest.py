import pytest

from skewk.abgroup import AbGroup, Automorphism
from skewk.skewring import SkewRingDesc


@pytest.fixture
def f2_z3():
    """F_2[Z/3]: E = F = F_2, trivial twist."""
    return SkewRingDesc.cyclic(2, 1, 1, 3)


@pytest.fixture
def f4_s3():
    """F_4<Z/3 x| Z/2> with theta = -1."""
    return SkewRingDesc.cyclic(2, 1, 2, 3, theta=2)


def desc(p, f, n, factors, theta=None):
    N = AbGroup(tuple(factors))
    th = Automorphism.identity(N) if theta is None else Automorphism(N, theta)
    return SkewRingDesc(p, f, n, N, th)


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail=""):
    line = f"CRITERION {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
