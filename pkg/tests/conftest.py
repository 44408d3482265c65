import pytest

from diophgal.algebra import Domain, Registry, parse_poly
from diophgal.algebra.ring import RingDescriptor

QQ = Domain.rationals()
ZZ = Domain.integers()


def F(p):
    return Domain.prime_field(p)


def make_registry(*names, role="auxiliary"):
    reg = Registry()
    for n in names:
        reg.add(n, role)
    return reg


class Polys:
    """Parse polynomials over one registry and domain."""

    def __init__(self, names, domain):
        self.reg = make_registry(*names)
        self.dom = domain

    def __call__(self, text):
        return parse_poly(text, self.reg, self.dom)


@pytest.fixture
def polys():
    return Polys


@pytest.fixture
def ring():
    return RingDescriptor.parse


CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the line reads FAIL unless the test body finishes."""
    def start(number, label):
        CRITERIA[number] = f"criterion {number}: FAIL  {label}"

        def done(detail=""):
            CRITERIA[number] = f"criterion {number}: PASS  {label}" + (f"  ({detail})" if detail else "")
        return done
    return start


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
