import random
import re

import pytest

from biimplicit.parser import parse_poly
from biimplicit.poly import BigradedPoly, Parametrization
from biimplicit.linalg import graded_basis

# one-line descriptions registered by test_acceptance, printed per criterion
ACCEPTANCE_LINES: dict[str, str] = {}

_CRITERION_RE = re.compile(r"test_criterion_(\w+)")


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    match = _CRITERION_RE.search(report.nodeid)
    if not match:
        return
    key = match.group(1)
    status = "PASS" if report.outcome == "passed" else "FAIL"
    label = key.split("_")[0]
    desc = ACCEPTANCE_LINES.get(key, "")
    suffix = f" - {desc}" if desc else ""
    print(f"\n[acceptance] criterion {label}: {status}{suffix}")

# Golden bidegree-(2,3) example used throughout: four dense bihomogeneous
# polynomials whose image surface has a degree-12 implicit equation.
GOLDEN_STRINGS = (
    "1*s^2*t^3+2*s*u*t^3+3*u^2*t^3+4*s^2*t^2*v+5*s*u*t^2*v+6*u^2*t^2*v"
    "+7*s^2*t*v^2+8*s*u*t*v^2+9*u^2*t*v^2+10*s^2*v^3+1*s*u*v^3+2*u^2*v^3",
    "2*s^2*t^3-3*s^2*t^2*v-s^2*t*v^2+s*u*t^2*v+3*s*u*t*v^2-3*u^2*t^2*v"
    "+2*u^2*t*v^2-u^2*v^3",
    "2*s^2*t^3-3*s^2*t^2*v-2*s*u*t^3+s^2*t*v^2+5*s*u*t^2*v-3*s*u*t*v^2"
    "-3*u^2*t^2*v+4*u^2*t*v^2-u^2*v^3",
    "3*s^2*t^2*v-2*s*u*t^3-s^2*t*v^2+s*u*t^2*v-3*s*u*t*v^2-u^2*t^2*v"
    "+4*u^2*t*v^2-u^2*v^3",
)

# The Segre embedding of P1 x P1: quadric surface T1*T4 = T2*T3.
SEGRE_STRINGS = ("s*t", "s*v", "u*t", "u*v")


def golden_polys():
    return tuple(parse_poly(text) for text in GOLDEN_STRINGS)


@pytest.fixture(scope="session")
def golden_F():
    return Parametrization.from_polys(golden_polys())


@pytest.fixture(scope="session")
def segre_F():
    return Parametrization.from_polys(parse_poly(t) for t in SEGRE_STRINGS)


def random_bipoly(rng: random.Random, deg, density=0.8, bound=9) -> BigradedPoly:
    """Random nonzero bihomogeneous polynomial of the given bidegree."""
    basis = graded_basis(deg)
    while True:
        terms = {
            m: rng.randint(-bound, bound)
            for m in basis.monomials
            if rng.random() < density
        }
        p = BigradedPoly(terms)
        if not p.is_zero():
            return p


def random_parametrization(rng: random.Random, deg) -> Parametrization:
    return Parametrization.from_polys(
        random_bipoly(rng, deg) for _ in range(4)
    )
