from fractions import Fraction

import pytest

from satcurve.algebra import parse_curve
from satcurve.mpoly import parse_polynomial


def P(text: str):
    return parse_curve(text)


def PF(text: str):
    return parse_polynomial(text, ("x", "y", "t"))


# Irreducible germs with their characteristic exponents, worked by hand from
# the gcd-chain definition (acceptance criterion 1 corpus).
IRREDUCIBLE_CORPUS = [
    ("y^2 - x^3", [Fraction(3, 2)]),
    ("y^2 - x^5", [Fraction(5, 2)]),
    ("y^2 - x^7", [Fraction(7, 2)]),
    ("y^3 - x^4", [Fraction(4, 3)]),
    ("y^3 - x^5", [Fraction(5, 3)]),
    ("y^3 - x^7", [Fraction(7, 3)]),
    ("y^4 - x^5", [Fraction(5, 4)]),
    ("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7", [Fraction(3, 2), Fraction(7, 4)]),
]

# Reducible germs (acceptance criterion 2 corpus); all are y-regular with
# constant leading y-coefficient, so they go straight into the pipeline.
REDUCIBLE_CORPUS = [
    "(y^2 - x^3)*(y - x)",
    "(y^2 - x^3)*(y^2 - x^5)",
    "(y^2 - x^3)*(y^2 - 2*x^3)",
    "(y^2 - x^5)*(y - x^2)",
    "(y^3 - x^4)*(y - x)",
    "(y^2 - 2*x^3)*(y - x)",
    "(y - x)*(y - 2*x)*(y - 3*x)",
    "y^3 - x^2*y",
    "(y^2 - x^3)*(y - x)*(y + x)",
    "(y^2 - x^4)*(y - x)",
    "(y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7)*(y - x)",
]


@pytest.fixture(scope="session")
def irreducible_corpus():
    return [(P(text), exps) for text, exps in IRREDUCIBLE_CORPUS]


@pytest.fixture(scope="session")
def reducible_corpus():
    return [P(text) for text in REDUCIBLE_CORPUS]
