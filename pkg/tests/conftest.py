import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zformcert.fields import NumberField
from zformcert.polynomials import (
    IntegerPolynomial,
    count_real_roots,
    is_irreducible,
    parse_polynomial,
)

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def zeta7_field() -> NumberField:
    return NumberField.from_polynomial(parse_polynomial("x^3+x^2-2x-1"))


@pytest.fixture(scope="session")
def golden_field() -> NumberField:
    return NumberField.from_polynomial(parse_polynomial("x^2-x-1"))


@pytest.fixture(scope="session")
def sqrt2_field() -> NumberField:
    return NumberField.from_polynomial(parse_polynomial("x^2-2"))


def random_totally_real_cubics(seed: int, count: int, bound: int = 9) -> list[IntegerPolynomial]:
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        coeffs = (rng.randint(-bound, bound), rng.randint(-bound, bound), rng.randint(-bound, bound), 1)
        if coeffs in seen:
            continue
        seen.add(coeffs)
        try:
            p = IntegerPolynomial(coeffs)
        except Exception:
            continue
        if p.degree == 3 and is_irreducible(p) and count_real_roots(p) == 3:
            out.append(p)
    return out


@pytest.fixture(scope="session")
def cubic_pool() -> list[NumberField]:
    return [NumberField.from_polynomial(p) for p in random_totally_real_cubics(101, 12)]
