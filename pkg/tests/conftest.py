from fractions import Fraction

import pytest

from latvoa.freefield import FieldElement
from latvoa.lattice import ScreeningLattices
from latvoa.rootdata import build_root_system


@pytest.fixture(scope="session")
def sl_a1():
    return ScreeningLattices(build_root_system("A", 1), 4)


@pytest.fixture(scope="session")
def sl_b2():
    return ScreeningLattices(build_root_system("B", 2), 4)


@pytest.fixture(scope="session")
def sl_b3():
    return ScreeningLattices(build_root_system("B", 3), 4)


def exp_state(sl, coords):
    return FieldElement.exponential(sl.space, sl.space.momentum(coords))


def dphi_state(sl, coords, order=1):
    return FieldElement.dphi(sl.space, sl.space.momentum(coords), order)


def random_state(sl, rng, max_terms=3, max_factors=2, denominators=(1, 2)):
    """Small random element with rational momenta and low-degree monomials."""
    space = sl.space
    out = FieldElement.zero(space)
    for _ in range(rng.randint(1, max_terms)):
        mom = space.momentum(
            [
                Fraction(rng.randint(-3, 3), rng.choice(denominators))
                for _ in range(space.rank)
            ]
        )
        term = FieldElement.exponential(space, mom)
        for _ in range(rng.randint(0, max_factors)):
            dm = space.momentum([rng.randint(-2, 2) for _ in range(space.rank)])
            if dm.is_zero():
                continue
            term = term * FieldElement.dphi(space, dm, rng.randint(1, 3))
        coeff = Fraction(rng.randint(-4, 4), rng.choice(denominators))
        if coeff:
            out = out + coeff * term
    return out
