"""Shared fixtures and samplers.

Two sampling regimes on purpose:

* continuous floats for order/limit behavior and dual-route agreement;
* a dyadic lattice (coordinates are integer multiples of 2**-12 in
  [-8, 8], peak offsets multiples of 1/16) on which every product and sum
  in the coordinate formulas is exactly representable, so properties that
  are exact in real arithmetic (sign rules, norm axioms, zero-class
  propagation) can be asserted with zero tolerance.
"""
from __future__ import annotations

import random

import pytest

from lcfn import Generator, LCFN

LATTICE_STEP = 2.0 ** -12
LATTICE_MAX = 8.0


@pytest.fixture
def tri_am0():
    return Generator.triangular(-1.0, 0.0, 2.0)


@pytest.fixture
def tri_am05():
    return Generator.triangular(0.0, 0.5, 2.0)


@pytest.fixture
def tri_am1():
    return Generator.triangular(0.0, 1.0, 3.0)


def random_generator(rng: random.Random) -> Generator:
    """Random asymmetric triangular generator (continuous knots)."""
    peak = rng.uniform(-2.0, 2.0)
    left = rng.uniform(0.2, 3.0)
    right = rng.uniform(0.2, 3.0)
    while abs(left - right) < 0.05:
        right = rng.uniform(0.2, 3.0)
    return Generator.triangular(peak - left, peak, peak + right)


def lattice_value(rng: random.Random, nonzero: bool = False) -> float:
    v = rng.randrange(-int(LATTICE_MAX / LATTICE_STEP),
                      int(LATTICE_MAX / LATTICE_STEP) + 1) * LATTICE_STEP
    while nonzero and v == 0.0:
        v = rng.randrange(-int(LATTICE_MAX / LATTICE_STEP),
                          int(LATTICE_MAX / LATTICE_STEP) + 1) * LATTICE_STEP
    return v


def lattice_generator(rng: random.Random) -> Generator:
    """Asymmetric triangular generator whose peak is a multiple of 1/16."""
    peak = rng.randrange(-32, 33) / 16.0
    left = rng.randrange(1, 33) / 16.0
    right = rng.randrange(1, 33) / 16.0
    while left == right:
        right = rng.randrange(1, 33) / 16.0
    return Generator.triangular(peak - left, peak, peak + right)


def lattice_element(rng: random.Random, gen: Generator) -> LCFN:
    return LCFN(lattice_value(rng), lattice_value(rng), gen)


def lattice_element_in_class(rng: random.Random, gen: Generator,
                             sign: int) -> LCFN:
    """Element with center of the requested sign; sign 0 builds
    r = -q*a_m, which is exact on the lattice."""
    if sign == 0:
        q = lattice_value(rng, nonzero=True)
        return LCFN(-q * gen.a_m, q, gen)
    while True:
        b = lattice_element(rng, gen)
        c = b.center()
        if sign > 0 and c > 1e-3:
            return b
        if sign < 0 and c < -1e-3:
            return b


def continuous_element(rng: random.Random, gen: Generator,
                       scale: float = 10.0) -> LCFN:
    return LCFN(rng.uniform(-scale, scale), rng.uniform(-scale, scale), gen)
