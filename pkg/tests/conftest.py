import os
import random

import pytest

from dpglue.fields import base_field
from dpglue.polynomials import Poly
from dpglue.rational import FunctionField, RationalFunction

CHARACTERISTICS = (0, 2, 3, 5)


def seed():
    return int(os.environ.get("DPGLUE_SEED", "0"))


@pytest.fixture
def rng():
    return random.Random(seed())


def rand_poly(rng, field, max_deg=3, nonzero=False):
    while True:
        coeffs = [field.from_int(rng.randrange(-6, 7))
                  for _ in range(rng.randrange(0, max_deg + 1) + 1)]
        p = Poly(field, coeffs)
        if not nonzero or not p.is_zero():
            return p


def rand_ratfunc(rng, p, max_deg=3, nonzero=False):
    field = base_field(p)
    while True:
        num = rand_poly(rng, field, max_deg)
        den = rand_poly(rng, field, max_deg, nonzero=True)
        f = RationalFunction(field, num, den)
        if not nonzero or not f.is_zero():
            return f


def ff(p):
    return FunctionField(base_field(p))
