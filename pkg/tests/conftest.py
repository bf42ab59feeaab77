import random

import pytest

from schubsep.perm import parse_perm


@pytest.fixture
def rng():
    return random.Random(20240611)


def P(text):
    return parse_perm(text)
