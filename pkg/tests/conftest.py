import random

import numpy as np
import pytest

from sliceword.su2 import SU2Matrix
from sliceword.words import PositiveWord, difference_word


def random_positive(rng: random.Random, na: int, nb: int) -> PositiveWord:
    letters = ["a"] * na + ["b"] * nb
    rng.shuffle(letters)
    return PositiveWord("".join(letters))


def random_hard_pair(rng: random.Random, na: int, nb: int):
    while True:
        u, v = random_positive(rng, na, nb), random_positive(rng, na, nb)
        if u != v:
            return u, v


def random_difference_words(seed: int, count: int, na: int, nb: int):
    rng = random.Random(seed)
    return [difference_word(*random_hard_pair(rng, na, nb)) for _ in range(count)]


def random_group_word(rng: random.Random, length: int) -> str:
    return "".join(rng.choice("abAB") for _ in range(length))


@pytest.fixture
def rng():
    return random.Random(12345)


def random_su2(rng: random.Random) -> SU2Matrix:
    q = np.array([rng.gauss(0, 1) for _ in range(4)])
    q /= np.linalg.norm(q)
    return SU2Matrix(complex(q[0], q[1]), complex(q[2], q[3]))


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="run long reproduction targets")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
