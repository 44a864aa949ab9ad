"""Shared fixtures: the standard test sequences and a profile cache.

The elliptic divisibility sequence files under data/ hold the fourteen
published terms of A006769 and a 150-term extension produced by the
sequence's own quartic recurrence a(n) = (a(n-1)a(n-3) + a(n-2)^2)/a(n-4);
test_seqcore regenerates the extension and checks the files verbatim.
"""

from pathlib import Path

import pytest

from cnomial import apparition, seqcore

DATA_DIR = Path(__file__).parent / "data"
EDS14_PATH = DATA_DIR / "eds_a006769_14.txt"
EDS150_PATH = DATA_DIR / "eds_a006769_150.txt"


@pytest.fixture(scope="session")
def fib():
    return seqcore.LucasSpec(1, -1)


@pytest.fixture(scope="session")
def lucas52():
    return seqcore.LucasSpec(5, -2)


@pytest.fixture(scope="session")
def lucas31():
    return seqcore.LucasSpec(3, -1)


@pytest.fixture(scope="session")
def naturals():
    return seqcore.NaturalsSpec()


@pytest.fixture(scope="session")
def eds14():
    return seqcore.load_terms_file(str(EDS14_PATH))


@pytest.fixture(scope="session")
def eds150():
    return seqcore.load_terms_file(str(EDS150_PATH))


@pytest.fixture(scope="session")
def profile_of():
    """classify() with per-session memoization; classification is pure."""
    cache = {}

    def get(spec, p, **kwargs):
        key = (spec.selector, p, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = apparition.classify(spec, p, **kwargs)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def make_chain_spec():
    """Synthetic strong divisibility sequences C_n = p^(number of chain
    entries dividing n), for a divisibility chain of apparition indices."""

    def build(chain, length, p=2, name="chain"):
        for a, b in zip(chain, chain[1:]):
            assert b % a == 0, "chain entries must divide successors"
        terms = tuple(
            p ** sum(1 for a in chain if n % a == 0) for n in range(1, length + 1)
        )
        return seqcore.FileBackedSpec(terms, name=name)

    return build
