import pytest

from surfdimer import fixtures


@pytest.fixture(scope="session")
def fx():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = fixtures.load(name)
        return cache[name]

    return get
