import pytest

from coxmorse import build_system

_CACHE = {}


@pytest.fixture(scope="session")
def system():
    """Session-cached group factory: system('A3')."""

    def get(name, **kwargs):
        key = (name, tuple(sorted(kwargs.items())))
        if key not in _CACHE:
            _CACHE[key] = build_system(name, **kwargs)
        return _CACHE[key]

    return get
