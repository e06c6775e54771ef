import pytest

from weylstrat.rootsys import LieType, build_root_system
from weylstrat.weyl import generate_group

_CACHE = {}


def system(family, rank):
    key = (family, rank)
    if key not in _CACHE:
        rs = build_root_system(LieType(family, rank))
        _CACHE[key] = (rs, generate_group(rs))
    return _CACHE[key]


@pytest.fixture
def sys_of():
    return system
