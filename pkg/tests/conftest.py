import pytest
from hypothesis import settings
from hypothesis import strategies as st

from conjalg.partial import LocalBijection
from conjalg.perm import FamilyDescriptor, GroupElement, Permutation

from .oracles import all_perms  # noqa: F401

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

S1 = FamilyDescriptor.product(1)
S2 = FamilyDescriptor.product(2)
FULL1 = FamilyDescriptor.full(["a"])
FAMILIES = [S1, S2, FULL1]


def perms(degree):
    return st.permutations(range(degree)).map(lambda p: Permutation(tuple(p)))


@st.composite
def elements(draw, family, n):
    deg = family.row_degree(n)
    rows = tuple(draw(perms(deg)) for _ in range(family.rows))
    return GroupElement(family, n, rows)


@st.composite
def local_bijections(draw, family, N):
    omega = draw(st.sets(st.integers(1, N)).map(sorted)) if N else []
    k = family.n_fixed
    points = list(range(k)) + [k + j - 1 for j in omega]
    rows = []
    for _ in range(family.rows):
        shuffled = draw(st.permutations(points))
        img = list(range(family.row_degree(N)))
        for x, y in zip(points, shuffled):
            img[x] = y
        rows.append(Permutation(tuple(img)))
    return LocalBijection(tuple(omega), GroupElement(family, N, tuple(rows)))


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", help="run the slow suite")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: larger exhaustive checks (use --slow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
