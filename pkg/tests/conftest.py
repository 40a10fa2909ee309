import pytest

from moufang import corpus, paige
from moufang.gfpn import make_field


@pytest.fixture(scope="session")
def gf2():
    return make_field(2)


@pytest.fixture(scope="session")
def gf3():
    return make_field(3)


@pytest.fixture(scope="session")
def paige2():
    return paige.build_m(make_field(2))


@pytest.fixture(scope="session")
def paige3():
    return paige.build_m(make_field(3))


@pytest.fixture(scope="session")
def cq8():
    return corpus.get("chein-Q8")
