"""
Shared fixtures: the bundled instances, common semigroups and the corpus
"""
import os
import sys

import pytest

# Add backend to path
sys.path.append(os.path.join(os.path.dirname(__file__), 'backend'))

from app.documents import load_fixture
from app.services.corpus import build_corpus
from app.services.finsemigroup import generate
from app.services.fintopology import generate_topology
from app.services.topoalgebra import TopoSemigroup


@pytest.fixture(scope="session")
def ex2_1() -> TopoSemigroup:
    return load_fixture("ex2_1")


@pytest.fixture(scope="session")
def ex2_2() -> TopoSemigroup:
    return load_fixture("ex2_2")


@pytest.fixture(scope="session")
def ex2_3() -> TopoSemigroup:
    return load_fixture("ex2_3")


@pytest.fixture(scope="session")
def z6():
    return generate("zn_mul", n=6)


@pytest.fixture(scope="session")
def z10():
    return generate("zn_mul", n=10)


@pytest.fixture(scope="session")
def ex2_3_literal() -> TopoSemigroup:
    """Z6 with atoms {0}, {3} and {1,2,4,5}, which breaks continuity"""
    S = generate("zn_mul", n=6)
    return TopoSemigroup(S, generate_topology(6, [[0], [3], [1, 2, 4, 5]]), name="ex2_3_literal")


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def botg_corpus(corpus):
    return [TS for TS in corpus if TS.is_botg]
