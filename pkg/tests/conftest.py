import pytest

import fig1
from ontosub.hierarchy import ClassHierarchy
from ontosub.templates import OntologyContext
from ontosub.verbalize import LabelPolicy


@pytest.fixture(scope="session")
def figure1():
    return fig1.load()


@pytest.fixture(scope="session")
def figure1_synonyms():
    return fig1.load_with_synonyms()


@pytest.fixture(scope="session")
def figure1_hier(figure1):
    return ClassHierarchy.from_ontology(figure1)


@pytest.fixture(scope="session")
def figure1_ctx(figure1, figure1_hier):
    return OntologyContext(figure1, figure1_hier)


@pytest.fixture
def single_policy():
    return LabelPolicy(mode="single")
