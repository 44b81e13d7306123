"""
Shared fixtures: the university corpus and clients loaded with it.
"""

import pathlib

import pytest

from tioakit.model import load_models
from tioakit.wrapper import TioaClient

HERE = pathlib.Path(__file__).parent.resolve()
CORPUS = HERE.parent / 'corpus' / 'university.json'
DATA = HERE / 'data'


@pytest.fixture(scope='session')
def corpus_path() -> str:

    return str(CORPUS)


@pytest.fixture(scope='session')
def models():
    """
    Every automaton of the corpus, by name.
    """

    return load_models(str(CORPUS))


@pytest.fixture
def client() -> TioaClient:
    """
    A client with the corpus loaded and default options.
    """

    return TioaClient.from_file(str(CORPUS))


@pytest.fixture
def duality_client(client: TioaClient) -> TioaClient:
    """
    The corpus client with the quotient implementations added.
    """

    client.load_models((DATA / 'quotient_implementations.json').read_bytes())

    return client
