"""Shared fixtures: the proof corpus and its check reports, loaded once."""

import pytest

from ptarith.corpus import load_corpus
from ptarith.proof_checker import check


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_reports(corpus):
    return {name: check(script, imports=corpus) for name, script in corpus.items()}
