from __future__ import annotations

import pytest

from coordarr import cech, cells, corpus, koszul


@pytest.fixture(scope="session")
def standard_corpus():
    """All complexes on <= 4 vertices, 200 seeded random complexes on 5-6
    vertices, and the 6-vertex projective plane."""
    return corpus.standard_corpus()


@pytest.fixture(scope="session")
def corpus_tables(standard_corpus):
    """Per complex: (K, algebra table over Z, cell table over Z, Čech table
    over Q), computed once for the whole session."""
    out = []
    for K in standard_corpus:
        out.append(
            (K, koszul.cohomology(K, "Z"), cells.cohomology(K, "Z"), cech.cohomology(K))
        )
    return out
