from nearbinary import catalog
from nearbinary.corpus import corpus
from nearbinary.minors import IsoIndex


def test_corpus_is_deterministic_and_large():
    a = corpus(0, 10)
    b = corpus(0, 10)
    assert [e.matroid for e in a] == [e.matroid for e in b]
    assert len(a) >= 500
    assert all(e.matroid.size <= 10 for e in a)


def test_corpus_classes_are_distinct():
    index = IsoIndex()
    for e in corpus(0, 8):
        assert index.add(e.matroid)


def test_corpus_holds_the_sporadics():
    index = IsoIndex()
    for e in corpus(0, 10):
        index.add(e.matroid)
    for name in ("R6", "K", "K*", "Q6", "P6", "U36", "U24+U11", "U24+U01", "U25", "U35", "M4rr"):
        assert index.find(catalog.named(name)) is not None, name
