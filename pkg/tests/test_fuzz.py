import pytest

from lindef.fuzz import CORPORA, run_corpus


@pytest.mark.parametrize("name", sorted(CORPORA))
def test_instances_depend_only_on_seed_and_index(name):
    fn = CORPORA[name]
    assert fn(11, 3) == fn(11, 3)


def test_small_runs_are_clean():
    for name in ("hypersurface", "sega", "threeideals", "chrings"):
        r = run_corpus(name, 5, seed=2)
        assert r["count"] == 5 and len(r["instances"]) == 5
        assert r["failures"] == []


def test_ses_corpus_counts_certified_sequences():
    r = run_corpus("ses", 10, seed=4)
    assert r["certified"] == 10
    assert r["failures"] == []
    assert r["drawn"] >= 10


def test_unknown_corpus():
    with pytest.raises(KeyError):
        run_corpus("nope")
