import pytest

from lindef.paper import CASES, run_case


@pytest.mark.parametrize("name", list(CASES))
def test_golden_case(name):
    r = run_case(name)
    bad = [c for c in r["checks"] if not c["ok"]]
    assert r["ok"], bad
    assert r["checks"]


def test_unknown_case():
    with pytest.raises(KeyError):
        run_case("nope")
