import _epskit
import pytest


def test_prove_closes():
    r = _epskit.prove("corpus/e2prime.p", "corpus/e2prime.ps")
    assert r["closed"] is True
    assert r["steps"] > 0
    assert r["open"] == []


def test_prove_leaves_the_stupid_goal_open():
    r = _epskit.prove("corpus/canossa.p", "corpus/canossa_stupid.ps")
    assert r["closed"] is False
    assert len(r["open"]) == 1
    assert "HG = Joseph" in r["open"][0]


def test_check_model_variants():
    assert _epskit.check_model("corpus/reflex.p", "corpus/two.st", "some")["valid"]
    assert _epskit.check_model("corpus/parent.p", "corpus/eden.st", "any")["valid"]
    assert not _epskit.check_model("corpus/parent_iota.p", "corpus/eden.st", "any")["valid"]


def test_qelim_depth_growth():
    assert _epskit.qelim_depths("corpus/prenex3.p") == [7]
    both = [_epskit.qelim("corpus/prenex3.p", order) for order in ("in", "out")]
    assert both[0] == both[1]


def test_corpus_filter():
    r = _epskit.corpus("corpus", "elim-prenex")
    assert r["failed"] == 0
    assert r["passed"] == 4


def test_errors_surface():
    with pytest.raises(_epskit.EpskitError):
        _epskit.prove("corpus/missing.p", "corpus/e2prime.ps")
