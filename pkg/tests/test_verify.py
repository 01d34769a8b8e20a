from math import prod

from metricdual.groups import FiniteAbelianGroup
from metricdual.quasinorm import dual, scale
from metricdual.verify import (MODULI, all_subgroups, ball_oracle, corpus, run_verification)


def test_moduli_list():
    orders = [prod(m) for m in MODULI]
    assert orders == sorted(orders) and max(orders) == 64 and min(orders) == 1
    assert len({tuple(m) for m in MODULI}) == len(MODULI)


def test_small_run_passes():
    rep = run_verification(max_order=16, draws=25, seed=0)
    assert rep.ok and rep.checks > 10_000


def test_trivial_group_run():
    rep = run_verification(max_order=1, draws=3)
    assert rep.ok and rep.groups == [[1]]


def test_corpus_deterministic():
    G = FiniteAbelianGroup([6])
    assert corpus(G, 10, 5) == corpus(G, 10, 5)
    assert corpus(G, 10, 5) != corpus(G, 10, 6)


def test_all_subgroups_counts():
    # Z/2 x Z/2 has 5 subgroups, Z/12 has 6, Z/2 x Z/4 has 8
    assert len(all_subgroups(FiniteAbelianGroup([2, 2]))) == 5
    assert len(all_subgroups(FiniteAbelianGroup([12]))) == 6
    assert len(all_subgroups(FiniteAbelianGroup([2, 4]))) == 8


def test_suite_detects_a_broken_engine(monkeypatch):
    import metricdual.verify as verify

    # a formula that is off by a factor must be caught and reported verbatim
    monkeypatch.setattr(verify, "regularise_formula", lambda q: scale(verify.regularise(q), 2))
    rep = run_verification(max_order=4, draws=5, moduli=[[4]])
    assert not rep.ok
    bad = rep.failures[0]
    assert bad["property"] == "regularise = sup-inf formula" and bad["group"] == [4]
    assert set(bad) >= {"q", "bidual", "formula"}


def test_ball_oracle_small():
    checked, violations = ball_oracle(max_order=8, draws=5)
    assert violations == [] and checked > 0
    dual.cache_clear()
