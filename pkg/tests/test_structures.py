import pytest

from metricdual.errors import InputError
from metricdual.groups import make_group
from metricdual.quasinorm import (QuasiNorm, discrete_norm, dual, infty_qn, join, le, regularise,
                                  scale, zero_qn)
from metricdual.structures import (MetricStructure, check_prop_metrstr, check_structure,
                                   dual_structure)
from metricdual.verify import random_structures


def flags(rep):
    return (rep.separating, rep.upward_directed, rep.downward_directed, rep.fin_covering)


def test_check_structure_examples():
    G = make_group([4])
    rep = check_structure(MetricStructure([discrete_norm(G)]))
    assert rep.is_metric_structure and rep.is_regular_structure
    rep = check_structure(MetricStructure([zero_qn(G)]))
    assert not rep.separating and rep.witnesses["separating"] == (1,)
    rep = check_structure(MetricStructure([infty_qn(G)]))
    assert not rep.fin_covering and "fin_covering" in rep.witnesses


def test_directedness_needs_member_bounds():
    G = make_group([2, 2])
    # elements in order (0,0), (0,1), (1,0), (1,1); p and q are incomparable
    p = QuasiNorm(G, ["0", "1", "2", "2"])
    q = QuasiNorm(G, ["0", "2", "1", "2"])
    rep = check_structure(MetricStructure([p, q]))
    assert not rep.upward_directed and rep.witnesses["upward_directed"] == (0, 1)
    assert not rep.downward_directed
    rep = check_structure(MetricStructure([p, q, join([p, q])]))
    assert rep.upward_directed and not rep.downward_directed


def test_structure_rejects_mixed_groups():
    with pytest.raises(InputError):
        MetricStructure([discrete_norm(make_group([2])), discrete_norm(make_group([3]))])
    with pytest.raises(InputError):
        MetricStructure([])


def test_dual_structure_examples():
    G = make_group([5])
    d = discrete_norm(G)
    assert dual_structure(MetricStructure([d])).members == [dual(d)]
    assert dual_structure(MetricStructure([zero_qn(G)])).members == [infty_qn(G)]
    # a chain p <= q dualises to the reversed chain
    p = regularise(d)
    q = scale(p, 2)
    a, b = dual_structure(MetricStructure([p, q])).members
    assert le(b, a)


def test_prop_metrstr_examples():
    G4 = make_group([4])
    d = discrete_norm(G4)
    eq = check_prop_metrstr(MetricStructure([d, scale(d, 2)]))
    assert eq.condition_i and eq.condition_ii and eq.condition_iii
    G9 = make_group([9])
    eq = check_prop_metrstr(MetricStructure([regularise(discrete_norm(G9))]))
    assert eq.condition_i and eq.condition_ii and eq.condition_iii


def test_prop_metrstr_preconditions():
    G9 = make_group([9])
    with pytest.raises(InputError):
        check_prop_metrstr(MetricStructure([discrete_norm(G9)]))  # not regular
    with pytest.raises(InputError):
        check_prop_metrstr(MetricStructure([zero_qn(G9)]))  # not separating


def test_equivalence_on_generated_structures():
    seen = set()
    for P in random_structures(60, seed=3):
        eq = check_prop_metrstr(P)
        assert eq.consistent
        seen.add(eq.condition_i)
        dd = dual_structure(dual_structure(P))
        assert all(a == regularise(b) for a, b in zip(dd.members, P.members))
        shuffled = MetricStructure(list(reversed(P.members)) + [P.members[0]])
        assert flags(check_structure(shuffled)) == flags(check_structure(P))
    assert seen == {True, False}
