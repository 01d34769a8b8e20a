# Lattice operations, subgroups and metric structures on a small group.

from metricdual import (MetricStructure, check_prop_metrstr, check_structure, is_regular, join,
                        make_group, meet, random_quasinorm, regularise, restrict, subgroup_generate)
from metricdual.documents import format_element


def show(label, q):
    print(f"{label:>10}:", " ".join(f"{format_element(x)}={v}" for x, v in q.items()))


G = make_group([2, 4])
p = regularise(random_quasinorm(G, 2, ["1", "2", "3", "inf"]))
q = regularise(random_quasinorm(G, 16, ["1/2", "1", "3/2", "2"]))
show("p", p)
show("q", q)

# the join is pointwise; the meet goes through the dual side
j, m = join([p, q]), meet([p, q])
show("join", j)
show("meet", m)
print("both regular:", is_regular(j).is_regular, is_regular(m).is_regular)

# pointwise min is a candidate lower bound, but need not be a quasi-norm; the
# meet sits below it anyway
print("meet <= min:", all(v <= min(a, b) for v, a, b in zip(m.values, p.values, q.values)))

# restriction to a subgroup keeps regularity
H = subgroup_generate(G, [(0, 2), (1, 0)])
show("p on H", restrict(p, H))
print("restriction regular:", is_regular(restrict(p, H)).is_regular)

# a family closed under join and meet is a metric structure
P = MetricStructure([p, q, j, m])
rep = check_structure(P)
print("structure flags:", rep.separating, rep.upward_directed, rep.downward_directed, rep.fin_covering)
print("equivalence:", check_prop_metrstr(P))

# p and q are incomparable, so dropping the meet breaks downward directedness
# and all three conditions fail together
P2 = MetricStructure([p, q, j])
print("without meet:", check_prop_metrstr(P2))
