"""Randomised exact property suite for the finite quasi-norm engine.

Every identity checked here is a theorem about quasi-norms on finite abelian
groups, so any failure is an implementation defect.  Failures are collected
verbatim (group, operation, tables) rather than raised, so a single run
reports all of them.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import extended as ev
from .groups import FiniteAbelianGroup, annihilator, subgroup_generate
from .quasinorm import (ball_violations, subadditive_closure, discrete_norm, dual, fin_part, infty_qn, is_regular,
                        join, kernel, le, meet, product, random_quasinorm, regularise,
                        regularise_formula, restrict, scale, validate, zero_qn)
from .structures import MetricStructure, check_prop_metrstr, check_structure, dual_structure

__all__ = ["MODULI", "POOLS", "VerifyReport", "run_verification", "corpus", "all_subgroups",
           "random_structures", "ball_oracle"]

# groups of order <= 64 exercised by the suite, smallest first: every abelian
# group up to order 16, then a spread of larger ones
MODULI = [
    [1], [2], [3], [4], [2, 2], [5], [6], [7], [8], [2, 4], [2, 2, 2], [9], [3, 3],
    [10], [11], [12], [2, 6], [13], [14], [15], [16], [4, 4], [2, 8], [2, 2, 4],
    [2, 2, 2, 2], [18], [3, 6],
    [20], [24], [2, 12], [25], [27], [3, 9], [30], [32], [4, 8], [36], [6, 6],
    [40], [45], [48], [4, 12], [49], [60], [64], [8, 8], [2, 4, 8],
]

# value pools for the generator; 0 and inf produce nontrivial kernels and fin parts
POOLS = [
    ["1", "2", "3", "inf"],
    ["1/2", "1", "3/2", "2"],
    ["0", "1", "2", "inf", "inf"],
    ["1", "5/2", "4", "inf"],
    ["1/3", "1", "3", "7"],
    ["1"],
    ["2", "3", "5", "7", "11"],
]

RADII = [Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2)]


def _seed(seed, *parts):
    h = seed
    for p in parts:
        h = (h * 1_000_003 + p) % (2 ** 61 - 1)
    return h


def corpus(G, draws, seed, group_tag=0):
    """``draws`` generated quasi-norms on G, cycling through the value pools."""
    return [random_quasinorm(G, _seed(seed, group_tag, i), POOLS[i % len(POOLS)])
            for i in range(draws)]


def all_subgroups(G, limit=None):
    """Every subgroup, by closing cyclic subgroups under pairwise joins."""
    found = {}
    for x in G.elements:
        H = subgroup_generate(G, [x])
        found.setdefault(H.elements, H)
    frontier = list(found.values())
    while frontier:
        nxt = []
        base = list(found.values())
        for H in frontier:
            for K in base:
                J = subgroup_generate(G, list(H.generators) + list(K.generators))
                if J.elements not in found:
                    found[J.elements] = J
                    nxt.append(J)
                    if limit and len(found) >= limit:
                        return sorted(found.values(), key=lambda S: (len(S), S.elements))
        frontier = nxt
    return sorted(found.values(), key=lambda S: (len(S), S.elements))


def _flags(rep):
    return (rep.separating, rep.upward_directed, rep.downward_directed, rep.fin_covering,
            rep.is_regular_structure)


def _table(q):
    return {str(x): ev.format_value(v) for x, v in q.items()}


@dataclass
class VerifyReport:
    checks: int = 0
    failures: list = field(default_factory=list)
    groups: list = field(default_factory=list)
    skipped: int = 0
    seconds: float = 0.0
    counts: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures


class _Checker:
    def __init__(self, report, G):
        self.report = report
        self.G = G

    def __call__(self, name, ok, **detail):
        self.report.checks += 1
        self.report.counts[name] = self.report.counts.get(name, 0) + 1
        if not ok:
            rec = {"group": list(self.G.moduli), "property": name}
            for k, v in detail.items():
                rec[k] = _table(v) if hasattr(v, "domain") else v
            self.report.failures.append(rec)


def _check_group(G, draws, seed, tag, report, subgroups_per_draw=3):
    check = _Checker(report, G)
    qs = corpus(G, draws, seed, tag)
    taus = corpus(G, draws, seed, tag + 7919)
    subs = all_subgroups(G, limit=400)

    zero, inf = zero_qn(G), infty_qn(G)
    check("trivial: dual(0) = inf", dual(zero) == inf)
    check("trivial: dual(inf) = 0", dual(inf) == zero)
    check("trivial: 0 and inf regular", is_regular(zero).is_regular and is_regular(inf).is_regular)

    tiny = FiniteAbelianGroup([2])
    tiny_norm = discrete_norm(tiny)

    duals_of_regulars = {}
    regulars = []
    for i, q in enumerate(qs):
        r = qs[(i + 1) % len(qs)]
        check("generator output validates", bool(validate(q)), q=q)
        reg = regularise(q)
        regf = regularise_formula(q)
        check("regularise = sup-inf formula", reg == regf, q=q, bidual=reg, formula=regf)
        check("(c) reg q <= q", le(reg, q), q=q)
        check("(d) reg reg q = reg q", regularise(reg) == reg, q=q)
        dq = dual(q)
        check("(d) dual reg q = dual q", dual(reg) == dq, q=q)
        check("(e) dual q regular", is_regular(dq).is_regular, q=q)
        s = join([q, r])
        check("(a) q <= s => reg q <= reg s", le(reg, regularise(s)), q=q, s=s)
        check("(a) q <= s => dual q >= dual s", le(dual(s), dq), q=q, s=s)
        rr = regularise(r)
        check("(b) regular order reversal",
              le(reg, rr) == le(dual(rr), dual(reg)), p=reg, q=rr)
        tau = taus[i]
        check("(f) pullback of dual is regular", is_regular(dual(tau)).is_regular, tau=tau)
        fin = fin_part(q)
        check("(g) ker dual q = fin(q)-perp",
              set(kernel(dq).elements) == set(annihilator(fin)), q=q)
        ker_q = kernel(q).elements
        expect_fin = {a for a in G.elements
                      if all(G.phase(a, x) == 0 for x in ker_q)}
        check("(g) fin dual q = characters trivial on ker q",
              set(fin_part(dq).elements) == expect_fin, q=q)
        for c in (Fraction(2), Fraction(1, 3)):
            check("scaling: dual(c q) = dual(q)/c", dual(scale(q, c)) == scale(dq, 1 / c), q=q)
        check("trivial: 0 <= reg q <= inf", le(zero, reg) and le(reg, inf), q=q)

        # lattice operations on regular inputs
        j = join([reg, rr])
        check("sup-reg: join of regulars is regular", is_regular(j).is_regular, p=reg, q=rr)
        m = meet([reg, rr])
        check("inf-reg: meet is regular", is_regular(m).is_regular, p=reg, q=rr)
        check("inf-reg: meet below inputs", le(m, reg) and le(m, rr), p=reg, q=rr)
        for t in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
            lower = regularise(scale(m, t))
            check("inf-reg: regular lower bounds below meet", le(lower, m), p=reg, q=rr)
        check("inf-reg: meet of one is reg", meet([q]) == reg, q=q)
        check("inf-reg: meet with inf is reg", meet([q, inf]) == reg, q=q)

        pr = product([reg, tiny_norm])
        check("prod-reg: product of regulars is regular", is_regular(pr).is_regular, p=reg)

        # subgroup stability, rotating through all subgroups across draws
        for k in range(subgroups_per_draw):
            H = subs[(i * subgroups_per_draw + k) % len(subs)]
            check("sub-reg: restriction of regular is regular",
                  is_regular(restrict(reg, H)).is_regular, p=reg, subgroup=[str(h) for h in H.elements])

        # reg q through restriction of the dual to subgroups containing fin(dual q)
        fin_d = fin_part(dq)
        extra = G.elements[_seed(seed, tag, i, 3) % len(G.elements)]
        for Hd in {fin_d.elements: fin_d,
                   subgroup_generate(G, list(fin_d.elements) + [extra]).elements: None,
                   tuple(G.elements): None}.items():
            H = Hd[1] or subgroup_generate(G, list(Hd[0]))
            rq = restrict(dq, H)
            drq = dual(rq)
            ok = all(drq(H.dual.canonical(g)) == reg(g) for g in G.elements)
            check("qv-reg: reg q via dual restricted to H", ok, q=q)

        # finite one-to-one correspondence on regulars
        check("involution: bidual of regular is itself", regularise(reg) == reg, p=reg)
        key = dual(reg).values
        prev = duals_of_regulars.setdefault(key, reg)
        check("involution: dual injective on regulars", prev == reg, p=reg, other=prev)
        regulars.append(reg)

    # metric structures from the regular corpus
    for i in range(0, len(regulars) - 1):
        p, q = regulars[i], regulars[i + 1]
        fams = [[p, q, join([p, q])], [p, q, join([p, q]), meet([p, q])]]
        for fam in fams:
            P = MetricStructure(fam)
            base = check_structure(P)
            if not (base.separating and base.upward_directed):
                report.skipped += 1
                continue
            eq = check_prop_metrstr(P, strict=False)
            check("metr-str: (i) <=> (ii) <=> (iii)", eq.consistent, members=[_table(f) for f in fam])
            dd = dual_structure(dual_structure(P))
            check("metr-str: double dual is memberwise reg",
                  all(a == regularise(b) for a, b in zip(dd.members, fam)))
            shuffled = MetricStructure(list(reversed(fam)) + [fam[0]])
            check("metr-str: report invariant under permutation and duplication",
                  _flags(check_structure(shuffled)) == _flags(base))

    for q in qs:
        check("ball bound 1/(2r)", not ball_violations(q, RADII), q=q)


def run_verification(max_order=64, draws=100, seed=0, moduli=None):
    """Run the property suite on every listed group of order <= ``max_order``."""
    report = VerifyReport()
    start = time.perf_counter()
    for tag, m in enumerate(moduli or MODULI):
        G = FiniteAbelianGroup(m)
        if G.order > max_order:
            continue
        report.groups.append(list(m))
        _check_group(G, draws, seed, tag, report)
    report.seconds = time.perf_counter() - start
    return report


def _supported(G, H, rng, pool):
    """Closed random draw that is finite only on the subgroup H."""
    pool = [ev.as_ext(v) for v in pool]
    inside = set(H.elements)
    raw = [rng.choice(pool) if x in inside else ev.INF for x in G.elements]
    return subadditive_closure(G, raw)


def random_structures(count, seed=0, moduli=None, max_order=16):
    """Regular, upward directed, separating families for the equivalence check.

    Families come in four shapes so that both outcomes of the equivalence
    occur: scaled chains, incomparable pairs with their join, the same with
    the meet added, and draws supported on proper subgroups (which can break
    pointwise finiteness).
    """
    import random as _random

    rng = _random.Random(seed)
    groups = [FiniteAbelianGroup(m) for m in (moduli or MODULI) if 1 < FiniteAbelianGroup(m).order <= max_order]
    subs = {}
    pools = [p for p in POOLS if "0" not in p]
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        G = rng.choice(groups)
        shape = rng.choice(["chain", "pair", "pair+meet", "supported"])
        draw = lambda: regularise(random_quasinorm(G, rng.getrandbits(32), rng.choice(pools)))
        if shape == "chain":
            p = draw()
            fam = [scale(p, c) for c in (1, 2, 3)[:rng.randint(1, 3)]]
        elif shape == "supported":
            if G not in subs:
                subs[G] = [H for H in all_subgroups(G) if 1 < len(H) < G.order] or [G]
            k = rng.randint(1, 2)
            fam = [regularise(_supported(G, rng.choice(subs[G]), rng, rng.choice(pools)))
                   for _ in range(k)]
            if k > 1:
                fam.append(join(fam))
        else:
            base = [draw() for _ in range(2)]
            fam = base + [join(base)]
            if shape == "pair+meet":
                fam.append(meet(base))
        P = MetricStructure(fam)
        rep = check_structure(P)
        if rep.separating and rep.upward_directed:
            out.append(P)
    return out


def ball_oracle(max_order=32, draws=50, seed=0, radii=RADII):
    """Exhaustive check of the 1/(2r) ball bound over all abelian groups up to ``max_order``."""
    from .groups import abelian_groups

    violations = []
    checked = 0
    groups = [[1]] + abelian_groups(max_order)
    for tag, m in enumerate(groups):
        G = FiniteAbelianGroup(m)
        for q in corpus(G, draws, seed, tag):
            bad = ball_violations(q, radii)
            checked += len(G.elements) * len(radii)
            violations.extend({"group": m, "character": str(c), "r": str(r), "dual": ev.format_value(v)}
                              for c, r, v in bad)
    return checked, violations
