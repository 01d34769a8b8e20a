"""Finite families of quasi-norms used as metric structures.

Directedness is checked inside the family: an upper (lower) bound for a
pair must itself be a member.  On finite groups every topology involved is
discrete, so reflexivity of a structure reduces to all members being
regular; ``StructureReport.is_regular_structure`` records exactly that.
"""

from dataclasses import dataclass, field

from .errors import InputError, TheoremViolation
from .extended import INF
from .quasinorm import dual, is_regular, le

__all__ = ["MetricStructure", "StructureReport", "EquivalenceReport",
           "check_structure", "dual_structure", "check_prop_metrstr"]


class MetricStructure:
    def __init__(self, members):
        members = list(members)
        if not members:
            raise InputError("a metric structure needs at least one member")
        G = members[0].domain
        if any(p.domain != G for p in members):
            raise InputError("members live on different groups")
        self.group = G
        self.members = members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass
class StructureReport:
    separating: bool
    upward_directed: bool
    downward_directed: bool
    fin_covering: bool
    is_regular_structure: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_metric_structure(self):
        return (self.separating and self.upward_directed
                and self.downward_directed and self.fin_covering)


def _separating(members, elements, zero):
    for i, g in enumerate(elements):
        if g != zero and all(p.values[i] == 0 for p in members):
            return False, g
    return True, None


def _directed(members, upward):
    n = len(members)
    for i in range(n):
        for j in range(i + 1, n):
            p, q = members[i], members[j]
            if upward:
                ok = any(le(p, r) and le(q, r) for r in members)
            else:
                ok = any(le(v, p) and le(v, q) for v in members)
            if not ok:
                return False, (i, j)
    return True, None


def _fin(members, elements):
    for i, g in enumerate(elements):
        if all(p.values[i] == INF for p in members):
            return False, g
    return True, None


def check_structure(P):
    members = list(P.members)
    elements = P.group.elements
    sep, w_sep = _separating(members, elements, P.group.zero)
    up, w_up = _directed(members, upward=True)
    down, w_down = _directed(members, upward=False)
    fin, w_fin = _fin(members, elements)
    witnesses = {}
    for name, ok, w in (("separating", sep, w_sep), ("upward_directed", up, w_up),
                        ("downward_directed", down, w_down), ("fin_covering", fin, w_fin)):
        if not ok:
            witnesses[name] = w
    regular = all(is_regular(p).is_regular for p in members)
    return StructureReport(sep, up, down, fin, regular, witnesses)


def dual_structure(P):
    return MetricStructure([dual(p) for p in P.members])


@dataclass
class EquivalenceReport:
    condition_i: bool
    condition_ii: bool
    condition_iii: bool

    @property
    def consistent(self):
        return self.condition_i == self.condition_ii == self.condition_iii


def check_prop_metrstr(P, strict=True):
    """Evaluate the three equivalent conditions for a regular, upward directed, separating family.

    (i)   the dual family is separating and upward directed;
    (ii)  the family is downward directed and every element has a finite value somewhere;
    (iii) the dual family is separating, directed both ways, and pointwise finite somewhere.

    A disagreement raises :class:`TheoremViolation` when ``strict``.
    """
    base = check_structure(P)
    if not (base.is_regular_structure and base.upward_directed and base.separating):
        raise InputError("family must consist of regular members and be upward directed and separating")
    D = check_structure(dual_structure(P))
    cond_i = D.separating and D.upward_directed
    cond_ii = base.downward_directed and base.fin_covering
    cond_iii = D.separating and D.upward_directed and D.downward_directed and D.fin_covering
    report = EquivalenceReport(cond_i, cond_ii, cond_iii)
    if strict and not report.consistent:
        raise TheoremViolation(f"metric-structure equivalence broken: {report}")
    return report
