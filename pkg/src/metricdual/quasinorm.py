"""Exact quasi-norm calculus on finite abelian groups.

A quasi-norm is a table of extended nonnegative rationals over a finite
domain with q(0) = 0, q(-x) = q(x) and q(x + y) <= q(x) + q(y).  The dual
lives on the character domain and is the least Lipschitz constant of each
character with respect to the circle norm; the regularisation is the double
dual read back on the original domain.

All suprema range over finite sets and are computed exactly.  Floating point
is used only to shortlist candidates; every reported value is a ``Fraction``
or ``INF``.
"""

import functools
import heapq
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import extended as ev
from .errors import InputError
from .extended import INF, ZERO
from .groups import FiniteAbelianGroup, Subgroup, annihilator

__all__ = [
    "QuasiNorm", "ValidationResult", "RegularityReport",
    "validate", "discrete_norm", "zero_qn", "infty_qn", "scale",
    "dual", "bidual", "regularise", "regularise_formula", "is_regular",
    "join", "meet", "restrict", "product", "kernel", "fin_part", "annihilator",
    "random_quasinorm", "subadditive_closure", "le", "ball_violations",
]

# relative slack used when shortlisting by floats; exact comparison decides
_SCREEN = 1e-9


class QuasiNorm:
    """A total value table over ``domain.elements``.

    ``values`` is either a sequence aligned with ``domain.elements`` or a
    mapping from elements to values.  Construction checks totality only; use
    :func:`validate` for the axioms.
    """

    __slots__ = ("domain", "values", "_hash")

    def __init__(self, domain, values):
        if isinstance(values, dict):
            table = {}
            for x, v in values.items():
                table[domain.element(x)] = ev.as_ext(v)
            missing = [x for x in domain.elements if x not in table]
            if missing:
                raise InputError(f"table is not total: no value for {missing[0]}")
            extra = set(table) - set(domain.index)
            if extra:
                raise InputError(f"table has entries outside the domain: {sorted(extra)[0]}")
            values = [table[x] for x in domain.elements]
        else:
            values = [ev.as_ext(v) for v in values]
            if len(values) != len(domain.elements):
                raise InputError(
                    f"table has {len(values)} entries, domain has {len(domain.elements)} elements")
        self.domain = domain
        self.values = tuple(values)
        self._hash = None

    def __call__(self, x):
        return self.values[self.domain.index[tuple(x)]]

    __getitem__ = __call__

    def items(self):
        return zip(self.domain.elements, self.values)

    def __eq__(self, other):
        return (isinstance(other, QuasiNorm) and self.domain == other.domain
                and self.values == other.values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, self.values))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{x}: {ev.format_value(v)}" for x, v in list(self.items())[:6])
        more = ", ..." if len(self.values) > 6 else ""
        return f"QuasiNorm({self.domain!r}, {{{body}{more}}})"

    def __le__(self, other):
        return le(self, other)

    def _floats(self):
        return np.array([float(v) for v in self.values])


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class RegularityReport:
    is_regular: bool
    witness: tuple | None
    is_reflexive: bool
    kappa_images: int


def le(q, r):
    """Pointwise q <= r."""
    _same_domain([q, r])
    return all(a <= b for a, b in zip(q.values, r.values))


def validate(q):
    """Check the three axioms; on failure name the axiom and a witness."""
    D = q.domain
    z = D.index[D.zero]
    if q.values[z] != 0:
        return ValidationResult(False, "p(e_G)=0", (D.zero,))
    neg = D.neg_index
    for i, j in enumerate(neg):
        if q.values[i] != q.values[j]:
            return ValidationResult(False, "symmetry", (D.elements[i], D.elements[j]))
    f = q._floats()
    T = D.add_table
    with np.errstate(invalid="ignore"):
        lhs = f[T]
        rhs = f[:, None] + f[None, :]
        cand = np.argwhere(lhs >= rhs * (1 - _SCREEN))
    vals = q.values
    for i, j in cand:
        s = T[i, j]
        if vals[s] > ev.add(vals[i], vals[j]):
            return ValidationResult(False, "subadditivity", (D.elements[i], D.elements[j]))
    return ValidationResult(True)


def _require_valid(q):
    res = validate(q)
    if not res:
        raise InputError(f"not a quasi-norm: axiom {res.axiom} fails at {res.witness}")


def discrete_norm(G):
    return QuasiNorm(G, [ZERO if x == G.zero else ev.rational(1) for x in G.elements])


def zero_qn(G):
    return QuasiNorm(G, [ZERO] * len(G.elements))


def infty_qn(G):
    return QuasiNorm(G, [ZERO if x == G.zero else INF for x in G.elements])


def scale(q, c):
    c = ev.rational(Fraction(c))
    if c <= 0:
        raise InputError("scale factor must be positive")
    return QuasiNorm(q.domain, [v if v == INF else v * c for v in q.values])


def _distinct(values):
    """Distinct values, their float images, and the value id of every entry."""
    ids = {}
    vid = np.fromiter((ids.setdefault(v, len(ids)) for v in values), dtype=np.int64,
                      count=len(values))
    distinct = list(ids)
    return distinct, np.array([float(v) for v in distinct]), vid


def _exact_rowopt(score, keys, exact, maximize=True):
    """Exact row-wise optimum of ``exact(key)`` over entries with a valid score.

    ``score`` is a float shortlist (nan marks entries outside the index set);
    the exact value is recomputed only for distinct keys near the float
    optimum.  Returns a list, with None for rows without valid entries.
    """
    valid = ~np.isnan(score)
    if maximize:
        top = np.where(valid, score, -np.inf).max(axis=1) if score.shape[1] else np.full(len(score), -np.inf)
        with np.errstate(invalid="ignore"):
            near = valid & (score >= top[:, None] * (1 - _SCREEN))
    else:
        top = np.where(valid, score, np.inf).min(axis=1) if score.shape[1] else np.full(len(score), np.inf)
        with np.errstate(invalid="ignore"):
            near = valid & (score <= top[:, None] * (1 + _SCREEN))
    flat = keys[near]
    if not flat.size:
        return [None] * len(score)
    ukeys = np.unique(flat)
    exact_vals = [exact(int(k)) for k in ukeys]
    # rank distinct exact values so the row optimum becomes an integer reduction
    order = sorted(set(exact_vals))
    rank_of = {v: r for r, v in enumerate(order)}
    ranks = np.array([rank_of[v] for v in exact_vals], dtype=np.int64)
    R = ranks[np.searchsorted(ukeys, np.where(near, keys, ukeys[0]))]
    if maximize:
        best = np.where(near, R, -1).max(axis=1)
    else:
        best = np.where(near, R, len(order)).min(axis=1)
    has = near.any(axis=1)
    return [order[b] if h else None for b, h in zip(best.tolist(), has.tolist())]


def _sup_ratios(P, N, values):
    """Row-wise max over j with P[i, j] > 0 of (P[i, j] / N) / values[j].

    Conventions: a/0 = inf, a/inf = 0, empty max = 0.
    """
    distinct, fd, vid = _distinct(values)
    nv = len(distinct)
    pos = P > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        score = np.where(pos, P / fd[vid][None, :], np.nan)
    keys = P * nv + vid[None, :]
    res = _exact_rowopt(score, keys,
                        lambda k: ev.div(ev.rational(k // nv, N), distinct[k % nv]))
    return [ZERO if v is None else v for v in res]


@functools.lru_cache(maxsize=8192)
def dual(q):
    """The dual quasi-norm on the character domain (memoised; quasi-norms are immutable)."""
    D = q.domain
    return QuasiNorm(D.dual, _sup_ratios(D.pairing, D.denominator, q.values))


def bidual(q):
    """dual(dual(q)), indexed by the original elements (canonical evaluation)."""
    return dual(dual(q))


def regularise(q):
    return bidual(q)


def regularise_formula(q):
    """Regularisation through the sup-inf formula, independent of :func:`dual`.

    reg q(x) = sup over characters chi with chi(x) != 1 of
    inf over g with chi(g) != 1 of [lambda(chi(x)) / lambda(chi(g))] q(g).
    The positive factor lambda(chi(x)) is taken out of the inner infimum.
    """
    D = q.domain
    P = D.pairing  # rows: characters of D, cols: elements of D
    pos = P > 0
    distinct, fd, vid = _distinct(q.values)
    nv = len(distinct)
    # inner infimum per character: min over g with P > 0 of q(g) / P[chi, g]
    with np.errstate(divide="ignore", invalid="ignore"):
        score = np.where(pos, fd[vid][None, :] / np.where(pos, P, 1), np.nan)

    def ratio(k):
        v = distinct[k % nv]
        return v if v == INF else v / (k // nv)

    inner = _exact_rowopt(score, P * nv + vid[None, :], ratio, maximize=False)
    # outer supremum per element: max over chi with P > 0 of P[chi, x] * inner[chi]
    m_distinct, m_f, m_id = _distinct([ZERO if m is None else m for m in inner])
    nm = len(m_distinct)
    Pt = P.T
    ok = (Pt > 0) & np.array([m is not None for m in inner])[None, :]
    with np.errstate(invalid="ignore"):
        score = np.where(ok, Pt * m_f[m_id][None, :], np.nan)

    def scaled(k):
        m = m_distinct[k % nm]
        return m if (m == INF or m == 0) else m * (k // nm)

    out = _exact_rowopt(score, Pt * nm + m_id[None, :], scaled)
    return QuasiNorm(D, [ZERO if v is None else v for v in out])


_KAPPA = {}


def _kappa_images(D):
    """Number of distinct evaluation maps x -> (chi -> chi(x)) on the character domain."""
    if D in _KAPPA:
        return _KAPPA[D]
    if isinstance(D, FiniteAbelianGroup):
        phases = D.phase_matrix(D.elements, D.elements)
    else:
        G = D.ambient
        phases = G.phase_matrix(D.dual.elements, D.elements)
    n = _KAPPA[D] = len({col.tobytes() for col in phases.T})
    return n


def is_regular(q):
    r = regularise(q)
    witness = None
    for x, a, b in zip(q.domain.elements, r.values, q.values):
        if a != b:
            witness = (x, a, b)
            break
    images = _kappa_images(q.domain)
    surjective = images == len(q.domain.dual.dual.elements)
    return RegularityReport(witness is None, witness, witness is None and surjective, images)


def _same_domain(qs):
    if not qs:
        raise InputError("need at least one quasi-norm")
    D = qs[0].domain
    for q in qs[1:]:
        if q.domain != D:
            raise InputError("quasi-norms live on different groups")
    return D


def join(qs):
    """Pointwise supremum."""
    qs = list(qs)
    D = _same_domain(qs)
    return QuasiNorm(D, [max(vs) for vs in zip(*(q.values for q in qs))])


def meet(qs):
    """Order infimum among regular quasi-norms: dual of the supremum of the duals."""
    qs = list(qs)
    _same_domain(qs)
    return dual(join([dual(q) for q in qs]))


def restrict(q, H):
    if not isinstance(H, Subgroup) or H.ambient != q.domain:
        raise InputError("restriction needs a subgroup of the quasi-norm's group")
    return QuasiNorm(H, [q(h) for h in H.elements])


def product(factors):
    """Max-combination of quasi-norms on the direct product of their groups.

    ``factors`` holds quasi-norms or ``(group, quasinorm)`` pairs.
    """
    qs = []
    for item in factors:
        if isinstance(item, tuple):
            G, q = item
            if q.domain != G:
                raise InputError("quasi-norm does not live on the stated group")
        else:
            q = item
        if not isinstance(q.domain, FiniteAbelianGroup):
            raise InputError("product factors must be quasi-norms on groups")
        qs.append(q)
    if not qs:
        raise InputError("product of an empty family")
    moduli = [n for q in qs for n in q.domain.moduli]
    P = FiniteAbelianGroup(moduli)
    cuts = np.cumsum([0] + [len(q.domain.moduli) for q in qs])
    vals = []
    for x in P.elements:
        vals.append(max(q(x[cuts[k]:cuts[k + 1]]) for k, q in enumerate(qs)))
    return QuasiNorm(P, vals)


def _as_subgroup(D, elems):
    G = D if isinstance(D, FiniteAbelianGroup) else getattr(D, "ambient", None)
    if isinstance(D, (FiniteAbelianGroup, Subgroup)):
        return Subgroup(G, elems)
    raise InputError("kernel/fin_part are defined here for groups and subgroups only")


def kernel(q):
    return _as_subgroup(q.domain, [x for x, v in q.items() if v == 0])


def fin_part(q):
    return _as_subgroup(q.domain, [x for x, v in q.items() if v != INF])


def subadditive_closure(G, raw):
    """Greatest quasi-norm below ``raw``: symmetrise, then shortest paths on the Cayley graph."""
    idx = G.index
    neg = G.neg_index
    w = [min(raw[i], raw[neg[i]]) for i in range(len(raw))]
    w[idx[G.zero]] = ZERO
    steps = [(j, w[j]) for j in range(len(w)) if w[j] != INF and j != idx[G.zero]]
    dist = [INF] * len(w)
    start = idx[G.zero]
    dist[start] = ZERO
    heap = [(ZERO, start)]
    T = G.add_table
    while heap:
        d, i = heapq.heappop(heap)
        if d > dist[i]:
            continue
        for j, c in steps:
            k = T[i, j]
            nd = d + c
            if nd < dist[k]:
                dist[k] = nd
                heapq.heappush(heap, (nd, int(k)))
    return QuasiNorm(G, dist)


def random_quasinorm(G, seed, value_pool):
    """Deterministic random quasi-norm: raw draws from ``value_pool`` then subadditive closure."""
    pool = [ev.as_ext(v) for v in value_pool]
    if not pool:
        raise InputError("value pool is empty")
    rng = random.Random(seed)
    raw = [rng.choice(pool) for _ in G.elements]
    return subadditive_closure(G, raw)


def ball_violations(q, radii):
    """Characters breaking the ball bound dual(q)(chi) <= 1/(2r).

    The bound is claimed only when chi maps the open q-ball of radius r into
    the closed circle ball of radius 1/4.  Returns ``(chi, r, dual value)``
    triples; an empty list certifies the bound on this input.
    """
    D = q.domain
    d = dual(q)
    P = D.pairing
    N = D.denominator
    bad = []
    for r in radii:
        r = ev.rational(Fraction(r))
        inside = np.array([v < r for v in q.values])
        if inside.any():
            ball_max = P[:, inside].max(axis=1)
        else:
            ball_max = np.zeros(P.shape[0], dtype=np.int64)
        bound = 1 / (2 * r)
        for i, chi in enumerate(D.dual.elements):
            if 4 * int(ball_max[i]) <= N and d.values[i] > bound:
                bad.append((chi, r, d.values[i]))
    return bad
