"""Finite abelian groups Z/n1 x ... x Z/nk, their characters and subgroups.

A character is identified by a coefficient vector ``a`` over the same moduli,
acting by ``x -> exp(2 pi i sum(a_i x_i / n_i))``.  The circle norm of a
character value is returned as an exact ``Fraction`` in [0, 1/2].

Every finite domain here (a group, a subgroup, or the character group of a
subgroup) exposes the same small surface used by the quasi-norm engine:
``elements``, ``index``, ``add``, ``neg``, ``zero``, ``dual`` and
``pairing`` (an integer matrix of circle-norm numerators, rows indexed by
``dual.elements``, over the common denominator ``denominator``).
"""

from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, lcm, prod

import numpy as np

from .errors import InputError

__all__ = [
    "FiniteAbelianGroup", "Subgroup", "CharacterClasses", "CharacterClass",
    "make_group", "pair", "element_order", "character_order", "subgroup_generate",
    "subgroup_characters", "annihilator", "abelian_groups",
]


class _Domain:
    """Shared machinery for finite abelian domains with an explicit element list."""

    elements: tuple

    @cached_property
    def index(self):
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return tuple(x) in self.index

    @cached_property
    def add_table(self):
        n = len(self.elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                table[i, j] = self.index[self.add(x, y)]
        return table

    @cached_property
    def neg_index(self):
        return np.array([self.index[self.neg(x)] for x in self.elements], dtype=np.int64)

    def check_group_axioms(self):
        """Brute-force check of closure, identity, inverses and commutativity."""
        z = self.zero
        for x in self.elements:
            if self.add(x, z) != x or self.add(x, self.neg(x)) != z:
                return False
            for y in self.elements:
                if self.add(x, y) not in self.index or self.add(x, y) != self.add(y, x):
                    return False
        return True


class FiniteAbelianGroup(_Domain):
    """The group Z/n1 x ... x Z/nk.  Elements and characters are residue tuples."""

    def __init__(self, moduli):
        moduli = tuple(int(n) for n in moduli)
        if not moduli:
            raise InputError("a group needs at least one modulus")
        if any(n < 1 for n in moduli):
            raise InputError(f"moduli must be positive, got {list(moduli)}")
        self.moduli = moduli
        self.denominator = lcm(*moduli)
        self._weights = tuple(self.denominator // n for n in moduli)

    def __repr__(self):
        return "FiniteAbelianGroup(" + " x ".join(f"Z/{n}" for n in self.moduli) + ")"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(("group", self.moduli))

    @property
    def order(self):
        return prod(self.moduli)

    @cached_property
    def elements(self):
        return tuple(product(*(range(n) for n in self.moduli)))

    @property
    def characters(self):
        return self.elements

    @property
    def zero(self):
        return (0,) * len(self.moduli)

    @property
    def dual(self):
        # a -> chi_a identifies the character group with G itself
        return self

    @property
    def ambient(self):
        return self

    def element(self, x):
        x = tuple(int(v) for v in x)
        if len(x) != len(self.moduli):
            raise InputError(f"element {x} has {len(x)} coordinates, group has {len(self.moduli)}")
        return tuple(v % n for v, n in zip(x, self.moduli))

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple(-a % n for a, n in zip(x, self.moduli))

    def scalar(self, m, x):
        return tuple(m * a % n for a, n in zip(x, self.moduli))

    def phase(self, a, x):
        """sum(a_i x_i / n_i) mod 1, as an integer numerator over ``denominator``."""
        return sum(ai * xi * w for ai, xi, w in zip(a, x, self._weights)) % self.denominator

    @cached_property
    def _element_array(self):
        return np.array(self.elements, dtype=np.int64).reshape(len(self.elements), len(self.moduli))

    def phase_matrix(self, rows, cols):
        """Phase numerators for characters ``rows`` against elements ``cols``."""
        A = np.asarray(rows, dtype=np.int64).reshape(len(rows), len(self.moduli))
        X = np.asarray(cols, dtype=np.int64).reshape(len(cols), len(self.moduli))
        return ((A * np.array(self._weights, dtype=np.int64)) @ X.T) % self.denominator

    @cached_property
    def pairing(self):
        E = self._element_array
        s = self.phase_matrix(E, E)
        return np.minimum(s, self.denominator - s)


class Subgroup(_Domain):
    """A subgroup carried inside its ambient group; elements in lexicographic order."""

    def __init__(self, ambient, elements, generators=()):
        self.ambient = ambient
        self.elements = tuple(sorted(set(elements)))
        self.generators = tuple(generators)

    def __repr__(self):
        return f"Subgroup(order={len(self.elements)} in {self.ambient!r})"

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.ambient == other.ambient
                and self.elements == other.elements)

    def __hash__(self):
        return hash(("subgroup", self.ambient, self.elements))

    @property
    def zero(self):
        return self.ambient.zero

    @property
    def moduli(self):
        return self.ambient.moduli

    @property
    def denominator(self):
        return self.ambient.denominator

    def element(self, x):
        x = self.ambient.element(x)
        if x not in self.index:
            raise InputError(f"{x} is not in the subgroup")
        return x

    def add(self, x, y):
        return self.ambient.add(x, y)

    def neg(self, x):
        return self.ambient.neg(x)

    def is_subgroup_of(self, group):
        return self.ambient == group

    @cached_property
    def dual(self):
        return CharacterClasses(self)

    @cached_property
    def pairing(self):
        G = self.ambient
        reps = [G.index[c] for c in self.dual.elements]
        cols = [G.index[h] for h in self.elements]
        return G.pairing[np.ix_(reps, cols)]


class CharacterClass:
    """Ambient characters with equal restriction to a subgroup."""

    __slots__ = ("representative", "members")

    def __init__(self, representative, members):
        self.representative = representative
        self.members = tuple(members)

    def __repr__(self):
        return f"CharacterClass({self.representative}, size={len(self.members)})"


class CharacterClasses(_Domain):
    """The character group of a subgroup H, realised as G-characters modulo H-perp.

    Each class is named by its lexicographically smallest coefficient vector.
    """

    def __init__(self, subgroup):
        self.subgroup = subgroup
        G = subgroup.ambient
        sig = G.phase_matrix(G.elements, subgroup.elements)
        first = {}
        canon = {}
        for a, row in zip(G.elements, sig):
            # G.elements is lexicographic, so the first hit is the smallest
            canon[a] = first.setdefault(row.tobytes(), a)
        members = {}
        for a, rep in canon.items():
            members.setdefault(rep, []).append(a)
        self.classes = tuple(CharacterClass(rep, members[rep]) for rep in sorted(members))
        self._canon = canon
        self.elements = tuple(c.representative for c in self.classes)

    def __repr__(self):
        return f"CharacterClasses(of {self.subgroup!r})"

    def __eq__(self, other):
        return isinstance(other, CharacterClasses) and self.subgroup == other.subgroup

    def __hash__(self):
        return hash(("classes", self.subgroup))

    @property
    def ambient(self):
        return self.subgroup.ambient

    @property
    def moduli(self):
        return self.ambient.moduli

    @property
    def denominator(self):
        return self.ambient.denominator

    @property
    def zero(self):
        return self._canon[self.ambient.zero]

    def canonical(self, a):
        return self._canon[self.ambient.element(a)]

    element = canonical

    def add(self, a, b):
        return self._canon[self.ambient.add(a, b)]

    def neg(self, a):
        return self._canon[self.ambient.neg(a)]

    @property
    def dual(self):
        return self.subgroup

    @cached_property
    def pairing(self):
        return self.subgroup.pairing.T.copy()


def make_group(moduli):
    """Build Z/n1 x ... x Z/nk; an empty list or a modulus below 1 is rejected."""
    return FiniteAbelianGroup(moduli)


def pair(G, a, x):
    """Exact circle norm of chi_a(x): the distance from sum(a_i x_i / n_i) to the integers."""
    a = G.element(a)
    x = G.element(x)
    s = G.phase(a, x)
    return Fraction(min(s, G.denominator - s), G.denominator)


def element_order(G, x):
    x = G.element(x)
    m = 1
    for v, n in zip(x, G.moduli):
        m = lcm(m, n // gcd(v, n))
    return m


def character_order(G, a):
    # characters share the element grammar
    return element_order(G, a)


def subgroup_generate(G, gens):
    """Smallest subgroup containing ``gens`` (closure under addition)."""
    gens = [G.element(g) for g in gens]
    seen = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, seen, gens)


def subgroup_characters(H):
    """Restrictions of ambient characters to H, one class per character of H."""
    return list(H.dual.classes)


def annihilator(H):
    """Characters of the ambient group that are trivial on every element of H."""
    G = H.ambient
    sig = G.phase_matrix(G.elements, H.elements)
    return [a for a, row in zip(G.elements, sig) if not row.any()]


def abelian_groups(max_order):
    """Invariant-factor moduli d1 | d2 | ... of every abelian group of order 2..max_order."""
    out = []

    def extend(prefix, size):
        if prefix:
            out.append(list(prefix))
        start = prefix[-1] if prefix else 2
        d = start
        while size * d <= max_order:
            if not prefix or d % prefix[-1] == 0:
                extend(prefix + [d], size * d)
            d += 1

    extend([], 1)
    out.sort(key=lambda m: (prod(m), m))
    return out
