"""Finite groups presented by explicit element lists, abelian groups and their
duals, semidirect products, orbits and double cosets."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .exactnum import Cyclotomic, cyclotomic_reduce

SAMPLE_SIZE = 64


class ActionError(ValueError):
    pass


# ------------------------------------------------------------ abelian groups

class AbelianGroup:
    """Z_{d_1} x ... x Z_{d_k}; elements are residue tuples."""

    def __init__(self, invariant_factors):
        self.factors = tuple(int(d) for d in invariant_factors)
        if any(d < 1 for d in self.factors):
            raise ValueError("invariant factors must be positive")

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"AbelianGroup({list(self.factors)})"

    @property
    def rank(self):
        return len(self.factors)

    @property
    def order(self):
        return math.prod(self.factors)

    @property
    def exponent(self):
        return math.lcm(*self.factors) if self.factors else 1

    def zero(self):
        return (0,) * self.rank

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a):
        return tuple(-x % d for x, d in zip(a, self.factors))

    def sub(self, a, b):
        return tuple((x - y) % d for x, y, d in zip(a, b, self.factors))

    def scale(self, c, a):
        return tuple(c * x % d for x, d in zip(a, self.factors))

    def elements(self):
        return itertools.product(*(range(d) for d in self.factors))

    def generators(self):
        return [tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank)]

    def contains(self, a):
        return len(a) == self.rank and all(0 <= x < d for x, d in zip(a, self.factors))

    def subgroup(self, gens):
        """Sorted tuple of the elements of the subgroup generated by ``gens``."""
        gens = [tuple(g) for g in gens]
        for g in gens:
            if not self.contains(g):
                raise ValueError(f"{g} is not an element of {self}")
        elems = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.add(a, g)
                    if b not in elems:
                        elems.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(elems))

    def apply(self, matrix, a):
        """Endomorphism given by the images of the standard generators."""
        out = [0] * self.rank
        for coef, img in zip(a, matrix):
            if coef:
                for i, x in enumerate(img):
                    out[i] += coef * x
        return tuple(x % d for x, d in zip(out, self.factors))


@dataclass(frozen=True)
class AbelianCharacter:
    """chi(a) = zeta_N^{sum b_i a_i N/d_i} with N the exponent of the group."""

    group: AbelianGroup
    exponents: tuple

    @property
    def order(self):
        return self.group.exponent

    def exponent_at(self, a):
        N = self.group.exponent
        return sum(b * x * (N // d) for b, x, d in zip(self.exponents, a, self.group.factors)) % N

    def __call__(self, a):
        return Cyclotomic.root(self.order, self.exponent_at(a))

    def is_trivial_on(self, elems):
        return all(self.exponent_at(c) == 0 for c in elems)

    def __mul__(self, other):
        return AbelianCharacter(self.group, self.group.add(self.exponents, other.exponents))

    def conj(self):
        return AbelianCharacter(self.group, self.group.neg(self.exponents))

    def __lt__(self, other):
        return self.exponents < other.exponents


def character_sum(chars_and_points):
    """Exact sum of chi(a) over (chi, a) pairs sharing one group."""
    counts = {}
    N = 1
    for chi, a in chars_and_points:
        N = chi.order
        e = chi.exponent_at(a)
        counts[e] = counts.get(e, 0) + 1
    return cyclotomic_reduce(counts, N)


def dual_group(A):
    return [AbelianCharacter(A, e) for e in A.elements()]


def quotient_characters(A, C_gens):
    """Characters of A trivial on the subgroup generated by ``C_gens``."""
    C_gens = [tuple(c) for c in C_gens]
    for c in C_gens:
        if not A.contains(c):
            raise ValueError(f"{c} is not an element of {A}")
    out = []
    for e in A.elements():
        chi = AbelianCharacter(A, e)
        if chi.is_trivial_on(C_gens):
            out.append(chi)
    return out


# ------------------------------------------------------------ finite groups

class FiniteGroup:
    """A finite group given by an explicit, sorted element list.

    ``aut`` optionally maps an element to the matrix of its action on an
    abelian group A (rows are the images of A's standard generators).
    """

    def __init__(self, elements, mul, inv=None, identity=None, aut=None, name="G", verify=True):
        self.elements = tuple(sorted(set(elements)))
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._mul = mul
        self._inv = inv
        self._aut = aut
        self._aut_cache = {}
        self._inv_cache = {}
        self.name = name
        if identity is None:
            identity = next(e for e in self.elements if all(mul(e, g) == g for g in self.elements[:8]))
        self.identity = identity
        if verify:
            self.verify()

    @classmethod
    def generate(cls, gens, mul, identity, inv=None, aut=None, name="G"):
        """Closure of ``gens`` under multiplication."""
        elems = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return cls(elems, mul, inv, identity, aut, name)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    def mul(self, g, h):
        return self._mul(g, h)

    def inv(self, g):
        r = self._inv_cache.get(g)
        if r is None:
            if self._inv is not None:
                r = self._inv(g)
            else:
                r = next(h for h in self.elements if self._mul(g, h) == self.identity)
            self._inv_cache[g] = r
        return r

    def aut(self, g):
        if self._aut is None:
            raise ValueError(f"group {self.name} carries no action on A")
        m = self._aut_cache.get(g)
        if m is None:
            m = self._aut(g)
            self._aut_cache[g] = m
        return m

    @property
    def has_aut(self):
        return self._aut is not None

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self._mul(x, g)
            k += 1
        return k

    def exponent(self):
        return math.lcm(*(self.element_order(g) for g in self.elements))

    def subgroup(self, elements, name="K"):
        return FiniteGroup(elements, self._mul, self._inv, self.identity, self._aut, name, verify=False)

    def is_subgroup(self, elems):
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self._mul(a, b) in s for a in s for b in s)

    def sample(self, k=SAMPLE_SIZE, seed=0):
        rng = random.Random(seed)
        return [rng.choice(self.elements) for _ in range(k)]

    def verify(self, full=False, seed=0):
        elems = self.elements if full else self.sample(seed=seed)
        e = self.identity
        for g in elems:
            if self._mul(g, e) != g or self._mul(e, g) != g:
                raise ValueError("identity law fails")
            if self._mul(g, self.inv(g)) != e:
                raise ValueError("inverse law fails")
            if self._mul(g, e) not in self.index:
                raise ValueError("not closed")
        rng = random.Random(seed + 1)
        for _ in range(SAMPLE_SIZE):
            a, b, c = (rng.choice(self.elements) for _ in range(3))
            ab = self._mul(a, b)
            if ab not in self.index:
                raise ValueError("not closed under multiplication")
            if self._mul(ab, c) != self._mul(a, self._mul(b, c)):
                raise ValueError("multiplication is not associative")
        return True


def permutation_group(generators, degree=None):
    """Group of permutations (tuples of images of 0..n-1) generated by ``generators``."""
    gens = [tuple(g) for g in generators]
    n = degree if degree is not None else (len(gens[0]) if gens else 0)
    ident = tuple(range(n))
    return FiniteGroup.generate(gens, compose, ident, inv=perm_inverse, name="Perm")


def compose(g, h):
    """(g h)(x) = g(h(x))."""
    return tuple(g[x] for x in h)


def perm_inverse(g):
    out = [0] * len(g)
    for i, x in enumerate(g):
        out[x] = i
    return tuple(out)


def symmetric_group(n):
    return FiniteGroup(list(itertools.permutations(range(n))), compose, perm_inverse,
                       tuple(range(n)), name=f"S{n}")


# ------------------------------------------------------------ semidirect products

@dataclass(frozen=True)
class SemidirectElement:
    h: object
    a: tuple


def act_on_A(H, A, h, a):
    return A.apply(H.aut(h), a)


def semidirect_mul(H, A, x, y):
    """(h, a)(h', a') = (hh', a + h a')."""
    return SemidirectElement(H.mul(x.h, y.h), A.add(x.a, act_on_A(H, A, x.h, y.a)))


def semidirect_inv(H, A, x):
    """(h, a)^-1 = (h^-1, -h^-1 a)."""
    hi = H.inv(x.h)
    return SemidirectElement(hi, A.neg(act_on_A(H, A, hi, x.a)))


def semidirect_identity(H, A):
    return SemidirectElement(H.identity, A.zero())


def char_conjugate(H, A, h, psi):
    """The translate ^h psi, a -> psi(h^-1 a)."""
    hi = H.inv(h)
    N = A.exponent
    exps = []
    for j, gen in enumerate(A.generators()):
        e = psi.exponent_at(act_on_A(H, A, hi, gen))
        # e = b'_j N / d_j mod N
        exps.append((e // (N // A.factors[j])) % A.factors[j])
    return AbelianCharacter(A, tuple(exps))


# ------------------------------------------------------------ orbits

@dataclass
class Orbit:
    rep: object
    points: tuple
    stabilizer: tuple

    @property
    def size(self):
        return len(self.points)


def orbits(action, elements, points, key=None, check=True, seed=0):
    """Partition ``points`` into orbits of the group ``elements``.

    Points are visited in their canonical order (``key`` or natural), so each
    representative is the minimum of its orbit. Each orbit carries the
    stabilizer of its representative.
    """
    elements = list(elements)
    pts = sorted(points, key=key) if key else sorted(points)
    if check:
        check_action(action, elements, pts, seed=seed)
    seen = set()
    out = []
    for x in pts:
        if x in seen:
            continue
        orb = set()
        stab = []
        for g in elements:
            y = action(g, x)
            orb.add(y)
            if y == x:
                stab.append(g)
        seen |= orb
        out.append(Orbit(x, tuple(sorted(orb, key=key) if key else sorted(orb)), tuple(stab)))
    total = len(elements)
    for o in out:
        if o.size * len(o.stabilizer) != total:
            raise ActionError("orbit-stabilizer count fails")
    if len(seen) != len(pts):
        raise ActionError("action leaves the point set")
    return out


def check_action(action, elements, points, mul=None, identity=None, seed=0):
    """Spot-check that elements map the point set into itself (and the
    composition law when ``mul`` is given) on a deterministic sample."""
    if not elements or not points:
        return True
    pset = set(points)
    rng = random.Random(seed)
    for _ in range(SAMPLE_SIZE):
        g = rng.choice(elements)
        x = rng.choice(points)
        y = action(g, x)
        if y not in pset:
            raise ActionError(f"action maps {x!r} outside the set")
        if mul is not None:
            h = rng.choice(elements)
            if action(mul(g, h), x) != action(g, action(h, x)):
                raise ActionError("composition law fails")
    if identity is not None:
        for x in points[:SAMPLE_SIZE]:
            if action(identity, x) != x:
                raise ActionError("identity does not act trivially")
    return True


def double_cosets(G, K_elements):
    """K\\G/K as a list of (representative, sorted elements)."""
    K = list(K_elements)
    if not G.is_subgroup(K):
        raise ValueError("K is not a subgroup of G")
    seen = set()
    out = []
    for g in G.elements:
        if g in seen:
            continue
        dc = {G.mul(G.mul(k1, g), k2) for k1 in K for k2 in K}
        seen |= dc
        out.append((g, tuple(sorted(dc))))
    return out
