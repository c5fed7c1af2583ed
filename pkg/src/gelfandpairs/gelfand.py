"""Generic engine for pairs (H x| A, K x| C).

Given H acting on A and on a set Y, a base point y0 with stabilizer K and a
K-invariant subgroup C of A, the homogeneous space X consists of pairs
(y, b) with b in B_y = A / hC (h y0 = y). This module builds X, its
(K x| C)-orbits and relation algebra, the Theta/Xi character analysis, the
Lambda basis, and spherical functions by two independent routes: the
structural formula and exact-verified diagonalization of the intersection
matrices.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
import numpy as np

from . import groups
from .exactnum import (PRECISION_BITS, Cyclotomic, NoReconstruction, cyclotomic_reduce,
                       reconstruct_value, to_text)
from .groups import AbelianCharacter, AbelianGroup, FiniteGroup

MAX_RETRIES = 3
MAX_DRAWS = 64


class InstanceError(ValueError):
    pass


class NotMultiplicityFree(RuntimeError):
    pass


class ReconstructionFailed(RuntimeError):
    pass


class XiNeTheta(RuntimeError):
    pass


class NoWitness(RuntimeError):
    pass


@dataclass
class OrbitTable:
    reps: list            # point indices in X
    sizes: list
    labels: list
    orbit_of: list        # X index -> orbit index
    base: int
    formula_sizes: list = field(default_factory=list)


@dataclass
class ThetaData:
    theta: list           # representative characters of A trivial on C
    K_theta: list         # element lists
    H_theta: list
    classes: list         # lists of Theta indices sharing an H-orbit
    xi: list              # one Theta index per class
    xi_equals_theta: bool
    small_commutative: list


class GelfandInstance:
    """Data (H, A, Y, y0, C) with H acting on A through ``H.aut``."""

    def __init__(self, H, A, Y, act_Y, y0, C_gens, name="instance", verify=True):
        self.H = H
        self.A = A
        self.Y = list(Y)
        self._act_Y = act_Y
        self.y0 = y0
        self.C_gens = [tuple(c) for c in C_gens]
        self.name = name
        self.y_index = {y: i for i, y in enumerate(self.Y)}
        if len(self.y_index) != len(self.Y):
            raise InstanceError("Y has repeated points")
        if y0 not in self.y_index:
            raise InstanceError("y0 is not in Y")
        self.y0i = self.y_index[y0]
        self._ycache = {}
        if verify:
            self.verify()

    # ---------------------------------------------------------- group data

    def act_A(self, h, a):
        if not self.A.rank:
            return a
        return self.A.apply(self.H.aut(h), a)

    def hy(self, h, yi):
        key = (h, yi)
        r = self._ycache.get(key)
        if r is None:
            r = self.y_index[self._act_Y(h, self.Y[yi])]
            self._ycache[key] = r
        return r

    @cached_property
    def _base_images(self):
        return [self.hy(h, self.y0i) for h in self.H.elements]

    @cached_property
    def K(self):
        els = [h for h, yi in zip(self.H.elements, self._base_images) if yi == self.y0i]
        return self.H.subgroup(els, name="K")

    @cached_property
    def transversal(self):
        """For each y, the first h (in H's order) with h y0 = y."""
        t = {}
        for h, yi in zip(self.H.elements, self._base_images):
            t.setdefault(yi, h)
        if len(t) != len(self.Y):
            raise InstanceError("H is not transitive on Y")
        return [t[i] for i in range(len(self.Y))]

    @cached_property
    def C(self):
        return self.A.subgroup(self.C_gens)

    @cached_property
    def C_set(self):
        return frozenset(self.C)

    def C_at(self, yi):
        """hC for h y0 = y, the kernel of pi_y."""
        h = self.transversal[yi]
        return frozenset(self.act_A(h, c) for c in self.C)

    @cached_property
    def _canon(self):
        tables = []
        elems = sorted(self.A.elements())
        for yi in range(len(self.Y)):
            Cy = sorted(self.C_at(yi))
            table = {}
            for a in elems:
                if a in table:
                    continue
                for c in Cy:
                    table[self.A.add(a, c)] = a
            tables.append(table)
        return tables

    def canon(self, yi, a):
        """Minimal representative of a + C_y."""
        return self._canon[yi][a]

    def B_reps(self, yi):
        return sorted(set(self._canon[yi].values()))

    @property
    def B_order(self):
        return self.A.order // len(self.C)

    def verify_stabilizer(self):
        """Enumerate H x A and check that the stabilizer of (y0, 0) is K x| C."""
        x0 = self.x0
        kset, cset = set(self.K.elements), self.C_set
        count = 0
        for h in self.H.elements:
            if self.hy(h, self.y0i) != self.y0i:
                continue
            for a in self.A.elements():
                if self.act_X(h, a, x0) == x0:
                    if h not in kset or a not in cset:
                        raise InstanceError("stabilizer of the base point exceeds K x| C")
                    count += 1
        if count != len(self.K) * len(self.C):
            raise InstanceError("stabilizer of the base point is smaller than K x| C")
        return True

    def verify(self, full=False):
        H = self.H
        groups.check_action(lambda h, y: self._act_Y(h, y), list(H.elements), self.Y,
                            mul=H.mul, identity=H.identity)
        if self.A.rank:
            rng = random.Random(7)
            for _ in range(groups.SAMPLE_SIZE):
                g, h = rng.choice(H.elements), rng.choice(H.elements)
                a = tuple(rng.randrange(d) for d in self.A.factors)
                if self.act_A(H.mul(g, h), a) != self.act_A(g, self.act_A(h, a)):
                    raise InstanceError("H does not act on A")
        for k in self.K.elements if full else self.K.elements[:256]:
            for c in self.C_gens:
                if self.act_A(k, c) not in self.C_set:
                    raise InstanceError("C is not K-invariant")
        return True

    # ---------------------------------------------------------- the space X

    @cached_property
    def X(self):
        pts = []
        for yi in range(len(self.Y)):
            for b in self.B_reps(yi):
                pts.append((yi, b))
        return pts

    @cached_property
    def x_index(self):
        return {x: i for i, x in enumerate(self.X)}

    @property
    def x0(self):
        return (self.y0i, self.A.zero())

    def act_X(self, h, a, x):
        """(h, a)(y, b) = (h y, pi_{hy}(a) + h b)."""
        yi, b = x
        y2 = self.hy(h, yi)
        return (y2, self.canon(y2, self.A.add(a, self.act_A(h, b))))

    def act_X_inverse_of_transversal(self, x, x2):
        """t_x^-1 x2 where t_x = (t_y, b) maps x0 to x = (y, b)."""
        h = self.transversal[x[0]]
        hi = self.H.inv(h)
        a = self.A.neg(self.act_A(hi, x[1]))
        return self.act_X(hi, a, x2)

    @cached_property
    def orbit_table(self):
        K, C = self.K.elements, self.C
        orbit_of = [None] * len(self.X)
        reps, sizes = [], []
        for xi, x in enumerate(self.X):
            if orbit_of[xi] is not None:
                continue
            yi, b = x
            orb = set()
            for k in K:
                y2 = self.hy(k, yi)
                kb = self.act_A(k, b)
                for c in C:
                    orb.add((y2, self.canon(y2, self.A.add(c, kb))))
            for p in orb:
                orbit_of[self.x_index[p]] = len(reps)
            reps.append(xi)
            sizes.append(len(orb))
        base = orbit_of[self.x_index[self.x0]]
        formula = [self.orbit_size_formula(self.X[r]) for r in reps]
        labels = [f"o{i}" for i in range(len(reps))]
        return OrbitTable(reps, sizes, labels, orbit_of, base, formula)

    def stabilizer_in_K(self, yi):
        return [k for k in self.K.elements if self.hy(k, yi) == yi]

    def orbit_size_formula(self, x):
        """|K||C| / (|K_{z,d}| |hC cap C|)."""
        zi, d = x
        Cz = self.C_at(zi)
        CCz = {self.A.add(c, c2) for c in self.C for c2 in Cz}
        Kzd = 0
        for k in self.stabilizer_in_K(zi):
            if self.A.sub(self.act_A(k, d), d) in CCz:
                Kzd += 1
        return len(self.K) * len(self.C) // (Kzd * len(Cz & self.C_set))

    @cached_property
    def relation_matrix(self):
        ot = self.orbit_table
        n = len(self.X)
        R = np.zeros((n, n), dtype=np.int64)
        for i, x in enumerate(self.X):
            for j, x2 in enumerate(self.X):
                R[i, j] = ot.orbit_of[self.x_index[self.act_X_inverse_of_transversal(x, x2)]]
        return R

    @cached_property
    def scheme(self):
        ot = self.orbit_table
        R = self.relation_matrix
        x0 = self.x_index[self.x0]
        return RelationScheme.from_rows(len(ot.reps), R[x0], [R[:, r] for r in ot.reps],
                                        ot.base, ot.sizes)

    # ---------------------------------------------------------- characters

    def conj(self, h, psi):
        if not self.A.rank:
            return psi
        return groups.char_conjugate(self.H, self.A, h, psi)

    @cached_property
    def K_orbits_Y(self):
        """(reps, rep_of, to_rep) with to_rep[y] an element k with k y = rep."""
        rep_of, to_rep, reps = {}, {}, []
        for yi in range(len(self.Y)):
            if yi in rep_of:
                continue
            reps.append(yi)
            for k in self.K.elements:
                y2 = self.hy(k, yi)
                if y2 not in rep_of:
                    rep_of[y2] = yi
                    to_rep[y2] = self.H.inv(k)
        return reps, rep_of, to_rep

    @cached_property
    def theta_data(self):
        A, H, K = self.A, self.H, self.K
        chars = groups.quotient_characters(A, self.C_gens)
        korbs = groups.orbits(lambda k, psi: self.conj(k, psi), K.elements, chars, check=False)
        theta = [o.rep for o in korbs]
        kset = set(K.elements)
        H_theta, K_theta, horbits = [], [], []
        for th in theta:
            stab, orb = [], set()
            for h in H.elements:
                psi = self.conj(h, th)
                orb.add(psi)
                if psi == th:
                    stab.append(h)
            H_theta.append(stab)
            K_theta.append([h for h in stab if h in kset])
            horbits.append(frozenset(orb))
        classes, xi = [], []
        seen = {}
        for t, orb in enumerate(horbits):
            if orb in seen:
                classes[seen[orb]].append(t)
            else:
                seen[orb] = len(classes)
                classes.append([t])
                xi.append(t)
        data = ThetaData(theta, K_theta, H_theta, classes, xi, all(len(c) == 1 for c in classes), [])
        self._theta = data
        data.small_commutative = [self.small_pair(t).scheme.commutative for t in range(len(theta))]
        return data

    def small_pair(self, t):
        cache = self.__dict__.setdefault("_small", {})
        if t not in cache:
            td = self._theta if hasattr(self, "_theta") else self.theta_data
            cache[t] = SmallPair(self, td.H_theta[t], td.K_theta[t])
        return cache[t]

    def gelfand_certificate(self):
        sch = self.scheme
        td = self.theta_data
        cert = {
            "commutative": sch.commutative,
            "symmetric": self.is_symmetric_pair(),
            "condition_i": td.xi_equals_theta,
            "condition_ii": all(td.small_commutative),
        }
        cert["consistent"] = (cert["commutative"] == (cert["condition_i"] and cert["condition_ii"])
                              and (not cert["symmetric"] or cert["commutative"]))
        cert["double_cosets"] = len(self.orbit_table.reps)
        return cert

    def is_symmetric_pair(self):
        R = self.relation_matrix
        return bool((R == R.T).all())

    # ---------------------------------------------------------- Gamma and Lambda

    @cached_property
    def gamma(self):
        """Gamma: list of (z, chi, |K_z|, |K_chi|, orbit map chi -> (rep, k))."""
        reps, _, _ = self.K_orbits_Y
        out = []
        self._gamma_lookup = {}
        for zi in reps:
            Kz = self.stabilizer_in_K(zi)
            h = self.transversal[zi]
            gens = self.C_gens + [self.act_A(h, c) for c in self.C_gens]
            chars = groups.quotient_characters(self.A, gens)
            lookup = {}
            for o in groups.orbits(lambda k, psi: self.conj(k, psi), Kz, chars, check=False):
                idx = len(out)
                out.append(GammaEntry(zi, o.rep, len(Kz), len(o.stabilizer), tuple(Kz)))
                for k in Kz:
                    psi = self.conj(k, o.rep)
                    lookup.setdefault(psi, (idx, k))
            self._gamma_lookup[zi] = lookup
        return out

    def gamma_lookup(self, zi, psi):
        self.gamma
        return self._gamma_lookup[zi][psi]

    def lambda_at(self, g, x):
        """Lambda_{z,chi} at an orbit representative (z', d)."""
        zi, d = x
        if zi != g.z:
            return Cyclotomic(0, self.A.exponent)
        s = groups.character_sum((g.chi, self.act_A(k, d)) for k in g.Kz)
        return s / g.Kz_order

    def lambda_function(self, g):
        """Lambda_{z,chi} on all of X as a list aligned with self.X."""
        N = self.A.exponent
        counts = {}
        for k in self.K.elements:
            y = self.hy(k, g.z)
            ki = self.H.inv(k)
            for b in self.B_reps(y):
                e = g.chi.exponent_at(self.act_A(ki, b))
                counts.setdefault((y, b), {}).setdefault(e, 0)
                counts[(y, b)][e] += 1
        out = []
        for x in self.X:
            c = counts.get(x)
            out.append(cyclotomic_reduce(c, N) / g.Kz_order if c else Cyclotomic(0, N))
        return out

    def chi_sharp(self, psi, yi):
        """chi# for a character of B_y given as a character of A trivial on C_y."""
        N = self.A.exponent
        return [Cyclotomic.root(N, psi.exponent_at(b)) if y == yi else Cyclotomic(0, N)
                for y, b in self.X]

    def act_function(self, h, a, f):
        """[(h, a) f](x) = f((h, a)^-1 x)."""
        hi = self.H.inv(h)
        ai = self.A.neg(self.act_A(hi, a))
        return [f[self.x_index[self.act_X(hi, ai, x)]] for x in self.X]

    # ---------------------------------------------------------- spherical functions

    def _orders(self):
        N = self.A.exponent
        return [N, math.lcm(N, self.H.exponent())]

    def spherical_by_diagonalization(self, seed=0):
        sch = self.scheme
        if not sch.commutative:
            raise NotMultiplicityFree("relation algebra is not commutative")
        rows = sch.spherical_rows(self._orders, seed)
        return make_table(rows, self.orbit_table.labels, sch.weights,
                          {"commutative": True, "symmetric": self.is_symmetric_pair()})

    def formula_context(self, t):
        """Gamma_theta with witnesses (k, h0) and the small-pair table for theta t."""
        cache = self.__dict__.setdefault("_formula", {})
        if t in cache:
            return cache[t]
        td = self.theta_data
        th = td.theta[t]
        _, rep_of, to_rep = self.K_orbits_Y
        members, every = {}, {}
        for h0 in td.H_theta[t]:
            y = self.hy(h0, self.y0i)
            z = rep_of[y]
            k_y = to_rep[y]
            psi = self.conj(k_y, self.conj(h0, th))
            try:
                gi, kprime = self.gamma_lookup(z, psi)
            except KeyError:
                raise NoWitness(f"no Gamma element over z={z} for theta {t}") from None
            k = self.H.mul(self.H.inv(kprime), k_y)
            every.setdefault(z, []).append((k, h0))
            if z in members:
                if members[z][0] != gi:
                    raise NoWitness("two Gamma_theta elements share a base point")
                continue
            members[z] = (gi, k, h0)
        pair = self.small_pair(t)
        cache[t] = (members, pair)
        self.__dict__.setdefault("_witnesses", {})[t] = every
        return cache[t]

    def witnesses(self, t):
        """All (k, h0) pairs found for Gamma_theta, grouped by base point z."""
        self.formula_context(t)
        return self._witnesses[t]

    def spherical_by_formula(self, t, j, seed=0):
        td = self.theta_data
        if not td.xi_equals_theta:
            raise XiNeTheta("condition (i) fails: Xi is a proper subset of Theta")
        members, pair = self.formula_context(t)
        small_rows = pair.table(self._orders, seed).values
        row_phi = small_rows[j]
        ot = self.orbit_table
        Kt = len(td.K_theta[t])
        out = []
        for r in ot.reps:
            zi, d = self.X[r]
            if zi not in members:
                out.append(Cyclotomic(0, 1))
                continue
            gi, _, h0 = members[zi]
            g = self.gamma[gi]
            phi = row_phi[pair.label_of(h0)]
            s = groups.character_sum((g.chi, self.act_A(k, d)) for k in g.Kz)
            out.append(s * phi * Fraction(Kt, len(self.K) * g.Kchi_order))
        return out

    def spherical_formula_table(self, seed=0):
        td = self.theta_data
        rows, labels = [], []
        for t in range(len(td.theta)):
            _, pair = self.formula_context(t)
            for j in range(len(pair.table(self._orders, seed).values)):
                rows.append(self.spherical_by_formula(t, j, seed))
                labels.append(f"theta{t}.{j}")
        return make_table(rows, self.orbit_table.labels, self.scheme.weights,
                          {"commutative": True, "symmetric": self.is_symmetric_pair()},
                          labels=labels, sort=True)


@dataclass
class GammaEntry:
    z: int
    chi: AbelianCharacter
    Kz_order: int
    Kchi_order: int
    Kz: tuple

    def norm_squared(self, inst):
        """|K_chi| |B| |K| / |K_z|^2."""
        return Fraction(self.Kchi_order * inst.B_order * len(inst.K), self.Kz_order**2)


class SmallPair:
    """(H_theta, K_theta) acting on the orbit H_theta y0 inside Y."""

    def __init__(self, inst, H_elems, K_elems):
        self.inst = inst
        self.H_elems = list(H_elems)
        self.K_elems = list(K_elems)
        trans = {}
        for h in self.H_elems:
            trans.setdefault(inst.hy(h, inst.y0i), h)
        self.points = sorted(trans)
        self.trans = trans
        self.pidx = {p: i for i, p in enumerate(self.points)}
        orbit_of = {}
        reps, sizes = [], []
        for p in self.points:
            if p in orbit_of:
                continue
            orb = {inst.hy(k, p) for k in self.K_elems}
            for o in orb:
                orbit_of[o] = len(reps)
            reps.append(p)
            sizes.append(len(orb))
        self.orbit_of = orbit_of
        self.reps = reps
        H = inst.H
        n = len(self.points)
        R = np.zeros((n, n), dtype=np.int64)
        for i, p in enumerate(self.points):
            hi = H.inv(trans[p])
            for j, p2 in enumerate(self.points):
                R[i, j] = orbit_of[inst.hy(hi, p2)]
        self.R = R
        base = orbit_of[inst.y0i]
        x0 = self.pidx[inst.y0i]
        self.scheme = RelationScheme.from_rows(len(reps), R[x0], [R[:, self.pidx[r]] for r in reps],
                                               base, sizes)
        self._table = None

    def label_of(self, h):
        return self.orbit_of[self.inst.hy(h, self.inst.y0i)]

    def table(self, orders, seed=0):
        if self._table is None:
            if not self.scheme.commutative:
                raise NotMultiplicityFree("small pair is not a Gelfand pair")
            rows = self.scheme.spherical_rows(orders if callable(orders) else (lambda: orders), seed)
            self._table = make_table(rows, [f"k{i}" for i in range(len(self.reps))],
                                     self.scheme.weights, {"commutative": True})
        return self._table


# ---------------------------------------------------------------- relation schemes

class RelationScheme:
    """Intersection numbers p^k_{ij} of a partition of X x X into relations."""

    def __init__(self, P, base, weights):
        self.P = P
        self.base = base
        self.weights = list(weights)

    @classmethod
    def from_rows(cls, r, base_row, rep_cols, base, weights):
        """``base_row[z]`` = relation of (x0, z); ``rep_cols[k][z]`` = relation of (z, x_k)."""
        P = np.zeros((r, r, r), dtype=np.int64)
        base_row = np.asarray(base_row)
        for k, col in enumerate(rep_cols):
            np.add.at(P[:, :, k], (base_row, np.asarray(col)), 1)
        return cls(P, base, weights)

    @property
    def rank(self):
        return self.P.shape[0]

    @property
    def commutative(self):
        return bool((self.P == self.P.transpose(1, 0, 2)).all())

    def L(self, i):
        """(L_i)_{jk} = p^k_{ij}."""
        return self.P[i]

    def spherical_rows(self, orders, seed=0):
        """Spherical functions phi_e(j) = P_e(j) / k_j as exact row vectors."""
        orders = orders() if callable(orders) else orders
        r = self.rank
        last = None
        for attempt in range(MAX_RETRIES + 1):
            prec = PRECISION_BITS * 2**attempt
            rng = random.Random(seed + 1000 * attempt)
            try:
                theta = self._eigen_pass(rng, prec)
            except NotMultiplicityFree as e:
                last = e
                continue
            for N in orders:
                try:
                    rows = [[reconstruct_value(v, N, 1, prec) for v in vec] for vec in theta]
                except NoReconstruction as e:
                    last = e
                    continue
                if self._verify(rows):
                    return [[rows_v / self.weights[j] for j, rows_v in enumerate(row)] for row in rows]
                last = ReconstructionFailed("reconstructed rows are not exact eigenvectors")
        raise ReconstructionFailed(str(last))

    def _eigen_pass(self, rng, prec):
        r = self.rank
        # small integer weights can make two characters collide; redraw then
        for _ in range(MAX_DRAWS):
            coeffs = [rng.randint(1, 16) for _ in range(r)]
            M = np.tensordot(np.array(coeffs, dtype=np.int64), self.P, axes=1)
            ev = np.linalg.eigvals(M.astype(float))
            gaps = np.abs(ev[:, None] - ev[None, :]) + np.eye(r) * 1e9
            if r < 2 or gaps.min() > 1e-6 * max(1.0, np.abs(ev).max()):
                break
        else:
            raise NotMultiplicityFree("eigenvalues not separated")
        with mpmath.workprec(prec):
            E, ER = mpmath.eig(mpmath.matrix(M.tolist()))
            out = []
            for t in range(r):
                v = [ER[a, t] for a in range(r)]
                if abs(v[self.base]) < mpmath.mpf(2) ** -60:
                    raise NotMultiplicityFree("eigenvector vanishes at the base relation")
                out.append([x / v[self.base] for x in v])
            return out

    def _verify(self, rows):
        # a row theta is a character of the algebra: sum_k p^k_ij theta_k = theta_i theta_j
        r = self.rank
        for th in rows:
            if th[self.base] != 1:
                return False
            for i in range(r):
                for j in range(r):
                    lhs = Cyclotomic(0, th[0].order)
                    for k in range(r):
                        c = int(self.P[i, j, k])
                        if c:
                            lhs = lhs + th[k] * c
                    if lhs != th[i] * th[j]:
                        return False
        return len({tuple(map(str, th)) for th in rows}) == len(rows)


# ---------------------------------------------------------------- tables

@dataclass
class SphericalTable:
    components: list
    orbits: list
    values: list          # values[c][o], exact
    weights: list
    norms: list
    flags: dict
    dims: list = None

    def to_dict(self):
        return {
            "components": [
                {"label": lab, "norm": to_text(nm),
                 "values": {o: to_text(v) for o, v in zip(self.orbits, row)}}
                | ({"dim": to_text(self.dims[i])} if self.dims else {})
                for i, (lab, nm, row) in enumerate(zip(self.components, self.norms, self.values))
            ],
            "weights": {o: int(w) for o, w in zip(self.orbits, self.weights)},
            "flags": dict(self.flags),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["component", "orbit", "value", "weight", "norm"])
        for lab, nm, row in zip(self.components, self.norms, self.values):
            for o, wt, v in zip(self.orbits, self.weights, row):
                w.writerow([lab, o, to_text(v), int(wt), to_text(nm)])
        return buf.getvalue()


def _as_cyc(v):
    return v if isinstance(v, Cyclotomic) else Cyclotomic(Fraction(v), 1)


def row_key(row, L=None):
    """Exact key of a row: coefficient vectors after lifting to a common order L."""
    cyc = [_as_cyc(v) for v in row]
    if L is None:
        L = math.lcm(*(c.order for c in cyc)) if cyc else 1
    return tuple(c.lift(L).coeffs for c in cyc)


def same_row_sets(rows1, rows2):
    """True when two families of exact rows coincide as sets."""
    orders = [_as_cyc(v).order for row in list(rows1) + list(rows2) for v in row]
    L = math.lcm(*orders) if orders else 1
    return sorted(row_key(r, L) for r in rows1) == sorted(row_key(r, L) for r in rows2)


def inner(u, v, weights):
    tot = Cyclotomic(0, 1)
    for a, b, w in zip(u, v, weights):
        tot = tot + _as_cyc(a) * _as_cyc(b).conj() * int(w)
    return tot


def _sort_key(row):
    return tuple((-round(complex(_as_cyc(v)).real, 12), -round(complex(_as_cyc(v)).imag, 12))
                 for v in row)


def make_table(rows, orbit_labels, weights, flags, labels=None, sort=True):
    if sort:
        order = sorted(range(len(rows)), key=lambda i: _sort_key(rows[i]))
        rows = [rows[i] for i in order]
        if labels is not None:
            labels = [labels[i] for i in order]
    if labels is None:
        labels = [f"c{i}" for i in range(len(rows))]
    norms = []
    for row in rows:
        n = inner(row, row, weights)
        r = n.rational_or_none()
        norms.append(r if r is not None else n)
    total = sum(weights)
    dims = [Fraction(total) / n for n in norms]
    return SphericalTable(labels, list(orbit_labels), rows, list(weights), norms, flags, dims)


def verify_orthogonality(table, symmetric=None):
    """Exact orthogonality report; the first failing pair is returned with its residual."""
    w = table.weights
    rep = {"ok": True, "failures": [], "sum_dims": None}
    for a in range(len(table.values)):
        for b in range(a, len(table.values)):
            val = inner(table.values[a], table.values[b], w)
            expect = table.norms[a] if a == b else 0
            if val != expect:
                rep["ok"] = False
                rep["failures"].append((table.components[a], table.components[b], to_text(val - expect)))
                return rep
    total = sum(w)
    dims = [Fraction(total) / (n if isinstance(n, Fraction) else n.rational_or_none()) for n in table.norms]
    rep["sum_dims"] = sum(dims)
    if rep["sum_dims"] != total:
        rep["ok"] = False
        rep["failures"].append(("sum of dims", to_text(rep["sum_dims"]), to_text(total)))
    if symmetric:
        for row in table.values:
            for v in row:
                if _as_cyc(v).rational_or_none() is None:
                    rep["ok"] = False
                    rep["failures"].append(("irrational value", to_text(v)))
                    return rep
    return rep


def same_rows(t1, t2):
    """True when two tables over the same orbit order have the same set of rows."""
    return same_row_sets(t1.values, t2.values)


# ---------------------------------------------------------------- operations

def build_space(inst):
    """The point set X, after checking |X| and the base-point stabilizer."""
    expected = len(inst.H) * inst.A.order // (len(inst.K) * len(inst.C))
    if len(inst.X) != expected:
        raise InstanceError(f"|X| = {len(inst.X)} but |H||A|/|K||C| = {expected}")
    inst.verify_stabilizer()
    return inst.X


def orbit_table(inst):
    ot = inst.orbit_table
    if sum(ot.sizes) != len(inst.X) or ot.sizes != ot.formula_sizes:
        raise InstanceError("orbit sizes disagree with the stabilizer count")
    return ot


def is_symmetric_pair(inst):
    return inst.is_symmetric_pair()


def intersection_numbers(inst):
    return inst.scheme.P


def chi_sharp(inst, psi, yi):
    return inst.chi_sharp(psi, yi)


def lambda_basis(inst):
    """[(Gamma entry, values on the orbit representatives)] for the Lambda basis."""
    return [(g, [inst.lambda_at(g, inst.X[r]) for r in inst.orbit_table.reps]) for g in inst.gamma]


def theta_analysis(inst):
    return inst.theta_data


def gelfand_certificate(inst):
    return inst.gelfand_certificate()


def spherical_by_diagonalization(inst, seed=0):
    return inst.spherical_by_diagonalization(seed)


def spherical_by_formula(inst, theta, j, seed=0):
    return inst.spherical_by_formula(theta, j, seed)


# ---------------------------------------------------------------- wreath products

def build_wreath_instance(blocks, D, variant="zero-sum"):
    """Sym(Z) acting on D^Z, with K the Young subgroup of the given blocks."""
    blocks = [list(b) for b in blocks]
    points = sorted(x for b in blocks for x in b)
    if len(points) != len(set(points)):
        raise InstanceError("blocks overlap")
    Dfac = [D] if isinstance(D, int) else list(D)
    n = len(points)
    if n > 6 or math.prod(Dfac) > 4:
        raise InstanceError("desk bounds exceeded: |Z| <= 6, |D| <= 4")
    pos = {x: i for i, x in enumerate(points)}
    nb = [[pos[x] for x in b] for b in blocks]
    t = len(Dfac)
    A = AbelianGroup(Dfac * n)

    def aut(g):
        # (g f)(z) = f(g^-1 z): e_{z,s} -> e_{g(z),s}
        rows = []
        for z in range(n):
            for s in range(t):
                img = [0] * (n * t)
                img[g[z] * t + s] = 1
                rows.append(tuple(img))
        return tuple(rows)

    H = FiniteGroup(groups.symmetric_group(n).elements, groups.compose, groups.perm_inverse,
                    tuple(range(n)), aut=aut, name=f"S{n}")

    def act(g, y):
        return tuple(tuple(sorted(g[x] for x in blk)) for blk in y)

    y0 = tuple(tuple(sorted(b)) for b in nb)
    Y = sorted({act(g, y0) for g in H.elements})
    C = []
    for blk in nb:
        for s in range(t):
            if variant == "zero-sum":
                for a, b in zip(blk, blk[1:]):
                    v = [0] * (n * t)
                    v[a * t + s] = 1
                    v[b * t + s] = Dfac[s] - 1
                    C.append(tuple(v))
            elif variant == "constant-on-orbits":
                v = [0] * (n * t)
                for a in blk:
                    v[a * t + s] = 1
                C.append(tuple(v))
            else:
                raise InstanceError(f"unknown C variant {variant!r}")
    name = f"wreath {'|'.join(','.join(map(str, b)) for b in blocks)} D={Dfac} {variant}"
    return GelfandInstance(H, A, Y, act, y0, C, name=name)


# ---------------------------------------------------------------- JSON ingestion

def instance_from_json(doc):
    """Build an instance from the JSON description.

    Keys: "A" (invariant factors), "H" ({"generators": [{"perm", "aut", "y"}]}),
    "Y" (labels, optional: defaults to 0..len-1 from the y-permutations),
    "y0" (index into Y), "C" (generators of C as residue vectors).
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    A = AbelianGroup(doc["A"])
    gens = doc["H"]["generators"]
    if not gens:
        raise InstanceError("H needs at least one generator")
    ny = len(gens[0]["y"])
    Y = list(range(ny))
    labels = doc.get("Y", Y)
    if len(labels) != ny:
        raise InstanceError("Y labels do not match the y-permutations")
    for g in gens:
        for row in g["aut"]:
            if len(row) != A.rank:
                raise InstanceError("aut matrix has the wrong shape")
        if len(g["aut"]) != A.rank:
            raise InstanceError("aut matrix has the wrong shape")
        for j, row in enumerate(g["aut"]):
            if any((A.factors[j] * x) % d for x, d in zip(row, A.factors)):
                raise InstanceError("aut image has the wrong order")

    def mul(g, h):
        p = groups.compose(g[0], h[0])
        y = groups.compose(g[2], h[2])
        # aut(gh) = aut(g) after aut(h): rows are images of generators
        aut = tuple(A.apply(g[1], row) for row in h[1])
        return (p, aut, y)

    gen_elems = [(tuple(g["perm"]), tuple(tuple(r) for r in g["aut"]), tuple(g["y"])) for g in gens]
    deg = len(gen_elems[0][0])
    ident = (tuple(range(deg)), tuple(A.generators()), tuple(range(ny)))
    H = FiniteGroup.generate(gen_elems, mul, ident, name="H")
    seen = {}
    for h in H.elements:
        if seen.setdefault(h[0], h) != h:
            raise InstanceError("aut or Y data is not a function of the permutation")
    H._aut = lambda h: h[1]
    y0 = doc.get("y0", 0)
    inst = GelfandInstance(H, A, Y, lambda h, y: h[2][y], y0, [tuple(c) for c in doc["C"]],
                           name=doc.get("name", "json instance"))
    inst.y_labels = labels
    return inst
