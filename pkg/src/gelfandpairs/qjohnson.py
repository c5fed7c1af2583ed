"""The q-analog of the nonbinary Johnson scheme.

V = F_q^n = V0 + V1 with V0 the first m coordinates. Points of X are triples
(U0, U1, Psi) with U0 an r-space of V0, U1 an s-space of V1 and
Psi in Hom(U1, V0/U0), the quotient realized through complement(U0). The
base point is (W0, W1, 0) with W0, W1 the leading coordinate subspaces.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
import sympy

from . import ffld, gelfand, groups
from .exactnum import Cyclotomic, cyclotomic_reduce
from .ffld import Subspace
from .qfunc import count_hom_rank, gauss_binom, qjohnson_phi, qkrawtchouk

ENGINE_BOUND = 10**6


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class QJParams:
    q: int
    n: int
    m: int
    r: int
    s: int

    def __post_init__(self):
        ffld.prime_power(self.q)
        if not (0 <= self.m <= self.n and 0 <= self.r <= self.m and 0 <= self.s <= self.n - self.m):
            raise ParameterError(f"need 0 <= m <= n, 0 <= r <= m, 0 <= s <= n-m: {self}")

    @property
    def k1(self):
        return self.n - self.m

    @property
    def W0(self):
        return Subspace.coordinate(range(self.r), self.m, self.q)

    @property
    def W1(self):
        return Subspace.coordinate(range(self.s), self.k1, self.q)

    @property
    def X_size(self):
        q = self.q
        return gauss_binom(self.m, self.r, q) * gauss_binom(self.k1, self.s, q) * q ** (self.s * (self.m - self.r))

    @property
    def base(self):
        return TriplePoint(self.W0, self.W1, ((0,) * (self.m - self.r),) * self.s)

    def as_tuple(self):
        return (self.q, self.n, self.m, self.r, self.s)


@dataclass(frozen=True)
class TriplePoint:
    """(U0, U1, Psi); Psi[t] holds complement(U0)-coordinates of Psi(U1.basis[t])."""

    U0: Subspace
    U1: Subspace
    Psi: tuple

    def sort_key(self):
        return (self.U0.basis, self.U1.basis, self.Psi)

    def to_json(self):
        return {"U0": self.U0.to_json(), "U1": self.U1.to_json(), "Psi": [list(r) for r in self.Psi]}

    def label(self):
        return f"{self.U0.to_json()}|{self.U1.to_json()}|{[list(r) for r in self.Psi]}"


def psi_apply(x, u1):
    """Psi(u1) as a vector of complement(U0) inside V0."""
    c = x.U1.coords(u1)
    F = ffld.get_field(x.U0.q)
    out = [0] * x.U0.n
    for ct, row in zip(c, x.Psi):
        if ct:
            v = x.U0.lift_coords(row)
            out = [F.add(a, F.mul(ct, b)) for a, b in zip(out, v)]
    return tuple(out)


# ---------------------------------------------------------------- subspaces of V

def to_triple(U, params):
    """Subspace of F_q^n -> (U cap V0, projection to V1, Psi)."""
    m, k1, q = params.m, params.k1, params.q
    # reorder columns V1 first so that the echelon rows split cleanly
    perm = [U_row[m:] + U_row[:m] for U_row in U.basis]
    R, rk, piv = ffld.rref(perm, q, params.n) if perm else ((), 0, ())
    top = [R[t] for t in range(rk) if piv[t] < k1]
    low = [R[t] for t in range(rk) if piv[t] >= k1]
    U0 = Subspace.from_vectors([row[k1:] for row in low], m, q)
    U1 = Subspace(tuple(row[:k1] for row in top), k1, q, tuple(piv[t] for t in range(rk) if piv[t] < k1))
    Psi = tuple(U0.quotient_coords(row[k1:]) for row in top)
    return TriplePoint(U0, U1, Psi)


def from_triple(x, params):
    m, k1, q = params.m, params.k1, params.q
    vecs = [tuple(b) + (0,) * k1 for b in x.U0.basis]
    for u1, c in zip(x.U1.basis, x.Psi):
        vecs.append(tuple(x.U0.lift_coords(c)) + tuple(u1))
    return Subspace.from_vectors(vecs, params.n, q)


def block_matrix(g0, g1, T, params):
    """The matrix [[g0, T g1], [0, g1]] of (g0, g1, T) on V."""
    m, k1, q = params.m, params.k1, params.q
    Tg1 = ffld.mat_mul(T, g1, q) if m and k1 else ((),) * m
    rows = []
    for i in range(m):
        rows.append(tuple(g0[i]) + tuple(Tg1[i]))
    for i in range(k1):
        rows.append((0,) * m + tuple(g1[i]))
    return tuple(rows)


def act_subspace(g0, g1, T, U, params):
    return U.image(block_matrix(g0, g1, T, params))


def act_triple(g0, g1, T, x, params):
    """(g0, g1, T)(U0, U1, Psi) = (g0 U0, g1 U1, g0 Psi g1^-1 + T) modulo g0 U0."""
    q = params.q
    U0n = x.U0.image(g0)
    U1n = x.U1.image(g1)
    g1i = ffld.inverse(g1, q) if params.k1 else g1
    F = ffld.get_field(q)
    Psi = []
    for b in U1n.basis:
        u1 = ffld.mat_vec(g1i, b, q)
        v0 = ffld.mat_vec(g0, psi_apply(x, u1), q) if params.m else ()
        if params.m:
            v0 = tuple(F.add(a, c) for a, c in zip(v0, ffld.mat_vec(T, b, q)))
        Psi.append(U0n.quotient_coords(v0))
    return TriplePoint(U0n, U1n, tuple(Psi))


def delta(x, y, params):
    """(dim(U0 cap U0'), dim(U1 cap U1'), dim(Psi cap Psi'))."""
    h = x.U0.intersect(y.U0).dim
    I = x.U1.intersect(y.U1)
    S = x.U0.sum(y.U0)
    rows = []
    for w in I.basis:
        diff = ffld.vec_sub(psi_apply(x, w), psi_apply(y, w), params.q)
        rows.append(S.quotient_coords(diff))
    rk = ffld.rank(rows, params.q) if rows and rows[0] else 0
    return (h, I.dim, I.dim - rk)


def enumerate_X(params):
    q, m = params.q, params.m
    out = []
    for U0 in ffld.enumerate_subspaces(m, params.r, q):
        for U1 in ffld.enumerate_subspaces(params.k1, params.s, q):
            for M in ffld.all_matrices(params.s, m - params.r, q):
                out.append(TriplePoint(U0, U1, M))
    return out


# ---------------------------------------------------------------- orbits

def orbit_parameters(params):
    """Realizable (h, i, j) in lexicographic order."""
    m, r, s, k1 = params.m, params.r, params.s, params.k1
    out = []
    for h in range(max(2 * r - m, 0), r + 1):
        for i in range(max(2 * s - k1, 0), s + 1):
            for j in range(max(0, i - (m - 2 * r + h)), i + 1):
                out.append((h, i, j))
    return out


def gamma_theta(ell, params):
    """(h, i) pairs carrying the ell-th component."""
    m, r, s, k1 = params.m, params.r, params.s, params.k1
    return [(h, i) for h in range(max(2 * r - m + ell, 0), r + 1)
            for i in range(max(2 * s - k1, ell), s + 1)]


def orbit_representative(h, i, j, params):
    m, r, s, k1, q = params.m, params.r, params.s, params.k1, params.q
    if (h, i, j) not in orbit_parameters(params):
        raise ParameterError(f"({h},{i},{j}) is not a realizable orbit")
    U0 = Subspace.coordinate(list(range(h)) + list(range(r, 2 * r - h)), m, q)
    U1 = Subspace.coordinate(list(range(i)) + list(range(s, 2 * s - i)), k1, q)
    Psi = []
    for t in range(s):
        v = [0] * m
        if t < i - j:
            v[2 * r - h + t] = 1
        Psi.append(U0.quotient_coords(v))
    return TriplePoint(U0, U1, tuple(Psi))


def orbit_size_gamma(h, i, j, params):
    """|(K x| C)-orbit| of the (h, i, j) representative.

    The count of Psi_01 uses rank i - j (kernel dimension j).
    """
    if (h, i, j) not in orbit_parameters(params):
        raise ParameterError(f"({h},{i},{j}) is not a realizable orbit")
    q, m, r, s, k1 = params.q, params.m, params.r, params.s, params.k1
    ky = (gauss_binom(r, h, q) * gauss_binom(m - r, r - h, q) * q ** ((r - h) ** 2)
          * gauss_binom(s, i, q) * gauss_binom(k1 - s, s - i, q) * q ** ((s - i) ** 2))
    return ky * q ** (i * (r - h)) * q ** ((s - i) * (m - r)) * count_hom_rank(i - j, i, m - 2 * r + h, q)


def gamma_kernel_index(h, i, j, params):
    """The same product with the kernel index j in the rank count (regression record)."""
    q, m, r = params.q, params.m, params.r
    base = orbit_size_gamma(h, i, j, params) // count_hom_rank(i - j, i, m - 2 * r + h, q)
    return base * count_hom_rank(j, i, m - 2 * r + h, q)


def components(params):
    m, r, s, k1 = params.m, params.r, params.s, params.k1
    out = []
    for ell in range(min(m - r, s) + 1):
        for u in range(min(r, m - ell - r) + 1):
            for v in range(min(s - ell, k1 - s) + 1):
                out.append((u, v, ell))
    return out


def _check_component(u, v, ell, params):
    if (u, v, ell) not in components(params):
        raise ParameterError(f"({u},{v},{ell}) is not a component for {params}")


def lambda_qj(h, i, ell, at, params):
    """Intermediate basis element Lambda(h, i, ell) at the representative ``at``."""
    q, m, r = params.q, params.m, params.r
    a = m - 2 * r + h
    if not 0 <= ell <= min(i, a):
        raise ParameterError("ell out of range for (h, i)")
    h2, i2, j = at
    if (h2, i2) != (h, i):
        return Fraction(0)
    return qkrawtchouk(ell, i - j, a, i, q) / count_hom_rank(ell, a, i, q)


def phi_qj(u, v, ell, at, params):
    """Closed-form spherical function Phi_{u,v,ell}(h, i, j)."""
    _check_component(u, v, ell, params)
    q, m, r, s, k1 = params.q, params.m, params.r, params.s, params.k1
    h, i, j = at
    if (h, i, j) not in orbit_parameters(params):
        raise ParameterError(f"({h},{i},{j}) is not a realizable orbit")
    if h < max(2 * r - m + ell, 0) or i < max(2 * s - k1, ell):
        return Fraction(0)
    f0 = qjohnson_phi(m - ell, r, u, h, q)
    f1 = qjohnson_phi(k1 - ell, s - ell, v, i - ell, q)
    kr = qkrawtchouk(ell, i - j, m - 2 * r + h, i, q)
    return f0 * f1 * kr / count_hom_rank(ell, m - r, s, q)


def _sigma_dim(N, u, q):
    other = u - 1 if 2 * u <= N else u + 1
    return gauss_binom(N, u, q) - gauss_binom(N, other, q)


def dim_component(u, v, ell, params):
    _check_component(u, v, ell, params)
    q, m, k1 = params.q, params.m, params.k1
    return count_hom_rank(ell, m, k1, q) * _sigma_dim(m - ell, u, q) * _sigma_dim(k1 - ell, v, q)


def beta_norm(u, v, ell, params):
    """Squared norm of Phi_{u,v,ell} under the orbit weights gamma."""
    q, m, k1 = params.q, params.m, params.k1
    _check_component(u, v, ell, params)
    den = (count_hom_rank(ell, m, k1, q) * (gauss_binom(m - ell, u, q) - gauss_binom(m - ell, u - 1, q))
           * (gauss_binom(k1 - ell, v, q) - gauss_binom(k1 - ell, v - 1, q)))
    return Fraction(params.X_size, den)


def orbit_label(t):
    return "({},{},{})".format(*t)


def component_label(c):
    return "({},{},{})".format(*c)


def spherical_table_qj(params):
    orbs = orbit_parameters(params)
    comps = components(params)
    rows = [[phi_qj(*c, t, params) for t in orbs] for c in comps]
    weights = [orbit_size_gamma(*t, params) for t in orbs]
    table = gelfand.SphericalTable(
        [component_label(c) for c in comps], [orbit_label(t) for t in orbs], rows, weights,
        [beta_norm(*c, params) for c in comps], {"commutative": True, "symmetric": True},
        [dim_component(*c, params) for c in comps])
    return table


def verify_orthogonality_qj(params):
    """Exact check of sum Phi Phi' gamma = delta beta and of the dimension mass."""
    orbs = orbit_parameters(params)
    comps = components(params)
    weights = [orbit_size_gamma(*t, params) for t in orbs]
    rows = {c: [phi_qj(*c, t, params) for t in orbs] for c in comps}
    report = {"ok": True, "failures": [], "mass": None}
    for a, b in itertools.combinations_with_replacement(comps, 2):
        val = sum(x * y * w for x, y, w in zip(rows[a], rows[b], weights))
        expect = beta_norm(*a, params) if a == b else 0
        if val != expect:
            report["ok"] = False
            report["failures"].append((component_label(a), component_label(b), str(val - expect)))
            return report
    dims = [dim_component(*c, params) for c in comps]
    report["mass"] = sum(dims)
    if sum(weights) != params.X_size or sum(dims) != params.X_size:
        report["ok"] = False
        report["failures"].append(("mass", sum(weights), sum(dims), params.X_size))
    for c, d in zip(comps, dims):
        if beta_norm(*c, params) * d != params.X_size:
            report["ok"] = False
            report["failures"].append(("beta*dim", component_label(c)))
    return report


# ---------------------------------------------------------------- Grassmannian oracle

@lru_cache(maxsize=None)
def grassmannian(n, k, q):
    return tuple(ffld.enumerate_subspaces(n, k, q))


def grassmann_scheme(n, m, q):
    """Distance scheme on G(n, m); relation index m - dim(X cap Y).

    Returns (scheme, w-values of the relations), w = dim(X cap V0).
    """
    pts = grassmannian(n, m, q)
    V0 = Subspace.coordinate(range(m), n, q)
    dmax = min(m, n - m)
    reps = []
    for d in range(dmax + 1):
        reps.append(Subspace.coordinate(list(range(m - d)) + list(range(m, m + d)), n, q))

    def dist(a, b):
        return m - a.intersect(b).dim

    base_row = [dist(V0, p) for p in pts]
    cols = [[dist(p, rep) for p in pts] for rep in reps]
    weights = [base_row.count(d) for d in range(dmax + 1)]
    scheme = gelfand.RelationScheme.from_rows(dmax + 1, base_row, cols, 0, weights)
    return scheme, [m - d for d in range(dmax + 1)]


def grassmann_table(n, m, q, seed=0):
    """Spherical functions of G(n, m) by exact-verified diagonalization."""
    scheme, ws = grassmann_scheme(n, m, q)
    p = ffld.prime_power(q)[0]
    rows = scheme.spherical_rows([1, p], seed)
    return gelfand.make_table(rows, [f"w={w}" for w in ws], scheme.weights, {"commutative": True,
                                                                              "symmetric": True}), ws


def qjohnson_rows(n, m, q, ws, conv=None):
    return [[qjohnson_phi(n, m, k, w, q, conv) for w in ws] for k in range(min(m, n - m) + 1)]


# ---------------------------------------------------------------- harmonics

def lowering_raising(n, k, q):
    """(d, d*) on L(G(n, k)): d into L(G(n, k-1)), d* into L(G(n, k+1)).

    Matrices are 0/1 incidences with rows indexed by the target Grassmannian;
    either is None where it is undefined.
    """
    src = grassmannian(n, k, q)
    d = ds = None
    if k >= 1:
        tgt = grassmannian(n, k - 1, q)
        d = np.array([[1 if U.is_subspace_of(X) else 0 for X in src] for U in tgt], dtype=np.int64)
    if k <= n - 1:
        tgt = grassmannian(n, k + 1, q)
        ds = np.array([[1 if Y.is_subspace_of(U) else 0 for Y in src] for U in tgt], dtype=np.int64)
    return d, ds


@lru_cache(maxsize=None)
def harmonic_space(N, k, u, q):
    """Basis (columns, exact rationals) of the u-th irreducible summand of L(G(N, k))."""
    if not 0 <= u <= min(k, N - k):
        raise ParameterError("u out of range")
    if 2 * k <= N:
        lvl = u
        d, _ = lowering_raising(N, lvl, q)
        size = len(grassmannian(N, lvl, q))
        ker = sympy.eye(size) if d is None else sympy.Matrix(d).nullspace()
        ker = [ker[:, t] for t in range(ker.shape[1])] if d is None else ker
        vecs = ker
        for step in range(lvl, k):
            _, ds = lowering_raising(N, step, q)
            M = sympy.Matrix(ds)
            vecs = [M * v for v in vecs]
    else:
        lvl = N - u
        _, ds = lowering_raising(N, lvl, q)
        size = len(grassmannian(N, lvl, q))
        ker = sympy.eye(size) if ds is None else sympy.Matrix(ds).nullspace()
        ker = [ker[:, t] for t in range(ker.shape[1])] if ds is None else ker
        vecs = ker
        for step in range(lvl, k, -1):
            d, _ = lowering_raising(N, step, q)
            M = sympy.Matrix(d)
            vecs = [M * v for v in vecs]
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in v) for v in vecs)


def _random_harmonic(N, k, u, q, rng):
    basis = harmonic_space(N, k, u, q)
    pts = grassmannian(N, k, q)
    while True:
        coeffs = [rng.randint(-4, 4) for _ in basis]
        vals = [sum((c * b[t] for c, b in zip(coeffs, basis)), Fraction(0)) for t in range(len(pts))]
        if any(vals):
            return dict(zip(pts, vals))


def chi_omega_exponent(S, x, params):
    """Tr_{F_q/F_p} of Tr[Omega_{U0,U1} Psi] for the operator S: V0 -> V1."""
    q = params.q
    F = ffld.get_field(q)
    tr = 0
    for t, row in enumerate(x.Psi):
        v = x.U0.lift_coords(row)
        w = ffld.mat_vec(S, v, q)
        tr = F.add(tr, x.U1.coords(w)[t])
    return F.trace(tr)


def in_D(S, U0, U1, params):
    """S kills U0 and maps into U1 (equivalently Tr[S T] = 0 for T in the C of (U0, U1))."""
    q = params.q
    if any(any(ffld.mat_vec(S, b, q)) for b in U0.basis):
        return False
    cols = ffld.transpose(S, params.m)
    return all(U1.contains(c) for c in cols)


def spherical_harmonic(u, v, ell, seed, params, points=None):
    """A vector of the (u, v, ell) isotypic component, as {TriplePoint: value}."""
    _check_component(u, v, ell, params)
    q, m, k1 = params.q, params.m, params.k1
    p = ffld.prime_power(q)[0]
    rng = random.Random(seed)
    choices = []
    for S in sorted(ffld.all_matrices(k1, m, q)):
        if ffld.rank(S, q) != ell:
            continue
        ker = Subspace(ffld.kernel(S, q, m), m, q)
        img = Subspace.from_vectors(ffld.transpose(S, m), k1, q)
        f0 = _random_harmonic(m - ell, params.r, u, q, rng)
        f1 = _random_harmonic(k1 - ell, params.s - ell, v, q, rng)
        choices.append((S, ker, img, f0, f1))
    points = enumerate_X(params) if points is None else points
    out = {}
    for x in points:
        counts = {}
        for S, ker, img, f0, f1 in choices:
            if not (x.U0.is_subspace_of(ker) and img.is_subspace_of(x.U1)):
                continue
            a = Subspace.from_vectors([ker.coords(b) for b in x.U0.basis], m - ell, q)
            b = Subspace.from_vectors([img.quotient_coords(w) for w in x.U1.basis], k1 - ell, q)
            val = f0[a] * f1[b]
            if val:
                e = chi_omega_exponent(S, x, params)
                counts[e] = counts.get(e, 0) + val
        out[x] = cyclotomic_reduce(counts, p) if counts else Cyclotomic(0, p)
    return out


def relation_labels(params, points=None):
    """delta(x, y) for all pairs, as a nested list aligned with ``points``."""
    points = enumerate_X(params) if points is None else points
    return [[delta(x, y, params) for y in points] for x in points]


def idempotent(u, v, ell, params, points=None, labels=None):
    """E = (dim / |X|) sum_rel Phi(rel) A_rel as an exact matrix over X."""
    points = enumerate_X(params) if points is None else points
    labels = relation_labels(params, points) if labels is None else labels
    c = Fraction(dim_component(u, v, ell, params), len(points))
    vals = {t: phi_qj(u, v, ell, t, params) for t in orbit_parameters(params)}
    return [[c * vals[t] for t in row] for row in labels]


def apply_matrix(E, f):
    out = []
    for row in E:
        acc = Cyclotomic(0, 1)
        for a, b in zip(row, f):
            if a and not b.is_zero():
                acc = acc + b * a
        out.append(acc)
    return out


def stabilizer_membership_HS(g0, g1, S, q):
    """g1 S g0^-1 = S."""
    return ffld.mat_mul(g1, S, q) == ffld.mat_mul(S, g0, q)


# ---------------------------------------------------------------- engine adapter

class Adapter:
    """The triple space presented to the generic engine."""

    def __init__(self, params):
        self.params = params
        q, m, k1 = params.q, params.m, params.k1
        p, e = ffld.prime_power(q)
        self.p, self.e = p, e
        H_order = ffld.gl_order(m, q) * ffld.gl_order(k1, q)
        A_order = q ** (m * k1)
        if H_order * A_order > ENGINE_BOUND:
            raise ParameterError(f"|H||A| = {H_order * A_order} exceeds the engine bound {ENGINE_BOUND}")
        F = ffld.get_field(q)
        self.F = F
        self.basis_elems = [F.from_digits([1 if t == s else 0 for t in range(e)]) for s in range(e)]
        A = groups.AbelianGroup([p] * (m * k1 * e))
        G0, G1 = ffld.general_linear(m, q), ffld.general_linear(k1, q)
        elems = [(a, b) for a in G0 for b in G1]

        def mul(x, y):
            return (ffld.mat_mul(x[0], y[0], q) if m else x[0], ffld.mat_mul(x[1], y[1], q) if k1 else x[1])

        def inv(x):
            return (ffld.inverse(x[0], q) if m else x[0], ffld.inverse(x[1], q) if k1 else x[1])

        def aut(h):
            g0, g1 = h
            g1i = ffld.inverse(g1, q)
            rows = []
            for i in range(m):
                for j in range(k1):
                    for s in range(e):
                        T = [[0] * k1 for _ in range(m)]
                        T[i][j] = self.basis_elems[s]
                        rows.append(self.flatten(ffld.mat_mul(ffld.mat_mul(g0, T, q), g1i, q)))
            return tuple(rows)

        ident = (ffld.identity(m), ffld.identity(k1))
        H = groups.FiniteGroup(elems, mul, inv, ident, aut=aut, name="GLxGL", verify=False)
        Y = [(U0, U1) for U0 in ffld.enumerate_subspaces(m, params.r, q)
             for U1 in ffld.enumerate_subspaces(k1, params.s, q)]

        def act(h, y):
            return (y[0].image(h[0]), y[1].image(h[1]))

        C = []
        for i in range(m):
            for j in range(k1):
                if i >= params.r and j < params.s:
                    continue
                for s in range(e):
                    T = [[0] * k1 for _ in range(m)]
                    T[i][j] = self.basis_elems[s]
                    C.append(self.flatten(T))
        self.instance = gelfand.GelfandInstance(H, A, Y, act, (params.W0, params.W1), C,
                                                name=f"q-johnson adapter {params.as_tuple()}")

    def flatten(self, T):
        out = []
        for row in T:
            for x in row:
                out.extend(self.F.digits(x))
        return tuple(out)

    def unflatten(self, a):
        m, k1, e = self.params.m, self.params.k1, self.e
        T = []
        for i in range(m):
            T.append(tuple(self.F.from_digits(a[(i * k1 + j) * e:(i * k1 + j + 1) * e]) for j in range(k1)))
        return tuple(T)

    def triple(self, x):
        """Engine point (y, b) -> TriplePoint with Psi = pi_{U0} T restricted to U1."""
        yi, b = x
        U0, U1 = self.instance.Y[yi]
        T = self.unflatten(b)
        Psi = tuple(U0.quotient_coords(ffld.mat_vec(T, u1, self.params.q)) for u1 in U1.basis)
        return TriplePoint(U0, U1, Psi)

    @cached_property
    def orbit_labels(self):
        """Engine orbit index -> (h, i, j)."""
        inst = self.instance
        base = self.params.base
        return [delta(self.triple(inst.X[r]), base, self.params) for r in inst.orbit_table.reps]

    def omega_of(self, chi):
        """Operator Omega: V0 -> V1 with chi(T) = tau(Tr[Omega T])."""
        return self._omega_table[chi.exponents]

    @cached_property
    def _omega_table(self):
        q, m, k1, e = self.params.q, self.params.m, self.params.k1, self.e
        F = self.F
        table = {}
        for Om in ffld.all_matrices(k1, m, q):
            ex = []
            for i in range(m):
                for j in range(k1):
                    for s in range(e):
                        ex.append(F.trace(F.mul(Om[j][i], self.basis_elems[s])) % self.p)
            table[tuple(ex)] = Om
        return table

    def table_in_labels(self, table):
        """Re-index an engine SphericalTable by (h, i, j) labels in orbit_parameters order."""
        labs = self.orbit_labels
        order = [labs.index(t) for t in orbit_parameters(self.params)]
        rows = [[row[o] for o in order] for row in table.values]
        return rows


def engine_adapter(params):
    return Adapter(params)


def three_way(params, seed=0):
    """Closed form, structural formula and diagonalization tables as row-key sets."""
    ad = engine_adapter(params)
    inst = ad.instance
    closed = spherical_table_qj(params)
    diag = inst.spherical_by_diagonalization(seed)
    form = inst.spherical_formula_table(seed)
    return {
        "closed_vs_diagonal": gelfand.same_row_sets(closed.values, ad.table_in_labels(diag)),
        "formula_vs_diagonal": gelfand.same_rows(form, diag),
        "orbits_match": sorted(ad.orbit_labels) == orbit_parameters(params),
    }
