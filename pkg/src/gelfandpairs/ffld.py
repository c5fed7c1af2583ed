"""Linear algebra over finite fields.

Field elements are plain ints. For a prime field they are residues mod p;
for F_{p^e} the int's base-p digits are the coefficients of a polynomial
residue modulo a fixed irreducible polynomial. Vectors are tuples of ints and
matrices are tuples of row tuples.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

# constant term first
IRREDUCIBLE = {4: (1, 1, 1), 8: (1, 1, 0, 1), 9: (1, 0, 1)}


def prime_power(q):
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


class PrimeField:
    def __init__(self, p):
        self.q = self.p = p
        self.e = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def trace(self, a):
        return a

    def digits(self, a):
        return (a,)

    def from_digits(self, ds):
        return ds[0] % self.p

    def __repr__(self):
        return f"GF({self.q})"


class ExtensionField:
    """F_{p^e} for the small prime powers in :data:`IRREDUCIBLE`."""

    def __init__(self, q):
        if q not in IRREDUCIBLE:
            raise ValueError(f"extension field F_{q} not supported")
        self.q = q
        self.p, self.e = prime_power(q)
        self.modulus = IRREDUCIBLE[q]
        p, e = self.p, self.e
        elems = range(q)
        self._add = [[self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])
                      for b in elems] for a in elems]
        self._mul = [[self._polymul(a, b) for b in elems] for a in elems]
        self._neg = [self.from_digits([-x % p for x in self.digits(a)]) for a in elems]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = next(b for b in elems if self._mul[a][b] == 1)
        self._trace = []
        for a in elems:
            t, x = 0, a
            for _ in range(e):
                t = self._add[t][x]
                x = self._pow(x, p)
            self._trace.append(self.digits(t)[0])

    def digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_digits(self, ds):
        v = 0
        for d in reversed(list(ds)):
            v = v * self.p + d % self.p
        return v

    def _polymul(self, a, b):
        p, e, mod = self.p, self.e, self.modulus
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * e - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                prod[i + j] = (prod[i + j] + xi * yj) % p
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                for t in range(e + 1):
                    prod[k - e + t] = (prod[k - e + t] - c * mod[t]) % p
        return self.from_digits(prod[:e])

    def _pow(self, a, k):
        r = 1
        for _ in range(k):
            r = self._polymul(r, a)
        return r

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def trace(self, a):
        return self._trace[a]

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def get_field(q):
    p, e = prime_power(q)
    return PrimeField(p) if e == 1 else ExtensionField(q)


def primitive_element(q):
    F = get_field(q)
    for g in range(2, q) if q > 2 else [1]:
        x, seen = g, set()
        while x not in seen:
            seen.add(x)
            x = F.mul(x, g)
        if len(seen) == q - 1:
            return g
    return 1


# ---------------------------------------------------------------- matrices

def zeros(r, c):
    return tuple((0,) * c for _ in range(r))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(M, ncols=None):
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def mat_mul(A, B, q, inner=None):
    """A (r x k) times B (k x c). ``inner`` gives k when A has no rows."""
    F = get_field(q)
    k = len(B)
    c = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * c
        for t in range(k):
            a = row[t]
            if a:
                brow = B[t]
                for j in range(c):
                    if brow[j]:
                        acc[j] = F.add(acc[j], F.mul(a, brow[j]))
        out.append(tuple(acc))
    return tuple(out)


def mat_vec(A, v, q):
    F = get_field(q)
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return tuple(out)


def mat_add(A, B, q):
    F = get_field(q)
    return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(A, q):
    F = get_field(q)
    return tuple(tuple(F.neg(a) for a in row) for row in A)


def vec_add(u, v, q):
    F = get_field(q)
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_sub(u, v, q):
    F = get_field(q)
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(c, v, q):
    F = get_field(q)
    return tuple(F.mul(c, a) for a in v)


def rref(M, q, ncols=None):
    """Reduced row-echelon form.

    Returns (R, rank, pivots) where R has the shape of M with zero rows last.
    """
    F = get_field(q)
    rows = [list(r) for r in M]
    nc = len(rows[0]) if rows else (ncols or 0)
    pivots = []
    rank = 0
    for col in range(nc):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        prow = [F.mul(inv, x) for x in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(rows[i], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return tuple(tuple(r) for r in rows), rank, tuple(pivots)


def rank(M, q):
    return rref(M, q)[1]


def inverse(M, q):
    n = len(M)
    aug = tuple(tuple(row) + idrow for row, idrow in zip(M, identity(n)))
    R, rk, piv = rref(aug, q)
    if rk < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in R)


def kernel(M, q, ncols):
    """Basis of {v : M v = 0} as a tuple of vectors (RREF of the kernel)."""
    F = get_field(q)
    R, rk, piv = rref(M, q, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        basis.append(tuple(v))
    return Subspace.from_vectors(basis, ncols, q).basis


def all_vectors(n, q):
    return itertools.product(range(q), repeat=n)


def all_matrices(r, c, q):
    for flat in itertools.product(range(q), repeat=r * c):
        yield tuple(tuple(flat[i * c:(i + 1) * c]) for i in range(r))


@lru_cache(maxsize=None)
def general_linear(n, q):
    """All invertible n x n matrices, built row by row outside the running span."""
    if n == 0:
        return ((),)
    F = get_field(q)
    vecs = list(all_vectors(n, q))
    out = []

    def span(rows):
        pts = {(0,) * n}
        for r in rows:
            new = set()
            for p in pts:
                for c in range(1, q):
                    new.add(tuple(F.add(x, F.mul(c, y)) for x, y in zip(p, r)))
            pts |= new
        return pts

    def extend(rows, sp):
        if len(rows) == n:
            out.append(tuple(rows))
            return
        for v in vecs:
            if v not in sp:
                nxt = rows + [v]
                extend(nxt, span(nxt) if len(nxt) < n else sp)

    extend([], {(0,) * n})
    out.sort()
    return tuple(out)


def gl_order(n, q):
    o = 1
    for i in range(n):
        o *= q**n - q**i
    return o


# ---------------------------------------------------------------- subspaces

class Subspace:
    """Subspace of F_q^n held by its reduced row-echelon basis."""

    __slots__ = ("n", "q", "basis", "pivots")

    def __init__(self, basis, n, q, pivots=None):
        self.n = n
        self.q = q
        self.basis = tuple(tuple(r) for r in basis)
        if pivots is None:
            pivots = tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, vectors, n, q):
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return cls((), n, q, ())
        R, rk, piv = rref(vectors, q, n)
        return cls(R[:rk], n, q, piv)

    @classmethod
    def zero(cls, n, q):
        return cls((), n, q, ())

    @classmethod
    def full(cls, n, q):
        return cls(identity(n), n, q, tuple(range(n)))

    @classmethod
    def coordinate(cls, indices, n, q):
        rows = [tuple(1 if j == i else 0 for j in range(n)) for i in sorted(indices)]
        return cls(rows, n, q, tuple(sorted(indices)))

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n and self.q == other.q
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.n, self.q, self.basis))

    def __lt__(self, other):
        return (self.dim, self.basis) < (other.dim, other.basis)

    def __repr__(self):
        return f"Subspace({[list(r) for r in self.basis]}, n={self.n}, q={self.q})"

    def to_json(self):
        return [list(r) for r in self.basis]

    def reduce(self, v):
        """v minus its component along the pivot rows; zero at pivot columns."""
        F = get_field(self.q)
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v):
        return not any(self.reduce(v))

    def coords(self, v):
        """Coefficients of v in the canonical basis (v must lie in the subspace)."""
        c = tuple(v[pc] for pc in self.pivots)
        if self.combine(c) != tuple(v):
            raise ValueError("vector not in subspace")
        return c

    def combine(self, coeffs):
        F = get_field(self.q)
        out = [0] * self.n
        for c, row in zip(coeffs, self.basis):
            if c:
                out = [F.add(x, F.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)

    def complement(self):
        return Subspace.coordinate(self.free_columns(), self.n, self.q)

    def free_columns(self):
        piv = set(self.pivots)
        return tuple(c for c in range(self.n) if c not in piv)

    def quotient_coords(self, v):
        """Coordinates, in complement(U), of the representative of v + U."""
        r = self.reduce(v)
        return tuple(r[c] for c in self.free_columns())

    def quotient_rep(self, v):
        return self.reduce(v)

    def lift_coords(self, c):
        """Vector of complement(U) with the given complement coordinates."""
        out = [0] * self.n
        for col, x in zip(self.free_columns(), c):
            out[col] = x
        return tuple(out)

    def sum(self, other):
        return Subspace.from_vectors(self.basis + other.basis, self.n, self.q)

    def intersect(self, other):
        # solve x U = y W via the kernel of the stacked basis
        if not self.basis or not other.basis:
            return Subspace.zero(self.n, self.q)
        F = get_field(self.q)
        k = self.dim
        stacked = self.basis + tuple(tuple(F.neg(x) for x in r) for r in other.basis)
        ker = kernel(transpose(stacked), self.q, len(stacked))
        vecs = [self.combine(z[:k]) for z in ker]
        return Subspace.from_vectors(vecs, self.n, self.q)

    def image(self, g):
        """g U for a square matrix g acting on column vectors."""
        if not self.basis:
            return self
        return Subspace.from_vectors([mat_vec(g, r, self.q) for r in self.basis], self.n, self.q)

    def is_subspace_of(self, other):
        return all(other.contains(r) for r in self.basis)

    def vectors(self):
        for c in all_vectors(self.dim, self.q):
            yield self.combine(c)


def enumerate_subspaces(n, k, q):
    """All k-dimensional subspaces of F_q^n, ordered by pivot set then entries."""
    if not 0 <= k <= n:
        return
    for piv in itertools.combinations(range(n), k):
        pset = set(piv)
        free = [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, n) if j not in pset]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, j), x in zip(free, vals):
                rows[i][j] = x
            yield Subspace(rows, n, q, piv)


def complement(U):
    return U.complement()


def quotient_coords(v, U):
    return U.quotient_coords(v)
