"""q-arithmetic and the special functions of the q-Johnson analysis.

Gaussian binomials, rank counts, q-Krawtchouk polynomials (as additive
character sums and in closed form) and the Grassmannian spherical functions
written through q-Hahn polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import ffld
from .exactnum import as_rational, cyclotomic_reduce


@dataclass(frozen=True)
class QParams:
    q: int

    def __post_init__(self):
        ffld.prime_power(self.q)

    def __int__(self):
        return self.q


def _q(q):
    if isinstance(q, QParams):
        return q.q
    ffld.prime_power(q)
    return q


@lru_cache(maxsize=None)
def gauss_binom(n, k, q):
    q = _q(q)
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_hom_rank(ell, a, b, q):
    """Number of linear maps F_q^a -> F_q^b of rank ell."""
    q = _q(q)
    if ell < 0 or ell > min(a, b):
        return 0
    out = gauss_binom(a, ell, q)
    for t in range(ell):
        out *= q**b - q**t
    return out


def tau_exponent(x, q):
    """tau(x) = zeta_p^{Tr(x)}; returns the exponent Tr_{F_q/F_p}(x)."""
    return ffld.get_field(q).trace(x)


@lru_cache(maxsize=None)
def _matrices_by_rank(rows, cols, q):
    table = {}
    for S in ffld.all_matrices(rows, cols, q):
        table.setdefault(ffld.rank(S, q), []).append(S)
    return table


def canonical_rank_matrix(x, rows, cols):
    return tuple(tuple(1 if (i == j and i < x) else 0 for j in range(cols)) for i in range(rows))


def qkrawtchouk_sum(ell, x, a, b, q, T=None):
    """K_ell(x; b, a; q) as the sum of tau(Tr[S T]) over rank-ell S: V0 -> V1.

    T is an a x b matrix (a map V1 -> V0) of rank x; a canonical one is used
    when T is None.
    """
    q = _q(q)
    if not (0 <= x <= min(a, b) and 0 <= ell <= min(a, b)):
        raise ValueError("rank out of range")
    if T is None:
        T = canonical_rank_matrix(x, a, b)
    elif ffld.rank(T, q) != x:
        raise ValueError("T does not have rank x")
    F = ffld.get_field(q)
    counts = {}
    for S in _matrices_by_rank(b, a, q).get(ell, []):
        tr = 0
        for i in range(b):
            Si = S[i]
            for j in range(a):
                if Si[j] and T[j][i]:
                    tr = F.add(tr, F.mul(Si[j], T[j][i]))
        e = F.trace(tr)
        counts[e] = counts.get(e, 0) + 1
    return as_rational(cyclotomic_reduce(counts, F.p))


def qkrawtchouk(ell, x, a, b, q):
    """Closed form of :func:`qkrawtchouk_sum` (rank-metric eigenvalues).

    With n = min(a, b), M = max(a, b):
    sum_j (-1)^(ell-j) q^(M j + C(ell-j, 2)) [n-j, ell-j]_q [n-x, j]_q.
    """
    q = _q(q)
    if not (0 <= x <= min(a, b) and 0 <= ell <= min(a, b)):
        raise ValueError("rank out of range")
    n, M = min(a, b), max(a, b)
    total = 0
    for j in range(ell + 1):
        t = ell - j
        total += (-1) ** t * q ** (M * j + t * (t - 1) // 2) * gauss_binom(n - j, t, q) * gauss_binom(n - x, j, q)
    return Fraction(total)


# ------------------------------------------------------------ q-Pochhammers

@dataclass(frozen=True)
class QPochhammerConvention:
    """A reading of the symbol (a)_k as a product in q."""

    name: str
    description: str

    def __call__(self, a, k, q):
        a, Q = Fraction(a), Fraction(_q(q))
        out = Fraction(1)
        for t in range(k):
            out *= _POCH_TERMS[self.name](a, Q, t)
        return out


_POCH_TERMS = {
    "ascending": lambda a, Q, t: 1 - a * Q**t,
    "descending": lambda a, Q, t: 1 - a * Q ** (-t),
    "reciprocal": lambda a, Q, t: 1 - Q ** (-t) / a,
    "falling": lambda a, Q, t: a - Q**t,
}

CONVENTIONS = (
    QPochhammerConvention("ascending", "(a; q)_k = prod_{t<k} (1 - a q^t)"),
    QPochhammerConvention("descending", "(a; q^-1)_k = prod_{t<k} (1 - a q^-t)"),
    QPochhammerConvention("reciprocal", "(1/a; q^-1)_k = prod_{t<k} (1 - q^-t / a)"),
    QPochhammerConvention("falling", "prod_{t<k} (a - q^t)"),
)

# pinned against the Grassmannian diagonalization oracle (tests/fixtures)
DEFAULT_CONVENTION = CONVENTIONS[1]


def convention(name):
    for c in CONVENTIONS:
        if c.name == name:
            return c
    raise KeyError(name)


def qpoch(a, k, Q):
    """Standard (a; Q)_k."""
    out = Fraction(1)
    for t in range(k):
        out *= 1 - a * Q**t
    return out


def qhahn_3phi2(k, d, a, b, Q):
    """3phi2(Q^-k, Q^(k-a-b-1), Q^-d; Q^-a, Q^-b; Q, Q), terminating."""
    Q = Fraction(Q)
    total = Fraction(0)
    for j in range(min(k, d) + 1):
        num = qpoch(Q**-k, j, Q) * qpoch(Q ** (k - a - b - 1), j, Q) * qpoch(Q**-d, j, Q)
        den = qpoch(Q**-a, j, Q) * qpoch(Q**-b, j, Q) * qpoch(Q, j, Q)
        total += num / den * Q**j
    return total


def E_k(k, a, b, c, x, p):
    """The q-Hahn multiple E_k(a, b, c, x; p) entering the spherical functions.

    Written with Q = 1/p:
    (-1)^k Q^(ck) prod_{t<k}(1 - Q^(b-t))(1 - Q^(a-t)) * 3phi2(..., Q^-(c-x); ...).
    """
    Q = 1 / Fraction(p)
    pref = Fraction((-1) ** k) * Q ** (c * k)
    for t in range(k):
        pref *= (1 - Q ** (b - t)) * (1 - Q ** (a - t))
    return pref * qhahn_3phi2(k, c - x, a, b, Q)


def qjohnson_phi(n, m, k, w, q, conv=None):
    """Spherical function of the Grassmannian of m-spaces in F_q^n.

    ``w`` is dim(X cap V0) for the base subspace V0; the value is 1 at w = m.
    """
    q = _q(q)
    conv = conv or DEFAULT_CONVENTION
    if not (0 <= m <= n and 0 <= k <= min(m, n - m) and max(0, 2 * m - n) <= w <= m):
        raise ValueError(f"parameters out of range: n={n} m={m} k={k} w={w}")
    Q = Fraction(q)
    p = 1 / Q
    if m <= n - m:
        pref = (-1) ** k * Q ** (-m * k) / (conv(Q ** (n - m), k, q) * conv(Q**m, k, q))
        return pref * E_k(k, m, n - m, m, w, p)
    # dual form through U -> U°, with n - dim(X + V0) = n - 2m + w
    pref = (-1) ** k * Q ** (-(n - m) * k) / (conv(Q**m, k, q) * conv(Q ** (n - m), k, q))
    return pref * E_k(k, n - m, m, n - m, n - 2 * m + w, p)
