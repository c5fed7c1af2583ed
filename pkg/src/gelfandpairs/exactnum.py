"""Exact rationals and cyclotomic numbers.

Rationals are plain :class:`fractions.Fraction` values. A :class:`Cyclotomic`
is an element of Q(zeta_N) stored by its coordinates in the power basis
1, z, ..., z^(phi(N)-1), reduced modulo the N-th cyclotomic polynomial, so
that equality is coefficient-wise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

Rational = Fraction

# numeric pre-pass configuration
PRECISION_BITS = 192
TOLERANCE_EXP = 64


class NotRational(ValueError):
    """Raised by :func:`as_rational` when a value has irrational part."""


class NoReconstruction(ValueError):
    """Raised when no cyclotomic candidate matches a numeric value."""


@lru_cache(maxsize=None)
def cyclotomic_poly(N):
    """Integer coefficients (constant term first) of the N-th cyclotomic polynomial."""
    if N < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder")
    return out


def euler_phi(N):
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def _power_table(N):
    # row k: power-basis coordinates of z^k, 0 <= k < N
    phi = cyclotomic_poly(N)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(N):
        rows.append(tuple(cur))
        # multiply by z and reduce with the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


def cyclotomic_reduce(raw, N):
    """Reduce a sum of powers of zeta_N to canonical form.

    ``raw`` is either a mapping exponent -> coefficient or a sequence of
    coefficients indexed by exponent. Exponents are taken mod N.
    """
    items = raw.items() if hasattr(raw, "items") else enumerate(raw)
    folded = [0] * N
    for e, c in items:
        if c:
            folded[e % N] += c
    table = _power_table(N)
    d = euler_phi(N)
    out = [0] * d
    for k, c in enumerate(folded):
        if c:
            row = table[k]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return Cyclotomic._make(N, tuple(Fraction(c) for c in out))


def _lift(coeffs, N, L):
    step = L // N
    raw = {}
    for k, c in enumerate(coeffs):
        if c:
            raw[k * step] = c
    return cyclotomic_reduce(raw, L).coeffs


class Cyclotomic:
    """Exact element of Q(zeta_N)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, value=0, order=1):
        if isinstance(value, Cyclotomic):
            src = value if value.order == order else value.lift(order)
            self.order, self.coeffs = src.order, src.coeffs
            return
        d = euler_phi(order)
        self.order = order
        self.coeffs = (Fraction(value),) + (Fraction(0),) * (d - 1)

    @classmethod
    def _make(cls, N, coeffs):
        obj = object.__new__(cls)
        obj.order = N
        obj.coeffs = coeffs
        return obj

    @classmethod
    def root(cls, N, k=1):
        """zeta_N^k."""
        return cyclotomic_reduce({k: 1}, N)

    def lift(self, L):
        if L % self.order:
            raise ValueError(f"cannot lift order {self.order} to {L}")
        if L == self.order:
            return self
        return Cyclotomic._make(L, _lift(self.coeffs, self.order, L))

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic(Fraction(other), self.order)
        if other.order == self.order:
            return self, other
        L = math.lcm(self.order, other.order)
        return self.lift(L), other.lift(L)

    def __add__(self, other):
        a, b = self._common(other)
        return Cyclotomic._make(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._make(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            f = Fraction(other)
            return Cyclotomic._make(self.order, tuple(x * f for x in self.coeffs))
        a, b = self._common(other)
        raw = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] = raw.get(i + j, 0) + x * y
        return cyclotomic_reduce(raw, a.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            r = other.rational_or_none()
            if r is None:
                return self * other.inverse()
            other = r
        return self * (1 / Fraction(other))

    def inverse(self):
        # product of the nontrivial Galois conjugates gives the norm
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero")
        N = self.order
        prod = Cyclotomic(1, N)
        for t in range(2, N):
            if math.gcd(t, N) == 1:
                prod = prod * self.galois(t)
        norm = (self * prod).rational_or_none()
        return prod * (1 / norm)

    def galois(self, t):
        """Apply the automorphism z -> z^t."""
        raw = {}
        for k, c in enumerate(self.coeffs):
            if c:
                raw[k * t] = raw.get(k * t, 0) + c
        return cyclotomic_reduce(raw, self.order)

    def conj(self):
        return self.galois(-1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            r = self.rational_or_none()
            return r is not None and r == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        r = self.rational_or_none()
        if r is not None:
            return hash(r)
        # order-independent, so lifted copies hash alike
        w = complex(self)
        return hash((round(w.real, 9), round(w.imag, 9)))

    def is_zero(self):
        return not any(self.coeffs)

    def rational_or_none(self):
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def to_complex(self, prec=PRECISION_BITS):
        with mpmath.workprec(prec):
            z = mpmath.exp(2j * mpmath.pi / self.order)
            return sum((mpmath.mpf(c.numerator) / c.denominator * z**k
                        for k, c in enumerate(self.coeffs)), mpmath.mpc(0))

    def __complex__(self):
        return complex(self.to_complex(53))

    def __repr__(self):
        return f"Cyclotomic({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def as_rational(z):
    """Return the rational value of ``z``; raise :class:`NotRational` otherwise."""
    if isinstance(z, (int, Fraction)):
        return Fraction(z)
    r = z.rational_or_none()
    if r is None:
        raise NotRational(to_text(z))
    return r


def embed(r, N=1):
    return Cyclotomic(Fraction(r), N)


def _frac_text(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(z):
    """Textual form: 'a/b' for rationals, 'c0 + c1*z + ... @N' otherwise."""
    if isinstance(z, (int, Fraction)):
        return _frac_text(Fraction(z))
    r = z.rational_or_none()
    if r is not None:
        return _frac_text(r)
    terms = []
    for k, c in enumerate(z.coeffs):
        if not c:
            continue
        if k == 0:
            terms.append(_frac_text(c))
        elif k == 1:
            terms.append(f"{_frac_text(c)}*z")
        else:
            terms.append(f"{_frac_text(c)}*z^{k}")
    return " + ".join(terms) + f" @{z.order}"


def from_text(s):
    s = s.strip()
    if "@" not in s:
        return Fraction(s)
    body, order = s.rsplit("@", 1)
    N = int(order)
    raw = {}
    for term in body.split(" + "):
        term = term.strip()
        if "*z" in term:
            c, power = term.split("*z")
            k = int(power[1:]) if power.startswith("^") else 1
        else:
            c, k = term, 0
        raw[k] = raw.get(k, 0) + Fraction(c)
    return cyclotomic_reduce(raw, N)


def reconstruct_value(approx, N, denominator_bound, prec=PRECISION_BITS):
    """Recover an element of Q(zeta_N) from a high-precision numeric value.

    Coefficients are found as an integer relation between the value and the
    power basis (mpmath.pslq on a generic real projection of the complex
    embedding), then the candidate is re-embedded and checked against
    ``approx`` at tolerance 2^-64. Callers verify the result exactly.
    """
    d = euler_phi(N)
    with mpmath.workprec(prec):
        z = mpmath.mpmathify(approx)
        tol = mpmath.mpf(2) ** (-TOLERANCE_EXP)
        if abs(z) < tol:
            return Cyclotomic(0, N)
        if d == 1:
            if abs(mpmath.im(z)) > tol:
                raise NoReconstruction("imaginary part on a rational order")
            cand = _best_rational(mpmath.re(z), denominator_bound)
            coeffs = (cand,)
        else:
            zeta = mpmath.exp(2j * mpmath.pi / N)
            # pi is transcendental, so this projection is injective on Q(zeta_N)
            lam = mpmath.pi
            proj = lambda w: mpmath.re(w) + lam * mpmath.im(w)
            vec = [proj(z)] + [proj(zeta**k) for k in range(d)]
            scale = max(1, int(mpmath.ceil(abs(z)))) + 1
            maxcoeff = denominator_bound * scale * 4 ** d * 1000
            rel = mpmath.pslq(vec, maxcoeff=maxcoeff, maxsteps=10**5,
                              tol=tol)
            if rel is None or rel[0] == 0:
                raise NoReconstruction(f"no relation found at order {N}")
            den = -rel[0]
            coeffs = tuple(Fraction(c, den) for c in rel[1:])
            if any(c.denominator > denominator_bound for c in coeffs):
                raise NoReconstruction("denominator exceeds bound")
        cand = Cyclotomic._make(N, coeffs)
        if abs(cand.to_complex(prec) - z) > tol:
            raise NoReconstruction("candidate outside tolerance")
        return cand


def _best_rational(x, bound):
    fl = int(mpmath.floor(x))
    frac = x - fl
    best = None
    for den in range(1, bound + 1):
        num = int(mpmath.nint(frac * den))
        err = abs(frac - mpmath.mpf(num) / den)
        if best is None or err < best[0]:
            best = (err, Fraction(num, den))
    return fl + best[1]
