from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gelfandpairs.exactnum import (Cyclotomic, NoReconstruction, NotRational, as_rational,
                                   cyclotomic_poly, cyclotomic_reduce, embed, euler_phi,
                                   from_text, reconstruct_value, to_text)

ORDERS = [1, 2, 3, 4, 5, 6, 8, 9, 12]

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cyclotomics(draw, order=None):
    N = order or draw(st.sampled_from(ORDERS))
    raw = draw(st.dictionaries(st.integers(0, N - 1), fractions, max_size=4))
    return cyclotomic_reduce(raw, N)


def test_reduce_examples():
    assert cyclotomic_reduce([1], 1) == 1
    assert cyclotomic_reduce([1, 1], 2).is_zero()
    assert cyclotomic_reduce([1, 1, 1], 3).is_zero()


def test_reduce_wraps_exponents():
    for N in ORDERS:
        assert cyclotomic_reduce({N: 1}, N) == cyclotomic_reduce({0: 1}, N)
        assert cyclotomic_reduce({-1: 1}, N) == cyclotomic_reduce({N - 1: 1}, N)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert [euler_phi(N) for N in (1, 2, 3, 4, 5, 12)] == [1, 1, 2, 2, 4, 4]


def test_as_rational():
    assert as_rational(Cyclotomic(0, 5)) == 0
    assert as_rational(cyclotomic_reduce({1: 1}, 2)) == -1
    with pytest.raises(NotRational):
        as_rational(Cyclotomic.root(3))


def test_textual_form():
    assert to_text(Fraction(3, 1)) == "3"
    assert to_text(Fraction(-1, 3)) == "-1/3"
    z = Cyclotomic.root(3) * Fraction(1, 2) - 1
    assert to_text(z) == "-1 + 1/2*z @3"
    assert from_text(to_text(z)) == z
    assert from_text("-1/3") == Fraction(-1, 3)


def test_mixed_orders_lift():
    i = Cyclotomic.root(4)
    w = Cyclotomic.root(3)
    prod = i * w
    assert prod.order == 12
    assert prod == Cyclotomic.root(12, 7)


def test_reconstruct_examples():
    mpmath.mp.prec = 192
    assert reconstruct_value(mpmath.mpc(-1, 0), 2, 1) == -1
    assert reconstruct_value(mpmath.mpc(0.5, 0), 1, 2) == Fraction(1, 2)
    z3 = mpmath.exp(2j * mpmath.pi / 3)
    assert reconstruct_value(z3, 3, 1) == Cyclotomic.root(3)


def test_reconstruct_rejects_irrational():
    with mpmath.workprec(192):
        with pytest.raises(NoReconstruction):
            reconstruct_value(mpmath.sqrt(2), 1, 50)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDERS).flatmap(lambda N: st.tuples(cyclotomics(N), cyclotomics(N), cyclotomics(N))))
def test_ring_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(cyclotomics())
def test_conjugation(z):
    assert z.conj().conj() == z
    n = complex(z * z.conj())
    assert abs(n.imag) < 1e-9 and n.real > -1e-9
    if not z.is_zero():
        assert z * z.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(fractions, st.sampled_from(ORDERS))
def test_reconstruct_embedded_rationals(r, N):
    with mpmath.workprec(192):
        approx = embed(r, N).to_complex(192)
        assert as_rational(reconstruct_value(approx, N, 12)) == r


@settings(max_examples=40, deadline=None)
@given(cyclotomics(order=12))
def test_reconstruct_integral_elements(z):
    z = cyclotomic_reduce({k: int(c) for k, c in enumerate(z.coeffs)}, 12)
    assert reconstruct_value(z.to_complex(192), 12, 1) == z


@settings(max_examples=40, deadline=None)
@given(cyclotomics())
def test_text_round_trip(z):
    assert from_text(to_text(z)) == z
