import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gelfandpairs import groups
from gelfandpairs.exactnum import Cyclotomic
from gelfandpairs.groups import (AbelianCharacter, AbelianGroup, ActionError, FiniteGroup, SemidirectElement,
                                 char_conjugate, character_sum, compose, dual_group, orbits, quotient_characters,
                                 semidirect_identity, semidirect_inv, semidirect_mul, symmetric_group)


def perm_aut(n):
    def aut(h):
        return tuple(tuple(1 if h[i] == j else 0 for j in range(n)) for i in range(n))
    return aut


def s3_on(A):
    n = A.rank
    return FiniteGroup(list(itertools.permutations(range(n))), compose, groups.perm_inverse,
                       tuple(range(n)), aut=perm_aut(n), name="S3")


def test_abelian_group_basics():
    A = AbelianGroup([2, 3])
    assert A.order == 6 and A.exponent == 6
    assert len(list(A.elements())) == 6
    assert A.subgroup([(0, 1)]) == ((0, 0), (0, 1), (0, 2))
    with pytest.raises(ValueError):
        AbelianGroup([0])
    with pytest.raises(ValueError):
        A.subgroup([(2, 0)])


def test_dual_group_orthogonality():
    for factors in ([2, 2], [3], [2, 4], [3, 3]):
        A = AbelianGroup(factors)
        chars = dual_group(A)
        assert len(chars) == A.order
        for chi, psi in itertools.product(chars, repeat=2):
            s = character_sum((chi * psi.conj(), a) for a in A.elements())
            assert s == (A.order if chi == psi else 0)


def test_quotient_characters():
    A = AbelianGroup([2, 2])
    qc = quotient_characters(A, [(1, 1)])
    assert len(qc) == 2
    assert all(chi((1, 1)) == 1 for chi in qc)
    assert len(quotient_characters(A, [])) == 4
    assert len(quotient_characters(A, A.generators())) == 1


def test_symmetric_group_examples():
    S3 = symmetric_group(3)
    assert S3.order == 6 and S3.exponent() == 6
    assert S3.verify(full=True)
    assert sorted(S3.element_order(g) for g in S3) == [1, 2, 2, 2, 3, 3]
    C3 = groups.permutation_group([(1, 2, 0)])
    assert C3.order == 3 and S3.is_subgroup(C3.elements)
    assert not S3.is_subgroup([(0, 1, 2), (1, 0, 2), (0, 2, 1)])


def test_double_cosets_s3():
    S3 = symmetric_group(3)
    K = [(0, 1, 2), (1, 0, 2)]
    dcs = groups.double_cosets(S3, K)
    assert sorted(len(d) for _, d in dcs) == [2, 4]
    with pytest.raises(ValueError):
        groups.double_cosets(S3, [(1, 2, 0)])


def test_orbits_on_pairs():
    S3 = symmetric_group(3)
    pts = [(i, j) for i in range(3) for j in range(3)]
    orbs = orbits(lambda g, p: (g[p[0]], g[p[1]]), S3.elements, pts)
    assert sorted(o.size for o in orbs) == [3, 6]
    assert all(o.rep == min(o.points) for o in orbs)


def test_bad_action_detected():
    S3 = symmetric_group(3)
    with pytest.raises(ActionError):
        orbits(lambda g, p: p + 1, S3.elements, [0, 1, 2])


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([[2, 2, 2], [3, 3, 3], [4, 4, 4]]), st.data())
def test_orbit_stabilizer(factors, data):
    A = AbelianGroup(factors)
    H = s3_on(A)
    pts = list(A.elements())
    for o in orbits(lambda h, a: A.apply(H.aut(h), a), H.elements, pts):
        assert o.size * len(o.stabilizer) == H.order
        assert H.is_subgroup(o.stabilizer)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([[2, 2, 2], [3, 3, 3]]), st.data())
def test_semidirect_laws(factors, data):
    A = AbelianGroup(factors)
    H = s3_on(A)
    els = list(A.elements())

    def draw():
        return SemidirectElement(data.draw(st.sampled_from(H.elements)), data.draw(st.sampled_from(els)))

    x, y, z = draw(), draw(), draw()
    mul = lambda u, v: semidirect_mul(H, A, u, v)
    e = semidirect_identity(H, A)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, semidirect_inv(H, A, x)) == e
    assert mul(e, x) == x


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([[2, 2, 2], [3, 3, 3], [2, 4]]), st.data())
def test_character_conjugation_is_action(factors, data):
    A = AbelianGroup(factors)
    if A.rank == 3:
        H = s3_on(A)
    else:
        H = FiniteGroup([(0,), ], lambda g, h: (0,), identity=(0,),
                        aut=lambda h: tuple(A.generators()), name="1")
    g = data.draw(st.sampled_from(H.elements))
    h = data.draw(st.sampled_from(H.elements))
    psi = AbelianCharacter(A, data.draw(st.sampled_from(list(A.elements()))))
    a = data.draw(st.sampled_from(list(A.elements())))
    lhs = char_conjugate(H, A, H.mul(g, h), psi)
    rhs = char_conjugate(H, A, g, char_conjugate(H, A, h, psi))
    assert lhs == rhs
    # (^h psi)(h a) = psi(a)
    assert char_conjugate(H, A, h, psi)(A.apply(H.aut(h), a)) == psi(a)
    assert char_conjugate(H, A, H.identity, psi) == psi


def test_character_values_are_roots_of_unity():
    A = AbelianGroup([3, 3])
    chi = AbelianCharacter(A, (1, 2))
    assert chi((1, 0)) == Cyclotomic.root(3)
    assert chi((1, 1)) == 1
    assert (chi * chi.conj()).is_trivial_on(list(A.elements()))
