from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ddb.errors import DiscriminantMismatch, ElementCapExceeded, MalformedInputError
from ddb.quaternion import (
    ICO,
    OCT,
    OMEGA,
    I,
    J,
    K,
    QuadExt,
    Quaternion,
    qe,
    quaternion_closure,
    root_of_unity,
)

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
rational_quats = st.builds(Quaternion.of, fracs, fracs, fracs, fracs)


def test_hamilton_relations():
    minus_one = Quaternion.of(-1)
    assert I * I == J * J == K * K == minus_one
    assert I * J == K and J * I == -K
    assert I * J * K == minus_one


@given(rational_quats, rational_quats, rational_quats)
def test_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(rational_quats, rational_quats)
def test_norm_multiplicative(p, q):
    assert (p * q).norm() == p.norm() * q.norm()


def power_order(q, bound=200):
    one, x = Quaternion.of(1), q
    for n in range(1, bound):
        if x == one:
            return n
        x = x * q
    return None


@pytest.mark.parametrize("q, n", [(OMEGA, 3), (OCT, 8), (ICO, 10), (I, 4)])
def test_element_orders(q, n):
    assert q.norm() == qe(1)
    assert power_order(q) == n


@pytest.mark.parametrize(
    "gens, size",
    [([I, J], 8), ([OMEGA, I], 24), ([OCT, OMEGA], 48), ([ICO, OMEGA], 120), ([OMEGA], 3)],
)
def test_closures(gens, size):
    assert len(quaternion_closure(gens)) == size


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_binary_dihedral(n):
    # exp(pi i/n) has order 2n; with j it spans a group of order 4n
    z = root_of_unity(n)
    assert power_order(z) == 2 * n
    assert len(quaternion_closure([z, J])) == 4 * n


def test_quadratic_field():
    r2 = qe(0, 1, 2)
    assert r2 * r2 == qe(2)
    assert qe(1, 1, 1) == qe(2)
    assert hash(qe(3, 0, 5)) == hash(qe(3))
    with pytest.raises(DiscriminantMismatch):
        r2 * qe(0, 1, 3)
    with pytest.raises(MalformedInputError):
        QuadExt(Fraction(1), Fraction(1), 4)
    with pytest.raises(DiscriminantMismatch):
        quaternion_closure([OCT, root_of_unity(3)])


def test_closure_guards():
    with pytest.raises(MalformedInputError):
        quaternion_closure([Quaternion.of(1, 1)])
    # (3 + 4i)/5 has infinite order
    with pytest.raises(ElementCapExceeded):
        quaternion_closure([Quaternion.of(Fraction(3, 5), Fraction(4, 5))], cap=200)
    with pytest.raises(MalformedInputError):
        root_of_unity(5)
