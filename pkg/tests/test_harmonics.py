from fractions import Fraction

import pytest

from conewave.harmonics import ORTHONORMAL, TRIG_PAPER, basis, dim_H, is_homogeneous_of_degree, sphere_inner
from conewave.polyalg import MultiPoly, Surd, laplace_x

F = Fraction


def test_dim_examples():
    assert dim_H(3, 2) == 5
    assert dim_H(2, 0) == 1
    assert dim_H(1, 2) == 0
    assert [dim_H(1, k) for k in range(3)] == [1, 1, 0]
    assert [dim_H(2, k) for k in range(4)] == [1, 2, 2, 2]
    with pytest.raises(ValueError):
        dim_H(4, 1)


def test_basis_examples():
    x1, x2 = MultiPoly.var(2, "x1"), MultiPoly.var(2, "x2")
    assert basis(2, 0, TRIG_PAPER).members == (MultiPoly.const(2, 1),)
    assert basis(2, 2, TRIG_PAPER).members == (x1**2 - x2**2, (x1 * x2).scale(2))
    b = basis(3, 1, ORTHONORMAL)
    assert b.members == tuple(MultiPoly.var(3, v) for v in ("x3", "x1", "x2"))
    assert b.scales == (Surd.sqrt(3),) * 3


def test_sphere_inner_examples():
    x1, x2 = MultiPoly.var(2, "x1"), MultiPoly.var(2, "x2")
    one = MultiPoly.const(2, 1)
    assert sphere_inner(one, one) == 1
    assert sphere_inner(x1, x2) == 0
    assert sphere_inner(x1**2, one) == F(1, 2)
    x = MultiPoly.var(3, "x1")
    assert sphere_inner(x**4, MultiPoly.const(3, 1)) == F(1, 5)
    with pytest.raises(ValueError):
        sphere_inner(MultiPoly.var(2, "t"), one)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_members_harmonic_homogeneous_orthonormal(d):
    for k in range(7):
        b = basis(d, k, ORTHONORMAL)
        assert len(b) == dim_H(d, k)
        for Y in b.members:
            assert laplace_x(Y).is_zero()
            assert is_homogeneous_of_degree(Y, k)
            lam = F(3, 2)
            assert Y.scale_vars([lam] * d + [1]) == Y.scale(lam**k)
        G = b.gram()
        n = len(b)
        assert G == [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("d", [2, 3])
def test_trig_convention_norms(d):
    for k in range(5):
        b = basis(d, k, TRIG_PAPER)
        G = b.gram()
        for i in range(len(b)):
            assert G[i][i] == b.norms_sq[i] == b.raw_norms_sq[i]
            assert all(G[i][j] == 0 for j in range(len(b)) if j != i)
    assert basis(2, 3, TRIG_PAPER).norms_sq == (F(1, 2), F(1, 2))


def test_unknown_convention():
    with pytest.raises(ValueError):
        basis(2, 1, "schmidt")
    with pytest.raises(ValueError):
        basis(4, 1)
