from fractions import Fraction
from math import comb

import numpy as np
import pytest

from conewave.orthopoly1d import (
    _binom,
    _jacobi_generic,
    JacobiParam,
    LaguerreParam,
    gegenbauer,
    gegenbauer_eval,
    jacobi,
    jacobi_eval,
    jacobi_norm,
    laguerre,
    laguerre_eval,
    laguerre_identities_check,
    laguerre_norm,
    poch,
)
from conewave.polyalg import MultiPoly
from conewave.quadrature import gauss_jacobi, gauss_laguerre

s = MultiPoly.var(0, "t")
ONE = MultiPoly.const(0, 1)
F = Fraction


def J(n, a, b):
    return jacobi(n, JacobiParam(F(a), F(b)))


def test_poch():
    assert poch(5, 0) == 1
    assert poch(F(1, 2), 3) == F(15, 8)


def test_laguerre_examples():
    assert laguerre(0, 7) == ONE
    assert laguerre(1, 3) == 4 - s
    assert laguerre(2, 0) == 1 - 2 * s + (s * s).scale(F(1, 2))
    assert laguerre(2, LaguerreParam(F(1, 2))) == laguerre(2, F(1, 2))


def test_laguerre_norm():
    assert laguerre_norm(0, F(5, 2)) == 1
    assert laguerre_norm(2, 1) == 3
    assert laguerre_norm(1, 0) == 1
    with pytest.raises(ValueError):
        laguerre_norm(1, -1)


def test_jacobi_examples():
    assert J(0, 0, 0) == ONE
    assert J(1, 0, 1).eval(0) == F(-1, 2)
    for beta in (F(0), F(1, 2), F(2)):
        assert J(1, -1, beta) == (s - 1).scale((1 + beta) / 2)
    assert J(0, -1, F(3, 2)) == ONE
    with pytest.raises(ValueError):
        J(1, -2, 1)
    with pytest.raises(ValueError):
        JacobiParam(F(0), F(-1))


def test_jacobi_norm():
    assert jacobi_norm(0, JacobiParam(3, F(1, 2))) == 1
    assert jacobi_norm(1, JacobiParam(0, 0)) == F(1, 3)
    for n, a, b in [(1, 1, 0), (3, 0, F(1, 2)), (4, 2, 1), (2, F(1, 2), F(3, 2))]:
        rule = gauss_jacobi(n + 3, float(a), float(b))
        vals = jacobi_eval(n, float(a), float(b), rule.nodes)
        assert float(jacobi_norm(n, JacobiParam(a, b))) == pytest.approx(
            float(np.sum(rule.weights * vals**2)), rel=1e-13
        )
    with pytest.raises(ValueError):
        jacobi_norm(1, JacobiParam(-1, 0))


def test_gegenbauer_examples():
    assert gegenbauer(0, 3) == ONE
    assert gegenbauer(1, F(5, 2)) == s.scale(5)
    assert gegenbauer(2, F(1, 2)) == ((s * s).scale(3) - 1).scale(F(1, 2))


def test_laguerre_identities():
    for n in range(9):
        for alpha in range(7):
            assert laguerre_identities_check(n, alpha)
    assert laguerre_identities_check(0, 2)
    assert laguerre(0, 4) == laguerre(0, 5) == ONE


def _rel_err(approx, exact):
    return np.max(np.abs(approx - exact)) / max(1.0, np.max(np.abs(exact)))


def _exact_values(p, pts):
    return np.array([float(p.eval(F(x))) for x in pts])


def test_recurrence_matches_exact_laguerre():
    ts = np.linspace(0.0, 50.0, 41)
    for alpha in (0, F(1, 2), 3):
        for n in (0, 1, 2, 5, 12, 20, 30):
            exact = _exact_values(laguerre(n, alpha), ts)
            assert _rel_err(laguerre_eval(n, float(alpha), ts), exact) <= 1e-12


def test_recurrence_matches_exact_jacobi_gegenbauer():
    ss = np.linspace(-1.0, 1.0, 41)
    for a, b in [(0, 0), (1, F(1, 2)), (0, F(3, 2)), (F(1, 2), 2)]:
        for n in (0, 1, 3, 10, 20, 30):
            exact = _exact_values(J(n, a, b), ss)
            assert _rel_err(jacobi_eval(n, float(a), float(b), ss), exact) <= 1e-12
    for lam in (F(1, 2), 1, F(5, 2)):
        for n in (0, 1, 4, 15, 30):
            exact = _exact_values(gegenbauer(n, lam), ss)
            assert _rel_err(gegenbauer_eval(n, float(lam), ss), exact) <= 1e-12


def test_orthogonality_by_quadrature():
    for alpha in (0.0, 1.5, 4.0):
        rule = gauss_laguerre(12, alpha)
        V = np.array([laguerre_eval(n, alpha, rule.nodes) for n in range(10)])
        G = (V * rule.weights) @ V.T
        off = G - np.diag(np.diag(G))
        assert np.max(np.abs(off)) <= 1e-11 * np.max(np.diag(G))
        assert np.allclose(np.diag(G), [float(laguerre_norm(n, F(alpha))) for n in range(10)], rtol=1e-11)
    for a, b in [(0.0, 0.0), (1.0, 0.5), (0.0, 1.5)]:
        rule = gauss_jacobi(12, a, b)
        V = np.array([jacobi_eval(n, a, b, rule.nodes) for n in range(10)])
        G = (V * rule.weights) @ V.T
        assert np.max(np.abs(G - np.diag(np.diag(G)))) <= 1e-11


BETAS = (F(1, 2), F(1), F(3, 2), F(2))


def test_dlmf_18_9_17_with_plain_beta():
    # (2j+b+1)(1-s^2) P_j^{(1,b)}' = j(1 - b - (2j+b+1)s) P_j^{(1,b)} + 2(j+1)(j+b) P_{j-1}^{(1,b)}
    for b in BETAS:
        for j in range(1, 9):
            lhs = ((1 - s * s) * J(j, 1, b).partial("t")).scale(2 * j + b + 1)
            rhs = ((1 - b) - s.scale(2 * j + b + 1)).scale(j) * J(j, 1, b) + J(j - 1, 1, b).scale(
                2 * (j + 1) * (j + b)
            )
            assert lhs == rhs


def test_dlmf_18_9_5():
    for b in BETAS:
        for j in range(0, 9):
            lhs = J(j, 0, b).scale(2 * j + b + 1)
            rhs = J(j, 1, b).scale(j + b + 1) - J(j - 1, 1, b).scale(j + b)
            assert lhs == rhs


def test_dlmf_18_9_15():
    for a in (0, 1):
        for b in BETAS:
            for n in range(1, 9):
                assert J(n, a, b).partial("t") == J(n - 1, a + 1, b + 1).scale(F(n + a + b + 1, 2))


def test_dlmf_18_9_6_uses_next_degree():
    # (n + (a+b)/2 + 1)(1+s) P_n^{(a,b+1)} = (n+1) P_{n+1}^{(a,b)} + (n+b+1) P_n^{(a,b)}
    for a in (0, 1):
        for b in BETAS:
            for n in range(0, 8):
                lhs = ((1 + s) * J(n, a, b + 1)).scale(n + F(a + b, 2) + 1)
                rhs = J(n + 1, a, b).scale(n + 1) + J(n, a, b).scale(n + b + 1)
                assert lhs == rhs
    # the same-degree reading P_n in the first term is not an identity
    lhs = ((1 + s) * J(2, 0, F(3, 2))).scale(2 + F(1, 4) + 1)
    assert lhs != J(2, 0, F(1, 2)).scale(3) + J(2, 0, F(1, 2)).scale(2 + F(1, 2) + 1)


def test_negative_parameter_identity():
    # C(j,k) P_j^{(-k,b)} = C(j+b,k) ((s-1)/2)^k P_{j-k}^{(k,b)}; checked against the
    # generic hypergeometric form, which is polynomial in alpha
    half = (s - 1).scale(F(1, 2))
    for b in (F(0), F(1, 2), F(1), F(2)):
        for j in range(1, 7):
            for k in range(1, j + 1):
                generic = _jacobi_generic(j, F(-k), b)
                factored = (half**k * _jacobi_generic(j - k, F(k), b)).scale(_binom(j + b, k))
                assert generic.scale(comb(j, k)) == factored
                assert J(j, -k, b) == generic
