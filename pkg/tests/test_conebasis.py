from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from conewave.conebasis import (
    BasisSpec,
    ConeIndex,
    Q,
    Q_norm,
    a_mj,
    b_mn,
    cone_inner_exact,
    cone_norm_orthonormal,
    convert_m1_to_0,
    enumerate_indices,
    harmonic_scale,
)
from conewave.harmonics import TRIG_PAPER, basis, dim_H
from conewave.orthopoly1d import gegenbauer, jacobi_eval, laguerre, laguerre_eval, poch
from conewave.polyalg import MultiPoly, Surd, eigen_operator, operator_D

F = Fraction


def test_enumerate_examples():
    s2 = BasisSpec(2)
    assert enumerate_indices(s2, 0) == [(0, 0, 0, 1)]
    assert enumerate_indices(s2, 1) == [(0, 0, 0, 1), (1, 0, 0, 1), (1, 1, 0, 1), (1, 1, 0, 2)]
    for idx in enumerate_indices(BasisSpec(1), 2):
        assert idx.m - 2 * idx.j in (0, 1)
    for d in (1, 2, 3):
        for N in range(6):
            want = sum(dim_H(d, m - 2 * j) for n in range(N + 1) for m in range(n + 1) for j in range(m // 2 + 1))
            got = enumerate_indices(BasisSpec(d), N)
            assert len(got) == want and got == sorted(got)


def test_spec_validation():
    with pytest.raises(ValueError):
        BasisSpec(4)
    with pytest.raises(ValueError):
        BasisSpec(2, c=0)
    with pytest.raises(ValueError):
        BasisSpec(2, mu=-2)
    assert BasisSpec(2, "1/2").mu == F(1, 2)


def test_Q_examples():
    for d in (1, 2, 3):
        t = MultiPoly.var(d, "t")
        assert Q((0, 0, 0, 1), BasisSpec(d)) == MultiPoly.const(d, 1)
        assert Q((1, 0, 0, 1), BasisSpec(d)) == d + 1 - t
        sm1 = BasisSpec(d, -1)
        for n in range(4):
            for m in range(min(n, 1 if d == 1 else 3) + 1):
                for ell in range(1, dim_H(d, m) + 1):
                    lag = laguerre(n - m, 2 * m + d - 2).embed(d)
                    Y = basis(d, m).members[ell - 1]
                    assert Q((n, m, 0, ell), sm1) == lag * Y


def test_Q_bad_indices():
    s = BasisSpec(2)
    with pytest.raises(ValueError):
        Q((2, 3, 0, 1), s)
    with pytest.raises(ValueError):
        Q((2, 2, 0, 3), s)
    assert Q((2, -1, 0, 1), s).is_zero()
    assert Q((2, 1, -1, 1), s).is_zero()


@pytest.mark.parametrize("d", [1, 2, 3])
def test_degree_is_n(d):
    for mu in (0, -1, 1):
        for idx in enumerate_indices(BasisSpec(d), 5):
            assert Q(idx, BasisSpec(d, mu)).degree == idx.n


@pytest.mark.parametrize("d", [1, 2, 3])
def test_separated_form_on_samples(d):
    rng = np.random.default_rng(7)
    for mu in (0, 1):
        spec = BasisSpec(d, mu)
        for idx in enumerate_indices(spec, 5):
            n, m, j, ell = idx
            T = rng.uniform(0.5, 3.0, 4)
            X = rng.uniform(-0.5, 0.5, (4, d)) * T[:, None]
            r2 = np.sum(X**2, axis=1)
            Y = basis(d, m - 2 * j).members[ell - 1].evaluate_array(X, np.zeros(4))
            want = (
                laguerre_eval(n - m, 2 * m + 2 * mu + d, T)
                * T ** (2 * j)
                * jacobi_eval(j, mu, m - 2 * j + (d - 2) / 2, 2 * r2 / T**2 - 1)
                * Y
            )
            assert np.allclose(Q(idx, spec).evaluate_array(X, T), want, rtol=1e-11, atol=1e-11)


def test_mu_minus_one_vanishes_on_boundary():
    rng = np.random.default_rng(1)
    for d in (2, 3):
        spec = BasisSpec(d, -1)
        for idx in enumerate_indices(spec, 5):
            if idx.j == 0:
                continue
            xi = rng.normal(size=d)
            xi /= np.linalg.norm(xi)
            t = 1.7
            assert abs(Q(idx, spec).evaluate_array(xi[None, :] * t, np.array([t]))[0]) < 1e-10


def test_norm_examples():
    s2 = BasisSpec(2)
    assert Q_norm((0, 0, 0, 1), s2) == 1
    assert Q_norm((1, 1, 0, 1), BasisSpec(2, 0, 1, TRIG_PAPER)) == 3
    # mu = 0 norm d (d+1)_{n+m} / ((2m+d)(n-m)!)
    for d in (1, 2, 3):
        for idx in enumerate_indices(BasisSpec(d), 5):
            n, m = idx.n, idx.m
            assert cone_norm_orthonormal(idx, d, 0) == F(d) * poch(d + 1, n + m) / ((2 * m + d) * factorial(n - m))
    with pytest.raises(ValueError):
        Q_norm((0, 0, 0, 1), BasisSpec(2, -1))


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("mu", [0, 1, F(1, 2)])
def test_exact_orthogonality_and_norms(d, mu):
    spec = BasisSpec(d, mu)
    idxs = enumerate_indices(spec, 3)
    P = [Q(i, spec) for i in idxs]
    for a, (ia, pa) in enumerate(zip(idxs, P)):
        for b in range(a, len(idxs)):
            v = cone_inner_exact(pa, P[b], spec)
            if a == b:
                scale = harmonic_scale(ia, spec)
                sq = (scale * scale).simplify() if isinstance(scale, Surd) else scale * scale
                assert v * sq == Q_norm(ia, spec)
            else:
                assert v == 0


def test_speed_dilation():
    spec = BasisSpec(2, 0, 2)
    idxs = enumerate_indices(spec, 3)
    for i in idxs:
        assert Q(i, spec) == Q(i, BasisSpec(2)).scale_vars([F(1, 2), F(1, 2), 1])
    P = [Q(i, spec) for i in idxs]
    assert cone_inner_exact(MultiPoly.const(2, 1), MultiPoly.const(2, 1), spec) == 1
    assert all(cone_inner_exact(P[a], P[b], spec) == 0 for a in range(len(P)) for b in range(a))


def test_constants():
    assert a_mj(3, 1, 2) == F(2, 3)
    assert a_mj(0, 0, 2) == 1
    assert b_mn(2, 3) == 6


@pytest.mark.parametrize("d", [1, 2, 3])
def test_six_term_conversion_small(d):
    s0, sm1 = BasisSpec(d, 0), BasisSpec(d, -1)
    for idx in enumerate_indices(s0, 4):
        terms = convert_m1_to_0(idx, d)
        assert len(terms) <= 6
        total = MultiPoly(d)
        for target, coef in terms:
            total = total + Q(target, s0).scale(coef)
        assert total == Q(idx, sm1)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_operator_D_and_eigen_small(d):
    for idx in enumerate_indices(BasisSpec(d), 4):
        p = Q(idx, BasisSpec(d))
        assert operator_D(p) == p.scale(-idx.m * (idx.m + d))
        for mu in (0, 1):
            q = Q(idx, BasisSpec(d, mu))
            assert eigen_operator(q, mu) == q.scale(-idx.n)


def test_d1_matches_gegenbauer_form():
    # in d = 1 the basis is the Jacobi form with Y = 1 or x; it is proportional to
    # L_{n-m}(t) t^m C_m^{mu+1/2}(x/t)
    x, t = MultiPoly.var(1, "x1"), MultiPoly.var(1, "t")
    for mu in (0, 1, F(1, 2)):
        spec = BasisSpec(1, mu)
        for idx in enumerate_indices(spec, 6):
            n, m = idx.n, idx.m
            C = gegenbauer(m, mu + F(1, 2))
            homog = MultiPoly(1)
            for exps, c in C.items():
                homog = homog + (x ** exps[0] * t ** (m - exps[0])).scale(c)
            ref = laguerre(n - m, 2 * m + 2 * mu + 1).embed(1) * homog
            p = Q(idx, spec)
            lead = max(p.terms, key=lambda e: (e[0], -e[1]))
            ratio = p.coefficient(lead) / ref.coefficient(lead)
            assert p == ref.scale(ratio)


def test_memo_is_thread_safe():
    spec = BasisSpec(3)
    idxs = enumerate_indices(spec, 5)
    with ThreadPoolExecutor(max_workers=4) as ex:
        results = list(ex.map(lambda i: str(Q(i, spec)), idxs * 2))
    assert results[: len(idxs)] == results[len(idxs) :]
