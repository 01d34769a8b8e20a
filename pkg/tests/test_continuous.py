from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from metricdual.continuous import (RealNorm, TNorm, TransformConfig, ZNorm, ball_lipschitz_bound,
                                   circle_norm, is_quasiconcave, real_bidual, real_bidual_fixpoint,
                                   real_dual, real_dual_closed, t_dual_at, tabulate_dual, z_dual_at)
from metricdual.errors import InputError, NotQuasiConcaveError

FIXTURE = [(0, 0), (1, 1), (2, 1.2), (3, 2)]


def fixture():
    return RealNorm.table(FIXTURE, 0.1)


def grid_sup(omega, t, n=200_000):
    # dense independent oracle for sup over s in (0, 1/2] of s / omega(s / t)
    s = np.arange(1, n + 1) / (2.0 * n)
    return float(np.max(s / omega(s / t)))


def test_power_one_self_dual():
    w = RealNorm.power(1)
    assert real_dual(w, 3.0) == pytest.approx(3.0, rel=1e-12)
    assert real_dual_closed(w, 3.0) == pytest.approx(3.0, rel=1e-12)


def test_power_half_examples():
    w = RealNorm.power(0.5)
    assert real_dual(w, 2.0) == pytest.approx(1.0, rel=1e-9)
    assert real_dual_closed(w, 0.5) == pytest.approx(0.5, rel=1e-12)
    assert real_dual(w, 2.0) == pytest.approx(grid_sup(w, 2.0), rel=1e-6)


def test_log1p_closed_form():
    w = RealNorm.log1p()
    assert real_dual_closed(w, 1.0) == pytest.approx(1 / (2 * np.log1p(0.5)), rel=1e-12)
    assert real_dual(w, 1.0) == pytest.approx(real_dual_closed(w, 1.0), rel=1e-6)
    assert real_dual(w, 1.0) == pytest.approx(grid_sup(w, 1.0), rel=1e-6)


def test_dual_tends_to_zero():
    w = RealNorm.power(0.5)
    vals = real_dual(w, np.array([1e-2, 1e-4, 1e-6]))
    assert np.all(np.diff(vals) < 0) and vals[-1] < 1e-2


@pytest.mark.parametrize("w", [RealNorm.power(0.3), RealNorm.power(1), RealNorm.linear(2.5),
                               RealNorm.log1p(2.0)])
def test_quasiconcave_families(w):
    assert is_quasiconcave(w)


def test_fixture_not_quasiconcave():
    qc = is_quasiconcave(fixture())
    assert not qc
    lo, hi = qc.witness
    assert 2 <= lo < hi <= 3
    assert fixture()(hi) / hi > fixture()(lo) / lo
    with pytest.raises(NotQuasiConcaveError):
        real_dual_closed(fixture(), 1.0)


def test_fixture_bidual():
    w = fixture()
    rep = real_bidual_fixpoint(w)
    assert not rep.quasiconcave
    assert rep.bidual_quasiconcave and rep.bidual_below and rep.dual_gap <= 1e-5
    inside = (rep.probes > 2) & (rep.probes < 3)
    assert np.any(rep.bidual[inside] < rep.omega[inside] * (1 - 1e-3))
    # direct bidual at one point agrees with the lattice computation
    assert real_bidual(w, 2.5) < w(2.5)


def test_numerical_dual_is_quasiconcave():
    for w in (fixture(), RealNorm.power(0.5), RealNorm.log1p()):
        cfg = TransformConfig(probe_min=1e-3, probe_max=1e3, probes=241)
        assert is_quasiconcave(tabulate_dual(w), cfg)


def test_properness_propagates():
    vals = real_dual(RealNorm.power(0.5), 10.0 ** np.arange(7))
    assert np.all(np.diff(vals) > 0) and vals[-1] > 100


@given(st.floats(0.2, 5.0), st.floats(0.01, 100.0))
def test_scaling(c, t):
    w = RealNorm.log1p()
    assert real_dual(w.scaled(c), t) == pytest.approx(real_dual(w, t) / c, rel=1e-6)


@given(st.floats(0.1, 1.0), st.floats(1e-2, 1e2))
def test_power_closed_form(alpha, t):
    assert real_dual(RealNorm.power(alpha), t) == pytest.approx(2 ** (alpha - 1) * t ** alpha, rel=1e-6)


@pytest.mark.parametrize("args", [("power", {"alpha": 1.5}), ("linear", {"slope": 0}),
                                  ("table", {"points": [[0, 0], [1, 1]], "slope": 0}),
                                  ("table", {"points": [[0, 1], [1, 1]], "slope": 1})])
def test_constructor_rejects(args):
    with pytest.raises(InputError):
        RealNorm(*args)


def test_validation_rejects_bad_tables():
    with pytest.raises(InputError, match="subadditive"):
        RealNorm.table([(0, 0), (1, 0.1), (2, 5)], 1).validate()
    with pytest.raises(InputError, match="monotone"):
        RealNorm.table([(0, 0), (1, 1), (2, 0.5)], 1).validate()
    with pytest.raises(InputError):
        real_dual(RealNorm.table([(0, 0), (1, 0.1), (2, 5)], 1), 1.0)
    with pytest.raises(InputError):
        real_dual(RealNorm.power(0.5), 0.0)


# Z and T

def test_z_dual_examples():
    Z = ZNorm.absolute()
    assert z_dual_at(Z, Fraction(1, 3)) == Fraction(1, 3)
    assert z_dual_at(Z, 0) == 0
    assert z_dual_at(Z, Fraction(1, 2)) == Fraction(1, 2)
    assert z_dual_at(ZNorm.absolute(2), Fraction(1, 5)) == Fraction(1, 10)


def test_z_dual_rejects_improper():
    bounded = ZNorm(lambda k: Fraction(min(k, 1)), lambda K: Fraction(1))
    with pytest.raises(InputError):
        z_dual_at(bounded, Fraction(1, 7), TransformConfig(z_max_terms=2000))


def test_t_dual_examples():
    lam = TNorm.canonical()
    assert t_dual_at(lam, 2) == pytest.approx(2.0, rel=1e-6)
    assert t_dual_at(lam, 0) == 0
    assert t_dual_at(TNorm.canonical(4.0), 3) == pytest.approx(0.75, rel=1e-6)


def test_norm_validation():
    assert ZNorm.absolute().validate(probes=16)
    assert TNorm.canonical().validate()
    with pytest.raises(InputError):
        TNorm(lambda x: np.asarray(x) ** 2).validate()
    with pytest.raises(InputError):
        ZNorm(lambda k: Fraction(k * k)).validate(probes=8)


def test_circle_norm():
    assert circle_norm(0.75) == pytest.approx(0.25)
    assert circle_norm(-0.1) == pytest.approx(0.1)


def test_ball_bound():
    assert ball_lipschitz_bound(Fraction(1, 2)) == 1
    assert ball_lipschitz_bound(1) == Fraction(1, 2)
    assert ball_lipschitz_bound(0.25) == 2.0
    with pytest.raises(InputError):
        ball_lipschitz_bound(0)
