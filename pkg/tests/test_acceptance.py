"""Acceptance criteria, one test each; conftest prints a PASS/FAIL line per criterion.

Tolerances and budgets are pinned here and nowhere else.  Wall-clock budgets
are measured with the dual cache cleared so earlier tests cannot warm it.
"""

import json
import time
from fractions import Fraction
from math import prod

import numpy as np
import pytest

from metricdual.cli import main
from metricdual.continuous import (RealNorm, TNorm, ZNorm, is_quasiconcave, real_bidual_fixpoint,
                                   real_dual, t_dual_at, z_dual_at)
from metricdual.groups import character_order, make_group
from metricdual.quasinorm import discrete_norm, dual, regularise, regularise_formula
from metricdual.structures import check_prop_metrstr
from metricdual.verify import MODULI, ball_oracle, random_structures

import oracles

EXACT_BUDGET_S = 1.0
VERIFY_BUDGET_S = 60.0
TZ_BUDGET_S = 5.0
REAL_BUDGET_S = 10.0
BALL_BUDGET_S = 120.0
STRUCT_BUDGET_S = 30.0

SELF_DUAL_RTOL = 1e-9
POWER_RTOL = 1e-6
FIXPOINT_RTOL = 1e-5
TZ_RTOL = 1e-6

VERIFY_DRAWS = 100
VERIFY_MAX_ORDER = 64
BALL_MAX_ORDER = 32
BALL_DRAWS = 50
STRUCTURES = 200


def cold():
    dual.cache_clear()
    return time.perf_counter()


def test_criterion_1_discrete_dual_values():
    start = cold()
    for n in (12, 9):
        G = make_group([n])
        d = dual(discrete_norm(G))
        for a in G.elements:
            k = character_order(G, a)
            expect = Fraction(1, 2) if k % 2 == 0 else Fraction(k - 1, 2 * k)
            assert d(a) == expect, (n, a)
    assert time.perf_counter() - start < EXACT_BUDGET_S


def test_criterion_2_regularisation_on_z9():
    start = cold()
    G = make_group([9])
    r = regularise(discrete_norm(G))
    assert r((3,)) == r((6,)) == Fraction(3, 4)
    assert regularise_formula(discrete_norm(G)) == r
    elapsed = time.perf_counter() - start
    # brute-force character max, outside the timed region
    brute = oracles.regularise_table([9], {x: Fraction(0 if x == (0,) else 1) for x in G.elements})
    assert brute[(3,)] == brute[(6,)] == Fraction(3, 4)
    v = r((3,))
    assert Fraction(2, 3) <= v <= Fraction(5, 6) and v != 1
    assert elapsed < EXACT_BUDGET_S


@pytest.fixture(scope="module")
def verify_report(tmp_path_factory):
    out = tmp_path_factory.mktemp("verify") / "report.json"
    start = cold()
    code = main(["--out", str(out), "verify", "--orders", str(VERIFY_MAX_ORDER),
                 "--draws", str(VERIFY_DRAWS), "--seed", "0"])
    elapsed = time.perf_counter() - start
    return code, json.loads(out.read_text()), elapsed


def test_criterion_3_property_suite(verify_report):
    code, rep, elapsed = verify_report
    assert code == 0 and rep["ok"] and rep["failures"] == []
    expected = [m for m in MODULI if prod(m) <= VERIFY_MAX_ORDER]
    assert rep["groups"] == expected
    assert max(prod(m) for m in rep["groups"]) == 64
    families = ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)", "(g)", "sup-reg", "sub-reg", "prod-reg",
                "inf-reg", "qv-reg", "trivial", "scaling", "metr-str"]
    for fam in families:
        assert any(name.startswith(fam) for name in rep["counts"]), fam
    # every per-draw property ran on every draw of every group
    assert rep["counts"]["(c) reg q <= q"] == VERIFY_DRAWS * len(expected)
    assert elapsed < VERIFY_BUDGET_S, f"{elapsed:.1f}s"


def test_criterion_4_finite_correspondence(verify_report):
    code, rep, _ = verify_report
    n = len(rep["groups"]) * VERIFY_DRAWS
    assert rep["counts"]["involution: bidual of regular is itself"] == n
    assert rep["counts"]["involution: dual injective on regulars"] == n
    assert not any(f["property"].startswith("involution") for f in rep["failures"])


def test_criterion_5_integers_and_circle():
    start = cold()
    Z = ZNorm.absolute()
    count = 0
    for q in range(1, 65):
        for p in range(0, q // 2 + 1):
            theta = Fraction(p, q)
            assert z_dual_at(Z, theta) == min(theta, 1 - theta)
            count += 1
    lam = TNorm.canonical()
    for k in range(-16, 17):
        if k:
            assert t_dual_at(lam, k) == pytest.approx(abs(k), rel=TZ_RTOL)
    assert t_dual_at(lam, 0) == 0
    assert count > 600
    assert time.perf_counter() - start < TZ_BUDGET_S


def test_criterion_6_real_duals():
    start = time.perf_counter()
    t = 10.0 ** np.arange(-2, 3)
    one = RealNorm.power(1)
    assert np.allclose(real_dual(one, t), t, rtol=SELF_DUAL_RTOL, atol=0)
    assert real_bidual_fixpoint(one).max_rel_deviation <= SELF_DUAL_RTOL
    probes = 10.0 ** (np.arange(-8, 9) / 4)
    for alpha in (0.3, 0.5, 0.9):
        w = RealNorm.power(alpha)
        closed = 2 ** (alpha - 1) * probes ** alpha
        assert np.allclose(real_dual(w, probes), closed, rtol=POWER_RTOL, atol=0), alpha
        rep = real_bidual_fixpoint(w, tol=FIXPOINT_RTOL)
        assert rep.quasiconcave and rep.max_rel_deviation <= FIXPOINT_RTOL, alpha
    fixture = RealNorm.table([(0, 0), (1, 1), (2, 1.2), (3, 2)], 0.1)
    assert not is_quasiconcave(fixture)
    rep = real_bidual_fixpoint(fixture, tol=FIXPOINT_RTOL)
    assert rep.bidual_quasiconcave and rep.bidual_below and rep.dual_gap <= FIXPOINT_RTOL
    assert time.perf_counter() - start < REAL_BUDGET_S


def test_criterion_7_ball_bound_oracle():
    start = cold()
    checked, violations = ball_oracle(BALL_MAX_ORDER, BALL_DRAWS, seed=0)
    assert violations == []
    assert checked > 100_000
    assert time.perf_counter() - start < BALL_BUDGET_S


def test_criterion_8_structure_equivalence():
    start = cold()
    structures = random_structures(STRUCTURES, seed=0)
    assert len(structures) >= STRUCTURES
    reports = [check_prop_metrstr(P, strict=False) for P in structures]
    assert all(r.consistent for r in reports)
    # both verdicts occur, so the agreement is not vacuous
    assert {r.condition_i for r in reports} == {True, False}
    assert time.perf_counter() - start < STRUCT_BUDGET_S
