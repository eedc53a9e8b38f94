import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nulafp.design import (
    DesignRequest,
    NulaDesign,
    design_nula,
    enumerate_designs,
    gcd,
    optimize_finite_n,
    residual_objective,
    steering_grid,
    verify_cancellation,
)
from nulafp.exceptions import InfeasibleDesignError, NulaError
from nulafp.grating import gl_enumerate

deg = math.radians
pos = st.integers(1, 10**6)


class TestGcd:
    @pytest.mark.parametrize("a,b,g", [(15, 12, 3), (4, 5, 1), (7, 7, 7), (0, 9, 9), (9, 0, 9)])
    def test_values(self, a, b, g):
        assert gcd(a, b) == g

    def test_zero_zero(self):
        with pytest.raises(ValueError):
            gcd(0, 0)

    @given(st.integers(0, 10**12), st.integers(0, 10**12))
    def test_matches_math_gcd(self, a, b):
        if a or b:
            assert gcd(a, b) == math.gcd(a, b)

    @given(pos, pos)
    def test_gcd_reduced_pair_is_coprime(self, a, b):
        g = gcd(a, b)
        assert gcd(a // g, b // g) == 1

    @given(pos, pos, pos)
    def test_gcd_divisor_of_coprime(self, a, b, c):
        a = a * c  # make c a divisor of a
        if gcd(a, b) == 1:
            assert gcd(a // c, b) == 1

    @given(pos, pos, pos)
    def test_gcd_product_coprime(self, a, b, c):
        if gcd(a, b) == 1 and gcd(a, c) == 1:
            assert gcd(a, b * c) == 1


class TestDesignNula:
    def test_minimal_design(self):
        design = design_nula(DesignRequest(0.6, deg(90)))
        assert (design.n_blocks, design.p) == (2, 1)
        assert design.block_gap == pytest.approx(0.3)
        assert design.certified
        from nulafp.leakage import block_leakage_at_gl

        assert block_leakage_at_gl(design, -1) == 0

    def test_pinned_25_block_design(self):
        design = design_nula(DesignRequest(0.6, deg(90)), n_blocks=25, p=21)
        assert design.block_gap == pytest.approx(0.504, rel=1e-15)
        assert design.certified

    @pytest.mark.parametrize("theta_max", [10, 45, 90])
    def test_no_lobes_needs_one_block(self, theta_max):
        req = DesignRequest(0.3, deg(theta_max))
        assert req.min_blocks == 1
        design = design_nula(req)
        assert design.n_blocks == 1 and design.certified

    def test_minimum_blocks_arithmetic(self):
        assert DesignRequest(2.5, deg(90)).min_blocks == 6
        assert DesignRequest(0.6, deg(90)).min_blocks == 2

    def test_budget(self):
        req = DesignRequest(2.5, deg(90), element_budget=10, n_sub=2)
        with pytest.raises(InfeasibleDesignError):
            design_nula(req)
        assert design_nula(DesignRequest(2.5, deg(90), element_budget=12, n_sub=2)).n_blocks == 6

    def test_pinned_non_coprime_not_certified(self):
        design = design_nula(DesignRequest(1.2, deg(90)), n_blocks=4, p=2)
        assert not design.certified
        assert not design.is_coprime

    def test_request_validation(self):
        with pytest.raises(ValueError):
            DesignRequest(0.6, 0.0)
        with pytest.raises(ValueError):
            DesignRequest(-1.0, 0.5)


class TestVerify:
    def test_25_block_design_passes(self):
        report = verify_cancellation(NulaDesign(25, 21, 0.6), 0.6, deg(90))
        assert report.passed
        assert report.checks
        assert all(c.block_leakage < 1e-12 and not c.integer_ratio for c in report.checks)

    def test_non_coprime_fails_at_k2(self):
        report = verify_cancellation(NulaDesign(4, 2, 1.2), 1.2, deg(90))
        assert not report.passed
        assert {abs(c.k) for c in report.failures} == {2}
        assert all(c.integer_ratio for c in report.failures)

    def test_vacuous(self):
        report = verify_cancellation(NulaDesign(1, 1, 0.3), 0.3, deg(90))
        assert report.passed and report.checks == []

    def test_grid_contains_breakpoints(self):
        grid = steering_grid(1.3, deg(90))
        for m in (1, 2):
            for s in (m / 1.3 - 1, 1 - m / 1.3):
                if abs(s) <= 1:
                    assert np.min(np.abs(grid - math.asin(s))) == 0
        assert grid[0] == -math.pi / 2 and grid[-1] == math.pi / 2

    def test_steering_independence(self):
        design = design_nula(DesignRequest(1.7, deg(60)))
        report = verify_cancellation(design, 1.7, deg(60), step_deg=0.25)
        assert report.passed
        assert {round(c.theta1, 12) for c in report.checks} >= {
            round(t, 12) for t in steering_grid(1.7, deg(60)) if gl_enumerate(1.7, t)
        }


@settings(max_examples=200, deadline=None)
@given(
    d=st.floats(0.05, 4.0),
    theta_max=st.floats(0.01, math.pi / 2),
    extra=st.integers(0, 6),
    p=st.integers(1, 60),
)
def test_theorem_random_designs(d, theta_max, extra, p):
    req = DesignRequest(d, theta_max)
    nb = req.min_blocks + extra
    if gcd(p, nb) != 1:
        return
    report = verify_cancellation(NulaDesign(nb, p, d), d, theta_max)
    assert report.passed
    for c in report.checks:
        assert (p * c.k) % nb != 0


@settings(max_examples=200, deadline=None)
@given(nb=st.integers(2, 12), p=st.integers(1, 40), d=st.floats(0.5, 4.0))
def test_non_coprime_necessity(nb, p, d):
    if gcd(p, nb) == 1:
        return
    ks = set(gl_enumerate(d, math.pi / 2).indices) | set(gl_enumerate(d, -math.pi / 2).indices)
    bad = [k for k in ks if abs(k) < nb and (p * k) % nb == 0]
    report = verify_cancellation(NulaDesign(nb, p, d), d, math.pi / 2)
    if bad:
        assert not report.passed


class TestEnumerate:
    def test_small(self):
        designs = {(x.n_blocks, x.p) for x in enumerate_designs(DesignRequest(0.6, deg(90)), 3)}
        assert {(2, 1), (2, 3), (3, 1), (3, 2)} <= designs
        assert (2, 2) not in designs
        assert all(nb >= 2 for nb, _ in designs)

    def test_short_spacing_includes_single_block(self):
        designs = enumerate_designs(DesignRequest(0.3, deg(90)), 2)
        assert {(x.n_blocks, x.p) for x in designs if x.n_blocks == 1} == {(1, 1), (1, 2)}

    def test_gap_cap(self):
        designs = enumerate_designs(DesignRequest(0.6, deg(90)), 4, max_gap=0.6)
        assert all(x.block_gap <= 0.6 + 1e-12 for x in designs)

    def test_max_nb_below_minimum(self):
        with pytest.raises(InfeasibleDesignError):
            enumerate_designs(DesignRequest(2.5, deg(90)), 5)

    def test_all_certified_and_coprime(self):
        for x in enumerate_designs(DesignRequest(1.9, deg(70)), 7):
            assert x.certified and x.is_coprime


def _objective_oracle(nb, p, n, d, theta1_deg, res=0.01):
    pitch = (n - 1) * d + p * d / nb
    x = np.array([b * pitch + e * d for b in range(nb) for e in range(n)])
    grid = np.arange(-9000, 9001) / 100.0
    halfwidth = 2 * 102 / (len(x) * x.max() / (len(x) - 1))
    grid = grid[np.abs(grid - theta1_deg) > halfwidth]
    h1 = np.exp(2j * np.pi * x * math.sin(math.radians(theta1_deg)))
    probes = np.exp(2j * np.pi * np.outer(np.sin(np.radians(grid)), x))
    return float(np.max(np.abs(probes @ h1.conj())) / len(x))


class TestOptimize:
    def test_single_candidate(self):
        only = NulaDesign(3, 2, 0.6)
        assert optimize_finite_n(DesignRequest(0.6, deg(90)), 4, [only], deg(45)).n_blocks == 3

    def test_objective_matches_brute_force(self):
        # frozen from the brute-force oracle: 0.68556 (2,1) and 0.16262 (25,21)
        assert residual_objective(NulaDesign(2, 1, 0.6), 4, deg(45)) == pytest.approx(0.6855593815504509, abs=1e-9)
        assert residual_objective(NulaDesign(25, 21, 0.6), 4, deg(45)) == pytest.approx(0.16262142967997306, abs=1e-9)
        for nb, p in [(2, 1), (25, 21)]:
            assert residual_objective(NulaDesign(nb, p, 0.6), 4, deg(45)) == pytest.approx(
                _objective_oracle(nb, p, 4, 0.6, 45.0), abs=1e-10
            )

    def test_selection(self):
        best = optimize_finite_n(
            DesignRequest(0.6, deg(90)), 4, [NulaDesign(2, 1, 0.6), NulaDesign(25, 21, 0.6)], deg(45)
        )
        assert (best.n_blocks, best.p) == (25, 21) and best.certified

    def test_uncertified_excluded(self):
        req = DesignRequest(1.2, deg(90))
        best = optimize_finite_n(req, 2, [NulaDesign(4, 2, 1.2), NulaDesign(3, 1, 1.2)], 0.0)
        assert (best.n_blocks, best.p) == (3, 1)
        with pytest.raises(InfeasibleDesignError):
            optimize_finite_n(req, 2, [NulaDesign(4, 2, 1.2)], 0.0)

    def test_empty(self):
        with pytest.raises(NulaError):
            optimize_finite_n(DesignRequest(0.6, deg(90)), 4, [], 0.0)
