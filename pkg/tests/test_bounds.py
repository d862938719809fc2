import math

import pytest

from entcon import (
    BoundValidityError,
    bound_distribution,
    bound_entropy_set,
    bound_entropy_vector,
    bound_norm_set,
    bound_norm_vector,
    bound_uniform,
    chi2_upper_quantile,
    compute_bound,
    entropy_radius,
    jaynes_comparison,
    norm_margin,
    norm_margin_root,
    regularized_gamma_q,
    scan_alpha,
    tolerance_radius,
)

from highprec import dec, entropy_bound as ref_entropy_bound, norm_bound as ref_norm_bound

DELTA_H_DIE_MEAN = 0.0067 * math.log(6)  # the deviation the published table used


class TestEntropyRadius:
    def test_unconstrained_die(self, die_unconstrained):
        _, _, sol = die_unconstrained
        r = entropy_radius(sol, math.inf, 0.00309, 0.340)
        d = 0.340 * 0.00309 * math.log(6)
        assert r == pytest.approx((2 / 3) * d / math.log(6 / d), rel=1e-12)
        assert r == pytest.approx(1.556e-4, rel=1e-3)

    def test_vanishes_with_alpha(self, die_unconstrained):
        _, _, sol = die_unconstrained
        assert entropy_radius(sol, math.inf, 0.00309, 1e-12) < 1e-13

    def test_constraint_tolerance_caps(self, queue_bounded):
        cs, tol, sol = queue_bounded
        ti = tolerance_radius(cs, tol)
        r = entropy_radius(sol, ti, 0.05, 0.9)
        assert r == ti == pytest.approx(7.22e-7, rel=5e-3)

    def test_side_condition(self, die_unconstrained):
        _, _, sol = die_unconstrained
        with pytest.raises(BoundValidityError):
            entropy_radius(sol, math.inf, 0.8, 0.99)  # deviation above m/21


class TestNormMargin:
    def test_positive_at_small_alpha(self):
        assert norm_margin(0.04 ** 2 / 2, 0.04, 25) > 0.0

    def test_strictly_decreasing(self):
        assert norm_margin(0.1, 0.2, 6) > norm_margin(0.5, 0.2, 6)

    def test_m_condition_boundary(self):
        # theta = 0.04 admits m up to about 2.3e6
        limit = 0.5 * 0.04 ** 3 * math.exp(1 / 0.04)
        assert limit == pytest.approx(2.3e6, rel=0.05)
        with pytest.raises(BoundValidityError):
            norm_margin_root(0.04, int(limit * 1.1))

    def test_root_brackets_sign_change(self):
        a0 = norm_margin_root(0.05, 25)
        assert 0.05 ** 2 / 2 < a0 < 1.0
        assert norm_margin(a0, 0.05, 25) > 0.0          # returned side
        assert norm_margin(a0 + 1e-7, 0.05, 25) < 0.0
        assert norm_margin(a0 - 1e-7, 0.05, 25) > 0.0


# Published threshold tables for the three worked systems.
TABLE_ENTROPY_UNCONSTRAINED = {
    0.00309: [(0.05, 0.340, 16071), (0.005, 0.326, 16858), (5e-6, 0.295, 18866),
              (5e-12, 0.255, 22223), (5e-18, 0.227, 25261), (5e-36, 0.175, 33739)],
    0.00467: [(0.05, 0.340, 10065), (0.005, 0.326, 10585), (5e-6, 0.293, 11913),
              (5e-12, 0.252, 14132), (5e-18, 0.224, 16141), (5e-36, 0.172, 21747)],
}
TABLE_ENTROPY_MEAN = [
    (0.01, 0.330, 6945), (1e-4, 0.304, 7597), (1e-8, 0.270, 8704),
    (1e-16, 0.226, 10633), (1e-32, 0.176, 14144), (1e-64, 0.125, 20771),
]
TABLE_NORM_TRAFFIC = [
    (0.05, 1e-6, 416022, 489889), (0.05, 1e-12, 428261, 502121),
    (0.05, 1e-24, 471616, 545477),
    (0.01, 1e-6, 1.35e7, 1.58e7), (0.01, 1e-12, 1.38e7, 1.62e7),
    (0.01, 1e-24, 1.49e7, 1.72e7),
    (0.005, 1e-6, 5.96e7, 6.96e7), (0.005, 1e-12, 6.08e7, 7.08e7),
    (0.005, 1e-24, 6.51e7, 7.52e7),
]
TABLE_NORM_QUEUE = [
    (0.01, 8.31e6, 1.35e7), (0.001, 1.00e9, 1.17e9), (1e-4, 1.23e11, 1.42e11),
    (1e-5, 1.45e13, 1.68e13), (1e-6, 1.67e15, 1.94e15),
]


class TestEntropySetBound:
    @pytest.mark.parametrize("eta", [0.00309, 0.00467])
    def test_unconstrained_die_table(self, die_unconstrained, eta):
        cs, tol, sol = die_unconstrained
        for eps, alpha, n in TABLE_ENTROPY_UNCONSTRAINED[eta]:
            rep = bound_entropy_set(sol, cs, tol, eps, eta)
            assert rep.n == pytest.approx(n, rel=5e-3)
            assert rep.alpha_hat == pytest.approx(alpha, abs=5e-3)
            assert rep.residual <= 1e-9
            assert rep.active_branch == "entropy-radius"

    def test_die_mean_table(self, die_mean):
        cs, tol, sol = die_mean
        for eps, alpha, n in TABLE_ENTROPY_MEAN:
            rep = bound_entropy_set(sol, cs, tol, eps, 0.0067,
                                    delta_h=DELTA_H_DIE_MEAN)
            assert rep.n == pytest.approx(n, rel=5e-3)
            assert rep.alpha_hat == pytest.approx(alpha, abs=5e-3)

    def test_traffic_constraint_branch(self, traffic):
        cs, tol, sol = traffic
        rep = bound_entropy_set(sol, cs, tol, 1e-6, 0.01)
        assert rep.n == 120000
        assert rep.active_branch == "constraint-tolerance"
        assert rep.alpha_hat == pytest.approx(0.9163, abs=5e-3)

    def test_traffic_entropy_branch(self, traffic):
        cs, tol, sol = traffic
        for eps, alpha, n in [(1e-6, 0.3567, 160807), (1e-12, 0.3471, 165692),
                              (1e-24, 0.3171, 183001)]:
            rep = bound_entropy_set(sol, cs, tol, eps, 0.001)
            assert rep.n == pytest.approx(n, rel=5e-3)
            assert rep.alpha_hat == pytest.approx(alpha, abs=5e-3)

    def test_monotone_in_eps_and_eta(self, die_unconstrained):
        cs, tol, sol = die_unconstrained
        ns = [bound_entropy_set(sol, cs, tol, eps, 0.00309).n_real
              for eps in (0.05, 1e-3, 1e-6, 1e-12, 1e-24)]
        assert ns == sorted(ns)
        ns = [bound_entropy_set(sol, cs, tol, 1e-6, eta).n_real
              for eta in (0.05, 0.02, 0.01, 0.005, 0.003)]
        assert ns == sorted(ns)

    def test_against_high_precision_reference(self, die_unconstrained, traffic):
        cases = [
            (die_unconstrained, 0.00309, 0.05, None),
            (die_unconstrained, 0.00467, 5e-36, None),
            (traffic, 0.001, 1e-12, None),
        ]
        for (cs, tol, sol), eta, eps, dh in cases:
            rep = bound_entropy_set(sol, cs, tol, eps, eta, delta_h=dh)
            scale = (sol.m - 1) / (2 if sol.mu_star == sol.m else 1)
            a_ref, n_ref = ref_entropy_bound(
                sol.m, sol.mu_star, dec(eta) * dec(sol.h_star), dec(sol.phi_min),
                dec(tolerance_radius(cs, tol)), dec(eps), dec(scale))
            assert rep.alpha_hat == pytest.approx(float(a_ref), rel=1e-9)
            assert rep.n_real == pytest.approx(float(n_ref), rel=1e-9)


class TestEntropyVectorBound:
    def test_die_unconstrained_frozen_reference(self, die_unconstrained):
        # 50-digit recomputation gives alpha_hat = 0.18549634..., threshold
        # 12667.19... for eta = 0.00309, eps = 0.05
        cs, tol, sol = die_unconstrained
        rep = bound_entropy_vector(sol, cs, tol, 0.05, 0.00309)
        assert rep.alpha_hat == pytest.approx(0.185496340283773, rel=1e-9)
        assert rep.n_real == pytest.approx(12667.1918180038, rel=1e-9)
        assert rep.n == 12668

    def test_queue_frozen_reference(self, queue_bounded):
        # frozen from the same 50-digit recomputation (constraint branch)
        cs, tol, sol = queue_bounded
        rep = bound_entropy_vector(sol, cs, tol, 1e-20, 0.005)
        assert rep.alpha_hat == pytest.approx(0.985149847176918, rel=1e-8)
        assert rep.n_real == pytest.approx(1385435.16873890, rel=1e-9)
        assert rep.active_branch == "constraint-tolerance"

    def test_below_set_bound(self, die_unconstrained):
        cs, tol, sol = die_unconstrained
        for eps in (0.05, 1e-8):
            one = bound_entropy_vector(sol, cs, tol, eps, 0.00309)
            whole = bound_entropy_set(sol, cs, tol, eps, 0.00309)
            assert one.n_real <= whole.n_real


class TestNormBounds:
    def test_traffic_table(self, traffic):
        cs, tol, sol = traffic
        for theta, eps, n_set, n_vec in TABLE_NORM_TRAFFIC:
            rep = bound_norm_set(sol, cs, tol, eps, theta)
            assert rep.n_real == pytest.approx(n_set, rel=5e-3)
            lep = bound_norm_vector(sol, cs, tol, eps, theta)
            assert lep.n_real == pytest.approx(n_vec, rel=5e-3)
            assert rep.alpha_hat < rep.alpha0
            assert norm_margin(rep.alpha_hat, theta, 25) > 0.0

    def test_queue_table(self, queue_bounded):
        cs, tol, sol = queue_bounded
        for theta, n_set, n_pd in TABLE_NORM_QUEUE:
            rep = bound_norm_set(sol, cs, tol, 1e-20, theta)
            assert rep.n_real == pytest.approx(n_set, rel=1e-2)
            pd = bound_distribution(sol, cs, tol, 1e-20, theta)
            assert pd.n_real == pytest.approx(n_pd, rel=1e-2)
            assert pd.kind == "corollary_pd"
            assert pd.radius == pytest.approx(pd.alpha_hat * theta)

    def test_entropy_value_never_read(self, queue_mean, queue_bounded):
        """The norm bounds must not depend on the solved entropy: the two
        queue systems share m, mu, phi-statistics' relevant parts and
        tolerance radius, and must give identical thresholds."""
        cs_a, tol_a, sol_a = queue_mean
        cs_b, tol_b, sol_b = queue_bounded
        assert abs(sol_a.h_star - sol_b.h_star) > 1e-3  # genuinely different
        for theta in (0.01, 1e-4):
            n_a = bound_norm_set(sol_a, cs_a, tol_a, 1e-20, theta).n_real
            n_b = bound_norm_set(sol_b, cs_b, tol_b, 1e-20, theta).n_real
            assert n_a == pytest.approx(n_b, rel=1e-12)

    def test_entropy_field_deletion_is_harmless(self, traffic):
        import dataclasses
        cs, tol, sol = traffic
        gutted = dataclasses.replace(sol, h_star=float("nan"))
        a = bound_norm_set(sol, cs, tol, 1e-6, 0.05)
        b = bound_norm_set(gutted, cs, tol, 1e-6, 0.05)
        assert a.n_real == b.n_real and a.alpha_hat == b.alpha_hat

    def test_against_high_precision_reference(self, traffic, queue_bounded):
        for (cs, tol, sol), theta, eps, kind in [
            (traffic, 0.05, 1e-24, "set"),
            (traffic, 0.005, 1e-6, "vector"),
            (queue_bounded, 1e-6, 1e-20, "set"),
            (queue_bounded, 0.01, 1e-20, "vector"),
        ]:
            fn = bound_norm_set if kind == "set" else bound_norm_vector
            rep = fn(sol, cs, tol, eps, theta)
            a_ref, n_ref = ref_norm_bound(
                sol.m, sol.mu_star, dec(theta), dec(sol.phi_min),
                dec(tolerance_radius(cs, tol)), dec(eps), kind)
            assert rep.alpha_hat == pytest.approx(float(a_ref), rel=1e-8)
            assert rep.n_real == pytest.approx(float(n_ref), rel=1e-9)

    def test_theta_domain(self, traffic):
        cs, tol, sol = traffic
        with pytest.raises(BoundValidityError):
            bound_norm_set(sol, cs, tol, 1e-6, 0.6)
        with pytest.raises(BoundValidityError):
            bound_norm_set(sol, cs, tol, 1e-6, -0.1)

    def test_monotone_in_theta_and_eps(self, traffic):
        cs, tol, sol = traffic
        ns = [bound_norm_set(sol, cs, tol, 1e-6, th).n_real
              for th in (0.05, 0.02, 0.01, 0.005)]
        assert ns == sorted(ns)
        ns = [bound_norm_set(sol, cs, tol, eps, 0.01).n_real
              for eps in (1e-6, 1e-12, 1e-24)]
        assert ns == sorted(ns)


class TestUniformBound:
    def test_published_case(self):
        rep = bound_uniform(2, 1e-8, 0.01)
        assert rep.n == 1232818
        assert rep.radius <= 1.22e-6
        assert rep.kind == "corollary_unif"

    def test_monotone_in_eps(self):
        assert bound_uniform(2, 1e-4, 0.01).n < bound_uniform(2, 1e-8, 0.01).n

    def test_frozen_reference_m6(self):
        # 50-digit recomputation: alpha_hat = 1.5171391936e-3, N = 32956.765
        rep = bound_uniform(6, 1e-8, 0.09)
        assert rep.alpha_hat == pytest.approx(1.51713919364722e-3, rel=1e-9)
        assert rep.n_real == pytest.approx(32956.7650808621, rel=1e-9)

    def test_theta_domain(self):
        with pytest.raises(BoundValidityError):
            bound_uniform(2, 1e-8, 0.095)
        with pytest.raises(BoundValidityError):
            bound_uniform(20, 1e-8, 0.06)  # above 1/m


class TestGammaAndChi2:
    def test_q_against_closed_forms(self):
        # Q(1, x) = exp(-x); Q(1/2, x) = erfc(sqrt(x))
        for x in (0.1, 0.5, 1.0, 3.0, 10.0):
            assert regularized_gamma_q(1.0, x) == pytest.approx(math.exp(-x), rel=1e-12)
            assert regularized_gamma_q(0.5, x) == pytest.approx(
                math.erfc(math.sqrt(x)), rel=1e-12)

    def test_chi2_quantiles(self):
        assert chi2_upper_quantile(5, 0.05) == pytest.approx(11.0705, abs=5e-3)
        assert chi2_upper_quantile(5, 0.005) == pytest.approx(16.7496, abs=5e-3)
        assert chi2_upper_quantile(2, math.exp(-1)) == pytest.approx(2.0, abs=1e-9)

    def test_quantile_roundtrip(self):
        for dof in (1, 2, 5, 10):
            for eps in (0.9, 0.5, 0.05, 1e-4, 1e-10):
                x = chi2_upper_quantile(dof, eps)
                assert regularized_gamma_q(dof / 2, x / 2) == pytest.approx(
                    eps, rel=1e-7)


class TestJaynesComparison:
    def test_die_005(self):
        comp = jaynes_comparison(6, 0, 0.05, 1000, math.log(6))
        assert comp.dof == 5
        assert comp.chi2_critical == pytest.approx(11.07, abs=0.01)
        assert comp.eta_equivalent == pytest.approx(0.00309, abs=1e-5)

    def test_die_0005(self):
        comp = jaynes_comparison(6, 0, 0.005, 1000, math.log(6))
        assert comp.chi2_critical == pytest.approx(16.75, abs=0.01)
        assert comp.eta_equivalent == pytest.approx(0.00467, abs=1e-5)

    def test_constants(self):
        comp = jaynes_comparison(6, 0, 0.05, 1000, math.log(6))
        s = 1.5
        dh = comp.chi2_critical / 2000
        assert comp.c1_jaynes == pytest.approx(s / dh)
        assert comp.c2_jaynes == pytest.approx(
            (s * math.log(dh) - math.log(0.05 * math.gamma(s + 1))) / dh)

    def test_dof_floor(self):
        with pytest.raises(ValueError):
            jaynes_comparison(3, 2, 0.05, 100, 1.0)


class TestScanAlpha:
    def test_crossing_row_matches_report(self, die_mean):
        cs, tol, sol = die_mean
        rows = scan_alpha("theorem1", sol, cs, tol, 1e-8, eta=0.0067,
                          delta_h=DELTA_H_DIE_MEAN, grid=41)
        crossing = [r for r in rows if r.is_crossing]
        assert len(crossing) == 1
        assert crossing[0].n_curve == pytest.approx(8699.75, abs=0.5)
        assert crossing[0].alpha == pytest.approx(0.270, abs=5e-3)
        # the two curves straddle on either side of the crossing
        before = [r for r in rows if r.alpha < crossing[0].alpha and r.n_curve]
        after = [r for r in rows if r.alpha > crossing[0].alpha and r.n_curve]
        assert before[-1].n_curve < before[-1].rhs_curve
        assert after[0].n_curve > after[0].rhs_curve

    def test_grid_two_gives_endpoints(self, die_unconstrained):
        cs, tol, sol = die_unconstrained
        rows = scan_alpha("theorem1", sol, cs, tol, 0.05, eta=0.00309, grid=2)
        assert len(rows) == 3  # two endpoints plus the crossing row

    def test_norm_kind_scan(self, traffic):
        cs, tol, sol = traffic
        rows = scan_alpha("theorem2", sol, cs, tol, 1e-6, theta=0.05, grid=20)
        crossing = [r for r in rows if r.is_crossing]
        assert crossing[0].alpha == pytest.approx(5.77e-4, rel=5e-2)


class TestDispatchAndReport:
    def test_kind_names(self, die_mean):
        cs, tol, sol = die_mean
        rep = compute_bound("fstar-entropy", sol, cs, tol, 0.05, eta=0.00467)
        assert rep.kind == "lemma_cor1"
        rep = compute_bound("pd", sol, cs, tol, 1e-6, theta=0.05)
        assert rep.kind == "corollary_pd"

    def test_report_json(self, die_mean):
        cs, tol, sol = die_mean
        blob = bound_entropy_set(sol, cs, tol, 1e-8, 0.0067).to_json()
        for key in ("N", "alpha_hat", "C1", "C2", "theta_inf", "theta0",
                    "active_branch", "residual", "validity", "summary"):
            assert key in blob
        assert blob["N"] >= blob["N_real"]

    def test_residual_invariant_across_kinds(self, die_mean, traffic):
        cs, tol, sol = die_mean
        cst, tolt, solt = traffic
        reports = [
            bound_entropy_set(sol, cs, tol, 1e-8, 0.0067),
            bound_entropy_vector(sol, cs, tol, 1e-8, 0.0067),
            bound_norm_set(solt, cst, tolt, 1e-6, 0.05),
            bound_norm_vector(solt, cst, tolt, 1e-6, 0.05),
            bound_uniform(2, 1e-8, 0.01),
        ]
        for rep in reports:
            assert rep.residual <= 1e-9
            assert 0.0 < rep.alpha_hat < 1.0
            assert rep.c1 > 0.0
            # the reported threshold dominates each max term
            if rep.kind.startswith("theorem") or rep.kind.startswith("lemma"):
                assert rep.n_real >= (1.0 - 1e-12) / max(rep.theta0, 1e-300) * 0  # sanity only

    def test_small_threshold_clamped(self):
        # with huge eps and theta the crossing sits below 100
        rep = bound_uniform(2, 100.0, 0.09)
        assert rep.n_real == 100.0
        assert any("clamped" in note for note in rep.notes)
