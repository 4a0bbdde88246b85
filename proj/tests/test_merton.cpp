#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "riskaverse/errors.hpp"
#include "riskaverse/merton/merton.hpp"

using namespace riskaverse;
using merton::MertonParams;
using merton::NuVariant;

namespace {

MertonParams figure_params(double s_rho) {
    MertonParams p;  // gamma 0.4, r 0.01, mu 0.1, sigma 0.3, eps 0.1, T 4, w0 1
    p.s_rho = s_rho;
    return p;
}

std::vector<double> default_t_grid() {
    std::vector<double> t;
    for (int i = 0; i <= 20; ++i) t.push_back(4.0 * i / 20.0);
    return t;
}

std::vector<double> default_x_grid() {
    std::vector<double> x;
    for (int j = 1; j <= 12; ++j) x.push_back(0.3 * j);
    return x;
}

} // namespace

TEST(Merton, GrowthConstantFrozenValues) {
    EXPECT_NEAR(merton::nu(figure_params(0.0), NuVariant::cross_term), -0.18375, 1e-14);
    EXPECT_NEAR(merton::nu(figure_params(0.0), NuVariant::drift_shift), -0.18375, 1e-14);
    EXPECT_NEAR(merton::nu(figure_params(0.25), NuVariant::cross_term), 2.8240625, 1e-12);
    EXPECT_NEAR(merton::nu(figure_params(0.25), NuVariant::drift_shift), -0.0196875, 1e-12);

    MertonParams bad = figure_params(0.0);
    bad.gamma = 0.0;
    EXPECT_THROW(merton::nu(bad, NuVariant::cross_term), DomainError);
    bad.gamma = 1.0;
    EXPECT_THROW(merton::nu(bad, NuVariant::cross_term), ValidationError);
}

TEST(Merton, TimeFunctionProperties) {
    for (double s : {0.0, 0.1, 0.2, 0.25}) {
        const auto sol = merton::solution(figure_params(s), NuVariant::cross_term);
        EXPECT_NEAR(sol.f(4.0), 0.1, 1e-12);  // f(T) = epsilon
        for (int i = 0; i <= 40; ++i) {
            EXPECT_GT(sol.f(4.0 * i / 40.0), 0.0);
        }
        // f' = nu f - 1 matches the closed-form derivative.
        for (double t : {0.0, 1.3, 3.9}) {
            EXPECT_NEAR(sol.f_prime(t), sol.growth * sol.f(t) - 1.0, 1e-12);
        }
    }
}

TEST(Merton, VanishingGrowthLimit) {
    // r = mu = 0 with no spread forces nu = 0 exactly; then f(t) = eps + (T - t).
    MertonParams p = figure_params(0.0);
    p.r = 0.0;
    p.mu = 0.0;
    const auto sol = merton::solution(p, NuVariant::drift_shift);
    EXPECT_DOUBLE_EQ(sol.growth, 0.0);
    EXPECT_DOUBLE_EQ(sol.f(0.0), 0.1 + 4.0);
    EXPECT_DOUBLE_EQ(sol.f(3.0), 0.1 + 1.0);
}

TEST(Merton, ConsumptionStructure) {
    const auto sol = merton::solution(figure_params(0.1), NuVariant::cross_term);
    // Terminal consumption rate x / epsilon.
    EXPECT_NEAR(sol.consumption(4.0, 2.0), 2.0 / 0.1, 1e-10);
    // Linear in wealth.
    const double base = sol.consumption(1.0, 1.0);
    for (double x : {0.5, 2.0, 7.0}) {
        EXPECT_NEAR(sol.consumption(1.0, x), x * base, 1e-12 * std::max(1.0, x * base));
    }
}

TEST(Merton, AllocationMonotoneWithZeroAtBound) {
    // (mu - r)/(sigma^2 gamma) at zero spread.
    EXPECT_NEAR(merton::solution(figure_params(0.0), NuVariant::cross_term).pi_star, 2.5, 1e-12);
    double previous = 3.0;
    for (double s : {0.0, 0.05, 0.1, 0.2, 0.29}) {
        const double pi = merton::solution(figure_params(s), NuVariant::cross_term).pi_star;
        EXPECT_LE(pi, previous + 1e-15);
        EXPECT_GE(pi, 0.0);
        previous = pi;
    }
    // At the Sharpe bound the allocation vanishes (to rounding of mu - r);
    // beyond it the clamp is exact.
    EXPECT_NEAR(merton::solution(figure_params(0.3), NuVariant::cross_term).pi_star, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(merton::solution(figure_params(0.35), NuVariant::cross_term).pi_star, 0.0);
}

TEST(Merton, HjbResidualAdjudicatesVariants) {
    const auto t_grid = default_t_grid();
    const auto x_grid = default_x_grid();

    // Zero spread: the forms coincide and both variants satisfy them.
    for (NuVariant v : {NuVariant::cross_term, NuVariant::drift_shift}) {
        EXPECT_LE(merton::hjb_residual(figure_params(0.0), v, t_grid, x_grid), 1e-9);
        EXPECT_LE(merton::hjb_residual_drift_form(figure_params(0.0), v, t_grid, x_grid), 1e-9);
    }

    // Positive spread separates them: each variant satisfies its own form.
    const MertonParams p = figure_params(0.2);
    EXPECT_LE(merton::hjb_residual(p, NuVariant::cross_term, t_grid, x_grid), 1e-9);
    EXPECT_GT(merton::hjb_residual(p, NuVariant::drift_shift, t_grid, x_grid), 1e-4);
    EXPECT_LE(merton::hjb_residual_drift_form(p, NuVariant::drift_shift, t_grid, x_grid), 1e-9);
    EXPECT_GT(merton::hjb_residual_drift_form(p, NuVariant::cross_term, t_grid, x_grid), 1e-4);
}

TEST(Merton, TerminalValueExact) {
    const auto sol = merton::solution(figure_params(0.15), NuVariant::cross_term);
    for (double x : {0.2, 1.0, 5.0}) {
        const double expected = std::pow(0.1, 0.4) * std::pow(x, 0.6) / 0.6;
        EXPECT_NEAR(sol.value(4.0, x), expected, 1e-13 * std::abs(expected));
    }
}

TEST(Merton, OdeIntegrationStaysOnClosedForm) {
    for (double s : {0.0, 0.1, 0.2, 0.28}) {
        for (NuVariant v : {NuVariant::cross_term, NuVariant::drift_shift}) {
            EXPECT_LE(merton::ode_check(figure_params(s), v), 1e-8);
        }
    }
}

TEST(Merton, ConsumptionCurveMonotone) {
    const std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.2, 0.25};
    const auto curve = merton::consumption_curve(figure_params(0.0), grid);
    ASSERT_EQ(curve.size(), grid.size());
    EXPECT_NEAR(curve[0].consumption, 0.163507345245, 1e-9);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        EXPECT_GE(curve[i].consumption, curve[i - 1].consumption - 1e-12);
        EXPECT_LE(curve[i].pi_star, curve[i - 1].pi_star + 1e-12);
    }
    // Outside the admissible range the curve refuses.
    EXPECT_THROW(merton::consumption_curve(figure_params(0.0), {0.0, 0.31}), DomainError);
    // Under the drift-shift variant consumption still rises with the level.
    const auto shifted = merton::consumption_curve(figure_params(0.0), grid,
                                                   NuVariant::drift_shift);
    EXPECT_NEAR(shifted[5].consumption, 0.234196949026, 1e-9);
    for (std::size_t i = 1; i < shifted.size(); ++i) {
        EXPECT_GE(shifted[i].consumption, shifted[i - 1].consumption - 1e-12);
    }
}

TEST(Merton, AdjudicationReport) {
    const auto report = merton::adjudicate(figure_params(0.2));
    EXPECT_EQ(report.canonical, NuVariant::cross_term);
    EXPECT_LE(report.residual_cross_term_form_cross_term, 1e-9);
    EXPECT_LE(report.residual_drift_form_drift_shift, 1e-9);
    EXPECT_GT(report.residual_cross_term_form_drift_shift, 1e-4);
    EXPECT_GT(report.residual_drift_form_cross_term, 1e-4);
    const std::string json = report.to_json(figure_params(0.2));
    EXPECT_NE(json.find("\"canonical_variant\": \"cross_term\""), std::string::npos);
    EXPECT_NE(json.find("cross_term_equation"), std::string::npos);
}

TEST(Merton, ParameterValidation) {
    MertonParams p = figure_params(0.0);
    p.sigma = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p = figure_params(0.0);
    p.epsilon = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p = figure_params(0.0);
    p.gamma = -0.1;
    EXPECT_THROW(p.validate(), ValidationError);
}
