#include "riskaverse/merton/merton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "riskaverse/errors.hpp"

namespace riskaverse::merton {

void MertonParams::validate() const {
    if (!(sigma > 0.0)) throw ValidationError("merton params: sigma must be positive");
    if (!(epsilon > 0.0)) throw ValidationError("merton params: epsilon must be positive");
    if (!(gamma >= 0.0)) throw ValidationError("merton params: gamma must be >= 0");
    if (gamma == 1.0) throw ValidationError("merton params: gamma = 1 (log utility) unsupported");
    if (!(horizon > 0.0)) throw ValidationError("merton params: horizon must be positive");
    if (!(w0 > 0.0)) throw ValidationError("merton params: initial wealth must be positive");
    if (!(s_rho >= 0.0)) throw ValidationError("merton params: s_rho must be >= 0");
}

double nu(const MertonParams& params, NuVariant variant) {
    params.validate();
    if (params.gamma == 0.0 || params.gamma == 1.0) {
        throw DomainError("nu: gamma must differ from 0 and 1");
    }
    const double g = params.gamma;
    const double excess = params.mu - params.r;
    if (variant == NuVariant::cross_term) {
        const double quad = (excess * excess + params.s_rho * params.s_rho * params.sigma *
                                                   params.sigma) /
                            (2.0 * params.sigma * params.sigma);
        return -params.r * (1.0 - g) / g -
               (1.0 - g) / (g * g) * (quad - params.s_rho / params.sigma);
    }
    const double shifted = excess - params.s_rho * params.sigma;
    return -(1.0 - g) / g * (params.r + shifted * shifted / (2.0 * params.sigma * params.sigma * g));
}

namespace {

// (1 - e^{-u}) / u, continuous through u = 0.
double expm1_ratio(double u) {
    if (u == 0.0) return 1.0;
    return -std::expm1(-u) / u;
}

} // namespace

double MertonSolution::f(double t) const {
    const double tau = params.horizon - t;
    return params.epsilon * std::exp(-growth * tau) + tau * expm1_ratio(growth * tau);
}

double MertonSolution::f_prime(double t) const {
    const double tau = params.horizon - t;
    return std::exp(-growth * tau) * (growth * params.epsilon - 1.0);
}

double MertonSolution::value(double t, double x) const {
    const double g = params.gamma;
    return std::pow(f(t), g) * std::pow(x, 1.0 - g) / (1.0 - g);
}

double MertonSolution::consumption(double t, double x) const { return x / f(t); }

MertonSolution solution(const MertonParams& params, NuVariant variant) {
    MertonSolution sol;
    sol.params = params;
    sol.variant = variant;
    sol.growth = nu(params, variant);
    sol.pi_star = std::max(
        (params.mu - params.r - params.s_rho * params.sigma) /
            (params.sigma * params.sigma * params.gamma),
        0.0);
    return sol;
}

namespace {

double residual_impl(const MertonParams& params, NuVariant variant,
                     const std::vector<double>& t_grid, const std::vector<double>& x_grid,
                     bool cross_term_form) {
    const MertonSolution sol = solution(params, variant);
    const double g = params.gamma;
    const double sig2 = params.sigma * params.sigma;
    const double excess = params.mu - params.r;
    double worst = 0.0;
    for (double t : t_grid) {
        const double f = sol.f(t);
        const double fp = sol.f_prime(t);
        for (double x : x_grid) {
            if (!(x > 0.0)) throw DomainError("hjb_residual: wealth grid must be positive");
            // Exact ansatz partials.
            const double rx = std::pow(f, g) * std::pow(x, -g);
            const double rxx = -g * std::pow(f, g) * std::pow(x, -g - 1.0);
            const double rt = g * std::pow(f, g - 1.0) * fp * std::pow(x, 1.0 - g) / (1.0 - g);
            const double quad_coeff =
                cross_term_form
                    ? (excess * excess + params.s_rho * params.s_rho * sig2) / (2.0 * sig2)
                    : (excess - params.s_rho * params.sigma) *
                          (excess - params.s_rho * params.sigma) / (2.0 * sig2);
            double residual = rt - quad_coeff * rx * rx / rxx + params.r * x * rx +
                              g / (1.0 - g) * std::pow(rx, (g - 1.0) / g);
            if (cross_term_form) {
                residual += params.s_rho / params.sigma * rx * std::abs(rx) / rxx;
            }
            const double scale = std::abs(rt) + std::abs(quad_coeff * rx * rx / rxx) +
                                 std::abs(params.r * x * rx) +
                                 std::abs(g / (1.0 - g) * std::pow(rx, (g - 1.0) / g));
            worst = std::max(worst, std::abs(residual) / std::max(1.0, scale));
        }
    }
    return worst;
}

} // namespace

double hjb_residual(const MertonParams& params, NuVariant variant,
                    const std::vector<double>& t_grid, const std::vector<double>& x_grid) {
    return residual_impl(params, variant, t_grid, x_grid, true);
}

double hjb_residual_drift_form(const MertonParams& params, NuVariant variant,
                               const std::vector<double>& t_grid,
                               const std::vector<double>& x_grid) {
    return residual_impl(params, variant, t_grid, x_grid, false);
}

double ode_check(const MertonParams& params, NuVariant variant, int steps) {
    if (steps < 2) throw DomainError("ode_check: need at least 2 steps");
    const MertonSolution sol = solution(params, variant);
    const double nu_v = sol.growth;
    const double h = params.horizon / steps;  // integrating backward in time
    const auto rhs = [nu_v](double f) { return nu_v * f - 1.0; };
    double f = params.epsilon;
    double worst = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double k1 = rhs(f);
        const double k2 = rhs(f - 0.5 * h * k1);
        const double k3 = rhs(f - 0.5 * h * k2);
        const double k4 = rhs(f - h * k3);
        f -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t = params.horizon - (k + 1) * h;
        worst = std::max(worst, std::abs(f - sol.f(t)));
    }
    return worst;
}

std::vector<ConsumptionPoint> consumption_curve(const MertonParams& params,
                                                const std::vector<double>& s_rho_grid,
                                                NuVariant variant) {
    const double bound = (params.mu - params.r) / params.sigma;
    std::vector<ConsumptionPoint> curve;
    curve.reserve(s_rho_grid.size());
    for (double s : s_rho_grid) {
        if (!(s < bound)) {
            throw DomainError("consumption_curve: s_rho must stay below (mu - r)/sigma = " +
                              std::to_string(bound));
        }
        MertonParams p = params;
        p.s_rho = s;
        const MertonSolution sol = solution(p, variant);
        curve.push_back({s, sol.consumption(0.0, p.w0), sol.pi_star});
    }
    return curve;
}

std::string AdjudicationReport::to_json(const MertonParams& params) const {
    char buf[640];
    std::snprintf(
        buf, sizeof buf,
        "{\n"
        "  \"params\": {\"r\": %g, \"mu\": %g, \"sigma\": %g, \"gamma\": %g, "
        "\"epsilon\": %g, \"s_rho\": %g, \"horizon\": %g},\n"
        "  \"cross_term_equation\": {\"cross_term\": %.6e, \"drift_shift\": %.6e},\n"
        "  \"drift_shift_equation\": {\"cross_term\": %.6e, \"drift_shift\": %.6e},\n"
        "  \"canonical_variant\": \"%s\"\n"
        "}\n",
        params.r, params.mu, params.sigma, params.gamma, params.epsilon, params.s_rho,
        params.horizon, residual_cross_term_form_cross_term,
        residual_cross_term_form_drift_shift, residual_drift_form_cross_term,
        residual_drift_form_drift_shift,
        canonical == NuVariant::cross_term ? "cross_term" : "drift_shift");
    return buf;
}

AdjudicationReport adjudicate(const MertonParams& params) {
    std::vector<double> t_grid, x_grid;
    for (int i = 0; i <= 16; ++i) t_grid.push_back(params.horizon * i / 16.0);
    for (int j = 1; j <= 16; ++j) x_grid.push_back(0.25 * j);
    AdjudicationReport report;
    report.residual_cross_term_form_cross_term =
        hjb_residual(params, NuVariant::cross_term, t_grid, x_grid);
    report.residual_cross_term_form_drift_shift =
        hjb_residual(params, NuVariant::drift_shift, t_grid, x_grid);
    report.residual_drift_form_cross_term =
        hjb_residual_drift_form(params, NuVariant::cross_term, t_grid, x_grid);
    report.residual_drift_form_drift_shift =
        hjb_residual_drift_form(params, NuVariant::drift_shift, t_grid, x_grid);
    report.canonical =
        report.residual_cross_term_form_cross_term <= report.residual_cross_term_form_drift_shift
            ? NuVariant::cross_term
            : NuVariant::drift_shift;
    return report;
}

} // namespace riskaverse::merton
