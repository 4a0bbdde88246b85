#pragma once

#include <string>
#include <vector>

namespace riskaverse::merton {

/// Consumption-investment problem under power utility x^{1-gamma}/(1-gamma)
/// with a risk spread s_rho on the market drift. epsilon weights the
/// terminal payout; pi* is interior only while s_rho <= (mu - r)/sigma.
struct MertonParams {
    double r = 0.01;
    double mu = 0.1;
    double sigma = 0.3;
    double gamma = 0.4;
    double epsilon = 0.1;
    double s_rho = 0.0;
    double horizon = 4.0;  // T
    double w0 = 1.0;       // initial wealth

    void validate() const;
};

/// Two competing forms of the growth constant disagree for s_rho > 0: one
/// carries an additive s_rho/sigma cross term, the other reads the risk
/// level as a pure drift shift mu -> mu - s_rho sigma. Both stay available
/// and are adjudicated numerically by the equation residuals; neither is
/// silently preferred.
enum class NuVariant { cross_term, drift_shift };

double nu(const MertonParams& params, NuVariant variant);

/// Closed-form solution bundle: f(t) = epsilon e^{-nu tau} + (1 - e^{-nu tau})/nu
/// (continuous through nu = 0), value R(t,x) = f(t)^gamma x^{1-gamma}/(1-gamma),
/// consumption c(t,x) = x / f(t), allocation pi* = max((mu-r-s_rho sigma)
/// / (sigma^2 gamma), 0).
struct MertonSolution {
    MertonParams params;
    NuVariant variant;
    double growth;    // nu
    double pi_star;   // constant optimal risky fraction

    double f(double t) const;
    double f_prime(double t) const;       // nu f - 1, evaluated in closed form
    double value(double t, double x) const;
    double consumption(double t, double x) const;
};

MertonSolution solution(const MertonParams& params, NuVariant variant);

/// Max relative residual of the reduced dynamic-programming equation in its
/// cross-term form ((mu-r)^2 + s_rho^2 sigma^2 quadratic plus the
/// s_rho/sigma |R_x| term), evaluated with the exact partial derivatives of
/// the ansatz on the given grids.
double hjb_residual(const MertonParams& params, NuVariant variant,
                    const std::vector<double>& t_grid, const std::vector<double>& x_grid);

/// Same, for the fully maximized first-order form whose quadratic term is
/// (mu - r - s_rho sigma)^2: the reading in which the spread only shifts
/// the drift.
double hjb_residual_drift_form(const MertonParams& params, NuVariant variant,
                               const std::vector<double>& t_grid,
                               const std::vector<double>& x_grid);

/// RK4 integration of f' = nu f - 1 backward from f(T) = epsilon against the
/// closed form; returns the max deviation (must be <= 1e-8).
double ode_check(const MertonParams& params, NuVariant variant, int steps = 4000);

struct ConsumptionPoint {
    double s_rho;
    double consumption;  // c(0, w0)
    double pi_star;
};

/// Initial consumption and allocation across risk levels; every grid entry
/// must satisfy s_rho < (mu - r)/sigma.
std::vector<ConsumptionPoint> consumption_curve(const MertonParams& params,
                                                const std::vector<double>& s_rho_grid,
                                                NuVariant variant = NuVariant::cross_term);

struct AdjudicationReport {
    double residual_cross_term_form_cross_term;
    double residual_cross_term_form_drift_shift;
    double residual_drift_form_cross_term;
    double residual_drift_form_drift_shift;
    NuVariant canonical;  // smaller residual under the cross-term form
    std::string to_json(const MertonParams& params) const;
};

/// Evaluate both variants against both equation forms on a default grid and
/// record which one the cross-term form selects.
AdjudicationReport adjudicate(const MertonParams& params);

} // namespace riskaverse::merton
