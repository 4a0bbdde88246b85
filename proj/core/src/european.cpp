#include "riskaverse/closedform/european.hpp"

#include <algorithm>
#include <cmath>

#include "riskaverse/errors.hpp"
#include "riskaverse/math/normal.hpp"

namespace riskaverse {

void EuroParams::validate() const {
    if (!(x > 0.0)) throw ValidationError("euro params: spot must be positive");
    if (!(strike > 0.0)) throw ValidationError("euro params: strike must be positive");
    if (!(sigma > 0.0)) throw ValidationError("euro params: sigma must be positive");
    if (!(expiry >= t)) {
        throw ValidationError("euro params: expiry must not precede valuation time");
    }
    if (!(t >= 0.0)) throw ValidationError("euro params: valuation time must be >= 0");
    if (!(s_rho >= 0.0)) throw ValidationError("euro params: s_rho must be >= 0");
}

std::pair<double, double> d_values(const EuroParams& params, Sign sign) {
    params.validate();
    const double tau = params.tau();
    if (tau <= 0.0) {
        throw DomainError("d_values: degenerate expiry, evaluate the payoff directly");
    }
    const double spread = sign == Sign::plus ? params.s_rho * params.sigma
                                             : -params.s_rho * params.sigma;
    const double vol_sqrt_tau = params.sigma * std::sqrt(tau);
    const double d1 = (std::log(params.x / params.strike) +
                       (params.r + spread + 0.5 * params.sigma * params.sigma) * tau) /
                      vol_sqrt_tau;
    return {d1, d1 - vol_sqrt_tau};
}

double european_value(double x, double strike, double r, double q, double sigma, double tau,
                      PayoffKind kind) {
    if (tau == 0.0) {
        return kind == PayoffKind::call ? std::max(x - strike, 0.0)
                                        : std::max(strike - x, 0.0);
    }
    const double vol_sqrt_tau = sigma * std::sqrt(tau);
    const double d1 = (std::log(x / strike) + (r - q + 0.5 * sigma * sigma) * tau) / vol_sqrt_tau;
    const double d2 = d1 - vol_sqrt_tau;
    const double fwd = x * std::exp(-q * tau);
    const double disc_k = strike * std::exp(-r * tau);
    if (kind == PayoffKind::call) return fwd * norm_cdf(d1) - disc_k * norm_cdf(d2);
    return disc_k * norm_cdf(-d2) - fwd * norm_cdf(-d1);
}

double risk_spread_rate(PayoffKind kind, Side side, double s_rho, double sigma) {
    // Call ask grows the spot (q = -s*sigma); the put pairing is mirrored.
    const double q = s_rho * sigma;
    if (kind == PayoffKind::call) return side == Side::ask ? -q : q;
    return side == Side::ask ? q : -q;
}

double call_value(const EuroParams& params, Side side) {
    params.validate();
    return european_value(params.x, params.strike, params.r,
                          risk_spread_rate(PayoffKind::call, side, params.s_rho, params.sigma),
                          params.sigma, params.tau(), PayoffKind::call);
}

double put_value(const EuroParams& params, Side side) {
    params.validate();
    return european_value(params.x, params.strike, params.r,
                          risk_spread_rate(PayoffKind::put, side, params.s_rho, params.sigma),
                          params.sigma, params.tau(), PayoffKind::put);
}

std::vector<SpreadPoint> spread_curve(const EuroParams& params, PayoffKind kind,
                                      const std::vector<double>& s_rho_grid) {
    std::vector<SpreadPoint> curve;
    curve.reserve(s_rho_grid.size());
    for (double s : s_rho_grid) {
        if (!(s >= 0.0)) throw DomainError("spread_curve: s_rho grid entries must be >= 0");
        EuroParams p = params;
        p.s_rho = s;
        const double bid = kind == PayoffKind::call ? call_value(p, Side::bid)
                                                    : put_value(p, Side::bid);
        const double ask = kind == PayoffKind::call ? call_value(p, Side::ask)
                                                    : put_value(p, Side::ask);
        curve.push_back({s, bid, ask, ask - bid});
    }
    return curve;
}

double z_spread(double mu_averse, double r, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("z_spread: sigma must be positive");
    return (mu_averse - r) / sigma;
}

double garman_kohlhagen_value(double x, double strike, double r_d, double r_f, double sigma,
                              double tau) {
    return european_value(x, strike, r_d, r_f, sigma, tau, PayoffKind::call);
}

} // namespace riskaverse
