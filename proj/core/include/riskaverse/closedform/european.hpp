#pragma once

#include <utility>
#include <vector>

#include "riskaverse/common.hpp"

namespace riskaverse {

/// Market and contract parameters for a European valuation at time t.
/// s_rho is the risk-aversion coefficient; it carries rate/volatility units,
/// the same unit as the Sharpe ratio.
struct EuroParams {
    double x = 1.0;       // spot
    double strike = 1.0;  // K
    double r = 0.0;       // riskless rate
    double sigma = 0.2;   // volatility
    double t = 0.0;       // valuation time
    double expiry = 1.0;  // T
    double s_rho = 0.0;   // risk aversion, >= 0

    double tau() const { return expiry - t; }
    void validate() const;
};

enum class Sign { plus, minus };

/// d1/d2 of the spread-adjusted lognormal kernel:
///   d1^+- = [ln(x/K) + (r +- s_rho*sigma + sigma^2/2) tau] / (sigma sqrt(tau)),
///   d2^+- = d1^+- - sigma sqrt(tau).
/// Throws DomainError at tau = 0; degenerate expiries are the caller's
/// payoff, not a d-value.
std::pair<double, double> d_values(const EuroParams& params, Sign sign);

/// Plain lognormal value with a continuous spread rate q on the underlying.
/// One kernel serves three readings of q: the risk spread (+-s_rho*sigma),
/// the lattice-limit spread (beta*sigma/2) and a foreign rate. At tau = 0
/// the payoff is returned exactly.
double european_value(double x, double strike, double r, double q, double sigma, double tau,
                      PayoffKind kind);

/// Call values: ask = x e^{+s sigma tau} Phi(d1^+) - K e^{-r tau} Phi(d2^+),
/// bid the minus branch. bid <= ask.
double call_value(const EuroParams& params, Side side);

/// Put values: the minus branch solves the ask problem, the plus branch the
/// bid problem; again bid <= ask.
double put_value(const EuroParams& params, Side side);

/// The spread rate q on the underlying that a given payoff/side pair sees.
double risk_spread_rate(PayoffKind kind, Side side, double s_rho, double sigma);

struct SpreadPoint {
    double s_rho;
    double bid;
    double ask;
    double spread;  // ask - bid, nonnegative, zero at s_rho = 0
};

/// Bid/ask/spread across a grid of risk levels for one payoff kind.
std::vector<SpreadPoint> spread_curve(const EuroParams& params, PayoffKind kind,
                                      const std::vector<double>& s_rho_grid);

/// Signed Sharpe-ratio-style coefficient (mu_averse - r) / sigma; the rate
/// shift r - mu_averse is the corresponding Z-spread.
double z_spread(double mu_averse, double r, double sigma);

/// Foreign-exchange call with domestic rate r_d and foreign rate r_f.
/// garman_kohlhagen_value(x, K, r, s_rho*sigma, sigma, tau) reproduces the
/// call bid exactly.
double garman_kohlhagen_value(double x, double strike, double r_d, double r_f, double sigma,
                              double tau);

} // namespace riskaverse
