#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "riskaverse/common.hpp"
#include "riskaverse/lattice/binomial_tree.hpp"
#include "riskaverse/lattice/nested_pricing.hpp"
#include "riskaverse/math/rng.hpp"
#include "riskaverse/risk/risk_measure.hpp"

// Independent verifiers. Nothing here may reuse the implementation path it
// checks: the normal CDF is a separately coded rational approximation and
// the nested evaluation is a literal non-recombining recursion.

namespace riskaverse::oracle {

/// Hart-style rational approximation of the standard normal CDF, double
/// precision over |z| < 37. Deliberately distinct from the erfc route used
/// by the pricing formulas.
double norm_cdf_reference(double z);

/// Quantile by Newton iteration on norm_cdf_reference.
double norm_quantile_reference(double u);

/// Classical lognormal value with continuous yield q; the reference for the
/// closed forms (q = -+ s_rho sigma) and the lattice limit (q = beta sigma / 2).
double bs_reference(double x, double strike, double r, double q, double sigma, double tau,
                    PayoffKind kind);

/// Upper-tail Gaussian expected shortfall at level alpha for N(0, variance).
double gaussian_avar_reference(double alpha, double variance);

/// Reproducible sampler: identical seed, identical stream.
class SeededSampler {
public:
    explicit SeededSampler(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return engine_.uniform(); }
    double uniform(double lo, double hi) { return engine_.uniform(lo, hi); }
    double normal() { return norm_quantile_reference(engine_.uniform()); }

private:
    Xoshiro256 engine_;
};

/// Literal recursive descent over all 2^n paths (memoization intentionally
/// absent). Refuses n > 24.
double enumerate_nested(const BinomialTree& tree, const RiskSpec& measure,
                        const std::function<double(double)>& payoff, Side side,
                        const NestedPricingOptions& options = {});

struct McEstimate {
    double estimate;
    double stderr_;
};

/// Empirical per-stage conditional semi-deviation of the Gaussian increment,
/// summed across the telescoping stages. `samples` draws per stage; standard
/// error by batch means (fixed batch count, so halving samples doubles the
/// variance).
McEstimate mc_nested_wiener(double horizon, int stages, double p_order, double beta,
                            int samples, std::uint64_t seed);

struct SelftestResult {
    std::string report;  // deterministic given the seed
    bool passed;
};

/// Agreement suite between the primary implementations and the oracles.
SelftestResult selftest(std::uint64_t seed);

} // namespace riskaverse::oracle
