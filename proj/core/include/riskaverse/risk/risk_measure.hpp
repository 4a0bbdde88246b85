#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riskaverse/common.hpp"
#include "riskaverse/risk/discrete_distribution.hpp"

namespace riskaverse {

enum class MeasureKind { expectation, mean_semi_deviation, avar };

/// Which coherent measure to apply, plus the rule that maps a time step to
/// an effective risk level. For the mean semi-deviation the divisible
/// scaling is beta * sqrt(dt); AVaR carries no divisible scaling and its
/// level is always used as given.
struct RiskSpec {
    MeasureKind kind = MeasureKind::expectation;
    double order = 1.0;  // p >= 1, semi-deviation only
    double level = 0.0;  // beta in [0,1] (semi-deviation) or alpha in (0,1) (AVaR)
    bool scale_level_with_dt = true;

    static RiskSpec expectation();
    static RiskSpec semi_deviation(double p, double beta, bool scale_with_dt = true);
    static RiskSpec avar(double alpha);

    /// The per-step measure for a step of length dt (applies the scaling rule).
    RiskSpec per_step(double dt) const;

    void validate() const;
    std::string describe() const;
};

/// rho(Y): the seller's ask value of the payoff distribution.
/// Semi-deviation: E[Y] + beta * || (Y - E[Y])_+ ||_p.
/// AVaR: mean of the upper alpha-tail, exact on finite supports.
double evaluate(const RiskSpec& measure, const DiscreteDistribution& dist);

/// -rho(-Y): the buyer's bid value. Never exceeds evaluate().
double bid_value(const RiskSpec& measure, const DiscreteDistribution& dist);

/// Non-allocating two-point kernels for lattice backward induction.
/// `p_up` is the probability of `y_up`.
double evaluate_two_point(const RiskSpec& measure, double y_up, double y_down, double p_up);
double two_point_value(const RiskSpec& measure, Side side, double y_up, double y_down,
                       double p_up);

/// Per-unit-time risk of a Gaussian increment under the scaled semi-deviation
/// family: beta * (2*pi)^(-1/(2p)) * 2^(1/2 - 1/(2p)) * Gamma((p+1)/2)^(1/p),
/// equivalently beta * E[(W_+)^p]^(1/p) for W standard normal.
double s_rho(double p, double beta);

/// rho_dt(sqrt(dt) * W) / dt for each dt, evaluated by high-accuracy
/// quadrature of the Gaussian positive-part moment with the scaled level
/// beta * sqrt(dt). The family is scale-invariant per step, so every entry
/// equals s_rho(p, beta) up to quadrature error.
std::vector<double> s_rho_limit_probe(double p, double beta,
                                      const std::vector<double>& dt_sequence);

struct AxiomCheck {
    double worst_violation = 0.0;
    bool passed = true;
};

/// Seeded randomized check of the coherence axioms plus law invariance.
struct AxiomReport {
    AxiomCheck monotonicity;             // Y <= Y'  =>  rho(Y) <= rho(Y')
    AxiomCheck translation_equivariance; // rho(Y + c) = rho(Y) + c
    AxiomCheck subadditivity;            // rho(Y + Y') <= rho(Y) + rho(Y')
    AxiomCheck positive_homogeneity;     // rho(lambda Y) = lambda rho(Y)
    AxiomCheck law_invariance;           // representation-independent
    int trials = 0;
    double tolerance = 0.0;

    bool all_passed() const;
    std::string summary(const std::string& label) const;
};

AxiomReport axiom_report(const RiskSpec& measure, int trials, std::uint64_t seed,
                         double tolerance = 1e-10);

} // namespace riskaverse
