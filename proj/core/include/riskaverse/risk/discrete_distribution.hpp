#pragma once

#include <cstdint>
#include <vector>

#include "riskaverse/math/rng.hpp"

namespace riskaverse {

/// Finite outcome/probability pairs; the object risk measures evaluate.
struct DiscreteDistribution {
    std::vector<double> outcomes;       // payoff units
    std::vector<double> probabilities;  // nonnegative, sum to 1 within 1e-12

    DiscreteDistribution() = default;
    DiscreteDistribution(std::vector<double> y, std::vector<double> p);

    /// Throws ValidationError when the invariants do not hold.
    void validate() const;

    std::size_t size() const { return outcomes.size(); }
    double mean() const;

    /// The distribution of -Y (same probabilities, negated outcomes).
    DiscreteDistribution negated() const;
};

/// Random test distribution: support size 2..20, outcomes uniform on
/// [-10, 10], probabilities a normalized uniform draw. Covers degenerate
/// and near-degenerate cases.
DiscreteDistribution random_distribution(Xoshiro256& rng);

} // namespace riskaverse
