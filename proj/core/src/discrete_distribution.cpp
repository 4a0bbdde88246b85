#include "riskaverse/risk/discrete_distribution.hpp"

#include <cmath>
#include <utility>

#include "riskaverse/errors.hpp"

namespace riskaverse {

DiscreteDistribution::DiscreteDistribution(std::vector<double> y, std::vector<double> p)
    : outcomes(std::move(y)), probabilities(std::move(p)) {
    validate();
}

void DiscreteDistribution::validate() const {
    if (outcomes.empty() || outcomes.size() != probabilities.size()) {
        throw ValidationError("distribution: outcomes and probabilities must have equal, nonzero length");
    }
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ValidationError("distribution: probabilities must be nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("distribution: probabilities sum to " + std::to_string(total) +
                              ", expected 1 within 1e-12");
    }
    for (double y : outcomes) {
        if (!std::isfinite(y)) throw ValidationError("distribution: outcomes must be finite");
    }
}

double DiscreteDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) m += probabilities[i] * outcomes[i];
    return m;
}

DiscreteDistribution DiscreteDistribution::negated() const {
    DiscreteDistribution neg;
    neg.probabilities = probabilities;
    neg.outcomes.reserve(outcomes.size());
    for (double y : outcomes) neg.outcomes.push_back(-y);
    return neg;
}

DiscreteDistribution random_distribution(Xoshiro256& rng) {
    const int k = 2 + static_cast<int>(rng.uniform() * 19.0);  // 2..20
    std::vector<double> y(k), p(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        y[i] = rng.uniform(-10.0, 10.0);
        p[i] = rng.uniform();
        total += p[i];
    }
    for (int i = 0; i < k; ++i) p[i] /= total;
    // Normalization leaves a last-ulp remainder; absorb it into the largest atom.
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += p[i];
    p[0] += 1.0 - sum;
    DiscreteDistribution dist;
    dist.outcomes = std::move(y);
    dist.probabilities = std::move(p);
    dist.validate();
    return dist;
}

} // namespace riskaverse
