#include "riskaverse/lattice/binomial_tree.hpp"

#include <cmath>
#include <string>

#include "riskaverse/errors.hpp"

namespace riskaverse {

double BinomialTree::node_value(int level, int ups) const {
    return s0 * std::exp(sigma * std::sqrt(dt) * (2.0 * ups - level));
}

BinomialTree build_tree(double s0, double r, double sigma, double horizon, int steps) {
    if (!(s0 > 0.0)) throw ParameterError("build_tree: S0 must be positive");
    if (!(sigma > 0.0)) throw ParameterError("build_tree: sigma must be positive");
    if (!(horizon > 0.0)) throw ParameterError("build_tree: horizon must be positive");
    if (steps < 1) throw ParameterError("build_tree: need at least one step");
    if (steps > 1000000) throw ParameterError("build_tree: step count capped at 1e6");

    BinomialTree tree;
    tree.s0 = s0;
    tree.r = r;
    tree.sigma = sigma;
    tree.horizon = horizon;
    tree.steps = steps;
    tree.dt = horizon / steps;
    const double sq = std::sqrt(tree.dt);
    tree.up = std::exp(sigma * sq);
    tree.down = std::exp(-sigma * sq);
    tree.p_up = (std::exp(r * tree.dt) - tree.down) / (tree.up - tree.down);
    if (!(tree.p_up > 0.0)) {
        throw ParameterError("build_tree: p <= 0, requires r*sqrt(dt) > -sigma (got r*sqrt(dt) = " +
                             std::to_string(r * sq) + ", sigma = " + std::to_string(sigma) + ")");
    }
    if (!(tree.p_up < 1.0)) {
        throw ParameterError("build_tree: p >= 1, requires r*sqrt(dt) < sigma (got r*sqrt(dt) = " +
                             std::to_string(r * sq) + ", sigma = " + std::to_string(sigma) + ")");
    }
    return tree;
}

double risk_adjusted_prob(double p, double beta_dt) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("risk_adjusted_prob: p must lie in (0, 1)");
    if (!(beta_dt >= 0.0)) throw ParameterError("risk_adjusted_prob: beta must be >= 0");
    const double adjusted = p * (1.0 - beta_dt * (1.0 - p));
    if (!(adjusted >= 0.0 && adjusted <= 1.0)) {
        throw ParameterError("risk_adjusted_prob: reweighted probability " +
                             std::to_string(adjusted) + " outside [0, 1]");
    }
    return adjusted;
}

} // namespace riskaverse
