#pragma once

#include <cstdint>

namespace riskaverse {

/// Recombining binomial model: moves e^{+-sigma sqrt(dt)} with risk-neutral
/// up probability p = (e^{r dt} - e^{-sigma sqrt(dt)}) / (e^{sigma sqrt(dt)} -
/// e^{-sigma sqrt(dt)}). One-step expectation reproduces e^{r dt} growth.
struct BinomialTree {
    double s0;
    double r;
    double sigma;
    double horizon;  // T
    int steps;       // n
    double dt;       // T / n
    double up;       // e^{sigma sqrt(dt)}
    double down;     // e^{-sigma sqrt(dt)}
    double p_up;     // in (0, 1)

    /// Stock value after `ups` up-moves at level `level`.
    double node_value(int level, int ups) const;
};

/// Construct the tree; throws ParameterError naming the violated bound when
/// p falls outside (0, 1), i.e. when |r| sqrt(dt) >= sigma.
BinomialTree build_tree(double s0, double r, double sigma, double horizon, int steps);

/// The reweighted up probability p(1 - beta_dt (1 - p)) the one-step
/// semi-deviation bid induces.
double risk_adjusted_prob(double p, double beta_dt);

} // namespace riskaverse
