#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <vector>

#include "riskaverse/math/normal.hpp"

namespace riskaverse {

/// Gauss-Legendre rule on [-1, 1]. Nodes by Newton iteration on the Legendre
/// recurrence; accurate to machine precision for the orders used here.
class GaussLegendre {
public:
    explicit GaussLegendre(int order);

    /// Integrate f over [a, b].
    template <std::invocable<double> F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            acc += weights_[i] * f(mid + half * nodes_[i]);
        }
        return half * acc;
    }

    /// Integrate f over consecutive panels given by `edges`.
    template <std::invocable<double> F>
    double integrate_panels(F&& f, const std::vector<double>& edges) const {
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            acc += integrate(f, edges[k], edges[k + 1]);
        }
        return acc;
    }

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// E[f(W) 1{W >= lower}] for W ~ N(0,1). The lower edge starts the first
/// panel, so positive-part integrands with their kink at `lower` stay smooth
/// on every panel; the density beyond w = 40 underflows to zero.
double std_normal_partial_expectation(const std::function<double(double)>& f, double lower);

} // namespace riskaverse
