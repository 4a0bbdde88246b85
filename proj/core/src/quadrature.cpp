#include "riskaverse/math/quadrature.hpp"

#include <algorithm>

#include "riskaverse/errors.hpp"

namespace riskaverse {

GaussLegendre::GaussLegendre(int order) {
    if (order < 2) throw DomainError("GaussLegendre: order must be >= 2");
    const int n = order;
    nodes_.resize(n);
    weights_.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
}

namespace {

const GaussLegendre& panel_rule() {
    static const GaussLegendre rule(32);
    return rule;
}

std::vector<double> half_line_edges(double start) {
    // Geometric refinement toward the lower end, fixed coarse tail.
    std::vector<double> edges{start};
    const double span = 40.0 - start;
    static constexpr double fractions[] = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.05, 0.1,
                                           0.2,  0.35, 0.5,  0.65, 0.8,  1.0};
    for (double f : fractions) edges.push_back(start + f * span);
    return edges;
}

} // namespace

double std_normal_partial_expectation(const std::function<double(double)>& f, double lower) {
    if (lower >= 40.0) return 0.0;
    const auto g = [&f](double w) { return f(w) * norm_pdf(w); };
    return panel_rule().integrate_panels(g, half_line_edges(lower));
}

} // namespace riskaverse
