#pragma once

#include <vector>

namespace riskaverse {

enum class Spacing { uniform, log_uniform };

/// Space-time grid for the terminal value problems. Log-uniform spacing
/// requires x_min > 0.
struct Grid {
    double x_min = 0.0;
    double x_max = 4.0;
    int nx = 200;
    int nt = 200;
    Spacing spacing = Spacing::uniform;

    void validate() const;
    std::vector<double> nodes() const;
};

} // namespace riskaverse
