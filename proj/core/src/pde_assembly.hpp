#pragma once

// Internal finite-difference machinery shared by the European and American
// solvers. Not installed.

#include <cmath>
#include <vector>

#include "riskaverse/common.hpp"
#include "riskaverse/pde/european_solver.hpp"

namespace riskaverse::detail {

// Tridiagonal rows of the spatial operator
//   (L V)_j = a_j V_x + D_j V_xx - r V
// on possibly non-uniform nodes, with the drift term differenced per the
// chosen stencil.
struct OperatorRows {
    std::vector<double> lower, diag, upper;
};

inline int side_multiplier(Side side) { return side == Side::ask ? +1 : -1; }

// Effective drift coefficient at node j for policy sign w in {-1, 0, +1}:
// (r + s_rho * sigma * w) * x.
inline double effective_drift(double r, double s_rho, double sigma, int w, double x) {
    return (r + s_rho * sigma * w) * x;
}

inline OperatorRows assemble_operator(const std::vector<double>& x, double r, double s_rho,
                                      double sigma, const std::vector<signed char>& policy,
                                      DriftStencil stencil) {
    const std::size_t n = x.size();
    OperatorRows rows;
    rows.lower.assign(n, 0.0);
    rows.diag.assign(n, 0.0);
    rows.upper.assign(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double hm = x[j] - x[j - 1];
        const double hp = x[j + 1] - x[j];
        const double diffusion = 0.5 * sigma * sigma * x[j] * x[j];
        double lo = 2.0 * diffusion / (hm * (hm + hp));
        double up = 2.0 * diffusion / (hp * (hm + hp));
        double di = -2.0 * diffusion / (hm * hp);
        const double a = effective_drift(r, s_rho, sigma, policy[j], x[j]);
        const bool central_ok = stencil == DriftStencil::hybrid &&
                                2.0 * diffusion >= std::max(a * hp, -a * hm);
        if (central_ok) {
            lo += -a * hp / (hm * (hm + hp));
            up += a * hm / (hp * (hm + hp));
            di += a * (hp - hm) / (hm * hp);
        } else if (a >= 0.0) {
            up += a / hp;
            di += -a / hp;
        } else {
            lo += -a / hm;
            di += a / hm;
        }
        rows.lower[j] = lo;
        rows.diag[j] = di - r;
        rows.upper[j] = up;
    }
    return rows;
}

// Sign field the side's extremum selects from the current slice; |V_x| below
// the dead zone contributes nothing to the risk term, encoded as 0.
inline void update_policy(const std::vector<double>& x, const std::vector<double>& v, Side side,
                          std::vector<signed char>& policy, double dead_zone) {
    if (policy.size() < 3) return;
    const int mult = side_multiplier(side);
    for (std::size_t j = 1; j + 1 < v.size(); ++j) {
        const double slope = (v[j + 1] - v[j - 1]) / (x[j + 1] - x[j - 1]);
        policy[j] = std::abs(slope) <= dead_zone ? 0 : static_cast<signed char>(mult * (slope > 0.0 ? 1 : -1));
    }
    policy.front() = policy[1];
    policy.back() = policy[policy.size() - 2];
}

// (L v)_j for interior j, given assembled rows.
inline double apply_row(const OperatorRows& rows, const std::vector<double>& v, std::size_t j) {
    return rows.lower[j] * v[j - 1] + rows.diag[j] * v[j] + rows.upper[j] * v[j + 1];
}

// Thomas algorithm for the implicit system; diag is destroyed.
class TridiagonalSolver {
public:
    explicit TridiagonalSolver(std::size_t n) : scratch_(n), rhs_(n) {}

    // Solves (I - theta*dt*L) v = rhs with Dirichlet first/last rows
    // (v[0] = rhs[0], v[n-1] = rhs[n-1]).
    void solve(const OperatorRows& rows, double theta_dt, const std::vector<double>& rhs,
               std::vector<double>& v) {
        const std::size_t n = rhs.size();
        scratch_[0] = 0.0;
        rhs_[0] = rhs[0];
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double a = -theta_dt * rows.lower[j];
            const double b = 1.0 - theta_dt * rows.diag[j];
            const double c = -theta_dt * rows.upper[j];
            const double m = b - a * scratch_[j - 1];
            scratch_[j] = c / m;
            rhs_[j] = (rhs[j] - a * rhs_[j - 1]) / m;
        }
        v[n - 1] = rhs[n - 1];
        rhs_[n - 1] = rhs[n - 1];
        for (std::size_t j = n - 1; j-- > 1;) {
            v[j] = rhs_[j] - scratch_[j] * v[j + 1];
        }
        v[0] = rhs[0];
    }

private:
    std::vector<double> scratch_;
    std::vector<double> rhs_;
};

} // namespace riskaverse::detail
