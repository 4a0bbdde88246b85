#include "riskaverse/american/american.hpp"

#include <algorithm>
#include <cmath>

#include "riskaverse/errors.hpp"
#include "pde_assembly.hpp"

namespace riskaverse {

namespace {

// Fixed drift sign for a monotone payoff: the side's extremum of y * V_x
// over {-1, +1} given the payoff's slope sign.
signed char monotone_policy_sign(PayoffKind kind, Side side) {
    const int slope = kind == PayoffKind::call ? +1 : -1;
    return static_cast<signed char>(detail::side_multiplier(side) * slope);
}

struct PsorOutcome {
    int iterations = 0;
    bool converged = false;
};

// Projected SOR for (I - theta*dt*L) v = rhs subject to v >= obstacle.
// Boundary rows are Dirichlet (already folded into rhs).
PsorOutcome psor_step(const detail::OperatorRows& rows, double theta_dt,
                      const std::vector<double>& rhs, const std::vector<double>& obstacle,
                      std::vector<double>& v, const AmericanOptions& opt) {
    const std::size_t n = v.size();
    PsorOutcome out;
    v[0] = std::max(rhs[0], obstacle[0]);
    v[n - 1] = std::max(rhs[n - 1], obstacle[n - 1]);
    for (out.iterations = 1; out.iterations <= opt.psor_max_iters; ++out.iterations) {
        double worst = 0.0;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double a = -theta_dt * rows.lower[j];
            const double b = 1.0 - theta_dt * rows.diag[j];
            const double c = -theta_dt * rows.upper[j];
            const double gs = (rhs[j] - a * v[j - 1] - c * v[j + 1]) / b;
            const double updated = std::max(obstacle[j], v[j] + opt.psor_omega * (gs - v[j]));
            worst = std::max(worst, std::abs(updated - v[j]));
            v[j] = updated;
        }
        if (worst <= opt.psor_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

// Penalty fallback: semi-smooth active-set iteration on
// (I - theta*dt*L) v + P * 1_{v < obstacle} (obstacle - v)_- = rhs.
bool penalty_step(const detail::OperatorRows& rows, double theta_dt,
                  const std::vector<double>& rhs, const std::vector<double>& obstacle,
                  std::vector<double>& v, const AmericanOptions& opt) {
    const std::size_t n = v.size();
    std::vector<char> active(n, 0), previous(n, 2);
    std::vector<double> mod_rhs(n), solved(n);
    detail::TridiagonalSolver tri(n);
    detail::OperatorRows mod = rows;
    for (int pass = 0; pass < 100; ++pass) {
        for (std::size_t j = 1; j + 1 < n; ++j) active[j] = v[j] <= obstacle[j] + opt.psor_tol;
        if (active == previous && pass > 0) return true;
        previous = active;
        mod = rows;
        mod_rhs = rhs;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            if (active[j]) {
                // Penalized diagonal: (1 - theta_dt*diag) + theta_dt*P.
                mod.diag[j] = rows.diag[j] - opt.penalty;
                mod_rhs[j] = rhs[j] + theta_dt * opt.penalty * obstacle[j];
            }
        }
        tri.solve(mod, theta_dt, mod_rhs, solved);
        v = solved;
    }
    return false;
}

} // namespace

bool ExerciseBoundary::region_empty() const {
    // Exercise at expiry itself is not early exercise; only interior times
    // count toward a nonempty region.
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        if (levels[i].has_value()) return false;
    }
    return true;
}

AmericanResult solve_american(const AmerParams& params, Side side, const Grid& grid,
                              const AmericanOptions& options) {
    params.validate();
    grid.validate();

    const std::vector<double> x = grid.nodes();
    const std::size_t nx = x.size();
    const int nt = grid.nt;
    const double dt = params.expiry / nt;
    const PayoffSpec spec = vanilla_payoff_spec(params, params.kind, side, grid);

    PDESolution sol;
    sol.x = x;
    sol.stencil = options.drift_stencil;
    sol.times.resize(static_cast<std::size_t>(nt) + 1);
    for (int i = 0; i <= nt; ++i) sol.times[i] = dt * i;
    sol.values.assign(sol.times.size(), std::vector<double>(nx, 0.0));
    sol.policies.assign(sol.times.size(), std::vector<signed char>(nx, 0));
    sol.step_theta.assign(static_cast<std::size_t>(nt), options.theta);
    sol.iterations_per_step.assign(static_cast<std::size_t>(nt), 0);

    std::vector<double> obstacle(nx);
    for (std::size_t j = 0; j < nx; ++j) obstacle[j] = spec.payoff(x[j]);

    auto& terminal = sol.values[static_cast<std::size_t>(nt)];
    terminal = obstacle;
    const double dead_zone = 1e-13 * (1.0 + params.strike);
    const signed char fixed_sign = monotone_policy_sign(params.kind, side);
    if (options.policy_iteration) {
        detail::update_policy(x, terminal, side, sol.policies[static_cast<std::size_t>(nt)],
                              dead_zone);
    } else {
        sol.policies[static_cast<std::size_t>(nt)].assign(nx, fixed_sign);
    }

    std::vector<double> rhs(nx), v(nx);
    std::vector<signed char> policy(nx, fixed_sign);

    for (int step = nt - 1; step >= 0; --step) {
        const std::size_t i = static_cast<std::size_t>(step);
        const bool rannacher = (nt - 1 - step) < options.rannacher_steps;
        const double theta = rannacher ? 1.0 : options.theta;
        sol.step_theta[i] = theta;
        const double tau_new = params.expiry - sol.times[i];

        const auto& old_slice = sol.values[i + 1];
        const auto explicit_rows = detail::assemble_operator(
            x, params.r, params.s_rho, params.sigma, sol.policies[i + 1],
            options.drift_stencil);
        rhs[0] = std::max(spec.lower_boundary(tau_new), obstacle[0]);
        rhs[nx - 1] = std::max(spec.upper_boundary(tau_new), obstacle[nx - 1]);
        for (std::size_t j = 1; j + 1 < nx; ++j) {
            rhs[j] = old_slice[j] +
                     (1.0 - theta) * dt * detail::apply_row(explicit_rows, old_slice, j);
        }

        v = old_slice;  // warm start
        policy = sol.policies[i + 1];
        int total_iters = 0;
        bool stable = false;
        for (int sweep = 0; sweep < options.max_policy_sweeps; ++sweep) {
            const auto rows = detail::assemble_operator(x, params.r, params.s_rho, params.sigma,
                                                        policy, options.drift_stencil);
            PsorOutcome outcome = psor_step(rows, theta * dt, rhs, obstacle, v, options);
            if (!outcome.converged) {
                if (!penalty_step(rows, theta * dt, rhs, obstacle, v, options)) {
                    throw SolverError("solve_american: PSOR stalled and the penalty fallback "
                                      "did not converge at step " + std::to_string(step));
                }
            }
            total_iters += outcome.iterations;
            if (!options.policy_iteration) {
                stable = true;
                break;
            }
            std::vector<signed char> refreshed(nx, 0);
            detail::update_policy(x, v, side, refreshed, dead_zone);
            if (refreshed == policy) {
                stable = true;
                break;
            }
            policy = refreshed;
        }
        if (!stable) {
            throw SolverError("solve_american: policy iteration did not stabilize at step " +
                              std::to_string(step));
        }
        sol.values[i] = v;
        sol.policies[i] = policy;
        sol.iterations_per_step[i] = total_iters;
    }

    AmericanResult result;
    result.solution = std::move(sol);
    result.params = params;
    result.side = side;
    result.boundary = exercise_boundary(result, options.boundary_tol);
    return result;
}

ExerciseBoundary exercise_boundary(const AmericanResult& result, double tolerance) {
    const auto& sol = result.solution;
    const std::size_t nx = sol.x.size();
    const double strike = result.params.strike;
    const PayoffKind kind = result.params.kind;

    ExerciseBoundary boundary;
    boundary.side = result.side;
    boundary.times = sol.times;
    boundary.levels.resize(sol.times.size());

    std::vector<double> gap(nx);
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        const auto& row = sol.values[i];
        for (std::size_t j = 0; j < nx; ++j) {
            const double payoff = kind == PayoffKind::call ? std::max(sol.x[j] - strike, 0.0)
                                                           : std::max(strike - sol.x[j], 0.0);
            gap[j] = row[j] - payoff;
        }
        std::optional<double> level;
        if (kind == PayoffKind::put) {
            // Exercise region sits below the boundary; scan upward for the
            // first continuation node.
            std::size_t first = nx;
            for (std::size_t j = 0; j < nx; ++j) {
                if (gap[j] > tolerance) {
                    first = j;
                    break;
                }
            }
            if (first == 0) {
                level = std::nullopt;  // no exercise anywhere
            } else if (first == nx) {
                level = strike;  // whole domain at the payoff (terminal slice)
            } else {
                const double g0 = gap[first - 1], g1 = gap[first];
                const double frac = (tolerance - g0) / (g1 - g0);
                level = std::min(sol.x[first - 1] + frac * (sol.x[first] - sol.x[first - 1]),
                                 strike);
            }
        } else {
            // Call: exercise region sits above the boundary.
            std::size_t last = nx;
            for (std::size_t j = nx; j-- > 0;) {
                if (gap[j] > tolerance) {
                    last = j;
                    break;
                }
            }
            if (last == nx - 1) {
                level = std::nullopt;
            } else if (last == nx) {
                level = strike;
            } else {
                const double g0 = gap[last], g1 = gap[last + 1];
                const double frac = (g0 - tolerance) / (g0 - g1);
                level = std::max(sol.x[last] + frac * (sol.x[last + 1] - sol.x[last]), strike);
            }
        }
        boundary.levels[i] = level;
    }
    return boundary;
}

double early_exercise_premium(const AmerParams& params, Side side, const Grid& grid,
                              const AmericanOptions& options) {
    const AmericanResult amer = solve_american(params, side, grid, options);
    SolverOptions euro_options;
    euro_options.theta = options.theta;
    euro_options.rannacher_steps = options.rannacher_steps;
    euro_options.max_policy_sweeps = options.max_policy_sweeps;
    euro_options.drift_stencil = options.drift_stencil;
    const PDESolution euro = solve_european(params, params.kind, side, grid, euro_options);
    return amer.solution.value_at(0, params.x) - euro.value_at(0, params.x);
}

} // namespace riskaverse
