#pragma once

#include <optional>
#include <vector>

#include "riskaverse/closedform/european.hpp"
#include "riskaverse/common.hpp"
#include "riskaverse/pde/european_solver.hpp"
#include "riskaverse/pde/grid.hpp"

namespace riskaverse {

struct AmerParams : EuroParams {
    PayoffKind kind = PayoffKind::put;
};

/// Exercise boundary samples L(t); an empty exercise region at a time level
/// is encoded as an absent entry. For the put: L(T) = K within one grid
/// cell, L(t) <= K throughout, and the bid boundary is nondecreasing in t.
struct ExerciseBoundary {
    Side side = Side::bid;
    std::vector<double> times;
    std::vector<std::optional<double>> levels;

    bool region_empty() const;
};

struct AmericanOptions {
    double theta = 0.5;
    int rannacher_steps = 2;
    double psor_omega = 1.2;      // projected SOR relaxation
    double psor_tol = 1e-9;       // per-step max-update tolerance
    int psor_max_iters = 20000;   // beyond this, fall back to the penalty solve
    double penalty = 1e7;
    int max_policy_sweeps = 50;
    /// When true, the drift sign is re-derived from the slice every sweep
    /// instead of fixed from the payoff's monotonicity. Needed for
    /// non-monotone payoffs; for calls/puts both paths must agree.
    bool policy_iteration = false;
    double boundary_tol = 1e-7;   // continuation threshold on V - payoff
    DriftStencil drift_stencil = DriftStencil::hybrid;
};

struct AmericanResult {
    PDESolution solution;
    ExerciseBoundary boundary;
    AmerParams params;
    Side side;
};

/// Obstacle problem min(-(L V) + rV - V_t, V - payoff) = 0 marched backward
/// with projected SOR per step (penalty method as fallback), where L carries
/// the side/payoff-appropriate drift sign. V >= payoff everywhere; for the
/// put bid the boundary satisfies the smooth-pasting slope -1 up to
/// discretization error.
AmericanResult solve_american(const AmerParams& params, Side side, const Grid& grid,
                              const AmericanOptions& options = {});

/// Boundary extraction at the given continuation threshold: per time level
/// the first node where V - payoff exceeds the tolerance, refined by linear
/// interpolation between the straddling nodes.
ExerciseBoundary exercise_boundary(const AmericanResult& result, double tolerance);

/// American minus European value at (t = 0, x = spot), both on the same
/// grid and scheme; never materially negative.
double early_exercise_premium(const AmerParams& params, Side side, const Grid& grid,
                              const AmericanOptions& options = {});

} // namespace riskaverse
