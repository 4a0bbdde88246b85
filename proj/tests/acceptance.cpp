// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// unexpected failure. Pass the CLI binary path as argv[1] so the determinism
// criterion can exercise the installed command end to end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "riskaverse/american/american.hpp"
#include "riskaverse/closedform/european.hpp"
#include "riskaverse/lattice/nested_pricing.hpp"
#include "riskaverse/math/quadrature.hpp"
#include "riskaverse/merton/merton.hpp"
#include "riskaverse/oracle/oracle.hpp"
#include "riskaverse/pde/european_solver.hpp"
#include "riskaverse/risk/risk_measure.hpp"

using namespace riskaverse;

namespace {

struct Harness {
    int failures = 0;
    int expected_failures = 0;

    void run(const char* name, const std::function<bool(std::string&)>& body,
             bool failure_expected = false) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& err) {
            detail = std::string("exception: ") + err.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const char* tag = ok ? "[PASS]" : (failure_expected ? "[FAIL][expected]" : "[FAIL]");
        std::printf("%s %s (%.2f s)%s%s\n", tag, name, seconds, detail.empty() ? "" : " -- ",
                    detail.c_str());
        if (!ok) {
            if (failure_expected) {
                ++expected_failures;
            } else {
                ++failures;
            }
        }
    }
};

bool check(bool condition, std::string& detail, const std::string& message) {
    if (!condition && detail.empty()) detail = message;
    return condition;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// --------------------------------------------------------------------------

bool criterion1_divisibility(std::string& detail) {
    bool ok = true;
    for (double beta : {0.0, 0.1, 0.5, 1.0}) {
        const double err = std::abs(s_rho(1.0, beta) - beta * 0.39894228040143267794);
        ok &= check(err <= 1e-12, detail, "s_rho(1,beta) off by " + fmt(err));
    }
    const double moment2 = std_normal_partial_expectation(
        [](double w) { return w * w; }, 0.0);
    const double quadrature_value = std::sqrt(moment2);
    const double err2 = std::abs(s_rho(2.0, 1.0) - quadrature_value);
    ok &= check(err2 <= 1e-10, detail, "s_rho(2,1) vs quadrature off by " + fmt(err2));
    return ok;
}

bool criterion2_nested_wiener(std::string& detail) {
    const double horizon = 1.0, beta = 0.5;
    const double exact = horizon * beta * 0.39894228040143267794;
    const double nested =
        nested_wiener_value(horizon, 8, 1.0, std::vector<double>(8, beta));
    bool ok = check(std::abs(nested - exact) <= 1e-12, detail,
                    "closed identity off by " + fmt(std::abs(nested - exact)));
    const auto mc = oracle::mc_nested_wiener(horizon, 8, 1.0, beta, 100000, 20260810);
    const double gap = std::abs(mc.estimate - exact);
    ok &= check(gap <= 3.0 * mc.stderr_, detail,
                "MC gap " + fmt(gap) + " exceeds 3 x stderr " + fmt(mc.stderr_));
    detail = "mc gap " + fmt(gap) + ", stderr " + fmt(mc.stderr_);
    return ok;
}

bool criterion3_oracle_equivalence(std::string& detail) {
    Xoshiro256 rng(424242);
    double worst = 0.0;
    for (int set = 0; set < 50; ++set) {
        const int n = 1 + static_cast<int>(rng.uniform() * 12.0);
        const double s0 = rng.uniform(0.5, 2.0);
        const double strike = rng.uniform(0.5, 2.0);
        const double r = rng.uniform(0.0, 0.06);
        const double sigma = rng.uniform(0.1, 0.45);
        const double horizon = rng.uniform(0.25, 2.0);
        const BinomialTree tree = build_tree(s0, r, sigma, horizon, n);

        RiskSpec measure = RiskSpec::expectation();
        switch (set % 4) {
        case 0: measure = RiskSpec::semi_deviation(1.0, rng.uniform(0.0, 1.0)); break;
        case 1: measure = RiskSpec::semi_deviation(2.0, rng.uniform(0.0, 1.0)); break;
        case 2: measure = RiskSpec::avar(rng.uniform(0.05, 0.95)); break;
        default: break;
        }
        const auto payoff = set % 2 == 0 ? call_payoff(strike) : put_payoff(strike);
        for (Side side : {Side::bid, Side::ask}) {
            const double fast = price_nested(tree, measure, payoff, side).value;
            const double slow = oracle::enumerate_nested(tree, measure, payoff, side);
            worst = std::max(worst, std::abs(fast - slow));
        }
    }
    detail = "worst |lattice - enumeration| = " + fmt(worst);
    return worst <= 1e-10;
}

bool criterion4_tree_continuum(std::string& detail) {
    const double beta = 0.5;
    const double reference =
        oracle::bs_reference(1.0, 1.2, 0.03, 0.5 * beta * 0.15, 0.15, 1.0, PayoffKind::call);
    const RiskSpec measure = RiskSpec::semi_deviation(1.0, beta);
    const auto payoff = call_payoff(1.2);
    const auto bid_error = [&](int n) {
        const BinomialTree tree = build_tree(1.0, 0.03, 0.15, 1.0, n);
        return std::abs(price_nested(tree, measure, payoff, Side::bid).value - reference);
    };
    const double err1600 = bid_error(1600);
    const double err6400 = bid_error(6400);
    detail = "err(1600) = " + fmt(err1600) + ", err(6400) = " + fmt(err6400);
    const double bound = 2.0 * err1600 * std::sqrt(1600.0 / 6400.0) * 1.5;
    bool ok = check(err6400 < bound, detail, "rate bound violated: " + fmt(err6400) +
                                                 " >= " + fmt(bound));
    ok &= check(err6400 < 5e-4, detail, "absolute bound violated: " + fmt(err6400));
    return ok;
}

bool criterion5_pde_vs_closed_form(std::string& detail) {
    Grid grid;
    grid.x_min = 0.0;
    grid.x_max = 4.8;
    grid.nx = 400;
    grid.nt = 400;
    double worst = 0.0;
    for (double s : {0.0, 0.1, 0.3}) {
        EuroParams params;
        params.x = 1.0;
        params.strike = 1.2;
        params.r = 0.03;
        params.sigma = 0.15;
        params.expiry = 1.0;
        params.s_rho = s;
        for (PayoffKind kind : {PayoffKind::call, PayoffKind::put}) {
            for (Side side : {Side::bid, Side::ask}) {
                const PDESolution sol = solve_european(params, kind, side, grid);
                for (std::size_t i = 0; i < sol.times.size(); ++i) {
                    EuroParams at = params;
                    at.t = sol.times[i];
                    for (std::size_t j = 0; j < sol.x.size(); ++j) {
                        if (sol.x[j] < 0.6 || sol.x[j] > 2.4) continue;
                        at.x = sol.x[j];
                        const double exact = kind == PayoffKind::call
                                                 ? call_value(at, side)
                                                 : put_value(at, side);
                        worst = std::max(worst, std::abs(sol.values[i][j] - exact));
                    }
                }
            }
        }
    }
    detail = "max |pde - closed form| on [0.5K, 2K] = " + fmt(worst);
    return worst <= 1e-3;
}

bool criterion6_substitution(std::string& detail) {
    double worst = 0.0;
    for (double s : {0.0, 0.1, 0.3}) {
        EuroParams params;
        params.x = 1.0;
        params.strike = 1.2;
        params.r = 0.03;
        params.sigma = 0.15;
        params.expiry = 1.0;
        params.s_rho = s;
        for (PayoffKind kind : {PayoffKind::call, PayoffKind::put}) {
            for (Side side : {Side::bid, Side::ask}) {
                const auto value = [&params, kind, side](double t, double x) {
                    EuroParams at = params;
                    at.t = t;
                    at.x = x;
                    return kind == PayoffKind::call ? call_value(at, side)
                                                    : put_value(at, side);
                };
                worst = std::max(worst,
                                 substitution_residual(value, params, side, 1000, 1234));
            }
        }
    }
    detail = "max scaled residual = " + fmt(worst);
    return worst <= 1e-6;
}

AmerParams stop_call_params(double s, PayoffKind kind) {
    AmerParams p;
    p.x = 1.0;
    p.strike = 1.0;
    p.r = 0.03;
    p.sigma = 0.15;
    p.expiry = 1.0;
    p.s_rho = s;
    p.kind = kind;
    return p;
}

Grid american_grid() {
    Grid g;
    g.x_min = 0.0;
    g.x_max = 4.0;
    g.nx = 321;
    g.nt = 320;
    return g;
}

bool criterion7_american_properties(std::string& detail) {
    const Grid grid = american_grid();
    bool ok = true;

    // Feasibility, European dominance, and side ordering for the put.
    const AmerParams put = stop_call_params(0.2, PayoffKind::put);
    const AmericanResult bid = solve_american(put, Side::bid, grid);
    const AmericanResult ask = solve_american(put, Side::ask, grid);
    const PDESolution euro_bid = solve_european(put, PayoffKind::put, Side::bid, grid);
    double feasibility = 0.0, dominance = 0.0, ordering = 0.0;
    for (std::size_t i = 0; i < bid.solution.values.size(); ++i) {
        for (std::size_t j = 0; j < bid.solution.x.size(); ++j) {
            const double payoff = std::max(1.0 - bid.solution.x[j], 0.0);
            feasibility = std::max(feasibility, payoff - bid.solution.values[i][j]);
            dominance = std::max(dominance,
                                 euro_bid.values[i][j] - bid.solution.values[i][j]);
            ordering = std::max(ordering,
                                bid.solution.values[i][j] - ask.solution.values[i][j]);
        }
    }
    ok &= check(feasibility <= 1e-8, detail, "V >= payoff violated by " + fmt(feasibility));
    ok &= check(dominance <= 1e-8, detail, "V >= European violated by " + fmt(dominance));
    ok &= check(ordering <= 1e-8, detail, "bid <= ask violated by " + fmt(ordering));

    // Put boundary terminates at the strike.
    const auto& terminal_level = bid.boundary.levels.back();
    ok &= check(terminal_level.has_value() &&
                    std::abs(*terminal_level - 1.0) <= 4.0 / 320.0 + 1e-12,
                detail, "put boundary does not end at K");

    // Zero-spread call: no early exercise premium.
    const double premium0 =
        early_exercise_premium(stop_call_params(0.0, PayoffKind::call), Side::ask, grid);
    ok &= check(std::abs(premium0) <= 1e-6, detail,
                "zero-spread call premium " + fmt(premium0));
    return ok;
}

bool criterion7_call_ask_region_literal(std::string& detail) {
    // Kept as an expected failure: the ask drift is r + s_rho sigma, which
    // prices like a negative payout rate, so this region is provably empty.
    // The early-exercise region of the risk-averse call sits on the bid side
    // (next check); see the README note.
    const AmericanResult ask =
        solve_american(stop_call_params(0.2, PayoffKind::call), Side::ask, american_grid());
    const bool nonempty = !ask.boundary.region_empty();
    detail = nonempty ? "ask region nonempty" : "ask region empty (see bid-side check)";
    return nonempty;
}

bool criterion7_call_bid_region(std::string& detail) {
    const AmericanResult bid =
        solve_american(stop_call_params(0.2, PayoffKind::call), Side::bid, american_grid());
    const double premium = early_exercise_premium(stop_call_params(0.2, PayoffKind::call),
                                                  Side::bid, american_grid());
    detail = "bid region nonempty, premium " + fmt(premium);
    return !bid.boundary.region_empty() && premium > 1e-5;
}

bool criterion8_merton(std::string& detail) {
    using merton::MertonParams;
    using merton::NuVariant;
    MertonParams params;  // gamma 0.4, r 0.01, mu 0.1, sigma 0.3, eps 0.1, T 4
    bool ok = true;
    for (double s : {0.0, 0.1, 0.2, 0.25}) {
        MertonParams p = params;
        p.s_rho = s;
        for (NuVariant v : {NuVariant::cross_term, NuVariant::drift_shift}) {
            const double dev = merton::ode_check(p, v);
            ok &= check(dev <= 1e-8, detail, "ode deviation " + fmt(dev));
        }
    }
    std::vector<double> t_grid, x_grid;
    for (int i = 0; i <= 16; ++i) t_grid.push_back(4.0 * i / 16.0);
    for (int j = 1; j <= 12; ++j) x_grid.push_back(0.3 * j);
    for (NuVariant v : {NuVariant::cross_term, NuVariant::drift_shift}) {
        const double res = merton::hjb_residual(params, v, t_grid, x_grid);
        ok &= check(res <= 1e-9, detail, "zero-spread residual " + fmt(res));
    }

    const std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.29};
    const auto curve = merton::consumption_curve(params, grid);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        ok &= check(curve[i].consumption >= curve[i - 1].consumption - 1e-12, detail,
                    "consumption not monotone");
        ok &= check(curve[i].pi_star <= curve[i - 1].pi_star + 1e-12, detail,
                    "allocation not monotone");
    }
    MertonParams at_bound = params;
    at_bound.s_rho = 0.3;  // (mu - r)/sigma
    ok &= check(merton::solution(at_bound, NuVariant::cross_term).pi_star <= 1e-12, detail,
                "pi* not zero at the Sharpe bound");

    // Archive the variant adjudication report.
    MertonParams adjudicated = params;
    adjudicated.s_rho = 0.2;
    const auto report = merton::adjudicate(adjudicated);
    std::ofstream out("merton_adjudication.json", std::ios::binary);
    out << report.to_json(adjudicated);
    ok &= check(static_cast<bool>(out), detail, "could not archive adjudication report");
    detail = "adjudication archived to merton_adjudication.json (canonical: " +
             std::string(report.canonical == NuVariant::cross_term ? "cross_term" : "drift_shift") + ")";
    return ok;
}

bool criterion9_axioms(std::string& detail) {
    const RiskSpec measures[] = {RiskSpec::expectation(), RiskSpec::semi_deviation(1.0, 0.5),
                                 RiskSpec::semi_deviation(2.0, 0.3), RiskSpec::avar(0.1)};
    bool ok = true;
    for (const auto& m : measures) {
        const AxiomReport report = axiom_report(m, 1000, 20260810);
        ok &= check(report.all_passed(), detail, m.describe() + " axiom failure");
    }
    // Bid never exceeds ask on the same corpus.
    Xoshiro256 rng(20260810);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto dist = random_distribution(rng);
        for (const auto& m : measures) {
            worst = std::max(worst, bid_value(m, dist) - evaluate(m, dist));
        }
    }
    ok &= check(worst <= 1e-12, detail, "bid exceeded ask by " + fmt(worst));
    return ok;
}

bool criterion10_avar_divergence(std::string& detail) {
    const auto rows = avar_nesting_demo(1.0, {1, 2, 4, 8, 16}, 0.1);
    std::ostringstream values;
    bool ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        values << (i ? ", " : "") << fmt(rows[i].value);
        if (i > 0) ok &= rows[i].value > rows[i - 1].value;
    }
    detail = "values: " + values.str();
    return ok;
}

bool criterion11_determinism(std::string& detail, const char* cli_path) {
    if (cli_path != nullptr) {
        const std::string base = "acceptance_selftest_";
        const auto run = [&](const std::string& out) {
            const std::string cmd = std::string(cli_path) + " selftest --seed 20260810 > " +
                                    out + " 2>/dev/null";
            return std::system(cmd.c_str());
        };
        const int rc1 = run(base + "1.txt");
        const int rc2 = run(base + "2.txt");
        if (rc1 != 0 || rc2 != 0) {
            detail = "selftest exited nonzero";
            return false;
        }
        const auto slurp = [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        const std::string a = slurp(base + "1.txt");
        const std::string b = slurp(base + "2.txt");
        detail = "cli reports " + std::to_string(a.size()) + " bytes";
        return !a.empty() && a == b;
    }
    const auto first = oracle::selftest(20260810);
    const auto second = oracle::selftest(20260810);
    detail = "library fallback (no CLI path given)";
    return first.passed && first.report == second.report;
}

} // namespace

int main(int argc, char** argv) {
    const char* cli_path = argc > 1 ? argv[1] : nullptr;
    Harness h;
    h.run("C1  divisibility constants", criterion1_divisibility);
    h.run("C2  nested Wiener value (closed form + MC)", criterion2_nested_wiener);
    h.run("C3  lattice vs exhaustive nesting, 50 random sets", criterion3_oracle_equivalence);
    h.run("C4  tree-to-continuum convergence", criterion4_tree_continuum);
    h.run("C5  PDE solve vs closed forms", criterion5_pde_vs_closed_form);
    h.run("C6  closed-form substitution residual", criterion6_substitution);
    h.run("C7a American feasibility/dominance/boundary", criterion7_american_properties);
    h.run("C7b call ask early-exercise region nonempty at s_rho=0.2 (see README)",
          criterion7_call_ask_region_literal, /*failure_expected=*/true);
    h.run("C7c call bid exercise region at s_rho=0.2", criterion7_call_bid_region);
    h.run("C8  Merton solution and adjudication", criterion8_merton);
    h.run("C9  coherence axiom suite", criterion9_axioms);
    h.run("C10 unscaled AVaR nesting diverges", criterion10_avar_divergence);
    h.run("C11 selftest determinism", [cli_path](std::string& d) {
        return criterion11_determinism(d, cli_path);
    });

    std::printf("acceptance: %d unexpected failure(s), %d expected failure(s)\n", h.failures,
                h.expected_failures);
    return h.failures == 0 ? 0 : 1;
}
