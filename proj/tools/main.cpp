// Command line front end: closed-form European quotes, American solves with
// boundary extraction, the consumption problem, lattice convergence tables,
// and the oracle selftest. Exit codes: 0 success, 1 solver failure, 2
// invalid parameters or flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskaverse/american/american.hpp"
#include "riskaverse/closedform/european.hpp"
#include "riskaverse/errors.hpp"
#include "riskaverse/io/csv.hpp"
#include "riskaverse/lattice/nested_pricing.hpp"
#include "riskaverse/merton/merton.hpp"
#include "riskaverse/oracle/oracle.hpp"
#include "riskaverse/parallel.hpp"
#include "riskaverse/pde/european_solver.hpp"

#include "config_format.hpp"

using namespace riskaverse;
using nlohmann::ordered_json;

namespace {

struct GlobalOptions {
    std::string format = "text";  // text|json for scalar results
    int threads = 1;
    std::uint64_t seed = 20260810;
};

// "a,b,c" or "lo:hi:count".
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1) {
            throw ParameterError("grid: expected lo:hi:count, got '" + text + "'");
        }
        for (int i = 0; i < count; ++i) {
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        }
        return out;
    }
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t end = std::min(text.find(',', begin), text.size());
        const std::string token = text.substr(begin, end - begin);
        if (!token.empty()) {
            try {
                out.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw ParameterError("grid: bad number '" + token + "'");
            }
        }
        begin = end + 1;
    }
    if (out.empty()) throw ParameterError("grid: no values in '" + text + "'");
    return out;
}

void write_text(const std::string& path, const std::string& body) {
    if (path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << body;
}

void emit_table(const CsvTable& table, const std::string& path) {
    write_text(path, table.str());
}

void emit_scalars(const GlobalOptions& global, const std::string& command,
                  const std::vector<std::pair<std::string, double>>& values) {
    if (global.format == "json") {
        ordered_json doc;
        doc["command"] = command;
        for (const auto& [key, value] : values) doc[key] = value;
        std::cout << doc.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : values) {
        std::cout << key << " " << format_double(value) << "\n";
    }
}

PayoffKind parse_payoff(const std::string& name) {
    if (name == "call") return PayoffKind::call;
    if (name == "put") return PayoffKind::put;
    throw ParameterError("payoff must be call or put");
}

// ---------------------------------------------------------------------------
// price euro
// ---------------------------------------------------------------------------

struct EuroCommand {
    EuroParams params;
    std::string payoff = "call";
    std::string s_rho_grid;
    std::string spot_grid;
    std::string prices_out = "-";
    std::string spread_out;
    // Finite-difference cross-check exports.
    std::string pde_out;
    std::string pde_stats;
    std::string pde_times = "0";
    int pde_nx = 400;
    int pde_nt = 400;
    double pde_x_max = 0.0;  // 0: four strikes
};

void run_price_euro(const EuroCommand& cmd, const GlobalOptions& global) {
    cmd.params.validate();
    const PayoffKind kind = parse_payoff(cmd.payoff);
    const auto value = [&](const EuroParams& p, Side side) {
        return kind == PayoffKind::call ? call_value(p, side) : put_value(p, side);
    };

    const double bid = value(cmd.params, Side::bid);
    const double ask = value(cmd.params, Side::ask);
    emit_scalars(global, "price euro",
                 {{"bid", bid}, {"ask", ask}, {"spread", ask - bid}});

    std::vector<double> levels{cmd.params.s_rho};
    if (!cmd.s_rho_grid.empty()) levels = parse_grid(cmd.s_rho_grid);

    if (!cmd.spot_grid.empty()) {
        const std::vector<double> spots = parse_grid(cmd.spot_grid);
        CsvTable table({"s_rho", "spot", "bid", "ask", "risk_neutral"});
        std::vector<std::vector<double>> rows(levels.size() * spots.size());
        parallel_for(rows.size(), global.threads, [&](std::size_t index) {
            EuroParams p = cmd.params;
            p.s_rho = levels[index / spots.size()];
            p.x = spots[index % spots.size()];
            EuroParams neutral = p;
            neutral.s_rho = 0.0;
            rows[index] = {p.s_rho, p.x, value(p, Side::bid), value(p, Side::ask),
                           value(neutral, Side::ask)};
        });
        for (const auto& row : rows) table.add_row(row);
        emit_table(table, cmd.prices_out);
    }

    if (!cmd.spread_out.empty()) {
        CsvTable table({"s_rho", "bid", "ask", "spread"});
        const auto curve = spread_curve(cmd.params, kind, levels);
        for (const auto& point : curve) {
            table.add_row({point.s_rho, point.bid, point.ask, point.spread});
        }
        emit_table(table, cmd.spread_out);
    }

    if (!cmd.pde_out.empty() || !cmd.pde_stats.empty()) {
        Grid grid;
        grid.x_min = 0.0;
        grid.x_max = cmd.pde_x_max > 0.0 ? cmd.pde_x_max : 4.0 * cmd.params.strike;
        grid.nx = cmd.pde_nx;
        grid.nt = cmd.pde_nt;
        const PDESolution pde_bid = solve_european(cmd.params, kind, Side::bid, grid);
        const PDESolution pde_ask = solve_european(cmd.params, kind, Side::ask, grid);

        if (!cmd.pde_out.empty()) {
            CsvTable table({"t", "x", "bid", "ask"});
            for (double t : parse_grid(cmd.pde_times)) {
                // Nearest stored time level.
                std::size_t index = 0;
                for (std::size_t i = 1; i < pde_bid.times.size(); ++i) {
                    if (std::abs(pde_bid.times[i] - t) <
                        std::abs(pde_bid.times[index] - t)) {
                        index = i;
                    }
                }
                for (std::size_t j = 0; j < pde_bid.x.size(); ++j) {
                    table.add_row({pde_bid.times[index], pde_bid.x[j],
                                   pde_bid.values[index][j], pde_ask.values[index][j]});
                }
            }
            emit_table(table, cmd.pde_out);
        }
        if (!cmd.pde_stats.empty()) {
            ordered_json doc;
            for (const auto& [name, sol] :
                 {std::pair<const char*, const PDESolution*>{"bid", &pde_bid},
                  std::pair<const char*, const PDESolution*>{"ask", &pde_ask}}) {
                ordered_json entry;
                entry["max_residual"] = sol->max_residual;
                entry["iterations_per_step"] = sol->iterations_per_step;
                doc[name] = entry;
            }
            write_text(cmd.pde_stats, doc.dump(2) + "\n");
        }
    }
}

// ---------------------------------------------------------------------------
// price amer
// ---------------------------------------------------------------------------

struct AmerCommand {
    AmerParams params;
    std::string payoff = "put";
    double x_max = 0.0;  // 0: four strikes
    int nx = 321;
    int nt = 320;
    double boundary_tol = 1e-7;
    std::string boundary_out;
    std::string surface_out;
    std::string values_out;
    std::string s_rho_grid;
};

void run_price_amer(const AmerCommand& cmd, const GlobalOptions& global) {
    AmerParams params = cmd.params;
    params.kind = parse_payoff(cmd.payoff);
    params.validate();

    Grid grid;
    grid.x_min = 0.0;
    grid.x_max = cmd.x_max > 0.0 ? cmd.x_max : 4.0 * params.strike;
    grid.nx = cmd.nx;
    grid.nt = cmd.nt;

    AmericanOptions options;
    options.boundary_tol = cmd.boundary_tol;

    const AmericanResult bid = solve_american(params, Side::bid, grid, options);
    const AmericanResult ask = solve_american(params, Side::ask, grid, options);
    const double premium_bid = early_exercise_premium(params, Side::bid, grid, options);

    emit_scalars(global, "price amer",
                 {{"bid", bid.solution.value_at(0, params.x)},
                  {"ask", ask.solution.value_at(0, params.x)},
                  {"early_exercise_premium_bid", premium_bid}});
    if (global.format != "json") {
        std::cout << "early_exercise_bid "
                  << (bid.boundary.region_empty() ? "none" : "present") << "\n";
        std::cout << "early_exercise_ask "
                  << (ask.boundary.region_empty() ? "none" : "present") << "\n";
    }

    if (!cmd.boundary_out.empty()) {
        CsvTable table({"t", "L_bid", "L_ask"});
        for (std::size_t i = 0; i < bid.boundary.times.size(); ++i) {
            const auto cell = [](const std::optional<double>& level) {
                return level ? format_double(*level) : std::string();
            };
            table.add_row(std::vector<std::string>{format_double(bid.boundary.times[i]),
                                                   cell(bid.boundary.levels[i]),
                                                   cell(ask.boundary.levels[i])});
        }
        emit_table(table, cmd.boundary_out);
    }

    if (!cmd.surface_out.empty()) {
        CsvTable table({"t", "x", "bid", "ask"});
        for (std::size_t i = 0; i < bid.solution.times.size(); ++i) {
            for (std::size_t j = 0; j < bid.solution.x.size(); ++j) {
                table.add_row({bid.solution.times[i], bid.solution.x[j],
                               bid.solution.values[i][j], ask.solution.values[i][j]});
            }
        }
        emit_table(table, cmd.surface_out);
    }

    if (!cmd.values_out.empty()) {
        const std::vector<double> levels =
            cmd.s_rho_grid.empty() ? std::vector<double>{params.s_rho}
                                   : parse_grid(cmd.s_rho_grid);
        CsvTable table({"s_rho", "bid", "ask"});
        std::vector<std::vector<double>> rows(levels.size());
        parallel_for(levels.size(), global.threads, [&](std::size_t index) {
            AmerParams p = params;
            p.s_rho = levels[index];
            const AmericanResult b = solve_american(p, Side::bid, grid, options);
            const AmericanResult a = solve_american(p, Side::ask, grid, options);
            rows[index] = {p.s_rho, b.solution.value_at(0, p.x),
                           a.solution.value_at(0, p.x)};
        });
        for (const auto& row : rows) table.add_row(row);
        emit_table(table, cmd.values_out);
    }
}

// ---------------------------------------------------------------------------
// merton
// ---------------------------------------------------------------------------

struct MertonCommand {
    merton::MertonParams params;
    std::string variant = "cross-term";
    std::string s_rho_grid;
    std::string out = "-";
    std::string report_out;
};

void run_merton(const MertonCommand& cmd, const GlobalOptions& global) {
    cmd.params.validate();
    const merton::NuVariant variant = cmd.variant == "drift-shift"
                                          ? merton::NuVariant::drift_shift
                                          : merton::NuVariant::cross_term;
    if (cmd.variant != "cross-term" && cmd.variant != "drift-shift") {
        throw ParameterError("variant must be cross-term or drift-shift");
    }

    const auto sol = merton::solution(cmd.params, variant);
    emit_scalars(global, "merton",
                 {{"nu", sol.growth},
                  {"pi_star", sol.pi_star},
                  {"initial_consumption", sol.consumption(0.0, cmd.params.w0)}});

    if (!cmd.s_rho_grid.empty()) {
        const auto curve =
            merton::consumption_curve(cmd.params, parse_grid(cmd.s_rho_grid), variant);
        CsvTable table({"s_rho", "consumption", "pi_star"});
        for (const auto& point : curve) {
            table.add_row({point.s_rho, point.consumption, point.pi_star});
        }
        emit_table(table, cmd.out);
    }

    if (!cmd.report_out.empty()) {
        const auto report = merton::adjudicate(cmd.params);
        write_text(cmd.report_out, report.to_json(cmd.params));
    }
}

// ---------------------------------------------------------------------------
// converge
// ---------------------------------------------------------------------------

struct ConvergeCommand {
    double spot = 1.0;
    double strike = 1.2;
    double rate = 0.03;
    double sigma = 0.15;
    double expiry = 1.0;
    double beta = 0.5;
    std::string n_list = "100,400,1600,6400";
    bool undiscounted = false;
    std::string out = "-";
};

void run_converge(const ConvergeCommand& cmd) {
    const std::vector<double> n_list = parse_grid(cmd.n_list);
    std::vector<ConvergenceRow> rows;
    if (cmd.undiscounted) {
        // Raw one-step identities: compose without the e^{-r dt} factor.
        NestedPricingOptions options;
        options.discount = false;
        const RiskSpec measure = RiskSpec::semi_deviation(1.0, cmd.beta);
        const auto payoff = call_payoff(cmd.strike);
        const double reference = european_value(cmd.spot, cmd.strike, cmd.rate,
                                                0.5 * cmd.beta * cmd.sigma, cmd.sigma,
                                                cmd.expiry, PayoffKind::call);
        for (double n_raw : n_list) {
            const BinomialTree tree =
                build_tree(cmd.spot, cmd.rate, cmd.sigma, cmd.expiry, static_cast<int>(n_raw));
            const double bid = price_nested(tree, measure, payoff, Side::bid, options).value;
            const double ask = price_nested(tree, measure, payoff, Side::ask, options).value;
            rows.push_back({static_cast<int>(n_raw), tree.dt, bid, ask, reference,
                            std::abs(bid - reference)});
        }
    } else {
        rows = convergence_study(cmd.spot, cmd.strike, cmd.rate, cmd.sigma, cmd.expiry,
                                 cmd.beta, n_list);
    }
    CsvTable table({"n", "dt", "bid", "ask", "reference", "abs_error"});
    for (const auto& row : rows) {
        table.add_row({static_cast<double>(row.steps), row.dt, row.bid, row.ask,
                       row.reference, row.abs_error});
    }
    emit_table(table, cmd.out);
}

// ---------------------------------------------------------------------------

int dispatch(int argc, char** argv) {
    CLI::App app{"Risk-averse pricing toolkit: nested-measure lattices, spread-adjusted "
                 "closed forms, free-boundary solves and the consumption problem"};
    app.require_subcommand(1);
    GlobalOptions global;
    app.add_option("--format", global.format, "Scalar output format (text|json)")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", global.threads, "Worker threads for parameter sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", global.seed, "Seed for randomized verification");

    std::string config_path;
    const auto attach_config = [&config_path](CLI::App* sub) {
        sub->fallthrough();  // global flags may follow the subcommand
        sub->add_option("--config", config_path,
                        "Config file: key=value lines or a flat JSON object; explicit "
                        "flags override config values");
    };

    CLI::App* price = app.add_subcommand("price", "Price an option");
    price->require_subcommand(1);
    price->fallthrough();

    // --- price euro ---
    auto euro = std::make_shared<EuroCommand>();
    CLI::App* euro_cmd = price->add_subcommand("euro", "European bid/ask closed forms");
    attach_config(euro_cmd);
    euro_cmd->add_option("--spot,-S,--S", euro->params.x, "Spot price")->capture_default_str();
    euro_cmd->add_option("--strike,-K,--K", euro->params.strike, "Strike")->capture_default_str();
    euro_cmd->add_option("--rate,-r,--r", euro->params.r, "Riskless rate")->capture_default_str();
    euro_cmd->add_option("--sigma", euro->params.sigma, "Volatility")->capture_default_str();
    euro_cmd->add_option("--expiry,-T,--T", euro->params.expiry, "Expiry")->capture_default_str();
    euro_cmd->add_option("--time,-t,--t", euro->params.t, "Valuation time")->capture_default_str();
    euro_cmd->add_option("--s-rho", euro->params.s_rho, "Risk aversion coefficient")->capture_default_str();
    euro_cmd->add_option("--payoff", euro->payoff, "call|put")->capture_default_str();
    euro_cmd->add_option("--s-rho-grid", euro->s_rho_grid, "Risk levels: a,b,c or lo:hi:n");
    euro_cmd->add_option("--spot-grid", euro->spot_grid, "Spot sweep: lo:hi:n");
    euro_cmd->add_option("--prices-out", euro->prices_out,
                         "CSV path for the spot sweep (- for stdout)")->capture_default_str();
    euro_cmd->add_option("--spread-out", euro->spread_out,
                         "CSV path for the bid/ask spread curve");
    euro_cmd->add_option("--pde-out", euro->pde_out,
                         "CSV path for finite-difference slices: t, x, bid, ask");
    euro_cmd->add_option("--pde-stats", euro->pde_stats,
                         "JSON path for solver statistics (residual, iterations)");
    euro_cmd->add_option("--pde-times", euro->pde_times, "Times for --pde-out slices")
        ->capture_default_str();
    euro_cmd->add_option("--pde-nx", euro->pde_nx, "Space nodes")->capture_default_str();
    euro_cmd->add_option("--pde-nt", euro->pde_nt, "Time steps")->capture_default_str();
    euro_cmd->add_option("--pde-x-max", euro->pde_x_max,
                         "Upper grid bound (default 4 strikes)");

    // --- price amer ---
    auto amer = std::make_shared<AmerCommand>();
    CLI::App* amer_cmd = price->add_subcommand("amer", "American values and boundaries");
    attach_config(amer_cmd);
    amer_cmd->add_option("--spot,-S,--S", amer->params.x, "Spot price")->capture_default_str();
    amer_cmd->add_option("--strike,-K,--K", amer->params.strike, "Strike")->capture_default_str();
    amer_cmd->add_option("--rate,-r,--r", amer->params.r, "Riskless rate")->capture_default_str();
    amer_cmd->add_option("--sigma", amer->params.sigma, "Volatility")->capture_default_str();
    amer_cmd->add_option("--expiry,-T,--T", amer->params.expiry, "Expiry")->capture_default_str();
    amer_cmd->add_option("--s-rho", amer->params.s_rho, "Risk aversion coefficient")->capture_default_str();
    amer_cmd->add_option("--payoff", amer->payoff, "call|put")->capture_default_str();
    amer_cmd->add_option("--x-max", amer->x_max, "Upper grid bound (default 4 strikes)");
    amer_cmd->add_option("--nx", amer->nx, "Space nodes")->capture_default_str();
    amer_cmd->add_option("--nt", amer->nt, "Time steps")->capture_default_str();
    amer_cmd->add_option("--boundary-tol", amer->boundary_tol,
                         "Continuation threshold for boundary extraction")->capture_default_str();
    amer_cmd->add_option("--boundary-out", amer->boundary_out, "CSV path: t, L_bid, L_ask");
    amer_cmd->add_option("--surface-out", amer->surface_out, "CSV path: t, x, bid, ask");
    amer_cmd->add_option("--values-out", amer->values_out, "CSV path: s_rho, bid, ask");
    amer_cmd->add_option("--s-rho-grid", amer->s_rho_grid, "Risk levels for --values-out");

    // --- merton ---
    auto mert = std::make_shared<MertonCommand>();
    CLI::App* merton_cmd =
        app.add_subcommand("merton", "Optimal consumption and allocation");
    attach_config(merton_cmd);
    merton_cmd->add_option("--gamma", mert->params.gamma, "Relative risk aversion")->capture_default_str();
    merton_cmd->add_option("--rate,-r,--r", mert->params.r, "Riskless rate")->capture_default_str();
    merton_cmd->add_option("--mu", mert->params.mu, "Risky drift")->capture_default_str();
    merton_cmd->add_option("--sigma", mert->params.sigma, "Volatility")->capture_default_str();
    merton_cmd->add_option("--epsilon", mert->params.epsilon, "Terminal payout weight")->capture_default_str();
    merton_cmd->add_option("--horizon,-T,--T", mert->params.horizon, "Horizon")->capture_default_str();
    merton_cmd->add_option("--wealth", mert->params.w0, "Initial wealth")->capture_default_str();
    merton_cmd->add_option("--s-rho", mert->params.s_rho, "Risk aversion coefficient")->capture_default_str();
    merton_cmd->add_option("--variant", mert->variant, "Growth constant: cross-term|drift-shift")->capture_default_str();
    merton_cmd->add_option("--s-rho-grid", mert->s_rho_grid, "Risk levels for the curve");
    merton_cmd->add_option("--out", mert->out, "CSV path for the curve (- for stdout)")->capture_default_str();
    merton_cmd->add_option("--report", mert->report_out,
                           "Path for the variant adjudication JSON report");

    // --- converge ---
    auto conv = std::make_shared<ConvergeCommand>();
    CLI::App* conv_cmd =
        app.add_subcommand("converge", "Lattice prices against the continuous limit");
    attach_config(conv_cmd);
    conv_cmd->add_option("--spot,-S,--S", conv->spot, "Spot price")->capture_default_str();
    conv_cmd->add_option("--strike,-K,--K", conv->strike, "Strike")->capture_default_str();
    conv_cmd->add_option("--rate,-r,--r", conv->rate, "Riskless rate")->capture_default_str();
    conv_cmd->add_option("--sigma", conv->sigma, "Volatility")->capture_default_str();
    conv_cmd->add_option("--expiry,-T,--T", conv->expiry, "Expiry")->capture_default_str();
    conv_cmd->add_option("--beta", conv->beta, "Semi-deviation level")->capture_default_str();
    conv_cmd->add_option("--n", conv->n_list, "Step counts: a,b,c")->capture_default_str();
    conv_cmd->add_flag("--undiscounted", conv->undiscounted,
                       "Compose steps without the per-step discount");
    conv_cmd->add_option("--out", conv->out, "CSV path (- for stdout)")->capture_default_str();

    // --- selftest ---
    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "Run the oracle agreement suite");
    attach_config(selftest_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!config_path.empty()) {
        for (CLI::App* leaf : {euro_cmd, amer_cmd, merton_cmd, conv_cmd, selftest_cmd}) {
            if (leaf->parsed()) riskaverse_cli::apply_config(leaf, config_path);
        }
    }

    if (euro_cmd->parsed()) run_price_euro(*euro, global);
    if (amer_cmd->parsed()) run_price_amer(*amer, global);
    if (merton_cmd->parsed()) run_merton(*mert, global);
    if (conv_cmd->parsed()) run_converge(*conv);
    if (selftest_cmd->parsed()) {
        const auto result = oracle::selftest(global.seed);
        std::cout << result.report;
        std::cout << (result.passed ? "selftest PASS" : "selftest FAIL") << "\n";
        return result.passed ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
    } catch (const ParameterError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
    } catch (const DomainError& e) {
        std::cerr << "out of domain: " << e.what() << "\n";
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 1;
    } catch (const EvaluationError& e) {
        std::cerr << "evaluation failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
