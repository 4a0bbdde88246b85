#include "riskaverse/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "riskaverse/closedform/european.hpp"
#include "riskaverse/errors.hpp"
#include "riskaverse/merton/merton.hpp"

namespace riskaverse::oracle {

double norm_cdf_reference(double z) {
    const double za = std::abs(z);
    double c;
    if (za > 37.0) {
        c = 0.0;
    } else {
        const double e = std::exp(-0.5 * za * za);
        if (za < 7.07106781186547) {
            double num = 3.52624965998911e-02 * za + 0.700383064443688;
            num = num * za + 6.37396220353165;
            num = num * za + 33.912866078383;
            num = num * za + 112.079291497871;
            num = num * za + 221.213596169931;
            num = num * za + 220.206867912376;
            double den = 8.83883476483184e-02 * za + 1.75566716318264;
            den = den * za + 16.064177579207;
            den = den * za + 86.7807322029461;
            den = den * za + 296.564248779674;
            den = den * za + 637.333633378831;
            den = den * za + 793.826512519948;
            den = den * za + 440.413735824752;
            c = e * num / den;
        } else {
            double build = za + 0.65;
            build = za + 4.0 / build;
            build = za + 3.0 / build;
            build = za + 2.0 / build;
            build = za + 1.0 / build;
            c = e / (build * 2.506628274631000502);
        }
    }
    return z > 0.0 ? 1.0 - c : c;
}

double norm_quantile_reference(double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("norm_quantile_reference: u must be in (0,1)");
    // Bisection bracket, then Newton.
    double lo = -38.0, hi = 38.0, z = 0.0;
    for (int i = 0; i < 60; ++i) {
        z = 0.5 * (lo + hi);
        if (norm_cdf_reference(z) < u) {
            lo = z;
        } else {
            hi = z;
        }
        if (hi - lo < 1e-3) break;
    }
    for (int i = 0; i < 8; ++i) {
        const double err = norm_cdf_reference(z) - u;
        const double density = std::exp(-0.5 * z * z) * 0.3989422804014326779;
        if (density == 0.0) break;
        z -= err / density;
    }
    return z;
}

double bs_reference(double x, double strike, double r, double q, double sigma, double tau,
                    PayoffKind kind) {
    if (tau == 0.0) {
        return kind == PayoffKind::call ? std::max(x - strike, 0.0) : std::max(strike - x, 0.0);
    }
    const double vol = sigma * std::sqrt(tau);
    const double d1 = (std::log(x / strike) + (r - q + 0.5 * sigma * sigma) * tau) / vol;
    const double d2 = d1 - vol;
    const double fwd = x * std::exp(-q * tau);
    const double kd = strike * std::exp(-r * tau);
    if (kind == PayoffKind::call) {
        return fwd * norm_cdf_reference(d1) - kd * norm_cdf_reference(d2);
    }
    return kd * norm_cdf_reference(-d2) - fwd * norm_cdf_reference(-d1);
}

double gaussian_avar_reference(double alpha, double variance) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("gaussian_avar_reference: bad alpha");
    const double z = norm_quantile_reference(1.0 - alpha);
    const double density = std::exp(-0.5 * z * z) * 0.3989422804014326779;
    return std::sqrt(variance) * density / alpha;
}

namespace {

double enumerate_recursive(const BinomialTree& tree, const RiskSpec& step, double spot,
                           int depth, const std::function<double(double)>& payoff, Side side,
                           double discount) {
    if (depth == tree.steps) return payoff(spot);
    const double up = enumerate_recursive(tree, step, spot * tree.up, depth + 1, payoff, side,
                                          discount);
    const double down = enumerate_recursive(tree, step, spot * tree.down, depth + 1, payoff,
                                            side, discount);
    return discount * two_point_value(step, side, up, down, tree.p_up);
}

} // namespace

double enumerate_nested(const BinomialTree& tree, const RiskSpec& measure,
                        const std::function<double(double)>& payoff, Side side,
                        const NestedPricingOptions& options) {
    if (tree.steps > 24) {
        throw DomainError("enumerate_nested: exhaustive recursion limited to n <= 24 (2^n paths)");
    }
    RiskSpec raw = measure;
    if (!options.scale_level_per_step) raw.scale_level_with_dt = false;
    const RiskSpec step = raw.per_step(tree.dt);
    const double discount = options.discount ? std::exp(-tree.r * tree.dt) : 1.0;
    return enumerate_recursive(tree, step, tree.s0, 0, payoff, side, discount);
}

McEstimate mc_nested_wiener(double horizon, int stages, double p_order, double beta,
                            int samples, std::uint64_t seed) {
    if (samples < 10000) throw DomainError("mc_nested_wiener: need at least 1e4 samples");
    if (stages < 1) throw DomainError("mc_nested_wiener: need at least one stage");
    constexpr int batches = 50;
    const int per_batch = samples / batches;
    const double dt = horizon / stages;
    const double sq_dt = std::sqrt(dt);
    const double level = beta * sq_dt;

    SeededSampler sampler(seed);
    std::vector<double> draw(static_cast<std::size_t>(per_batch));
    double total = 0.0;
    double variance = 0.0;
    for (int stage = 0; stage < stages; ++stage) {
        double batch_sum = 0.0, batch_sq = 0.0;
        for (int b = 0; b < batches; ++b) {
            double mean = 0.0;
            for (auto& v : draw) {
                v = sq_dt * sampler.normal();
                mean += v;
            }
            mean /= per_batch;
            double moment = 0.0;
            for (double v : draw) {
                const double dev = v - mean;
                if (dev > 0.0) moment += std::pow(dev, p_order);
            }
            moment /= per_batch;
            const double theta = mean + level * std::pow(moment, 1.0 / p_order);
            batch_sum += theta;
            batch_sq += theta * theta;
        }
        const double stage_mean = batch_sum / batches;
        const double stage_var =
            (batch_sq - batches * stage_mean * stage_mean) / (batches - 1.0) / batches;
        total += stage_mean;
        variance += std::max(stage_var, 0.0);
    }
    return {total, std::sqrt(variance)};
}

// ---------------------------------------------------------------------------
// Selftest
// ---------------------------------------------------------------------------

namespace {

struct ReportBuilder {
    std::string text;
    bool passed = true;

    void line(const char* name, double err, double tol) {
        char buf[160];
        const bool ok = err <= tol;
        std::snprintf(buf, sizeof buf, "%-38s max_error=%.6e tol=%.1e %s\n", name, err, tol,
                      ok ? "PASS" : "FAIL");
        text += buf;
        passed = passed && ok;
    }
};

} // namespace

SelftestResult selftest(std::uint64_t seed) {
    ReportBuilder out;
    char head[64];
    std::snprintf(head, sizeof head, "selftest seed=%llu\n",
                  static_cast<unsigned long long>(seed));
    out.text = head;

    // Normal CDF: two unrelated implementations must agree.
    {
        double worst = 0.0;
        for (int i = -160; i <= 160; ++i) {
            const double z = 0.05 * i;
            worst = std::max(worst, std::abs(norm_cdf(z) - norm_cdf_reference(z)));
        }
        out.line("normal_cdf_agreement", worst, 1e-15);
    }

    // One-step semi-deviation bid equals the reweighted expectation.
    {
        Xoshiro256 rng(seed);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double p = rng.uniform(0.05, 0.95);
            const double beta = rng.uniform(0.0, 1.0);
            const double up = rng.uniform(-5.0, 10.0);
            const double down = up - rng.uniform(0.0, 8.0);
            const RiskSpec sd = RiskSpec::semi_deviation(1.0, beta, false);
            const double bid = two_point_value(sd, Side::bid, up, down, p);
            const double tilted = risk_adjusted_prob(p, beta);
            worst = std::max(worst, std::abs(bid - (tilted * up + (1.0 - tilted) * down)));
        }
        out.line("two_point_reweighting_identity", worst, 1e-14);
    }

    // Nested lattice pricing against exhaustive recursion.
    {
        Xoshiro256 rng(seed + 1);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const int n = 1 + static_cast<int>(rng.uniform() * 10.0);
            const double s0 = rng.uniform(0.5, 2.0);
            const double strike = rng.uniform(0.5, 2.0);
            const double r = rng.uniform(0.0, 0.06);
            const double sigma = rng.uniform(0.1, 0.4);
            const double beta = rng.uniform(0.0, 1.0);
            const BinomialTree tree = build_tree(s0, r, sigma, 1.0, n);
            const RiskSpec measure = RiskSpec::semi_deviation(1.0, beta);
            const auto payoff = call_payoff(strike);
            for (Side side : {Side::bid, Side::ask}) {
                const double fast = price_nested(tree, measure, payoff, side).value;
                const double slow = enumerate_nested(tree, measure, payoff, side);
                worst = std::max(worst, std::abs(fast - slow));
            }
        }
        out.line("lattice_vs_exhaustive_recursion", worst, 1e-10);
    }

    // Closed forms against the independent lognormal reference.
    {
        Xoshiro256 rng(seed + 2);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            EuroParams p;
            p.x = rng.uniform(0.4, 2.5);
            p.strike = rng.uniform(0.5, 2.0);
            p.r = rng.uniform(0.0, 0.08);
            p.sigma = rng.uniform(0.08, 0.5);
            p.expiry = rng.uniform(0.1, 3.0);
            p.s_rho = rng.uniform(0.0, 0.4);
            const double q = p.s_rho * p.sigma;
            worst = std::max(worst, std::abs(call_value(p, Side::bid) -
                                             bs_reference(p.x, p.strike, p.r, q, p.sigma,
                                                          p.expiry, PayoffKind::call)));
            worst = std::max(worst, std::abs(call_value(p, Side::ask) -
                                             bs_reference(p.x, p.strike, p.r, -q, p.sigma,
                                                          p.expiry, PayoffKind::call)));
            worst = std::max(worst, std::abs(put_value(p, Side::ask) -
                                             bs_reference(p.x, p.strike, p.r, q, p.sigma,
                                                          p.expiry, PayoffKind::put)));
            worst = std::max(worst, std::abs(put_value(p, Side::bid) -
                                             bs_reference(p.x, p.strike, p.r, -q, p.sigma,
                                                          p.expiry, PayoffKind::put)));
            // Foreign-rate reading of the same kernel.
            worst = std::max(worst,
                             std::abs(garman_kohlhagen_value(p.x, p.strike, p.r, q, p.sigma,
                                                             p.expiry) -
                                      call_value(p, Side::bid)));
        }
        out.line("closed_form_vs_reference", worst, 1e-12);
    }

    // Nested Wiener identity and its Monte Carlo estimate.
    {
        const double horizon = 1.0;
        const double beta = 0.5;
        const double exact = horizon * beta * s_rho(1.0, 1.0);
        const double nested = nested_wiener_value(horizon, 4, 1.0,
                                                  std::vector<double>(4, beta));
        out.line("nested_wiener_closed_identity", std::abs(nested - exact), 1e-12);
        const McEstimate mc = mc_nested_wiener(horizon, 4, 1.0, beta, 100000, seed + 3);
        const double gap = std::abs(mc.estimate - exact);
        out.line("nested_wiener_mc_within_3se", std::max(gap - 3.0 * mc.stderr_, 0.0), 1e-12);
    }

    // Merton growth ODE against RK4.
    {
        merton::MertonParams mp;
        mp.s_rho = 0.2;
        out.line("merton_ode_integration", merton::ode_check(mp, merton::NuVariant::cross_term),
                 1e-8);
    }

    return {out.text, out.passed};
}

} // namespace riskaverse::oracle
