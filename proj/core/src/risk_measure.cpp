#include "riskaverse/risk/risk_measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "riskaverse/errors.hpp"
#include "riskaverse/math/quadrature.hpp"

namespace riskaverse {

// ---------------------------------------------------------------------------
// RiskSpec
// ---------------------------------------------------------------------------

RiskSpec RiskSpec::expectation() {
    RiskSpec spec;
    spec.kind = MeasureKind::expectation;
    return spec;
}

RiskSpec RiskSpec::semi_deviation(double p, double beta, bool scale_with_dt) {
    RiskSpec spec;
    spec.kind = MeasureKind::mean_semi_deviation;
    spec.order = p;
    spec.level = beta;
    spec.scale_level_with_dt = scale_with_dt;
    spec.validate();
    return spec;
}

RiskSpec RiskSpec::avar(double alpha) {
    RiskSpec spec;
    spec.kind = MeasureKind::avar;
    spec.level = alpha;
    spec.scale_level_with_dt = false;  // AVaR carries no divisible scaling
    spec.validate();
    return spec;
}

RiskSpec RiskSpec::per_step(double dt) const {
    validate();
    if (kind == MeasureKind::mean_semi_deviation && scale_level_with_dt) {
        RiskSpec step = *this;
        step.level = level * std::sqrt(dt);
        step.validate();
        return step;
    }
    return *this;
}

void RiskSpec::validate() const {
    switch (kind) {
    case MeasureKind::expectation:
        return;
    case MeasureKind::mean_semi_deviation:
        if (!(order >= 1.0)) throw ValidationError("semi-deviation: order p must be >= 1");
        if (!(level >= 0.0 && level <= 1.0)) {
            throw ValidationError("semi-deviation: level beta must lie in [0, 1]");
        }
        return;
    case MeasureKind::avar:
        if (!(level > 0.0 && level < 1.0)) {
            throw ValidationError("AVaR: level alpha must lie in (0, 1)");
        }
        return;
    }
    throw ValidationError("risk measure: unknown kind");
}

std::string RiskSpec::describe() const {
    char buf[64];
    switch (kind) {
    case MeasureKind::expectation:
        return "E";
    case MeasureKind::mean_semi_deviation:
        std::snprintf(buf, sizeof buf, "SD(p=%g,beta=%g)", order, level);
        return buf;
    case MeasureKind::avar:
        std::snprintf(buf, sizeof buf, "AVaR(alpha=%g)", level);
        return buf;
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double semi_deviation_value(double p, double beta, const DiscreteDistribution& dist) {
    const double m = dist.mean();
    if (beta == 0.0) return m;
    double moment = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double dev = dist.outcomes[i] - m;
        if (dev > 0.0) {
            moment += dist.probabilities[i] * (p == 1.0 ? dev : std::pow(dev, p));
        }
    }
    const double norm = p == 1.0 ? moment : std::pow(moment, 1.0 / p);
    return m + beta * norm;
}

// Mean of the upper alpha-tail, splitting the straddling atom exactly.
double avar_value(double alpha, const DiscreteDistribution& dist) {
    std::vector<std::size_t> idx(dist.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&dist](std::size_t a, std::size_t b) {
        return dist.outcomes[a] > dist.outcomes[b];
    });
    double remaining = alpha;
    double acc = 0.0;
    for (std::size_t i : idx) {
        const double take = std::min(remaining, dist.probabilities[i]);
        acc += take * dist.outcomes[i];
        remaining -= take;
        if (remaining <= alpha * 1e-16) break;
    }
    return acc / alpha;
}

} // namespace

double evaluate(const RiskSpec& measure, const DiscreteDistribution& dist) {
    measure.validate();
    dist.validate();
    switch (measure.kind) {
    case MeasureKind::expectation:
        return dist.mean();
    case MeasureKind::mean_semi_deviation:
        return semi_deviation_value(measure.order, measure.level, dist);
    case MeasureKind::avar:
        return avar_value(measure.level, dist);
    }
    throw ValidationError("risk measure: unknown kind");
}

double bid_value(const RiskSpec& measure, const DiscreteDistribution& dist) {
    return -evaluate(measure, dist.negated());
}

double evaluate_two_point(const RiskSpec& measure, double y_up, double y_down, double p_up) {
    const double p_down = 1.0 - p_up;
    const double m = p_up * y_up + p_down * y_down;
    switch (measure.kind) {
    case MeasureKind::expectation:
        return m;
    case MeasureKind::mean_semi_deviation: {
        const double p = measure.order;
        const double d_up = y_up > m ? y_up - m : 0.0;
        const double d_down = y_down > m ? y_down - m : 0.0;
        double norm;
        if (p == 1.0) {
            norm = p_up * d_up + p_down * d_down;
        } else if (p == 2.0) {
            norm = std::sqrt(p_up * d_up * d_up + p_down * d_down * d_down);
        } else {
            norm = std::pow(p_up * std::pow(d_up, p) + p_down * std::pow(d_down, p), 1.0 / p);
        }
        return m + measure.level * norm;
    }
    case MeasureKind::avar: {
        const double alpha = measure.level;
        const double hi = std::max(y_up, y_down);
        const double lo = std::min(y_up, y_down);
        const double p_hi = y_up >= y_down ? p_up : p_down;
        if (alpha <= p_hi) return hi;
        return (p_hi * hi + (alpha - p_hi) * lo) / alpha;
    }
    }
    throw ValidationError("risk measure: unknown kind");
}

double two_point_value(const RiskSpec& measure, Side side, double y_up, double y_down,
                       double p_up) {
    if (side == Side::ask) return evaluate_two_point(measure, y_up, y_down, p_up);
    return -evaluate_two_point(measure, -y_up, -y_down, p_up);
}

// ---------------------------------------------------------------------------
// Divisibility constant
// ---------------------------------------------------------------------------

double s_rho(double p, double beta) {
    if (!(p >= 1.0)) throw DomainError("s_rho: order p must be >= 1");
    if (!(beta >= 0.0)) throw DomainError("s_rho: beta must be >= 0");
    return beta * std::pow(2.0 * M_PI, -0.5 / p) * std::pow(2.0, 0.5 - 0.5 / p) *
           std::pow(std::tgamma(0.5 * (p + 1.0)), 1.0 / p);
}

std::vector<double> s_rho_limit_probe(double p, double beta,
                                      const std::vector<double>& dt_sequence) {
    if (!(p >= 1.0)) throw DomainError("s_rho_limit_probe: order p must be >= 1");
    if (!(beta >= 0.0)) throw DomainError("s_rho_limit_probe: beta must be >= 0");
    for (std::size_t i = 0; i < dt_sequence.size(); ++i) {
        if (!(dt_sequence[i] > 0.0)) {
            throw DomainError("s_rho_limit_probe: dt values must be positive");
        }
        if (i > 0 && !(dt_sequence[i] < dt_sequence[i - 1])) {
            throw DomainError("s_rho_limit_probe: dt values must be decreasing");
        }
    }
    std::vector<double> out;
    out.reserve(dt_sequence.size());
    for (double dt : dt_sequence) {
        const double sdt = std::sqrt(dt);
        // E[(sqrt(dt) W)_+^p] over the positive half line; the kink sits on
        // the panel edge so the quadrature sees a smooth integrand.
        const double moment = std_normal_partial_expectation(
            [p, sdt](double w) { return std::pow(sdt * w, p); }, 0.0);
        const double rho = beta * sdt * std::pow(moment, 1.0 / p);
        out.push_back(rho / dt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Axiom harness
// ---------------------------------------------------------------------------

namespace {

void record(AxiomCheck& check, double violation, double tol) {
    if (violation > check.worst_violation) check.worst_violation = violation;
    if (violation > tol) check.passed = false;
}

// Same law, different representation: permuted atoms, some split in half.
DiscreteDistribution reshuffled(const DiscreteDistribution& dist, Xoshiro256& rng) {
    std::vector<std::size_t> order(dist.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform() * i)]);
    }
    DiscreteDistribution alt;
    for (std::size_t i : order) {
        if (rng.uniform() < 0.5) {
            const double half = dist.probabilities[i] * 0.5;
            alt.outcomes.push_back(dist.outcomes[i]);
            alt.probabilities.push_back(half);
            alt.outcomes.push_back(dist.outcomes[i]);
            alt.probabilities.push_back(dist.probabilities[i] - half);
        } else {
            alt.outcomes.push_back(dist.outcomes[i]);
            alt.probabilities.push_back(dist.probabilities[i]);
        }
    }
    return alt;
}

} // namespace

bool AxiomReport::all_passed() const {
    return monotonicity.passed && translation_equivariance.passed && subadditivity.passed &&
           positive_homogeneity.passed && law_invariance.passed;
}

std::string AxiomReport::summary(const std::string& label) const {
    const auto line = [](const char* name, const AxiomCheck& c) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %-24s %s  worst violation %.3e\n", name,
                      c.passed ? "pass" : "FAIL", c.worst_violation);
        return std::string(buf);
    };
    std::string out = label + " (" + std::to_string(trials) + " trials, tol " +
                      std::to_string(tolerance) + ")\n";
    out += line("monotonicity", monotonicity);
    out += line("translation", translation_equivariance);
    out += line("subadditivity", subadditivity);
    out += line("positive homogeneity", positive_homogeneity);
    out += line("law invariance", law_invariance);
    return out;
}

AxiomReport axiom_report(const RiskSpec& measure, int trials, std::uint64_t seed,
                         double tolerance) {
    if (trials < 1) throw DomainError("axiom_report: trials must be >= 1");
    measure.validate();
    Xoshiro256 rng(seed);
    AxiomReport report;
    report.trials = trials;
    report.tolerance = tolerance;

    for (int trial = 0; trial < trials; ++trial) {
        const DiscreteDistribution y = random_distribution(rng);
        const double rho_y = evaluate(measure, y);

        // A1: dominate Y atom-wise on the same sample space.
        DiscreteDistribution upper = y;
        for (double& v : upper.outcomes) v += rng.uniform(0.0, 2.0);
        record(report.monotonicity, rho_y - evaluate(measure, upper), tolerance);

        // A2: shift by a constant.
        const double c = rng.uniform(-5.0, 5.0);
        DiscreteDistribution shifted = y;
        for (double& v : shifted.outcomes) v += c;
        record(report.translation_equivariance,
               std::abs(evaluate(measure, shifted) - rho_y - c), tolerance);

        // A3: a second payoff on the same sample space.
        DiscreteDistribution other = y;
        for (double& v : other.outcomes) v = rng.uniform(-10.0, 10.0);
        DiscreteDistribution sum = y;
        for (std::size_t i = 0; i < sum.size(); ++i) sum.outcomes[i] += other.outcomes[i];
        record(report.subadditivity,
               evaluate(measure, sum) - rho_y - evaluate(measure, other), tolerance);

        // A4: scale by nonnegative factors.
        for (double lambda : {0.0, 0.5, 2.0, 10.0}) {
            DiscreteDistribution scaled = y;
            for (double& v : scaled.outcomes) v *= lambda;
            record(report.positive_homogeneity,
                   std::abs(evaluate(measure, scaled) - lambda * rho_y), tolerance);
        }

        // A5: the value may depend on the law only.
        record(report.law_invariance,
               std::abs(evaluate(measure, reshuffled(y, rng)) - rho_y), tolerance);
    }
    return report;
}

} // namespace riskaverse
