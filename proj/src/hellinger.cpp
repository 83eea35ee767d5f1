#include "hellstat/hellinger.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hellstat/specialfn.hpp"

namespace hellstat {

namespace {

double sqrt_trace(const RealVector& sigma) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) s += std::sqrt(sigma[i]);
    return s;
}

double ensemble_first_moment(const EnsembleParams& p) {
    return p.kind == EnsembleKind::HS ? mean_sqrt_trace_hs(p.n, p.m)
                                      : mean_sqrt_trace_bh(p.n, p.m);
}

double ensemble_second_moment(const EnsembleParams& p) {
    return p.kind == EnsembleKind::HS ? second_moment_sqrt_trace_hs(p.n, p.m)
                                      : second_moment_sqrt_trace_bh(p.n, p.m);
}

}  // namespace

Scenario Scenario::fixed_vs_random(RealVector sigma, EnsembleParams ensemble) {
    validate_spectrum(sigma);
    if (sigma.size() != ensemble.n)
        throw std::invalid_argument("Scenario: fixed spectrum dimension must equal ensemble n");
    return {ScenarioKind::FixedVsRandom, std::move(sigma), ensemble, std::nullopt};
}

Scenario Scenario::two_random(EnsembleParams e1, EnsembleParams e2) {
    if (e1.n != e2.n)
        throw std::invalid_argument("Scenario: both ensembles must share dimension n");
    return {ScenarioKind::RandomVsRandom, std::nullopt, e1, e2};
}

double mean_affinity_fixed(const RealVector& sigma, const EnsembleParams& params) {
    if (sigma.size() != params.n) throw std::invalid_argument("mean_affinity_fixed: dimension mismatch");
    return sqrt_trace(sigma) / params.n * ensemble_first_moment(params);
}

double mean_sq_affinity_fixed(const RealVector& sigma, const EnsembleParams& params) {
    if (sigma.size() != params.n)
        throw std::invalid_argument("mean_sq_affinity_fixed: dimension mismatch");
    const int n = params.n;
    if (n == 1) return 1.0;  // affinity is identically 1
    const double ts = sqrt_trace(sigma);
    const double ts2 = ts * ts;
    const double second = ensemble_second_moment(params);
    return (1.0 - ts2 / n) / (static_cast<double>(n) * n - 1.0) +
           (ts2 - 1.0 / n) / (static_cast<double>(n) * n - 1.0) * second;
}

double mean_affinity_two_random(const EnsembleParams& p1, const EnsembleParams& p2) {
    if (p1.n != p2.n) throw std::invalid_argument("mean_affinity_two_random: dimension mismatch");
    return ensemble_first_moment(p1) * ensemble_first_moment(p2) / p1.n;
}

double mean_sq_affinity_two_random(const EnsembleParams& p1, const EnsembleParams& p2) {
    if (p1.n != p2.n)
        throw std::invalid_argument("mean_sq_affinity_two_random: dimension mismatch");
    const int n = p1.n;
    if (n == 1) return 1.0;
    const double s1 = ensemble_second_moment(p1);
    const double s2 = ensemble_second_moment(p2);
    return (s1 * s2 - s1 / n - s2 / n + 1.0) / (static_cast<double>(n) * n - 1.0);
}

HellingerSummary hellinger_summary(const Scenario& scenario) {
    double mean_a, mean_a2;
    if (scenario.kind == ScenarioKind::FixedVsRandom) {
        if (!scenario.fixed_spectrum || scenario.ensemble_2)
            throw std::invalid_argument("hellinger_summary: malformed fixed-vs-random scenario");
        mean_a = mean_affinity_fixed(*scenario.fixed_spectrum, scenario.ensemble_1);
        mean_a2 = mean_sq_affinity_fixed(*scenario.fixed_spectrum, scenario.ensemble_1);
    } else {
        if (!scenario.ensemble_2 || scenario.fixed_spectrum)
            throw std::invalid_argument("hellinger_summary: malformed two-random scenario");
        mean_a = mean_affinity_two_random(scenario.ensemble_1, *scenario.ensemble_2);
        mean_a2 = mean_sq_affinity_two_random(scenario.ensemble_1, *scenario.ensemble_2);
    }

    HellingerSummary s;
    s.mean_affinity = mean_a;
    s.mean_sq_affinity = mean_a2;
    s.mean_dh = 2.0 - 2.0 * mean_a;
    // D_H is affine in A, so var(D_H) = 4 var(A).
    double var = 4.0 * (mean_a2 - mean_a * mean_a);
    if (var < 0.0) {
        if (var < -1e-12)
            throw std::runtime_error("hellinger_summary: negative variance, formula inconsistency");
        var = 0.0;
    }
    s.var_dh = var;
    if (var > 0.0) {
        s.gamma_shape = s.mean_dh * s.mean_dh / var;
        s.gamma_rate = s.mean_dh / var;
    }
    return s;
}

double gamma_pdf(double x, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::domain_error("gamma_pdf: shape and rate must be positive");
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (shape < 1.0) return std::numeric_limits<double>::infinity();
        if (shape == 1.0) return rate;
        return 0.0;
    }
    return std::exp(shape * std::log(rate) - log_gamma(shape) + (shape - 1.0) * std::log(x) -
                    rate * x);
}

double asymptotic_mean_sq_affinity_hs(int n, int m) {
    if (n < 1 || m < n) throw std::invalid_argument("asymptotic_mean_sq_affinity_hs: need 1 <= n <= m");
    const double f = hyp2f1(0.5, -0.5, 2.0, static_cast<double>(n) / m);
    return f * f * f * f;
}

}  // namespace hellstat
