#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hellstat/hellinger.hpp"

namespace hellstat {

struct ExperimentConfig {
    Scenario scenario;
    long long trials = 1000000;
    std::uint64_t seed = 1;
    McmcConfig mcmc;         // BH scenarios only
    int histogram_bins = 50;
    int workers = 1;
};

struct Histogram {
    std::vector<double> edges;    // bins + 1 entries
    std::vector<long long> counts;
    std::vector<double> density;  // counts / (trials * width)
};

struct StatsReport {
    std::string scenario_label;
    HellingerSummary exact;
    double mc_mean_dh = 0.0;
    double mc_var_dh = 0.0;
    double mc_stderr_mean = 0.0;
    double mc_stderr_var = 0.0;
    double z_mean = 0.0;
    double z_var = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::vector<ChainDiagnostics> chain_diagnostics;  // one per BH chain
    std::vector<std::string> warnings;
};

struct ExperimentResult {
    StatsReport report;
    Histogram histogram;
};

/// Samples `trials` independent D_H draws for the scenario, compares against
/// the exact summary and builds the histogram. Deterministic for a fixed
/// (config, seed, workers) triple.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct HaarMomentReport {
    int n = 0;
    long long trials = 0;
    int tuples_checked = 0;
    double max_abs_deviation = 0.0;
    double threshold = 0.0;  // 3 / sqrt(trials)
    bool pass = false;
};

/// Monte Carlo check of int U_{ij} U*_{kl} dmu against Wg(1,n) delta_ik delta_jl.
HaarMomentReport verify_haar_moment2(int n, long long trials, Rng& rng);

/// Monte Carlo check of the 4th-order Haar moment against the two-Weingarten
/// formula. All index tuples at n = 2; `sample_tuples` random tuples otherwise.
HaarMomentReport verify_haar_moment4(int n, long long trials, Rng& rng, int sample_tuples = 50);

struct GroupIntegralReport {
    double mc_value = 0.0;
    double exact_value = 0.0;
    double stderr_mc = 0.0;
    double z = 0.0;
    long long trials = 0;
    bool pass = false;  // |z| < 3
};

/// MC average of [tr(U sqrt(Lambda) U^dag sqrt(sigma))]^2 over Haar U versus
/// the closed Weingarten form.
GroupIntegralReport verify_group_integral_fixed(const RealVector& sigma, const RealVector& lambda,
                                                long long trials, Rng& rng);

enum class ReportFormat { Json, Csv };

/// Stable-field-order serialization; numbers printed with 17 significant digits.
std::string emit_report(const ExperimentResult& result, ReportFormat format);

/// Total variation distance between the empirical histogram and the gamma
/// approximation integrated over the same bins.
double gamma_histogram_tv_distance(const Histogram& hist, double shape, double rate);

}  // namespace hellstat
