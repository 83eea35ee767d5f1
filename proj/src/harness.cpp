#include "hellstat/harness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "hellstat/quadrature.hpp"

namespace hellstat {

namespace {

std::string kind_name(EnsembleKind k) { return k == EnsembleKind::HS ? "hs" : "bh"; }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Draws (sqrt-eigenvalues, eigenbasis) pairs of random density matrices for
/// one ensemble; BH goes through the log-gas chain plus Haar conjugation.
class SideSampler {
  public:
    SideSampler(const EnsembleParams& params, const McmcConfig& mcmc, Rng rng)
        : params_(params), rng_(rng) {
        if (params.kind == EnsembleKind::BH)
            chain_.emplace(params, mcmc, rng_.split(0xb4));
    }

    void draw(RealVector& sqrt_lam, ComplexMatrix& basis) {
        if (params_.kind == EnsembleKind::HS) {
            const ComplexMatrix rho = sample_hs_density(params_, rng_);
            EigenDecomposition ed = hermitian_eigh(rho);
            sqrt_lam = ed.eigenvalues.cwiseMax(0.0).cwiseSqrt();
            basis = std::move(ed.basis);
        } else {
            const RealVector& lam = chain_->next();
            sqrt_lam = lam.cwiseSqrt();
            basis = sample_haar_unitary(params_.n, rng_);
        }
    }

    std::optional<ChainDiagnostics> diagnostics() {
        if (!chain_) return std::nullopt;
        return chain_->diagnostics();
    }

  private:
    EnsembleParams params_;
    Rng rng_;
    std::optional<BhSpectrumChain> chain_;
};

std::string scenario_label(const Scenario& sc) {
    std::ostringstream os;
    if (sc.kind == ScenarioKind::FixedVsRandom) {
        os << "fixed-vs-random " << kind_name(sc.ensemble_1.kind) << " n=" << sc.ensemble_1.n
           << " m=" << sc.ensemble_1.m;
    } else {
        os << "random-vs-random " << kind_name(sc.ensemble_1.kind) << "(m1=" << sc.ensemble_1.m
           << ")-" << kind_name(sc.ensemble_2->kind) << "(m2=" << sc.ensemble_2->m
           << ") n=" << sc.ensemble_1.n;
    }
    return os.str();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (cfg.histogram_bins < 2) throw std::invalid_argument("run_experiment: need >= 2 bins");
    if (cfg.workers < 1) throw std::invalid_argument("run_experiment: workers must be >= 1");

    const Scenario& sc = cfg.scenario;

    ExperimentResult result;
    StatsReport& rep = result.report;
    rep.scenario_label = scenario_label(sc);
    rep.exact = hellinger_summary(sc);
    rep.trials = cfg.trials;
    rep.seed = cfg.seed;
    rep.workers = cfg.workers;

    std::vector<double> samples;
    samples.reserve(cfg.trials);

    const Rng base(cfg.seed);
    RealVector sqrt_sigma;
    if (sc.kind == ScenarioKind::FixedVsRandom) sqrt_sigma = sc.fixed_spectrum->cwiseSqrt();

    for (int w = 0; w < cfg.workers; ++w) {
        const long long quota =
            cfg.trials / cfg.workers + (w < cfg.trials % cfg.workers ? 1 : 0);
        Rng wrng = base.split(static_cast<std::uint64_t>(w) + 1);
        if (sc.kind == ScenarioKind::FixedVsRandom) {
            SideSampler side(sc.ensemble_1, cfg.mcmc, wrng.split(1));
            RealVector sl;
            ComplexMatrix u;
            for (long long t = 0; t < quota; ++t) {
                side.draw(sl, u);
                // A = sum_i sqrt(sigma_i) (sqrt rho)_{ii} with sigma diagonal.
                const double a = sqrt_sigma.dot(u.cwiseAbs2() * sl);
                samples.push_back(2.0 - 2.0 * a);
            }
            if (auto d = side.diagnostics()) rep.chain_diagnostics.push_back(*d);
        } else {
            SideSampler s1(sc.ensemble_1, cfg.mcmc, wrng.split(1));
            SideSampler s2(*sc.ensemble_2, cfg.mcmc, wrng.split(2));
            RealVector l1, l2;
            ComplexMatrix u1, u2;
            for (long long t = 0; t < quota; ++t) {
                s1.draw(l1, u1);
                s2.draw(l2, u2);
                const ComplexMatrix w12 = u1.adjoint() * u2;
                const double a = l1.dot(w12.cwiseAbs2() * l2);
                samples.push_back(2.0 - 2.0 * a);
            }
            if (auto d = s1.diagnostics()) rep.chain_diagnostics.push_back(*d);
            if (auto d = s2.diagnostics()) rep.chain_diagnostics.push_back(*d);
        }
    }

    const auto count = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= count;
    double m2 = 0.0, m4 = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= count;
    m4 /= count;
    const double var = count > 1 ? m2 * count / (count - 1.0) : 0.0;
    rep.mc_mean_dh = mean;
    rep.mc_var_dh = var;
    rep.mc_stderr_mean = std::sqrt(m2 / count);
    rep.mc_stderr_var = std::sqrt(std::max(0.0, m4 - m2 * m2) / count);

    auto z_of = [](double mc, double exact, double se) {
        const double diff = mc - exact;
        if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return diff / se;
    };
    rep.z_mean = z_of(mean, rep.exact.mean_dh, rep.mc_stderr_mean);
    rep.z_var = z_of(var, rep.exact.var_dh, rep.mc_stderr_var);

    for (size_t i = 0; i < rep.chain_diagnostics.size(); ++i) {
        if (!rep.chain_diagnostics[i].acceptance_in_bounds) {
            std::ostringstream os;
            os << "chain " << i << " acceptance rate "
               << rep.chain_diagnostics[i].acceptance_rate << " outside [0.05, 0.95]";
            rep.warnings.push_back(os.str());
        }
    }

    // Histogram over [min, max] of the sample; degenerate spread widens to a
    // unit bin so density still integrates to 1.
    double lo = samples[0], hi = samples[0];
    for (double x : samples) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (hi <= lo) hi = lo + 1.0;
    const int bins = cfg.histogram_bins;
    Histogram& h = result.histogram;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;
    h.counts.assign(bins, 0);
    for (double x : samples) {
        int b = static_cast<int>((x - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[b];
    }
    h.density.resize(bins);
    for (int b = 0; b < bins; ++b)
        h.density[b] = static_cast<double>(h.counts[b]) /
                       (count * (h.edges[b + 1] - h.edges[b]));

    return result;
}

HaarMomentReport verify_haar_moment2(int n, long long trials, Rng& rng) {
    if (n < 1) throw std::invalid_argument("verify_haar_moment2: n must be >= 1");
    const int n4 = n * n * n * n;
    std::vector<std::complex<double>> acc(n4, 0.0);
    for (long long t = 0; t < trials; ++t) {
        const ComplexMatrix u = sample_haar_unitary(n, rng);
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) acc[idx++] += u(i, j) * std::conj(u(k, l));
    }
    const double wg1 = 1.0 / n;
    HaarMomentReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.tuples_checked = n4;
    rep.threshold = 3.0 / std::sqrt(static_cast<double>(trials));
    int idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const std::complex<double> mc = acc[idx++] / static_cast<double>(trials);
                    const double exact = (i == k && j == l) ? wg1 : 0.0;
                    rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(mc - exact));
                }
    rep.pass = rep.max_abs_deviation < rep.threshold;
    return rep;
}

HaarMomentReport verify_haar_moment4(int n, long long trials, Rng& rng, int sample_tuples) {
    if (n < 2) throw std::invalid_argument("verify_haar_moment4: n must be >= 2");
    struct Tuple {
        int i, j, k, l, p, q, r, s;
    };
    std::vector<Tuple> tuples;
    if (n == 2) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        for (int p = 0; p < 2; ++p)
                            for (int q = 0; q < 2; ++q)
                                for (int r = 0; r < 2; ++r)
                                    for (int s = 0; s < 2; ++s)
                                        tuples.push_back({i, j, k, l, p, q, r, s});
    } else {
        for (int t = 0; t < sample_tuples; ++t) {
            auto pick = [&] { return static_cast<int>(rng.uniform_int(n)); };
            tuples.push_back({pick(), pick(), pick(), pick(), pick(), pick(), pick(), pick()});
        }
    }

    std::vector<std::complex<double>> acc(tuples.size(), 0.0);
    for (long long t = 0; t < trials; ++t) {
        const ComplexMatrix u = sample_haar_unitary(n, rng);
        for (size_t a = 0; a < tuples.size(); ++a) {
            const Tuple& tp = tuples[a];
            acc[a] += u(tp.i, tp.j) * u(tp.k, tp.l) * std::conj(u(tp.p, tp.q)) *
                      std::conj(u(tp.r, tp.s));
        }
    }

    const WeingartenConstants wg(n);
    HaarMomentReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.tuples_checked = static_cast<int>(tuples.size());
    rep.threshold = 3.0 / std::sqrt(static_cast<double>(trials));
    for (size_t a = 0; a < tuples.size(); ++a) {
        const Tuple& t = tuples[a];
        const double exact =
            wg.wg11() * ((t.i == t.p && t.j == t.q && t.k == t.r && t.l == t.s ? 1.0 : 0.0) +
                         (t.i == t.r && t.j == t.s && t.k == t.p && t.l == t.q ? 1.0 : 0.0)) +
            wg.wg2() * ((t.i == t.p && t.j == t.s && t.k == t.r && t.l == t.q ? 1.0 : 0.0) +
                        (t.i == t.r && t.j == t.q && t.k == t.p && t.l == t.s ? 1.0 : 0.0));
        const std::complex<double> mc = acc[a] / static_cast<double>(trials);
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(mc - exact));
    }
    rep.pass = rep.max_abs_deviation < rep.threshold;
    return rep;
}

GroupIntegralReport verify_group_integral_fixed(const RealVector& sigma, const RealVector& lambda,
                                                long long trials, Rng& rng) {
    validate_spectrum(sigma);
    validate_spectrum(lambda);
    if (sigma.size() != lambda.size())
        throw std::invalid_argument("verify_group_integral_fixed: dimension mismatch");
    const int n = static_cast<int>(sigma.size());
    const RealVector sqrt_sigma = sigma.cwiseSqrt();
    const RealVector sqrt_lam = lambda.cwiseSqrt();
    const double ts = sqrt_sigma.sum();
    const double tl = sqrt_lam.sum();

    double sum = 0.0, sum2 = 0.0;
    for (long long t = 0; t < trials; ++t) {
        const ComplexMatrix u = sample_haar_unitary(n, rng);
        const double tr = sqrt_sigma.dot(u.cwiseAbs2() * sqrt_lam);
        const double v = tr * tr;
        sum += v;
        sum2 += v * v;
    }
    const double mc = sum / static_cast<double>(trials);
    const double var = std::max(0.0, sum2 / static_cast<double>(trials) - mc * mc);

    GroupIntegralReport rep;
    rep.trials = trials;
    rep.mc_value = mc;
    if (n == 1) {
        rep.exact_value = 1.0;
    } else {
        const WeingartenConstants wg(n);
        rep.exact_value = wg.wg11() * (tl * tl * ts * ts + 1.0) + wg.wg2() * (ts * ts + tl * tl);
    }
    rep.stderr_mc = std::sqrt(var / static_cast<double>(trials));
    rep.z = rep.stderr_mc > 0.0 ? (mc - rep.exact_value) / rep.stderr_mc
                                : (mc == rep.exact_value ? 0.0 : std::numeric_limits<double>::infinity());
    rep.pass = std::abs(rep.z) < 3.0;
    return rep;
}

double gamma_histogram_tv_distance(const Histogram& hist, double shape, double rate) {
    // Gamma probability mass per bin via fixed-order Gauss-Legendre; the
    // leftover gamma mass outside the binned range counts as discrepancy.
    double tv = 0.0;
    double gamma_mass = 0.0;
    const long long total = [&] {
        long long s = 0;
        for (long long c : hist.counts) s += c;
        return s;
    }();
    for (size_t b = 0; b < hist.counts.size(); ++b) {
        const double a = hist.edges[b];
        const double bb = hist.edges[b + 1];
        const double q = integrate_gl(
            [&](double x) { return gamma_pdf(std::max(x, 0.0), shape, rate); }, a, bb, 1e-11, 10);
        const double p = static_cast<double>(hist.counts[b]) / static_cast<double>(total);
        tv += std::abs(p - q);
        gamma_mass += q;
    }
    tv += std::abs(1.0 - gamma_mass);
    return 0.5 * tv;
}

std::string emit_report(const ExperimentResult& result, ReportFormat format) {
    const StatsReport& r = result.report;
    const Histogram& h = result.histogram;
    std::ostringstream os;

    auto opt17 = [&](const std::optional<double>& v) {
        return v ? fmt17(*v) : std::string("null");
    };

    if (format == ReportFormat::Json) {
        os << "{\n";
        os << "  \"scenario\": \"" << r.scenario_label << "\",\n";
        os << "  \"params\": {\"trials\": " << r.trials << ", \"seed\": " << r.seed
           << ", \"workers\": " << r.workers << "},\n";
        os << "  \"exact\": {\"mean_affinity\": " << fmt17(r.exact.mean_affinity)
           << ", \"mean_sq_affinity\": " << fmt17(r.exact.mean_sq_affinity)
           << ", \"mean_dh\": " << fmt17(r.exact.mean_dh)
           << ", \"var_dh\": " << fmt17(r.exact.var_dh)
           << ", \"gamma_shape\": " << opt17(r.exact.gamma_shape)
           << ", \"gamma_rate\": " << opt17(r.exact.gamma_rate) << "},\n";
        os << "  \"monte_carlo\": {\"mean_dh\": " << fmt17(r.mc_mean_dh)
           << ", \"var_dh\": " << fmt17(r.mc_var_dh)
           << ", \"stderr_mean\": " << fmt17(r.mc_stderr_mean)
           << ", \"stderr_var\": " << fmt17(r.mc_stderr_var)
           << ", \"z_mean\": " << fmt17(r.z_mean) << ", \"z_var\": " << fmt17(r.z_var) << "},\n";
        os << "  \"diagnostics\": {\"chains\": [";
        for (size_t i = 0; i < r.chain_diagnostics.size(); ++i) {
            const auto& d = r.chain_diagnostics[i];
            if (i) os << ", ";
            os << "{\"acceptance_rate\": " << fmt17(d.acceptance_rate)
               << ", \"tuned_delta\": " << fmt17(d.tuned_delta)
               << ", \"autocorr_time\": " << fmt17(d.autocorr_time) << "}";
        }
        os << "], \"warnings\": [";
        for (size_t i = 0; i < r.warnings.size(); ++i) {
            if (i) os << ", ";
            os << "\"" << r.warnings[i] << "\"";
        }
        os << "]},\n";
        os << "  \"histogram\": {\"edges\": [";
        for (size_t i = 0; i < h.edges.size(); ++i) {
            if (i) os << ", ";
            os << fmt17(h.edges[i]);
        }
        os << "], \"counts\": [";
        for (size_t i = 0; i < h.counts.size(); ++i) {
            if (i) os << ", ";
            os << h.counts[i];
        }
        os << "], \"density\": [";
        for (size_t i = 0; i < h.density.size(); ++i) {
            if (i) os << ", ";
            os << fmt17(h.density[i]);
        }
        os << "]}\n}\n";
        return os.str();
    }

    // CSV: key/value block, blank line, histogram table with the gamma
    // overlay sampled at bin midpoints.
    os << "scenario," << r.scenario_label << "\n";
    os << "trials," << r.trials << "\n";
    os << "seed," << r.seed << "\n";
    os << "workers," << r.workers << "\n";
    os << "exact_mean_affinity," << fmt17(r.exact.mean_affinity) << "\n";
    os << "exact_mean_sq_affinity," << fmt17(r.exact.mean_sq_affinity) << "\n";
    os << "exact_mean_dh," << fmt17(r.exact.mean_dh) << "\n";
    os << "exact_var_dh," << fmt17(r.exact.var_dh) << "\n";
    os << "gamma_shape," << opt17(r.exact.gamma_shape) << "\n";
    os << "gamma_rate," << opt17(r.exact.gamma_rate) << "\n";
    os << "mc_mean_dh," << fmt17(r.mc_mean_dh) << "\n";
    os << "mc_var_dh," << fmt17(r.mc_var_dh) << "\n";
    os << "mc_stderr_mean," << fmt17(r.mc_stderr_mean) << "\n";
    os << "mc_stderr_var," << fmt17(r.mc_stderr_var) << "\n";
    os << "z_mean," << fmt17(r.z_mean) << "\n";
    os << "z_var," << fmt17(r.z_var) << "\n";
    os << "\n";
    os << "bin_left,bin_right,count,density,gamma_density\n";
    for (size_t b = 0; b < h.counts.size(); ++b) {
        const double mid = 0.5 * (h.edges[b] + h.edges[b + 1]);
        const double g = (r.exact.gamma_shape && r.exact.gamma_rate)
                             ? gamma_pdf(mid, *r.exact.gamma_shape, *r.exact.gamma_rate)
                             : 0.0;
        os << fmt17(h.edges[b]) << "," << fmt17(h.edges[b + 1]) << "," << h.counts[b] << ","
           << fmt17(h.density[b]) << "," << fmt17(g) << "\n";
    }
    return os.str();
}

}  // namespace hellstat
