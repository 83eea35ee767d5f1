#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hellstat/harness.hpp"
#include "hellstat/quadrature.hpp"
#include "hellstat/specialfn.hpp"

namespace {

using namespace hellstat;

EnsembleKind parse_kind(const std::string& s) {
    if (s == "hs") return EnsembleKind::HS;
    if (s == "bh") return EnsembleKind::BH;
    throw CLI::ValidationError("--ensemble", "must be 'hs' or 'bh'");
}

RealVector parse_spectrum(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    if (vals.empty()) throw CLI::ValidationError("--fixed-spectrum", "empty eigenvalue list");
    double sum = 0.0;
    for (double v : vals) {
        if (v < 0.0) throw CLI::ValidationError("--fixed-spectrum", "negative eigenvalue");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw CLI::ValidationError("--fixed-spectrum", "eigenvalues must sum to 1 within 1e-9");
    RealVector out(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) out[i] = vals[i] / sum;
    return out;
}

struct CommonOpts {
    std::string ensemble = "hs";
    std::string ensemble2;
    int n = 2;
    int m = 2;
    int m2 = -1;
    std::string fixed_spectrum;
    long long trials = 1000000;
    std::uint64_t seed = 1;
    int bins = 50;
    int burn_in = 5000;
    int thin = 10;
    int workers = 1;
    std::string out;
    std::string format = "json";
};

void add_scenario_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--ensemble", o.ensemble, "Ensemble of the (first) random state: hs|bh");
    cmd->add_option("--ensemble2", o.ensemble2, "Ensemble of the second random state: hs|bh");
    cmd->add_option("--n", o.n, "System dimension n");
    cmd->add_option("--m", o.m, "Ancilla dimension of the (first) random state");
    cmd->add_option("--m2", o.m2, "Ancilla dimension of the second random state");
    cmd->add_option("--fixed-spectrum", o.fixed_spectrum,
                    "Comma-separated eigenvalues of the fixed state (fixed-vs-random)");
}

Scenario build_scenario(const CommonOpts& o) {
    EnsembleParams e1(parse_kind(o.ensemble), o.n, o.m);
    if (!o.fixed_spectrum.empty()) {
        if (!o.ensemble2.empty())
            throw CLI::ValidationError("--ensemble2", "cannot combine with --fixed-spectrum");
        return Scenario::fixed_vs_random(parse_spectrum(o.fixed_spectrum), e1);
    }
    if (o.ensemble2.empty())
        throw CLI::ValidationError("scenario", "need either --fixed-spectrum or --ensemble2");
    EnsembleParams e2(parse_kind(o.ensemble2), o.n, o.m2 > 0 ? o.m2 : o.m);
    return Scenario::two_random(e1, e2);
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << text;
}

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int cmd_exact(const CommonOpts& o) {
    const Scenario sc = build_scenario(o);
    const HellingerSummary s = hellinger_summary(sc);
    std::ostringstream os;
    os << "{\n  \"mean_affinity\": " << f17(s.mean_affinity)
       << ",\n  \"mean_sq_affinity\": " << f17(s.mean_sq_affinity)
       << ",\n  \"mean_dh\": " << f17(s.mean_dh) << ",\n  \"var_dh\": " << f17(s.var_dh)
       << ",\n  \"gamma_shape\": " << (s.gamma_shape ? f17(*s.gamma_shape) : "null")
       << ",\n  \"gamma_rate\": " << (s.gamma_rate ? f17(*s.gamma_rate) : "null") << "\n}\n";
    write_output(os.str(), o.out);
    return 0;
}

int cmd_simulate(const CommonOpts& o) {
    ExperimentConfig cfg{build_scenario(o), o.trials, o.seed,
                         McmcConfig{o.burn_in, o.thin, 0.0, 0.3}, o.bins, o.workers};
    const ExperimentResult res = run_experiment(cfg);
    write_output(emit_report(res, o.format == "csv" ? ReportFormat::Csv : ReportFormat::Json),
                 o.out);
    return 0;
}

int cmd_sweep(const CommonOpts& o, int m_min, int m_max) {
    std::ostringstream os;
    const bool mc = o.trials > 0;
    os << "m,exact_mean_dh,exact_var_dh";
    if (mc) os << ",mc_mean_dh,mc_var_dh,z_mean,z_var";
    os << "\n";
    for (int m = std::max(m_min, o.n); m <= m_max; ++m) {
        CommonOpts local = o;
        local.m = m;
        if (local.m2 > 0) local.m2 = m;  // sweep both ancillas together
        const Scenario sc = build_scenario(local);
        const HellingerSummary s = hellinger_summary(sc);
        os << m << "," << f17(s.mean_dh) << "," << f17(s.var_dh);
        if (mc) {
            ExperimentConfig cfg{sc, o.trials, o.seed, McmcConfig{o.burn_in, o.thin, 0.0, 0.3},
                                 o.bins, o.workers};
            const ExperimentResult res = run_experiment(cfg);
            os << "," << f17(res.report.mc_mean_dh) << "," << f17(res.report.mc_var_dh) << ","
               << f17(res.report.z_mean) << "," << f17(res.report.z_var);
        }
        os << "\n";
    }
    write_output(os.str(), o.out);
    return 0;
}

bool report_check(const char* name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    return ok;
}

int cmd_verify(long long trials, std::uint64_t seed) {
    bool all = true;
    Rng rng(seed);

    // Joint-density normalizations on the n = 2 simplex.
    for (int m : {2, 3, 4}) {
        EnsembleParams hs(EnsembleKind::HS, 2, m);
        const double ih = integrate_gl(
            [&](double l) {
                RealVector sp(2);
                sp << l, 1.0 - l;
                return std::exp(log_jpdf_hs(sp, hs));
            },
            1e-12, 1.0 - 1e-12, 1e-10);
        all &= report_check("hs jpdf normalization", std::abs(ih - 1.0) < 1e-6,
                            "n=2 m=" + std::to_string(m) + " integral=" + f17(ih));

        EnsembleParams bh(EnsembleKind::BH, 2, m);
        const double ib = integrate_tanh_sinh(
            [&](double l, double r) {
                RealVector sp(2);
                sp << l, r;
                return std::exp(log_jpdf_bh(sp, bh));
            },
            0.0, 1.0, 1e-10);
        all &= report_check("bh jpdf normalization", std::abs(ib - 1.0) < 1e-6,
                            "n=2 m=" + std::to_string(m) + " integral=" + f17(ib));
    }

    // Closed-form moments against direct quadrature at n = 2.
    for (int m : {2, 3}) {
        EnsembleParams hs(EnsembleKind::HS, 2, m);
        auto tr_pow = [](double l, int p) {
            const double t = std::sqrt(l) + std::sqrt(1.0 - l);
            return p == 1 ? t : t * t;
        };
        for (int p : {1, 2}) {
            const double q = integrate_gl(
                [&](double l) {
                    RealVector sp(2);
                    sp << l, 1.0 - l;
                    return std::exp(log_jpdf_hs(sp, hs)) * tr_pow(l, p);
                },
                1e-12, 1.0 - 1e-12, 1e-11);
            const double f = p == 1 ? mean_sqrt_trace_hs(2, m) : second_moment_sqrt_trace_hs(2, m);
            all &= report_check("hs moment vs quadrature", std::abs(q - f) < 1e-8,
                                "p=" + std::to_string(p) + " m=" + std::to_string(m) +
                                    " formula=" + f17(f) + " quad=" + f17(q));
        }
        EnsembleParams bh(EnsembleKind::BH, 2, m);
        for (int p : {1, 2}) {
            const double q = integrate_tanh_sinh(
                [&](double l, double r) {
                    RealVector sp(2);
                    sp << l, r;
                    return std::exp(log_jpdf_bh(sp, bh)) * tr_pow(l, p);
                },
                0.0, 1.0, 1e-11);
            const double f = p == 1 ? mean_sqrt_trace_bh(2, m) : second_moment_sqrt_trace_bh(2, m);
            all &= report_check("bh moment vs quadrature", std::abs(q - f) < 1e-8,
                                "p=" + std::to_string(p) + " m=" + std::to_string(m) +
                                    " formula=" + f17(f) + " quad=" + f17(q));
        }
    }

    // Haar-unitary moment identities.
    for (int n : {1, 2, 3, 4}) {
        const HaarMomentReport r2 = verify_haar_moment2(n, trials, rng);
        all &= report_check("haar 2nd moment", r2.pass,
                            "n=" + std::to_string(n) + " max_dev=" + f17(r2.max_abs_deviation) +
                                " threshold=" + f17(r2.threshold));
    }
    for (int n : {2, 3, 4}) {
        const HaarMomentReport r4 = verify_haar_moment4(n, trials, rng);
        all &= report_check("haar 4th moment", r4.pass,
                            "n=" + std::to_string(n) + " max_dev=" + f17(r4.max_abs_deviation) +
                                " threshold=" + f17(r4.threshold));
    }

    {
        RealVector sigma(5), lam(5);
        sigma << 0.07, 0.16, 0.17, 0.23, 0.37;
        lam << 0.05, 0.1, 0.2, 0.3, 0.35;
        const GroupIntegralReport g = verify_group_integral_fixed(sigma, lam, trials, rng);
        all &= report_check("group integral (fixed sigma)", g.pass,
                            "mc=" + f17(g.mc_value) + " exact=" + f17(g.exact_value) +
                                " z=" + f17(g.z));
    }

    return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hellinger-distance statistics for random density matrices"};
    app.require_subcommand(1);

    CommonOpts o;
    int m_min = 2, m_max = 10;

    CLI::App* exact = app.add_subcommand("exact", "Print the exact Hellinger summary");
    add_scenario_flags(exact, o);
    exact->add_option("--out", o.out, "Output path (default stdout)");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo experiment with report");
    add_scenario_flags(simulate, o);
    simulate->add_option("--trials", o.trials, "Number of Monte Carlo trials");
    simulate->add_option("--seed", o.seed, "RNG seed");
    simulate->add_option("--bins", o.bins, "Histogram bin count");
    simulate->add_option("--burn-in", o.burn_in, "MCMC burn-in sweeps (BH)");
    simulate->add_option("--thin", o.thin, "MCMC thinning sweeps (BH)");
    simulate->add_option("--workers", o.workers, "Worker partitions (split seeds)");
    simulate->add_option("--out", o.out, "Output path (default stdout)");
    simulate->add_option("--format", o.format, "json|csv");

    CLI::App* verify = app.add_subcommand("verify", "Quadrature oracles and Haar moment checks");
    long long vtrials = 100000;
    std::uint64_t vseed = 7;
    verify->add_option("--trials", vtrials, "Haar draws per check");
    verify->add_option("--seed", vseed, "RNG seed");

    CLI::App* sweep = app.add_subcommand("sweep", "Tabulate mean/var over an ancilla range");
    add_scenario_flags(sweep, o);
    o.trials = 0;  // sweep defaults to exact-only
    sweep->add_option("--m-min", m_min, "Smallest ancilla dimension");
    sweep->add_option("--m-max", m_max, "Largest ancilla dimension");
    sweep->add_option("--trials", o.trials, "Optional MC trials per grid point (0 = exact only)");
    sweep->add_option("--seed", o.seed, "RNG seed");
    sweep->add_option("--burn-in", o.burn_in, "MCMC burn-in sweeps (BH)");
    sweep->add_option("--thin", o.thin, "MCMC thinning sweeps (BH)");
    sweep->add_option("--workers", o.workers, "Worker partitions");
    sweep->add_option("--out", o.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(exact)) return cmd_exact(o);
        if (app.got_subcommand(simulate)) return cmd_simulate(o);
        if (app.got_subcommand(verify)) return cmd_verify(vtrials, vseed);
        if (app.got_subcommand(sweep)) return cmd_sweep(o, m_min, m_max);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
