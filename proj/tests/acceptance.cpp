// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "hellstat/harness.hpp"
#include "hellstat/quadrature.hpp"
#include "hellstat/specialfn.hpp"

using namespace hellstat;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_start;

void begin() { g_start = std::chrono::steady_clock::now(); }

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
    std::printf("[%s] criterion %2d: %s (%s) [%.1fs]\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

RealVector fig_sigma5() {
    RealVector s(5);
    s << 0.07, 0.16, 0.17, 0.23, 0.37;
    return s;
}

double max3(double a, double b, double c) { return std::max(a, std::max(b, c)); }

// ---------------------------------------------------------------------------
// criterion 1: n = 1 degeneracy

void criterion_1() {
    begin();
    double worst = 0.0;
    for (EnsembleKind kind : {EnsembleKind::HS, EnsembleKind::BH}) {
        for (int m = 1; m <= 4; ++m) {
            EnsembleParams p(kind, 1, m);
            const MomentPair mp = moment_pair(p);
            worst = max3(worst, std::abs(mp.first - 1.0), std::abs(mp.second - 1.0));
            const auto two = hellinger_summary(Scenario::two_random(p, p));
            worst = max3(worst, std::abs(two.mean_dh), std::abs(two.var_dh));
            RealVector one(1);
            one << 1.0;
            const auto fx = hellinger_summary(Scenario::fixed_vs_random(one, p));
            worst = max3(worst, std::abs(fx.mean_dh), std::abs(fx.var_dh));
        }
    }
    for (EnsembleKind kind : {EnsembleKind::HS, EnsembleKind::BH}) {
        ExperimentConfig cfg{Scenario::two_random(EnsembleParams(kind, 1, 3),
                                                  EnsembleParams(kind, 1, 2))};
        cfg.trials = 100;
        cfg.seed = 1;
        cfg.mcmc.burn_in_sweeps = 10;
        const auto res = run_experiment(cfg);
        worst = max3(worst, std::abs(res.report.mc_mean_dh), std::abs(res.report.mc_var_dh));
    }
    char d[96];
    std::snprintf(d, sizeof(d), "max deviation %.3g, tol 1e-14", worst);
    report(1, "n=1 degeneracy collapses every moment and sample", worst <= 1e-14, d);
}

// ---------------------------------------------------------------------------
// criterion 2: HS (2,2) quadrature oracle

void criterion_2() {
    begin();
    // independent oracle: the n=2, m=2 eigenvalue density 3 (2l - 1)^2
    auto quad = [](int power) {
        return integrate_gl(
            [&](double l) {
                const double t = std::sqrt(l) + std::sqrt(1.0 - l);
                const double d = 2.0 * l - 1.0;
                return std::pow(t, power) * 3.0 * d * d;
            },
            0.0, 1.0, 1e-13);
    };
    const double e1 = std::abs(mean_sqrt_trace_hs(2, 2) - quad(1));
    const double e1r = std::abs(mean_sqrt_trace_hs(2, 2) - 44.0 / 35.0);
    const double e2 = std::abs(second_moment_sqrt_trace_hs(2, 2) - quad(2));
    const double worst = max3(e1, e1r, e2);
    char d[96];
    std::snprintf(d, sizeof(d), "max deviation %.3g, tol 1e-10", worst);
    report(2, "HS (2,2) moments vs quadrature and 44/35", worst < 1e-10, d);
}

// ---------------------------------------------------------------------------
// criterion 3: BH (2,2), (2,3) quadrature oracle

void criterion_3() {
    begin();
    double worst = 0.0;
    for (int m : {2, 3}) {
        EnsembleParams p(EnsembleKind::BH, 2, m);
        auto quad = [&](int power) {
            return integrate_tanh_sinh(
                [&](double l, double r) {
                    RealVector s(2);
                    s << l, r;
                    const double t = std::sqrt(l) + std::sqrt(r);
                    return std::pow(t, power) * std::exp(log_jpdf_bh(s, p));
                },
                0.0, 1.0, 1e-11);
        };
        worst = std::max(worst, std::abs(mean_sqrt_trace_bh(2, m) - quad(1)));
        worst = std::max(worst, std::abs(second_moment_sqrt_trace_bh(2, m) - quad(2)));
    }
    char d[96];
    std::snprintf(d, sizeof(d), "max deviation %.3g, tol 1e-8", worst);
    report(3, "BH (2,2) and (2,3) moments vs adaptive quadrature", worst < 1e-8, d);
}

// ---------------------------------------------------------------------------
// criterion 4: jpdf normalization at n = 2

void criterion_4() {
    begin();
    double worst = 0.0;
    for (int m : {2, 3, 4}) {
        EnsembleParams hs(EnsembleKind::HS, 2, m);
        const double ihs = integrate_gl(
            [&](double l) {
                RealVector s(2);
                s << l, 1.0 - l;
                return std::exp(log_jpdf_hs(s, hs));
            },
            1e-14, 1.0 - 1e-14, 1e-11);
        worst = std::max(worst, std::abs(ihs - 1.0));

        EnsembleParams bh(EnsembleKind::BH, 2, m);
        const double ibh = integrate_tanh_sinh(
            [&](double l, double r) {
                RealVector s(2);
                s << l, r;
                return std::exp(log_jpdf_bh(s, bh));
            },
            0.0, 1.0, 1e-10);
        worst = std::max(worst, std::abs(ibh - 1.0));
    }
    char d[96];
    std::snprintf(d, sizeof(d), "max |integral - 1| = %.3g, tol 1e-6", worst);
    report(4, "n=2 eigenvalue densities integrate to 1", worst < 1e-6, d);
}

// ---------------------------------------------------------------------------
// criterion 5: xi dual-form equality

double xi_inner_sum_form(int j, int k, double alpha) {
    double s = 0.0;
    for (int l = 0; l <= std::min(j, k); ++l) {
        s += binom_half(j - l) * binom_half(k - l) *
             std::exp(std::lgamma(l + alpha + 1.5) - std::lgamma(l + 1.0));
    }
    return s / (binom_half(k) * std::exp(std::lgamma(alpha + 1.5)));
}

void criterion_5() {
    begin();
    double worst = 0.0;
    for (double alpha : {0.0, 1.0, 2.0, 5.0}) {
        for (int j = 0; j <= 10; ++j) {
            for (int k = 0; k <= 10; ++k) {
                const double a =
                    binom_half(j) * hyp3f2_terminating(alpha + 1.5, j, k, 1.5 - j, 1.5 - k);
                const double b = xi_inner_sum_form(j, k, alpha);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
        }
    }
    char d[96];
    std::snprintf(d, sizeof(d), "max relative gap %.3g, tol 1e-12", worst);
    report(5, "xi hypergeometric form equals the explicit sum", worst < 1e-12, d);
}

// ---------------------------------------------------------------------------
// criterion 6: Haar moment identities

void criterion_6() {
    begin();
    Rng rng(606);
    bool ok = true;
    std::string why = "all within 3 sigma";

    for (int n = 1; n <= 4 && ok; ++n) {
        const auto rep = verify_haar_moment2(n, 100000, rng);
        if (!rep.pass) {
            ok = false;
            why = "moment2 n=" + std::to_string(n);
        }
    }
    for (int n = 2; n <= 4 && ok; ++n) {
        const auto rep = verify_haar_moment4(n, 100000, rng, 50);
        if (!rep.pass) {
            ok = false;
            why = "moment4 n=" + std::to_string(n);
        }
    }
    if (ok) {
        RealVector lam5(5);
        lam5 << 0.10, 0.15, 0.20, 0.25, 0.30;
        const auto gi = verify_group_integral_fixed(fig_sigma5(), lam5, 100000, rng);
        if (!gi.pass) {
            ok = false;
            why = "group integral z=" + std::to_string(gi.z);
        }
    }
    if (ok) {
        const RealVector mixed2 = RealVector::Constant(2, 0.5);
        RealVector pure2(2);
        pure2 << 1.0, 0.0;
        const auto spot1 = verify_group_integral_fixed(mixed2, mixed2, 10, rng);
        const auto spot2 = verify_group_integral_fixed(pure2, pure2, 10, rng);
        if (std::abs(spot1.exact_value - 1.0) > 1e-14 ||
            std::abs(spot2.exact_value - 1.0 / 3.0) > 1e-14) {
            ok = false;
            why = "closed-form spot values";
        }
    }
    report(6, "Haar 2nd/4th moments and group integral", ok, why);
}

// ---------------------------------------------------------------------------
// criteria 7 and 8: figure-regime reproduction and gamma approximation

std::map<std::string, ExperimentResult> g_runs;

const ExperimentResult& run_point(const std::string& key, const Scenario& sc, long long trials,
                                  std::uint64_t seed) {
    auto it = g_runs.find(key);
    if (it != g_runs.end()) return it->second;
    ExperimentConfig cfg{sc};
    cfg.trials = trials;
    cfg.seed = seed;
    return g_runs.emplace(key, run_experiment(cfg)).first->second;
}

void criterion_7() {
    begin();
    const long long trials = 1000000;
    double worst_z = 0.0;
    std::string worst_at = "none";
    auto record = [&](const std::string& key, const ExperimentResult& res) {
        const double z = std::max(std::abs(res.report.z_mean), std::abs(res.report.z_var));
        if (z > worst_z) {
            worst_z = z;
            worst_at = key;
        }
    };

    std::uint64_t seed = 700;
    for (EnsembleKind kind : {EnsembleKind::HS, EnsembleKind::BH}) {
        for (int m = 5; m <= 15; ++m) {
            const std::string key = std::string(kind == EnsembleKind::HS ? "hs" : "bh") +
                                    "-fixed-5-" + std::to_string(m);
            record(key, run_point(key,
                                  Scenario::fixed_vs_random(fig_sigma5(),
                                                            EnsembleParams(kind, 5, m)),
                                  trials, seed++));
        }
    }

    const std::vector<std::pair<int, int>> grid = {{3, 4}, {4, 6}, {6, 9}};
    const std::vector<std::pair<EnsembleKind, EnsembleKind>> pairs = {
        {EnsembleKind::HS, EnsembleKind::HS},
        {EnsembleKind::BH, EnsembleKind::BH},
        {EnsembleKind::HS, EnsembleKind::BH}};
    for (const auto& [k1, k2] : pairs) {
        for (const auto& [m1, m2] : grid) {
            const std::string key = std::string(k1 == EnsembleKind::HS ? "hs" : "bh") + "-" +
                                    (k2 == EnsembleKind::HS ? "hs" : "bh") + "-3-" +
                                    std::to_string(m1) + "-" + std::to_string(m2);
            record(key, run_point(key,
                                  Scenario::two_random(EnsembleParams(k1, 3, m1),
                                                       EnsembleParams(k2, 3, m2)),
                                  trials, seed++));
        }
    }

    char d[128];
    std::snprintf(d, sizeof(d), "worst |z| = %.2f at %s, bound 4", worst_z, worst_at.c_str());
    report(7, "figure-regime grids match Monte Carlo", worst_z < 4.0, d);
}

void criterion_8() {
    begin();
    const long long trials = 1000000;
    double worst_tv = 0.0;
    std::string worst_at = "none";
    auto check_tv = [&](const std::string& key, const ExperimentResult& res) {
        const auto& ex = res.report.exact;
        const double tv =
            gamma_histogram_tv_distance(res.histogram, *ex.gamma_shape, *ex.gamma_rate);
        if (tv > worst_tv) {
            worst_tv = tv;
            worst_at = key;
        }
    };

    check_tv("hs-fixed-5-10",
             run_point("hs-fixed-5-10",
                       Scenario::fixed_vs_random(fig_sigma5(),
                                                 EnsembleParams(EnsembleKind::HS, 5, 10)),
                       trials, 705));
    check_tv("bh-fixed-5-10",
             run_point("bh-fixed-5-10",
                       Scenario::fixed_vs_random(fig_sigma5(),
                                                 EnsembleParams(EnsembleKind::BH, 5, 10)),
                       trials, 716));
    const std::vector<std::pair<EnsembleKind, EnsembleKind>> pairs = {
        {EnsembleKind::HS, EnsembleKind::HS},
        {EnsembleKind::BH, EnsembleKind::BH},
        {EnsembleKind::HS, EnsembleKind::BH}};
    for (const auto& [k1, k2] : pairs) {
        const std::string key = std::string(k1 == EnsembleKind::HS ? "hs" : "bh") + "-" +
                                (k2 == EnsembleKind::HS ? "hs" : "bh") + "-3-4-6";
        check_tv(key, run_point(key,
                                Scenario::two_random(EnsembleParams(k1, 3, 4),
                                                     EnsembleParams(k2, 3, 6)),
                                trials, 799));
    }

    char d[128];
    std::snprintf(d, sizeof(d), "worst TV = %.4f at %s, bound 0.05", worst_tv, worst_at.c_str());
    report(8, "gamma approximation total variation", worst_tv < 0.05, d);
}

// ---------------------------------------------------------------------------
// criterion 9: ensemble ordering of the mean distance

void criterion_9() {
    begin();
    EnsembleParams hs1(EnsembleKind::HS, 3, 4), hs2(EnsembleKind::HS, 3, 6);
    EnsembleParams bh1(EnsembleKind::BH, 3, 4), bh2(EnsembleKind::BH, 3, 6);
    const double hh = hellinger_summary(Scenario::two_random(hs1, hs2)).mean_dh;
    const double hb = hellinger_summary(Scenario::two_random(hs1, bh2)).mean_dh;
    const double bb = hellinger_summary(Scenario::two_random(bh1, bh2)).mean_dh;
    char d[128];
    std::snprintf(d, sizeof(d), "HS-HS %.6f < HS-BH %.6f < BH-BH %.6f", hh, hb, bb);
    report(9, "mean distance ordering at (3,4,6)", hh < hb && hb < bb, d);
}

// ---------------------------------------------------------------------------
// criterion 10: asymptotic mean square affinity

void criterion_10() {
    begin();
    EnsembleParams a(EnsembleKind::HS, 10, 20);
    const double exact_a = mean_sq_affinity_two_random(a, a);
    const double asym_a = asymptotic_mean_sq_affinity_hs(10, 20);
    const double rel_a = std::abs(exact_a - asym_a) / asym_a;

    EnsembleParams b(EnsembleKind::HS, 10, 10);
    const double exact_b = mean_sq_affinity_two_random(b, b);
    const double c = 8.0 / (3.0 * M_PI);
    const double asym_b = c * c * c * c;
    const double rel_b = std::abs(exact_b - asym_b) / asym_b;

    char d[128];
    std::snprintf(d, sizeof(d), "relative gaps %.4f (m=2n), %.4f (m=n), bound 0.01",
                  rel_a, rel_b);
    report(10, "large-n asymptote of the mean square affinity", rel_a < 0.01 && rel_b < 0.01, d);
}

// ---------------------------------------------------------------------------
// criterion 11: BH MCMC vs the square matrix model

void criterion_11() {
    begin();
    bool ok = true;
    double worst_z = 0.0;
    const int draws = 100000;
    for (int n : {2, 3}) {
        EnsembleParams p(EnsembleKind::BH, n, n);
        BhSpectrumChain chain(p, McmcConfig{}, Rng(1100 + n));
        double s1 = 0.0, s2 = 0.0, s1sq = 0.0, s2sq = 0.0;
        for (int t = 0; t < draws; ++t) {
            const RealVector& s = chain.next();
            double tr = 0.0;
            for (int i = 0; i < n; ++i) tr += std::sqrt(s[i]);
            s1 += tr;
            s1sq += tr * tr;
            s2 += tr * tr;
            s2sq += tr * tr * tr * tr;
        }
        const double tau = std::max(1.0, chain.diagnostics().autocorr_time);
        const double m1_mc = s1 / draws, m2_mc = s2 / draws;
        const double v1_mc = s1sq / draws - m1_mc * m1_mc;
        const double v2_mc = s2sq / draws - m2_mc * m2_mc;

        Rng rng(1200 + n);
        double q1 = 0.0, q2 = 0.0, q1sq = 0.0, q2sq = 0.0;
        for (int t = 0; t < draws; ++t) {
            const ComplexMatrix rho = sample_bh_density_square(n, rng);
            const auto ed = hermitian_eigh(rho);
            const double tr = ed.eigenvalues.cwiseMax(0.0).cwiseSqrt().sum();
            q1 += tr;
            q1sq += tr * tr;
            q2 += tr * tr;
            q2sq += tr * tr * tr * tr;
        }
        const double n1_mc = q1 / draws, n2_mc = q2 / draws;
        const double w1_mc = q1sq / draws - n1_mc * n1_mc;
        const double w2_mc = q2sq / draws - n2_mc * n2_mc;

        const double se1 = std::sqrt(v1_mc * tau / draws + w1_mc / draws);
        const double se2 = std::sqrt(v2_mc * tau / draws + w2_mc / draws);
        const double z1 = std::abs(m1_mc - n1_mc) / se1;
        const double z2 = std::abs(m2_mc - n2_mc) / se2;
        worst_z = max3(worst_z, z1, z2);
        // both estimators should also bracket the closed forms
        const MomentPair mp = moment_pair(p);
        if (std::abs(m1_mc - mp.first) > 5.0 * std::sqrt(v1_mc * tau / draws)) ok = false;
        if (std::abs(n2_mc - mp.second) > 5.0 * std::sqrt(w2_mc / draws)) ok = false;
    }
    ok = ok && worst_z < 3.0;
    char d[96];
    std::snprintf(d, sizeof(d), "worst cross-sampler |z| = %.2f, bound 3", worst_z);
    report(11, "BH chain agrees with the square matrix model", ok, d);
}

// ---------------------------------------------------------------------------
// criterion 12: determinism

void criterion_12() {
    begin();
    bool ok = true;
    std::vector<Scenario> scenarios;
    scenarios.push_back(Scenario::fixed_vs_random(fig_sigma5(),
                                                  EnsembleParams(EnsembleKind::HS, 5, 8)));
    scenarios.push_back(Scenario::two_random(EnsembleParams(EnsembleKind::BH, 2, 3),
                                             EnsembleParams(EnsembleKind::HS, 2, 2)));
    for (const auto& sc : scenarios) {
        for (int workers : {1, 3}) {
            ExperimentConfig cfg{sc};
            cfg.trials = 20000;
            cfg.seed = 1212;
            cfg.workers = workers;
            const auto a = run_experiment(cfg);
            const auto b = run_experiment(cfg);
            if (emit_report(a, ReportFormat::Json) != emit_report(b, ReportFormat::Json))
                ok = false;
            if (emit_report(a, ReportFormat::Csv) != emit_report(b, ReportFormat::Csv))
                ok = false;
        }
    }
    report(12, "repeated runs emit byte-identical reports", ok,
           ok ? "json and csv identical across reruns" : "byte mismatch");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (g_failures == 0) {
        std::printf("acceptance: all 12 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
