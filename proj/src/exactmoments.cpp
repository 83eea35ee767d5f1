#include "hellstat/exactmoments.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hellstat/specialfn.hpp"

namespace hellstat {

namespace {

void check_params(int n, int m) {
    if (n < 1 || m < n) throw std::invalid_argument("moment formulas require 1 <= n <= m");
}

// Compensated (Kahan) accumulator; the HS sums alternate in sign through
// the half-integer binomials.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double mean_sqrt_trace_hs(int n, int m) {
    check_params(n, m);
    if (n == 1) return 1.0;
    KahanSum s;
    for (int j = 1; j <= n; ++j) {
        // (m)_{3/2-j}: argument m + 3/2 - j stays positive since j <= n <= m.
        const double poch_m = std::exp(log_gamma(m + 1.5 - j) - log_gamma(static_cast<double>(m)));
        s.add(binom_half(j) * binom_half(j - 1) * poch_m / pochhammer_int(n + 1.0, -j));
    }
    return 2.0 / pochhammer(static_cast<double>(m) * n, 0.5) * s.sum;
}

XiMatrix xi_matrix(int n, int alpha) {
    if (n < 1 || alpha < 0) throw std::invalid_argument("xi_matrix: n >= 1 and alpha >= 0 required");

    static std::map<std::pair<int, int>, XiMatrix> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({n, alpha});
        if (it != cache.end()) return it->second;
    }

    XiMatrix xi{n, alpha, Eigen::MatrixXd(n, n)};
    for (int j = 0; j < n; ++j) {
        const double prefactor = std::exp(log_gamma(j + 1.0) - log_gamma(j + alpha + 1.0)) *
                                 binom_half(j) * binom_half(j);
        for (int k = 0; k < n; ++k)
            xi.entries(j, k) =
                prefactor * hyp3f2_terminating(alpha + 1.5, j, k, 1.5 - j, 1.5 - k);
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(std::make_pair(n, alpha), xi);
    return xi;
}

double second_moment_sqrt_trace_hs(int n, int m) {
    check_params(n, m);
    if (n == 1) return 1.0;
    const int alpha = m - n;
    const XiMatrix xi = xi_matrix(n, alpha);
    KahanSum s;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            s.add(xi.entries(j, j) * xi.entries(k, k) - xi.entries(j, k) * xi.entries(k, j));
    const double gamma_factor = std::exp(2.0 * log_gamma(alpha + 1.5));
    return 1.0 + 2.0 * gamma_factor / (static_cast<double>(n) * m) * s.sum;
}

double mean_sqrt_trace_bh(int n, int m) {
    check_params(n, m);
    if (n == 1) return 1.0;
    const int alpha = m - n;
    const double d = 0.5 * n * (n + 2.0 * alpha);
    KahanSum s;
    for (int i = 0; i < n; ++i) {
        const double num = pochhammer(i + 1.0, 0.5) * pochhammer(i + 2.0 * alpha + 1.0, 0.5) *
                           pochhammer(i + alpha + 1.5, 0.5);
        const double den =
            pochhammer(n - i - 0.5, 0.5) * pochhammer(i + 2.0 * alpha + n + 1.0, 0.5);
        const double tail = 1.0 + (i + alpha + 0.5) / (i + alpha + 1.0);
        s.add(num / den * tail);
    }
    return s.sum / (M_PI * pochhammer(d, 0.5));
}

BhTermTable bh_term_table(int n, int alpha) {
    if (n < 1 || alpha < 0)
        throw std::invalid_argument("bh_term_table: n >= 1 and alpha >= 0 required");
    BhTermTable t{0.5 * n * (n + 2.0 * alpha), Eigen::VectorXd(n)};
    for (int i = 0; i < n; ++i) {
        t.L[i] = pochhammer(i + 1.0, 0.5) * pochhammer(i + alpha + 0.5, 0.5) *
                 pochhammer(i + 2.0 * alpha + 1.0, 0.5) /
                 (pochhammer(n + 2.0 * alpha + i + 1.0, 0.5) * pochhammer(n - i - 0.5, 0.5));
    }
    return t;
}

double second_moment_sqrt_trace_bh(int n, int m) {
    check_params(n, m);
    if (n == 1) return 1.0;
    const int alpha = m - n;
    const BhTermTable t = bh_term_table(n, alpha);
    KahanSum s;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double t1 = (2.0 + 0.5 / (i + alpha + 0.5)) * (2.0 + 0.5 / (j + alpha + 0.5));
            // (i-j-1/2)(j-i-1/2) is never zero: i - j is an integer.
            const double t2 = 0.5 / ((i - j - 0.5) * (j - i - 0.5)) *
                              (1.0 + (i + alpha + 1.0) * (j + alpha + 1.0) /
                                         ((i + alpha + 0.5) * (j + alpha + 0.5)));
            const double t3 = (j + alpha + 1.0) /
                              ((i + j + 2.0 * alpha + 1.0) * (i + j + 2.0 * alpha + 2.0) *
                               (j + alpha + 0.5));
            s.add(t.L[i] * t.L[j] * (t1 - t2 + t3));
        }
    }
    return 1.0 + s.sum / (M_PI * M_PI * t.d);
}

WeingartenConstants::WeingartenConstants(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("WeingartenConstants: n must be >= 1");
}

double WeingartenConstants::wg11() const {
    if (n_ == 1) throw std::domain_error("Wg(1^2, n) is undefined at n = 1");
    return 1.0 / (static_cast<double>(n_) * n_ - 1.0);
}

double WeingartenConstants::wg2() const {
    if (n_ == 1) throw std::domain_error("Wg(2, n) is undefined at n = 1");
    return -wg11() / n_;
}

WeingartenConstants weingarten_constants(int n) { return WeingartenConstants(n); }

MomentPair moment_pair(const EnsembleParams& params) {
    if (params.kind == EnsembleKind::HS)
        return {mean_sqrt_trace_hs(params.n, params.m),
                second_moment_sqrt_trace_hs(params.n, params.m), params};
    return {mean_sqrt_trace_bh(params.n, params.m),
            second_moment_sqrt_trace_bh(params.n, params.m), params};
}

}  // namespace hellstat
