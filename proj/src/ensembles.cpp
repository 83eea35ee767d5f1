#include "hellstat/ensembles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hellstat/specialfn.hpp"

namespace hellstat {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

EnsembleParams::EnsembleParams(EnsembleKind kind_, int n_, int m_) : kind(kind_), n(n_), m(m_) {
    if (n < 1) throw std::invalid_argument("EnsembleParams: n must be >= 1");
    if (m < n) throw std::invalid_argument("EnsembleParams: requires n <= m");
}

void validate_spectrum(const RealVector& spectrum) {
    if (spectrum.size() < 1) throw std::invalid_argument("spectrum must be nonempty");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const double v = spectrum[i];
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("spectrum value outside [0, 1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kTraceTol)
        throw std::invalid_argument("spectrum does not sum to 1 within 1e-12");
}

ComplexMatrix sample_hs_density(const EnsembleParams& params, Rng& rng) {
    if (params.kind != EnsembleKind::HS)
        throw std::invalid_argument("sample_hs_density: params.kind must be HS");
    const ComplexMatrix g = sample_ginibre(params.n, params.m, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

double log_norm_hs(int n, int m) {
    double s = log_gamma(static_cast<double>(n) * m);
    for (int j = 1; j <= n; ++j) s -= log_gamma(m - j + 1.0) + log_gamma(n - j + 2.0);
    return s;
}

double log_norm_bh(int n, int m) {
    const int alpha = m - n;
    const double d = 0.5 * n * (n + 2.0 * alpha);
    double s = (n * (n + 2.0 * alpha) - n) * std::log(2.0) + log_gamma(d) -
               0.5 * n * std::log(M_PI);
    for (int j = 1; j <= n; ++j)
        s -= log_gamma(j + 1.0) + log_gamma(2.0 * alpha + j) - log_gamma(alpha + static_cast<double>(j));
    return s;
}

double log_jpdf_hs(const RealVector& spectrum, const EnsembleParams& params) {
    const int n = params.n;
    if (spectrum.size() != n) throw std::invalid_argument("log_jpdf_hs: spectrum size mismatch");
    const int alpha = params.alpha();
    double s = log_norm_hs(n, params.m);
    for (int i = 0; i < n; ++i) {
        if (spectrum[i] <= 0.0) throw std::domain_error("log_jpdf_hs: nonpositive eigenvalue");
        s += alpha * std::log(spectrum[i]);
        for (int j = i + 1; j < n; ++j) {
            const double diff = std::abs(spectrum[i] - spectrum[j]);
            if (diff == 0.0) return kNegInf;
            s += 2.0 * std::log(diff);
        }
    }
    return s;
}

double log_jpdf_bh(const RealVector& spectrum, const EnsembleParams& params) {
    const int n = params.n;
    if (spectrum.size() != n) throw std::invalid_argument("log_jpdf_bh: spectrum size mismatch");
    const double ex = params.alpha() - 0.5;
    double s = log_norm_bh(n, params.m);
    for (int i = 0; i < n; ++i) {
        if (spectrum[i] <= 0.0) throw std::domain_error("log_jpdf_bh: nonpositive eigenvalue");
        s += ex * std::log(spectrum[i]);
        for (int j = i + 1; j < n; ++j) {
            const double diff = std::abs(spectrum[i] - spectrum[j]);
            if (diff == 0.0) return kNegInf;
            s += 2.0 * std::log(diff) - std::log(spectrum[i] + spectrum[j]);
        }
    }
    return s;
}

BhSpectrumChain::BhSpectrumChain(const EnsembleParams& params, const McmcConfig& cfg, Rng rng)
    : params_(params), cfg_(cfg), rng_(rng) {
    if (params.kind != EnsembleKind::BH)
        throw std::invalid_argument("BhSpectrumChain: params.kind must be BH");
    if (cfg.burn_in_sweeps < 1 || cfg.thinning_sweeps < 1)
        throw std::invalid_argument("BhSpectrumChain: burn-in and thinning must be >= 1");
    if (cfg.proposal_width < 0.0 || cfg.target_acceptance <= 0.0 || cfg.target_acceptance >= 1.0)
        throw std::invalid_argument("BhSpectrumChain: invalid proposal width or target acceptance");
    const int n = params.n;
    state_ = RealVector::Constant(n, 1.0 / n);
    // Break the degenerate start: spread eigenvalues along the simplex.
    if (n > 1) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            state_[i] = 1.0 + static_cast<double>(i) / n;
            sum += state_[i];
        }
        state_ /= sum;
    }
    log_state_.resize(n);
    for (int i = 0; i < n; ++i) log_state_[i] = std::log(state_[i]);
    delta_ = (cfg.proposal_width > 0.0) ? cfg.proposal_width : 1.0 / (2.0 * n);
    diag_.tuned_delta = delta_;
    if (n == 1) {
        state_[0] = 1.0;
        burned_in_ = true;
        return;
    }
    for (int s = 0; s < cfg_.burn_in_sweeps; ++s) sweep(true);
    burned_in_ = true;
    accepted_ = 0;
    proposed_ = 0;
    diag_.tuned_delta = delta_;
}

bool BhSpectrumChain::propose() {
    const int n = params_.n;
    const int i = static_cast<int>(rng_.uniform_int(n));
    int j = static_cast<int>(rng_.uniform_int(n - 1));
    if (j >= i) ++j;
    const double eps = delta_ * (2.0 * rng_.uniform() - 1.0);
    const double li = state_[i] - eps;
    const double lj = state_[j] + eps;
    if (li <= 0.0 || li >= 1.0 || lj <= 0.0 || lj >= 1.0) return false;

    const double ex = params_.alpha() - 0.5;
    double dlog = ex * (std::log(li) + std::log(lj) - log_state_[i] - log_state_[j]);
    for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double lk = state_[k];
        const double di_new = std::abs(li - lk);
        const double dj_new = std::abs(lj - lk);
        if (di_new == 0.0 || dj_new == 0.0) return false;
        dlog += 2.0 * (std::log(di_new) - std::log(std::abs(state_[i] - lk)) +
                       std::log(dj_new) - std::log(std::abs(state_[j] - lk)));
        dlog -= std::log(li + lk) - std::log(state_[i] + lk) + std::log(lj + lk) -
                std::log(state_[j] + lk);
    }
    const double dij_new = std::abs(li - lj);
    if (dij_new == 0.0) return false;
    dlog += 2.0 * (std::log(dij_new) - std::log(std::abs(state_[i] - state_[j])));
    dlog -= std::log(li + lj) - std::log(state_[i] + state_[j]);

    if (dlog < 0.0 && std::log(rng_.uniform()) >= dlog) return false;
    state_[i] = li;
    state_[j] = lj;
    log_state_[i] = std::log(li);
    log_state_[j] = std::log(lj);
    return true;
}

void BhSpectrumChain::sweep(bool tuning) {
    const int n = params_.n;
    const int proposals = n * (n - 1) / 2;
    for (int p = 0; p < proposals; ++p) {
        ++proposed_;
        if (propose()) ++accepted_;
    }
    // Keep the simplex sum within an ulp of 1: mass transfers conserve the
    // pair sum only up to rounding, so drift is projected out every sweep.
    const double total = state_.sum();
    if (total != 1.0) {
        state_ /= total;
        for (int i = 0; i < n; ++i) log_state_[i] = std::log(state_[i]);
    }
    if (tuning && proposed_ >= 50LL * proposals) {
        const double rate = static_cast<double>(accepted_) / static_cast<double>(proposed_);
        delta_ *= (rate > cfg_.target_acceptance) ? 1.12 : 1.0 / 1.12;
        delta_ = std::min(0.5, std::max(1e-7, delta_));
        accepted_ = 0;
        proposed_ = 0;
    }
}

const RealVector& BhSpectrumChain::next() {
    if (params_.n == 1) return state_;
    for (int s = 0; s < cfg_.thinning_sweeps; ++s) sweep(false);
    if (trace_series_.size() < 20000) {
        double t = 0.0;
        for (int i = 0; i < params_.n; ++i) t += std::sqrt(state_[i]);
        trace_series_.push_back(t);
    }
    return state_;
}

ChainDiagnostics BhSpectrumChain::diagnostics() {
    diag_.tuned_delta = delta_;
    diag_.acceptance_rate =
        proposed_ > 0 ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 0.0;
    diag_.acceptance_in_bounds =
        params_.n == 1 || (diag_.acceptance_rate >= 0.05 && diag_.acceptance_rate <= 0.95);
    // Integrated autocorrelation time of the thinned tr sqrt(rho) series,
    // with Sokal's adaptive window.
    const auto& x = trace_series_;
    const size_t len = x.size();
    diag_.autocorr_time = 0.0;
    if (len >= 64) {
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= static_cast<double>(len);
        double var = 0.0;
        for (double v : x) var += (v - mean) * (v - mean);
        var /= static_cast<double>(len);
        double tau = 1.0;
        if (var > 0.0) {
            for (size_t lag = 1; lag < len / 4; ++lag) {
                double c = 0.0;
                for (size_t t = 0; t + lag < len; ++t) c += (x[t] - mean) * (x[t + lag] - mean);
                c /= var * static_cast<double>(len - lag);
                tau += 2.0 * c;
                if (static_cast<double>(lag) >= 5.0 * tau) break;
            }
        }
        diag_.autocorr_time = std::max(1.0, tau);
    }
    return diag_;
}

std::vector<RealVector> sample_bh_spectrum_mcmc(const EnsembleParams& params,
                                                const McmcConfig& cfg, int count, Rng rng,
                                                ChainDiagnostics* diagnostics) {
    if (count < 1) throw std::invalid_argument("sample_bh_spectrum_mcmc: count must be >= 1");
    BhSpectrumChain chain(params, cfg, rng);
    std::vector<RealVector> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(chain.next());
    if (diagnostics) *diagnostics = chain.diagnostics();
    return out;
}

ComplexMatrix assemble_density_from_spectrum(const RealVector& spectrum, Rng& rng) {
    validate_spectrum(spectrum);
    const int n = static_cast<int>(spectrum.size());
    const ComplexMatrix u = sample_haar_unitary(n, rng);
    return u * spectrum.asDiagonal() * u.adjoint();
}

ComplexMatrix sample_bh_density_square(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_bh_density_square: n must be >= 1");
    const ComplexMatrix u = sample_haar_unitary(n, rng);
    const ComplexMatrix g = sample_ginibre(n, n, rng);
    const ComplexMatrix a = ComplexMatrix::Identity(n, n) + u;
    ComplexMatrix rho = a * g * g.adjoint() * a.adjoint();
    rho /= rho.trace().real();
    return rho;
}

}  // namespace hellstat
