#pragma once

#include <vector>

#include "hellstat/numlinalg.hpp"
#include "hellstat/rng.hpp"

namespace hellstat {

enum class EnsembleKind { HS, BH };

struct EnsembleParams {
    EnsembleKind kind;
    int n;
    int m;

    EnsembleParams(EnsembleKind kind_, int n_, int m_);

    int alpha() const { return m - n; }
};

struct McmcConfig {
    int burn_in_sweeps = 5000;
    int thinning_sweeps = 10;
    double proposal_width = 0.0;  // 0 means the 1/(2n) default
    double target_acceptance = 0.3;
};

struct ChainDiagnostics {
    double acceptance_rate = 0.0;
    double tuned_delta = 0.0;
    double autocorr_time = 0.0;  // integrated, on tr sqrt(rho); 0 if unset
    bool acceptance_in_bounds = true;
};

/// Throws unless the vector lies on the probability simplex within slack.
void validate_spectrum(const RealVector& spectrum);

/// rho = G G^dag / tr(G G^dag) with G an n x m Ginibre draw.
ComplexMatrix sample_hs_density(const EnsembleParams& params, Rng& rng);

/// Log joint eigenvalue density (Hilbert-Schmidt) on the simplex
/// {sum lambda = 1} with Lebesgue measure d lambda_1 ... d lambda_{n-1}.
/// Returns -inf for degenerate (equal-eigenvalue) spectra.
double log_jpdf_hs(const RealVector& spectrum, const EnsembleParams& params);

/// Log joint eigenvalue density (Bures-Hall), same simplex convention.
double log_jpdf_bh(const RealVector& spectrum, const EnsembleParams& params);

/// Log normalization constants of the two joint densities.
double log_norm_hs(int n, int m);
double log_norm_bh(int n, int m);

/// Streaming Metropolis chain on the simplex targeting the Bures-Hall joint
/// density. Proposals transfer mass between a random eigenvalue pair and the
/// state is renormalized every sweep, keeping the simplex sum within an ulp
/// of 1. The proposal width is tuned toward target_acceptance during burn-in
/// and frozen afterwards.
class BhSpectrumChain {
  public:
    BhSpectrumChain(const EnsembleParams& params, const McmcConfig& cfg, Rng rng);

    /// Advances thinning_sweeps sweeps and returns the current spectrum.
    const RealVector& next();

    /// Acceptance rate and tuned width of the frozen chain; the integrated
    /// autocorrelation time is estimated from the emitted tr sqrt(rho) series.
    ChainDiagnostics diagnostics();
    const EnsembleParams& params() const { return params_; }

  private:
    void sweep(bool tuning);
    bool propose();
    void finalize_diagnostics();

    EnsembleParams params_;
    McmcConfig cfg_;
    Rng rng_;
    RealVector state_;
    std::vector<double> log_state_;  // cached ln(lambda_i)
    double delta_;
    long long accepted_ = 0;
    long long proposed_ = 0;
    std::vector<double> trace_series_;  // tr sqrt(rho) of emitted samples, bounded
    ChainDiagnostics diag_;
    bool burned_in_ = false;
};

/// Batch wrapper over BhSpectrumChain.
std::vector<RealVector> sample_bh_spectrum_mcmc(const EnsembleParams& params,
                                                const McmcConfig& cfg, int count, Rng rng,
                                                ChainDiagnostics* diagnostics = nullptr);

/// U diag(lambda) U^dag with U Haar.
ComplexMatrix assemble_density_from_spectrum(const RealVector& spectrum, Rng& rng);

/// Bures-Hall matrix model at m = n: rho = (1+U) G G^dag (1+U^dag) / tr[...].
/// Cross-check sampler only; m != n is rejected.
ComplexMatrix sample_bh_density_square(int n, Rng& rng);

}  // namespace hellstat
