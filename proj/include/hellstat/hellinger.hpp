#pragma once

#include <optional>

#include "hellstat/exactmoments.hpp"

namespace hellstat {

enum class ScenarioKind { FixedVsRandom, RandomVsRandom };

struct Scenario {
    ScenarioKind kind;
    std::optional<RealVector> fixed_spectrum;  // FixedVsRandom only
    EnsembleParams ensemble_1;
    std::optional<EnsembleParams> ensemble_2;  // RandomVsRandom only

    static Scenario fixed_vs_random(RealVector sigma, EnsembleParams ensemble);
    static Scenario two_random(EnsembleParams e1, EnsembleParams e2);

    int dim() const { return ensemble_1.n; }
};

struct HellingerSummary {
    double mean_affinity;
    double mean_sq_affinity;
    double mean_dh;
    double var_dh;
    std::optional<double> gamma_shape;  // absent when var_dh = 0
    std::optional<double> gamma_rate;
};

/// <A(rho, sigma)> = (1/n) tr(sqrt(sigma)) <tr sqrt(rho)>.
double mean_affinity_fixed(const RealVector& sigma, const EnsembleParams& params);

/// <A(rho, sigma)^2> via the 4th-order Weingarten identity.
double mean_sq_affinity_fixed(const RealVector& sigma, const EnsembleParams& params);

/// <A(rho1, rho2)> = (1/n) <tr sqrt(rho1)> <tr sqrt(rho2)>.
double mean_affinity_two_random(const EnsembleParams& p1, const EnsembleParams& p2);

/// <A(rho1, rho2)^2> for two independent random density matrices.
double mean_sq_affinity_two_random(const EnsembleParams& p1, const EnsembleParams& p2);

/// Exact mean/variance of D_H plus the cumulant-matched gamma parameters.
HellingerSummary hellinger_summary(const Scenario& scenario);

/// Gamma density rate^shape / Gamma(shape) x^{shape-1} e^{-rate x}.
double gamma_pdf(double x, double shape, double rate);

/// Large-n asymptotic for the HS-HS equal-ancilla mean square affinity:
/// [2F1(1/2, -1/2; 2; n/m)]^4.
double asymptotic_mean_sq_affinity_hs(int n, int m);

}  // namespace hellstat
