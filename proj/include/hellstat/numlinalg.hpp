#pragma once

#include <Eigen/Dense>

#include "hellstat/rng.hpp"

namespace hellstat {

using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct EigenDecomposition {
    RealVector eigenvalues;  // ascending
    ComplexMatrix basis;     // unitary, columns are eigenvectors
};

// Numerical slack conventions shared across the library.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueClamp = 1e-10;

/// n x m matrix of independent unit-variance complex Gaussians.
ComplexMatrix sample_ginibre(int n, int m, Rng& rng);

/// Haar-distributed n x n unitary: QR of a Ginibre matrix with the phase
/// correction that makes R's diagonal real positive.
ComplexMatrix sample_haar_unitary(int n, Rng& rng);

/// Full spectral decomposition of a Hermitian matrix, eigenvalues ascending.
EigenDecomposition hermitian_eigh(const ComplexMatrix& h);

/// Hermitian PSD square root: U sqrt(Lambda) U^dag. Eigenvalues in
/// [-kEigenvalueClamp, 0) are clamped to 0; anything lower throws.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& rho);

/// Affinity tr(sqrt(rho1) sqrt(rho2)), a real number in [0, 1].
double affinity(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// Squared Hellinger distance D_H = 2 - 2 A(rho1, rho2).
double squared_hellinger(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// Throws std::invalid_argument unless rho is Hermitian, unit-trace and PSD
/// up to the library slack.
void validate_density(const ComplexMatrix& rho);

}  // namespace hellstat
