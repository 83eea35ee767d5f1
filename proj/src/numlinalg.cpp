#include "hellstat/numlinalg.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace hellstat {

ComplexMatrix sample_ginibre(int n, int m, Rng& rng) {
    if (n < 1 || m < 1) throw std::invalid_argument("sample_ginibre: dimensions must be positive");
    ComplexMatrix g(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    return g;
}

ComplexMatrix sample_haar_unitary(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_haar_unitary: dimension must be positive");
    ComplexMatrix g = sample_ginibre(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Rescale columns so R's diagonal is real positive; without this the
    // distribution of Q is not Haar.
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : std::complex<double>(1.0, 0.0);
    }
    return q;
}

EigenDecomposition hermitian_eigh(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigh: matrix must be square");
    const double herm_residual = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (herm_residual > kHermitianTol) {
        std::ostringstream os;
        os << "hermitian_eigh: input not Hermitian (max |H - H^dag| = " << herm_residual << ")";
        throw std::invalid_argument(os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        const double resid = (h * ComplexMatrix::Identity(h.rows(), h.cols())).norm();
        std::ostringstream os;
        os << "hermitian_eigh: eigensolver failed to converge (residual scale " << resid << ")";
        throw std::runtime_error(os.str());
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& rho) {
    EigenDecomposition ed = hermitian_eigh(rho);
    RealVector sqrt_vals(ed.eigenvalues.size());
    for (Eigen::Index i = 0; i < ed.eigenvalues.size(); ++i) {
        double lam = ed.eigenvalues[i];
        if (lam < -kEigenvalueClamp) {
            std::ostringstream os;
            os << "matrix_sqrt_psd: materially negative eigenvalue " << lam;
            throw std::invalid_argument(os.str());
        }
        sqrt_vals[i] = std::sqrt(std::max(lam, 0.0));
    }
    return ed.basis * sqrt_vals.asDiagonal() * ed.basis.adjoint();
}

double affinity(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
        throw std::invalid_argument("affinity: dimension mismatch");
    const ComplexMatrix s1 = matrix_sqrt_psd(rho1);
    const ComplexMatrix s2 = matrix_sqrt_psd(rho2);
    const std::complex<double> tr = (s1 * s2).trace();
    if (std::abs(tr.imag()) > 1e-10) {
        std::ostringstream os;
        os << "affinity: trace has imaginary residue " << tr.imag();
        throw std::runtime_error(os.str());
    }
    return tr.real();
}

double squared_hellinger(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    return 2.0 - 2.0 * affinity(rho1, rho2);
}

void validate_density(const ComplexMatrix& rho) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) throw std::invalid_argument("density matrix not Hermitian within 1e-12");
    const std::complex<double> tr = rho.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol)
        throw std::invalid_argument("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
    if (solver.eigenvalues().minCoeff() < -kEigenvalueClamp)
        throw std::invalid_argument("density matrix has a materially negative eigenvalue");
}

}  // namespace hellstat
