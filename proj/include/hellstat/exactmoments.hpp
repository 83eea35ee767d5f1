#pragma once

#include <Eigen/Dense>

#include "hellstat/ensembles.hpp"

namespace hellstat {

struct MomentPair {
    double first;   // <tr sqrt(rho)>
    double second;  // <(tr sqrt(rho))^2>
    EnsembleParams params;
};

struct XiMatrix {
    int n;
    int alpha;
    Eigen::MatrixXd entries;  // xi_{jk}, 0 <= j,k <= n-1
};

struct BhTermTable {
    double d;             // n(n + 2 alpha)/2
    Eigen::VectorXd L;    // L_i, 0 <= i <= n-1
};

class WeingartenConstants {
  public:
    explicit WeingartenConstants(int n);

    /// Wg(1, n) = 1/n.
    double wg1() const { return 1.0 / n_; }
    /// Wg(1^2, n) = 1/(n^2 - 1); undefined at n = 1.
    double wg11() const;
    /// Wg(2, n) = -1/(n (n^2 - 1)); undefined at n = 1.
    double wg2() const;

    int n() const { return n_; }

  private:
    int n_;
};

/// <tr sqrt(rho)> for the Hilbert-Schmidt ensemble.
double mean_sqrt_trace_hs(int n, int m);

/// xi_{jk} table via the terminating 3F2 form (cached per (n, alpha)).
XiMatrix xi_matrix(int n, int alpha);

/// <(tr sqrt(rho))^2> for the Hilbert-Schmidt ensemble.
double second_moment_sqrt_trace_hs(int n, int m);

/// <tr sqrt(rho)> for the Bures-Hall ensemble.
double mean_sqrt_trace_bh(int n, int m);

/// d and the L_i factors of the Bures-Hall second-moment sum.
BhTermTable bh_term_table(int n, int alpha);

/// <(tr sqrt(rho))^2> for the Bures-Hall ensemble.
double second_moment_sqrt_trace_bh(int n, int m);

/// Unitary-group Weingarten constants for 2nd and 4th order moments.
/// n = 1 only defines wg1; accessing the 4th-order constants there throws.
WeingartenConstants weingarten_constants(int n);

/// Both moments for either ensemble.
MomentPair moment_pair(const EnsembleParams& params);

}  // namespace hellstat
