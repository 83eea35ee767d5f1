#include "hellstat/specialfn.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hellstat {

double log_gamma(double x) {
    if (!(x > 0.0)) {
        std::ostringstream os;
        os << "log_gamma: argument must be positive, got " << x;
        throw std::domain_error(os.str());
    }
    return std::lgamma(x);
}

double pochhammer(double a, double b) {
    if (!(a > 0.0) || !(a + b > 0.0))
        throw std::domain_error(
            "pochhammer: requires a > 0 and a + b > 0; use pochhammer_int for integer steps");
    return std::exp(log_gamma(a + b) - log_gamma(a));
}

double pochhammer_int(double a, int k) {
    double p = 1.0;
    if (k >= 0) {
        for (int i = 0; i < k; ++i) p *= a + i;
        return p;
    }
    for (int i = 1; i <= -k; ++i) {
        const double factor = a - i;
        if (factor == 0.0) throw std::domain_error("pochhammer_int: pole (zero factor in denominator)");
        p *= factor;
    }
    return 1.0 / p;
}

double binom_half(int j) {
    if (j < 0) throw std::domain_error("binom_half: j must be nonnegative");
    double p = 1.0;
    for (int i = 0; i < j; ++i) p *= (0.5 - i) / (i + 1);
    return p;
}

double hyp3f2_terminating(double a1, int j, int k, double b1, double b2) {
    if (j < 0 || k < 0) throw std::domain_error("hyp3f2_terminating: j, k must be nonnegative");
    const int terms = std::min(j, k);
    // Check for lower-parameter poles inside the summation range.
    for (int l = 1; l <= terms; ++l) {
        if (b1 + (l - 1) == 0.0 || b2 + (l - 1) == 0.0)
            throw std::domain_error("hyp3f2_terminating: lower-parameter pole in summation range");
    }
    double sum = 1.0;
    double term = 1.0;
    for (int l = 0; l < terms; ++l) {
        term *= (a1 + l) * (-j + l) * (-k + l) / ((b1 + l) * (b2 + l) * (l + 1));
        sum += term;
    }
    return sum;
}

double hyp2f1(double a, double b, double c, double z) {
    if (!(c > 0.0)) throw std::domain_error("hyp2f1: c must be positive");
    if (z < 0.0 || z > 1.0) throw std::domain_error("hyp2f1: z must lie in [0, 1]");
    if (z == 1.0) {
        if (!(c - a - b > 0.0))
            throw std::domain_error("hyp2f1: Gauss summation at z = 1 needs c - a - b > 0");
        return std::exp(log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b));
    }
    double sum = 1.0;
    double term = 1.0;
    for (int k = 0; k < 100000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
        sum += term;
        if (std::abs(term) < 1e-15 * std::abs(sum)) return sum;
    }
    throw std::runtime_error("hyp2f1: series did not converge within the term cap");
}

}  // namespace hellstat
