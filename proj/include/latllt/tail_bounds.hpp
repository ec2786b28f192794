#pragma once

#include <cstdint>
#include <optional>

namespace latllt {

/// log C(n, k) via lgamma.
double log_choose(std::int64_t n, std::int64_t k);

/// log P{Bin(n, p) = k}.
double log_binomial_pmf(std::int64_t n, std::int64_t k, double p);

/// P{Bin(n, p) <= cutoff}, summed term by term in log space (no normal
/// approximation).
double binomial_cdf(std::int64_t n, double p, std::int64_t cutoff);

/// log psi(theta) with
///   psi(theta) = ((1 - vartheta) / (1 - theta))^(1 - theta) * (vartheta / theta)^theta.
/// Requires 0 < theta <= vartheta < 1, else DomainError.
double log_psi(double theta, double vartheta);
double psi(double theta, double vartheta);

/// Unique theta in (0, vartheta) with psi(theta) = rho, for 1 - vartheta < rho < 1.
/// psi is nondecreasing, so plain bisection suffices.
double solve_theta(double rho, double vartheta);

inline double default_rho(double vartheta) { return 1.0 - 0.5 * vartheta; }

struct ChernoffParams {
    double vartheta;
    double rho;
    double theta;
};

/// Solves for theta at the given rho, or at rho = 1 - vartheta / 2 when omitted.
ChernoffParams chernoff_params(double vartheta, std::optional<double> rho = std::nullopt);

struct ChernoffCheck {
    double exact;        ///< P{B_n <= floor(theta n)} with B_n ~ Bin(n, vartheta)
    double bound;        ///< psi(theta)^n
    std::int64_t cutoff; ///< floor(theta n)
    bool holds;
};

ChernoffCheck verify_chernoff(double vartheta, double theta, std::int64_t n);

} // namespace latllt
