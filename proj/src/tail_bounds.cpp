#include "latllt/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "latllt/error.hpp"
#include "latllt/summation.hpp"

namespace latllt {

double log_choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (k == 0 || k == n) return 0.0;
    const auto dn = static_cast<double>(n);
    const auto dk = static_cast<double>(k);
    return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

double log_binomial_pmf(std::int64_t n, std::int64_t k, double p) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    const double lk = k == 0 ? 0.0 : static_cast<double>(k) * std::log(p);
    const double lr = k == n ? 0.0 : static_cast<double>(n - k) * std::log1p(-p);
    return log_choose(n, k) + lk + lr;
}

double binomial_cdf(std::int64_t n, double p, std::int64_t cutoff) {
    if (cutoff < 0) return 0.0;
    if (cutoff >= n) return 1.0;
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(cutoff + 1));
    for (std::int64_t k = 0; k <= cutoff; ++k) logs.push_back(log_binomial_pmf(n, k, p));
    const double top = *std::max_element(logs.begin(), logs.end());
    if (!std::isfinite(top)) return 0.0;
    CompensatedSum s;
    for (double l : logs) s.add(std::exp(l - top));
    return std::min(1.0, std::exp(top) * s.value());
}

double log_psi(double theta, double vartheta) {
    if (!(vartheta > 0.0 && vartheta < 1.0)) {
        throw Error(ErrorCode::DomainError,
                    "vartheta must lie in (0, 1), got " + std::to_string(vartheta));
    }
    if (!(theta > 0.0 && theta <= vartheta)) {
        throw Error(ErrorCode::DomainError,
                    "theta must lie in (0, vartheta], got " + std::to_string(theta));
    }
    if (theta == vartheta) return 0.0;
    return (1.0 - theta) * (std::log1p(-vartheta) - std::log1p(-theta)) +
           theta * (std::log(vartheta) - std::log(theta));
}

double psi(double theta, double vartheta) { return std::exp(log_psi(theta, vartheta)); }

double solve_theta(double rho, double vartheta) {
    if (!(vartheta > 0.0 && vartheta < 1.0)) {
        throw Error(ErrorCode::DomainError,
                    "vartheta must lie in (0, 1), got " + std::to_string(vartheta));
    }
    if (!(rho > 1.0 - vartheta && rho < 1.0)) {
        throw Error(ErrorCode::DomainError,
                    "rho must lie in (1 - vartheta, 1), got " + std::to_string(rho));
    }
    double lo = 0.0;
    double hi = vartheta;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (psi(mid, vartheta) < rho) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (lo == 0.0) return hi;
    return std::abs(psi(lo, vartheta) - rho) < std::abs(psi(hi, vartheta) - rho) ? lo : hi;
}

ChernoffParams chernoff_params(double vartheta, std::optional<double> rho) {
    const double r = rho.value_or(default_rho(vartheta));
    return {vartheta, r, solve_theta(r, vartheta)};
}

ChernoffCheck verify_chernoff(double vartheta, double theta, std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::DomainError, "n must be at least 1");
    const double bound = std::exp(static_cast<double>(n) * log_psi(theta, vartheta));
    // Nudge by a few ulps so that products like 0.29 * 100 floor to 29.
    const double scaled = theta * static_cast<double>(n);
    const auto cutoff = static_cast<std::int64_t>(std::floor(scaled * (1.0 + 4e-16)));
    const double exact = binomial_cdf(n, vartheta, cutoff);
    return {exact, bound, cutoff, exact <= bound};
}

} // namespace latllt
