#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "latllt/convolve.hpp"
#include "latllt/lattice.hpp"

namespace latllt {

/// D / (sqrt(2 pi) sigma) * exp(-(N - n mu)^2 / (2 n sigma^2)), the Gaussian
/// comparand of sqrt(n) P{S_n = N}.
double gauss_local(std::int64_t n, double point, double mu, double sigma2, double span);

struct LltErrorPoint {
    std::int64_t n;
    double delta;    ///< sup_N |sqrt(n) P{S_n = N} - gauss_local(n, N)|
    double argmax;   ///< lattice point attaining the sup
};

struct LltErrorCurve {
    std::vector<LltErrorPoint> points;
    double alpha_hat;    ///< slope of -log delta on log n over the largest half of n
    double alpha_stderr; ///< NaN when fewer than three points enter the fit
};

/// Sup-norm LLT discrepancy of an exact S_n law, taken over the whole reachable
/// range plus the two adjacent lattice points.
LltErrorPoint llt_delta(const SumDistribution& dist, const DistStats& stats);

/// Throws (via `validate`) on non-maximal span or degenerate laws, and
/// propagates SupportTooLarge. `ns` must be strictly increasing.
LltErrorCurve llt_error(const LatticePmf& pmf, std::span<const std::int64_t> ns,
                        std::size_t cap = default_support_cap);

struct RateFit {
    double slope;
    double stderr_;
};

/// Ordinary least squares slope of ys on xs with its standard error.
RateFit fit_slope(std::span<const double> xs, std::span<const double> ys);

struct BernoulliLltError {
    std::int64_t n;
    double sup;    ///< sup_z |sqrt(n) P{L_1 + ... + L_n = z} - (2/sqrt(2 pi)) e^{-(z - n/2)^2 / (n/2)}|
    double scaled; ///< n * sup
};

/// Exact fair-coin version of the LLT discrepancy.
BernoulliLltError bernoulli_llt_error(std::int64_t n);

} // namespace latllt
