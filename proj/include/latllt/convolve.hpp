#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "latllt/lattice.hpp"

namespace latllt {

inline constexpr std::size_t default_support_cap = 100'000'000;

/// Lattice index tolerance for point queries.
inline constexpr double lattice_membership_tolerance = 1e-9;

enum class ConvolutionStrategy {
    direct,       ///< n - 1 successive convolutions with the base law; reference path
    binary_power, ///< square-and-multiply on distributions; O(log n) convolutions
};

/// Exact law of S_n = X_1 + ... + X_n for i.i.d. X with a given lattice law.
/// Entry j of `probs()` is P{S_n = n v0 + D (min_offset() + j)}.
class SumDistribution {
public:
    SumDistribution(std::int64_t n, double v0, double span, std::int64_t min_offset,
                    std::vector<double> probs);

    std::int64_t n() const noexcept { return n_; }
    double v0() const noexcept { return v0_; }
    double span() const noexcept { return span_; }
    std::int64_t min_offset() const noexcept { return min_offset_; }
    std::int64_t max_offset() const noexcept {
        return min_offset_ + static_cast<std::int64_t>(probs_.size()) - 1;
    }
    std::span<const double> probs() const noexcept { return probs_; }

    /// P{S_n = n v0 + D j}; zero outside the reachable range.
    double at_offset(std::int64_t j) const noexcept;
    double value_at(std::int64_t j) const noexcept;
    double total_mass() const;

private:
    friend class SumSweep;

    std::int64_t n_;
    double v0_;
    double span_;
    std::int64_t min_offset_;
    std::vector<double> probs_;
};

/// Index j with target = n v0 + D j, or nothing when the target is off the lattice.
std::optional<std::int64_t> lattice_index(double target, std::int64_t n, double v0, double span);

/// Full linear convolution with compensated summation in a fixed term order.
std::vector<double> convolve_dense(std::span<const double> a, std::span<const double> b);

/// Throws SupportTooLarge if S_n's reachable range exceeds `cap` entries.
void check_support(const LatticePmf& pmf, std::int64_t n, std::size_t cap);

SumDistribution convolve_n(const LatticePmf& pmf, std::int64_t n,
                           ConvolutionStrategy strategy = ConvolutionStrategy::binary_power,
                           std::size_t cap = default_support_cap);

/// P{S_n = target}; exactly 0 for off-lattice or unreachable targets.
double prob_at(const SumDistribution& dist, double target);

/// P{S_n = kn, S_m = km} = P{S_m = km} P{S_{n-m} = kn - km}. Requires 1 <= m < n.
double joint_prob(const LatticePmf& pmf, std::int64_t n, std::int64_t m, double kn, double km,
                  std::size_t cap = default_support_cap);

/// Walks S_1, S_2, ... by direct convolution, one step at a time.
class SumSweep {
public:
    explicit SumSweep(const LatticePmf& pmf, std::size_t cap = default_support_cap);

    const SumDistribution& current() const noexcept { return current_; }
    void advance();

private:
    std::vector<double> step_;
    std::int64_t step_min_;
    std::int64_t width_;
    std::size_t cap_;
    SumDistribution current_;
    std::vector<double> scratch_;
};

/// Batch of point probabilities P{S_n = target} answered by one sweep up to
/// the largest requested n, so every S_n is built exactly once.
class PointQueries {
public:
    std::size_t add(std::int64_t n, double target);
    std::size_t size() const noexcept { return queries_.size(); }
    std::vector<double> evaluate(const LatticePmf& pmf, std::size_t cap = default_support_cap) const;

private:
    struct Query {
        std::int64_t n;
        double target;
    };
    std::vector<Query> queries_;
};

} // namespace latllt
