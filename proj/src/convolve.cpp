#include "latllt/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "latllt/error.hpp"
#include "latllt/summation.hpp"

namespace latllt {

SumDistribution::SumDistribution(std::int64_t n, double v0, double span, std::int64_t min_offset,
                                 std::vector<double> probs)
    : n_(n), v0_(v0), span_(span), min_offset_(min_offset), probs_(std::move(probs)) {}

double SumDistribution::at_offset(std::int64_t j) const noexcept {
    if (j < min_offset_ || j > max_offset()) return 0.0;
    return probs_[static_cast<std::size_t>(j - min_offset_)];
}

double SumDistribution::value_at(std::int64_t j) const noexcept {
    return static_cast<double>(n_) * v0_ + span_ * static_cast<double>(j);
}

double SumDistribution::total_mass() const { return compensated_total(probs_); }

std::optional<std::int64_t> lattice_index(double target, std::int64_t n, double v0, double span) {
    if (!std::isfinite(target)) return std::nullopt;
    const double x = (target - static_cast<double>(n) * v0) / span;
    const double r = std::round(x);
    if (std::abs(x - r) >= lattice_membership_tolerance) return std::nullopt;
    if (std::abs(r) > 9.0e15) return std::nullopt;
    return static_cast<std::int64_t>(r);
}

namespace {

void convolve_into(std::span<const double> a, std::span<const double> b, std::vector<double>& out) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    out.resize(na + nb - 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t lo = i >= nb ? i - nb + 1 : 0;
        const std::size_t hi = std::min(i, na - 1);
        CompensatedSum s;
        for (std::size_t j = lo; j <= hi; ++j) s.add(a[j] * b[i - j]);
        out[i] = s.value();
    }
}

} // namespace

std::vector<double> convolve_dense(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> out;
    convolve_into(a, b, out);
    return out;
}

namespace {

void check_reachable(std::int64_t offset_width, std::int64_t n, std::size_t cap) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
    const auto width = static_cast<std::uint64_t>(offset_width);
    const auto un = static_cast<std::uint64_t>(n);
    if (width > 0 && un > (std::numeric_limits<std::uint64_t>::max() - 1) / width) {
        throw Error(ErrorCode::SupportTooLarge, "reachable support overflows");
    }
    const std::uint64_t size = un * width + 1;
    if (size > cap) {
        throw Error(ErrorCode::SupportTooLarge,
                    "S_" + std::to_string(n) + " needs " + std::to_string(size) +
                        " entries, cap is " + std::to_string(cap));
    }
}

std::vector<double> direct_power(std::span<const double> base, std::int64_t n) {
    std::vector<double> acc(base.begin(), base.end());
    for (std::int64_t i = 1; i < n; ++i) acc = convolve_dense(acc, base);
    return acc;
}

std::vector<double> binary_power(std::span<const double> base, std::int64_t n) {
    std::vector<double> result;
    std::vector<double> square(base.begin(), base.end());
    for (auto e = static_cast<std::uint64_t>(n);;) {
        if (e & 1U) result = result.empty() ? square : convolve_dense(result, square);
        e >>= 1U;
        if (e == 0) break;
        square = convolve_dense(square, square);
    }
    return result;
}

} // namespace

void check_support(const LatticePmf& pmf, std::int64_t n, std::size_t cap) {
    check_reachable(pmf.max_offset() - pmf.min_offset(), n, cap);
}

SumDistribution convolve_n(const LatticePmf& pmf, std::int64_t n, ConvolutionStrategy strategy,
                           std::size_t cap) {
    check_support(pmf, n, cap);
    const auto base = pmf.dense();
    auto probs = strategy == ConvolutionStrategy::direct ? direct_power(base, n)
                                                         : binary_power(base, n);
    return {n, pmf.v0(), pmf.span(), n * pmf.min_offset(), std::move(probs)};
}

double prob_at(const SumDistribution& dist, double target) {
    const auto j = lattice_index(target, dist.n(), dist.v0(), dist.span());
    return j ? dist.at_offset(*j) : 0.0;
}

double joint_prob(const LatticePmf& pmf, std::int64_t n, std::int64_t m, double kn, double km,
                  std::size_t cap) {
    if (m < 1 || m >= n) {
        throw Error(ErrorCode::BadOrder, "joint probability needs 1 <= m < n, got n=" +
                                             std::to_string(n) + " m=" + std::to_string(m));
    }
    const double first = prob_at(convolve_n(pmf, m, ConvolutionStrategy::binary_power, cap), km);
    if (first == 0.0) return 0.0;
    return first * prob_at(convolve_n(pmf, n - m, ConvolutionStrategy::binary_power, cap), kn - km);
}

SumSweep::SumSweep(const LatticePmf& pmf, std::size_t cap)
    : step_(pmf.dense()), step_min_(pmf.min_offset()),
      width_(pmf.max_offset() - pmf.min_offset()), cap_(cap),
      current_(1, pmf.v0(), pmf.span(), pmf.min_offset(), pmf.dense()) {}

void SumSweep::advance() {
    const auto next = current_.n() + 1;
    check_reachable(width_, next, cap_);
    convolve_into(current_.probs_, step_, scratch_);
    current_.probs_.swap(scratch_);
    current_.n_ = next;
    current_.min_offset_ += step_min_;
}

std::size_t PointQueries::add(std::int64_t n, double target) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
    queries_.push_back({n, target});
    return queries_.size() - 1;
}

std::vector<double> PointQueries::evaluate(const LatticePmf& pmf, std::size_t cap) const {
    std::vector<double> out(queries_.size(), 0.0);
    if (queries_.empty()) return out;

    std::vector<std::size_t> order(queries_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return queries_[a].n < queries_[b].n; });
    check_support(pmf, queries_[order.back()].n, cap);

    SumSweep sweep(pmf, cap);
    for (const auto idx : order) {
        while (sweep.current().n() < queries_[idx].n) sweep.advance();
        out[idx] = prob_at(sweep.current(), queries_[idx].target);
    }
    return out;
}

} // namespace latllt
