#include "latllt/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "latllt/error.hpp"

namespace latllt {

KappaSequence::KappaSequence(double v0, double span, double mu, double kappa, double fraction)
    : v0_(v0), span_(span), mu_(mu), kappa_(kappa), fraction_(fraction) {
    if (!std::isfinite(kappa) || !std::isfinite(fraction) || fraction < 0.0 || fraction >= 1.0) {
        throw Error(ErrorCode::InvalidInput, "kappa must be finite and fraction in [0, 1)");
    }
}

std::int64_t KappaSequence::offset(std::int64_t n) const {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
    const auto dn = static_cast<double>(n);
    const double target = dn * mu_ + kappa_ * std::sqrt(dn);
    const double x = (target - dn * v0_) / span_;
    // Nearest integer with x.5 rounded down.
    return static_cast<std::int64_t>(std::ceil(x - 0.5));
}

double KappaSequence::value(std::int64_t n) const {
    return static_cast<double>(n) * v0_ + span_ * (static_cast<double>(offset(n)) + fraction_);
}

double KappaSequence::difference(std::int64_t n, std::int64_t m) const {
    return static_cast<double>(n - m) * v0_ + span_ * static_cast<double>(offset(n) - offset(m));
}

KappaSequence kappa_sequence(const LatticePmf& pmf, const DistStats& stats, double kappa) {
    return {pmf.v0(), pmf.span(), stats.mu, kappa};
}

KappaSequence off_lattice_sequence(const LatticePmf& pmf, const DistStats& stats, double kappa,
                                   double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw Error(ErrorCode::InvalidInput, "off-lattice fraction must lie in (0, 1)");
    }
    return {pmf.v0(), pmf.span(), stats.mu, kappa, fraction};
}

namespace {

void check_order(std::int64_t n, std::int64_t m, bool allow_equal) {
    if (m < 1 || m > n || (!allow_equal && m == n)) {
        throw Error(ErrorCode::BadOrder,
                    "need 1 <= m " + std::string(allow_equal ? "<=" : "<") + " n, got n=" +
                        std::to_string(n) + " m=" + std::to_string(m));
    }
}

double cov_from_probs(std::int64_t n, std::int64_t m, double p_m, double p_increment, double p_n) {
    if (n == m) return static_cast<double>(n) * p_n * (1.0 - p_n);
    return std::sqrt(static_cast<double>(m)) * p_m * std::sqrt(static_cast<double>(n)) *
           (p_increment - p_n);
}

} // namespace

double exact_cov(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n, std::int64_t m,
                 std::size_t cap) {
    check_order(n, m, true);
    const double p_n = prob_at(convolve_n(pmf, n, ConvolutionStrategy::binary_power, cap), seq.value(n));
    if (n == m) return cov_from_probs(n, m, p_n, p_n, p_n);
    const double p_m = prob_at(convolve_n(pmf, m, ConvolutionStrategy::binary_power, cap), seq.value(m));
    if (p_m == 0.0) return 0.0;
    const double p_inc =
        prob_at(convolve_n(pmf, n - m, ConvolutionStrategy::binary_power, cap), seq.difference(n, m));
    return cov_from_probs(n, m, p_m, p_inc, p_n);
}

double thm1_shape(std::int64_t n, std::int64_t m) {
    const auto dn = static_cast<double>(n);
    const auto dm = static_cast<double>(m);
    const auto gap = static_cast<double>(n - m);
    return 1.0 / (std::sqrt(dn / dm) - 1.0) + std::sqrt(dn) / std::pow(gap, 1.5);
}

double cor1_shape(std::int64_t n, std::int64_t m) {
    return std::sqrt(static_cast<double>(m) / static_cast<double>(n));
}

double gw_shape(std::int64_t n, std::int64_t m, double alpha) {
    const auto dn = static_cast<double>(n);
    const auto dm = static_cast<double>(m);
    const auto gap = static_cast<double>(n - m);
    return 1.0 / (std::sqrt(dn / dm) - 1.0) + std::sqrt(dn / gap) / std::pow(gap, alpha);
}

BoundScan bound_scan(const LatticePmf& pmf, const KappaSequence& seq, std::span<const GridPair> grid,
                     double c, double alpha, std::size_t cap) {
    if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "no (n, m) pairs to scan");
    if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::InvalidInput, "c must lie in (0, 1)");
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidInput, "alpha must be positive");
    for (const auto& [n, m] : grid) check_order(n, m, false);

    struct Slots {
        std::size_t p_n;
        std::size_t p_m;
        std::size_t p_inc;
    };
    PointQueries queries;
    std::vector<Slots> slots;
    slots.reserve(grid.size());
    for (const auto& [n, m] : grid) {
        slots.push_back({queries.add(n, seq.value(n)), queries.add(m, seq.value(m)),
                         queries.add(n - m, seq.difference(n, m))});
    }
    const auto probs = queries.evaluate(pmf, cap);

    BoundScan scan{{}, 0.0, 0.0, 0.0};
    scan.records.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto [n, m] = grid[i];
        const auto& s = slots[i];
        CorrelationRecord r{};
        r.n = n;
        r.m = m;
        r.exact_cov = probs[s.p_m] == 0.0
                          ? 0.0
                          : cov_from_probs(n, m, probs[s.p_m], probs[s.p_inc], probs[s.p_n]);
        r.thm1_shape = thm1_shape(n, m);
        r.cor1_shape = cor1_shape(n, m);
        r.gw_shape = gw_shape(n, m, alpha);
        r.thm1_ratio = std::abs(r.exact_cov) / r.thm1_shape;
        r.cor1_ratio = std::abs(r.exact_cov) / r.cor1_shape;
        r.gw_ratio = std::abs(r.exact_cov) / r.gw_shape;
        r.corollary = static_cast<double>(m) <= c * static_cast<double>(n);
        scan.c_hat = std::max(scan.c_hat, r.thm1_ratio);
        scan.gw_hat = std::max(scan.gw_hat, r.gw_ratio);
        if (r.corollary) scan.cc_hat = std::max(scan.cc_hat, r.cor1_ratio);
        scan.records.push_back(r);
    }
    return scan;
}

std::vector<GridPair> dyadic_grid(std::int64_t n_min, std::int64_t n_max) {
    std::vector<GridPair> grid;
    for (std::int64_t n = 1; n <= n_max; n *= 2) {
        if (n < n_min || n < 2) continue;
        for (std::int64_t m = 1; m < n; ++m) grid.emplace_back(n, m);
    }
    return grid;
}

std::vector<GridPair> decade_grid(std::int64_t n_max) {
    std::vector<GridPair> grid;
    for (std::int64_t n = 10; n <= n_max; n *= 10) {
        std::set<std::int64_t> ms{1, n / 4, n / 2, 3 * n / 4, n - 1};
        for (const auto m : ms) {
            if (m >= 1 && m < n) grid.emplace_back(n, m);
        }
    }
    return grid;
}

} // namespace latllt
