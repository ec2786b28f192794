#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "latllt/convolve.hpp"
#include "latllt/lattice.hpp"

namespace latllt {

/// Targets kappa_n with (kappa_n - n mu) / sqrt(n) -> kappa.
///
/// The canonical rule picks the point of L(n v0, D) nearest to
/// n mu + kappa sqrt(n), ties going toward -infinity. A nonzero `fraction`
/// shifts every target by fraction * D, which moves the whole sequence off
/// the lattice while keeping the same limit.
class KappaSequence {
public:
    KappaSequence(double v0, double span, double mu, double kappa, double fraction = 0.0);

    double kappa() const noexcept { return kappa_; }
    double fraction() const noexcept { return fraction_; }
    bool on_lattice() const noexcept { return fraction_ == 0.0; }

    /// Lattice index j of the canonical point n v0 + D j.
    std::int64_t offset(std::int64_t n) const;
    /// kappa_n.
    double value(std::int64_t n) const;
    /// kappa_n - kappa_m, formed from lattice indices so the shift cancels.
    double difference(std::int64_t n, std::int64_t m) const;

private:
    double v0_;
    double span_;
    double mu_;
    double kappa_;
    double fraction_;
};

KappaSequence kappa_sequence(const LatticePmf& pmf, const DistStats& stats, double kappa);

/// Same limit as `kappa_sequence`, but every kappa_n lies strictly between
/// lattice points (fraction in (0, 1)).
KappaSequence off_lattice_sequence(const LatticePmf& pmf, const DistStats& stats, double kappa,
                                   double fraction = 0.5);

/// E[Y_n Y_m] with Y_n = sqrt(n) (1{S_n = kappa_n} - P{S_n = kappa_n}).
/// For m < n uses the independent-increment identity
///   sqrt(m) P{S_m = kappa_m} sqrt(n) (P{S_{n-m} = kappa_n - kappa_m} - P{S_n = kappa_n}),
/// and for m = n returns n p (1 - p). Throws BadOrder unless 1 <= m <= n.
double exact_cov(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n, std::int64_t m,
                 std::size_t cap = default_support_cap);

double thm1_shape(std::int64_t n, std::int64_t m);
double cor1_shape(std::int64_t n, std::int64_t m);
double gw_shape(std::int64_t n, std::int64_t m, double alpha);

struct CorrelationRecord {
    std::int64_t n;
    std::int64_t m;
    double exact_cov;
    double thm1_shape;
    double cor1_shape;
    double gw_shape;
    double thm1_ratio; ///< |exact_cov| / thm1_shape
    double cor1_ratio; ///< |exact_cov| / cor1_shape
    double gw_ratio;   ///< |exact_cov| / gw_shape
    bool corollary;    ///< m <= c n
};

struct BoundScan {
    std::vector<CorrelationRecord> records;
    double c_hat;  ///< max thm1_ratio over the grid
    double cc_hat; ///< max cor1_ratio over pairs with m <= c n (0 if none)
    double gw_hat; ///< max gw_ratio over the grid
};

using GridPair = std::pair<std::int64_t, std::int64_t>;

/// Empirical constants for the two correlation bounds over a grid of (n, m)
/// pairs with 1 <= m < n. All needed point probabilities come from one sweep.
BoundScan bound_scan(const LatticePmf& pmf, const KappaSequence& seq, std::span<const GridPair> grid,
                     double c, double alpha = 0.5, std::size_t cap = default_support_cap);

/// n = 2^a for n_min <= n <= n_max, each with every m in [1, n).
std::vector<GridPair> dyadic_grid(std::int64_t n_min, std::int64_t n_max);

/// n in {10, 100, ...} up to n_max, m in {1, n/4, n/2, 3n/4, n-1}.
std::vector<GridPair> decade_grid(std::int64_t n_max);

} // namespace latllt
