#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "latllt/convolve.hpp"
#include "latllt/correlation.hpp"
#include "latllt/lattice.hpp"
#include "latllt/rng.hpp"

namespace latllt {

/// D / (sqrt(2 pi) sigma) * exp(-kappa^2 / (2 sigma^2)).
double asllt_limit(const DistStats& stats, double span, double kappa);

/// Draws i.i.d. lattice offsets of X by inverse CDF over ascending offsets.
class LatticeSampler {
public:
    explicit LatticeSampler(const LatticePmf& pmf);
    std::int64_t operator()(Xoshiro256& rng) const noexcept { return offsets_[pick_(rng)]; }

private:
    std::vector<std::int64_t> offsets_;
    DiscreteSampler pick_;
};

/// One simulated path of the log-averaged hit statistic
///   A_N = (1 / log N) sum_{n <= N} n^{-1/2} 1{S_n = kappa_n}.
struct AslltRun {
    std::uint64_t seed;
    std::int64_t n_max;
    std::vector<std::int64_t> checkpoints;
    std::vector<double> averages; ///< A_N at each checkpoint
    double limit;
};

/// Decades 10^2, 10^3, ... not exceeding n_max, with n_max appended if it is
/// not itself a decade.
std::vector<std::int64_t> default_checkpoints(std::int64_t n_max);

/// Requires n_max >= 10 and strictly increasing checkpoints in [10, n_max].
AslltRun run_path(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
                  std::span<const std::int64_t> checkpoints, std::uint64_t seed);

/// Offsets d = j - kappa_n offset with lo <= d <= hi; empty when hi < lo.
struct HitWindow {
    std::int64_t lo;
    std::int64_t hi;

    std::int64_t count() const noexcept;
};

/// Lattice points of kappa_n + [lo, hi] expressed relative to kappa_n's
/// offset. For an on-lattice sequence this is #{[lo, hi] intersected with D Z}.
HitWindow hit_window(const KappaSequence& seq, double span, double lo, double hi);

/// Interval version of run_path: counts S_n in kappa_n + [lo, hi]. The limit
/// is the point limit times the number of lattice points in the window.
AslltRun run_interval_path(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
                           std::span<const std::int64_t> checkpoints, std::uint64_t seed, double lo,
                           double hi);

struct CheckpointSummary {
    std::int64_t n;
    double mean;
    double sd; ///< sample standard deviation across paths
    double min;
    double max;
};

struct EnsembleSummary {
    std::vector<CheckpointSummary> checkpoints;
    std::vector<AslltRun> runs;
    double limit;
};

/// Paths use sub-seeds derive_seed(master_seed, i). Paths run on up to
/// `threads` workers; the summary is reduced in path order.
EnsembleSummary run_ensemble(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
                             std::span<const std::int64_t> checkpoints, std::int64_t paths,
                             std::uint64_t master_seed, unsigned threads = 1);

/// As `run_ensemble` with explicit per-path seeds.
EnsembleSummary run_ensemble_with_seeds(const LatticePmf& pmf, const KappaSequence& seq,
                                        std::int64_t n_max, std::span<const std::int64_t> checkpoints,
                                        std::span<const std::uint64_t> seeds, unsigned threads = 1);

/// E[A_N] = (1 / log N) sum_{n <= N} n^{-1/2} P{S_n = kappa_n}, exact by convolution.
double expected_average(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n,
                        std::size_t cap = default_support_cap);

/// E[A_N] at each of the (strictly increasing) checkpoints in a single sweep.
std::vector<double> expected_average_curve(const LatticePmf& pmf, const KappaSequence& seq,
                                           std::span<const std::int64_t> checkpoints,
                                           std::size_t cap = default_support_cap);

} // namespace latllt
