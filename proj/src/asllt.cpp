#include "latllt/asllt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "latllt/convolve.hpp"
#include "latllt/error.hpp"
#include "latllt/summation.hpp"

namespace latllt {

double asllt_limit(const DistStats& stats, double span, double kappa) {
    return span / (std::sqrt(2.0 * std::numbers::pi) * stats.sigma()) *
           std::exp(-kappa * kappa / (2.0 * stats.sigma2));
}

LatticeSampler::LatticeSampler(const LatticePmf& pmf) {
    std::vector<double> weights;
    for (const auto& a : pmf.atoms()) {
        offsets_.push_back(a.offset);
        weights.push_back(a.mass);
    }
    pick_ = DiscreteSampler(weights);
}

std::vector<std::int64_t> default_checkpoints(std::int64_t n_max) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 100; n <= n_max; n *= 10) out.push_back(n);
    if (n_max >= 10 && (out.empty() || out.back() != n_max)) out.push_back(n_max);
    return out;
}

namespace {

void check_checkpoints(std::int64_t n_max, std::span<const std::int64_t> checkpoints) {
    if (n_max < 10) throw Error(ErrorCode::InvalidInput, "N_max must be at least 10");
    if (checkpoints.empty()) throw Error(ErrorCode::InvalidInput, "no checkpoints given");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const auto c = checkpoints[i];
        if (c < 10 || c > n_max || (i > 0 && c <= checkpoints[i - 1])) {
            throw Error(ErrorCode::InvalidInput,
                        "checkpoints must increase strictly within [10, N_max]");
        }
    }
}

} // namespace

std::int64_t HitWindow::count() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }

HitWindow hit_window(const KappaSequence& seq, double span, double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw Error(ErrorCode::InvalidInput, "interval needs finite lo <= hi");
    }
    if (!std::isfinite(span) || span <= 0.0) throw Error(ErrorCode::InvalidInput, "span must be positive");
    const double f = seq.fraction();
    const double a = std::ceil(lo / span + f - lattice_membership_tolerance);
    const double b = std::floor(hi / span + f + lattice_membership_tolerance);
    if (std::abs(a) > 9.0e15 || std::abs(b) > 9.0e15) throw Error(ErrorCode::InvalidInput, "interval too wide");
    return {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
}

namespace {

AslltRun simulate(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
                  std::span<const std::int64_t> checkpoints, std::uint64_t seed, HitWindow window) {
    check_checkpoints(n_max, checkpoints);
    const auto stats = validate(pmf);

    AslltRun run{seed, n_max, {checkpoints.begin(), checkpoints.end()}, {}, 0.0};
    run.limit = asllt_limit(stats, pmf.span(), seq.kappa()) * static_cast<double>(window.count());
    run.averages.reserve(checkpoints.size());

    const LatticeSampler draw(pmf);
    Xoshiro256 rng(seed);
    const bool reachable = window.count() > 0;
    const std::int64_t last = checkpoints.back();
    std::int64_t s = 0;
    std::size_t next = 0;
    CompensatedSum hits;
    for (std::int64_t n = 1; n <= last; ++n) {
        s += draw(rng);
        if (reachable) {
            const auto d = s - seq.offset(n);
            if (d >= window.lo && d <= window.hi) hits.add(1.0 / std::sqrt(static_cast<double>(n)));
        }
        if (n == checkpoints[next]) {
            run.averages.push_back(hits.value() / std::log(static_cast<double>(n)));
            ++next;
        }
    }
    return run;
}

} // namespace

AslltRun run_path(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
                  std::span<const std::int64_t> checkpoints, std::uint64_t seed) {
    return simulate(pmf, seq, n_max, checkpoints, seed, hit_window(seq, pmf.span(), 0.0, 0.0));
}

AslltRun run_interval_path(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
                           std::span<const std::int64_t> checkpoints, std::uint64_t seed, double lo,
                           double hi) {
    return simulate(pmf, seq, n_max, checkpoints, seed, hit_window(seq, pmf.span(), lo, hi));
}

EnsembleSummary run_ensemble_with_seeds(const LatticePmf& pmf, const KappaSequence& seq,
                                        std::int64_t n_max, std::span<const std::int64_t> checkpoints,
                                        std::span<const std::uint64_t> seeds, unsigned threads) {
    if (seeds.size() < 2) throw Error(ErrorCode::InvalidInput, "an ensemble needs at least 2 paths");
    check_checkpoints(n_max, checkpoints);
    const auto stats = validate(pmf);

    std::vector<AslltRun> runs(seeds.size());
    const unsigned workers = std::clamp<unsigned>(threads, 1U, static_cast<unsigned>(seeds.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) runs[i] = run_path(pmf, seq, n_max, checkpoints, seeds[i]);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (auto i = cursor.fetch_add(1); i < seeds.size(); i = cursor.fetch_add(1)) {
                    runs[i] = run_path(pmf, seq, n_max, checkpoints, seeds[i]);
                }
            });
        }
    }

    EnsembleSummary out;
    out.limit = asllt_limit(stats, pmf.span(), seq.kappa());
    const auto paths = static_cast<double>(runs.size());
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        CheckpointSummary cs{checkpoints[c], 0.0, 0.0, runs[0].averages[c], runs[0].averages[c]};
        CompensatedSum total;
        for (const auto& r : runs) {
            total.add(r.averages[c]);
            cs.min = std::min(cs.min, r.averages[c]);
            cs.max = std::max(cs.max, r.averages[c]);
        }
        cs.mean = total.value() / paths;
        CompensatedSum sq;
        for (const auto& r : runs) sq.add((r.averages[c] - cs.mean) * (r.averages[c] - cs.mean));
        cs.sd = std::sqrt(sq.value() / (paths - 1.0));
        out.checkpoints.push_back(cs);
    }
    out.runs = std::move(runs);
    return out;
}

EnsembleSummary run_ensemble(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
                             std::span<const std::int64_t> checkpoints, std::int64_t paths,
                             std::uint64_t master_seed, unsigned threads) {
    if (paths < 2) throw Error(ErrorCode::InvalidInput, "an ensemble needs at least 2 paths");
    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(paths));
    for (std::int64_t i = 0; i < paths; ++i) {
        seeds.push_back(derive_seed(master_seed, static_cast<std::uint64_t>(i)));
    }
    return run_ensemble_with_seeds(pmf, seq, n_max, checkpoints, seeds, threads);
}

std::vector<double> expected_average_curve(const LatticePmf& pmf, const KappaSequence& seq,
                                           std::span<const std::int64_t> checkpoints,
                                           std::size_t cap) {
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 2 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
            throw Error(ErrorCode::InvalidInput, "checkpoints must increase strictly from 2");
        }
    }
    std::vector<double> out;
    if (checkpoints.empty()) return out;
    if (!seq.on_lattice()) return std::vector<double>(checkpoints.size(), 0.0);

    check_support(pmf, checkpoints.back(), cap);
    SumSweep sweep(pmf, cap);
    CompensatedSum total;
    for (std::int64_t n = 1; n <= checkpoints.back(); ++n) {
        if (n > 1) sweep.advance();
        const double p = sweep.current().at_offset(seq.offset(n));
        total.add(p / std::sqrt(static_cast<double>(n)));
        if (n == checkpoints[out.size()]) out.push_back(total.value() / std::log(static_cast<double>(n)));
    }
    return out;
}

double expected_average(const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n,
                        std::size_t cap) {
    const std::int64_t cps[] = {n};
    return expected_average_curve(pmf, seq, cps, cap).front();
}

} // namespace latllt
