#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace latllt {

/// One positive-mass point of a lattice law: P{X = v0 + D * offset} = mass.
struct Atom {
    std::int64_t offset;
    double mass;
};

/// A finitely supported law on the lattice {v0 + D k : k integer}.
///
/// Construction checks that masses are finite, lie in [0, 1] and sum to one
/// within `mass_tolerance`; sums inside the tolerance are renormalized.
/// Zero-mass offsets are dropped. Degeneracy and span maximality are not
/// enforced here (see `validate` and `normalize_span`).
class LatticePmf {
public:
    static constexpr double mass_tolerance = 1e-12;

    LatticePmf(double v0, double span, const std::map<std::int64_t, double>& probs);

    double v0() const noexcept { return v0_; }
    double span() const noexcept { return span_; }

    /// Positive-mass atoms in ascending offset order.
    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t support_size() const noexcept { return atoms_.size(); }
    std::int64_t min_offset() const noexcept { return atoms_.front().offset; }
    std::int64_t max_offset() const noexcept { return atoms_.back().offset; }

    /// f(k); zero off the support.
    double mass(std::int64_t k) const noexcept;
    double value_at(std::int64_t k) const noexcept { return v0_ + span_ * static_cast<double>(k); }

    /// Masses on [min_offset, max_offset], zero-filled.
    std::vector<double> dense() const;
    std::map<std::int64_t, double> to_map() const;

private:
    double v0_;
    double span_;
    std::vector<Atom> atoms_;
};

struct DistStats {
    double mu;
    double sigma2;
    double vartheta;
    bool basber;

    double sigma() const;
};

/// Moments, Bernoulli mass and the adjacent-atom condition. Throws
/// DegenerateLaw for a one-point law and NonMaximalSpan when the offset gaps
/// share a common factor.
DistStats validate(const LatticePmf& pmf);

/// gcd of the gaps between support offsets (0 for a one-point law).
std::int64_t offset_gcd(const LatticePmf& pmf);

/// Rewrites the law on its maximal lattice. A law that is already maximal is
/// returned unchanged; otherwise the origin moves to the smallest support
/// point and D is multiplied by the gap gcd.
LatticePmf normalize_span(const LatticePmf& pmf);

} // namespace latllt
