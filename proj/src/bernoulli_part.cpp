#include "latllt/bernoulli_part.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "latllt/error.hpp"
#include "latllt/rng.hpp"
#include "latllt/summation.hpp"

namespace latllt {

namespace {

// Rounding slack for cells that are zero in exact arithmetic.
constexpr double cell_slack = 1e-14;
constexpr double identity_tolerance = 1e-12;

} // namespace

TauSequence::TauSequence(const std::map<std::int64_t, double>& tau) {
    CompensatedSum total;
    for (const auto& [k, t] : tau) {
        if (!std::isfinite(t) || t < 0.0) {
            throw Error(ErrorCode::InadmissibleTau,
                        "tau at offset " + std::to_string(k) + " is negative or not finite");
        }
        if (t > 0.0) {
            tau_.emplace(k, t);
            total.add(t);
        }
    }
    total_ = total.value();
}

double TauSequence::at(std::int64_t k) const noexcept {
    const auto it = tau_.find(k);
    return it == tau_.end() ? 0.0 : it->second;
}

TauSequence canonical_tau(const LatticePmf& pmf) {
    std::map<std::int64_t, double> tau;
    const auto atoms = pmf.atoms();
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
        if (atoms[i + 1].offset == atoms[i].offset + 1) {
            tau.emplace(atoms[i].offset, std::min(atoms[i].mass, atoms[i + 1].mass));
        }
    }
    if (tau.empty()) {
        throw Error(ErrorCode::NoBernoulliPart, "no two adjacent lattice points carry mass");
    }
    return TauSequence(tau);
}

BernoulliPart::BernoulliPart(LatticePmf base, double vartheta, std::int64_t min_offset,
                             std::vector<double> with_bit, std::vector<double> without_bit)
    : base_(std::move(base)), vartheta_(vartheta), min_offset_(min_offset),
      with_bit_(std::move(with_bit)), without_bit_(std::move(without_bit)) {}

double BernoulliPart::with_bit(std::int64_t k) const noexcept {
    if (k < min_offset_ || k > max_offset()) return 0.0;
    return with_bit_[static_cast<std::size_t>(k - min_offset_)];
}

double BernoulliPart::without_bit(std::int64_t k) const noexcept {
    if (k < min_offset_ || k > max_offset()) return 0.0;
    return without_bit_[static_cast<std::size_t>(k - min_offset_)];
}

double BernoulliPart::v_marginal(std::int64_t k) const noexcept {
    return with_bit(k) + without_bit(k);
}

double BernoulliPart::eps_probability() const { return compensated_total(with_bit_); }

std::vector<JointAtom> BernoulliPart::atoms() const {
    std::vector<JointAtom> out;
    for (std::size_t i = 0; i < with_bit_.size(); ++i) {
        const auto k = min_offset_ + static_cast<std::int64_t>(i);
        if (with_bit_[i] > 0.0) out.push_back({k, true, with_bit_[i]});
        if (without_bit_[i] > 0.0) out.push_back({k, false, without_bit_[i]});
    }
    return out;
}

BernoulliPart build_part(const LatticePmf& pmf, const TauSequence& tau, PartMass mass) {
    const double vartheta = tau.total();
    const bool zero_ok = mass == PartMass::allow_zero;
    if (!(vartheta < 1.0) || (!zero_ok && !(vartheta > 0.0))) {
        throw Error(ErrorCode::InadmissibleTau,
                    "total tau mass " + std::to_string(vartheta) + " is outside (0, 1)");
    }

    std::int64_t lo = pmf.min_offset();
    std::int64_t hi = pmf.max_offset();
    if (!tau.entries().empty()) {
        lo = std::min(lo, tau.entries().begin()->first);
        hi = std::max(hi, tau.entries().rbegin()->first + 1);
    }

    const auto size = static_cast<std::size_t>(hi - lo + 1);
    std::vector<double> with_bit(size, 0.0);
    std::vector<double> without_bit(size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
        const auto k = lo + static_cast<std::int64_t>(i);
        with_bit[i] = tau.at(k);
        double cell = pmf.mass(k) - 0.5 * (tau.at(k - 1) + tau.at(k));
        if (cell < -cell_slack) {
            throw Error(ErrorCode::InadmissibleTau,
                        "tau_{k-1} + tau_k exceeds 2 f(k) at offset " + std::to_string(k));
        }
        without_bit[i] = std::max(cell, 0.0);
    }

    BernoulliPart part(pmf, vartheta, lo, std::move(with_bit), std::move(without_bit));

    CompensatedSum total;
    for (std::int64_t k = lo; k <= hi; ++k) {
        total.add(part.with_bit(k));
        total.add(part.without_bit(k));
        const double expected = pmf.mass(k) + 0.5 * (tau.at(k) - tau.at(k - 1));
        if (std::abs(part.v_marginal(k) - expected) > identity_tolerance) {
            throw Error(ErrorCode::InadmissibleTau,
                        "V-marginal mismatch at offset " + std::to_string(k));
        }
    }
    if (std::abs(total.value() - 1.0) > identity_tolerance) {
        throw Error(ErrorCode::InadmissibleTau, "joint mass " + std::to_string(total.value()));
    }
    if (std::abs(part.eps_probability() - vartheta) > identity_tolerance) {
        throw Error(ErrorCode::InadmissibleTau, "P{eps = 1} differs from total tau mass");
    }
    return part;
}

LatticePmf reconstructed_law(const BernoulliPart& part) {
    std::map<std::int64_t, double> law;
    for (std::int64_t k = part.min_offset(); k <= part.max_offset() + 1; ++k) {
        const double p =
            0.5 * (part.with_bit(k - 1) + part.with_bit(k)) + part.without_bit(k);
        if (p > 0.0) law.emplace(k, std::min(p, 1.0));
    }
    const auto& base = part.base();
    return LatticePmf(base.v0(), base.span(), law);
}

double reconstruction_residual(const BernoulliPart& part) {
    const auto law = reconstructed_law(part);
    const auto& base = part.base();
    const auto lo = std::min(law.min_offset(), base.min_offset());
    const auto hi = std::max(law.max_offset(), base.max_offset());
    double worst = 0.0;
    for (auto k = lo; k <= hi; ++k) worst = std::max(worst, std::abs(law.mass(k) - base.mass(k)));
    return worst;
}

DecompositionSample sample_decomposition(const BernoulliPart& part, std::int64_t n,
                                         std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
    const auto cells = part.atoms();
    std::vector<double> weights;
    weights.reserve(cells.size());
    for (const auto& c : cells) weights.push_back(c.prob);
    const DiscreteSampler pick(weights);

    Xoshiro256 rng(seed);
    DecompositionSample out;
    out.steps.reserve(static_cast<std::size_t>(n));
    std::int64_t v_sum = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        const auto& cell = cells[pick(rng)];
        const bool coin = rng.coin();
        out.steps.push_back({cell.offset, cell.eps, coin});
        v_sum += cell.offset;
        out.b += cell.eps ? 1 : 0;
        out.m += (cell.eps && coin) ? 1 : 0;
    }
    const auto& base = part.base();
    out.w = static_cast<double>(n) * base.v0() + base.span() * static_cast<double>(v_sum);
    out.s_offset = v_sum + out.m;
    out.s = out.w + base.span() * static_cast<double>(out.m);
    return out;
}

} // namespace latllt
