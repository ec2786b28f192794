#include "latllt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "latllt/error.hpp"
#include "latllt/summation.hpp"

namespace latllt {

LatticePmf::LatticePmf(double v0, double span, const std::map<std::int64_t, double>& probs)
    : v0_(v0), span_(span) {
    if (!std::isfinite(v0) || !std::isfinite(span) || span <= 0.0) {
        throw Error(ErrorCode::InvalidInput, "lattice origin must be finite and span positive");
    }
    if (probs.empty()) {
        throw Error(ErrorCode::InvalidInput, "empty probability table");
    }
    CompensatedSum total;
    for (const auto& [k, p] : probs) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw Error(ErrorCode::InvalidInput,
                        "probability at offset " + std::to_string(k) + " is outside [0, 1]");
        }
        total.add(p);
        if (p > 0.0) atoms_.push_back({k, p});
    }
    const double sum = total.value();
    if (std::abs(sum - 1.0) > mass_tolerance || atoms_.empty()) {
        throw Error(ErrorCode::SumNotOne, "total mass " + std::to_string(sum));
    }
    if (sum != 1.0) {
        for (auto& a : atoms_) a.mass /= sum;
    }
}

double LatticePmf::mass(std::int64_t k) const noexcept {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), k,
                               [](const Atom& a, std::int64_t key) { return a.offset < key; });
    return (it != atoms_.end() && it->offset == k) ? it->mass : 0.0;
}

std::vector<double> LatticePmf::dense() const {
    std::vector<double> out(static_cast<std::size_t>(max_offset() - min_offset() + 1), 0.0);
    for (const auto& a : atoms_) out[static_cast<std::size_t>(a.offset - min_offset())] = a.mass;
    return out;
}

std::map<std::int64_t, double> LatticePmf::to_map() const {
    std::map<std::int64_t, double> out;
    for (const auto& a : atoms_) out.emplace(a.offset, a.mass);
    return out;
}

double DistStats::sigma() const { return std::sqrt(sigma2); }

std::int64_t offset_gcd(const LatticePmf& pmf) {
    std::int64_t g = 0;
    const auto base = pmf.min_offset();
    for (const auto& a : pmf.atoms()) g = std::gcd(g, a.offset - base);
    return g;
}

DistStats validate(const LatticePmf& pmf) {
    if (pmf.support_size() < 2) {
        throw Error(ErrorCode::DegenerateLaw, "single support point, variance is zero");
    }
    if (const auto g = offset_gcd(pmf); g != 1) {
        throw Error(ErrorCode::NonMaximalSpan,
                    "support offsets share factor " + std::to_string(g) + "; true span is " +
                        std::to_string(g) + "*D");
    }

    CompensatedSum mean;
    for (const auto& a : pmf.atoms()) mean.add(a.mass * pmf.value_at(a.offset));
    const double mu = mean.value();

    CompensatedSum var;
    for (const auto& a : pmf.atoms()) {
        const double d = pmf.value_at(a.offset) - mu;
        var.add(a.mass * d * d);
    }
    const double sigma2 = var.value();
    if (!(sigma2 > 0.0)) {
        throw Error(ErrorCode::DegenerateLaw, "variance is zero");
    }

    // Sum of f(k) ^ f(k+1) over adjacent support pairs.
    CompensatedSum bern;
    const auto atoms = pmf.atoms();
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
        if (atoms[i + 1].offset == atoms[i].offset + 1) {
            bern.add(std::min(atoms[i].mass, atoms[i + 1].mass));
        }
    }
    const double vartheta = bern.value();
    return {mu, sigma2, vartheta, vartheta > 0.0};
}

LatticePmf normalize_span(const LatticePmf& pmf) {
    if (pmf.support_size() < 2) {
        throw Error(ErrorCode::DegenerateLaw, "single support point has no span");
    }
    const auto g = offset_gcd(pmf);
    if (g == 1) return pmf;

    const auto base = pmf.min_offset();
    std::map<std::int64_t, double> probs;
    for (const auto& a : pmf.atoms()) probs.emplace((a.offset - base) / g, a.mass);
    return LatticePmf(pmf.value_at(base), pmf.span() * static_cast<double>(g), probs);
}

} // namespace latllt
