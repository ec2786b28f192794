#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "latllt/lattice.hpp"

namespace latllt {

/// Non-negative weights tau_k whose sum is the Bernoulli mass carried by the
/// decomposition. Admissibility against a particular law is checked by
/// `build_part`.
class TauSequence {
public:
    explicit TauSequence(const std::map<std::int64_t, double>& tau);

    double at(std::int64_t k) const noexcept;
    double total() const noexcept { return total_; }
    const std::map<std::int64_t, double>& entries() const noexcept { return tau_; }

private:
    std::map<std::int64_t, double> tau_;
    double total_ = 0.0;
};

/// tau_k = min(f(k), f(k+1)). Throws NoBernoulliPart when no two adjacent
/// offsets both carry mass.
TauSequence canonical_tau(const LatticePmf& pmf);

/// Whether a tau with total mass zero is accepted. Only the reconstruction
/// identity is meaningful in that case.
enum class PartMass { strict, allow_zero };

/// One cell of the joint law of (V, eps).
struct JointAtom {
    std::int64_t offset;
    bool eps;
    double prob;
};

/// Joint law of (V, eps):
///   P{(V, eps) = (v_k, 1)} = tau_k
///   P{(V, eps) = (v_k, 0)} = f(k) - (tau_{k-1} + tau_k) / 2
class BernoulliPart {
public:
    const LatticePmf& base() const noexcept { return base_; }
    double vartheta() const noexcept { return vartheta_; }

    double with_bit(std::int64_t k) const noexcept;
    double without_bit(std::int64_t k) const noexcept;
    /// P{V = v_k} from the joint cells.
    double v_marginal(std::int64_t k) const noexcept;
    /// P{eps = 1} from the joint cells.
    double eps_probability() const;

    std::int64_t min_offset() const noexcept { return min_offset_; }
    std::int64_t max_offset() const noexcept {
        return min_offset_ + static_cast<std::int64_t>(with_bit_.size()) - 1;
    }

    /// Positive cells in sampling order: ascending offset, eps = 1 before eps = 0.
    std::vector<JointAtom> atoms() const;

private:
    friend BernoulliPart build_part(const LatticePmf&, const TauSequence&, PartMass);

    BernoulliPart(LatticePmf base, double vartheta, std::int64_t min_offset,
                  std::vector<double> with_bit, std::vector<double> without_bit);

    LatticePmf base_;
    double vartheta_;
    std::int64_t min_offset_;
    std::vector<double> with_bit_;
    std::vector<double> without_bit_;
};

/// Throws InadmissibleTau when some cell f(k) - (tau_{k-1} + tau_k)/2 is
/// negative, the total tau mass is not in (0, 1), or the marginal checks fail.
BernoulliPart build_part(const LatticePmf& pmf, const TauSequence& tau,
                         PartMass mass = PartMass::strict);

/// Law of Z = V + eps D L with L a fair bit independent of (V, eps).
LatticePmf reconstructed_law(const BernoulliPart& part);

/// Largest per-atom difference between the reconstructed law and the base law.
double reconstruction_residual(const BernoulliPart& part);

struct DecompositionStep {
    std::int64_t v_offset;
    bool eps;
    bool coin;
};

struct DecompositionSample {
    std::vector<DecompositionStep> steps;
    double w = 0.0;            ///< W_n = sum V_j
    std::int64_t b = 0;        ///< B_n = sum eps_j
    std::int64_t m = 0;        ///< M_n = sum eps_j L_j
    std::int64_t s_offset = 0; ///< S_n = n v0 + D s_offset
    double s = 0.0;            ///< S_n = W_n + D M_n
};

/// Draws (V_j, eps_j) i.i.d. from the joint law and independent fair bits L_j.
/// Deterministic for a given seed.
DecompositionSample sample_decomposition(const BernoulliPart& part, std::int64_t n,
                                         std::uint64_t seed);

} // namespace latllt
