#pragma once

#include <cmath>
#include <span>

namespace latllt {

/// Neumaier's variant of Kahan summation. Order of `add` calls fixes the
/// result bit-for-bit.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        const bool keep = std::abs(sum_) >= std::abs(x);
        const double big = keep ? sum_ : x;
        const double small = keep ? x : sum_;
        comp_ += (big - t) + small;
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) noexcept {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

} // namespace latllt
