#include "latllt/llt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "latllt/error.hpp"
#include "latllt/tail_bounds.hpp"

namespace latllt {

double gauss_local(std::int64_t n, double point, double mu, double sigma2, double span) {
    const auto dn = static_cast<double>(n);
    const double d = point - dn * mu;
    return span / (std::sqrt(2.0 * std::numbers::pi * sigma2)) * std::exp(-d * d / (2.0 * dn * sigma2));
}

LltErrorPoint llt_delta(const SumDistribution& dist, const DistStats& stats) {
    const double root_n = std::sqrt(static_cast<double>(dist.n()));
    LltErrorPoint best{dist.n(), 0.0, 0.0};
    for (auto j = dist.min_offset() - 1; j <= dist.max_offset() + 1; ++j) {
        const double point = dist.value_at(j);
        const double err = std::abs(root_n * dist.at_offset(j) -
                                    gauss_local(dist.n(), point, stats.mu, stats.sigma2, dist.span()));
        if (err > best.delta) {
            best.delta = err;
            best.argmax = point;
        }
    }
    return best;
}

RateFit fit_slope(std::span<const double> xs, std::span<const double> ys) {
    const auto k = xs.size();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (k < 2 || ys.size() != k) return {nan, nan};
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    if (k < 3) return {slope, nan};
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = ys[i] - my - slope * (xs[i] - mx);
        rss += r * r;
    }
    return {slope, std::sqrt(rss / static_cast<double>(k - 2) / sxx)};
}

LltErrorCurve llt_error(const LatticePmf& pmf, std::span<const std::int64_t> ns, std::size_t cap) {
    const auto stats = validate(pmf);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1 || (i > 0 && ns[i] <= ns[i - 1])) {
            throw Error(ErrorCode::InvalidInput, "n values must be positive and strictly increasing");
        }
        check_support(pmf, ns[i], cap);
    }

    LltErrorCurve curve;
    for (const auto n : ns) {
        curve.points.push_back(llt_delta(convolve_n(pmf, n, ConvolutionStrategy::binary_power, cap), stats));
    }

    // Small n carry transients; fit on the upper half only.
    const std::size_t keep = std::max<std::size_t>(2, (ns.size() + 1) / 2);
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = ns.size() > keep ? ns.size() - keep : 0; i < ns.size(); ++i) {
        if (curve.points[i].delta <= 0.0) continue;
        xs.push_back(std::log(static_cast<double>(curve.points[i].n)));
        ys.push_back(-std::log(curve.points[i].delta));
    }
    const auto fit = fit_slope(xs, ys);
    curve.alpha_hat = fit.slope;
    curve.alpha_stderr = fit.stderr_;
    return curve;
}

BernoulliLltError bernoulli_llt_error(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
    const auto dn = static_cast<double>(n);
    const double root_n = std::sqrt(dn);
    const double peak = 2.0 / std::sqrt(2.0 * std::numbers::pi);
    double sup = 0.0;
    for (std::int64_t z = -1; z <= n + 1; ++z) {
        const double p = std::exp(log_binomial_pmf(n, z, 0.5));
        const double d = static_cast<double>(z) - 0.5 * dn;
        const double g = peak * std::exp(-d * d / (0.5 * dn));
        sup = std::max(sup, std::abs(root_n * p - g));
    }
    return {n, sup, dn * sup};
}

} // namespace latllt
