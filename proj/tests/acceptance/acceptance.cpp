// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and runtime ceilings are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latllt/latllt.hpp"
#include "support/oracles.hpp"

using namespace latllt;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "failed: ";
            else detail << "; ";
            detail << what;
            pass = false;
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    double seconds_limit;
    std::function<void(Outcome&)> body;
};

const LatticePmf coin(0.0, 1.0, {{0, 0.5}, {1, 0.5}});
const LatticePmf three(0.0, 1.0, {{0, 0.5}, {1, 0.3}, {2, 0.2}});

std::vector<LatticePmf> small_suite() {
    std::mt19937_64 rng(0xC0FFEE);
    std::vector<LatticePmf> out;
    for (int i = 0; i < 60; ++i) out.push_back(normalize_span(oracle::random_pmf(rng, 5, -3, 5)));
    return out;
}

double lookup(const std::map<std::int64_t, double>& law, std::int64_t j) {
    const auto it = law.find(j);
    return it == law.end() ? 0.0 : it->second;
}

void convolution_oracle(Outcome& out) {
    double worst_law = 0.0;
    double worst_joint = 0.0;
    std::size_t checked = 0;
    const auto suite = small_suite();
    for (const auto& pmf : suite) {
        for (int n = 1; n <= 6; ++n) {
            const auto brute = oracle::sum_law(pmf, n);
            const auto d = convolve_n(pmf, n);
            for (auto j = d.min_offset() - 1; j <= d.max_offset() + 1; ++j) {
                worst_law = std::max(worst_law, std::abs(d.at_offset(j) - lookup(brute, j)));
            }
            if (n < 2) continue;
            const auto tables = oracle::joint_tables(pmf, n);
            for (int m = 1; m < n; ++m) {
                const auto dm = convolve_n(pmf, m);
                for (auto jn = d.min_offset(); jn <= d.max_offset(); ++jn) {
                    for (auto jm = dm.min_offset(); jm <= dm.max_offset(); ++jm) {
                        const auto it = tables[m].find({jn, jm});
                        const double want = it == tables[m].end() ? 0.0 : it->second;
                        const double got = joint_prob(pmf, n, m, d.value_at(jn), dm.value_at(jm));
                        worst_joint = std::max(worst_joint, std::abs(got - want));
                        ++checked;
                    }
                }
            }
        }
    }
    out.detail << suite.size() << " laws, " << checked << " joint cells, max |err| law "
               << worst_law << " joint " << worst_joint;
    out.require(suite.size() >= 50, "suite too small");
    out.require(worst_law <= 1e-12, "convolve_n differs from enumeration");
    out.require(worst_joint <= 1e-12, "joint_prob differs from enumeration");
}

void reconstruction(Outcome& out) {
    std::mt19937_64 rng(0xBE5);
    double worst_recon = 0.0;
    double worst_marginal = 0.0;
    double worst_eps = 0.0;
    int laws = 0;
    for (; laws < 100; ++laws) {
        const auto pmf = oracle::random_pmf(rng, 6, -3, 6, true);
        if (!validate(normalize_span(pmf)).basber) {
            out.require(false, "generated law lacks adjacent mass");
        }
        const auto tau = oracle::random_tau(rng, pmf);
        const auto part = build_part(pmf, tau);
        worst_recon = std::max(worst_recon, reconstruction_residual(part));
        for (auto k = part.min_offset() - 1; k <= part.max_offset() + 1; ++k) {
            worst_marginal = std::max(
                worst_marginal, std::abs(part.v_marginal(k) - (pmf.mass(k) + 0.5 * (tau.at(k) - tau.at(k - 1)))));
        }
        worst_eps = std::max(worst_eps, std::abs(part.eps_probability() - tau.total()));
    }
    out.detail << laws << " laws with random admissible tau, max reconstruction err " << worst_recon
               << ", V-marginal err " << worst_marginal << ", P{eps=1} err " << worst_eps;
    out.require(worst_recon <= 1e-12, "reconstruction above 1e-12");
    // Exact in real arithmetic; allow rounding only.
    out.require(worst_marginal <= 1e-15, "V-marginal identity");
    out.require(worst_eps <= 1e-15, "P{eps = 1} identity");
}

void decomposition_identity(Outcome& out) {
    std::mt19937_64 rng(0xDEC);
    double worst = 0.0;
    int laws = 0;
    for (; laws < 50; ++laws) {
        const auto pmf = oracle::random_pmf(rng, 3, -2, 3, true);
        const auto part = build_part(pmf, laws % 2 ? canonical_tau(pmf) : oracle::random_tau(rng, pmf));
        for (int n = 1; n <= 4; ++n) {
            const auto law = oracle::decomposition_law(part, n);
            const auto d = convolve_n(pmf, n);
            for (auto j = d.min_offset() - 1; j <= d.max_offset() + 1; ++j) {
                worst = std::max(worst, std::abs(lookup(law, j) - d.at_offset(j)));
            }
        }
    }
    out.detail << laws << " laws, n <= 4, max |law(W_n + D M_n) - law(S_n)| " << worst;
    out.require(worst <= 1e-12, "decomposition law differs");
}

void chernoff(Outcome& out) {
    int pairs = 0;
    int violations = 0;
    double worst_psi_one = 0.0;
    double worst_residual = 0.0;
    bool monotone = true;
    for (int a = 1; a <= 10; ++a) {
        const double vartheta = 0.095 * a; // 0.095 .. 0.95
        double previous = 0.0;
        for (int b = 1; b <= 10; ++b) {
            const double theta = b == 10 ? vartheta : vartheta * b / 10.0;
            ++pairs;
            const double value = psi(theta, vartheta);
            monotone = monotone && value >= previous;
            previous = value;
            for (std::int64_t n = 1; n <= 500; ++n) {
                if (!verify_chernoff(vartheta, theta, n).holds) ++violations;
            }
        }
        worst_psi_one = std::max(worst_psi_one, std::abs(psi(vartheta, vartheta) - 1.0));
        for (int r = 1; r < 20; ++r) {
            const double rho = 1.0 - vartheta + vartheta * r / 20.0;
            worst_residual = std::max(worst_residual, std::abs(psi(solve_theta(rho, vartheta), vartheta) - rho));
        }
        std::mt19937_64 rng(a);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int t = 0; t < 1000; ++t) {
            double x = vartheta * u(rng);
            double y = vartheta * u(rng);
            if (x > y) std::swap(x, y);
            if (x > 0.0) monotone = monotone && psi(x, vartheta) <= psi(y, vartheta);
        }
    }
    out.detail << pairs << " (vartheta, theta) pairs x n = 1..500, violations " << violations
               << ", max |psi(vartheta) - 1| " << worst_psi_one << ", max solve residual "
               << worst_residual;
    out.require(pairs >= 100, "grid too small");
    out.require(violations == 0, "Chernoff bound violated");
    out.require(worst_psi_one <= 1e-12, "psi(vartheta) != 1");
    out.require(monotone, "psi not monotone");
    out.require(worst_residual <= 1e-12, "solve_theta residual");
}

void llt_limit(Outcome& out) {
    for (const auto* pmf : {&coin, &three}) {
        const auto stats = validate(*pmf);
        const std::int64_t n = 10000;
        const auto d = convolve_n(*pmf, n);
        for (double kappa : {0.0, 1.0}) {
            const auto seq = kappa_sequence(*pmf, stats, kappa);
            const double scaled = std::sqrt(static_cast<double>(n)) * prob_at(d, seq.value(n));
            const double limit = asllt_limit(stats, pmf->span(), kappa);
            const double rel = std::abs(scaled - limit) / limit;
            out.detail << "[law sigma2=" << stats.sigma2 << " kappa=" << kappa << ": rel err " << rel << "] ";
            out.require(rel <= 0.01, "sqrt(n) P{S_n = kappa_n} off by more than 1%");
        }
        const std::int64_t ns[] = {100, 1000, 10000};
        const auto curve = llt_error(*pmf, ns);
        out.detail << "[delta " << curve.points[0].delta << " > " << curve.points[1].delta << " > "
                   << curve.points[2].delta << "] ";
        out.require(curve.points[1].delta < curve.points[0].delta &&
                        curve.points[2].delta < curve.points[1].delta,
                    "delta_n not decreasing across decades");
    }
}

void correlation_identity(Outcome& out) {
    double worst = 0.0;
    std::size_t cases = 0;
    const auto suite = small_suite();
    for (const auto& pmf : suite) {
        const auto stats = validate(pmf);
        for (double kappa : {-1.0, 0.0, 0.5, 1.0}) {
            const auto seq = kappa_sequence(pmf, stats, kappa);
            for (int n = 1; n <= 6; ++n) {
                const auto law_n = oracle::sum_law(pmf, n);
                const auto tables = n > 1 ? oracle::joint_tables(pmf, n)
                                          : std::vector<std::map<std::pair<std::int64_t, std::int64_t>, double>>{};
                for (int m = 1; m <= n; ++m) {
                    const auto jn = seq.offset(n);
                    const auto jm = seq.offset(m);
                    const double pn = lookup(law_n, jn);
                    const double pm = lookup(oracle::sum_law(pmf, m), jm);
                    double both = 0.0;
                    if (m == n) {
                        both = pn;
                    } else if (const auto it = tables[m].find({jn, jm}); it != tables[m].end()) {
                        both = it->second;
                    }
                    const double brute = std::sqrt(static_cast<double>(n) * m) * (both - pn * pm);
                    worst = std::max(worst, std::abs(exact_cov(pmf, seq, n, m) - brute));
                    ++cases;
                }
            }
        }
    }
    out.detail << cases << " (law, kappa, n, m) cases, max |exact_cov - definition| " << worst;
    out.require(worst <= 1e-12, "identity mismatch");
}

void bound_stability(Outcome& out) {
    for (const auto* pmf : {&coin, &three}) {
        const auto seq = kappa_sequence(*pmf, validate(*pmf), 0.0);
        const auto half = bound_scan(*pmf, seq, dyadic_grid(64, 2048), 0.5);
        const auto full = bound_scan(*pmf, seq, dyadic_grid(64, 4096), 0.5);
        const bool finite = std::isfinite(full.c_hat) && std::isfinite(full.cc_hat);
        out.detail << "[sigma2=" << validate(*pmf).sigma2 << ": C_hat " << half.c_hat << " -> "
                   << full.c_hat << ", C_c_hat " << half.cc_hat << " -> " << full.cc_hat << "] ";
        out.require(finite, "non-finite constant");
        out.require(full.c_hat <= 1.05 * half.c_hat, "C_hat grew by more than 5%");
        out.require(full.cc_hat <= 1.05 * half.cc_hat, "C_c_hat grew by more than 5%");
    }
}

void almost_sure_llt(Outcome& out) {
    const auto stats = validate(coin);
    const auto seq = kappa_sequence(coin, stats, 0.0);
    const std::int64_t cps[] = {1000, 10000, 100000};
    const auto e = run_ensemble(coin, seq, 100000, cps, 20, 7, 4);
    const auto& at3 = e.checkpoints[0];
    const auto& at4 = e.checkpoints[1];
    const auto& at5 = e.checkpoints[2];
    const double target = 0.797885;
    const double rel = std::abs(at5.mean - target) / target;
    const double exact4 = expected_average(coin, seq, 10000);
    const double se4 = at4.sd / std::sqrt(20.0);
    out.detail << "mean A_1e5 " << at5.mean << " (rel err " << rel << "), sd 1e3 " << at3.sd
               << " vs 1e5 " << at5.sd << ", mean A_1e4 " << at4.mean
               << " vs exact " << exact4 << " (" << std::abs(at4.mean - exact4) / se4 << " SE)";
    out.require(rel <= 0.10, "ensemble mean outside 10%");
    out.require(at5.sd < at3.sd, "spread did not shrink");
    out.require(std::abs(at4.mean - exact4) <= 3.0 * se4, "mean at 1e4 beyond 3 SE of exact");
}

void degenerate(Outcome& out) {
    bool all_zero = true;
    for (const auto* pmf : {&coin, &three}) {
        const auto stats = validate(*pmf);
        const auto seq = off_lattice_sequence(*pmf, stats, 0.0);
        const auto scan = bound_scan(*pmf, seq, dyadic_grid(2, 256), 0.5);
        for (const auto& r : scan.records) all_zero = all_zero && r.exact_cov == 0.0;
        for (std::int64_t n = 1; n <= 40; ++n) {
            for (std::int64_t m = 1; m <= n; ++m) all_zero = all_zero && exact_cov(*pmf, seq, n, m) == 0.0;
        }
        const auto cps = default_checkpoints(100000);
        const auto e = run_ensemble(*pmf, seq, 100000, cps, 4, 11, 4);
        for (const auto& r : e.runs) {
            for (double a : r.averages) all_zero = all_zero && a == 0.0;
        }
        const std::int64_t ecps[] = {10, 100, 1000, 10000};
        for (double v : expected_average_curve(*pmf, seq, ecps)) all_zero = all_zero && v == 0.0;
    }
    out.detail << "off-lattice targets: exact_cov, A_N and E[A_N] all identically zero: "
               << (all_zero ? "yes" : "no");
    out.require(all_zero, "nonzero value for off-lattice targets");
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "convolution and joint law match path enumeration", 10.0, convolution_oracle},
        {2, "Bernoulli-part reconstruction and marginals", 5.0, reconstruction},
        {3, "exact law of W_n + D M_n equals law of S_n", 10.0, decomposition_identity},
        {4, "Chernoff bound, psi identities, solver residual", 30.0, chernoff},
        {5, "local limit value and decreasing sup error", 120.0, llt_limit},
        {6, "covariance identity against definition", 60.0, correlation_identity},
        {7, "correlation bound constants stable under doubling", 300.0, bound_stability},
        {8, "almost-sure local limit ensemble", 120.0, almost_sure_llt},
        {9, "off-lattice targets give identically zero", 60.0, degenerate},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.seconds_limit) out.require(false, "runtime over limit");
        failures += out.pass ? 0 : 1;
        std::printf("[%s] %d. %s (%.2fs / limit %.0fs): %s\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), secs, c.seconds_limit, out.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
