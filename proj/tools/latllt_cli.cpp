// latllt command-line front end: one subcommand per library module, each
// emitting CSV (default) or JSON tables headed by the run configuration.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "latllt/latllt.hpp"
#include "report.hpp"

namespace {

using latllt::cli::Cell;
using latllt::cli::Report;
using latllt::cli::Table;

struct CommonOptions {
    std::string pmf_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// Accepts plain integers, "1e9" and "10^9".
std::int64_t parse_count(const std::string& text) {
    const auto bad = [&] {
        return latllt::Error(latllt::ErrorCode::InvalidInput, "cannot read count '" + text + "'");
    };
    double value = 0.0;
    try {
        if (const auto caret = text.find('^'); caret != std::string::npos) {
            value = std::pow(std::stod(text.substr(0, caret)), std::stod(text.substr(caret + 1)));
        } else {
            std::size_t used = 0;
            value = std::stod(text, &used);
            if (used != text.size()) throw bad();
        }
    } catch (const std::logic_error&) {
        throw bad();
    }
    if (!std::isfinite(value) || value != std::floor(value) || value > 9.0e18 || value < -9.0e18) {
        throw bad();
    }
    return static_cast<std::int64_t>(value);
}

std::vector<std::int64_t> parse_count_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(parse_count(item));
    }
    return out;
}

latllt::LatticePmf load_pmf(const CommonOptions& opts) {
    if (opts.pmf_path.empty()) {
        throw latllt::Error(latllt::ErrorCode::InvalidInput, "--pmf FILE is required");
    }
    return latllt::load_pmf_json(opts.pmf_path);
}

Report start_report(const std::string& command, const CommonOptions& opts) {
    Report r;
    r.command = command;
    if (!opts.pmf_path.empty()) r.config.emplace_back("pmf", opts.pmf_path);
    r.config.emplace_back("format", opts.format);
    r.config.emplace_back("seed", opts.seed);
    r.config.emplace_back("threads", static_cast<std::int64_t>(opts.threads));
    return r;
}

void emit(const Report& report, const CommonOptions& opts) {
    std::ofstream file;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path);
        if (!file) {
            throw latllt::Error(latllt::ErrorCode::InvalidInput, "cannot write " + opts.out_path);
        }
    }
    std::ostream& out = opts.out_path.empty() ? std::cout : file;
    if (opts.format == "json") {
        latllt::cli::write_json(out, report);
    } else {
        latllt::cli::write_csv(out, report);
    }
}

// ---- pmf ----------------------------------------------------------------

struct PmfArgs {
    bool normalize = false;
};

Report cmd_pmf(const CommonOptions& opts, const PmfArgs& args) {
    auto pmf = load_pmf(opts);
    auto report = start_report("pmf", opts);
    report.config.emplace_back("normalize", args.normalize);
    if (args.normalize) pmf = latllt::normalize_span(pmf);
    const auto stats = latllt::validate(pmf);

    Table atoms{"atoms", {"offset", "value", "mass"}, {}};
    for (const auto& a : pmf.atoms()) {
        atoms.rows.push_back({a.offset, pmf.value_at(a.offset), a.mass});
    }
    report.tables.push_back(std::move(atoms));
    report.summary = {{"v0", pmf.v0()},
                      {"D", pmf.span()},
                      {"mu", stats.mu},
                      {"sigma2", stats.sigma2},
                      {"vartheta", stats.vartheta},
                      {"basber", stats.basber},
                      {"span", std::string("maximal")}};
    return report;
}

// ---- convolve -----------------------------------------------------------

struct ConvolveArgs {
    std::string n = "1";
    std::optional<double> at;
    std::string strategy = "binary";
    std::string cap = "1e8";
};

Report cmd_convolve(const CommonOptions& opts, const ConvolveArgs& args) {
    const auto pmf = load_pmf(opts);
    const auto n = parse_count(args.n);
    const auto cap = static_cast<std::size_t>(parse_count(args.cap));
    const auto strategy = args.strategy == "direct" ? latllt::ConvolutionStrategy::direct
                                                    : latllt::ConvolutionStrategy::binary_power;
    auto report = start_report("convolve", opts);
    report.config.emplace_back("n", n);
    report.config.emplace_back("strategy", args.strategy);
    report.config.emplace_back("cap", static_cast<std::int64_t>(cap));
    if (args.at) report.config.emplace_back("at", *args.at);

    const auto dist = latllt::convolve_n(pmf, n, strategy, cap);
    if (args.at) {
        report.tables.push_back({"point", {"value", "prob"}, {{*args.at, latllt::prob_at(dist, *args.at)}}});
    } else {
        Table t{"distribution", {"value", "prob"}, {}};
        for (auto j = dist.min_offset(); j <= dist.max_offset(); ++j) {
            t.rows.push_back({dist.value_at(j), dist.at_offset(j)});
        }
        report.tables.push_back(std::move(t));
        report.summary.emplace_back("total_mass", dist.total_mass());
    }
    return report;
}

// ---- bpart --------------------------------------------------------------

struct BpartArgs {
    std::string tau_path;
    std::int64_t sample = 0;
};

latllt::TauSequence load_tau(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw latllt::Error(latllt::ErrorCode::InvalidInput, "cannot open tau file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw latllt::Error(latllt::ErrorCode::InvalidInput, std::string("malformed tau JSON: ") + e.what());
    }
    if (!doc.is_object()) throw latllt::Error(latllt::ErrorCode::InvalidInput, "tau file must be an object");
    std::map<std::int64_t, double> tau;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_number()) {
            throw latllt::Error(latllt::ErrorCode::InvalidInput, "tau for '" + key + "' is not a number");
        }
        tau[parse_count(key)] = value.get<double>();
    }
    return latllt::TauSequence(tau);
}

Report cmd_bpart(const CommonOptions& opts, const BpartArgs& args) {
    const auto pmf = load_pmf(opts);
    auto report = start_report("bpart", opts);
    report.config.emplace_back("tau", args.tau_path.empty() ? std::string("canonical") : args.tau_path);
    report.config.emplace_back("sample", args.sample);

    const auto tau = args.tau_path.empty() ? latllt::canonical_tau(pmf) : load_tau(args.tau_path);
    const auto part = latllt::build_part(pmf, tau);

    Table joint{"joint", {"offset", "value", "eps", "prob"}, {}};
    Table marginal{"marginal", {"offset", "f", "p_v", "p_z"}, {}};
    const auto law = latllt::reconstructed_law(part);
    for (auto k = part.min_offset(); k <= part.max_offset(); ++k) {
        joint.rows.push_back({k, pmf.value_at(k), std::int64_t{1}, part.with_bit(k)});
        joint.rows.push_back({k, pmf.value_at(k), std::int64_t{0}, part.without_bit(k)});
        marginal.rows.push_back({k, pmf.mass(k), part.v_marginal(k), law.mass(k)});
    }
    report.tables.push_back(std::move(joint));
    report.tables.push_back(std::move(marginal));
    report.summary = {{"vartheta", part.vartheta()},
                      {"p_eps1", part.eps_probability()},
                      {"reconstruction_residual", latllt::reconstruction_residual(part)}};
    if (args.sample > 0) {
        const auto s = latllt::sample_decomposition(part, args.sample, opts.seed);
        report.summary.emplace_back("W_n", s.w);
        report.summary.emplace_back("B_n", s.b);
        report.summary.emplace_back("M_n", s.m);
        report.summary.emplace_back("S_n", s.s);
    }
    return report;
}

// ---- chernoff -----------------------------------------------------------

struct ChernoffArgs {
    double vartheta = 0.5;
    std::optional<double> theta;
    std::optional<double> rho;
    std::int64_t n = 10;
    bool all = false;
};

Report cmd_chernoff(const CommonOptions& opts, const ChernoffArgs& args) {
    auto report = start_report("chernoff", opts);
    double theta = 0.0;
    if (args.theta) {
        theta = *args.theta;
    } else {
        const auto params = latllt::chernoff_params(args.vartheta, args.rho);
        theta = params.theta;
        report.summary.emplace_back("rho", params.rho);
    }
    report.config.emplace_back("vartheta", args.vartheta);
    report.config.emplace_back("theta", theta);
    report.config.emplace_back("n", args.n);
    report.config.emplace_back("all", args.all);

    Table t{"chernoff", {"n", "cutoff", "exact", "bound", "holds"}, {}};
    bool all_hold = true;
    for (auto n = args.all ? std::int64_t{1} : args.n; n <= args.n; ++n) {
        const auto c = latllt::verify_chernoff(args.vartheta, theta, n);
        all_hold = all_hold && c.holds;
        t.rows.push_back({n, c.cutoff, c.exact, c.bound, c.holds});
    }
    report.tables.push_back(std::move(t));
    report.summary.emplace_back("theta", theta);
    report.summary.emplace_back("psi", latllt::psi(theta, args.vartheta));
    report.summary.emplace_back("holds", all_hold);
    return report;
}

// ---- llt ----------------------------------------------------------------

struct LltArgs {
    std::string ns = "10,100,1000,10000";
    bool bernoulli = false;
};

Report cmd_llt(const CommonOptions& opts, const LltArgs& args) {
    const auto pmf = load_pmf(opts);
    const auto ns = parse_count_list(args.ns);
    auto report = start_report("llt", opts);
    report.config.emplace_back("ns", args.ns);
    report.config.emplace_back("bernoulli", args.bernoulli);

    const auto stats = latllt::validate(pmf);
    const auto curve = latllt::llt_error(pmf, ns);
    Table t{"llt_error", {"n", "delta", "argmax"}, {}};
    for (const auto& p : curve.points) t.rows.push_back({p.n, p.delta, p.argmax});
    report.tables.push_back(std::move(t));
    if (args.bernoulli) {
        Table b{"bernoulli_llt", {"n", "sup", "n_sup"}, {}};
        for (const auto n : ns) {
            const auto e = latllt::bernoulli_llt_error(n);
            b.rows.push_back({e.n, e.sup, e.scaled});
        }
        report.tables.push_back(std::move(b));
    }
    report.summary = {{"peak", pmf.span() / std::sqrt(2.0 * std::numbers::pi * stats.sigma2)},
                      {"alpha_hat", curve.alpha_hat},
                      {"alpha_stderr", curve.alpha_stderr}};
    return report;
}

// ---- corr ---------------------------------------------------------------

struct CorrArgs {
    double kappa = 0.0;
    std::string grid = "decade";
    std::string n_min = "64";
    std::string n_max;
    double c = 0.5;
    double alpha = 0.5;
    double off_lattice = 0.0;
};

Report cmd_corr(const CommonOptions& opts, const CorrArgs& args) {
    const auto pmf = load_pmf(opts);
    const auto stats = latllt::validate(pmf);
    const bool dyadic = args.grid == "dyadic";
    if (!dyadic && args.grid != "decade") {
        throw latllt::Error(latllt::ErrorCode::InvalidInput, "--grid must be decade or dyadic");
    }
    const auto n_max = parse_count(args.n_max.empty() ? (dyadic ? "4096" : "1000") : args.n_max);
    const auto grid = dyadic ? latllt::dyadic_grid(parse_count(args.n_min), n_max)
                             : latllt::decade_grid(n_max);
    const auto seq = args.off_lattice > 0.0
                         ? latllt::off_lattice_sequence(pmf, stats, args.kappa, args.off_lattice)
                         : latllt::kappa_sequence(pmf, stats, args.kappa);

    auto report = start_report("corr", opts);
    report.config.emplace_back("kappa", args.kappa);
    report.config.emplace_back("grid", args.grid);
    if (dyadic) report.config.emplace_back("n_min", parse_count(args.n_min));
    report.config.emplace_back("n_max", n_max);
    report.config.emplace_back("c", args.c);
    report.config.emplace_back("alpha", args.alpha);
    report.config.emplace_back("off_lattice", args.off_lattice);

    const auto scan = latllt::bound_scan(pmf, seq, grid, args.c, args.alpha);
    Table t{"correlation", {"n", "m", "exact_cov", "thm1_shape", "cor1_shape", "ratio"}, {}};
    for (const auto& r : scan.records) {
        t.rows.push_back({r.n, r.m, r.exact_cov, r.thm1_shape, r.cor1_shape, r.thm1_ratio});
    }
    report.tables.push_back(std::move(t));
    report.summary = {{"C_hat", scan.c_hat}, {"C_c_hat", scan.cc_hat}, {"GW_hat", scan.gw_hat}};
    return report;
}

// ---- asllt --------------------------------------------------------------

struct AslltArgs {
    std::int64_t paths = 20;
    std::string n_max = "100000";
    double kappa = 0.0;
    std::string checkpoints;
    bool expected = false;
};

Report cmd_asllt(const CommonOptions& opts, const AslltArgs& args) {
    const auto pmf = load_pmf(opts);
    const auto stats = latllt::validate(pmf);
    const auto n_max = parse_count(args.n_max);
    const auto checkpoints = args.checkpoints.empty() ? latllt::default_checkpoints(n_max)
                                                      : parse_count_list(args.checkpoints);
    const auto seq = latllt::kappa_sequence(pmf, stats, args.kappa);

    auto report = start_report("asllt", opts);
    report.config.emplace_back("paths", args.paths);
    report.config.emplace_back("n_max", n_max);
    report.config.emplace_back("kappa", args.kappa);
    report.config.emplace_back("expected", args.expected);

    const auto summary =
        latllt::run_ensemble(pmf, seq, n_max, checkpoints, args.paths, opts.seed, opts.threads);
    std::vector<double> expected;
    if (args.expected) expected = latllt::expected_average_curve(pmf, seq, checkpoints);

    Table t{"checkpoints", {"n", "mean", "sd", "min", "max"}, {}};
    if (args.expected) t.columns.emplace_back("expected");
    for (std::size_t i = 0; i < summary.checkpoints.size(); ++i) {
        const auto& c = summary.checkpoints[i];
        std::vector<Cell> row{c.n, c.mean, c.sd, c.min, c.max};
        if (args.expected) row.emplace_back(expected[i]);
        t.rows.push_back(std::move(row));
    }
    report.tables.push_back(std::move(t));
    report.summary = {{"limit", summary.limit}};
    return report;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice-sum laws, Bernoulli-part decomposition, correlation bounds and "
                 "almost-sure local limit experiments"};
    app.require_subcommand(1);

    CommonOptions opts;
    const auto add_common = [&](CLI::App* sub, bool needs_pmf) {
        if (needs_pmf) sub->add_option("--pmf", opts.pmf_path, "PMF JSON file")->required();
        sub->add_option("--out", opts.out_path, "Write output to FILE instead of stdout");
        sub->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", opts.seed, "64-bit RNG seed");
        sub->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    std::function<Report()> run;

    PmfArgs pmf_args;
    auto* pmf = app.add_subcommand("pmf", "Validate a PMF and print its statistics");
    add_common(pmf, true);
    pmf->add_flag("--normalize", pmf_args.normalize, "Rewrite on the maximal lattice first");
    pmf->callback([&] { run = [&] { return cmd_pmf(opts, pmf_args); }; });

    ConvolveArgs conv_args;
    auto* conv = app.add_subcommand("convolve", "Exact law of S_n or a point probability");
    add_common(conv, true);
    conv->add_option("--n", conv_args.n, "Number of summands (accepts 1e6 or 10^6)")->required();
    conv->add_option("--at", conv_args.at, "Report P{S_n = value} only");
    conv->add_option("--strategy", conv_args.strategy, "binary or direct")
        ->check(CLI::IsMember({"binary", "direct"}));
    conv->add_option("--cap", conv_args.cap, "Maximum support entries");
    conv->callback([&] { run = [&] { return cmd_convolve(opts, conv_args); }; });

    BpartArgs bpart_args;
    auto* bpart = app.add_subcommand("bpart", "Bernoulli-part joint law and reconstruction check");
    add_common(bpart, true);
    bpart->add_option("--tau", bpart_args.tau_path, "JSON object {\"<offset>\": tau}; canonical if omitted");
    bpart->add_option("--sample", bpart_args.sample, "Draw one decomposition path of this length");
    bpart->callback([&] { run = [&] { return cmd_bpart(opts, bpart_args); }; });

    ChernoffArgs ch_args;
    auto* ch = app.add_subcommand("chernoff", "Exact binomial tail against psi(theta)^n");
    add_common(ch, false);
    ch->add_option("--vartheta", ch_args.vartheta, "Bernoulli mass in (0, 1)");
    ch->add_option("--theta", ch_args.theta, "Cutoff fraction in (0, vartheta]");
    ch->add_option("--rho", ch_args.rho, "Solve theta from psi(theta) = rho (default 1 - vartheta/2)");
    ch->add_option("--n", ch_args.n, "Number of trials");
    ch->add_flag("--all", ch_args.all, "Emit every n from 1 to --n");
    ch->callback([&] { run = [&] { return cmd_chernoff(opts, ch_args); }; });

    LltArgs llt_args;
    auto* llt = app.add_subcommand("llt", "Sup-norm local limit error curve");
    add_common(llt, true);
    llt->add_option("--ns", llt_args.ns, "Comma-separated increasing n values");
    llt->add_flag("--bernoulli", llt_args.bernoulli, "Also emit the fair-coin discrepancy");
    llt->callback([&] { run = [&] { return cmd_llt(opts, llt_args); }; });

    CorrArgs corr_args;
    auto* corr = app.add_subcommand("corr", "Exact correlations against the bound shapes");
    add_common(corr, true);
    corr->add_option("--kappa", corr_args.kappa, "Limit of (kappa_n - n mu) / sqrt(n)");
    corr->add_option("--grid", corr_args.grid, "decade or dyadic");
    corr->add_option("--nmin", corr_args.n_min, "Smallest n of a dyadic grid");
    corr->add_option("--nmax", corr_args.n_max, "Largest n of the grid");
    corr->add_option("--c", corr_args.c, "Corollary regime m <= c n");
    corr->add_option("--alpha", corr_args.alpha, "Exponent for the comparison bound");
    corr->add_option("--off-lattice", corr_args.off_lattice, "Shift targets by this fraction of D");
    corr->callback([&] { run = [&] { return cmd_corr(opts, corr_args); }; });

    AslltArgs as_args;
    auto* as = app.add_subcommand("asllt", "Monte Carlo log-averaged hit statistic");
    add_common(as, true);
    as->add_option("--paths", as_args.paths, "Independent paths");
    as->add_option("--nmax", as_args.n_max, "Path length");
    as->add_option("--kappa", as_args.kappa, "Limit of (kappa_n - n mu) / sqrt(n)");
    as->add_option("--checkpoints", as_args.checkpoints, "Comma-separated N values");
    as->add_flag("--expected", as_args.expected, "Add the exact mean E[A_N] per checkpoint");
    as->callback([&] { run = [&] { return cmd_asllt(opts, as_args); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        emit(run(), opts);
    } catch (const latllt::Error& e) {
        std::cerr << e.name() << "\n" << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
