// SPDX-License-Identifier: MIT
//
// pgfclt: analyze bounded discrete distributions through the complex roots
// of their probability generating functions.
//
//   pgfclt analyze --pmf dist.json          full single-PMF report
//   pgfclt family  --family scaled-poisson --sweep 1000,10000   sweep CSV
//   pgfclt roots   --pmf dist.json          per-root geometry CSV
//   pgfclt verify  [--suite NAME]           property suites, exit 0 if green
//
// Exit codes: 0 success, 2 invalid input/configuration, 3 numerical
// failure, 4 property-suite failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <pgfclt/pgfclt.hpp>

namespace {

using namespace pgfclt;

constexpr std::uint64_t kDefaultSeed = 12345;

struct Options {
    std::string pmf_file;
    std::string family;
    double p = 0.5;
    std::vector<double> q;
    int m = 0;
    double C = 1.0;
    std::vector<long> sweep;
    double delta = 0.1;
    double eps = 0.25;
    int k = 2;
    int max_cumulant = 6;
    double theta_max = 3.0;
    int grid = 61;
    double tol = 1e-10;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = kDefaultSeed;
    std::string suite;
};

int threads_from_env() {
    const char* s = std::getenv("PGF_CLT_THREADS");
    if (s == nullptr) return 0;
    return std::max(1, std::atoi(s));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ParseError("cannot open output file: " + out_path);
    f << text;
}

RootSet solve_roots(const Pmf& pmf, double tol) {
    int zero_roots = 0;
    const Polynomial poly = Polynomial::from_pmf(pmf, &zero_roots);
    RootSet rs = find_roots(poly, tol);
    rs.zero_root_count += zero_roots;
    return rs;
}

std::pair<double, double> annulus_bounds(const RootSet& rs) {
    double alpha = std::numeric_limits<double>::infinity();
    double beta = 0.0;
    for (const auto& z : rs.roots) {
        const double m = std::abs(z);
        if (m > 1.0)
            alpha = std::min(alpha, m);
        else
            beta = std::max(beta, m);
    }
    return {alpha, beta};
}

int profile_truncation(double alpha, double beta) {
    const double alpha_eff = beta > 0.0 ? std::min(alpha, 1.0 / beta) : alpha;
    return default_profile_truncation(alpha_eff);
}

FamilySpec make_family_spec(const Options& o) {
    FamilySpec spec;
    if (o.family == "binomial") {
        spec.kind = FamilySpec::Kind::binomial;
        spec.p = o.p;
    } else if (o.family == "bernoulli") {
        spec.kind = FamilySpec::Kind::bernoulli_product;
        if (o.q.empty())
            throw ParseError("family 'bernoulli' needs --q q1,q2,...");
        spec.q = o.q;
    } else if (o.family == "truncated-poisson") {
        spec.kind = FamilySpec::Kind::truncated_poisson;
    } else if (o.family == "scaled-poisson") {
        spec.kind = FamilySpec::Kind::scaled_truncated_poisson;
    } else if (o.family == "eps-scaled") {
        spec.kind = FamilySpec::Kind::epsilon_scaled;
        spec.eps = o.eps;
    } else if (o.family == "boosted") {
        spec.kind = FamilySpec::Kind::boosted;
        spec.C = o.C;
        auto inner = std::make_shared<FamilySpec>();
        inner->kind = FamilySpec::Kind::scaled_truncated_poisson;
        spec.inner = inner;
    } else if (o.family == "custom") {
        spec.kind = FamilySpec::Kind::custom;
        if (o.pmf_file.empty())
            throw ParseError("family 'custom' needs --pmf FILE");
        spec.file = o.pmf_file;
    } else {
        throw ParseError(
            "unknown family '" + o.family +
            "' (expected binomial, bernoulli, truncated-poisson, "
            "scaled-poisson, eps-scaled, boosted, or custom)");
    }
    spec.sweep = o.sweep;
    return spec;
}

// ---------------------------------------------------------------------------

int run_analyze(const Options& o) {
    const Pmf pmf = load_pmf_json_file(o.pmf_file);
    const RootSet rs = solve_roots(pmf, o.tol);

    AnalyzeReport rep;
    const auto [mu, var] = pmf.mean_var();
    rep.mean = mu;
    rep.sigma = std::sqrt(var);
    rep.support = pmf.n();
    rep.root_count = rs.roots.size();
    rep.zero_root_count = rs.zero_root_count;
    for (double r : rs.residuals)
        rep.max_residual = std::max(rep.max_residual, r);
    rep.min_dist_to_one = min_dist_to_one(rs);
    rep.ks_normal = ks_to_normal(pmf);
    rep.cf_dist = cf_distance(pmf, o.theta_max, o.grid);
    rep.large_var = check_large_var(pmf, rs, o.eps);
    rep.power_sum = check_power_sum(rs, o.k);
    rep.region = check_region(rs, rep.sigma, o.delta);
    rep.N_delta = count_near_s(rs, o.delta).N_delta;
    rep.delta = o.delta;

    // Power sums and cumulants need the inside/outside split, which is
    // discontinuous at the unit circle: reweight first when roots sit in
    // the guard band, and record the applied factor. The kappa sections
    // then describe the reweighted distribution.
    Pmf used = pmf;
    RootSet prs = rs;
    const double r = auto_tilt_r(rs);
    if (r != 1.0) {
        used = tilt(pmf, r);
        prs = solve_roots(used, o.tol);
        rep.tilt_r = r;
    }
    const auto [alpha, beta] = annulus_bounds(prs);
    RootProfile prof;
    try {
        prof = root_profile(prs, profile_truncation(alpha, beta));
    } catch (const RootOnUnitCircle& e) {
        throw RootOnUnitCircle(
            std::string(e.what()) + "; suggested reweighting r = " +
            format_double(auto_tilt_r(prs, 0.05)));
    }
    const int kshow = std::min(prof.K, 8);
    for (int j = 0; j < kshow; ++j) {
        rep.T.push_back(prof.T[static_cast<std::size_t>(j)].real());
        rep.S.push_back(prof.S[static_cast<std::size_t>(j)].real());
    }
    rep.R = prof.R;
    rep.kappa_roots =
        cumulants_from_roots(prof, o.max_cumulant, alpha, beta).values;
    rep.kappa_coeffs = cumulants_from_pmf(used, o.max_cumulant).values;
    for (std::size_t i = 0; i < rep.kappa_roots.size(); ++i) {
        const double a = rep.kappa_roots[i];
        const double b = rep.kappa_coeffs[i];
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale > 0.0)
            rep.kappa_max_rel_diff =
                std::max(rep.kappa_max_rel_diff, std::abs(a - b) / scale);
    }

    std::ostringstream os;
    if (o.format == "json")
        write_analyze_json(os, rep);
    else
        write_analyze_csv(os, rep);
    emit(os.str(), o.out);
    return 0;
}

int run_family(const Options& o) {
    const FamilySpec spec = make_family_spec(o);
    SweepParams params;
    params.delta = o.delta;
    params.eps = o.eps;
    params.k = o.k;
    params.max_cumulant = o.max_cumulant;
    params.theta_max = o.theta_max;
    params.grid_points = o.grid;
    params.tol = o.tol;
    params.threads = threads_from_env();
    const std::vector<SweepRecord> rows = family_sweep(spec, params);
    std::ostringstream os;
    write_family_csv(os, rows);
    emit(os.str(), o.out);
    return 0;
}

int run_roots(const Options& o) {
    RootSet rs;
    if (!o.family.empty() && o.family != "custom") {
        if (o.m < 1)
            throw ParseError("roots --family needs --m (member size >= 1)");
        rs = family_roots(make_family_spec(o), o.m, o.tol);
    } else if (!o.pmf_file.empty()) {
        rs = solve_roots(load_pmf_json_file(o.pmf_file), o.tol);
    } else {
        throw ParseError("roots needs --pmf FILE or --family NAME --m N");
    }
    const RegionReport region = count_near_s(rs, o.delta);
    std::ostringstream os;
    write_roots_csv(os, rs, region);
    emit(os.str(), o.out);
    return 0;
}

int run_verify_cmd(const Options& o) {
    const std::vector<SuiteResult> results = run_verify(o.seed, o.suite);
    std::ostringstream os;
    int total_failed = 0;
    for (const SuiteResult& r : results) {
        os << "suite " << r.name << ": passed=" << r.passed
           << " failed=" << r.failed << "\n";
        for (const std::string& f : r.failures) os << "  FAIL " << f << "\n";
        total_failed += r.failed;
    }
    os << (total_failed == 0 ? "verify OK" : "verify FAILED") << " (seed "
       << o.seed << ")\n";
    emit(os.str(), o.out);
    return total_failed == 0 ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pgfclt: distribution analysis through probability generating "
        "function roots"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* cmd) {
        cmd->add_option("--delta", o.delta,
                        "region/census distance parameter");
        cmd->add_option("--eps", o.eps, "large-variance exponent");
        cmd->add_option("--k", o.k, "reciprocal-modulus power-sum order");
        cmd->add_option("--max-cumulant", o.max_cumulant,
                        "highest cumulant order");
        cmd->add_option("--theta-max", o.theta_max,
                        "characteristic-function grid endpoint");
        cmd->add_option("--grid", o.grid,
                        "characteristic-function grid points");
        cmd->add_option("--tol", o.tol, "root-finder residual tolerance");
        cmd->add_option("--out", o.out, "output file (default: stdout)");
        cmd->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--seed", o.seed, "seed for sampled instances");
    };

    CLI::App* analyze =
        app.add_subcommand("analyze", "full report for one PMF file");
    analyze->add_option("--pmf", o.pmf_file, "PMF JSON file")->required();
    add_common(analyze);

    CLI::App* family =
        app.add_subcommand("family", "sweep a distribution family");
    family->add_option("--family", o.family, "family name")->required();
    family->add_option("--p", o.p, "binomial success probability");
    family
        ->add_option("--q", o.q,
                     "Bernoulli probabilities (cycled along the sweep)")
        ->delimiter(',');
    family->add_option("--C", o.C, "variance boost factor");
    family->add_option("--pmf", o.pmf_file, "PMF file for family=custom");
    family->add_option("--sweep", o.sweep, "sizes n1,n2,...")
        ->delimiter(',');
    add_common(family);

    CLI::App* roots =
        app.add_subcommand("roots", "per-root geometry CSV");
    roots->add_option("--pmf", o.pmf_file, "PMF JSON file");
    roots->add_option("--family", o.family, "family name");
    roots->add_option("--m", o.m, "family member size");
    roots->add_option("--p", o.p, "binomial success probability");
    roots->add_option("--q", o.q, "Bernoulli probabilities")->delimiter(',');
    roots->add_option("--C", o.C, "variance boost factor");
    add_common(roots);

    CLI::App* verify =
        app.add_subcommand("verify", "run the seeded property suites");
    verify->add_option("--suite", o.suite,
                       "run only this suite (default: all)");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(o);
        if (family->parsed()) return run_family(o);
        if (roots->parsed()) return run_roots(o);
        if (verify->parsed()) return run_verify_cmd(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
