// SPDX-License-Identifier: MIT
#include "pgfclt/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "json.hpp"

#include "pgfclt/errors.hpp"

namespace pgfclt {

namespace {

// CSV field quoting for free-text columns (error messages).
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

const char* kind_name(ConditionReport::Kind kind) {
    switch (kind) {
        case ConditionReport::Kind::large_var:
            return "large_var";
        case ConditionReport::Kind::power_sum:
            return "power_sum";
        case ConditionReport::Kind::region:
            return "region";
    }
    return "unknown";
}

nlohmann::json condition_json(const ConditionReport& rep) {
    nlohmann::json j;
    j["kind"] = kind_name(rep.kind);
    j["input_param"] = rep.input_param;
    j["holds"] = rep.holds;
    nlohmann::json measured;
    for (const auto& [name, value] : rep.measured) measured[name] = value;
    j["measured"] = measured;
    return j;
}

void write_condition_csv(std::ostream& out, const char* prefix,
                         const ConditionReport& rep) {
    out << prefix << ".input_param," << format_double(rep.input_param)
        << "\n";
    out << prefix << ".holds," << bool_text(rep.holds) << "\n";
    for (const auto& [name, value] : rep.measured)
        out << prefix << "." << name << "," << format_double(value) << "\n";
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_roots_csv(std::ostream& out, const RootSet& rs,
                     const RegionReport& region) {
    out << kCsvSchemaLine << "\n";
    out << "re,im,modulus,dist_to_one,in_S,dist_to_S,m2,residual\n";
    for (std::size_t i = 0; i < region.per_root.size(); ++i) {
        const auto& row = region.per_root[i];
        const double residual =
            i < rs.residuals.size() ? rs.residuals[i] : 0.0;
        const std::complex<double> z = row.root;
        out << format_double(z.real()) << "," << format_double(z.imag())
            << "," << format_double(std::abs(z)) << ","
            << format_double(std::abs(1.0 - z)) << "," << bool_text(row.in_S)
            << "," << format_double(row.dist_to_S) << ","
            << format_double(row.m2) << "," << format_double(residual)
            << "\n";
    }
}

void write_family_csv(std::ostream& out,
                      const std::vector<SweepRecord>& rows) {
    out << kCsvSchemaLine << "\n";
    out << "n,k_lattice,sigma,min_dist_to_one,Tstar_k,N_delta,"
           "N_delta_over_sigma3,ks_normal,cf_dist,M_3,M_4,error\n";
    for (const SweepRecord& r : rows) {
        out << r.n << "," << r.k_lattice << "," << format_double(r.sigma)
            << "," << format_double(r.min_dist_to_one) << ","
            << format_double(r.Tstar_k) << "," << r.N_delta << ","
            << format_double(r.N_delta_over_sigma3) << ","
            << format_double(r.ks_normal) << "," << format_double(r.cf_dist)
            << "," << format_double(r.M_3) << "," << format_double(r.M_4)
            << "," << csv_quote(r.error) << "\n";
    }
}

void write_analyze_json(std::ostream& out, const AnalyzeReport& report) {
    nlohmann::json j;
    j["mean"] = report.mean;
    j["sigma"] = report.sigma;
    j["support"] = report.support;
    j["tilt_r"] = report.tilt_r;
    j["roots"] = {{"count", report.root_count},
                  {"zero_count", report.zero_root_count},
                  {"max_residual", report.max_residual},
                  {"min_dist_to_one", report.min_dist_to_one}};
    j["T"] = report.T;
    j["S"] = report.S;
    j["R"] = report.R;
    j["kappa"] = {{"root_based", report.kappa_roots},
                  {"coefficient", report.kappa_coeffs},
                  {"max_rel_diff", report.kappa_max_rel_diff}};
    j["region"] = {{"N_delta", report.N_delta}, {"delta", report.delta}};
    j["conditions"] = {{"large_var", condition_json(report.large_var)},
                       {"power_sum", condition_json(report.power_sum)},
                       {"region", condition_json(report.region)}};
    j["ks_normal"] = report.ks_normal;
    j["cf_dist"] = report.cf_dist;
    out << j.dump(2) << "\n";
}

void write_analyze_csv(std::ostream& out, const AnalyzeReport& report) {
    out << kCsvSchemaLine << "\n";
    out << "key,value\n";
    out << "mean," << format_double(report.mean) << "\n";
    out << "sigma," << format_double(report.sigma) << "\n";
    out << "support," << report.support << "\n";
    out << "tilt_r," << format_double(report.tilt_r) << "\n";
    out << "root_count," << report.root_count << "\n";
    out << "zero_root_count," << report.zero_root_count << "\n";
    out << "max_residual," << format_double(report.max_residual) << "\n";
    out << "min_dist_to_one," << format_double(report.min_dist_to_one)
        << "\n";
    for (std::size_t k = 0; k < report.T.size(); ++k)
        out << "T_" << (k + 1) << "," << format_double(report.T[k]) << "\n";
    for (std::size_t k = 0; k < report.S.size(); ++k)
        out << "S_" << (k + 1) << "," << format_double(report.S[k]) << "\n";
    out << "R," << report.R << "\n";
    for (std::size_t m = 0; m < report.kappa_roots.size(); ++m)
        out << "kappa_roots_" << (m + 1) << ","
            << format_double(report.kappa_roots[m]) << "\n";
    for (std::size_t m = 0; m < report.kappa_coeffs.size(); ++m)
        out << "kappa_coeffs_" << (m + 1) << ","
            << format_double(report.kappa_coeffs[m]) << "\n";
    out << "kappa_max_rel_diff," << format_double(report.kappa_max_rel_diff)
        << "\n";
    out << "N_delta," << report.N_delta << "\n";
    out << "delta," << format_double(report.delta) << "\n";
    write_condition_csv(out, "large_var", report.large_var);
    write_condition_csv(out, "power_sum", report.power_sum);
    write_condition_csv(out, "region", report.region);
    out << "ks_normal," << format_double(report.ks_normal) << "\n";
    out << "cf_dist," << format_double(report.cf_dist) << "\n";
}

} // namespace pgfclt
