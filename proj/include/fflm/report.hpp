#pragma once

// Report tables rendered as CSV or JSON, plus the provenance sidecar.
// Numbers carry 15 significant digits; integers are written as integers.

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fflm/conjecture.hpp"
#include "fflm/ensemble.hpp"

namespace fflm {

inline constexpr const char* version_string = "fflm-1.0.0";

using Json = nlohmann::ordered_json;

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// A double rounded to 15 significant digits, as stored in JSON output.
inline Json json_number(double v) {
    if (!std::isfinite(v)) return format_number(v);
    return std::stod(format_number(v));
}

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    Json summary = Json::object();
    Json meta = Json::object();

    std::string csv() const {
        std::string s;
        for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
        s += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) s += ',';
                const auto& c = row[i];
                if (c.is_string()) s += c.get<std::string>();
                else if (c.is_number_float()) s += format_number(c.get<double>());
                else s += c.dump();
            }
            s += '\n';
        }
        return s;
    }

    std::string json() const {
        Json j;
        j["columns"] = columns;
        Json rs = Json::array();
        for (const auto& row : rows) {
            Json o;
            for (std::size_t i = 0; i < row.size(); ++i) o[columns[i]] = row[i];
            rs.push_back(o);
        }
        j["rows"] = rs;
        j["summary"] = summary;
        return j.dump(2) + "\n";
    }

    std::string render(const std::string& format) const { return format == "json" ? json() : csv(); }

    /// Sidecar: provenance plus summary; no timestamps or worker counts.
    std::string sidecar() const {
        Json j = meta;
        j["version"] = version_string;
        j["summary"] = summary;
        return j.dump(2) + "\n";
    }
};

inline Report moments_report(const MomentReport& m) {
    Report r;
    r.columns = {"q", "g", "k", "num_primes", "empirical", "conjecture", "ratio"};
    Json sources = Json::array();
    for (const auto& row : m.rows) {
        r.rows.push_back({m.q, m.g, row.k, m.num_primes, json_number(row.empirical), json_number(row.conjecture),
                          json_number(row.ratio)});
        sources.push_back({{"k", row.k},
                           {"source", row.source},
                           {"cutoff", row.cutoff},
                           {"order", row.order},
                           {"precision_digits", row.precision_digits}});
    }
    r.summary["weighted"] = m.weighted;
    r.summary["conjecture_terms"] = sources;
    r.meta["command"] = "moments";
    return r;
}

inline Report density_report(const DensityReport& d) {
    Report r;
    r.columns = {"tau_lo", "tau_hi", "empirical_density", "kernel_paper", "kernel_symplectic"};
    for (const auto& b : d.bins)
        r.rows.push_back({json_number(b.lo), json_number(b.hi), json_number(b.density), json_number(b.kernel_paper),
                          json_number(b.kernel_symplectic)});
    r.summary["q"] = d.q;
    r.summary["g"] = d.g;
    r.summary["num_primes"] = d.num_primes;
    r.summary["total_zeros"] = d.total_zeros;
    r.summary["l2_distance_paper"] = json_number(d.dist_paper);
    r.summary["l2_distance_symplectic"] = json_number(d.dist_symplectic);
    r.summary["better_kernel"] = d.better;
    r.summary["kernel_values"] = "bin averages";
    r.meta["command"] = "density";
    return r;
}

inline Report ratios_report(u32 q, int g, const std::vector<RatioRow>& rows) {
    Report r;
    r.columns = {"alpha", "gamma", "q", "g", "empirical", "predicted", "ratio", "skipped_primes"};
    Json cut = Json::array();
    for (const auto& row : rows) {
        r.rows.push_back({json_number(row.alpha), json_number(row.gamma), q, g, json_number(row.empirical),
                          json_number(row.predicted), json_number(row.ratio), row.skipped});
        cut.push_back(row.cutoff);
    }
    r.summary["euler_cutoffs"] = cut;
    r.summary["degeneracy_floor"] = json_number(degeneracy_floor);
    r.summary["even_sum_bracket"] = "without trailing -1";
    r.meta["command"] = "ratios";
    return r;
}

inline Report qpoly_report(const QPolynomial& Q) {
    Report r;
    std::vector<Json> row;
    for (int i = 0; i <= Q.degree(); ++i) {
        r.columns.push_back("c" + std::to_string(i));
        row.push_back(json_number(Q.coeffs[static_cast<std::size_t>(i)]));
    }
    r.rows.push_back(row);
    r.summary["k"] = Q.k;
    r.summary["q"] = Q.q;
    r.summary["exact"] = Q.exact;
    r.meta["command"] = "qpoly";
    r.meta["cutoff"] = Q.cutoff;
    r.meta["order"] = Q.order;
    r.meta["precision_digits"] = Q.precision_digits;
    return r;
}

inline Report euler_report(int k, u32 q, const EulerProductValue& v) {
    Report r;
    r.columns = {"k", "q", "cutoff", "value", "tail_estimate"};
    r.rows.push_back({k, q, v.cutoff, json_number(v.value), json_number(v.tail_estimate)});
    r.meta["command"] = "euler";
    r.meta["cutoff"] = v.cutoff;
    return r;
}

inline Report primes_report(u32 q, int degree, const std::vector<PrimePoly>& primes) {
    Report r;
    r.columns = {"index", "p_coeffs"};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::string s;
        for (std::size_t j = 0; j < primes[i].poly().coeffs().size(); ++j)
            s += (j ? ";" : "") + std::to_string(primes[i].poly().coeffs()[j]);
        r.rows.push_back({i, s});
    }
    r.summary["q"] = q;
    r.summary["degree"] = degree;
    r.summary["count"] = primes.size();
    r.summary["count_formula"] = count_primes(q, degree);
    r.meta["command"] = "primes";
    return r;
}

inline Report lfun_report(const Ensemble& e) {
    Report r;
    r.columns = {"index", "p_coeffs", "a_coeffs", "central_value"};
    for (std::size_t i = 0; i < e.size(); ++i) {
        std::string p, a;
        for (std::size_t j = 0; j < e.L[i].p.coeffs().size(); ++j)
            p += (j ? ";" : "") + std::to_string(e.L[i].p.coeffs()[j]);
        for (std::size_t j = 0; j < e.L[i].a.size(); ++j) a += (j ? ";" : "") + std::to_string(e.L[i].a[j]);
        r.rows.push_back({i, p, a, json_number(central_value(e.L[i]))});
    }
    r.summary["q"] = e.q;
    r.summary["g"] = e.g;
    r.summary["num_primes"] = e.size();
    r.meta["command"] = "lfun";
    return r;
}

}  // namespace fflm
