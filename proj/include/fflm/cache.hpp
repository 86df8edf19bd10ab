#pragma once

// L-coefficient cache: newline-delimited JSON, one record per prime, file lfun_q{q}_g{g}.jsonl.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fflm/algebra.hpp"
#include "fflm/ensemble.hpp"
#include "fflm/lfunction.hpp"

namespace fflm {

class CacheError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CacheRecord {
    u32 q = 0;
    int g = 0;
    std::vector<i64> p_coeffs;  // ascending, last = 1
    std::vector<i64> a_coeffs;  // a_0..a_{2g}
    friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

inline std::string cache_file_name(u32 q, int g) {
    return "lfun_q" + std::to_string(q) + "_g" + std::to_string(g) + ".jsonl";
}

/// FFLM_CACHE_DIR, or empty when unset.
inline std::string default_cache_dir() {
    const char* v = std::getenv("FFLM_CACHE_DIR");
    return v ? std::string(v) : std::string();
}

namespace detail {

inline std::string join_ints(const std::vector<i64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::vector<i64> split_ints(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    if (!s.empty() && s.back() == ',') throw std::invalid_argument("trailing comma");
    return out;
}

}  // namespace detail

inline CacheRecord to_record(const LPolynomial& L) {
    CacheRecord r;
    r.q = L.q;
    r.g = L.g;
    for (u32 c : L.p.coeffs()) r.p_coeffs.push_back(c);
    r.a_coeffs = L.a;
    return r;
}

inline std::string serialize_record(const CacheRecord& r) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["g"] = r.g;
    j["p_coeffs"] = detail::join_ints(r.p_coeffs);
    j["a_coeffs"] = detail::join_ints(r.a_coeffs);
    return j.dump();
}

/// Every invariant a record must satisfy; empty string when valid.
inline std::string record_violation(const CacheRecord& r) {
    try {
        check_modulus(r.q);
    } catch (const std::exception& e) {
        return e.what();
    }
    if (r.g < 1) return "genus must be >= 1";
    if (static_cast<int>(r.p_coeffs.size()) != 2 * r.g + 2) return "p_coeffs must have 2g+2 entries";
    for (i64 c : r.p_coeffs)
        if (c < 0 || c >= static_cast<i64>(r.q)) return "p_coeffs entry outside [0, q)";
    if (r.p_coeffs.back() != 1) return "P is not monic";
    std::vector<u32> pc(r.p_coeffs.begin(), r.p_coeffs.end());
    if (!is_irreducible(Poly(r.q, pc))) return "P is not irreducible";
    return lpolynomial_violation(r.q, r.g, r.a_coeffs);
}

inline CacheRecord parse_record(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    if (!j.is_object() || j.size() != 4 || !j.contains("q") || !j.contains("g") || !j.contains("p_coeffs") ||
        !j.contains("a_coeffs"))
        throw std::invalid_argument("record must have exactly the fields q, g, p_coeffs, a_coeffs");
    if (!j["q"].is_number_unsigned() || !j["g"].is_number_integer() || !j["p_coeffs"].is_string() ||
        !j["a_coeffs"].is_string())
        throw std::invalid_argument("record field has the wrong type");
    CacheRecord r;
    r.q = j["q"].get<u32>();
    r.g = j["g"].get<int>();
    r.p_coeffs = detail::split_ints(j["p_coeffs"].get<std::string>());
    r.a_coeffs = detail::split_ints(j["a_coeffs"].get<std::string>());
    return r;
}

inline void write_cache(const std::filesystem::path& path, const std::vector<CacheRecord>& records) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write cache file " + tmp);
        for (const auto& r : records) out << serialize_record(r) << '\n';
        if (!out) throw CacheError("write failed for cache file " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

/// Load and validate; any bad line fails the whole load with all offending line numbers.
inline std::vector<CacheRecord> load_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open cache file " + path.string());
    std::vector<CacheRecord> out;
    std::string line;
    std::string errors;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string why;
        try {
            auto r = parse_record(line);
            why = record_violation(r);
            if (why.empty()) out.push_back(std::move(r));
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (!why.empty()) errors += "\n  line " + std::to_string(lineno) + ": " + why;
    }
    if (!errors.empty()) throw CacheError("invalid cache file " + path.string() + ":" + errors);
    return out;
}

inline LPolynomial from_record(const CacheRecord& r) {
    std::vector<u32> pc(r.p_coeffs.begin(), r.p_coeffs.end());
    return LPolynomial{r.q, r.g, Poly(r.q, pc), r.a_coeffs};
}

/// Ensemble from the cache directory when a file is present, otherwise computed and written
/// there. An empty directory disables caching.
inline Ensemble load_or_compute(u32 q, int g, int workers, bool allow_large, const std::string& cache_dir) {
    check_budget(q, g, allow_large);
    if (cache_dir.empty()) return compute_ensemble(q, g, workers, allow_large);
    const auto path = std::filesystem::path(cache_dir) / cache_file_name(q, g);
    if (std::filesystem::exists(path)) {
        const auto records = load_cache(path);
        Ensemble e;
        e.q = q;
        e.g = g;
        for (const auto& r : records) {
            if (r.q != q || r.g != g) throw CacheError("cache file " + path.string() + " holds a record for another (q, g)");
            e.L.push_back(from_record(r));
        }
        if (e.size() != count_primes(q, 2 * g + 1))
            throw CacheError("cache file " + path.string() + " has " + std::to_string(e.size()) + " records, expected " +
                             std::to_string(count_primes(q, 2 * g + 1)));
        for (std::size_t i = 1; i < e.size(); ++i) {
            const auto& a = e.L[i - 1].p.coeffs();
            const auto& b = e.L[i].p.coeffs();
            if (!std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend()))
                throw CacheError("cache file " + path.string() + " is not in canonical prime order");
        }
        return e;
    }
    auto e = compute_ensemble(q, g, workers, allow_large);
    std::vector<CacheRecord> records;
    records.reserve(e.size());
    for (const auto& L : e.L) records.push_back(to_record(L));
    write_cache(path, records);
    return e;
}

}  // namespace fflm
