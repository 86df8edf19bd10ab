#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "fflm/cache.hpp"
#include "fflm/report.hpp"

using namespace fflm;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("fflm_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}
}  // namespace

TEST(Cache, RoundTrip) {
    const auto dir = scratch("roundtrip");
    const auto e = compute_ensemble(3, 1);
    std::vector<CacheRecord> recs;
    for (const auto& L : e.L) recs.push_back(to_record(L));
    ASSERT_EQ(recs.size(), 8u);
    const auto path = dir / cache_file_name(3, 1);
    EXPECT_EQ(path.filename(), "lfun_q3_g1.jsonl");
    write_cache(path, recs);
    EXPECT_EQ(load_cache(path), recs);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first.rfind("{\"q\":3,\"g\":1,\"p_coeffs\":\"1,2,0,1\",\"a_coeffs\":\"1,", 0), 0u) << first;
}

TEST(Cache, RejectsBrokenRecords) {
    const auto dir = scratch("broken");
    const auto path = dir / "lfun_q3_g1.jsonl";
    {
        std::ofstream out(path);
        out << R"({"q":3,"g":1,"p_coeffs":"1,2,0,1","a_coeffs":"1,3,3"})" << '\n';
        out << R"({"q":3,"g":1,"p_coeffs":"1,2,0,1","a_coeffs":"2,3,6"})" << '\n';
        out << R"({"q":3,"g":1,"p_coeffs":"1,2,0,1","a_coeffs":"1,3,4"})" << '\n';
        out << R"({"q":3,"g":1,"p_coeffs":"1,0,0,1","a_coeffs":"1,0,3"})" << '\n';
        out << "not json\n";
        out << R"({"q":3,"g":1,"p_coeffs":"1,2,0,1","a_coeffs":"1,3,3","extra":1})" << '\n';
    }
    try {
        load_cache(path);
        FAIL();
    } catch (const CacheError& err) {
        const std::string msg = err.what();
        EXPECT_EQ(msg.find("line 1:"), std::string::npos);
        for (int line : {2, 3, 4, 5, 6}) EXPECT_NE(msg.find("line " + std::to_string(line) + ":"), std::string::npos) << msg;
    }
}

TEST(Cache, HitAndRecomputeAgree) {
    const auto dir = scratch("hit");
    const auto fresh = load_or_compute(5, 2, 2, false, dir.string());
    EXPECT_TRUE(fs::exists(dir / "lfun_q5_g2.jsonl"));
    const auto cached = load_or_compute(5, 2, 1, false, dir.string());
    EXPECT_EQ(fresh.L, cached.L);
    EXPECT_EQ(moments_report(moment_sweep(fresh, 2, false)).csv(), moments_report(moment_sweep(cached, 2, false)).csv());
}

TEST(Cache, IncompleteFileRejected) {
    const auto dir = scratch("short");
    const auto e = compute_ensemble(3, 1);
    write_cache(dir / "lfun_q3_g1.jsonl", {to_record(e.L[0])});
    EXPECT_THROW(load_or_compute(3, 1, 1, false, dir.string()), CacheError);
}

TEST(Report, NumberFormat) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666666667");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(json_number(2.0 / 3.0).dump(), "0.666666666666667");
}

TEST(Report, MomentsCsvSchema) {
    const auto csv = moments_report(moment_sweep(compute_ensemble(3, 1), 2, false)).csv();
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "q,g,k,num_primes,empirical,conjecture,ratio");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
        EXPECT_EQ(line.rfind("3,1," + std::to_string(rows) + ",8,", 0), 0u);
    }
    EXPECT_EQ(rows, 2);
}

TEST(Report, QpolyAndEuler) {
    const auto q = qpoly_report(qk_polynomial(1, 3)).csv();
    EXPECT_EQ(q, "c0,c1\n0.5,0.5\n");
    const auto e = euler_report(2, 3, ak_value(2, 3, 20)).csv();
    EXPECT_EQ(e.rfind("k,q,cutoff,value,tail_estimate\n2,3,20,0.666666666", 0), 0u) << e;
}
