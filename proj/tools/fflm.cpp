// fflm: command-line front end.
// Exit codes: 0 success, 1 usage error, 2 computation or cache error, 3 budget refusal.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fflm/cache.hpp"
#include "fflm/conjecture.hpp"
#include "fflm/ensemble.hpp"
#include "fflm/report.hpp"

using namespace fflm;

namespace {

struct RunConfig {
    unsigned q = 3;
    int g = 1;
    int degree = 0;
    int k = 1;
    bool weighted = false;
    std::vector<double> alpha{0.1};
    std::vector<double> gamma{0.2};
    int cutoff = default_cutoff;
    int order = -1;
    int bins = 0;
    int workers = 1;
    bool allow_large = false;
    std::string format = "csv";
    std::string cache_dir = default_cache_dir();
    std::string output;
};

void warn_q_mod_4(unsigned q) {
    if (q % 4 == 3)
        std::cerr << "warning: q = " << q
                  << " is 3 mod 4; the conjecture normalization assumes q = 1 mod 4, comparisons are indicative only\n";
}

void emit(const RunConfig& cfg, Report r) {
    r.meta["q"] = cfg.q;
    const auto body = r.render(cfg.format);
    if (cfg.output.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + cfg.output);
    out << body;
    std::ofstream side(cfg.output + ".meta.json", std::ios::binary | std::ios::trunc);
    if (!side) throw CacheError("cannot write " + cfg.output + ".meta.json");
    side << r.sidecar();
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "Write the report here (plus a .meta.json sidecar)");
}

void add_ensemble_opts(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--q", cfg.q, "Odd prime field size")->required();
    sub->add_option("--g", cfg.g, "Genus; primes have degree 2g+1")->required()->check(CLI::PositiveNumber);
    sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--cache-dir", cfg.cache_dir, "L-coefficient cache directory (default $FFLM_CACHE_DIR)");
    sub->add_flag("--allow-large", cfg.allow_large, "Allow enumerations beyond 1e9 polynomials");
}

int run(int argc, char** argv) {
    CLI::App app{"Function-field L-function moments laboratory"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* primes = app.add_subcommand("primes", "List monic irreducibles of a degree");
    primes->add_option("--q", cfg.q, "Odd prime field size")->required();
    primes->add_option("--degree", cfg.degree, "Degree")->required()->check(CLI::PositiveNumber);
    primes->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1, 1024));
    primes->add_flag("--allow-large", cfg.allow_large, "Allow enumerations beyond 1e9 polynomials");
    add_common(primes, cfg);

    auto* lfun = app.add_subcommand("lfun", "L-polynomials of the ensemble; fills the cache");
    add_ensemble_opts(lfun, cfg);
    add_common(lfun, cfg);

    auto* moments = app.add_subcommand("moments", "Empirical moments against Q_k");
    add_ensemble_opts(moments, cfg);
    moments->add_option("--k", cfg.k, "Largest moment")->check(CLI::PositiveNumber);
    moments->add_flag("--weighted", cfg.weighted, "Weight each prime by log_q|P|");
    moments->add_option("--cutoff", cfg.cutoff, "Euler product cutoff degree")->check(CLI::PositiveNumber);
    moments->add_option("--order", cfg.order, "Series order for the residue");
    add_common(moments, cfg);

    auto* euler = app.add_subcommand("euler", "Truncated A_k(0) with a tail estimate");
    euler->add_option("--k", cfg.k, "k")->required()->check(CLI::PositiveNumber);
    euler->add_option("--q", cfg.q, "Odd prime field size")->required();
    euler->add_option("--cutoff", cfg.cutoff, "Euler product cutoff degree")->check(CLI::PositiveNumber);
    add_common(euler, cfg);

    auto* qpoly = app.add_subcommand("qpoly", "Coefficients of Q_k(x)");
    qpoly->add_option("--k", cfg.k, "k")->required()->check(CLI::PositiveNumber);
    qpoly->add_option("--q", cfg.q, "Odd prime field size");
    qpoly->add_option("--cutoff", cfg.cutoff, "Euler product cutoff degree")->check(CLI::PositiveNumber);
    qpoly->add_option("--order", cfg.order, "Series order for the residue");
    add_common(qpoly, cfg);

    auto* ratios = app.add_subcommand("ratios", "Ensemble ratios L(1/2+a)/L(1/2+c) against the prediction");
    add_ensemble_opts(ratios, cfg);
    ratios->add_option("--alpha", cfg.alpha, "Numerator shifts")->delimiter(',');
    ratios->add_option("--gamma", cfg.gamma, "Denominator shifts")->delimiter(',');
    add_common(ratios, cfg);

    auto* density = app.add_subcommand("density", "Histogram of scaled zero ordinates against both kernels");
    add_ensemble_opts(density, cfg);
    density->add_option("--bins", cfg.bins, "Number of bins over [-g, g] (default 8g)")->check(CLI::PositiveNumber);
    add_common(density, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*primes) {
            check_modulus(cfg.q);
            const double size = std::pow(static_cast<double>(cfg.q), cfg.degree);
            if (size > enumeration_budget && !cfg.allow_large)
                throw BudgetError("enumerating q^degree polynomials exceeds the budget of 1e9");
            const auto ps = enumerate_primes(cfg.q, cfg.degree, cfg.workers);
            emit(cfg, primes_report(cfg.q, cfg.degree, ps));
        } else if (*lfun) {
            const auto e = load_or_compute(cfg.q, cfg.g, cfg.workers, cfg.allow_large, cfg.cache_dir);
            auto r = lfun_report(e);
            r.meta["g"] = cfg.g;
            emit(cfg, r);
        } else if (*moments) {
            check_modulus(cfg.q);
            warn_q_mod_4(cfg.q);
            const auto e = load_or_compute(cfg.q, cfg.g, cfg.workers, cfg.allow_large, cfg.cache_dir);
            auto r = moments_report(moment_sweep(e, cfg.k, cfg.weighted, cfg.cutoff, cfg.order));
            r.meta["g"] = cfg.g;
            r.meta["k"] = cfg.k;
            r.meta["cutoff"] = cfg.cutoff;
            r.meta["order"] = cfg.order < 0 ? Json("auto") : Json(cfg.order);
            r.meta["precision_digits"] = 30;
            emit(cfg, r);
        } else if (*euler) {
            auto r = euler_report(cfg.k, cfg.q, ak_value(cfg.k, cfg.q, cfg.cutoff));
            r.meta["precision"] = "double";
            emit(cfg, r);
        } else if (*qpoly) {
            emit(cfg, qpoly_report(qk_polynomial(cfg.k, cfg.q, cfg.cutoff, cfg.order)));
        } else if (*ratios) {
            check_modulus(cfg.q);
            warn_q_mod_4(cfg.q);
            const auto e = load_or_compute(cfg.q, cfg.g, cfg.workers, cfg.allow_large, cfg.cache_dir);
            std::vector<RatioRow> rows;
            for (double a : cfg.alpha)
                for (double c : cfg.gamma) rows.push_back(ratio_sweep(e, a, c));
            auto r = ratios_report(cfg.q, cfg.g, rows);
            r.meta["g"] = cfg.g;
            r.meta["cutoff"] = "adaptive";
            r.meta["precision"] = "double";
            emit(cfg, r);
        } else if (*density) {
            check_modulus(cfg.q);
            warn_q_mod_4(cfg.q);
            const auto e = load_or_compute(cfg.q, cfg.g, cfg.workers, cfg.allow_large, cfg.cache_dir);
            const auto zs = ensemble_zeros(e, cfg.workers);
            auto r = density_report(density_histogram(e, zs, cfg.bins > 0 ? cfg.bins : 8 * cfg.g));
            CosineTest one{{1.0}};
            r.summary["s1_constant"] = json_number(one_level_empirical(zs, one));
            r.summary["s1_constant_expected"] = 2 * cfg.g * e.size();
            r.meta["g"] = cfg.g;
            r.meta["bins"] = cfg.bins > 0 ? cfg.bins : 8 * cfg.g;
            emit(cfg, r);
        }
    } catch (const BudgetError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const CacheError& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
