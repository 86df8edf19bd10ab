#pragma once

// Brute-force sweeps over the prime ensemble P_{2g+1,q}.
//
// Work is split into contiguous index blocks; each block writes into its own slot and the
// reduction walks the slots in canonical order, so results do not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fflm/algebra.hpp"
#include "fflm/characters.hpp"
#include "fflm/conjecture.hpp"
#include "fflm/lfunction.hpp"

namespace fflm {

class EnsembleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr double enumeration_budget = 1e9;

/// Refuse q^{2g+1} > 1e9 unless explicitly allowed.
inline void check_budget(u32 q, int g, bool allow_large) {
    check_modulus(q);
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
    const double size = std::pow(static_cast<double>(q), 2 * g + 1);
    if (size > enumeration_budget && !allow_large)
        throw BudgetError("enumerating q^(2g+1) = " + std::to_string(static_cast<long double>(size)) +
                          " polynomials exceeds the budget of 1e9; pass --allow-large to override");
}

/// Apply fn to 0..n-1 on `workers` threads; results keep index order. Any failure aborts
/// the job and reports how far it got.
template <class T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    if (n == 0) return out;
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::size_t>(n, 256))));
    const std::size_t blocks = std::min<std::size_t>(n, static_cast<std::size_t>(workers) * 16);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<bool> failed{false};
    std::mutex err_mu;
    std::string err;
    std::size_t err_index = n;

    auto work = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks || failed.load()) return;
            const std::size_t lo = b * n / blocks;
            const std::size_t hi = (b + 1) * n / blocks;
            for (std::size_t i = lo; i < hi; ++i) {
                try {
                    out[i] = fn(i);
                    done.fetch_add(1);
                } catch (const std::exception& e) {
                    std::lock_guard lock(err_mu);
                    if (i < err_index) {
                        err_index = i;
                        err = e.what();
                    }
                    failed.store(true);
                    return;
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load())
        throw EnsembleError("job failed at item " + std::to_string(err_index) + " after " +
                            std::to_string(done.load()) + " of " + std::to_string(n) + " items completed: " + err);
    return out;
}

/// All monic irreducibles of degree n in lexicographic order, tested in parallel blocks.
inline std::vector<PrimePoly> enumerate_primes(u32 q, int n, int workers = 1) {
    const u64 total = checked_pow(q, n);
    const std::size_t blocks = static_cast<std::size_t>(std::min<u64>(total, 4096));
    auto found = parallel_map<std::vector<u64>>(blocks, workers, [&](std::size_t b) {
        std::vector<u64> idx;
        const u64 lo = b * total / blocks;
        const u64 hi = (b + 1) * total / blocks;
        for (u64 i = lo; i < hi; ++i)
            if (is_irreducible(monic_from_index(q, n, i))) idx.push_back(i);
        return idx;
    });
    std::vector<PrimePoly> out;
    for (const auto& block : found)
        for (u64 i : block) out.push_back(PrimePoly::assume_certified(monic_from_index(q, n, i)));
    return out;
}

/// The ensemble P_{2g+1,q}.
inline std::vector<PrimePoly> iterate_ensemble(u32 q, int g, int workers = 1, bool allow_large = false) {
    check_budget(q, g, allow_large);
    return enumerate_primes(q, 2 * g + 1, workers);
}

struct Ensemble {
    u32 q = 0;
    int g = 0;
    std::vector<LPolynomial> L;  // canonical prime order
    std::size_t size() const { return L.size(); }
};

/// L-polynomials of the whole ensemble; every one re-checked against the functional equation
/// and the Hasse-Weil bound.
inline Ensemble compute_ensemble(u32 q, int g, int workers = 1, bool allow_large = false) {
    const auto primes = iterate_ensemble(q, g, workers, allow_large);
    Ensemble e;
    e.q = q;
    e.g = g;
    e.L = parallel_map<LPolynomial>(primes.size(), workers, [&](std::size_t i) {
        auto L = l_coefficients(primes[i]);
        const auto bad = lpolynomial_violation(q, g, L.a);
        if (!bad.empty()) throw InternalError("P = " + primes[i].poly().to_string() + ": " + bad);
        return L;
    });
    return e;
}

/// Zero sets of the whole ensemble; a failure names the offending P.
inline std::vector<ZeroSet> ensemble_zeros(const Ensemble& e, int workers = 1) {
    return parallel_map<ZeroSet>(e.size(), workers, [&](std::size_t i) {
        try {
            return zeros(e.L[i]);
        } catch (const ZeroLocationError& err) {
            throw ZeroLocationError(std::string(err.what()) + " (P = " + e.L[i].p.to_string() + ")");
        }
    });
}

// ---------------------------------------------------------------------------
// Moments

struct MomentRow {
    int k = 0;
    double empirical = 0.0;
    double conjecture = 0.0;
    double ratio = 0.0;
    std::string source;  // "residue" or "leading-order"
    int cutoff = 0;
    int order = 0;
    int precision_digits = 0;
};

struct MomentReport {
    u32 q = 0;
    int g = 0;
    std::size_t num_primes = 0;
    bool weighted = false;
    std::vector<MomentRow> rows;
};

/// Empirical sum_P w L(1/2)^k against the conjecture, w = log_q|P| when weighted.
/// Unweighted prediction: #P Q_k(2g+1). Weighted: |P| Q_k(2g+1), which for k = 1 is
/// (1/2)|P|(log_q|P| + 1). For k > max_qk the leading-order formula stands in for Q_k.
inline MomentReport moment_sweep(const Ensemble& e, int k_max, bool weighted, int D = default_cutoff,
                                 int order = -1) {
    if (k_max < 1) throw std::invalid_argument("k must be >= 1");
    MomentReport r;
    r.q = e.q;
    r.g = e.g;
    r.num_primes = e.size();
    r.weighted = weighted;
    const double x = 2.0 * e.g + 1.0;
    const double weight = weighted ? x : 1.0;
    const double P = std::pow(static_cast<double>(e.q), x);

    std::vector<double> central(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) central[i] = central_value(e.L[i]);

    for (int k = 1; k <= k_max; ++k) {
        MomentRow row;
        row.k = k;
        long double acc = 0;
        for (double c : central) acc += weight * std::pow(c, k);
        row.empirical = static_cast<double>(acc);
        if (e.size() == 0) {
            r.rows.push_back(row);
            continue;
        }
        if (k <= max_qk) {
            const auto Q = qk_polynomial(k, e.q, D, order < 0 ? residue_order(k) : order);
            row.conjecture = (weighted ? P : static_cast<double>(e.size())) * Q(x);
            row.source = "residue";
            row.cutoff = Q.cutoff;
            row.order = Q.order;
            row.precision_digits = Q.precision_digits;
        } else {
            row.conjecture = moment_leading_asymptotic(k, e.q, e.g, D) * weight;
            row.source = "leading-order";
            row.cutoff = D;
        }
        row.ratio = row.empirical / row.conjecture;
        r.rows.push_back(row);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Orthogonality

struct OrthogonalityStat {
    std::int64_t sum = 0;
    std::size_t count = 0;
    double average = 0.0;
    double normalized = 0.0;  // |avg| q^{(2g+1)/2} / deg n, 0 for constant n
};

inline OrthogonalityStat orthogonality_stats(const Poly& n, const std::vector<PrimePoly>& primes, int g) {
    if (!n.is_monic()) throw AlgebraError("orthogonality_stats needs monic n");
    OrthogonalityStat s;
    s.count = primes.size();
    for (const auto& p : primes) s.sum += chi_P(p, n).value();
    if (s.count == 0) return s;
    s.average = static_cast<double>(s.sum) / static_cast<double>(s.count);
    if (n.degree() > 0)
        s.normalized = std::abs(s.average) * std::pow(static_cast<double>(n.modulus()), (2 * g + 1) / 2.0) / n.degree();
    return s;
}

// ---------------------------------------------------------------------------
// Ratios and L'/L

inline constexpr double degeneracy_floor = 1e-12;

struct RatioRow {
    double alpha = 0.0;
    double gamma = 0.0;
    double empirical = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    std::size_t skipped = 0;
    int cutoff = 0;
};

/// sum_P L(1/2+a)/L(1/2+c) against #P times the K=Q=1 prediction. Primes whose
/// denominator falls below the degeneracy floor are left out and counted.
inline RatioRow ratio_sweep(const Ensemble& e, double alpha, double gamma) {
    RatioRow r;
    r.alpha = alpha;
    r.gamma = gamma;
    long double acc = 0;
    for (const auto& L : e.L) {
        const double den = l_shifted_central(L, gamma);
        if (std::abs(den) < degeneracy_floor) {
            ++r.skipped;
            continue;
        }
        acc += l_shifted_central(L, alpha) / den;
    }
    r.empirical = static_cast<double>(acc);
    const auto pred = ratios_general({alpha}, {gamma}, e.q, e.g);
    r.cutoff = pred.cutoff;
    r.predicted = pred.value * static_cast<double>(e.size() - r.skipped);
    r.ratio = r.empirical / r.predicted;
    return r;
}

struct DlogRow {
    double r = 0.0;
    double empirical = 0.0;
    double predicted = 0.0;
};

inline DlogRow dlog_sweep(const Ensemble& e, double r) {
    DlogRow row;
    row.r = r;
    long double acc = 0;
    for (const auto& L : e.L) acc += l_dlog_at_s(L, cplx(0.5 + r, 0.0)).real();
    row.empirical = static_cast<double>(acc);
    row.predicted = dlog_prediction(r, e.q, e.g) * static_cast<double>(e.size());
    return row;
}

// ---------------------------------------------------------------------------
// One-level density

/// sum_P sum_zeros f(t) for a cosine test function; t = -theta / log q.
inline double one_level_empirical(const std::vector<ZeroSet>& zs, const CosineTest& f) {
    long double acc = 0;
    for (const auto& z : zs)
        for (double th : z.thetas) acc += f.at_angle(th);
    return static_cast<double>(acc);
}

struct DensityBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    double density = 0.0;
    double kernel_paper = 0.0;       // bin averages
    double kernel_symplectic = 0.0;
    double kernel_finite = 0.0;
};

struct DensityReport {
    u32 q = 0;
    int g = 0;
    std::size_t num_primes = 0;
    std::size_t total_zeros = 0;
    std::vector<DensityBin> bins;
    double dist_paper = 0.0;       // root-mean-square over [-g, g]
    double dist_symplectic = 0.0;
    std::string better;            // "paper" or "symplectic"
};

namespace detail {
inline double bin_average(const std::function<double(double)>& f, double lo, double hi) {
    const int n = 64;  // Simpson
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0 / (hi - lo);
}
}  // namespace detail

/// Histogram of scaled ordinates tau over [-g, g], normalized so the mean density is 1.
inline DensityReport density_histogram(const Ensemble& e, const std::vector<ZeroSet>& zs, int bins) {
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    DensityReport r;
    r.q = e.q;
    r.g = e.g;
    r.num_primes = e.size();
    const double lo = -e.g, hi = e.g;
    const double width = (hi - lo) / bins;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (const auto& z : zs) {
        for (double tau : scaled_ordinates(z, e.q, e.g)) {
            auto b = static_cast<long>(std::floor((tau - lo) / width));
            b = std::clamp<long>(b, 0, bins - 1);
            ++counts[static_cast<std::size_t>(b)];
            ++r.total_zeros;
        }
    }
    double sp = 0, ss = 0;
    for (int b = 0; b < bins; ++b) {
        DensityBin bin;
        bin.lo = lo + b * width;
        bin.hi = b + 1 == bins ? hi : lo + (b + 1) * width;
        bin.count = counts[static_cast<std::size_t>(b)];
        bin.density = e.size() ? static_cast<double>(bin.count) / (static_cast<double>(e.size()) * width) : 0.0;
        bin.kernel_paper = detail::bin_average(scaled_kernel, bin.lo, bin.hi);
        bin.kernel_symplectic = detail::bin_average(symplectic_kernel, bin.lo, bin.hi);
        bin.kernel_finite = detail::bin_average([&](double t) { return finite_genus_kernel(t, e.g); }, bin.lo, bin.hi);
        sp += (bin.density - bin.kernel_paper) * (bin.density - bin.kernel_paper) * width;
        ss += (bin.density - bin.kernel_symplectic) * (bin.density - bin.kernel_symplectic) * width;
        r.bins.push_back(bin);
    }
    r.dist_paper = std::sqrt(sp / (hi - lo));
    r.dist_symplectic = std::sqrt(ss / (hi - lo));
    r.better = r.dist_paper < r.dist_symplectic ? "paper" : "symplectic";
    return r;
}

}  // namespace fflm
