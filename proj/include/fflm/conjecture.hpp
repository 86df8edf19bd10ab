#pragma once

// Conjecture-side evaluators: arithmetic factors A_k, the moment polynomials Q_k,
// ratios predictions and one-level density predictions.

#include <cmath>
#include <complex>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/log1p.hpp>

#include "fflm/algebra.hpp"
#include "fflm/series.hpp"
#include "fflm/zeta.hpp"

namespace fflm {

class ConjectureError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int default_cutoff = 30;
inline constexpr int adaptive_cutoff_cap = 4000;

// ---------------------------------------------------------------------------
// Local factors as integer polynomials.
//
// With U_k = |P|^{-1/2-a_k} and V_r = |P|^{-1/2-c_r} the local factor
//   prod_{j<=k}(1-U_jU_k) prod_{r<=s}(1-V_rV_s) / prod_{k,r}(1-U_kV_r)
//     * 1/2 ( prod(1-V)/prod(1-U) + prod(1+V)/prod(1+U) )
// equals Num(U,V) / prod_{k,r}(1-U_kV_r) with
//   Num = prod_{j<k}(1-U_jU_k) prod_{r<=s}(1-V_rV_s) * even part of prod(1+U_k) prod(1-V_r).
// Storing Num - Den as exact integers removes every cancellation between Euler factors.
// A_k is the case without V.

struct LocalPoly {
    int K = 0;
    int Q = 0;
    std::map<std::vector<int>, std::int64_t> excess;  // Num - Den, zero constant term
    std::map<std::vector<int>, std::int64_t> denom;   // prod_{k,r} (1 - U_k V_r)
};

namespace detail {

using Sparse = std::map<std::vector<int>, std::int64_t>;

inline Sparse sparse_mul(const Sparse& a, const Sparse& b) {
    Sparse out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

inline Sparse sparse_one(int n) { return {{std::vector<int>(static_cast<std::size_t>(n), 0), 1}}; }

// 1 + sign * prod of the listed variables
inline Sparse sparse_binomial(int n, std::vector<int> vars, int sign) {
    Sparse s = sparse_one(n);
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    for (int v : vars) e[static_cast<std::size_t>(v)] += 1;
    s[e] += sign;
    return s;
}

}  // namespace detail

inline LocalPoly local_poly(int K, int Q) {
    if (K < 0 || Q < 0 || K + Q < 1 || K + Q > 8) throw ConjectureError("local_poly supports 1 <= K+Q <= 8");
    using namespace detail;
    const int n = K + Q;
    Sparse num = sparse_one(n);
    for (int j = 0; j < K; ++j)
        for (int k = j + 1; k < K; ++k) num = sparse_mul(num, sparse_binomial(n, {j, k}, -1));
    for (int r = 0; r < Q; ++r)
        for (int s = r; s < Q; ++s) num = sparse_mul(num, sparse_binomial(n, {K + r, K + s}, -1));

    Sparse even;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) % 2 != 0) continue;
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        int sign = 1;
        for (int v = 0; v < n; ++v) {
            if (!(mask & (1u << v))) continue;
            e[static_cast<std::size_t>(v)] = 1;
            if (v >= K) sign = -sign;
        }
        even[e] += sign;
    }
    num = sparse_mul(num, even);

    Sparse den = sparse_one(n);
    for (int k = 0; k < K; ++k)
        for (int r = 0; r < Q; ++r) den = sparse_mul(den, sparse_binomial(n, {k, K + r}, -1));

    LocalPoly lp;
    lp.K = K;
    lp.Q = Q;
    lp.excess = num;
    for (const auto& [e, c] : den) lp.excess[e] -= c;
    std::erase_if(lp.excess, [](const auto& kv) { return kv.second == 0; });
    lp.denom = den;
    return lp;
}

namespace detail {

// value of sum_m c_m prod x_i^{m_i} |P|^{-m_i/2} scaled by |P|^{lift}: every monomial is
// exp(-d log q (sum m_i (1/2 + shift_i) - lift)).
inline double eval_local(const std::map<std::vector<int>, std::int64_t>& poly, const std::vector<double>& shifts,
                         double dl, double lift) {
    long double acc = 0;
    for (const auto& [e, c] : poly) {
        double expo = -lift;
        for (std::size_t i = 0; i < e.size(); ++i) expo += e[i] * (0.5 + shifts[i]);
        acc += static_cast<long double>(c) * std::exp(static_cast<long double>(-dl * expo));
    }
    return static_cast<double>(acc);
}

// count_primes(q, d) / q^d without forming q^d
inline double prime_density(u32 q, int d) {
    long double acc = 0;
    const long double lq = std::log(static_cast<long double>(q));
    for (int e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        const int mu = mobius(e);
        if (mu == 0) continue;
        acc += mu * std::exp(lq * (d / e - d));
    }
    return static_cast<double>(acc / d);
}

inline double log1p_ratio(double x) { return x == 0.0 ? 1.0 : std::log1p(x) / x; }

// N_d log(local factor at degree d), computed as density * (q^d x) * log1p(x)/x
inline double euler_log_term(const LocalPoly& lp, u32 q, int d, const std::vector<double>& shifts) {
    const double dl = d * std::log(static_cast<double>(q));
    const double den = eval_local(lp.denom, shifts, dl, 0.0);
    const double lifted = eval_local(lp.excess, shifts, dl, 1.0) / den;
    const double x = eval_local(lp.excess, shifts, dl, 0.0) / den;
    return prime_density(q, d) * lifted * log1p_ratio(x);
}

}  // namespace detail

struct EulerProductValue {
    double value = 1.0;
    double log_value = 0.0;
    int cutoff = 0;
    double tail_estimate = 0.0;
};

/// Local factor of A_k at one prime of degree d, straight from its definition.
inline double ak_local_factor(int k, u32 q, int d, const std::vector<double>& z) {
    check_modulus(q);
    if (static_cast<int>(z.size()) != k) throw ConjectureError("ak_local_factor needs k shifts");
    const double lp = d * std::log(static_cast<double>(q));
    for (double zi : z)
        if (!(0.5 + zi > 0)) throw ConjectureError("ak_local_factor needs 1/2 + z_i > 0");
    double pairs = 1.0;
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) pairs *= 1.0 - std::exp(-lp * (1.0 + z[i] + z[j]));
    double minus = 1.0, plus = 1.0;
    for (int i = 0; i < k; ++i) {
        const double y = std::exp(-lp * (0.5 + z[i]));
        minus /= 1.0 - y;
        plus /= 1.0 + y;
    }
    return pairs * 0.5 * (minus + plus);
}

/// Magnitude of the |P|^{-2} coefficient of the A_k local factor at zero shifts.
inline double ak_tail_constant(int k) {
    const auto lp = local_poly(k, 0);
    std::int64_t c4 = 0;
    for (const auto& [e, c] : lp.excess) {
        int deg = 0;
        for (int v : e) deg += v;
        if (deg == 4) c4 += c;
    }
    return static_cast<double>(c4 < 0 ? -c4 : c4);
}

namespace detail {

inline double ak_log(const LocalPoly& lp, u32 q, int D, const std::vector<double>& z) {
    long double acc = 0;
    for (int d = D; d >= 1; --d) acc += euler_log_term(lp, q, d, z);
    return static_cast<double>(acc);
}

}  // namespace detail

/// A_k(1/2; z) truncated to primes of degree <= D, with a tail estimate from the doubling
/// check plus C_k q^{-D} / (1 - 1/q).
inline EulerProductValue ak_value(int k, u32 q, int D, const std::vector<double>& z = {}) {
    check_modulus(q);
    if (k < 1) throw ConjectureError("ak_value needs k >= 1");
    if (D < 1) throw ConjectureError("Euler product cutoff must be >= 1");
    const std::vector<double> shifts = z.empty() ? std::vector<double>(static_cast<std::size_t>(k), 0.0) : z;
    if (static_cast<int>(shifts.size()) != k) throw ConjectureError("ak_value needs k shifts");
    if (k == 1) return {1.0, 0.0, D, 0.0};
    const auto lp = local_poly(k, 0);
    const double l1 = detail::ak_log(lp, q, D, shifts);
    const double l2 = detail::ak_log(lp, q, 2 * D, shifts);
    EulerProductValue v;
    v.log_value = l1;
    v.value = std::exp(l1);
    v.cutoff = D;
    v.tail_estimate = std::abs(l2 - l1) + ak_tail_constant(k) * std::pow(static_cast<double>(q), -D) / (1.0 - 1.0 / q);
    return v;
}

/// Taylor expansion of A_k(1/2; z_1..z_k) at 0 to total degree `order`, primes of degree <= D.
template <class Scalar>
TruncSeries<Scalar> ak_series(int k, u32 q, int order, int D) {
    check_modulus(q);
    if (k < 1) throw ConjectureError("ak_series needs k >= 1");
    if (order < 1) throw ConjectureError("ak_series needs order >= 1");
    if (D < 1) throw ConjectureError("Euler product cutoff must be >= 1");
    const SeriesShape shape(k, order);
    if (k == 1) return TruncSeries<Scalar>::constant(shape, Scalar(1));

    using std::exp;
    using std::log;
    const auto lp = local_poly(k, 0);
    const Scalar lq = log(Scalar(q));
    TruncSeries<Scalar> total(shape);
    for (int d = D; d >= 1; --d) {
        const Scalar dl = lq * Scalar(d);
        const auto expo = exp_coefficients(Scalar(-dl), order);
        // local - 1 = sum_m c_m |P|^{-|m|/2} exp(-d log q sum_i m_i z_i)
        TruncSeries<Scalar> b(shape);
        for (const auto& [e, c] : lp.excess) {
            int deg = 0;
            for (int v : e) deg += v;
            const Scalar scale = Scalar(static_cast<long long>(c)) * exp(-dl * Scalar(deg) / Scalar(2));
            b += from_univariate(shape, expo, e).scaled(scale);
        }
        Scalar n_d(0);
        for (int f = 1; f <= d; ++f) {
            if (d % f != 0 || mobius(f) == 0) continue;
            n_d += Scalar(mobius(f)) * detail::int_pow(Scalar(q), d / f);
        }
        n_d /= Scalar(d);

        const Scalar b0 = b.constant_term();
        b.at(0) = Scalar(0);
        auto lg = log1p_nilpotent(b.scaled(Scalar(Scalar(1) / (Scalar(1) + b0))));
        lg.at(0) = boost::math::log1p(b0);
        total += lg.scaled(n_d);
    }
    return series_exp(total);
}

/// prod_{i=1}^k i! / (2i)!
inline Rational leading_coefficient(int k) {
    if (k < 1) throw ConjectureError("leading_coefficient needs k >= 1");
    Rational r(1);
    for (int i = 1; i <= k; ++i) r *= Rational(detail::factorial<mp::cpp_int>(i), detail::factorial<mp::cpp_int>(2 * i));
    return r;
}

/// The printed closed forms of the zero-shift local factor for k = 3, 4, 5 at x = |P|.
inline Rational local_factor_closed_form(int k, std::int64_t x) {
    if (x < 3) throw ConjectureError("local_factor_closed_form needs |P| >= 3");
    const Rational X(x);
    auto poly = [&](std::vector<std::int64_t> c) {  // descending coefficients
        Rational acc(0);
        for (auto ci : c) acc = acc * X + Rational(ci);
        return acc;
    };
    auto pw = [&](int n) { return detail::int_pow(X, n); };
    switch (k) {
        case 3: return Rational(1) - poly({6, -8, 3}) / pw(4);
        case 4: return Rational(1) - poly({20, -64, 90, -64, 20, 0, -1}) / pw(8);
        case 5: return Rational(1) - poly({50, -280, 765, -1248, 1260, -720, 105, 160, -126, 40, -5}) / pw(12);
        default: throw ConjectureError("closed forms exist for k = 3, 4, 5 only");
    }
}

struct QPolynomial {
    int k = 0;
    u32 q = 0;
    std::vector<double> coeffs;      // ascending powers of x
    std::vector<Float30> coeffs_hp;  // same, before rounding to double
    int cutoff = 0;
    int order = 0;
    int precision_digits = 0;  // 0 means exact rationals
    bool exact = false;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator()(double x) const {
        double acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

inline constexpr int max_qk = 4;

/// Q_k(x) from the residue engine fed by the A-series. k = 1 is exact.
inline QPolynomial qk_polynomial(int k, u32 q, int D = default_cutoff, int order = -1) {
    check_modulus(q);
    if (k < 1) throw ConjectureError("qk_polynomial needs k >= 1");
    if (k > max_qk)
        throw ConjectureError("qk_polynomial supports k <= " + std::to_string(max_qk) +
                              "; use the leading-order formula for larger k");
    if (order < 0) order = residue_order(k);
    QPolynomial out;
    out.k = k;
    out.q = q;
    out.cutoff = D;
    out.order = order;

    if (k == 1) {
        const auto r = residue_qk(1, TruncSeries<Rational>::constant(residue_shape(1), Rational(1)), order);
        for (const auto& c : r.coeffs()) {
            out.coeffs.push_back(static_cast<double>(c));
            out.coeffs_hp.emplace_back(c);
        }
        out.exact = true;
        return out;
    }
    if (order < residue_order(k))
        throw SeriesError("series order " + std::to_string(order) + " is too small for k=" + std::to_string(k) +
                          "; the residue needs order >= " + std::to_string(residue_order(k)));

    // only total degree k(k+1)/2 of A reaches the residue; the Vandermonde factor supplies the rest
    const int a_order = k * (k + 1) / 2;
    const auto a_z = ak_series<Float30>(k, q, a_order, D);
    const SeriesShape shape = residue_shape(k);
    TruncSeries<Float30> a_w(shape);
    const Float30 lq = log(Float30(q));
    for (std::size_t i = 0; i < shape.size(); ++i) {
        const int tot = shape.total(i);
        if (tot > a_order) continue;
        std::vector<int> e(static_cast<std::size_t>(k));
        for (int v = 0; v < k; ++v) e[static_cast<std::size_t>(v)] = shape.exponent(i, v);
        a_w.at(i) = a_z.coeff(e) / detail::int_pow(lq, tot);
    }
    const auto r = residue_qk(k, a_w, order);
    if (r.degree() != k * (k + 1) / 2) throw SeriesError("residue produced an unexpected degree");
    for (const auto& c : r.coeffs()) {
        out.coeffs.push_back(static_cast<double>(c));
        out.coeffs_hp.push_back(c);
    }
    out.precision_digits = 30;
    return out;
}

/// |P| (log_q |P|)^{k(k+1)/2 - 1} A_k(0) prod i!/(2i)!
inline double moment_leading_asymptotic(int k, u32 q, int g, int D = default_cutoff) {
    const double x = 2.0 * g + 1.0;
    const double P = std::pow(static_cast<double>(q), x);
    return P * std::pow(x, k * (k + 1) / 2 - 1) * ak_value(k, q, D).value * static_cast<double>(leading_coefficient(k));
}

// ---------------------------------------------------------------------------
// Ratios

/// zeta_A(1+2a)/zeta_A(1+a+c) + |P|^{-a} X(1/2+a) zeta_A(1-2a)/zeta_A(1-a+c), per prime.
inline double ratios_rhs_11(double alpha, double gamma, u32 q, int g) {
    check_modulus(q);
    const double P = std::pow(static_cast<double>(q), 2 * g + 1);
    const double first = zeta_A(q, 1.0 + 2 * alpha) * inv_zeta_A(q, 1.0 + alpha + gamma);
    const double second =
        std::pow(P, -alpha) * xfactor(q, 0.5 + alpha) * zeta_A(q, 1.0 - 2 * alpha) * inv_zeta_A(q, 1.0 - alpha + gamma);
    return first + second;
}

inline double ys_factor(u32 q, const std::vector<double>& a, const std::vector<double>& c) {
    double v = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t k = j; k < a.size(); ++k) v *= zeta_A(q, 1.0 + a[j] + a[k]);
    for (std::size_t r = 0; r < c.size(); ++r)
        for (std::size_t s = r; s < c.size(); ++s) v *= zeta_A(q, 1.0 + c[r] + c[s]);
    for (double ak : a)
        for (double cr : c) v *= inv_zeta_A(q, 1.0 + ak + cr);
    return v;
}

/// Arithmetic factor A(a; c) of the ratios recipe. cutoff 0 selects the adaptive cutoff:
/// degrees are added until three consecutive log-terms fall below 1e-18.
inline EulerProductValue ratios_arithmetic_factor(u32 q, const std::vector<double>& a, const std::vector<double>& c,
                                                  int cutoff = 0) {
    check_modulus(q);
    const auto lp = local_poly(static_cast<int>(a.size()), static_cast<int>(c.size()));
    std::vector<double> shifts = a;
    shifts.insert(shifts.end(), c.begin(), c.end());
    for (double s : shifts)
        if (!(0.5 + s > 0)) throw ConjectureError("ratios shifts must satisfy 1/2 + shift > 0");

    std::vector<double> terms;
    auto run = [&](int D) {
        while (static_cast<int>(terms.size()) < D)
            terms.push_back(detail::euler_log_term(lp, q, static_cast<int>(terms.size()) + 1, shifts));
        long double acc = 0;
        for (int d = D; d >= 1; --d) acc += terms[static_cast<std::size_t>(d - 1)];
        return static_cast<double>(acc);
    };

    EulerProductValue v;
    if (cutoff > 0) {
        v.cutoff = cutoff;
        v.log_value = run(cutoff);
        v.tail_estimate = std::abs(run(2 * cutoff) - v.log_value);
    } else {
        int quiet = 0;
        int d = 0;
        while (quiet < 3) {
            if (d >= adaptive_cutoff_cap)
                throw ConjectureError("ratios Euler product did not converge within " +
                                      std::to_string(adaptive_cutoff_cap) + " prime degrees");
            ++d;
            run(d);
            quiet = std::abs(terms.back()) < 1e-18 ? quiet + 1 : 0;
        }
        v.cutoff = d;
        v.log_value = run(d);
        v.tail_estimate = 3e-18;
    }
    v.value = std::exp(v.log_value);
    return v;
}

struct RatiosTerm {
    std::vector<int> eps;
    double value = 0.0;
};

struct RatiosPrediction {
    std::vector<double> alpha;
    std::vector<double> gamma;
    double value = 0.0;
    std::vector<RatiosTerm> terms;
    int cutoff = 0;
};

/// Per-prime ratios prediction
///   sum_eps |P|^{sum (eps_k a_k - a_k)/2} prod X(1/2 + (a_k - eps_k a_k)/2) Y_S(eps a; c) A(eps a; c).
inline RatiosPrediction ratios_general(const std::vector<double>& alpha, const std::vector<double>& gamma, u32 q,
                                       int g, int cutoff = 0) {
    check_modulus(q);
    const int K = static_cast<int>(alpha.size());
    const int Q = static_cast<int>(gamma.size());
    if (K < 1 || K > 3 || Q > 3) throw ConjectureError("ratios_general supports 1 <= K <= 3, Q <= 3");
    const double logP = (2.0 * g + 1.0) * std::log(static_cast<double>(q));
    RatiosPrediction out;
    out.alpha = alpha;
    out.gamma = gamma;
    for (unsigned mask = 0; mask < (1u << K); ++mask) {
        RatiosTerm t;
        std::vector<double> ea(alpha);
        double expo = 0.0;
        double xf = 1.0;
        for (int k = 0; k < K; ++k) {
            const int e = (mask & (1u << k)) ? -1 : 1;
            t.eps.push_back(e);
            ea[static_cast<std::size_t>(k)] = e * alpha[static_cast<std::size_t>(k)];
            expo += 0.5 * (e * alpha[static_cast<std::size_t>(k)] - alpha[static_cast<std::size_t>(k)]);
            xf *= xfactor(q, 0.5 + 0.5 * (alpha[static_cast<std::size_t>(k)] - e * alpha[static_cast<std::size_t>(k)]));
        }
        const auto A = ratios_arithmetic_factor(q, ea, gamma, cutoff);
        out.cutoff = std::max(out.cutoff, A.cutoff);
        t.value = std::exp(expo * logP) * xf * ys_factor(q, ea, gamma) * A.value;
        out.value += t.value;
        out.terms.push_back(std::move(t));
    }
    return out;
}

/// zeta_A'/zeta_A(1+2r) - log q |P|^{-r} X(1/2+r) zeta_A(1-2r), per prime.
inline double dlog_prediction(double r, u32 q, int g) {
    check_modulus(q);
    const double lq = std::log(static_cast<double>(q));
    const double P = std::pow(static_cast<double>(q), 2 * g + 1);
    return zeta_A_dlog(q, 1.0 + 2 * r) - lq * std::pow(P, -r) * xfactor(q, 0.5 + r) * zeta_A(q, 1.0 - 2 * r);
}

// ---------------------------------------------------------------------------
// One-level density

/// Even, 2pi/log q periodic test function f(t) = sum_m c[m] cos(m t log q).
struct CosineTest {
    std::vector<double> c;
    double operator()(double t, u32 q) const {
        const double lq = std::log(static_cast<double>(q));
        double v = 0;
        for (std::size_t m = 0; m < c.size(); ++m) v += c[m] * std::cos(static_cast<double>(m) * lq * t);
        return v;
    }
    /// value at a zero angle theta, where t = -theta / log q
    double at_angle(double theta) const {
        double v = 0;
        for (std::size_t m = 0; m < c.size(); ++m) v += c[m] * std::cos(static_cast<double>(m) * theta);
        return v;
    }
};

/// Per-prime integrand log|P| - X'/X + 2(zeta_A'/zeta_A(1+2it) - log q |P|^{-it} X(1/2+it) zeta_A(1-2it)).
inline double one_level_integrand(double t, u32 q, int g) {
    const double lq = std::log(static_cast<double>(q));
    const cplx w = std::polar(1.0, -2.0 * lq * t);
    if (std::abs(1.0 - w) < 1e-3) {
        // removable singularity: the bracket equals -log q (w + ... + w^g)
        cplx s(0, 0), p(1, 0);
        for (int m = 1; m <= g; ++m) {
            p *= w;
            s += p;
        }
        return (2.0 * g * lq - 2.0 * lq * s).real();
    }
    const cplx it(0, t);
    const double logP = (2.0 * g + 1.0) * lq;
    const cplx bracket = zeta_A_dlog(q, 1.0 + 2.0 * it) -
                         lq * std::exp(-it * logP) * xfactor(q, 0.5 + it) * zeta_A(q, 1.0 - 2.0 * it);
    return (logP - xfactor_dlog(q) + 2.0 * bracket).real();
}

/// (1/2pi) int_{-pi/log q}^{pi/log q} f(t) integrand(t) dt per prime, by midpoint refinement.
inline double one_level_theoretical(const std::function<double(double)>& f, u32 q, int g, double tol = 1e-13) {
    check_modulus(q);
    const double lq = std::log(static_cast<double>(q));
    const double a = -std::numbers::pi / lq;
    const double len = 2.0 * std::numbers::pi / lq;
    auto rule = [&](int n) {
        const double h = len / n;
        long double acc = 0;
        for (int i = 0; i < n; ++i) {
            const double t = a + (i + 0.5) * h;
            acc += f(t) * one_level_integrand(t, q, g);
        }
        return static_cast<double>(acc * h / (2.0 * std::numbers::pi));
    };
    int n = 64;
    double prev = rule(n);
    while (n < (1 << 22)) {
        n *= 2;
        const double cur = rule(n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw QuadratureError("one-level quadrature did not converge; last estimate " + std::to_string(prev) + " with " +
                          std::to_string(n) + " nodes");
}

inline double one_level_theoretical(const CosineTest& f, u32 q, int g, double tol = 1e-13) {
    return one_level_theoretical([&](double t) { return f(t, q); }, q, g, tol);
}

/// 1 - sin(2 pi tau) / (pi tau), as printed.
inline double scaled_kernel(double tau) {
    const double x = std::numbers::pi * tau;
    if (std::abs(x) < 1e-8) return 1.0 - 2.0 * (1.0 - 2.0 * x * x / 3.0);
    return 1.0 - std::sin(2.0 * x) / x;
}

/// 1 - sin(2 pi tau) / (2 pi tau), the symplectic limit.
inline double symplectic_kernel(double tau) {
    const double x = 2.0 * std::numbers::pi * tau;
    if (std::abs(x) < 1e-8) return x * x / 6.0;
    return 1.0 - std::sin(x) / x;
}

/// Exact density at genus g implied by the one-level integrand: 1 - (1/g) sum_{m<=g} cos(2 pi m tau / g).
inline double finite_genus_kernel(double tau, int g) {
    double s = 0;
    for (int m = 1; m <= g; ++m) s += std::cos(2.0 * std::numbers::pi * m * tau / g);
    return 1.0 - s / g;
}

}  // namespace fflm
