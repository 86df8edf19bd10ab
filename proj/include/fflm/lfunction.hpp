#pragma once

// L(u, chi_P) as an exact integer polynomial of degree 2g, its evaluation, and the
// location of its 2g zeros on |u| = q^{-1/2}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fflm/algebra.hpp"
#include "fflm/characters.hpp"
#include "fflm/zeta.hpp"

namespace fflm {

/// Integer coefficients a_0..a_{2g} of L(u, chi_P) for deg P = 2g + 1.
struct LPolynomial {
    u32 q = 0;
    int g = 0;
    Poly p{3};
    std::vector<i64> a;

    friend bool operator==(const LPolynomial&, const LPolynomial&) = default;
};

/// Reasons an LPolynomial fails its structural invariants; empty when valid.
inline std::string lpolynomial_violation(u32 q, int g, const std::vector<i64>& a) {
    if (g < 1) return "genus must be >= 1";
    if (a.size() != static_cast<std::size_t>(2 * g + 1))
        return "expected " + std::to_string(2 * g + 1) + " coefficients, got " + std::to_string(a.size());
    if (a[0] != 1) return "a_0 must equal 1";
    for (int n = 0; n <= g; ++n) {
        const i64 scale = static_cast<i64>(checked_pow(q, g - n));
        if (a[static_cast<std::size_t>(2 * g - n)] != scale * a[static_cast<std::size_t>(n)])
            return "functional equation a_" + std::to_string(2 * g - n) + " = q^" + std::to_string(g - n) + " a_" +
                   std::to_string(n) + " fails";
    }
    for (int n = 0; n <= 2 * g; ++n) {
        // |a_n| <= binom(2g, n) q^{n/2}, checked in floating point with a unit slack.
        double binom = 1;
        for (int i = 1; i <= n; ++i) binom = binom * (2 * g - n + i) / i;
        const double bound = binom * std::pow(static_cast<double>(q), n / 2.0);
        if (std::abs(static_cast<double>(a[static_cast<std::size_t>(n)])) > bound + 1e-9)
            return "Hasse-Weil bound violated at a_" + std::to_string(n);
    }
    return {};
}

/// Genus of the L-function attached to P; deg P must be odd.
inline int genus_of(const PrimePoly& p) {
    if (p.degree() < 3 || p.degree() % 2 == 0)
        throw AlgebraError("deg P must be odd and at least 3, got " + std::to_string(p.degree()));
    return (p.degree() - 1) / 2;
}

/// a_n = sum over monic f of degree n of chi_P(f).
inline i64 character_sum(const PrimePoly& p, int n) {
    i64 s = 0;
    for (const Poly& f : enumerate_monic(p.modulus(), n)) s += chi_P(p, f).value();
    return s;
}

/// Every coefficient a_0..a_{2g} by direct character sums, no symmetry used.
inline std::vector<i64> l_coefficients_direct(const PrimePoly& p) {
    const int g = genus_of(p);
    std::vector<i64> a;
    for (int n = 0; n <= 2 * g; ++n) a.push_back(character_sum(p, n));
    return a;
}

/// Direct sums for n <= g, then a_{2g-n} = q^{g-n} a_n.
inline LPolynomial l_coefficients(const PrimePoly& p) {
    const int g = genus_of(p);
    const u32 q = p.modulus();
    std::vector<i64> a(static_cast<std::size_t>(2 * g + 1), 0);
    for (int n = 0; n <= g; ++n) a[static_cast<std::size_t>(n)] = character_sum(p, n);
    for (int n = 0; n < g; ++n)
        a[static_cast<std::size_t>(2 * g - n)] = static_cast<i64>(checked_pow(q, g - n)) * a[static_cast<std::size_t>(n)];
    return LPolynomial{q, g, p.poly(), std::move(a)};
}

/// Horner evaluation of sum a_n u^n.
inline cplx l_eval(const LPolynomial& L, cplx u) {
    cplx acc = 0.0;
    for (auto it = L.a.rbegin(); it != L.a.rend(); ++it) acc = acc * u + static_cast<double>(*it);
    return acc;
}

inline double l_eval(const LPolynomial& L, double u) {
    double acc = 0.0;
    for (auto it = L.a.rbegin(); it != L.a.rend(); ++it) acc = acc * u + static_cast<double>(*it);
    return acc;
}

/// d/du of the L-polynomial.
inline cplx l_eval_derivative(const LPolynomial& L, cplx u) {
    cplx acc = 0.0;
    for (int n = static_cast<int>(L.a.size()) - 1; n >= 1; --n)
        acc = acc * u + static_cast<double>(n) * static_cast<double>(L.a[static_cast<std::size_t>(n)]);
    return acc;
}

/// L(s, chi_P) with u = q^{-s}.
inline cplx l_at_s(const LPolynomial& L, cplx s) { return l_eval(L, detail::q_pow(L.q, -s)); }

/// L(1/2 + alpha, chi_P) for real alpha.
inline double l_shifted_central(const LPolynomial& L, double alpha) {
    return l_eval(L, std::pow(static_cast<double>(L.q), -0.5 - alpha));
}

inline double central_value(const LPolynomial& L) { return l_shifted_central(L, 0.0); }

/// L'(s)/L(s) in the s variable: -log q * u L'(u) / L(u).
inline cplx l_dlog_at_s(const LPolynomial& L, cplx s) {
    const cplx u = detail::q_pow(L.q, -s);
    return -std::log(static_cast<double>(L.q)) * u * l_eval_derivative(L, u) / l_eval(L, u);
}

/// Two-sum representation: sum_{deg n <= g} chi(n)|n|^{-s} + X_P(s) sum_{deg n <= g-1} chi(n)|n|^{s-1}.
/// Exact for every s in the function-field setting.
inline cplx l_eval_afe(const LPolynomial& L, cplx s) {
    cplx first = 0.0;
    cplx second = 0.0;
    for (int n = 0; n <= L.g; ++n) {
        const double an = static_cast<double>(L.a[static_cast<std::size_t>(n)]);
        first += an * detail::q_pow(L.q, -static_cast<double>(n) * s);
        if (n <= L.g - 1) second += an * detail::q_pow(L.q, -static_cast<double>(n) * (1.0 - s));
    }
    return first + xfactor_P(L.q, L.g, s) * second;
}

/// Zero angles theta in (-pi, pi], sorted; each zero is u = q^{-1/2} e^{i theta}.
struct ZeroSet {
    std::vector<double> thetas;
};

class ZeroLocationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Lambda(theta) = b_g + 2 sum_{n<g} b_n cos((g-n) theta), b_n = a_n q^{-n/2}; real because
/// the palindromic symmetry makes e^{-i g theta} L(q^{-1/2} e^{i theta}) real.
class RealTrigPoly {
  public:
    explicit RealTrigPoly(const LPolynomial& L) : g_(L.g), b_(static_cast<std::size_t>(L.g) + 1) {
        for (int n = 0; n <= L.g; ++n)
            b_[static_cast<std::size_t>(n)] =
                static_cast<double>(L.a[static_cast<std::size_t>(n)]) * std::pow(static_cast<double>(L.q), -n / 2.0);
    }

    double operator()(double theta) const {
        double s = b_[static_cast<std::size_t>(g_)];
        for (int n = 0; n < g_; ++n) s += 2.0 * b_[static_cast<std::size_t>(n)] * std::cos((g_ - n) * theta);
        return s;
    }

  private:
    int g_;
    std::vector<double> b_;
};

inline constexpr double zero_tolerance = 1e-10;
inline constexpr int bisection_steps = 60;
inline constexpr int panels_per_genus = 4096;

inline double bisect(const RealTrigPoly& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < bisection_steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimisation of sign * f on [lo, hi].
inline std::pair<double, double> golden_min(const RealTrigPoly& f, double sign, double lo, double hi) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - r * (hi - lo);
    double d = lo + r * (hi - lo);
    double fc = sign * f(c);
    double fd = sign * f(d);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = sign * f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = sign * f(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, sign * f(x)};
}

}  // namespace detail

/// All 2g zeros, found on the theta-line by a sign-change scan of [0, pi] with bisection,
/// mirrored by theta -> -theta. Touching zeros (local minima of |Lambda| below 1e-10)
/// are counted twice.
inline ZeroSet zeros(const LPolynomial& L) {
    using std::numbers::pi;
    const detail::RealTrigPoly f(L);
    const int panels = detail::panels_per_genus * L.g / 2;  // [0, pi] is half the circle
    const double h = pi / panels;

    std::vector<double> grid(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) grid[static_cast<std::size_t>(i)] = f(i * h);

    std::vector<double> interior;  // roots in (0, pi), each representing a +-theta pair
    int endpoint_zero = 0;         // roots at 0 and pi, with even multiplicity
    int endpoint_pi = 0;
    if (std::abs(grid.front()) < detail::zero_tolerance) endpoint_zero = 2;
    if (std::abs(grid.back()) < detail::zero_tolerance) endpoint_pi = 2;

    auto is_zero_at = [&](int i) { return std::abs(grid[static_cast<std::size_t>(i)]) < detail::zero_tolerance; };

    for (int i = 0; i < panels; ++i) {
        const double a = grid[static_cast<std::size_t>(i)];
        const double b = grid[static_cast<std::size_t>(i + 1)];
        if (is_zero_at(i) || is_zero_at(i + 1)) continue;
        if ((a < 0) != (b < 0)) interior.push_back(detail::bisect(f, i * h, (i + 1) * h));
    }
    // Grid points that are themselves zeros (interior).
    for (int i = 1; i < panels; ++i) {
        if (!is_zero_at(i)) continue;
        const double left = grid[static_cast<std::size_t>(i - 1)];
        const double right = grid[static_cast<std::size_t>(i + 1)];
        interior.push_back(i * h);
        if ((left < 0) == (right < 0)) interior.push_back(i * h);  // touching zero
    }

    auto found = [&] { return 2 * static_cast<int>(interior.size()) + endpoint_zero + endpoint_pi; };

    if (found() < 2 * L.g) {
        // Look for touching zeros or close pairs hidden inside a single panel.
        for (int i = 1; i < panels && found() < 2 * L.g; ++i) {
            const double m = grid[static_cast<std::size_t>(i)];
            const double l = grid[static_cast<std::size_t>(i - 1)];
            const double r = grid[static_cast<std::size_t>(i + 1)];
            if (is_zero_at(i) || (l < 0) != (m < 0) || (m < 0) != (r < 0)) continue;
            if (std::abs(m) > std::abs(l) || std::abs(m) > std::abs(r)) continue;
            const double sign = m < 0 ? -1.0 : 1.0;
            auto [x, v] = detail::golden_min(f, sign, (i - 1) * h, (i + 1) * h);
            if (v < -detail::zero_tolerance) {
                interior.push_back(detail::bisect(f, (i - 1) * h, x));
                interior.push_back(detail::bisect(f, x, (i + 1) * h));
            } else if (v < detail::zero_tolerance) {
                interior.push_back(x);
                interior.push_back(x);
            }
        }
    }

    if (found() != 2 * L.g) {
        std::ostringstream os;
        os << "zero-location failure for P = " << L.p.to_string() << " (q=" << L.q << ", g=" << L.g << "): found "
           << found() << " zeros, expected " << 2 * L.g << "; a = [";
        for (std::size_t i = 0; i < L.a.size(); ++i) os << (i ? "," : "") << L.a[i];
        os << "]";
        throw ZeroLocationError(os.str());
    }

    ZeroSet z;
    for (double t : interior) {
        z.thetas.push_back(t);
        z.thetas.push_back(-t);
    }
    for (int i = 0; i < endpoint_zero; ++i) z.thetas.push_back(0.0);
    for (int i = 0; i < endpoint_pi; ++i) z.thetas.push_back(pi);
    std::sort(z.thetas.begin(), z.thetas.end());

    for (double t : z.thetas) {
        if (std::abs(f(t)) >= detail::zero_tolerance)
            throw ZeroLocationError("zero at theta=" + std::to_string(t) + " fails |Lambda| < 1e-10 for P = " +
                                    L.p.to_string());
    }
    return z;
}

/// The complex zero u = q^{-1/2} e^{i theta}.
inline cplx zero_point(u32 q, double theta) { return std::polar(1.0 / std::sqrt(static_cast<double>(q)), theta); }

/// Newton refinement of a root of the L-polynomial in the complex u-plane.
inline cplx polish_root(const LPolynomial& L, cplx u, int steps = 50) {
    for (int i = 0; i < steps; ++i) {
        const cplx d = l_eval_derivative(L, u);
        if (std::abs(d) == 0.0) break;
        const cplx step = l_eval(L, u) / d;
        u -= step;
        if (std::abs(step) < 1e-17) break;
    }
    return u;
}

/// tau = t (2g log q)/(2 pi) with t = -theta / log q, i.e. tau = -theta g / pi.
inline std::vector<double> scaled_ordinates(const ZeroSet& z, u32 q, int g) {
    const double log_q = std::log(static_cast<double>(q));
    std::vector<double> tau;
    tau.reserve(z.thetas.size());
    for (double theta : z.thetas) {
        const double t = -theta / log_q;
        tau.push_back(t * (2.0 * g * log_q) / (2.0 * std::numbers::pi));
    }
    return tau;
}

}  // namespace fflm
