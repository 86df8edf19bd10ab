#pragma once

// Truncated multivariate power series with coefficients in a scalar ring or in
// polynomials of a formal symbol x, and the k-fold residue that produces Q_k(x).
//
// The residue is taken in the rescaled variables w_i = z_i log q. In those variables
// every log q cancels: zeta_A(1 + z_i + z_j) = u(w_i + w_j) / (w_i + w_j) with
// u(w) = w / (1 - e^{-w}), the X-factor becomes e^{-w_i/2} and q^{(x/2) z} = e^{(x/2) w}.
// After clearing the simple poles against the Vandermonde factor the integrand is
//
//     A(w) prod_{i<=j} u(w_i + w_j) e^{-sum w/2} e^{(x/2) sum w} prod_{i<j} (w_j - w_i)^2 (w_i + w_j)
//     ---------------------------------------------------------------------------------------------
//                                     2^k prod_i w_i^{2k}
//
// so Q_k(x) = (-1)^{k(k-1)/2} / k! times the coefficient of prod_i w_i^{2k-1} in the numerator.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace fflm {

namespace mp = boost::multiprecision;

using Rational = mp::cpp_rational;
/// 30 significant decimal digits; used for the k = 3 expansion.
using Float30 = mp::number<mp::cpp_bin_float<30>, mp::et_off>;

class SeriesError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Polynomial in the formal symbol x; canonical with no trailing zero coefficients.
template <class Scalar>
class XPoly {
  public:
    XPoly() = default;
    XPoly(Scalar c) : c_{std::move(c)} { trim(); }  // NOLINT: scalars embed as constants
    explicit XPoly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

    static XPoly monomial(int degree, Scalar c) {
        std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
        v.back() = std::move(c);
        return XPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Scalar coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : Scalar(0);
    }
    const std::vector<Scalar>& coeffs() const { return c_; }

    Scalar operator()(const Scalar& x) const {
        Scalar acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    XPoly& operator+=(const XPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    XPoly& operator-=(const XPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
    friend XPoly operator*(const XPoly& a, const XPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return XPoly(std::move(v));
    }
    XPoly& operator*=(const XPoly& o) { return *this = *this * o; }

    friend bool operator==(const XPoly& a, const XPoly& b) { return a.c_ == b.c_; }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

/// Exponent layout of a truncated series: k variables, total degree <= total_cap and
/// each exponent <= var_cap. Storage is dense in mixed radix (var_cap + 1).
class SeriesShape {
  public:
    SeriesShape(int vars, int total_cap) : SeriesShape(vars, total_cap, total_cap) {}

    SeriesShape(int vars, int total_cap, int var_cap) : t_(std::make_shared<Tables>()) {
        if (vars < 1 || total_cap < 0 || var_cap < 0) throw SeriesError("invalid series shape");
        var_cap = std::min(var_cap, total_cap);
        t_->vars = vars;
        t_->total_cap = total_cap;
        t_->var_cap = var_cap;
        std::size_t size = 1;
        for (int i = 0; i < vars; ++i) {
            size *= static_cast<std::size_t>(var_cap + 1);
            if (size > (std::size_t{1} << 26)) throw SeriesError("series shape too large");
        }
        t_->exps.resize(size * static_cast<std::size_t>(vars));
        t_->totals.resize(size);
        for (std::size_t idx = 0; idx < size; ++idx) {
            std::size_t rest = idx;
            int total = 0;
            for (int v = 0; v < vars; ++v) {
                const int e = static_cast<int>(rest % static_cast<std::size_t>(var_cap + 1));
                rest /= static_cast<std::size_t>(var_cap + 1);
                t_->exps[idx * static_cast<std::size_t>(vars) + static_cast<std::size_t>(v)] = e;
                total += e;
            }
            t_->totals[idx] = total;
        }
    }

    int vars() const { return t_->vars; }
    int total_cap() const { return t_->total_cap; }
    int var_cap() const { return t_->var_cap; }
    std::size_t size() const { return t_->totals.size(); }

    int exponent(std::size_t idx, int var) const {
        return t_->exps[idx * static_cast<std::size_t>(t_->vars) + static_cast<std::size_t>(var)];
    }
    int total(std::size_t idx) const { return t_->totals[idx]; }
    bool stored(std::size_t idx) const { return t_->totals[idx] <= t_->total_cap; }

    /// Index of an exponent tuple, or size() when it lies outside the caps.
    std::size_t index(const std::vector<int>& e) const {
        if (static_cast<int>(e.size()) != t_->vars) throw SeriesError("exponent tuple has wrong arity");
        std::size_t idx = 0;
        int total = 0;
        for (int v = t_->vars - 1; v >= 0; --v) {
            const int ev = e[static_cast<std::size_t>(v)];
            if (ev < 0) throw SeriesError("negative exponent");
            if (ev > t_->var_cap) return size();
            total += ev;
            idx = idx * static_cast<std::size_t>(t_->var_cap + 1) + static_cast<std::size_t>(ev);
        }
        return total <= t_->total_cap ? idx : size();
    }

    /// True when i + j stays inside the caps; then index(e_i + e_j) = i + j.
    bool sum_fits(std::size_t i, std::size_t j) const {
        if (t_->totals[i] + t_->totals[j] > t_->total_cap) return false;
        const auto* a = &t_->exps[i * static_cast<std::size_t>(t_->vars)];
        const auto* b = &t_->exps[j * static_cast<std::size_t>(t_->vars)];
        for (int v = 0; v < t_->vars; ++v)
            if (a[v] + b[v] > t_->var_cap) return false;
        return true;
    }

    friend bool operator==(const SeriesShape& a, const SeriesShape& b) {
        return a.vars() == b.vars() && a.total_cap() == b.total_cap() && a.var_cap() == b.var_cap();
    }

  private:
    struct Tables {
        int vars = 0;
        int total_cap = 0;
        int var_cap = 0;
        std::vector<int> exps;
        std::vector<int> totals;
    };
    std::shared_ptr<Tables> t_;
};

template <class Coef>
class TruncSeries {
  public:
    explicit TruncSeries(SeriesShape shape) : shape_(std::move(shape)), c_(shape_.size(), Coef(0)) {}

    static TruncSeries constant(SeriesShape shape, Coef c) {
        TruncSeries s(std::move(shape));
        s.c_[0] = std::move(c);
        return s;
    }

    static TruncSeries variable(SeriesShape shape, int var) {
        TruncSeries s(std::move(shape));
        std::vector<int> e(static_cast<std::size_t>(s.shape_.vars()), 0);
        e.at(static_cast<std::size_t>(var)) = 1;
        const auto idx = s.shape_.index(e);
        if (idx < s.c_.size()) s.c_[idx] = Coef(1);
        return s;
    }

    const SeriesShape& shape() const { return shape_; }
    int vars() const { return shape_.vars(); }

    Coef coeff(const std::vector<int>& e) const {
        const auto idx = shape_.index(e);
        return idx < c_.size() ? c_[idx] : Coef(0);
    }
    void set(const std::vector<int>& e, Coef value) {
        const auto idx = shape_.index(e);
        if (idx >= c_.size()) throw SeriesError("exponent tuple exceeds the series caps");
        c_[idx] = std::move(value);
    }
    const Coef& at(std::size_t idx) const { return c_[idx]; }
    Coef& at(std::size_t idx) { return c_[idx]; }
    const Coef& constant_term() const { return c_[0]; }

    TruncSeries& operator+=(const TruncSeries& o) {
        require_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        require_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.require_same(b);
        TruncSeries out(a.shape_);
        const Coef zero(0);
        const std::size_t n = a.c_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!a.shape_.stored(i) || a.c_[i] == zero) continue;
            for (std::size_t j = 0; j + i < n; ++j) {
                if (b.c_[j] == zero || !a.shape_.sum_fits(i, j)) continue;
                out.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return out;
    }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    template <class S>
    TruncSeries scaled(const S& s) const {
        TruncSeries out(*this);
        for (auto& c : out.c_) c = c * s;
        return out;
    }

    /// Copy into another shape, dropping terms outside its caps.
    TruncSeries reshaped(const SeriesShape& target) const {
        if (target.vars() != shape_.vars()) throw SeriesError("reshape needs the same number of variables");
        TruncSeries out(target);
        std::vector<int> e(static_cast<std::size_t>(target.vars()));
        for (std::size_t i = 0; i < target.size(); ++i) {
            if (!target.stored(i)) continue;
            for (int v = 0; v < target.vars(); ++v) e[static_cast<std::size_t>(v)] = target.exponent(i, v);
            out.c_[i] = coeff(e);
        }
        return out;
    }

    void require_same(const TruncSeries& o) const {
        if (!(shape_ == o.shape_)) throw SeriesError("series shapes differ");
    }

  private:
    SeriesShape shape_;
    std::vector<Coef> c_;
};

namespace detail {

template <class Scalar>
Scalar factorial(int n) {
    Scalar f(1);
    for (int i = 2; i <= n; ++i) f *= Scalar(i);
    return f;
}

template <class Scalar>
Scalar int_pow(const Scalar& b, int e) {
    Scalar r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace detail

/// Substitute s = sum_i weights[i] z_i into a univariate series sum c_n s^n.
template <class Scalar>
TruncSeries<Scalar> from_univariate(const SeriesShape& shape, const std::vector<Scalar>& c,
                                    const std::vector<int>& weights) {
    if (static_cast<int>(weights.size()) != shape.vars()) throw SeriesError("weights arity mismatch");
    TruncSeries<Scalar> out(shape);
    for (std::size_t idx = 0; idx < shape.size(); ++idx) {
        if (!shape.stored(idx)) continue;
        const int n = shape.total(idx);
        if (n >= static_cast<int>(c.size())) continue;
        Scalar term = c[static_cast<std::size_t>(n)] * detail::factorial<Scalar>(n);
        bool zero = false;
        for (int v = 0; v < shape.vars(); ++v) {
            const int e = shape.exponent(idx, v);
            if (e == 0) continue;
            const int w = weights[static_cast<std::size_t>(v)];
            if (w == 0) {
                zero = true;
                break;
            }
            term = term * detail::int_pow(Scalar(w), e) / detail::factorial<Scalar>(e);
        }
        if (!zero) out.at(idx) = term;
    }
    return out;
}

/// Univariate coefficients of 1/f for f(0) != 0.
template <class Scalar>
std::vector<Scalar> univariate_inverse(const std::vector<Scalar>& f, int order) {
    if (f.empty() || f[0] == Scalar(0)) throw SeriesError("series inverse needs a nonzero constant term");
    std::vector<Scalar> g(static_cast<std::size_t>(order) + 1, Scalar(0));
    g[0] = Scalar(1) / f[0];
    for (int n = 1; n <= order; ++n) {
        Scalar s(0);
        for (int i = 1; i <= n && i < static_cast<int>(f.size()); ++i)
            s += f[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(n - i)];
        g[static_cast<std::size_t>(n)] = -s / f[0];
    }
    return g;
}

/// Taylor coefficients of w / (1 - e^{-w}) = 1 + w/2 + w^2/12 - w^4/720 + ...
template <class Scalar>
std::vector<Scalar> unit_series_coefficients(int order) {
    // (1 - e^{-w}) / w = sum_n (-1)^n w^n / (n+1)!
    std::vector<Scalar> f(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        Scalar v = Scalar(1) / detail::factorial<Scalar>(n + 1);
        f[static_cast<std::size_t>(n)] = (n % 2 == 0) ? v : Scalar(-v);
    }
    return univariate_inverse(f, order);
}

/// Taylor coefficients of e^{a w}.
template <class Scalar>
std::vector<Scalar> exp_coefficients(const Scalar& a, int order) {
    std::vector<Scalar> c(static_cast<std::size_t>(order) + 1);
    Scalar term(1);
    for (int n = 0; n <= order; ++n) {
        c[static_cast<std::size_t>(n)] = term;
        term = term * a / Scalar(n + 1);
    }
    return c;
}

/// Univariate series of s log q zeta_A(1 + s) = s log q / (1 - q^{-s}) to order N.
template <class Scalar>
TruncSeries<Scalar> zeta_shift_expansion(int order, const Scalar& log_q) {
    const auto unit = unit_series_coefficients<Scalar>(order);
    TruncSeries<Scalar> out{SeriesShape(1, order)};
    Scalar scale(1);
    for (int n = 0; n <= order; ++n) {
        out.at(static_cast<std::size_t>(n)) = unit[static_cast<std::size_t>(n)] * scale;
        scale *= log_q;
    }
    return out;
}

/// exp(scale * x * sum_i z_i) with x symbolic: coefficient of z^e is scale^{|e|} x^{|e|} / prod e_i!.
template <class Scalar>
TruncSeries<XPoly<Scalar>> qx_exponential(const SeriesShape& shape, const Scalar& scale) {
    TruncSeries<XPoly<Scalar>> out(shape);
    for (std::size_t idx = 0; idx < shape.size(); ++idx) {
        if (!shape.stored(idx)) continue;
        Scalar c = detail::int_pow(scale, shape.total(idx));
        for (int v = 0; v < shape.vars(); ++v) c = c / detail::factorial<Scalar>(shape.exponent(idx, v));
        out.at(idx) = XPoly<Scalar>::monomial(shape.total(idx), c);
    }
    return out;
}

/// exp((log q / 2) x sum z_i) in the original z variables.
template <class Scalar>
TruncSeries<XPoly<Scalar>> qx_exponential(int k, int order, const Scalar& log_q) {
    return qx_exponential(SeriesShape(k, order), Scalar(log_q / Scalar(2)));
}

/// Coefficient of z^target in a * b without forming the whole product.
template <class A, class B>
auto coefficient_of_product(const TruncSeries<A>& a, const TruncSeries<B>& b, const std::vector<int>& target) {
    using R = decltype(a.at(0) * b.at(0));
    if (!(a.shape() == b.shape())) throw SeriesError("series shapes differ");
    const auto& shape = a.shape();
    const auto t = shape.index(target);
    if (t >= shape.size()) throw SeriesError("target exponent exceeds the series caps");
    R acc(0);
    std::vector<int> rest(target.size());
    for (std::size_t i = 0; i < shape.size(); ++i) {
        bool inside = true;
        for (int v = 0; v < shape.vars(); ++v) {
            const int r = target[static_cast<std::size_t>(v)] - shape.exponent(i, v);
            if (r < 0) {
                inside = false;
                break;
            }
            rest[static_cast<std::size_t>(v)] = r;
        }
        if (!inside) continue;
        acc += a.at(i) * b.coeff(rest);
    }
    return acc;
}

/// log f for f(0) > 0, as log f(0) + log(1 + y), y = f/f(0) - 1 nilpotent under the caps.
template <class Scalar>
TruncSeries<Scalar> series_log(const TruncSeries<Scalar>& f) {
    using std::log;
    const Scalar f0 = f.constant_term();
    if (!(f0 > Scalar(0))) throw SeriesError("series_log needs a positive constant term");
    TruncSeries<Scalar> y = f.scaled(Scalar(Scalar(1) / f0));
    y.at(0) = Scalar(0);
    return log1p_nilpotent(y) + TruncSeries<Scalar>::constant(f.shape(), log(f0));
}

/// log(1 + y) for y with zero constant term.
template <class Scalar>
TruncSeries<Scalar> log1p_nilpotent(const TruncSeries<Scalar>& y) {
    if (!(y.constant_term() == Scalar(0))) throw SeriesError("log1p_nilpotent needs a zero constant term");
    TruncSeries<Scalar> out(y.shape());
    TruncSeries<Scalar> power = y;
    for (int n = 1; n <= y.shape().total_cap(); ++n) {
        const Scalar c = (n % 2 == 1 ? Scalar(1) : Scalar(-1)) / Scalar(n);
        out += power.scaled(c);
        power = power * y;
    }
    return out;
}

/// exp f = e^{f(0)} exp(f - f(0)).
template <class Scalar>
TruncSeries<Scalar> series_exp(const TruncSeries<Scalar>& f) {
    using std::exp;
    TruncSeries<Scalar> y = f;
    const Scalar f0 = y.constant_term();
    y.at(0) = Scalar(0);
    TruncSeries<Scalar> out = TruncSeries<Scalar>::constant(f.shape(), Scalar(1));
    TruncSeries<Scalar> power = y;
    Scalar fact(1);
    for (int n = 1; n <= f.shape().total_cap(); ++n) {
        fact *= Scalar(n);
        out += power.scaled(Scalar(Scalar(1) / fact));
        power = power * y;
    }
    return out.scaled(Scalar(exp(f0)));
}

/// Engine shape for the k-fold residue: total degree k(2k-1), each exponent <= 2k-1.
inline SeriesShape residue_shape(int k) { return SeriesShape(k, k * (2 * k - 1), 2 * k - 1); }

inline int residue_order(int k) { return k * (2 * k - 1); }

/// Q_k(x) from the arithmetic factor A expanded in the rescaled variables w = z log q.
/// `order` is the caller's series cap; it must reach k(2k-1).
template <class Scalar>
XPoly<Scalar> residue_qk(int k, const TruncSeries<Scalar>& a_series_w, int order) {
    if (k < 1) throw SeriesError("residue_qk needs k >= 1");
    const int needed = residue_order(k);
    if (order < needed)
        throw SeriesError("series order " + std::to_string(order) + " is too small for k=" + std::to_string(k) +
                          "; the residue needs order >= " + std::to_string(needed));
    if (a_series_w.vars() != k) throw SeriesError("A-series must have k variables");
    const SeriesShape shape = residue_shape(k);

    TruncSeries<Scalar> numer = a_series_w.reshaped(shape);

    const auto unit = unit_series_coefficients<Scalar>(needed);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            std::vector<int> w(static_cast<std::size_t>(k), 0);
            w[static_cast<std::size_t>(i)] += 1;
            w[static_cast<std::size_t>(j)] += 1;
            numer *= from_univariate(shape, unit, w);
        }
    }
    numer *= from_univariate(shape, exp_coefficients(Scalar(Scalar(-1) / Scalar(2)), needed),
                             std::vector<int>(static_cast<std::size_t>(k), 1));

    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const auto zi = TruncSeries<Scalar>::variable(shape, i);
            const auto zj = TruncSeries<Scalar>::variable(shape, j);
            const auto diff = zj - zi;
            numer *= diff;
            numer *= diff;
            numer *= zi + zj;
        }
    }

    const auto expo = qx_exponential(shape, Scalar(Scalar(1) / Scalar(2)));
    const std::vector<int> target(static_cast<std::size_t>(k), 2 * k - 1);
    XPoly<Scalar> q = coefficient_of_product(numer, expo, target);

    Scalar pref = Scalar(1) / detail::factorial<Scalar>(k);
    if ((k * (k - 1) / 2) % 2 == 1) pref = -pref;
    return q * XPoly<Scalar>(pref);
}

/// Q_k with A identically 1.
template <class Scalar>
XPoly<Scalar> residue_qk_unit_arithmetic(int k) {
    const SeriesShape shape = residue_shape(k);
    return residue_qk(k, TruncSeries<Scalar>::constant(shape, Scalar(1)), residue_order(k));
}

}  // namespace fflm
