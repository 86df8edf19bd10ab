#pragma once

// Exact arithmetic in F_q and F_q[T] for an odd prime q.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fflm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Thrown when an argument violates an operation's precondition.
class AlgebraError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline bool is_prime_integer(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Field moduli are kept below 2^16 so that every product fits a u32.
inline void check_modulus(u32 q) {
    thread_local u32 last_ok = 0;
    if (q == last_ok) return;
    if (q < 3 || q % 2 == 0 || q > 65521 || !is_prime_integer(q))
        throw AlgebraError("modulus must be an odd prime in [3, 65521], got " + std::to_string(q));
    last_ok = q;
}

inline u32 mod_mul(u32 a, u32 b, u32 q) { return static_cast<u32>((u64{a} * b) % q); }
inline u32 mod_add(u32 a, u32 b, u32 q) { return (a + b) % q; }
inline u32 mod_sub(u32 a, u32 b, u32 q) { return (a + q - b) % q; }

inline u32 mod_pow(u32 base, u64 e, u32 q) {
    u64 result = 1 % q;
    u64 b = base % q;
    while (e > 0) {
        if (e & 1U) result = (result * b) % q;
        b = (b * b) % q;
        e >>= 1U;
    }
    return static_cast<u32>(result);
}

inline u32 mod_inv(u32 a, u32 q) {
    if (a % q == 0) throw AlgebraError("zero has no inverse in F_q");
    return mod_pow(a, q - 2, q);
}

/// An element of the prime field F_q.
class FieldElement {
  public:
    FieldElement(u32 value, u32 q) : value_(value % q), q_(q) {}

    u32 value() const { return value_; }
    u32 modulus() const { return q_; }
    bool is_zero() const { return value_ == 0; }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

  private:
    u32 value_;
    u32 q_;
};

/// Polynomial over F_q in ascending-coefficient form with trailing zeros trimmed.
/// The empty coefficient vector is the zero polynomial.
class Poly {
  public:
    explicit Poly(u32 q) : q_(q) { check_modulus(q); }

    Poly(u32 q, std::vector<u32> coeffs) : q_(q), c_(std::move(coeffs)) {
        check_modulus(q);
        for (auto& v : c_) v %= q_;
        trim();
    }

    /// Signed coefficients are reduced into [0, q).
    static Poly from_signed(u32 q, const std::vector<i64>& coeffs) {
        std::vector<u32> c;
        c.reserve(coeffs.size());
        for (i64 v : coeffs) {
            i64 r = v % static_cast<i64>(q);
            if (r < 0) r += q;
            c.push_back(static_cast<u32>(r));
        }
        return Poly(q, std::move(c));
    }

    static Poly constant(u32 q, u32 c) { return Poly(q, {c}); }
    static Poly one(u32 q) { return Poly(q, {1}); }
    static Poly monomial(u32 q, int degree, u32 c = 1) {
        std::vector<u32> v(static_cast<std::size_t>(degree) + 1, 0);
        v.back() = c;
        return Poly(q, std::move(v));
    }
    /// The generator T.
    static Poly t(u32 q) { return monomial(q, 1); }

    u32 modulus() const { return q_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<u32>& coeffs() const { return c_; }
    u32 coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
    }
    u32 leading() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    FieldElement leading_element() const { return {leading(), q_}; }

    Poly monic() const {
        if (is_zero()) throw AlgebraError("zero polynomial has no monic associate");
        return scaled(mod_inv(leading(), q_));
    }

    Poly scaled(u32 s) const {
        std::vector<u32> v(c_);
        for (auto& x : v) x = mod_mul(x, s, q_);
        return Poly(q_, std::move(v));
    }

    /// Value at a point of F_q.
    u32 eval(u32 x) const {
        u64 acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % q_;
        return static_cast<u32>(acc);
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.require_same(b);
        std::vector<u32> v(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = mod_add(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0, a.q_);
        return Poly(a.q_, std::move(v));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        a.require_same(b);
        std::vector<u32> v(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = mod_sub(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0, a.q_);
        return Poly(a.q_, std::move(v));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.q_);
        std::vector<u64> acc(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                acc[i + j] = (acc[i + j] + u64{a.c_[i]} * b.c_[j]) % a.q_;
        }
        std::vector<u32> v(acc.begin(), acc.end());
        return Poly(a.q_, std::move(v));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            u32 c = coeff(i);
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (c != 1 || i == 0) os << c;
            if (i >= 1) os << 'T';
            if (i >= 2) os << '^' << i;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

    void require_same(const Poly& o) const {
        if (q_ != o.q_) throw AlgebraError("polynomials over different fields");
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    u32 q_;
    std::vector<u32> c_;
};

/// Long division: a = quotient * b + remainder with deg remainder < deg b.
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    a.require_same(b);
    if (b.is_zero()) throw AlgebraError("division by the zero polynomial");
    const u32 q = a.modulus();
    if (a.degree() < b.degree()) return {Poly(q), a};

    std::vector<u32> r = a.coeffs();
    const auto& d = b.coeffs();
    const int db = b.degree();
    const u32 inv_lead = mod_inv(b.leading(), q);
    std::vector<u32> quot(static_cast<std::size_t>(a.degree() - db + 1), 0);

    for (int i = a.degree(); i >= db; --i) {
        u32 c = r[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        u32 f = mod_mul(c, inv_lead, q);
        quot[static_cast<std::size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(i - db + j)];
            slot = mod_sub(slot, mod_mul(f, d[static_cast<std::size_t>(j)], q), q);
        }
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(q, std::move(quot)), Poly(q, std::move(r))};
}

inline Poly poly_mod(const Poly& a, const Poly& m) { return poly_divmod(a, m).second; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m) { return poly_mod(a * b, m); }

/// base^e mod m by square-and-multiply.
inline Poly poly_mod_pow(const Poly& base, u64 e, const Poly& m) {
    if (m.degree() < 1) throw AlgebraError("modulus polynomial must have degree >= 1");
    Poly result = Poly::one(m.modulus());
    Poly b = poly_mod(base, m);
    while (e > 0) {
        if (e & 1U) result = poly_mul_mod(result, b, m);
        e >>= 1U;
        if (e > 0) b = poly_mul_mod(b, b, m);
    }
    return poly_mod(result, m);
}

inline std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Rabin test: f of degree n is irreducible iff T^{q^n} = T (mod f) and
/// gcd(T^{q^{n/r}} - T, f) = 1 for every prime r | n.
inline bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) throw AlgebraError("irreducibility needs degree >= 1");
    const int n = f.degree();
    if (n == 1) return true;
    const u32 q = f.modulus();
    const Poly t = Poly::t(q);
    const Poly t_mod = poly_mod(t, f);

    std::vector<int> checkpoints;
    for (int r : prime_divisors(n)) checkpoints.push_back(n / r);

    Poly frob = t_mod;  // T^{q^i} mod f
    for (int i = 1; i <= n; ++i) {
        frob = poly_mod_pow(frob, q, f);
        if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
            if (!poly_gcd(frob - t_mod, f).is_one()) return false;
        }
    }
    return frob == t_mod;
}

/// A certified monic irreducible polynomial.
class PrimePoly {
  public:
    static PrimePoly certify(Poly p) {
        if (!p.is_monic()) throw AlgebraError("prime polynomial must be monic: " + p.to_string());
        if (!is_irreducible(p)) throw AlgebraError("polynomial is not irreducible: " + p.to_string());
        return PrimePoly(std::move(p));
    }

    /// For callers that have already run the irreducibility test on this exact value.
    static PrimePoly assume_certified(Poly p) { return PrimePoly(std::move(p)); }

    const Poly& poly() const { return p_; }
    int degree() const { return p_.degree(); }
    u32 modulus() const { return p_.modulus(); }

    friend bool operator==(const PrimePoly&, const PrimePoly&) = default;

  private:
    explicit PrimePoly(Poly p) : p_(std::move(p)) {}
    Poly p_;
};

/// q^n with overflow detection.
inline u64 checked_pow(u64 base, int n) {
    u64 r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > std::numeric_limits<u64>::max() / base) throw std::overflow_error("q^n overflows 64 bits");
        r *= base;
    }
    return r;
}

/// The i-th monic polynomial of degree n; the constant coefficient varies fastest.
inline Poly monic_from_index(u32 q, int n, u64 index) {
    std::vector<u32> c(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<u32>(index % q);
        index /= q;
    }
    c.back() = 1;
    return Poly(q, std::move(c));
}

/// Deterministic range over all q^n monic polynomials of degree n.
class MonicRange {
  public:
    class iterator {
      public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Poly;
        using difference_type = std::ptrdiff_t;
        using pointer = const Poly*;
        using reference = Poly;

        iterator(u32 q, int n, u64 index) : q_(q), n_(n), index_(index) {}
        Poly operator*() const { return monic_from_index(q_, n_, index_); }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            auto old = *this;
            ++index_;
            return old;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

      private:
        u32 q_;
        int n_;
        u64 index_;
    };

    MonicRange(u32 q, int n) : q_(q), n_(n), size_(checked_pow(q, n)) {
        check_modulus(q);
        if (n < 0) throw AlgebraError("degree must be non-negative");
    }

    iterator begin() const { return {q_, n_, 0}; }
    iterator end() const { return {q_, n_, size_}; }
    u64 size() const { return size_; }

  private:
    u32 q_;
    int n_;
    u64 size_;
};

inline MonicRange enumerate_monic(u32 q, int n) { return {q, n}; }

/// Integer Möbius function.
inline int mobius(int n) {
    if (n < 1) throw AlgebraError("mobius needs n >= 1");
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

/// Number of monic irreducibles of degree n: (1/n) sum_{d|n} mu(d) q^{n/d}.
inline u64 count_primes(u32 q, int n) {
    if (n < 1) throw AlgebraError("count_primes needs n >= 1");
    __int128 acc = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int mu = mobius(d);
        if (mu != 0) acc += static_cast<__int128>(mu) * static_cast<__int128>(checked_pow(q, n / d));
    }
    return static_cast<u64>(acc / n);
}

/// Floating prime count for Euler products running past the 64-bit range.
inline long double count_primes_real(u32 q, int n) {
    if (n < 1) throw AlgebraError("count_primes needs n >= 1");
    long double acc = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int mu = mobius(d);
        if (mu != 0) acc += mu * std::pow(static_cast<long double>(q), static_cast<long double>(n / d));
    }
    return acc / n;
}

/// Monic h with h^2 = f, found by matching coefficients from the top down.
inline std::optional<Poly> poly_square_root(const Poly& f) {
    if (!f.is_monic()) throw AlgebraError("square root needs a monic polynomial");
    if (f.degree() % 2 != 0) return std::nullopt;
    const u32 q = f.modulus();
    const int m = f.degree() / 2;
    const u32 inv2 = mod_inv(2, q);
    std::vector<u32> h(static_cast<std::size_t>(m) + 1, 0);
    h[static_cast<std::size_t>(m)] = 1;
    for (int j = 1; j <= m; ++j) {
        // f_{2m-j} = 2 h_m h_{m-j} + sum_{i=1}^{j-1} h_{m-i} h_{m-j+i}
        u32 s = 0;
        for (int i = 1; i < j; ++i)
            s = mod_add(s, mod_mul(h[static_cast<std::size_t>(m - i)], h[static_cast<std::size_t>(m - j + i)], q), q);
        h[static_cast<std::size_t>(m - j)] = mod_mul(mod_sub(f.coeff(2 * m - j), s, q), inv2, q);
    }
    Poly root(q, std::move(h));
    if (root * root == f) return root;
    return std::nullopt;
}

}  // namespace fflm
