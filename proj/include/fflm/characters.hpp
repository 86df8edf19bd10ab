#pragma once

// Quadratic residue symbols in F_q[T] and the character chi_P(f) = (P/f).

#include <stdexcept>
#include <string>
#include <utility>

#include "fflm/algebra.hpp"

namespace fflm {

/// A value of a quadratic residue symbol: -1, 0 or +1.
class SymbolValue {
  public:
    constexpr SymbolValue() = default;
    constexpr explicit SymbolValue(int v) : v_(v) {
        if (v < -1 || v > 1) throw std::invalid_argument("symbol value must be -1, 0 or 1");
    }

    constexpr int value() const { return v_; }
    constexpr operator int() const { return v_; }

    friend constexpr SymbolValue operator*(SymbolValue a, SymbolValue b) { return SymbolValue(a.v_ * b.v_); }

  private:
    int v_ = 1;
};

/// Signals an internally inconsistent field computation.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// (c/B) for a nonzero constant c and monic B of degree d: chi_2(c)^d with chi_2(c) = c^{(q-1)/2}.
inline SymbolValue constant_symbol(const FieldElement& c, int degree) {
    if (c.is_zero()) throw AlgebraError("constant_symbol needs a nonzero constant");
    if (degree % 2 == 0) return SymbolValue(1);
    const u32 q = c.modulus();
    const u32 e = mod_pow(c.value(), (q - 1) / 2, q);
    return SymbolValue(e == 1 ? 1 : -1);
}

/// Jacobi-style symbol (A/B) for monic B, evaluated by a reciprocity Euclidean loop:
/// (A/B) = (B/A) (-1)^{((q-1)/2) deg A deg B} for monic coprime A, B.
inline SymbolValue residue_symbol(const Poly& a, const Poly& b) {
    a.require_same(b);
    if (!b.is_monic()) throw AlgebraError("residue_symbol needs a monic modulus: " + b.to_string());
    const u32 q = a.modulus();
    const bool odd_half = ((q - 1) / 2) % 2 == 1;

    int sign = 1;
    Poly num = a;
    Poly den = b;
    for (;;) {
        if (den.degree() == 0) return SymbolValue(sign);
        num = poly_mod(num, den);
        if (num.is_zero()) return SymbolValue(0);
        sign *= constant_symbol(num.leading_element(), den.degree()).value();
        num = num.monic();
        if (num.degree() == 0) return SymbolValue(sign);
        if (odd_half && (num.degree() % 2 == 1) && (den.degree() % 2 == 1)) sign = -sign;
        std::swap(num, den);
    }
}

/// chi_P(f) = (P/f), defined for monic f.
inline SymbolValue chi_P(const PrimePoly& p, const Poly& f) {
    if (!f.is_monic()) throw AlgebraError("chi_P is defined on monic polynomials only: " + f.to_string());
    return residue_symbol(p.poly(), f);
}

/// Slow reference symbol (A/P) = A^{(|P|-1)/2} mod P. The exponent is split as
/// ((q-1)/2) * sum_i q^i so it never overflows.
inline SymbolValue euler_criterion_oracle(const Poly& a, const PrimePoly& p) {
    const Poly& m = p.poly();
    const u32 q = m.modulus();
    Poly r = poly_mod(a, m);
    if (r.is_zero()) return SymbolValue(0);
    Poly acc = Poly::one(q);
    Poly frob = r;  // r^{q^i}
    for (int i = 0; i < m.degree(); ++i) {
        acc = poly_mul_mod(acc, poly_mod_pow(frob, (q - 1) / 2, m), m);
        frob = poly_mod_pow(frob, q, m);
    }
    if (acc.is_one()) return SymbolValue(1);
    if (acc.degree() == 0 && acc.coeff(0) == q - 1) return SymbolValue(-1);
    throw InternalError("Euler criterion produced a non-unit residue " + acc.to_string() + " mod " + m.to_string());
}

}  // namespace fflm
