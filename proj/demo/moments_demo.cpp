// Second moment of L(1/2, chi_P) over P of degree 5 in F_5[T], against Q_2.

#include <cstdio>

#include "fflm/conjecture.hpp"
#include "fflm/ensemble.hpp"

int main() {
    using namespace fflm;
    const u32 q = 5;
    const int g = 2;

    const auto Q2 = qk_polynomial(2, q);
    std::printf("Q_2(x) =");
    for (int i = Q2.degree(); i >= 0; --i) std::printf(" %+.12g x^%d", Q2.coeffs[static_cast<std::size_t>(i)], i);
    std::printf("\nA_2(0) = %.12g (1 - 1/q = %.12g)\n", ak_value(2, q, 30).value, 1.0 - 1.0 / q);

    const auto e = compute_ensemble(q, g);
    const auto m = moment_sweep(e, 3, false);
    std::printf("%zu primes of degree %d\n", e.size(), 2 * g + 1);
    for (const auto& row : m.rows)
        std::printf("k=%d  empirical %.10g  conjecture %.10g  ratio %.6f\n", row.k, row.empirical, row.conjecture,
                    row.ratio);
}
