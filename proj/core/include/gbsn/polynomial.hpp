#ifndef GBSN_POLYNOMIAL_HPP
#define GBSN_POLYNOMIAL_HPP

#include <vector>

#include "gbsn/matrix.hpp"

namespace gbsn {

/* Coefficient vectors indexed by degree; no trailing zeros except the zero
 * polynomial which is {}. */
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);

/* Exact division in Z[x]; returns false and leaves p untouched unless q
 * divides p with integer quotient. */
bool poly_divide_exact(IntPoly& p, const IntPoly& q);

/* d-th cyclotomic polynomial, computed by exact division of x^d - 1. */
IntPoly cyclotomic(unsigned long d);

/* All d with Euler phi(d) <= n, ascending. */
std::vector<unsigned long> cyclotomic_degrees_up_to(std::size_t n);

/* Monic characteristic polynomial, degree n, exact over Q. */
RatPoly char_poly(const RatMatrix& m);

struct FiniteOrderAnalysis {
    bool integral_char_poly;                 // char poly lies in Z[x]
    bool char_poly_cyclotomic;               // product of cyclotomic polynomials
    bool finite_order;                       // cyclotomic and diagonalizable
    std::vector<unsigned long> cyclotomic_factors; // distinct d with Phi_d dividing
};

/* Decides whether a rational matrix has finite multiplicative order. The
 * characteristic polynomial must factor into cyclotomics, and the product of
 * the distinct cyclotomic factors must annihilate the matrix. */
FiniteOrderAnalysis analyze_finite_order(const RatMatrix& m);

} // namespace gbsn

#endif
