#ifndef GBSN_MATRIX_HPP
#define GBSN_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gbsn/errors.hpp"

namespace gbsn {

using Int = mpz_class;
using Rat = mpq_class;

/* Dense row-major integer matrix with arbitrary-precision entries. */
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix of(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix&) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-() const;
    std::vector<Int> apply(const std::vector<Int>& v) const;

    IntMatrix transpose() const;
    IntMatrix column(std::size_t j) const;
    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;
    bool is_identity() const;

    /* Fraction-free (Bareiss) determinant; requires a square matrix. */
    Int determinant() const;

    void swap_cols(std::size_t a, std::size_t b);
    void swap_rows(std::size_t a, std::size_t b);

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

/* Dense row-major rational matrix; entries kept canonical (lowest terms,
 * positive denominators) by construction. */
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RatMatrix identity(std::size_t n);
    static RatMatrix from(const IntMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const RatMatrix&) const = default;

    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    std::vector<Rat> apply(const std::vector<Rat>& v) const;

    bool is_identity() const;
    bool is_zero() const;
    bool is_integral() const;
    IntMatrix to_integral() const; // requires is_integral()
    Rat trace() const;

    /* Common denominator of all entries (lcm, positive). */
    Int denominator_lcm() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

struct HnfResult {
    IntMatrix h;     // column-style Hermite normal form, H = M * U
    IntMatrix u;     // unimodular
    std::size_t rank;
};

/* Canonical column-style Hermite normal form. Pivots are positive and are the
 * topmost nonzero entry of their column; pivot rows strictly increase left to
 * right; entries left of a pivot in its row lie in [0, pivot); zero columns
 * trail. */
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
    IntMatrix d; // diagonal, nonnegative, d1 | d2 | ...
    IntMatrix u; // unimodular, d = u * m * v
    IntMatrix v; // unimodular
};

SnfResult snf(const IntMatrix& m);

/* Exact inverse over Q; throws singular_matrix_error if det = 0. */
RatMatrix rat_inverse(const IntMatrix& m);
RatMatrix rat_inverse(const RatMatrix& m);

/* Multiplicative order of m modulo `modulus` (entrywise congruence with the
 * identity). Throws not_invertible_error unless gcd(det m, modulus) = 1.
 * Internally capped at |GL(n, Z/modulus)|. */
Int matrix_order_mod(const IntMatrix& m, const Int& modulus);

/* Order of GL(n, Z/m), computed from the prime factorization of m. */
Int gl_order(std::size_t n, const Int& modulus);

IntMatrix mod_reduce(const IntMatrix& m, const Int& modulus);
IntMatrix mod_mul(const IntMatrix& a, const IntMatrix& b, const Int& modulus);
IntMatrix int_pow(const IntMatrix& m, unsigned long k);

std::string to_string(const IntMatrix& m); // matrix literal format [[..],[..]]
std::string to_string(const RatMatrix& m);

} // namespace gbsn

#endif
