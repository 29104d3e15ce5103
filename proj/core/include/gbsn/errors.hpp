#ifndef GBSN_ERRORS_HPP
#define GBSN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gbsn {

/* Base class for all domain errors thrown by the library. Parse errors are
 * separate so callers can map them to a distinct exit code. */
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct singular_matrix_error : error {
    using error::error;
};

struct rank_mismatch_error : error {
    using error::error;
};

/* A matrix that is not invertible modulo the requested modulus, or an induced
 * map on a finite quotient that fails to be an automorphism. */
struct not_invertible_error : error {
    using error::error;
};

struct precondition_error : error {
    using error::error;
};

/* Word has nonzero stable-letter exponent sum where a kernel element is required. */
struct not_in_kernel_error : error {
    using error::error;
};

/* Modulus base rejected: composite, or the prime divides the determinant. */
struct prime_error : error {
    using error::error;
};

struct budget_error : error {
    using error::error;
};

struct parse_error : error {
    int line;
    parse_error(const std::string& msg, int line_no = 0)
        : error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

} // namespace gbsn

#endif
