#include "gbsn/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace gbsn {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::of(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw rank_mismatch_error("ragged matrix literal");
        std::size_t j = 0;
        for (long x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw rank_mismatch_error("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw rank_mismatch_error("matrix sum shape mismatch");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw rank_mismatch_error("matrix-vector shape mismatch");
    std::vector<Int> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

IntMatrix IntMatrix::column(std::size_t j) const {
    IntMatrix r(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
    return r;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Int IntMatrix::determinant() const {
    if (!is_square()) throw rank_mismatch_error("determinant of non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw rank_mismatch_error("matrix product shape mismatch");
    RatMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw rank_mismatch_error("matrix sum shape mismatch");
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw rank_mismatch_error("matrix difference shape mismatch");
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw rank_mismatch_error("matrix-vector shape mismatch");
    std::vector<Rat> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

bool RatMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool RatMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rat& x) { return x == 0; });
}

bool RatMatrix::is_integral() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntMatrix RatMatrix::to_integral() const {
    if (!is_integral()) throw precondition_error("matrix has non-integral entries");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).get_num();
    return r;
}

Rat RatMatrix::trace() const {
    Rat t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

Int RatMatrix::denominator_lcm() const {
    Int l = 1;
    for (const Rat& x : e_) {
        Int d = x.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

namespace {

/* Column operation: (ca, cb) <- (ca*x + cb*y, ca*z + cb*w), applied to both
 * the working matrix and the transform accumulator. */
void combine_cols(IntMatrix& m, IntMatrix& u, std::size_t ca, std::size_t cb,
                  const Int& x, const Int& y, const Int& z, const Int& w) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int a = m(i, ca), b = m(i, cb);
        m(i, ca) = a * x + b * y;
        m(i, cb) = a * z + b * w;
    }
    for (std::size_t i = 0; i < u.rows(); ++i) {
        Int a = u(i, ca), b = u(i, cb);
        u(i, ca) = a * x + b * y;
        u(i, cb) = a * z + b * w;
    }
}

void add_col_multiple(IntMatrix& m, IntMatrix& u, std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, dst) += k * u(i, src);
}

void negate_col(IntMatrix& m, IntMatrix& u, std::size_t c) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, c) = -u(i, c);
}

} // namespace

HnfResult hnf(const IntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(cols);
    std::size_t r = 0; // next pivot column
    for (std::size_t i = 0; i < rows && r < cols; ++i) {
        std::size_t j = r;
        while (j < cols && h(i, j) == 0) ++j;
        if (j == cols) continue;
        if (j != r) {
            h.swap_cols(r, j);
            u.swap_cols(r, j);
        }
        for (j = r + 1; j < cols; ++j) {
            if (h(i, j) == 0) continue;
            Int g, p, q;
            mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
                       h(i, r).get_mpz_t(), h(i, j).get_mpz_t());
            Int a = h(i, r) / g, b = h(i, j) / g;
            combine_cols(h, u, r, j, p, q, Int(-b), a);
        }
        if (h(i, r) < 0) negate_col(h, u, r);
        for (j = 0; j < r; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, r).get_mpz_t());
            add_col_multiple(h, u, j, r, Int(-q));
        }
        ++r;
    }
    return HnfResult{std::move(h), std::move(u), r};
}

namespace {

/* When the pivot already divides the entry, a plain subtraction keeps row k
 * intact; the Bezout combination below may otherwise swap the roles of the two
 * rows (gcdext is free to return p = 0) and undo earlier clearing. */
void row_gcd_step(IntMatrix& d, IntMatrix& u, std::size_t k, std::size_t i) {
    if (d(i, k) % d(k, k) == 0) {
        Int f = d(i, k) / d(k, k);
        for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) -= f * d(k, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) -= f * u(k, j);
        return;
    }
    Int g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
               d(k, k).get_mpz_t(), d(i, k).get_mpz_t());
    Int a = d(k, k) / g, b = d(i, k) / g;
    for (std::size_t j = 0; j < d.cols(); ++j) {
        Int x = d(k, j), y = d(i, j);
        d(k, j) = p * x + q * y;
        d(i, j) = -b * x + a * y;
    }
    for (std::size_t j = 0; j < u.cols(); ++j) {
        Int x = u(k, j), y = u(i, j);
        u(k, j) = p * x + q * y;
        u(i, j) = -b * x + a * y;
    }
}

void col_gcd_step(IntMatrix& d, IntMatrix& v, std::size_t k, std::size_t j) {
    if (d(k, j) % d(k, k) == 0) {
        add_col_multiple(d, v, j, k, Int(-(d(k, j) / d(k, k))));
        return;
    }
    Int g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
               d(k, k).get_mpz_t(), d(k, j).get_mpz_t());
    Int a = d(k, k) / g, b = d(k, j) / g;
    combine_cols(d, v, k, j, p, q, Int(-b), a);
}

} // namespace

SnfResult snf(const IntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    std::size_t nmin = std::min(rows, cols);
    for (std::size_t k = 0; k < nmin; ++k) {
        // pivot: any nonzero entry of the remaining submatrix
        std::size_t pi = k, pj = k;
        bool found = false;
        for (std::size_t i = k; i < rows && !found; ++i)
            for (std::size_t j = k; j < cols && !found; ++j)
                if (d(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        if (pi != k) {
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
        }
        if (pj != k) {
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
        }
        for (;;) {
            for (std::size_t i = k + 1; i < rows; ++i)
                if (d(i, k) != 0) row_gcd_step(d, u, k, i);
            bool row_clean = true;
            for (std::size_t j = k + 1; j < cols; ++j)
                if (d(k, j) != 0) {
                    col_gcd_step(d, v, k, j);
                    row_clean = false;
                }
            if (!row_clean) continue; // column ops may have refilled column k
            bool col_clean = true;
            for (std::size_t i = k + 1; i < rows; ++i)
                if (d(i, k) != 0) col_clean = false;
            if (!col_clean) continue;
            // divisibility: pivot must divide the remaining submatrix
            bool divides = true;
            for (std::size_t i = k + 1; i < rows && divides; ++i)
                for (std::size_t j = k + 1; j < cols && divides; ++j)
                    if (d(i, j) % d(k, k) != 0) {
                        // fold row i into row k and restart elimination
                        for (std::size_t c = 0; c < cols; ++c) d(k, c) += d(i, c);
                        for (std::size_t c = 0; c < u.cols(); ++c) u(k, c) += u(i, c);
                        divides = false;
                    }
            if (divides) break;
        }
        if (d(k, k) < 0) {
            for (std::size_t j = 0; j < cols; ++j) d(k, j) = -d(k, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(k, j) = -u(k, j);
        }
    }
    return SnfResult{std::move(d), std::move(u), std::move(v)};
}

RatMatrix rat_inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw rank_mismatch_error("inverse of non-square matrix");
    std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) throw singular_matrix_error("matrix is singular");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        Rat piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

RatMatrix rat_inverse(const IntMatrix& m) { return rat_inverse(RatMatrix::from(m)); }

IntMatrix mod_reduce(const IntMatrix& m, const Int& modulus) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_mod(r(i, j).get_mpz_t(), m(i, j).get_mpz_t(), modulus.get_mpz_t());
    return r;
}

IntMatrix mod_mul(const IntMatrix& a, const IntMatrix& b, const Int& modulus) {
    return mod_reduce(a * b, modulus);
}

IntMatrix int_pow(const IntMatrix& m, unsigned long k) {
    IntMatrix r = IntMatrix::identity(m.rows());
    IntMatrix base = m;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

Int gl_order(std::size_t n, const Int& modulus) {
    if (modulus <= 1) return 1;
    // factor the modulus by trial division (desk-scale moduli)
    Int m = modulus;
    Int result = 1;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        unsigned long k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        // |GL(n, Z/p^k)| = p^((k-1) n^2) * prod_{i<n} (p^n - p^i)
        Int block = 1;
        Int pn;
        mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), n);
        Int pi = 1;
        for (std::size_t i = 0; i < n; ++i) {
            block *= pn - pi;
            pi *= p;
        }
        Int lift;
        mpz_pow_ui(lift.get_mpz_t(), p.get_mpz_t(), (k - 1) * n * n);
        result *= block * lift;
    }
    if (m > 1) {
        Int block = 1;
        Int pn;
        mpz_pow_ui(pn.get_mpz_t(), m.get_mpz_t(), n);
        Int pi = 1;
        for (std::size_t i = 0; i < n; ++i) {
            block *= pn - pi;
            pi *= m;
        }
        result *= block;
    }
    return result;
}

Int matrix_order_mod(const IntMatrix& m, const Int& modulus) {
    if (!m.is_square()) throw rank_mismatch_error("order of non-square matrix");
    if (modulus < 2) throw precondition_error("modulus must be at least 2");
    Int det = m.determinant();
    Int g;
    mpz_gcd(g.get_mpz_t(), det.get_mpz_t(), modulus.get_mpz_t());
    if (g != 1)
        throw not_invertible_error("matrix not invertible modulo " + modulus.get_str());
    IntMatrix base = mod_reduce(m, modulus);
    IntMatrix id = IntMatrix::identity(m.rows());
    Int cap = gl_order(m.rows(), modulus);
    IntMatrix p = base;
    Int order = 1;
    while (!(p == id)) {
        p = mod_mul(p, base, modulus);
        ++order;
        if (order > cap)
            throw error("matrix order exceeded the order of GL(n, Z/m)"); // unreachable
    }
    return order;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j).get_str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

std::string to_string(const RatMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j).get_str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

} // namespace gbsn
