#include "gbsn/polynomial.hpp"

#include <numeric>

namespace gbsn {

namespace {

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

} // namespace

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

bool poly_divide_exact(IntPoly& p, const IntPoly& q) {
    if (q.empty()) return false;
    if (p.empty()) return true;
    if (p.size() < q.size()) return false;
    IntPoly rem = p;
    IntPoly quot(p.size() - q.size() + 1);
    const Int& lead = q.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        Int c = rem[k + q.size() - 1];
        if (c == 0) continue;
        if (c % lead != 0) return false;
        Int f = c / lead;
        quot[k] = f;
        for (std::size_t i = 0; i < q.size(); ++i) rem[k + i] -= f * q[i];
    }
    trim(rem);
    if (!rem.empty()) return false;
    trim(quot);
    p = std::move(quot);
    return true;
}

IntPoly cyclotomic(unsigned long d) {
    IntPoly p(d + 1);
    p[0] = -1;
    p[d] = 1; // x^d - 1
    for (unsigned long e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        IntPoly f = cyclotomic(e);
        if (!poly_divide_exact(p, f)) throw error("cyclotomic division failed"); // unreachable
    }
    return p;
}

std::vector<unsigned long> cyclotomic_degrees_up_to(std::size_t n) {
    std::vector<unsigned long> out;
    // phi(d) >= sqrt(d/2), so phi(d) <= n forces d <= 2 n^2
    unsigned long bound = 2 * static_cast<unsigned long>(n) * n + 1;
    for (unsigned long d = 1; d <= bound; ++d) {
        unsigned long phi = 0;
        for (unsigned long k = 1; k <= d; ++k)
            if (std::gcd(k, d) == 1) ++phi;
        if (phi <= n) out.push_back(d);
    }
    return out;
}

RatPoly char_poly(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw rank_mismatch_error("characteristic polynomial of non-square matrix");
    std::size_t n = m.rows();
    RatPoly c(n + 1);
    c[n] = 1;
    // Faddeev-LeVerrier: exact trace recursion over Q
    RatMatrix nk = m;
    for (std::size_t k = 1; k <= n; ++k) {
        Rat ck = -nk.trace() / Rat(static_cast<long>(k));
        c[n - k] = ck;
        if (k == n) break;
        RatMatrix shift = nk;
        for (std::size_t i = 0; i < n; ++i) shift(i, i) += ck;
        nk = m * shift;
    }
    return c;
}

FiniteOrderAnalysis analyze_finite_order(const RatMatrix& m) {
    FiniteOrderAnalysis out{false, false, false, {}};
    RatPoly cp = char_poly(m);
    for (const Rat& c : cp)
        if (c.get_den() != 1) return out;
    out.integral_char_poly = true;
    IntPoly p(cp.size());
    for (std::size_t i = 0; i < cp.size(); ++i) p[i] = cp[i].get_num();
    for (unsigned long d : cyclotomic_degrees_up_to(m.rows())) {
        IntPoly phi = cyclotomic(d);
        if (phi.size() > p.size()) continue;
        bool divided = false;
        while (poly_divide_exact(p, phi)) divided = true;
        if (divided) out.cyclotomic_factors.push_back(d);
        if (p.size() == 1 && p[0] == 1) break;
    }
    if (!(p.size() == 1 && p[0] == 1)) return out;
    out.char_poly_cyclotomic = true;
    // finite order iff additionally diagonalizable, i.e. the squarefree product
    // of the cyclotomic factors annihilates the matrix
    IntPoly s{Int(1)};
    for (unsigned long d : out.cyclotomic_factors) s = poly_mul(s, cyclotomic(d));
    std::size_t n = m.rows();
    RatMatrix acc(n, n); // s evaluated at m, Horner
    for (std::size_t k = s.size(); k-- > 0;) {
        acc = acc * m;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += Rat(s[k]);
    }
    out.finite_order = acc.is_zero();
    return out;
}

} // namespace gbsn
