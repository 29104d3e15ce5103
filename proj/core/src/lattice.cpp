#include "gbsn/lattice.hpp"

namespace gbsn {

Lattice Lattice::from_generators(std::size_t ambient, const IntMatrix& gens) {
    if (gens.cols() > 0 && gens.rows() != ambient)
        throw rank_mismatch_error("generator rows do not match ambient rank");
    if (gens.cols() == 0) return Lattice(ambient, IntMatrix(ambient, 0));
    HnfResult h = hnf(gens);
    IntMatrix basis(ambient, h.rank);
    for (std::size_t i = 0; i < ambient; ++i)
        for (std::size_t j = 0; j < h.rank; ++j) basis(i, j) = h.h(i, j);
    return Lattice(ambient, std::move(basis));
}

Lattice Lattice::full(std::size_t ambient) {
    return Lattice(ambient, IntMatrix::identity(ambient));
}

Lattice Lattice::zero(std::size_t ambient) { return Lattice(ambient, IntMatrix(ambient, 0)); }

Lattice Lattice::scaled(std::size_t ambient, const Int& k) {
    if (k == 0) return zero(ambient);
    IntMatrix b = IntMatrix::identity(ambient);
    for (std::size_t i = 0; i < ambient; ++i) b(i, i) = k > 0 ? k : Int(-k);
    return Lattice(ambient, std::move(b));
}

Lattice lattice_join(const Lattice& a, const Lattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw rank_mismatch_error("join of lattices in different ambient ranks");
    std::size_t n = a.ambient_rank();
    IntMatrix gens(n, a.rank() + b.rank());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < a.rank(); ++j) gens(i, j) = a.basis()(i, j);
        for (std::size_t j = 0; j < b.rank(); ++j) gens(i, a.rank() + j) = b.basis()(i, j);
    }
    return Lattice::from_generators(n, gens);
}

Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw rank_mismatch_error("intersection of lattices in different ambient ranks");
    std::size_t n = a.ambient_rank();
    std::size_t ka = a.rank(), kb = b.rank();
    if (ka == 0 || kb == 0) return Lattice::zero(n);
    // solve B_a x = B_b y over Z: integer kernel of [B_a | -B_b]
    IntMatrix stacked(n, ka + kb);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < ka; ++j) stacked(i, j) = a.basis()(i, j);
        for (std::size_t j = 0; j < kb; ++j) stacked(i, ka + j) = -b.basis()(i, j);
    }
    HnfResult h = hnf(stacked);
    std::size_t kdim = ka + kb - h.rank;
    IntMatrix xpart(ka, kdim);
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < kdim; ++j) xpart(i, j) = h.u(i, h.rank + j);
    IntMatrix gens(n, kdim);
    IntMatrix prod = a.basis() * xpart;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < kdim; ++j) gens(i, j) = prod(i, j);
    return Lattice::from_generators(n, gens);
}

std::optional<Int> lattice_index(const Lattice& l) {
    if (l.rank() < l.ambient_rank()) return std::nullopt;
    // full-rank canonical basis is lower triangular with positive diagonal
    Int idx = 1;
    for (std::size_t i = 0; i < l.ambient_rank(); ++i) idx *= l.basis()(i, i);
    return idx;
}

bool lattice_contains(const Lattice& l, const std::vector<Int>& v) {
    if (v.size() != l.ambient_rank()) throw rank_mismatch_error("vector length mismatch");
    std::vector<Int> r = v;
    const IntMatrix& b = l.basis();
    std::size_t n = l.ambient_rank();
    for (std::size_t j = 0; j < l.rank(); ++j) {
        std::size_t piv = 0;
        while (piv < n && b(piv, j) == 0) ++piv;
        if (r[piv] % b(piv, j) != 0) return false;
        Int c = r[piv] / b(piv, j);
        if (c != 0)
            for (std::size_t i = piv; i < n; ++i) r[i] -= c * b(i, j);
    }
    for (const Int& x : r)
        if (x != 0) return false;
    return true;
}

bool is_invariant(const IntMatrix& phi, const Lattice& l) {
    if (phi.rows() != l.ambient_rank() || phi.cols() != l.ambient_rank())
        throw rank_mismatch_error("automorphism shape does not match ambient rank");
    for (std::size_t j = 0; j < l.rank(); ++j) {
        std::vector<Int> col(l.ambient_rank());
        for (std::size_t i = 0; i < l.ambient_rank(); ++i) col[i] = l.basis()(i, j);
        if (!lattice_contains(l, phi.apply(col))) return false;
    }
    return true;
}

Lattice lattice_preimage(const IntMatrix& phi, const Lattice& l) {
    std::size_t n = l.ambient_rank();
    if (phi.determinant() == 0) throw singular_matrix_error("preimage under singular matrix");
    Lattice image = Lattice::from_generators(n, phi);
    Lattice meet = lattice_intersection(l, image);
    RatMatrix inv = rat_inverse(phi);
    // every basis vector of the meet lies in phi(Z^n), so preimages are integral
    RatMatrix pre = inv * RatMatrix::from(meet.basis());
    return Lattice::from_generators(n, pre.to_integral());
}

Lattice invariant_closure(const IntMatrix& phi, const Lattice& l) {
    Lattice cur = l;
    for (;;) {
        Lattice next = lattice_join(cur, Lattice::from_generators(cur.ambient_rank(), phi * cur.basis()));
        if (next == cur) return cur;
        cur = next;
    }
}

Lattice preimage_saturation(const IntMatrix& phi, const Lattice& l) {
    Lattice cur = l;
    for (;;) {
        Lattice next = lattice_preimage(phi, cur);
        if (next == cur) return cur;
        cur = next;
    }
}

Lattice integral_image_points(const RatMatrix& r) {
    if (r.rows() != r.cols()) throw rank_mismatch_error("image lattice of non-square matrix");
    std::size_t n = r.rows();
    Int d = r.denominator_lcm();
    IntMatrix s(n, n); // d * r, integral
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat x = r(i, j) * Rat(d);
            s(i, j) = x.get_num();
        }
    if (s.determinant() == 0) throw singular_matrix_error("image lattice of singular matrix");
    Lattice scaled_image = Lattice::from_generators(n, s);
    Lattice meet = lattice_intersection(scaled_image, Lattice::scaled(n, d));
    IntMatrix basis = meet.basis();
    IntMatrix out(n, basis.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) {
            Int t = basis(i, j);
            mpz_divexact(out(i, j).get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
        }
    return Lattice::from_generators(n, out);
}

std::vector<Int> AbelianQuotient::coordinates(const std::vector<Int>& x) const {
    std::vector<Int> full = transform.apply(x);
    std::vector<Int> out;
    out.reserve(projection.rows());
    // torsion rows first (moduli >= 2, ascending row index), then free rows
    for (std::size_t i = 0; i < ambient; ++i)
        if (row_moduli[i] >= 2) {
            Int r;
            mpz_mod(r.get_mpz_t(), full[i].get_mpz_t(), row_moduli[i].get_mpz_t());
            out.push_back(r);
        }
    for (std::size_t i = 0; i < ambient; ++i)
        if (row_moduli[i] == 0) out.push_back(full[i]);
    return out;
}

Int AbelianQuotient::order() const {
    Int o = 1;
    for (const Int& d : invariants) o *= d;
    return o;
}

AbelianQuotient quotient_structure(const Lattice& l) {
    std::size_t n = l.ambient_rank();
    AbelianQuotient q;
    q.ambient = n;
    SnfResult s = snf(l.basis());
    std::size_t k = l.rank();
    q.transform = s.u;
    q.row_moduli.resize(n);
    for (std::size_t i = 0; i < n; ++i) q.row_moduli[i] = i < k ? s.d(i, i) : Int(0);
    for (std::size_t i = 0; i < k; ++i)
        if (s.d(i, i) >= 2) q.invariants.push_back(s.d(i, i));
    q.free_rank = n - k;
    q.projection = IntMatrix(q.invariants.size() + q.free_rank, n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (q.row_moduli[i] >= 2) {
            for (std::size_t j = 0; j < n; ++j) q.projection(row, j) = s.u(i, j);
            ++row;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (q.row_moduli[i] == 0) {
            for (std::size_t j = 0; j < n; ++j) q.projection(row, j) = s.u(i, j);
            ++row;
        }
    return q;
}

Int induced_automorphism_order(const IntMatrix& phi, const Lattice& l) {
    std::size_t n = l.ambient_rank();
    if (!is_invariant(phi, l)) throw precondition_error("lattice is not invariant under the map");
    std::optional<Int> idx = lattice_index(l);
    if (!idx) throw precondition_error("lattice has infinite index");
    // bijectivity of the induced map: phi(Z^n) + L must be all of Z^n
    Lattice image = Lattice::from_generators(n, phi);
    if (!lattice_join(image, l).is_full())
        throw not_invertible_error("induced map on the quotient is not surjective");
    if (*idx == 1) return 1;
    AbelianQuotient q = quotient_structure(l);
    IntMatrix uinv = rat_inverse(q.transform).to_integral();
    IntMatrix a = q.transform * phi * uinv; // induced action in quotient coordinates
    auto reduced = [&](const IntMatrix& m) {
        IntMatrix r(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (q.row_moduli[i] == 0) r(i, j) = m(i, j);
                else mpz_mod(r(i, j).get_mpz_t(), m(i, j).get_mpz_t(), q.row_moduli[i].get_mpz_t());
            }
        return r;
    };
    IntMatrix id = reduced(IntMatrix::identity(n));
    // the automorphism group of the quotient has at most |Q|^n elements
    Int cap = 1;
    for (std::size_t i = 0; i < n; ++i) cap *= *idx;
    IntMatrix p = reduced(a);
    Int order = 1;
    while (!(p == id)) {
        p = reduced(p * a);
        ++order;
        if (order > cap) throw error("induced order exceeded automorphism bound"); // unreachable
    }
    return order;
}

} // namespace gbsn
